//! Decoding parameters: permissible triples, radii and multi-trial schedules.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::code::GrsCode;
use crate::error::{Error, Result};

/// Largest list size examined when searching for parameters.
pub const MAX_LIST_SIZE: usize = 1 << 16;

/// `E(s, l, tau) = (l+1) s (n - tau) - binom(l+1, 2)(k-1) - binom(s+1, 2) n`.
pub fn e_value(code: &GrsCode, s: usize, l: usize, tau: usize) -> i128 {
    e_raw(code.n(), code.k(), s, l, tau)
}

fn e_raw(n: usize, k: usize, s: usize, l: usize, tau: usize) -> i128 {
    let (n, k, s, l, tau) = (n as i128, k as i128, s as i128, l as i128, tau as i128);
    (l + 1) * s * (n - tau) - (l + 1) * l / 2 * (k - 1) - (s + 1) * s / 2 * n
}

/// Greatest `tau` with `E(s, l, tau) > 0`, or `-1` if there is none.
pub fn decoding_radius(code: &GrsCode, s: usize, l: usize) -> i64 {
    let mut tau = -1i64;
    for t in 0..=code.n() {
        if e_value(code, s, l, t) > 0 {
            tau = t as i64;
        } else {
            break;
        }
    }
    tau
}

/// `tau < n - sqrt(n (k-1))`, decided in integers.
pub fn johnson_bound_check(code: &GrsCode, tau: usize) -> bool {
    let (n, k) = (code.n() as u128, code.k() as u128);
    let tau = tau as u128;
    tau < n && (n - tau) * (n - tau) > n * (k - 1)
}

/// Parameters `(s, l, tau)` with `E(s, l, tau) > 0` and `s <= l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PermissibleTriple {
    pub s: usize,
    pub l: usize,
    pub tau: usize,
}

impl PermissibleTriple {
    pub fn new(code: &GrsCode, s: usize, l: usize, tau: usize) -> Result<Self> {
        if s == 0 || s > l {
            return Err(Error::InvalidParameters(format!(
                "need 1 <= s <= l, got s = {s}, l = {l}"
            )));
        }
        if e_value(code, s, l, tau) <= 0 {
            return Err(Error::InvalidParameters(format!(
                "(s, l, tau) = ({s}, {l}, {tau}) is not permissible"
            )));
        }
        Ok(PermissibleTriple { s, l, tau })
    }
}

/// Smallest `(l, s)` in lexicographic order whose radius reaches `tau`.
pub fn minimal_parameters(code: &GrsCode, tau: usize) -> Result<PermissibleTriple> {
    if !johnson_bound_check(code, tau) {
        return Err(Error::ExceedsJohnsonBound);
    }
    let (n, k) = (code.n(), code.k());
    for l in 1..=MAX_LIST_SIZE {
        // E is concave in s with its maximum near (l+1)(n-tau)/n - 1/2.
        let peak = ((l + 1) * (n - tau)) / n;
        let best = [peak.saturating_sub(1), peak, peak + 1]
            .into_iter()
            .map(|s| s.clamp(1, l))
            .any(|s| e_raw(n, k, s, l, tau) > 0);
        if best {
            let s = (1..=l).find(|&s| e_raw(n, k, s, l, tau) > 0).unwrap();
            return Ok(PermissibleTriple { s, l, tau });
        }
    }
    Err(Error::InvalidParameters(format!(
        "no permissible parameters with l <= {MAX_LIST_SIZE} for tau = {tau}"
    )))
}

/// One element of a multi-trial schedule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Step {
    /// `(s, l) -> (s, l + 1)`.
    S1,
    /// `(s, l) -> (s + 1, l + 1)`.
    S2,
    Root,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Step::S1 => "S1",
            Step::S2 => "S2",
            Step::Root => "Root",
        })
    }
}

impl FromStr for Step {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "s1" => Ok(Step::S1),
            "s2" => Ok(Step::S2),
            "root" => Ok(Step::Root),
            other => Err(Error::InvalidSchedule(format!("unknown step {other:?}"))),
        }
    }
}

/// Where root-finding attempts are placed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RootPolicy {
    /// At `(1, 1)` and after every step that increases the radius.
    #[default]
    EveryRadiusIncrease,
    /// Once, at the target parameters.
    FinalOnly,
}

impl FromStr for RootPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "every_radius_increase" | "every" => Ok(RootPolicy::EveryRadiusIncrease),
            "final_only" | "final" => Ok(RootPolicy::FinalOnly),
            other => Err(Error::InvalidSchedule(format!("unknown root policy {other:?}"))),
        }
    }
}

/// A sequence of micro-steps and root-finding attempts starting at `(1, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecodingSchedule {
    pub steps: Vec<Step>,
    pub target_s: usize,
    pub target_l: usize,
    /// Notes about radii the path could not visit.
    pub diagnostics: Vec<String>,
}

impl DecodingSchedule {
    /// Validates a hand-written step list; the target is implied by the
    /// micro-step counts.
    pub fn from_steps(steps: Vec<Step>) -> Result<Self> {
        let s1 = steps.iter().filter(|&&x| x == Step::S1).count();
        let s2 = steps.iter().filter(|&&x| x == Step::S2).count();
        let sched = DecodingSchedule {
            steps,
            target_s: 1 + s2,
            target_l: 1 + s1 + s2,
            diagnostics: Vec::new(),
        };
        sched.validate()?;
        Ok(sched)
    }

    pub fn validate(&self) -> Result<()> {
        let s1 = self.steps.iter().filter(|&&x| x == Step::S1).count();
        let s2 = self.steps.iter().filter(|&&x| x == Step::S2).count();
        if self.target_s == 0 || self.target_s > self.target_l {
            return Err(Error::InvalidSchedule(format!(
                "target (s, l) = ({}, {})",
                self.target_s, self.target_l
            )));
        }
        if s1 != self.target_l - self.target_s || s2 != self.target_s - 1 {
            return Err(Error::InvalidSchedule(format!(
                "{s1} S1 and {s2} S2 steps cannot reach ({}, {})",
                self.target_s, self.target_l
            )));
        }
        if self
            .steps
            .windows(2)
            .any(|w| w[0] == Step::Root && w[1] == Step::Root)
        {
            return Err(Error::InvalidSchedule("adjacent Root steps".into()));
        }
        Ok(())
    }

    /// The `(s, l)` pairs in force at each Root step.
    pub fn root_points(&self) -> Vec<(usize, usize)> {
        let (mut s, mut l) = (1, 1);
        let mut out = Vec::new();
        for step in &self.steps {
            match step {
                Step::S1 => l += 1,
                Step::S2 => {
                    s += 1;
                    l += 1
                }
                Step::Root => out.push((s, l)),
            }
        }
        out
    }
}

impl fmt::Display for DecodingSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.steps.iter().map(Step::to_string).collect();
        write!(f, "{{{}}}", names.join(", "))
    }
}

/// Schedule from `(1, 1)` to the minimal parameters for `target_tau`.
///
/// At every state the micro-step whose result has the larger radius is
/// taken; on equal radii `S2` goes first.
pub fn build_schedule(
    code: &GrsCode,
    target_tau: usize,
    policy: RootPolicy,
) -> Result<DecodingSchedule> {
    let target = minimal_parameters(code, target_tau)?;
    let (mut s, mut l) = (1usize, 1usize);
    let mut steps = Vec::new();
    let mut diagnostics = Vec::new();
    let mut best = decoding_radius(code, 1, 1);
    if policy == RootPolicy::EveryRadiusIncrease && best >= 0 {
        steps.push(Step::Root);
    }
    while (s, l) != (target.s, target.l) {
        let can_i = l - s < target.l - target.s;
        let can_ii = s < target.s;
        let tau_i = if can_i { decoding_radius(code, s, l + 1) } else { i64::MIN };
        let tau_ii = if can_ii { decoding_radius(code, s + 1, l + 1) } else { i64::MIN };
        let (step, tau) = if tau_ii >= tau_i {
            (Step::S2, tau_ii)
        } else {
            (Step::S1, tau_i)
        };
        steps.push(step);
        if step == Step::S2 {
            s += 1;
        }
        l += 1;
        if tau > best {
            if tau > best + 1 && best >= 0 {
                diagnostics.push(format!(
                    "radius jumps from {best} to {tau} at (s, l) = ({s}, {l})"
                ));
            }
            best = tau;
            if policy == RootPolicy::EveryRadiusIncrease {
                steps.push(Step::Root);
            }
        }
    }
    if steps.last() != Some(&Step::Root) {
        steps.push(Step::Root);
    }
    let sched = DecodingSchedule {
        steps,
        target_s: target.s,
        target_l: target.l,
        diagnostics,
    };
    sched.validate()?;
    Ok(sched)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Step::*;

    fn rs164() -> GrsCode {
        GrsCode::standard(17, 16, 4).unwrap()
    }

    #[test]
    fn e_values() {
        let c = rs164();
        assert_eq!(e_value(&c, 1, 1, 6), 1);
        assert_eq!(e_value(&c, 2, 4, 8), 2);
        assert!(e_value(&c, 28, 64, 9) > 0);
        assert!(e_value(&c, 1, 1, 7) <= 0);
    }

    #[test]
    fn radii() {
        let c = rs164();
        assert_eq!(decoding_radius(&c, 1, 1), 6);
        assert_eq!(decoding_radius(&c, 1, 2), 7);
        assert_eq!(decoding_radius(&c, 2, 4), 8);
        assert_eq!(decoding_radius(&c, 28, 64), 9);
        let tiny = GrsCode::standard(5, 4, 4).unwrap();
        assert_eq!(decoding_radius(&tiny, 1, 1), 0);
    }

    #[test]
    fn johnson() {
        let c = rs164();
        assert!(johnson_bound_check(&c, 0));
        assert!(johnson_bound_check(&c, 9));
        assert!(!johnson_bound_check(&c, 10));
        assert!(matches!(minimal_parameters(&c, 10), Err(Error::ExceedsJohnsonBound)));
    }

    #[test]
    fn minimal_pairs() {
        let c = rs164();
        let p = minimal_parameters(&c, 8).unwrap();
        assert_eq!((p.s, p.l), (2, 4));
        let p = minimal_parameters(&c, 6).unwrap();
        assert_eq!((p.s, p.l), (1, 1));
        let p = minimal_parameters(&c, 9).unwrap();
        assert_eq!(decoding_radius(&c, p.s, p.l), 9);
        assert!(p.l <= 64);
    }

    #[test]
    fn worked_example_schedule() {
        let c = rs164();
        let s = build_schedule(&c, 8, RootPolicy::EveryRadiusIncrease).unwrap();
        assert_eq!(s.steps, vec![Root, S1, Root, S2, S1, Root]);
        assert_eq!(s.root_points(), vec![(1, 1), (1, 2), (2, 4)]);
        assert!(s.diagnostics.is_empty());
        let s = build_schedule(&c, 8, RootPolicy::FinalOnly).unwrap();
        assert_eq!(s.steps, vec![S1, S2, S1, Root]);
        let s = build_schedule(&c, 6, RootPolicy::EveryRadiusIncrease).unwrap();
        assert_eq!(s.steps, vec![Root]);
        assert_eq!(s.to_string(), "{Root}");
    }

    #[test]
    fn schedule_validation() {
        assert!(DecodingSchedule::from_steps(vec![Root, S1, Root]).is_ok());
        assert!(DecodingSchedule::from_steps(vec![Root, Root]).is_err());
        let s = DecodingSchedule::from_steps(vec![Root, S1, Root, S2, S1, Root]).unwrap();
        assert_eq!((s.target_s, s.target_l), (2, 4));
        assert_eq!("root".parse::<Step>().unwrap(), Root);
        assert!("s3".parse::<Step>().is_err());
        assert_eq!(
            "final-only".parse::<RootPolicy>().unwrap(),
            RootPolicy::FinalOnly
        );
    }
}
