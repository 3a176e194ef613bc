//! Multi-trial Guruswami–Sudan decoding and the single-shot Lee–O'Sullivan
//! baseline.

use serde::Serialize;

use crate::bivariate::BivariatePoly;
use crate::code::{re_encode, GrsCode, ReEncoded};
use crate::error::{Error, Result};
use crate::field::{count_ops, Fe, OpCounter};
use crate::interp::{
    direct_state, extract_q, initial_state, microstep_i, microstep_ii, InterpolationContext,
    InterpolationState, ReencodedBasis,
};
use crate::params::{decoding_radius, minimal_parameters, DecodingSchedule, Step};
use crate::polymat::{DegreeProfile, Engine};
use crate::roots::{filter_by_distance, roth_ruckenstein, RootCandidate};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecodeOptions {
    pub reencode: bool,
    /// Only used when `reencode` is set.
    pub basis: ReencodedBasis,
    pub engine: Engine,
}

impl Default for DecodeOptions {
    fn default() -> Self {
        DecodeOptions {
            reencode: false,
            basis: ReencodedBasis::Scaled,
            engine: Engine::MuldersStorjohann,
        }
    }
}

impl DecodeOptions {
    pub fn reencoded(reencode: bool) -> Self {
        DecodeOptions {
            reencode,
            ..Self::default()
        }
    }
}

/// One line of a decoding trace. Counts are for this step alone.
#[derive(Debug, Clone, Serialize)]
pub struct StepReport {
    /// `init`, `direct`, `S1`, `S2`, `Root` or `codeword`.
    pub step: String,
    pub s_hat: usize,
    pub l_hat: usize,
    pub tau_hat: i64,
    pub od: Option<usize>,
    pub reductions: Option<usize>,
    pub mul_count: u64,
    pub add_count: u64,
    pub inv_count: u64,
    /// `ok` for minimisations, `success`/`failure` for root-finding.
    pub outcome: String,
    #[serde(skip)]
    pub reduction_bound: Option<f64>,
    #[serde(skip)]
    pub profiles: Option<(DegreeProfile, DegreeProfile)>,
    /// Interpolation polynomial found at a Root step, for the re-encoded
    /// word when re-encoding is on.
    #[serde(skip)]
    pub q: Option<BivariatePoly>,
}

impl StepReport {
    fn new(step: &str, s: usize, l: usize, tau: i64, ops: OpCounter) -> Self {
        StepReport {
            step: step.into(),
            s_hat: s,
            l_hat: l,
            tau_hat: tau,
            od: None,
            reductions: None,
            mul_count: ops.mul_count,
            add_count: ops.add_count,
            inv_count: ops.inv_count,
            outcome: "ok".into(),
            reduction_bound: None,
            profiles: None,
            q: None,
        }
    }

    fn from_state(step: &str, state: &InterpolationState<'_>, ops: OpCounter) -> Self {
        let code = state.context().code();
        let tau = decoding_radius(code, state.s(), state.l());
        let info = state.last_minimisation();
        StepReport {
            od: Some(info.defect),
            reductions: Some(info.reductions),
            reduction_bound: Some(info.reduction_bound),
            profiles: Some((info.input_profile.clone(), info.output_profile.clone())),
            ..Self::new(step, state.s(), state.l(), tau, ops)
        }
    }

    pub fn ops(&self) -> OpCounter {
        OpCounter {
            mul_count: self.mul_count,
            add_count: self.add_count,
            inv_count: self.inv_count,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DecodeResult {
    pub candidates: Vec<RootCandidate>,
    /// `(s, l, tau)` of the successful Root step, or of the last state.
    pub stopped_at: (usize, usize, i64),
    pub trial_reports: Vec<StepReport>,
    pub ops: OpCounter,
}

impl DecodeResult {
    pub fn success(&self) -> bool {
        !self.candidates.is_empty()
    }

    fn finish(
        candidates: Vec<RootCandidate>,
        stopped_at: (usize, usize, i64),
        reports: Vec<StepReport>,
    ) -> Self {
        let ops = reports.iter().map(StepReport::ops).sum();
        DecodeResult {
            candidates,
            stopped_at,
            trial_reports: reports,
            ops,
        }
    }
}

struct Prepared {
    ctx: InterpolationContext,
    re: Option<ReEncoded>,
}

fn prepare(code: &GrsCode, r: &[Fe], opts: DecodeOptions) -> Result<Prepared> {
    code.check_word(r)?;
    if opts.reencode {
        let re = re_encode(code, r)?;
        let ctx = InterpolationContext::new_reencoded_with(code, &re.transformed, opts.basis)?;
        Ok(Prepared { ctx, re: Some(re) })
    } else {
        Ok(Prepared {
            ctx: InterpolationContext::new(code, r)?,
            re: None,
        })
    }
}

/// Candidate for a received word that is already a codeword.
fn codeword_candidate(r: &[Fe], p: &Prepared) -> Result<RootCandidate> {
    let f = match &p.re {
        Some(re) => p.ctx.r().add(&re.f_hat),
        None => p.ctx.r(),
    };
    Ok(RootCandidate {
        f,
        codeword: r.to_vec(),
        distance: 0,
    })
}

/// Extracts `Q`, finds its roots and keeps those within `tau(s, l)`.
fn root_step(
    code: &GrsCode,
    r: &[Fe],
    p: &Prepared,
    state: &InterpolationState<'_>,
) -> Result<(StepReport, Vec<RootCandidate>)> {
    let tau = decoding_radius(code, state.s(), state.l());
    let (found, ops) = count_ops(|| -> Result<_> {
        let q = extract_q(state)?;
        let mut roots = roth_ruckenstein(&q, code.k())?;
        if let Some(re) = &p.re {
            for f in roots.iter_mut() {
                *f = f.add(&re.f_hat);
            }
        }
        let candidates = if tau >= 0 {
            filter_by_distance(&roots, code, r, tau as usize)?
        } else {
            Vec::new()
        };
        Ok((q, candidates))
    });
    let (q, candidates) = found?;
    let mut rep = StepReport::new("Root", state.s(), state.l(), tau, ops);
    rep.outcome = if candidates.is_empty() { "failure" } else { "success" }.into();
    rep.q = Some(q);
    Ok((rep, candidates))
}

/// Preprocessing shared by both decoders. Returns `None` when the received
/// word is a codeword.
fn start<'p>(
    p: &'p Prepared,
    first: (usize, usize),
    engine: Engine,
    setup_ops: OpCounter,
    reports: &mut Vec<StepReport>,
) -> Result<Option<InterpolationState<'p>>> {
    if p.ctx.is_degenerate() {
        return Ok(None);
    }
    let (state, ops) = count_ops(|| {
        if first == (1, 1) {
            initial_state(&p.ctx, engine)
        } else {
            direct_state(&p.ctx, first.0, first.1, engine)
        }
    });
    let state = state?;
    let label = if first == (1, 1) { "init" } else { "direct" };
    reports.push(StepReport::from_state(label, &state, setup_ops.merge(ops)));
    Ok(Some(state))
}

fn degenerate_result(
    code: &GrsCode,
    r: &[Fe],
    p: &Prepared,
    setup_ops: OpCounter,
    mut reports: Vec<StepReport>,
) -> Result<DecodeResult> {
    let (cand, ops) = count_ops(|| codeword_candidate(r, p));
    let tau = decoding_radius(code, 1, 1);
    let mut rep = StepReport::new("codeword", 1, 1, tau, setup_ops.merge(ops));
    rep.outcome = "success".into();
    reports.push(rep);
    Ok(DecodeResult::finish(vec![cand?], (1, 1, tau), reports))
}

/// Runs a multi-trial schedule, stopping at the first Root step that finds a
/// codeword within the current radius.
pub fn multi_trial_decode(
    code: &GrsCode,
    r: &[Fe],
    schedule: &DecodingSchedule,
    opts: DecodeOptions,
) -> Result<DecodeResult> {
    schedule.validate()?;
    let (p, setup_ops) = count_ops(|| prepare(code, r, opts));
    let p = p?;
    let mut reports = Vec::new();
    let Some(mut state) = start(&p, (1, 1), opts.engine, setup_ops, &mut reports)? else {
        return degenerate_result(code, r, &p, setup_ops, reports);
    };
    for step in &schedule.steps {
        match step {
            Step::S1 | Step::S2 => {
                let (next, ops) = count_ops(|| match step {
                    Step::S1 => microstep_i(&state, opts.engine),
                    _ => microstep_ii(&state, opts.engine),
                });
                state = next?;
                reports.push(StepReport::from_state(&step.to_string(), &state, ops));
            }
            Step::Root => {
                let (rep, candidates) = root_step(code, r, &p, &state)?;
                let at = (rep.s_hat, rep.l_hat, rep.tau_hat);
                reports.push(rep);
                if !candidates.is_empty() {
                    return Ok(DecodeResult::finish(candidates, at, reports));
                }
            }
        }
    }
    let tau = decoding_radius(code, state.s(), state.l());
    Ok(DecodeResult::finish(Vec::new(), (state.s(), state.l(), tau), reports))
}

/// Reduces the full basis for `(s, l)` and tries root-finding once at
/// `tau(s, l)`.
pub fn lee_osullivan_decode(
    code: &GrsCode,
    r: &[Fe],
    s: usize,
    l: usize,
    opts: DecodeOptions,
) -> Result<DecodeResult> {
    if s == 0 || s > l {
        return Err(Error::InvalidParameters(format!(
            "need 1 <= s <= l, got s = {s}, l = {l}"
        )));
    }
    if decoding_radius(code, s, l) < 0 {
        return Err(Error::InvalidParameters(format!(
            "(s, l) = ({s}, {l}) admits no decoding radius"
        )));
    }
    let (p, setup_ops) = count_ops(|| prepare(code, r, opts));
    let p = p?;
    let mut reports = Vec::new();
    let Some(state) = start(&p, (s, l), opts.engine, setup_ops, &mut reports)? else {
        return degenerate_result(code, r, &p, setup_ops, reports);
    };
    let (rep, candidates) = root_step(code, r, &p, &state)?;
    let at = (rep.s_hat, rep.l_hat, rep.tau_hat);
    reports.push(rep);
    Ok(DecodeResult::finish(candidates, at, reports))
}

/// Lee–O'Sullivan at the minimal parameters for `tau`.
pub fn lee_osullivan_for_radius(
    code: &GrsCode,
    r: &[Fe],
    tau: usize,
    opts: DecodeOptions,
) -> Result<DecodeResult> {
    let p = minimal_parameters(code, tau)?;
    lee_osullivan_decode(code, r, p.s, p.l, opts)
}
