//! `Y`-roots of bivariate polynomials (Roth–Ruckenstein) and distance filtering.

use serde::Serialize;

use crate::bivariate::BivariatePoly;
use crate::code::GrsCode;
use crate::error::{Error, Result};
use crate::field::Fe;
use crate::poly::Polynomial;

/// A root of the interpolation polynomial together with its codeword.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootCandidate {
    pub f: Polynomial,
    pub codeword: Vec<Fe>,
    pub distance: usize,
}

#[derive(Serialize)]
struct CandidateJson {
    f: Vec<u32>,
    codeword: Vec<u32>,
    distance: usize,
}

impl Serialize for RootCandidate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CandidateJson {
            f: self.f.coeffs().iter().map(|c| c.value()).collect(),
            codeword: self.codeword.iter().map(|c| c.value()).collect(),
            distance: self.distance,
        }
        .serialize(s)
    }
}

/// `Q(X, f(X))`.
pub fn bivariate_eval(q: &BivariatePoly, f: &Polynomial) -> Polynomial {
    q.eval_y(f)
}

/// All `f` with `deg f < k` and `Q(X, f(X)) = 0`, sorted lexicographically by
/// coefficient vector.
pub fn roth_ruckenstein(q: &BivariatePoly, k: usize) -> Result<Vec<Polynomial>> {
    if q.is_zero() {
        return Err(Error::ZeroInterpolationPolynomial);
    }
    let field = q.field();
    let mut leaves = Vec::new();
    let mut prefix = Vec::with_capacity(k);
    descend(q, k, &mut prefix, &mut leaves)?;
    let mut roots: Vec<Polynomial> = leaves
        .into_iter()
        .map(|c| Polynomial::from_coeffs(field, c))
        .filter(|f| bivariate_eval(q, f).is_zero())
        .collect();
    roots.sort_by_key(|f| coefficient_key(f, k));
    roots.dedup();
    Ok(roots)
}

fn coefficient_key(f: &Polynomial, k: usize) -> Vec<u32> {
    (0..k).map(|i| f.coeff(i).value()).collect()
}

fn descend(
    q: &BivariatePoly,
    k: usize,
    prefix: &mut Vec<Fe>,
    leaves: &mut Vec<Vec<Fe>>,
) -> Result<()> {
    if prefix.len() == k {
        leaves.push(prefix.clone());
        return Ok(());
    }
    let v = q.x_valuation().unwrap_or(0);
    let stripped;
    let q = if v > 0 {
        stripped = q.shift_down_x(v);
        &stripped
    } else {
        q
    };
    for gamma in q.at_x_zero().roots()? {
        prefix.push(gamma);
        descend(&q.substitute_xy_plus(gamma), k, prefix, leaves)?;
        prefix.pop();
    }
    Ok(())
}

/// Encodes each root and keeps those within distance `tau` of `r`, closest
/// first.
pub fn filter_by_distance(
    roots: &[Polynomial],
    code: &GrsCode,
    r: &[Fe],
    tau: usize,
) -> Result<Vec<RootCandidate>> {
    code.check_word(r)?;
    let mut out = Vec::new();
    for f in roots {
        let codeword = code.encode(f)?;
        let distance = GrsCode::distance(&codeword, r);
        if distance <= tau {
            out.push(RootCandidate {
                f: f.clone(),
                codeword,
                distance,
            });
        }
    }
    let k = code.k();
    out.sort_by(|a, b| {
        a.distance
            .cmp(&b.distance)
            .then_with(|| coefficient_key(&a.f, k).cmp(&coefficient_key(&b.f, k)))
    });
    Ok(out)
}
