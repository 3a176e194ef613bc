//! Generalised Reed–Solomon codes and the re-encoding transformation.

use crate::error::{Error, Result};
use crate::field::{Fe, PrimeField};
use crate::poly::{lagrange_interpolate, Polynomial};

/// `GRS(n, k)` over a prime field: evaluations `(w_i f(alpha_i))` of all
/// `f` with `deg f < k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrsCode {
    field: PrimeField,
    k: usize,
    alphas: Vec<Fe>,
    ws: Vec<Fe>,
}

impl GrsCode {
    pub fn new(field: PrimeField, k: usize, alphas: Vec<Fe>, ws: Vec<Fe>) -> Result<Self> {
        let n = alphas.len();
        if ws.len() != n {
            return Err(Error::InvalidCode(format!(
                "{n} evaluation points but {} column multipliers",
                ws.len()
            )));
        }
        if n == 0 || n >= field.order() as usize {
            return Err(Error::InvalidCode(format!(
                "length {n} must satisfy 0 < n < q = {}",
                field.order()
            )));
        }
        if k == 0 || k > n {
            return Err(Error::InvalidCode(format!("dimension {k} must satisfy 1 <= k <= n")));
        }
        if alphas.iter().chain(&ws).any(|a| a.field() != field) {
            return Err(Error::InvalidCode("elements over a different field".into()));
        }
        if alphas.iter().any(|a| a.is_zero()) {
            return Err(Error::InvalidCode("evaluation points must be nonzero".into()));
        }
        if ws.iter().any(|a| a.is_zero()) {
            return Err(Error::InvalidCode("column multipliers must be nonzero".into()));
        }
        let mut seen = std::collections::HashSet::new();
        if !alphas.iter().all(|a| seen.insert(a.value())) {
            return Err(Error::InvalidCode("evaluation points must be distinct".into()));
        }
        Ok(GrsCode {
            field,
            k,
            alphas,
            ws,
        })
    }

    /// Points `alpha_i = i + 1` and all-one multipliers.
    pub fn standard(q: u32, n: usize, k: usize) -> Result<Self> {
        let field = PrimeField::new(q)?;
        let alphas = (1..=n as i64).map(|v| field.elem(v)).collect();
        Self::new(field, k, alphas, vec![field.one(); n])
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.alphas.len()
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn alphas(&self) -> &[Fe] {
        &self.alphas
    }

    pub fn ws(&self) -> &[Fe] {
        &self.ws
    }

    pub fn min_distance(&self) -> usize {
        self.n() - self.k + 1
    }

    pub fn encode(&self, f: &Polynomial) -> Result<Vec<Fe>> {
        if f.deg().is_some_and(|d| d >= self.k) {
            return Err(Error::InvalidParameters(format!(
                "information polynomial of degree {} for dimension {}",
                f.deg().unwrap(),
                self.k
            )));
        }
        Ok(self
            .alphas
            .iter()
            .zip(&self.ws)
            .map(|(&a, &w)| w * f.eval(a))
            .collect())
    }

    pub fn check_word(&self, r: &[Fe]) -> Result<()> {
        if r.len() != self.n() {
            return Err(Error::Dimension(format!(
                "received word of length {} for code length {}",
                r.len(),
                self.n()
            )));
        }
        if r.iter().any(|x| x.field() != self.field) {
            return Err(Error::Dimension("received word over a different field".into()));
        }
        Ok(())
    }

    /// `r_i / w_i`.
    pub fn unscale(&self, r: &[Fe]) -> Result<Vec<Fe>> {
        self.check_word(r)?;
        r.iter()
            .zip(&self.ws)
            .map(|(&x, &w)| if w.value() == 1 { Ok(x) } else { Ok(x * w.inv()?) })
            .collect()
    }

    /// Number of positions where the two words differ.
    pub fn distance(a: &[Fe], b: &[Fe]) -> usize {
        a.iter().zip(b).filter(|(x, y)| x != y).count()
    }
}

/// Result of subtracting a codeword agreeing with `r` on the first `k`
/// positions.
#[derive(Debug, Clone)]
pub struct ReEncoded {
    /// `r - c_hat`; zero on the first `k` positions.
    pub transformed: Vec<Fe>,
    pub c_hat: Vec<Fe>,
    /// Information polynomial of `c_hat`.
    pub f_hat: Polynomial,
}

pub fn re_encode(code: &GrsCode, r: &[Fe]) -> Result<ReEncoded> {
    let k = code.k();
    let scaled = code.unscale(r)?;
    let f_hat = lagrange_interpolate(&code.alphas()[..k], &scaled[..k])?;
    let c_hat = code.encode(&f_hat)?;
    let transformed = r.iter().zip(&c_hat).map(|(&a, &b)| a - b).collect();
    Ok(ReEncoded {
        transformed,
        c_hat,
        f_hat,
    })
}
