//! Interpolation module bases for Guruswami–Sudan decoding.
//!
//! `M_{s,l}` is the `F_q[X]`-module of bivariate polynomials of `Y`-degree at
//! most `l` passing through every `(alpha_i, r_i / w_i)` with multiplicity
//! `s`. It is generated by
//!
//! ```text
//! G^{s-t} (Y - R)^t        for 0 <= t < s
//! Y^{t-s} (Y - R)^s        for s <= t <= l
//! ```
//!
//! where `G = prod (X - alpha_i)` and `R` interpolates the received word.
//! Rows of a basis matrix hold the `Y`-coefficients of the generators. After
//! multiplying column `t` by `X^{t(k-1)}`, a weak Popov form exposes a
//! polynomial of minimal `(1, k-1)`-weighted degree.
//!
//! Instead of reducing the full basis for the target `(s, l)`, the micro-steps
//! refine an already reduced basis of `M_{s,l}`:
//!
//! * type I, `(s, l) -> (s, l+1)`: append the generator `Y^{l-s+1} (Y - R)^s`;
//! * type II, `(s, l) -> (s+1, l+1)`: multiply every basis element by
//!   `(Y - R)` and add `G^{s+1}`.
//!
//! Both produce matrices with a small, closed-form orthogonality defect, which
//! bounds the work of the following minimisation.
//!
//! With re-encoding, the received word vanishes on the first `k` positions, so
//! `L = prod_{i<k} (X - alpha_i)` divides both `G` and `R`. Bases are then
//! kept for the image of `Q(X, Y) -> L^{-s} Q(X, L Y)`, which has smaller
//! `X`-degrees, with column weights `X^{l-t}`.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bivariate::BivariatePoly;
use crate::code::GrsCode;
use crate::error::{Error, Result};
use crate::field::{count_ops, Fe, OpCounter};
use crate::poly::{lagrange_interpolate, roots_product, Polynomial};
use crate::polymat::{DegreeProfile, Engine, PolyMatrix};

/// Column weights `t (k-1)` for `t = 0..=l`.
pub fn weight_matrix(l: usize, k: usize) -> Vec<usize> {
    (0..=l).map(|t| t * k.saturating_sub(1)).collect()
}

/// Column weights `l - t` used for re-encoded bases.
pub fn reencoded_weights(l: usize) -> Vec<usize> {
    (0..=l).map(|t| l - t).collect()
}

/// Column weights for re-encoded bases whose common `L^{t-s}` column
/// factors were divided out: `l - t`, raised by `k (t - s)` for `t > s`.
pub fn divided_weights(s: usize, l: usize, k: usize) -> Vec<usize> {
    (0..=l).map(|t| l - t + k * t.saturating_sub(s)).collect()
}

/// How re-encoded bases treat the `L`-power factors of columns `t > s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReencodedBasis {
    /// Rows are the `Y`-coefficients of `L^{-s} Q(X, L Y)`; column `t > s`
    /// carries a factor `L^{t-s}`.
    #[default]
    Scaled,
    /// Those column factors are divided away and compensated in the weights,
    /// so column `t` holds `Q_t / L^{s-t}` for `t < s` and `Q_t` otherwise.
    Divided,
}

impl FromStr for ReencodedBasis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "scaled" => Ok(ReencodedBasis::Scaled),
            "divided" => Ok(ReencodedBasis::Divided),
            other => Err(Error::InvalidParameters(format!(
                "unknown re-encoded basis {other:?}"
            ))),
        }
    }
}

/// `L^0, L^1, ...`, extended on demand.
struct Powers<'a> {
    base: &'a Polynomial,
    pows: Vec<Polynomial>,
}

impl<'a> Powers<'a> {
    fn new(base: &'a Polynomial) -> Self {
        Powers {
            base,
            pows: vec![Polynomial::one(base.field())],
        }
    }

    fn get(&mut self, e: usize) -> &Polynomial {
        while self.pows.len() <= e {
            let next = self.pows.last().unwrap().mul(self.base);
            self.pows.push(next);
        }
        &self.pows[e]
    }
}

/// Fixed data of one decoding attempt: `G` and `R` or, with re-encoding,
/// `L`, `G / L` and `R / L`.
#[derive(Debug, Clone)]
pub struct InterpolationContext {
    code: GrsCode,
    /// `G`, or `G / L` when re-encoded.
    g: Polynomial,
    /// `R`, or `R / L` when re-encoded.
    r: Polynomial,
    l: Option<Polynomial>,
    basis: ReencodedBasis,
}

impl InterpolationContext {
    /// Plain context for the received word `r`.
    pub fn new(code: &GrsCode, r: &[Fe]) -> Result<Self> {
        let scaled = code.unscale(r)?;
        let g = roots_product(code.field(), code.alphas())?;
        let r_poly = lagrange_interpolate(code.alphas(), &scaled)?;
        Ok(InterpolationContext {
            code: code.clone(),
            g,
            r: r_poly,
            l: None,
            basis: ReencodedBasis::Scaled,
        })
    }

    /// Re-encoded context; `r` must vanish on the first `k` positions.
    ///
    /// `G / L` and `R / L` are built from the remaining `n - k` points only:
    /// `R / L` interpolates `r_i / (w_i L(alpha_i))` there.
    pub fn new_reencoded(code: &GrsCode, r: &[Fe]) -> Result<Self> {
        Self::new_reencoded_with(code, r, ReencodedBasis::Scaled)
    }

    pub fn new_reencoded_with(code: &GrsCode, r: &[Fe], basis: ReencodedBasis) -> Result<Self> {
        let k = code.k();
        code.check_word(r)?;
        if r[..k].iter().any(|x| !x.is_zero()) {
            return Err(Error::InvalidParameters(
                "re-encoded word must vanish on the first k positions".into(),
            ));
        }
        let field = code.field();
        let (head, tail) = code.alphas().split_at(k);
        let l = roots_product(field, head)?;
        let g_bar = roots_product(field, tail)?;
        let r_bar = if tail.is_empty() {
            Polynomial::zero(field)
        } else {
            let scaled = code.unscale(r)?;
            let ys = tail
                .iter()
                .zip(&scaled[k..])
                .map(|(&a, &y)| if y.is_zero() { Ok(y) } else { Ok(y * l.eval(a).inv()?) })
                .collect::<Result<Vec<_>>>()?;
            lagrange_interpolate(tail, &ys)?
        };
        Ok(InterpolationContext {
            code: code.clone(),
            g: g_bar,
            r: r_bar,
            l: Some(l),
            basis,
        })
    }

    pub fn code(&self) -> &GrsCode {
        &self.code
    }

    /// `G`; rebuilt as `L (G / L)` in re-encoded mode.
    pub fn g(&self) -> Polynomial {
        match &self.l {
            Some(l) => l.mul(&self.g),
            None => self.g.clone(),
        }
    }

    /// `R`; rebuilt as `L (R / L)` in re-encoded mode.
    pub fn r(&self) -> Polynomial {
        match &self.l {
            Some(l) => l.mul(&self.r),
            None => self.r.clone(),
        }
    }

    pub fn is_reencoded(&self) -> bool {
        self.l.is_some()
    }

    /// `None` for plain contexts.
    pub fn reencoded_basis(&self) -> Option<ReencodedBasis> {
        self.l.as_ref().map(|_| self.basis)
    }

    fn divided(&self) -> bool {
        self.reencoded_basis() == Some(ReencodedBasis::Divided)
    }

    pub fn l(&self) -> Option<&Polynomial> {
        self.l.as_ref()
    }

    pub fn g_bar(&self) -> Option<&Polynomial> {
        self.l.as_ref().map(|_| &self.g)
    }

    pub fn r_bar(&self) -> Option<&Polynomial> {
        self.l.as_ref().map(|_| &self.r)
    }

    /// `deg R`.
    pub fn deg_r(&self) -> Option<usize> {
        let extra = if self.is_reencoded() { self.code.k() } else { 0 };
        self.r.deg().map(|d| d + extra)
    }

    /// The received word is a codeword exactly when `deg R < k`.
    pub fn is_degenerate(&self) -> bool {
        self.deg_r().map_or(true, |d| d < self.code.k())
    }

    /// `deg R - k + 1`, the per-unit orthogonality defect of every basis
    /// matrix (requires a non-degenerate context).
    fn defect_unit(&self) -> usize {
        self.deg_r().unwrap_or(0) + 1 - self.code.k()
    }

    /// `G` or `G / L`, depending on the mode.
    fn g_mod(&self) -> &Polynomial {
        &self.g
    }

    /// `R` or `R / L`, depending on the mode.
    fn r_mod(&self) -> &Polynomial {
        &self.r
    }

    /// Column weights for bases of `M_{s,l}` in this context.
    pub fn weights(&self, s: usize, l: usize) -> Vec<usize> {
        match self.reencoded_basis() {
            None => weight_matrix(l, self.code.k()),
            Some(ReencodedBasis::Scaled) => reencoded_weights(l),
            Some(ReencodedBasis::Divided) => divided_weights(s, l, self.code.k()),
        }
    }

    /// Exponent of the `L` factor on column `j` of the generator
    /// `Y^{t-s}(Y-R)^s`, `t >= s`.
    fn tail_l_exponent(&self, s: usize, t: usize, j: usize) -> usize {
        match self.reencoded_basis() {
            None => 0,
            Some(ReencodedBasis::Scaled) => t - s,
            Some(ReencodedBasis::Divided) => t - s - j.saturating_sub(s),
        }
    }

    /// Row of the generator `Y^{t-s}(Y-R)^s` in this context's coordinates,
    /// given the expansion of `(Y-R)^s`.
    fn tail_row(
        &self,
        s: usize,
        t: usize,
        width: usize,
        expansion: &[Polynomial],
        l_pows: &mut Option<Powers<'_>>,
    ) -> Vec<Polynomial> {
        let mut row = vec![Polynomial::zero(self.code.field()); width];
        for (i, c) in expansion.iter().enumerate() {
            let j = t - s + i;
            let e = self.tail_l_exponent(s, t, j);
            row[j] = match l_pows {
                Some(p) if e > 0 => c.mul(p.get(e)),
                _ => c.clone(),
            };
        }
        row
    }

    /// `Y`-coefficients of `(Y - R)^s` (or `(Y - R/L)^s`): entry `i` is
    /// `binom(s, i) (-R)^{s-i}`.
    fn y_minus_r_power(&self, s: usize) -> Vec<Polynomial> {
        let field = self.code.field();
        let neg_r = self.r_mod().neg();
        let mut pows = Vec::with_capacity(s + 1);
        pows.push(Polynomial::one(field));
        for i in 1..=s {
            pows.push(pows[i - 1].mul(&neg_r));
        }
        (0..=s)
            .map(|i| scale_binomial(&pows[s - i], s, i))
            .collect()
    }

    /// Row of the generator `Y^{t-s}(Y-R)^s`, padded to `width` columns.
    fn tail_generator(&self, s: usize, t: usize, width: usize) -> Vec<Polynomial> {
        let expansion = self.y_minus_r_power(s);
        let mut l_pows = self.l.as_ref().map(Powers::new);
        self.tail_row(s, t, width, &expansion, &mut l_pows)
    }

    /// Unweighted basis matrix of `M_{s,l}` (or of its re-encoded image).
    fn basis_matrix(&self, s: usize, l: usize) -> Result<PolyMatrix> {
        if s < 1 || s > l {
            return Err(Error::InvalidParameters(format!(
                "need 1 <= s <= l, got s = {s}, l = {l}"
            )));
        }
        let field = self.code.field();
        let g = self.g_mod();
        let neg_r = self.r_mod().neg();
        let mut neg_r_pows = vec![Polynomial::one(field)];
        for i in 1..=s {
            neg_r_pows.push(neg_r_pows[i - 1].mul(&neg_r));
        }
        let mut g_pows = vec![Polynomial::one(field)];
        for i in 1..=s {
            g_pows.push(g_pows[i - 1].mul(g));
        }
        let mut rows = Vec::with_capacity(l + 1);
        for t in 0..s {
            let mut row = vec![Polynomial::zero(field); l + 1];
            for (j, slot) in row.iter_mut().enumerate().take(t + 1) {
                let c = scale_binomial(&neg_r_pows[t - j], t, j);
                *slot = c.mul(&g_pows[s - t]);
            }
            rows.push(row);
        }
        let tail: Vec<Polynomial> = (0..=s)
            .map(|i| scale_binomial(&neg_r_pows[s - i], s, i))
            .collect();
        let mut l_pows = self.l.as_ref().map(Powers::new);
        for t in s..=l {
            rows.push(self.tail_row(s, t, l + 1, &tail, &mut l_pows));
        }
        PolyMatrix::new(field, rows)
    }

    /// `A_{s,l}`: lower-triangular basis of `M_{s,l}`.
    pub fn build_a(&self, s: usize, l: usize) -> Result<PolyMatrix> {
        if self.is_reencoded() {
            return Err(Error::InvalidParameters(
                "plain basis requested from a re-encoded context".into(),
            ));
        }
        self.basis_matrix(s, l)
    }

    /// Re-encoded basis of the image of `M_{s,l}` and its column weights.
    pub fn build_a_reencoded(&self, s: usize, l: usize) -> Result<(PolyMatrix, Vec<usize>)> {
        if !self.is_reencoded() {
            return Err(Error::InvalidParameters(
                "re-encoded basis requested from a plain context".into(),
            ));
        }
        Ok((self.basis_matrix(s, l)?, self.weights(s, l)))
    }

    /// `deg(A W) - deg det(A W) = (2l - s + 1) s (deg R - k + 1) / 2`.
    pub fn defect_of_a(&self, s: usize, l: usize) -> usize {
        (2 * l + 1 - s) * s * self.defect_unit() / 2
    }

    /// Orthogonality defect after a type I step from `(s, l)`.
    pub fn defect_of_step_i(&self, s: usize, _l: usize) -> usize {
        s * self.defect_unit()
    }

    /// Orthogonality defect after a type II step from `(s, l)`.
    pub fn defect_of_step_ii(&self, _s: usize, l: usize) -> usize {
        (l + 1) * self.defect_unit()
    }

    /// Maps a row of a re-encoded basis back to `M_{s,l}`. For scaled bases
    /// coefficient `t` is multiplied by `L^{s-t}` for `t <= s` and divided by
    /// `L^{t-s}` otherwise; divided bases only need the multiplications.
    pub fn map_back(&self, s: usize, image: &BivariatePoly) -> Result<BivariatePoly> {
        let Some(l) = &self.l else {
            return Ok(image.clone());
        };
        let divided = self.divided();
        let mut pows = Powers::new(l);
        let coeffs = image
            .y_coeffs()
            .iter()
            .enumerate()
            .map(|(t, c)| {
                if c.is_zero() || t == s || (divided && t > s) {
                    Ok(c.clone())
                } else if t < s {
                    Ok(c.mul(pows.get(s - t)))
                } else {
                    c.exact_div(pows.get(t - s)).map_err(|_| {
                        Error::Invariant(format!("L^{} does not divide Y^{t} coefficient", t - s))
                    })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BivariatePoly::new(image.field(), coeffs))
    }

    /// Coordinates of `Q` in this context's bases; the inverse of
    /// [`Self::map_back`].
    pub fn map_forward(&self, s: usize, q: &BivariatePoly) -> Result<BivariatePoly> {
        match self.reencoded_basis() {
            None => Ok(q.clone()),
            Some(ReencodedBasis::Scaled) => self.phi(s, q),
            Some(ReencodedBasis::Divided) => {
                let l = self.l.as_ref().unwrap();
                let coeffs = q
                    .y_coeffs()
                    .iter()
                    .enumerate()
                    .map(|(t, c)| {
                        if t < s {
                            c.exact_div(&l.pow((s - t) as u32))
                        } else {
                            Ok(c.clone())
                        }
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(BivariatePoly::new(q.field(), coeffs))
            }
        }
    }

    /// `L^{-s} Q(X, L Y)`; `Q` itself for plain contexts.
    pub fn phi(&self, s: usize, q: &BivariatePoly) -> Result<BivariatePoly> {
        let Some(l) = &self.l else {
            return Ok(q.clone());
        };
        let coeffs = q
            .y_coeffs()
            .iter()
            .enumerate()
            .map(|(t, c)| {
                if t >= s {
                    Ok(c.mul(&l.pow((t - s) as u32)))
                } else {
                    c.exact_div(&l.pow((s - t) as u32))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BivariatePoly::new(q.field(), coeffs))
    }
}

/// `binom(n, j) * p` in the field; no multiplication when the binomial is 1.
fn scale_binomial(p: &Polynomial, n: usize, j: usize) -> Polynomial {
    let field = p.field();
    let q = field.order() as u64;
    // binomial mod q via the multiplicative formula over integers (small n)
    let mut b: u128 = 1;
    for i in 0..j as u128 {
        b = b * (n as u128 - i) / (i + 1);
    }
    let c = field.elem((b % q as u128) as i64);
    if c.value() == 1 {
        p.clone()
    } else {
        p.scale(c)
    }
}

/// What one minimisation did.
#[derive(Debug, Clone)]
pub struct MinimisationInfo {
    /// Closed-form orthogonality defect of the weighted input matrix.
    pub defect: usize,
    pub reductions: usize,
    /// `m (Δ + (m+1)/2)`, the ceiling the reduction count stays below.
    pub reduction_bound: f64,
    pub engine: Engine,
    /// Field operations spent in the reduction alone.
    pub ops: OpCounter,
    pub input_profile: DegreeProfile,
    pub output_profile: DegreeProfile,
}

/// A reduced weighted basis of `M_{s,l}` (or its re-encoded image).
#[derive(Debug, Clone)]
pub struct InterpolationState<'c> {
    ctx: &'c InterpolationContext,
    s: usize,
    l: usize,
    /// Weighted basis in weak Popov form.
    bw: PolyMatrix,
    last: MinimisationInfo,
}

impl<'c> InterpolationState<'c> {
    pub fn s(&self) -> usize {
        self.s
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn context(&self) -> &'c InterpolationContext {
        self.ctx
    }

    /// The weighted basis `B W` in weak Popov form.
    pub fn weighted_basis(&self) -> &PolyMatrix {
        &self.bw
    }

    /// The unweighted basis `B`.
    pub fn basis(&self) -> Result<PolyMatrix> {
        self.bw.unweight_columns(&self.ctx.weights(self.s, self.l))
    }

    /// The minimisation that produced this state.
    pub fn last_minimisation(&self) -> &MinimisationInfo {
        &self.last
    }
}

fn minimise<'c>(
    ctx: &'c InterpolationContext,
    s: usize,
    l: usize,
    weighted: PolyMatrix,
    defect: usize,
    engine: Engine,
) -> Result<InterpolationState<'c>> {
    let input_profile = weighted.degree_profile();
    let (out, ops) = count_ops(|| weighted.reduce_to_weak_popov(engine));
    let out = out?;
    let m = (l + 1) as f64;
    let bound = m * (defect as f64 + (m + 1.0) / 2.0);
    if out.reductions as f64 >= bound {
        return Err(Error::Invariant(format!(
            "{} reductions reach the bound {bound} for defect {defect}",
            out.reductions
        )));
    }
    Ok(InterpolationState {
        ctx,
        s,
        l,
        last: MinimisationInfo {
            defect,
            reductions: out.reductions,
            reduction_bound: bound,
            engine: out.engine,
            ops,
            input_profile,
            output_profile: out.reduced.degree_profile(),
        },
        bw: out.reduced,
    })
}

fn require_nondegenerate(ctx: &InterpolationContext) -> Result<()> {
    if ctx.is_degenerate() {
        return Err(Error::InvalidParameters(
            "received word is a codeword; no interpolation needed".into(),
        ));
    }
    Ok(())
}

/// Reduced weighted basis of `M_{s,l}` computed directly from `A_{s,l}`.
pub fn direct_state(
    ctx: &InterpolationContext,
    s: usize,
    l: usize,
    engine: Engine,
) -> Result<InterpolationState<'_>> {
    require_nondegenerate(ctx)?;
    let a = ctx.basis_matrix(s, l)?;
    let weighted = a.weight_columns(&ctx.weights(s, l))?;
    minimise(ctx, s, l, weighted, ctx.defect_of_a(s, l), engine)
}

/// Reduced weighted basis of `M_{1,1}`.
pub fn initial_state(ctx: &InterpolationContext, engine: Engine) -> Result<InterpolationState<'_>> {
    direct_state(ctx, 1, 1, engine)
}

/// `(s, l) -> (s, l + 1)`.
pub fn microstep_i<'c>(
    state: &InterpolationState<'c>,
    engine: Engine,
) -> Result<InterpolationState<'c>> {
    let ctx = state.ctx;
    let (s, l) = (state.s, state.l);
    let field = ctx.code.field();
    let b = state.basis()?;
    let mut rows = b.into_rows();
    for row in rows.iter_mut() {
        row.push(Polynomial::zero(field));
    }
    rows.push(ctx.tail_generator(s, l + 1, l + 2));
    let c = PolyMatrix::new(field, rows)?;
    let weighted = c.weight_columns(&ctx.weights(s, l + 1))?;
    minimise(ctx, s, l + 1, weighted, ctx.defect_of_step_i(s, l), engine)
}

/// `(s, l) -> (s + 1, l + 1)`.
pub fn microstep_ii<'c>(
    state: &InterpolationState<'c>,
    engine: Engine,
) -> Result<InterpolationState<'c>> {
    let ctx = state.ctx;
    let (s, l) = (state.s, state.l);
    let field = ctx.code.field();
    let r = ctx.r_mod();
    // divided bases multiply columns beyond s by the full R = L (R / L)
    let r_full = if ctx.divided() { Some(ctx.r()) } else { None };
    let b = state.basis()?;
    let mut rows = Vec::with_capacity(l + 2);
    let mut top = vec![Polynomial::zero(field); l + 2];
    top[0] = ctx.g_mod().pow((s + 1) as u32);
    rows.push(top);
    for brow in b.rows() {
        // (0 | b) - R (b | 0)
        let mut row = vec![Polynomial::zero(field); l + 2];
        for (j, slot) in row.iter_mut().enumerate() {
            let shifted = if j >= 1 { Some(&brow[j - 1]) } else { None };
            let scaled = if j <= l && !brow[j].is_zero() {
                let m = match &r_full {
                    Some(full) if j > s => full,
                    _ => r,
                };
                Some(brow[j].mul(m))
            } else {
                None
            };
            *slot = match (shifted, scaled) {
                (Some(a), Some(b)) => a.sub(&b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.neg(),
                (None, None) => Polynomial::zero(field),
            };
        }
        rows.push(row);
    }
    let c = PolyMatrix::new(field, rows)?;
    let weighted = c.weight_columns(&ctx.weights(s + 1, l + 1))?;
    minimise(ctx, s + 1, l + 1, weighted, ctx.defect_of_step_ii(s, l), engine)
}

/// The minimal-degree row of the weighted basis, unweighted, as a bivariate
/// polynomial in the context's coordinates (see
/// [`InterpolationContext::map_forward`]).
pub fn minimal_row_polynomial(state: &InterpolationState<'_>) -> Result<BivariatePoly> {
    let i = state.bw.minimal_row()?;
    let weights = state.ctx.weights(state.s, state.l);
    let coeffs = state
        .bw
        .row(i)
        .iter()
        .zip(&weights)
        .map(|(p, &w)| p.shift_down(w))
        .collect::<Result<Vec<_>>>()?;
    Ok(BivariatePoly::new(state.ctx.code.field(), coeffs))
}

/// A polynomial of minimal `(1, k-1)`-weighted degree in `M_{s,l}`.
pub fn extract_q(state: &InterpolationState<'_>) -> Result<BivariatePoly> {
    let row = minimal_row_polynomial(state)?;
    state.ctx.map_back(state.s, &row)
}
