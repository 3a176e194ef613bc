//! Dense univariate polynomials over a prime field.
//!
//! Multiplication is schoolbook; every coefficient product goes through the
//! counted field arithmetic. Degrees are `Option<usize>` with `None` standing
//! for the degree of the zero polynomial, which orders below every integer.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Fe, PrimeField};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: PrimeField,
    /// `coeffs[i]` is the coefficient of `X^i`; never ends in a zero.
    coeffs: Vec<Fe>,
}

impl Polynomial {
    pub fn zero(field: PrimeField) -> Self {
        Polynomial {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: PrimeField) -> Self {
        Self::constant(field.one())
    }

    pub fn constant(c: Fe) -> Self {
        Self::from_coeffs(c.field(), vec![c])
    }

    /// `c * X^d`.
    pub fn monomial(c: Fe, d: usize) -> Self {
        if c.is_zero() {
            return Self::zero(c.field());
        }
        let mut coeffs = vec![c.field().zero(); d + 1];
        coeffs[d] = c;
        Polynomial {
            field: c.field(),
            coeffs,
        }
    }

    /// `X - a`.
    pub fn linear_root(a: Fe) -> Self {
        let f = a.field();
        Self::from_coeffs(f, vec![-a, f.one()])
    }

    pub fn from_coeffs(field: PrimeField, mut coeffs: Vec<Fe>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { field, coeffs }
    }

    /// Builds from integer coefficients, lowest degree first.
    pub fn from_ints(field: PrimeField, coeffs: &[i64]) -> Self {
        Self::from_coeffs(field, coeffs.iter().map(|&c| field.elem(c)).collect())
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    /// Coefficient of `X^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(self.field.zero())
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    #[inline]
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<Fe> {
        self.coeffs.last().copied()
    }

    /// Number of trailing zero coefficients, i.e. the largest `m` with
    /// `X^m | self`. `None` for the zero polynomial.
    pub fn x_valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Multiplication by `X^d`; no field operations.
    pub fn shift_up(&self, d: usize) -> Self {
        if self.is_zero() || d == 0 {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); d];
        coeffs.extend_from_slice(&self.coeffs);
        Polynomial {
            field: self.field,
            coeffs,
        }
    }

    /// Exact division by `X^d`; no field operations.
    pub fn shift_down(&self, d: usize) -> Result<Self> {
        if self.is_zero() || d == 0 {
            return Ok(self.clone());
        }
        if self.coeffs.iter().take(d).any(|c| !c.is_zero()) {
            return Err(Error::NonExactDivision);
        }
        Ok(Polynomial {
            field: self.field,
            coeffs: self.coeffs[d.min(self.coeffs.len())..].to_vec(),
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += *s;
        }
        Self::from_coeffs(self.field, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(&a), Some(&b)) => a - b,
                (Some(&a), None) => a,
                (None, Some(&b)) => -b,
                (None, None) => unreachable!(),
            });
        }
        Self::from_coeffs(self.field, coeffs)
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            field: self.field,
            coeffs: self.coeffs.iter().map(|&c| -c).collect(),
        }
    }

    pub fn scale(&self, c: Fe) -> Self {
        if c.is_zero() {
            return Self::zero(self.field);
        }
        Polynomial {
            field: self.field,
            coeffs: self.coeffs.iter().map(|&a| a * c).collect(),
        }
    }

    /// Schoolbook product.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(self.field, out)
    }

    /// `self - c * X^d * other`, the elementary step of row reduction.
    pub fn sub_scaled_shifted(&self, c: Fe, d: usize, other: &Self) -> Self {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let len = self.coeffs.len().max(other.coeffs.len() + d);
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(len, self.field.zero());
        for (i, &b) in other.coeffs.iter().enumerate() {
            if !b.is_zero() {
                coeffs[i + d] -= c * b;
            }
        }
        Self::from_coeffs(self.field, coeffs)
    }

    /// Long division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn divrem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.deg().ok_or(Error::ZeroDivisor)?;
        let Some(sd) = self.deg() else {
            return Ok((Self::zero(self.field), Self::zero(self.field)));
        };
        if sd < dd {
            return Ok((Self::zero(self.field), self.clone()));
        }
        let lead = divisor.coeffs[dd];
        let monic = lead.value() == 1;
        let lead_inv = if monic { lead } else { lead.inv()? };
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.field.zero(); sd - dd + 1];
        for i in (0..=sd - dd).rev() {
            let top = rem[i + dd];
            if top.is_zero() {
                continue;
            }
            let qc = if monic { top } else { top * lead_inv };
            quot[i] = qc;
            for (j, &b) in divisor.coeffs.iter().enumerate().take(dd) {
                if !b.is_zero() {
                    rem[i + j] -= qc * b;
                }
            }
            rem[i + dd] = self.field.zero();
        }
        rem.truncate(dd);
        Ok((
            Self::from_coeffs(self.field, quot),
            Self::from_coeffs(self.field, rem),
        ))
    }

    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.divrem(divisor)?;
        if !r.is_zero() {
            return Err(Error::NonExactDivision);
        }
        Ok(q)
    }

    /// Repeated multiplication by square-and-multiply.
    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc: Option<Self> = None;
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc.unwrap_or_else(|| Self::one(self.field))
    }

    /// Horner evaluation.
    pub fn eval(&self, x: Fe) -> Fe {
        let mut it = self.coeffs.iter().rev();
        let Some(&first) = it.next() else {
            return self.field.zero();
        };
        it.fold(first, |acc, &c| acc * x + c)
    }

    /// All roots in `F_q`, ascending, without multiplicity, by exhaustive
    /// evaluation.
    pub fn roots(&self) -> Result<Vec<Fe>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.deg() == Some(0) {
            return Ok(Vec::new());
        }
        Ok(self
            .field
            .elements()
            .filter(|&x| self.eval(x).is_zero())
            .collect())
    }

    /// Compact coefficient-list rendering `[c_0,...,c_d]`.
    pub fn to_coeff_list(&self) -> String {
        let body: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        format!("[{}]", body.join(","))
    }

    /// Comma-separated coefficients zero-padded to `len` entries.
    pub fn to_padded_list(&self, len: usize) -> String {
        let n = len.max(self.coeffs.len());
        (0..n)
            .map(|i| self.coeff(i).to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*X")?,
                _ => write!(f, "{c}*X^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_coeff_list())
    }
}

fn check_distinct(points: &[Fe]) -> Result<()> {
    let mut seen = std::collections::HashSet::with_capacity(points.len());
    for p in points {
        if !seen.insert(p.value()) {
            return Err(Error::DuplicatePoints(format!("{p} appears twice")));
        }
    }
    Ok(())
}

/// `prod (X - a)` over the given pairwise distinct points.
pub fn roots_product(field: PrimeField, points: &[Fe]) -> Result<Polynomial> {
    check_distinct(points)?;
    let mut acc = Polynomial::one(field);
    for &a in points {
        acc = acc.mul_linear(a);
    }
    Ok(acc)
}

impl Polynomial {
    /// `self * (X - a)` in linear time.
    fn mul_linear(&self, a: Fe) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i + 1] += c;
            out[i] -= c * a;
        }
        Self::from_coeffs(self.field, out)
    }

    /// Synthetic division by `(X - a)`; the remainder is discarded.
    fn div_linear(&self, a: Fe) -> Self {
        let n = self.coeffs.len();
        if n <= 1 {
            return Self::zero(self.field);
        }
        let mut out = vec![self.field.zero(); n - 1];
        let mut carry = self.coeffs[n - 1];
        out[n - 2] = carry;
        for i in (1..n - 1).rev() {
            carry = self.coeffs[i] + carry * a;
            out[i - 1] = carry;
        }
        Self::from_coeffs(self.field, out)
    }
}

/// The unique polynomial of degree `< n` through the `n` points `(xs[i], ys[i])`.
pub fn lagrange_interpolate(xs: &[Fe], ys: &[Fe]) -> Result<Polynomial> {
    if xs.len() != ys.len() {
        return Err(Error::Dimension(format!(
            "{} abscissae but {} ordinates",
            xs.len(),
            ys.len()
        )));
    }
    let Some(&x0) = xs.first() else {
        return Err(Error::Dimension("no interpolation points".into()));
    };
    let field = x0.field();
    check_distinct(xs)?;
    let g = roots_product(field, xs)?;
    let mut acc = vec![field.zero(); xs.len()];
    for (&x, &y) in xs.iter().zip(ys) {
        if y.is_zero() {
            continue;
        }
        let basis = g.div_linear(x);
        let scale = y * basis.eval(x).inv()?;
        for (a, &b) in acc.iter_mut().zip(basis.coeffs()) {
            *a += scale * b;
        }
    }
    Ok(Polynomial::from_coeffs(field, acc))
}
