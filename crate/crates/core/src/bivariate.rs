//! Bivariate polynomials stored as polynomials in `Y` over `F_q[X]`.

use std::fmt;

use crate::field::{Fe, PrimeField};
use crate::poly::Polynomial;

/// `Q(X, Y) = sum_t y_coeffs[t](X) Y^t`, trailing zero coefficients trimmed.
#[derive(Clone, PartialEq, Eq)]
pub struct BivariatePoly {
    field: PrimeField,
    y_coeffs: Vec<Polynomial>,
}

impl BivariatePoly {
    pub fn new(field: PrimeField, mut y_coeffs: Vec<Polynomial>) -> Self {
        while y_coeffs.last().is_some_and(Polynomial::is_zero) {
            y_coeffs.pop();
        }
        BivariatePoly { field, y_coeffs }
    }

    pub fn zero(field: PrimeField) -> Self {
        Self::new(field, Vec::new())
    }

    /// `Y - f(X)`.
    pub fn y_minus(f: &Polynomial) -> Self {
        let field = f.field();
        Self::new(field, vec![f.neg(), Polynomial::one(field)])
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn y_coeffs(&self) -> &[Polynomial] {
        &self.y_coeffs
    }

    pub fn y_coeff(&self, t: usize) -> Polynomial {
        self.y_coeffs
            .get(t)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.y_coeffs.is_empty()
    }

    pub fn y_degree(&self) -> Option<usize> {
        self.y_coeffs.len().checked_sub(1)
    }

    /// `max_t (u deg Q_t + v t)` over the nonzero coefficients.
    pub fn weighted_degree(&self, u: i64, v: i64) -> Option<i64> {
        self.y_coeffs
            .iter()
            .enumerate()
            .filter_map(|(t, c)| c.deg().map(|d| u * d as i64 + v * t as i64))
            .max()
    }

    /// `Q(X, f(X))` by Horner in `Y`.
    pub fn eval_y(&self, f: &Polynomial) -> Polynomial {
        let mut it = self.y_coeffs.iter().rev();
        let Some(first) = it.next() else {
            return Polynomial::zero(self.field);
        };
        it.fold(first.clone(), |acc, c| acc.mul(f).add(c))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field);
        }
        let mut out =
            vec![Polynomial::zero(self.field); self.y_coeffs.len() + other.y_coeffs.len() - 1];
        for (i, a) in self.y_coeffs.iter().enumerate() {
            for (j, b) in other.y_coeffs.iter().enumerate() {
                if !a.is_zero() && !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        Self::new(self.field, out)
    }

    /// Largest `m` with `X^m` dividing every coefficient.
    pub fn x_valuation(&self) -> Option<usize> {
        self.y_coeffs.iter().filter_map(Polynomial::x_valuation).min()
    }

    /// Divides every coefficient by `X^m`; `m` must not exceed the valuation.
    pub(crate) fn shift_down_x(&self, m: usize) -> Self {
        Self::new(
            self.field,
            self.y_coeffs
                .iter()
                .map(|c| c.shift_down(m).expect("shift within the X-valuation"))
                .collect(),
        )
    }

    /// `Q(0, Y)` as a univariate polynomial in `Y`.
    pub fn at_x_zero(&self) -> Polynomial {
        Polynomial::from_coeffs(self.field, self.y_coeffs.iter().map(|c| c.coeff(0)).collect())
    }

    /// `Q(X, X Y + gamma)`.
    pub fn substitute_xy_plus(&self, gamma: Fe) -> Self {
        // Horner: acc <- acc * (XY + gamma) + Q_t
        let mut acc: Vec<Polynomial> = Vec::with_capacity(self.y_coeffs.len());
        for c in self.y_coeffs.iter().rev() {
            let mut next = vec![Polynomial::zero(self.field); acc.len() + 1];
            for (j, a) in acc.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                next[j + 1] = next[j + 1].add(&a.shift_up(1));
                if !gamma.is_zero() {
                    next[j] = next[j].add(&a.scale(gamma));
                }
            }
            next[0] = next[0].add(c);
            acc = next;
        }
        Self::new(self.field, acc)
    }
}

impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (t, c) in self.y_coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match t {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*Y")?,
                _ => write!(f, "({c})*Y^{t}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.y_coeffs.iter()).finish()
    }
}
