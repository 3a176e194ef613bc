//! Matrices over `F_q[X]`, leading positions, and module minimisation.
//!
//! A square matrix is in *weak Popov form* when the leading positions of its
//! rows are pairwise distinct. Such a matrix contains a row of minimal degree
//! among all vectors of its row space, and its orthogonality defect
//! `deg V - deg det V` is zero. [`PolyMatrix::mulders_storjohann`] reaches
//! this form by simple row reductions.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::poly::Polynomial;

/// `max_i deg v_i`, or `None` for the zero row.
pub fn row_degree(row: &[Polynomial]) -> Option<usize> {
    row.iter().filter_map(|p| p.deg()).max()
}

/// Largest index attaining the row degree.
pub fn leading_position(row: &[Polynomial]) -> Result<usize> {
    let d = row_degree(row).ok_or(Error::ZeroRow(0))?;
    Ok(row.iter().rposition(|p| p.deg() == Some(d)).unwrap())
}

/// `(degree, leading position)` of a row, `None` for the zero row.
fn degree_and_lp(row: &[Polynomial]) -> Option<(usize, usize)> {
    let d = row_degree(row)?;
    Some((d, row.iter().rposition(|p| p.deg() == Some(d)).unwrap()))
}

/// Per-row degree, leading position and value `psi(v) = m * deg v + LP(v)`;
/// all three are `None` for zero rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowProfile {
    pub degree: Vec<Option<usize>>,
    pub leading_position: Vec<Option<usize>>,
    pub value: Vec<Option<usize>>,
}

/// Entry-wise degrees, rendered with `⊥` for zero entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile(pub Vec<Vec<Option<usize>>>);

impl DegreeProfile {
    /// Builds a profile from a literal grid where negative values denote `⊥`.
    pub fn from_grid(grid: &[&[i64]]) -> Self {
        DegreeProfile(
            grid.iter()
                .map(|r| {
                    r.iter()
                        .map(|&d| if d < 0 { None } else { Some(d as usize) })
                        .collect()
                })
                .collect(),
        )
    }
}

impl fmt::Display for DegreeProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.0 {
            let cells: Vec<String> = row
                .iter()
                .map(|d| match d {
                    Some(d) => format!("{d:>3}"),
                    None => "  ⊥".to_string(),
                })
                .collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Which minimisation routine to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    MuldersStorjohann,
    /// Divide-and-conquer variant. Served by Mulders–Storjohann: both perform
    /// the same row reductions, only the order of work differs.
    Alekhnovich,
}

/// Output of a minimisation run.
#[derive(Debug, Clone)]
pub struct Minimised {
    pub reduced: PolyMatrix,
    pub reductions: usize,
    /// `U` with `U * input = reduced`, when requested.
    pub transform: Option<PolyMatrix>,
    pub engine: Engine,
}

#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    field: PrimeField,
    cols: usize,
    rows: Vec<Vec<Polynomial>>,
}

impl PolyMatrix {
    pub fn new(field: PrimeField, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged matrix".into()));
        }
        if rows.iter().flatten().any(|p| p.field() != field) {
            return Err(Error::Dimension("entries over different fields".into()));
        }
        Ok(PolyMatrix { field, cols, rows })
    }

    /// Matrix from integer coefficient lists; handy in tests and examples.
    pub fn from_int_rows(field: PrimeField, rows: &[&[&[i64]]]) -> Result<Self> {
        Self::new(
            field,
            rows.iter()
                .map(|r| r.iter().map(|c| Polynomial::from_ints(field, c)).collect())
                .collect(),
        )
    }

    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            field,
            cols,
            rows: vec![vec![Polynomial::zero(field); cols]; rows],
        }
    }

    pub fn identity(field: PrimeField, m: usize) -> Self {
        let mut out = Self::zeros(field, m, m);
        for i in 0..m {
            out.rows[i][i] = Polynomial::one(field);
        }
        out
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.nrows() == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        self.rows[i][j] = p;
    }

    pub fn row(&self, i: usize) -> &[Polynomial] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Vec<Polynomial>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<Polynomial>> {
        self.rows
    }

    pub fn row_degree(&self, i: usize) -> Option<usize> {
        row_degree(&self.rows[i])
    }

    pub fn leading_position(&self, i: usize) -> Result<usize> {
        degree_and_lp(&self.rows[i])
            .map(|(_, lp)| lp)
            .ok_or(Error::ZeroRow(i))
    }

    pub fn row_profile(&self) -> RowProfile {
        let m = self.cols;
        let pairs: Vec<_> = self.rows.iter().map(|r| degree_and_lp(r)).collect();
        RowProfile {
            degree: pairs.iter().map(|p| p.map(|(d, _)| d)).collect(),
            leading_position: pairs.iter().map(|p| p.map(|(_, lp)| lp)).collect(),
            value: pairs.iter().map(|p| p.map(|(d, lp)| m * d + lp)).collect(),
        }
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        DegreeProfile(
            self.rows
                .iter()
                .map(|r| r.iter().map(Polynomial::deg).collect())
                .collect(),
        )
    }

    /// `deg V`: the sum of row degrees. Zero rows are rejected.
    pub fn degree(&self) -> Result<usize> {
        self.rows
            .iter()
            .enumerate()
            .map(|(i, r)| row_degree(r).ok_or(Error::ZeroRow(i)))
            .sum()
    }

    pub fn is_weak_popov(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let mut seen = vec![false; self.cols];
        for r in &self.rows {
            match degree_and_lp(r) {
                None => return false,
                Some((_, lp)) if seen[lp] => return false,
                Some((_, lp)) => seen[lp] = true,
            }
        }
        true
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != rhs.nrows() {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.nrows(),
                self.cols,
                rhs.nrows(),
                rhs.cols
            )));
        }
        let mut out = Self::zeros(self.field, self.nrows(), rhs.cols);
        for i in 0..self.nrows() {
            for j in 0..rhs.cols {
                let mut acc = Polynomial::zero(self.field);
                for t in 0..self.cols {
                    if !self.rows[i][t].is_zero() && !rhs.rows[t][j].is_zero() {
                        acc = acc.add(&self.rows[i][t].mul(&rhs.rows[t][j]));
                    }
                }
                out.rows[i][j] = acc;
            }
        }
        Ok(out)
    }

    /// Multiplies column `t` by `X^{weights[t]}`.
    pub fn weight_columns(&self, weights: &[usize]) -> Result<PolyMatrix> {
        self.check_weights(weights)?;
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().zip(weights).map(|(p, &w)| p.shift_up(w)).collect())
            .collect();
        Ok(PolyMatrix {
            field: self.field,
            cols: self.cols,
            rows,
        })
    }

    /// Exactly divides column `t` by `X^{weights[t]}`.
    pub fn unweight_columns(&self, weights: &[usize]) -> Result<PolyMatrix> {
        self.check_weights(weights)?;
        let rows = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .zip(weights)
                    .map(|(p, &w)| p.shift_down(w))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyMatrix {
            field: self.field,
            cols: self.cols,
            rows,
        })
    }

    fn check_weights(&self, weights: &[usize]) -> Result<()> {
        if weights.len() != self.cols {
            return Err(Error::Dimension(format!(
                "{} weights for {} columns",
                weights.len(),
                self.cols
            )));
        }
        Ok(())
    }

    /// Determinant by fraction-free (Bareiss) elimination over `F_q[X]`.
    /// Intended for test-scale matrices.
    pub fn determinant(&self) -> Result<Polynomial> {
        if !self.is_square() {
            return Err(Error::Dimension("determinant of a non-square matrix".into()));
        }
        let n = self.cols;
        if n == 0 {
            return Ok(Polynomial::one(self.field));
        }
        let mut m = self.rows.clone();
        let mut negate = false;
        let mut prev = Polynomial::one(self.field);
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                    return Ok(Polynomial::zero(self.field));
                };
                m.swap(k, swap);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                    m[i][j] = num.exact_div(&prev)?;
                }
            }
            prev = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        Ok(if negate { det.neg() } else { det })
    }

    /// `deg V - deg det V`.
    pub fn orthogonality_defect(&self) -> Result<usize> {
        let det = self.determinant()?;
        let dd = det.deg().ok_or(Error::Singular)?;
        let deg = self.degree()?;
        deg.checked_sub(dd)
            .ok_or_else(|| Error::Invariant("deg det V exceeds deg V".into()))
    }

    /// Replaces row `j` by `v_j - a X^d v_i`, cancelling the leading term of `v_j`.
    pub fn row_reduce_step(&self, i: usize, j: usize) -> Result<PolyMatrix> {
        let mut out = self.clone();
        let (a, d) = reduction_coefficients(&self.rows, i, j)?;
        out.apply_reduction(i, j, a, d);
        Ok(out)
    }

    fn apply_reduction(&mut self, i: usize, j: usize, a: crate::field::Fe, d: usize) {
        let pivot = self.rows[i].clone();
        for (t, p) in pivot.iter().enumerate() {
            if !p.is_zero() {
                self.rows[j][t] = self.rows[j][t].sub_scaled_shifted(a, d, p);
            }
        }
    }

    /// Mulders–Storjohann: row reductions until the leading positions are
    /// pairwise distinct.
    ///
    /// Pair selection is deterministic: scan leading positions in ascending
    /// order; at the first position shared by two or more rows, take the row
    /// of smallest `(degree, index)` as pivot and reduce the row of largest
    /// `(degree, index)` among the others.
    ///
    /// Fewer than `m (Δ(V) + (m+1)/2)` reductions are performed.
    pub fn mulders_storjohann(&self, with_transform: bool) -> Result<Minimised> {
        if !self.is_square() {
            return Err(Error::Dimension("minimisation needs a square matrix".into()));
        }
        let m = self.cols;
        let mut v = self.clone();
        let mut u = with_transform.then(|| Self::identity(self.field, m));
        let mut info: Vec<(usize, usize)> = v
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| degree_and_lp(r).ok_or(Error::ZeroRow(i)))
            .collect::<Result<_>>()?;
        let mut reductions = 0usize;
        let mut claims: Vec<Vec<usize>> = vec![Vec::new(); m];
        loop {
            for c in claims.iter_mut() {
                c.clear();
            }
            for (i, &(_, lp)) in info.iter().enumerate() {
                claims[lp].push(i);
            }
            let Some(clash) = claims.iter().find(|c| c.len() >= 2) else {
                break;
            };
            let key = |i: usize| (info[i].0, i);
            let pivot = clash.iter().copied().min_by_key(|&i| key(i)).unwrap();
            let target = clash
                .iter()
                .copied()
                .filter(|&i| i != pivot)
                .max_by_key(|&i| key(i))
                .unwrap();
            let (a, d) = reduction_coefficients(&v.rows, pivot, target)?;
            v.apply_reduction(pivot, target, a, d);
            if let Some(u) = u.as_mut() {
                u.apply_reduction(pivot, target, a, d);
            }
            info[target] = degree_and_lp(&v.rows[target]).ok_or(Error::ZeroRow(target))?;
            reductions += 1;
        }
        Ok(Minimised {
            reduced: v,
            reductions,
            transform: u,
            engine: Engine::MuldersStorjohann,
        })
    }

    /// Unimodular-equivalent matrix in weak Popov form.
    pub fn reduce_to_weak_popov(&self, engine: Engine) -> Result<Minimised> {
        match engine {
            Engine::MuldersStorjohann | Engine::Alekhnovich => self.mulders_storjohann(false),
        }
    }

    /// Index of a row of minimal degree (smallest index on ties).
    pub fn minimal_row(&self) -> Result<usize> {
        if !self.is_weak_popov() {
            return Err(Error::NotWeakPopov);
        }
        Ok((0..self.nrows())
            .min_by_key(|&i| (self.row_degree(i), i))
            .expect("weak Popov matrices are nonempty"))
    }

    /// Whether `q` lies in the `F_q[X]`-row space, by repeated leading-term
    /// cancellation against the rows of this weak Popov matrix.
    pub fn module_membership(&self, q: &[Polynomial]) -> Result<bool> {
        if q.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                q.len(),
                self.cols
            )));
        }
        if !self.is_weak_popov() {
            return Err(Error::NotWeakPopov);
        }
        let info: Vec<(usize, usize)> = self
            .rows
            .iter()
            .map(|r| degree_and_lp(r).unwrap())
            .collect();
        let mut q = q.to_vec();
        while let Some((dq, lp)) = degree_and_lp(&q) {
            let Some(i) = info.iter().position(|&(d, l)| l == lp && d <= dq) else {
                return Ok(false);
            };
            let a = q[lp].lead().unwrap() * self.rows[i][lp].lead().unwrap().inv()?;
            let shift = dq - info[i].0;
            for (t, p) in self.rows[i].iter().enumerate() {
                q[t] = q[t].sub_scaled_shifted(a, shift, p);
            }
        }
        Ok(true)
    }
}

fn reduction_coefficients(
    rows: &[Vec<Polynomial>],
    i: usize,
    j: usize,
) -> Result<(crate::field::Fe, usize)> {
    let m = rows.len();
    if i >= m || j >= m {
        return Err(Error::InvalidReduction(format!(
            "row index out of range ({i}, {j}) for {m} rows"
        )));
    }
    if i == j {
        return Err(Error::InvalidReduction("a row cannot reduce itself".into()));
    }
    let (di, li) = degree_and_lp(&rows[i]).ok_or(Error::ZeroRow(i))?;
    let (dj, lj) = degree_and_lp(&rows[j]).ok_or(Error::ZeroRow(j))?;
    if li != lj {
        return Err(Error::InvalidReduction(format!(
            "leading positions differ ({li} vs {lj})"
        )));
    }
    if di > dj {
        return Err(Error::InvalidReduction(format!(
            "pivot degree {di} exceeds target degree {dj}"
        )));
    }
    let a = rows[j][lj].lead().unwrap() * rows[i][li].lead().unwrap().inv()?;
    Ok((a, dj - di))
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows.iter()).finish()
    }
}
