//! Exact dense linear algebra over the rationals: the fraction-free
//! positive-semidefiniteness test that certificates rest on, a rational
//! LDL^T for square extraction, and small solvers used by the rounding
//! projections. Everything here is deterministic.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::rational::{denominator_lcm, Rat};

pub type RatMat = Vec<Vec<Rat>>;

pub fn mat_mul(a: &RatMat, b: &RatMat) -> RatMat {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    let mut out = vec![vec![Rat::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                let prod = &a[i][l] * &b[l][j];
                out[i][j] += prod;
            }
        }
    }
    out
}

/// Exact determinant by Gaussian elimination with partial pivoting.
pub fn determinant(a: &[Vec<Rat>]) -> Rat {
    let n = a.len();
    let mut m: RatMat = a.to_vec();
    let mut det = Rat::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return Rat::zero();
        };
        if p != k {
            m.swap(p, k);
            det = -det;
        }
        det *= &m[k][k];
        let pivot = m[k][k].clone();
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let factor = &m[i][k] / &pivot;
            for j in k..n {
                let delta = &factor * &m[k][j];
                m[i][j] -= delta;
            }
        }
    }
    det
}

/// Outcome of the exact PSD test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PsdOutcome {
    Psd,
    /// A pivot (Schur-complement diagonal) came out negative, or a zero
    /// diagonal had a non-zero residual row; `index` is the offending pivot
    /// position in the pivoted order.
    NotPsd { index: usize },
}

impl PsdOutcome {
    pub fn is_psd(&self) -> bool {
        matches!(self, PsdOutcome::Psd)
    }
}

/// Fraction-free (Bareiss) symmetric elimination with diagonal pivoting.
///
/// Denominators are cleared up front; the integer updates then divide
/// exactly, which keeps entry growth polynomial. Semidefinite inputs are
/// handled by requiring that once no positive diagonal remains, the whole
/// residual block is zero.
pub fn psd_check(a: &RatMat) -> PsdOutcome {
    let n = a.len();
    if n == 0 {
        return PsdOutcome::Psd;
    }
    let lcm = denominator_lcm(a.iter().flat_map(|row| row.iter()));
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .map(|row| {
            row.iter()
                .map(|q| (q * Rat::from_integer(lcm.clone())).to_integer())
                .collect()
        })
        .collect();
    let mut prev = BigInt::one();
    for k in 0..n {
        // Deterministic pivot: the largest positive diagonal entry.
        let mut best: Option<usize> = None;
        for r in k..n {
            if m[r][r].is_positive() && best.map_or(true, |b| m[r][r] > m[b][b]) {
                best = Some(r);
            }
        }
        let Some(r) = best else {
            // No positive diagonal left: PSD iff the residual block is zero.
            for i in k..n {
                if m[i][i].is_negative() {
                    return PsdOutcome::NotPsd { index: i };
                }
            }
            for i in k..n {
                for j in k..n {
                    if !m[i][j].is_zero() {
                        return PsdOutcome::NotPsd { index: i };
                    }
                }
            }
            return PsdOutcome::Psd;
        };
        if r != k {
            m.swap(r, k);
            for row in m.iter_mut() {
                row.swap(r, k);
            }
        }
        let pivot = m[k][k].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &pivot * &m[i][j] - &m[i][k] * &m[j][k];
                m[i][j] = num / &prev;
            }
        }
        prev = pivot;
    }
    PsdOutcome::Psd
}

/// Rational LDL^T with symmetric pivoting for a PSD matrix:
/// `P A P^T = L D L^T` with `L` unit lower triangular and `D >= 0`.
/// Returns `None` if the matrix is not PSD.
#[derive(Debug, Clone)]
pub struct Ldlt {
    /// `perm[i]` is the original index placed at pivoted position `i`.
    pub perm: Vec<usize>,
    pub l: RatMat,
    pub d: Vec<Rat>,
}

pub fn ldlt_psd(a: &RatMat) -> Option<Ldlt> {
    let n = a.len();
    let mut m = a.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut l: RatMat = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                .collect()
        })
        .collect();
    let mut d = vec![Rat::zero(); n];
    for k in 0..n {
        let mut best: Option<usize> = None;
        for r in k..n {
            if m[r][r].is_positive() && best.map_or(true, |b| m[r][r] > m[b][b]) {
                best = Some(r);
            }
        }
        let Some(r) = best else {
            for i in k..n {
                for j in k..n {
                    if !m[i][j].is_zero() {
                        return None;
                    }
                }
            }
            break;
        };
        if r != k {
            perm.swap(r, k);
            m.swap(r, k);
            for row in m.iter_mut() {
                row.swap(r, k);
            }
            // Swap the already-computed part of L.
            for col in 0..k {
                let tmp = l[r][col].clone();
                l[r][col] = l[k][col].clone();
                l[k][col] = tmp;
            }
        }
        let pivot = m[k][k].clone();
        d[k] = pivot.clone();
        for i in k + 1..n {
            l[i][k] = &m[i][k] / &pivot;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let delta = &l[i][k] * &m[k][j];
                m[i][j] -= delta;
            }
        }
    }
    Some(Ldlt { perm, l, d })
}

/// Solve `A x = b` for PSD `A`, allowing singular systems. Returns a
/// particular solution, or `None` when `A` is not PSD or `b` is outside the
/// range of `A`.
pub fn solve_psd(a: &RatMat, b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.len();
    let f = ldlt_psd(a)?;
    // Permuted right-hand side.
    let pb: Vec<Rat> = (0..n).map(|i| b[f.perm[i]].clone()).collect();
    // Forward solve L z = P b.
    let mut z = pb;
    for i in 0..n {
        for j in 0..i {
            let delta = &f.l[i][j] * &z[j];
            z[i] -= delta;
        }
    }
    // Diagonal solve D y = z, with consistency checks at zero pivots.
    let mut y = vec![Rat::zero(); n];
    for i in 0..n {
        if f.d[i].is_zero() {
            if !z[i].is_zero() {
                return None;
            }
        } else {
            y[i] = &z[i] / &f.d[i];
        }
    }
    // Back solve L^T w = y.
    let mut w = y;
    for i in (0..n).rev() {
        for j in i + 1..n {
            let delta = &f.l[j][i] * &w[j];
            w[i] -= delta;
        }
    }
    // Undo the permutation.
    let mut x = vec![Rat::zero(); n];
    for i in 0..n {
        x[f.perm[i]] = w[i].clone();
    }
    Some(x)
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut RatMat) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(p, r);
        let inv = m[r][c].clone();
        for j in 0..cols {
            m[r][j] = &m[r][j] / &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let delta = &f * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

/// A basis (as rows) of the row space of `m`.
pub fn row_space_basis(m: &RatMat) -> RatMat {
    let mut work = m.clone();
    let pivots = rref(&mut work);
    work.truncate(pivots.len());
    work
}
