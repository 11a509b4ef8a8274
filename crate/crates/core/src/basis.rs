//! Candidate monomial bases for square decompositions. A form of even
//! degree `m` can only be a sum of squares of forms supported on the
//! degree-`m/2` monomials whose doubles lie in the convex hull of the
//! form's support (the half Newton polytope), so restricting the Gram
//! matrix to that basis loses nothing.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::form::{exponents_of_degree, Exponents, Form};
use crate::rational::Rat;

/// An ordered, duplicate-free list of same-degree monomials.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialBasis {
    pub n_vars: usize,
    pub half_degree: u32,
    pub monomials: Vec<Exponents>,
}

impl MonomialBasis {
    pub fn new(n_vars: usize, half_degree: u32, mut monomials: Vec<Exponents>) -> MonomialBasis {
        monomials.sort();
        monomials.dedup();
        for m in &monomials {
            assert_eq!(m.len(), n_vars, "basis monomial dimension mismatch");
            assert_eq!(m.degree(), half_degree, "basis monomial degree mismatch");
        }
        MonomialBasis {
            n_vars,
            half_degree,
            monomials,
        }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Index of a monomial in the basis, if present.
    pub fn position(&self, exp: &Exponents) -> Option<usize> {
        self.monomials.binary_search(exp).ok()
    }
}

/// Every degree-`d` monomial in `n` variables, as a basis.
pub fn full_basis(n_vars: usize, half_degree: u32) -> MonomialBasis {
    MonomialBasis::new(
        n_vars,
        half_degree,
        exponents_of_degree(n_vars, half_degree),
    )
}

/// The half-Newton-polytope basis of `p`: all degree-`m/2` exponent vectors
/// whose doubles lie in the convex hull of `p`'s support.
pub fn half_newton_basis(p: &Form) -> Result<MonomialBasis> {
    let degree = p.degree().unwrap_or(0);
    if degree % 2 != 0 {
        return Err(Error::OddDegree { degree });
    }
    let half = degree / 2;
    if p.is_zero() {
        return Ok(MonomialBasis::new(p.n_vars(), 0, Vec::new()));
    }
    let support: Vec<Vec<Rat>> = p
        .support()
        .iter()
        .map(|e| e.0.iter().map(|&x| Rat::from_integer(x.into())).collect())
        .collect();
    let monomials = exponents_of_degree(p.n_vars(), half)
        .into_iter()
        .filter(|beta| {
            let target: Vec<Rat> = beta
                .double()
                .0
                .iter()
                .map(|&x| Rat::from_integer(x.into()))
                .collect();
            in_convex_hull(&support, &target)
        })
        .collect();
    Ok(MonomialBasis::new(p.n_vars(), half, monomials))
}

/// Exact convex-hull membership: does there exist `lambda >= 0` with
/// `sum lambda_i = 1` and `sum lambda_i points_i = target`? Decided by a
/// phase-1 simplex over the rationals, with Bland's rule so the pivoting
/// cannot cycle.
pub fn in_convex_hull(points: &[Vec<Rat>], target: &[Rat]) -> bool {
    if points.is_empty() {
        return false;
    }
    let dim = target.len();
    let rows = dim + 1; // coordinates plus the convexity row
    let cols = points.len();
    // minimize sum(s) subject to A lambda + s = t, lambda >= 0, s >= 0.
    let mut a: Vec<Vec<Rat>> = (0..rows)
        .map(|r| {
            (0..cols)
                .map(|c| {
                    if r < dim {
                        points[c][r].clone()
                    } else {
                        Rat::one()
                    }
                })
                .collect()
        })
        .collect();
    let mut t: Vec<Rat> = target.to_vec();
    t.push(Rat::one());
    // Normalize rows so the artificial starting basis is feasible (t >= 0).
    for r in 0..rows {
        if t[r] < Rat::zero() {
            for c in 0..cols {
                a[r][c] = -a[r][c].clone();
            }
            t[r] = -t[r].clone();
        }
    }
    // basis[r] < cols means a structural column; otherwise the row still
    // carries its artificial variable.
    let mut basis: Vec<usize> = (cols..cols + rows).collect();
    loop {
        // Reduced cost of structural column j under the phase-1 objective:
        // minus the sum of its tableau entries in rows whose basic variable
        // is still artificial.
        let mut entering: Option<usize> = None;
        for j in 0..cols {
            let mut reduced = Rat::zero();
            for r in 0..rows {
                if basis[r] >= cols {
                    reduced -= &a[r][j];
                }
            }
            if reduced < Rat::zero() {
                entering = Some(j);
                break; // Bland's rule: lowest-index improving column
            }
        }
        let Some(j) = entering else {
            // Optimal: feasible iff no artificial remains at positive level.
            return (0..rows).all(|r| basis[r] < cols || t[r].is_zero());
        };
        // Ratio test, ties broken by the lowest leaving basis index.
        let mut leave: Option<usize> = None;
        let mut best: Option<Rat> = None;
        for r in 0..rows {
            if a[r][j] > Rat::zero() {
                let ratio = &t[r] / &a[r][j];
                let better = match (&best, leave) {
                    (None, _) => true,
                    (Some(b), Some(lr)) => ratio < *b || (ratio == *b && basis[r] < basis[lr]),
                    (Some(b), None) => ratio < *b,
                };
                if better {
                    best = Some(ratio);
                    leave = Some(r);
                }
            }
        }
        let Some(r) = leave else {
            // Phase-1 is always bounded below by zero; no positive entry in
            // the entering column means the artificial level cannot move.
            return false;
        };
        // Pivot on (r, j).
        let pivot = a[r][j].clone();
        for c in 0..cols {
            a[r][c] = &a[r][c] / &pivot;
        }
        t[r] = &t[r] / &pivot;
        for i in 0..rows {
            if i == r || a[i][j].is_zero() {
                continue;
            }
            let f = a[i][j].clone();
            for c in 0..cols {
                let delta = &f * &a[r][c];
                a[i][c] -= delta;
            }
            let delta = &f * &t[r];
            t[i] -= delta;
        }
        basis[r] = j;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::parse::parse_form;
    use crate::rational::rat_int;

    fn e(v: &[u32]) -> Exponents {
        Exponents(v.to_vec())
    }

    #[test]
    fn hull_membership_triangle() {
        let pts = vec![
            vec![rat_int(0), rat_int(0)],
            vec![rat_int(2), rat_int(0)],
            vec![rat_int(0), rat_int(2)],
        ];
        assert!(in_convex_hull(&pts, &[rat_int(1), rat_int(1)]));
        assert!(in_convex_hull(&pts, &[rat_int(0), rat_int(0)]));
        assert!(!in_convex_hull(&pts, &[rat_int(2), rat_int(2)]));
        assert!(!in_convex_hull(&pts, &[rat_int(-1), rat_int(0)]));
    }

    #[test]
    fn motzkin_half_newton_basis() {
        // Support hull of M is spanned by (4,2,0), (2,4,0), (0,0,6); the
        // admissible half-degree monomials are z^3, xyz, xy^2, x^2y.
        let basis = half_newton_basis(&catalog::motzkin()).unwrap();
        assert_eq!(
            basis.monomials,
            vec![e(&[0, 0, 3]), e(&[1, 1, 1]), e(&[1, 2, 0]), e(&[2, 1, 0])]
        );
    }

    #[test]
    fn bi_quadratic_basis() {
        let p = parse_form("x^4 + 2*x^2*y^2 + y^4", 2).unwrap();
        let basis = half_newton_basis(&p).unwrap();
        assert_eq!(basis.monomials, vec![e(&[0, 2]), e(&[1, 1]), e(&[2, 0])]);
    }

    #[test]
    fn single_variable_slice() {
        let p = parse_form("x^6", 1).unwrap();
        let basis = half_newton_basis(&p).unwrap();
        assert_eq!(basis.monomials, vec![e(&[3])]);
    }

    #[test]
    fn odd_degree_is_an_error() {
        let p = parse_form("x^3", 1).unwrap();
        assert!(matches!(
            half_newton_basis(&p).unwrap_err(),
            Error::OddDegree { degree: 3 }
        ));
    }

    #[test]
    fn full_basis_counts() {
        assert_eq!(full_basis(3, 3).len(), 10);
        assert_eq!(full_basis(3, 4).len(), 15);
        // The half-Newton basis is always a subset of the full basis.
        let m = catalog::motzkin();
        let hb = half_newton_basis(&m).unwrap();
        let fb = full_basis(3, 3);
        assert!(hb.monomials.iter().all(|b| fb.position(b).is_some()));
    }
}
