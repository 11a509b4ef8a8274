//! Exact certificates and their verifiers. A `GramCertificate` witnesses
//! membership in the sum-of-squares cone; a `DualCertificate` witnesses
//! non-membership via a separating linear functional. Both verify from
//! scratch in exact rational arithmetic, independent of how they were
//! found: nothing downstream ever has to trust the floating-point solver.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::basis::{half_newton_basis, MonomialBasis};
use crate::error::{Error, Result};
use crate::form::{Exponents, Form};
use crate::gram::expand_gram;
use crate::linalg::{ldlt_psd, psd_check, RatMat};
use crate::rational::Rat;

/// A symmetric rational matrix `G` over a monomial basis `z` with
/// `z^T G z = p` and `G` positive semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct GramCertificate {
    pub basis: MonomialBasis,
    pub gram: RatMat,
}

impl GramCertificate {
    /// The empty certificate for the zero form.
    pub fn empty(n_vars: usize) -> GramCertificate {
        GramCertificate {
            basis: MonomialBasis::new(n_vars, 0, Vec::new()),
            gram: Vec::new(),
        }
    }

    /// The certified form, by exact expansion.
    pub fn expand(&self) -> Form {
        if self.basis.is_empty() {
            return Form::zero(self.basis.n_vars.max(1));
        }
        expand_gram(&self.basis, &self.gram)
    }
}

/// A linear functional on degree-`m` monomials, non-negative on all squares
/// over `basis` (its moment matrix is PSD) and strictly negative on the
/// separated form. Monomials absent from the map take the value zero.
#[derive(Debug, Clone, PartialEq)]
pub struct DualCertificate {
    pub basis: MonomialBasis,
    pub functional: BTreeMap<Exponents, Rat>,
}

impl DualCertificate {
    /// Apply the functional to a form of the matching degree.
    pub fn apply(&self, p: &Form) -> Rat {
        let mut total = Rat::zero();
        for (gamma, coeff) in p.terms() {
            if let Some(w) = self.functional.get(gamma) {
                total += w * coeff;
            }
        }
        total
    }

    /// The moment matrix induced on `basis x basis`.
    pub fn moment_matrix(&self) -> RatMat {
        let n = self.basis.len();
        let mut m = vec![vec![Rat::zero(); n]; n];
        for i in 0..n {
            for j in i..n {
                let gamma = self.basis.monomials[i].add(&self.basis.monomials[j]);
                let v = self
                    .functional
                    .get(&gamma)
                    .cloned()
                    .unwrap_or_else(Rat::zero);
                m[i][j] = v.clone();
                m[j][i] = v;
            }
        }
        m
    }

    /// The point-evaluation functional `gamma -> v^gamma`, which separates
    /// any form with `p(v) < 0` from the sum-of-squares cone.
    pub fn from_evaluation_point(basis: MonomialBasis, degree: u32, v: &[Rat]) -> DualCertificate {
        let mut functional = BTreeMap::new();
        for gamma in crate::form::exponents_of_degree(v.len(), degree) {
            let mono = Form::monomial(v.len(), gamma.clone(), Rat::from_integer(1.into()));
            let value = mono.evaluate(v).expect("matching dimension");
            if !value.is_zero() {
                functional.insert(gamma, value);
            }
        }
        DualCertificate { basis, functional }
    }
}

/// Exact check that `cert` witnesses `p` as a sum of squares: the expansion
/// `z^T G z` must equal `p` coefficient-for-coefficient, and `G` must pass
/// the fraction-free PSD test.
pub fn verify_gram_exact(p: &Form, cert: &GramCertificate) -> bool {
    let n = cert.basis.len();
    if cert.gram.len() != n || cert.gram.iter().any(|row| row.len() != n) {
        return false;
    }
    // Symmetry.
    for i in 0..n {
        for j in i + 1..n {
            if cert.gram[i][j] != cert.gram[j][i] {
                return false;
            }
        }
    }
    if &cert.expand() != p {
        return false;
    }
    psd_check(&cert.gram).is_psd()
}

/// Exact check that `dual` proves `p` is not a sum of squares.
///
/// Three conditions: the moment matrix on `dual.basis` is exactly PSD (so
/// the functional is non-negative on every square over that basis), the
/// functional is strictly negative on `p`, and `dual.basis` covers the half
/// Newton polytope of `p` (so no square summand of `p` can escape the
/// basis). Together these mean no sum of squares can equal `p`.
pub fn verify_dual_exact(p: &Form, dual: &DualCertificate) -> bool {
    if p.is_zero() {
        return false;
    }
    let Ok(needed) = half_newton_basis(p) else {
        // Odd degree: not in scope for dual certificates.
        return false;
    };
    if !needed
        .monomials
        .iter()
        .all(|m| dual.basis.position(m).is_some())
    {
        return false;
    }
    if !dual.apply(p).is_negative() {
        return false;
    }
    psd_check(&dual.moment_matrix()).is_psd()
}

/// Decompose a valid certificate into weighted squares:
/// `p = sum_k weight_k * g_k^2` with positive rational weights, via the
/// exact LDL^T of the Gram matrix. At most `basis.len()` squares.
pub fn extract_squares(cert: &GramCertificate) -> Result<Vec<(Rat, Form)>> {
    let n = cert.basis.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let f = ldlt_psd(&cert.gram).ok_or(Error::InvalidCertificate)?;
    let mut out = Vec::new();
    for k in 0..n {
        if f.d[k].is_zero() {
            continue;
        }
        let mut terms = Vec::new();
        for i in k..n {
            if !f.l[i][k].is_zero() {
                terms.push((
                    cert.basis.monomials[f.perm[i]].clone(),
                    f.l[i][k].clone(),
                ));
            }
        }
        let g = Form::new(cert.basis.n_vars, terms).expect("basis monomials share a degree");
        out.push((f.d[k].clone(), g));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::MonomialBasis;
    use crate::parse::parse_form;
    use crate::rational::{rat, rat_int};

    fn e(v: &[u32]) -> Exponents {
        Exponents(v.to_vec())
    }

    #[test]
    fn valid_rank_one_certificate() {
        let p = parse_form("x^2*y^2", 2).unwrap();
        let cert = GramCertificate {
            basis: MonomialBasis::new(2, 2, vec![e(&[1, 1])]),
            gram: vec![vec![rat_int(1)]],
        };
        assert!(verify_gram_exact(&p, &cert));
        let squares = extract_squares(&cert).unwrap();
        assert_eq!(squares.len(), 1);
        assert_eq!(squares[0].0, rat_int(1));
        assert_eq!(squares[0].1, parse_form("x*y", 2).unwrap());
    }

    #[test]
    fn tampered_certificate_fails_expansion() {
        let p = parse_form("x^2*y^2", 2).unwrap();
        let cert = GramCertificate {
            basis: MonomialBasis::new(2, 2, vec![e(&[1, 1])]),
            gram: vec![vec![rat_int(1) + rat(1, 1000)]],
        };
        assert!(!verify_gram_exact(&p, &cert));
    }

    #[test]
    fn indefinite_gram_fails_psd() {
        // G reproduces x^4 - x^2 y^2 + y^4 but has a negative pivot.
        let p = parse_form("x^4 - x^2*y^2 + y^4", 2).unwrap();
        let basis = MonomialBasis::new(2, 2, vec![e(&[0, 2]), e(&[1, 1]), e(&[2, 0])]);
        let g = vec![
            vec![rat_int(1), rat_int(0), rat_int(1)],
            vec![rat_int(0), rat_int(-3), rat_int(0)],
            vec![rat_int(1), rat_int(0), rat_int(1)],
        ];
        let cert = GramCertificate {
            basis,
            gram: g,
        };
        assert_eq!(cert.expand(), p);
        assert!(!verify_gram_exact(&p, &cert));
        assert!(extract_squares(&cert).is_err());
    }

    #[test]
    fn perfect_square_extraction() {
        let p = parse_form("x^4 + 2*x^2*y^2 + y^4", 2).unwrap();
        let basis = MonomialBasis::new(2, 2, vec![e(&[0, 2]), e(&[1, 1]), e(&[2, 0])]);
        let g = vec![
            vec![rat_int(1), rat_int(0), rat_int(1)],
            vec![rat_int(0), rat_int(0), rat_int(0)],
            vec![rat_int(1), rat_int(0), rat_int(1)],
        ];
        let cert = GramCertificate { basis, gram: g };
        assert!(verify_gram_exact(&p, &cert));
        let squares = extract_squares(&cert).unwrap();
        // Re-expansion equals p.
        let mut acc = Form::zero(2);
        for (w, g) in &squares {
            let sq = g.mul(g).unwrap().scale(w);
            acc = if acc.is_zero() { sq } else { acc.add(&sq).unwrap() };
        }
        assert_eq!(acc, p);
        assert!(squares.len() <= 3);
    }

    #[test]
    fn motzkin_separating_functional() {
        // Moment values: 1 on x^4y^2, x^2y^4, z^6; 2 on x^2y^2z^2. The
        // moment matrix over the half-Newton basis is diag(1, 2, 1, 1) and
        // the functional takes the value 3 - 6 = -3 on M.
        let m = crate::catalog::motzkin();
        let basis = half_newton_basis(&m).unwrap();
        let mut functional = BTreeMap::new();
        functional.insert(e(&[4, 2, 0]), rat_int(1));
        functional.insert(e(&[2, 4, 0]), rat_int(1));
        functional.insert(e(&[0, 0, 6]), rat_int(1));
        functional.insert(e(&[2, 2, 2]), rat_int(2));
        let dual = DualCertificate { basis, functional };
        assert_eq!(dual.apply(&m), rat_int(-3));
        assert!(verify_dual_exact(&m, &dual));
    }

    #[test]
    fn non_negative_functional_rejected() {
        let m = crate::catalog::motzkin();
        let basis = half_newton_basis(&m).unwrap();
        let mut functional = BTreeMap::new();
        functional.insert(e(&[4, 2, 0]), rat_int(1));
        let dual = DualCertificate {
            basis,
            functional,
        };
        // Value on M is +1.
        assert!(!verify_dual_exact(&m, &dual));
    }

    #[test]
    fn indefinite_moment_matrix_rejected() {
        let m = crate::catalog::motzkin();
        let basis = half_newton_basis(&m).unwrap();
        let mut functional = BTreeMap::new();
        // Negative on M but with a negative moment diagonal (z^6 entry).
        functional.insert(e(&[0, 0, 6]), rat_int(-1));
        let dual = DualCertificate { basis, functional };
        assert!(dual.apply(&m).is_negative());
        assert!(!verify_dual_exact(&m, &dual));
    }

    #[test]
    fn dual_basis_must_cover_half_newton() {
        // A functional over a too-small basis must be rejected even if its
        // moment matrix is PSD and its value on M is negative.
        let m = crate::catalog::motzkin();
        let tiny = MonomialBasis::new(3, 3, vec![e(&[0, 0, 3])]);
        let mut functional = BTreeMap::new();
        functional.insert(e(&[2, 2, 2]), rat_int(1));
        functional.insert(e(&[0, 0, 6]), rat_int(1));
        let dual = DualCertificate {
            basis: tiny,
            functional,
        };
        assert!(dual.apply(&m).is_negative());
        assert!(psd_check(&dual.moment_matrix()).is_psd());
        assert!(!verify_dual_exact(&m, &dual));
    }

    #[test]
    fn evaluation_point_separates_indefinite_forms() {
        let p = parse_form("x^4 - 3*x^2*y^2 + y^4", 2).unwrap();
        // p(1, 1) = -1 < 0.
        let basis = half_newton_basis(&p).unwrap();
        let dual =
            DualCertificate::from_evaluation_point(basis, 4, &[rat_int(1), rat_int(1)]);
        assert_eq!(dual.apply(&p), rat_int(-1));
        assert!(verify_dual_exact(&p, &dual));
    }
}
