//! The affine Gram parameterization: a form `p` of even degree `m` is a sum
//! of squares over a basis `z` of degree-`m/2` monomials exactly when some
//! PSD matrix `G` satisfies `z^T G z = p`. Matching coefficients monomial by
//! monomial yields one linear equation per reachable degree-`m` monomial;
//! this module builds and inspects that system.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::basis::MonomialBasis;
use crate::form::{Exponents, Form};
use crate::linalg::RatMat;
use crate::rational::Rat;

/// One linear equation: the entries of `G` at `pairs` (unordered index
/// pairs, counted twice off the diagonal) sum to `rhs`, the coefficient of
/// `gamma` in the target form.
#[derive(Debug, Clone)]
pub struct ClassEquation {
    pub gamma: Exponents,
    /// Unordered pairs `(i, j)` with `i <= j` and `basis[i] + basis[j] = gamma`.
    pub pairs: Vec<(usize, usize)>,
    pub rhs: Rat,
}

impl ClassEquation {
    /// Number of ordered pairs contributing to this equation.
    pub fn ordered_count(&self) -> usize {
        self.pairs
            .iter()
            .map(|&(i, j)| if i == j { 1 } else { 2 })
            .sum()
    }

    /// Whether `gamma` is the double of a basis monomial (i.e. the class
    /// touches the diagonal of `G`).
    pub fn has_diagonal(&self) -> bool {
        self.pairs.iter().any(|&(i, j)| i == j)
    }

    /// Evaluate the left-hand side on a symmetric matrix.
    pub fn lhs(&self, g: &RatMat) -> Rat {
        let mut s = Rat::zero();
        for &(i, j) in &self.pairs {
            if i == j {
                s += &g[i][i];
            } else {
                s += &g[i][j];
                s += &g[j][i];
            }
        }
        s
    }
}

/// The full constraint system for `p` over `basis`.
#[derive(Debug, Clone)]
pub struct GramSystem {
    pub basis: MonomialBasis,
    pub classes: Vec<ClassEquation>,
    /// Monomials of `p` that no pair of basis monomials can reach. Any such
    /// monomial makes the system infeasible outright.
    pub uncovered: Vec<Exponents>,
}

/// Build the coefficient-matching system for `p` over `basis`.
///
/// The basis degree must be half the degree of `p` (any basis degree is
/// accepted for the zero form).
pub fn gram_system(p: &Form, basis: &MonomialBasis) -> GramSystem {
    let mut groups: BTreeMap<Exponents, Vec<(usize, usize)>> = BTreeMap::new();
    for i in 0..basis.len() {
        for j in i..basis.len() {
            let gamma = basis.monomials[i].add(&basis.monomials[j]);
            groups.entry(gamma).or_default().push((i, j));
        }
    }
    let mut classes = Vec::with_capacity(groups.len());
    for (gamma, pairs) in groups {
        let rhs = p.coeff(&gamma);
        classes.push(ClassEquation { gamma, pairs, rhs });
    }
    let uncovered = p
        .support()
        .into_iter()
        .filter(|gamma| !classes.iter().any(|c| &c.gamma == gamma))
        .collect();
    GramSystem {
        basis: basis.clone(),
        classes,
        uncovered,
    }
}

/// Expand `z^T G z` exactly into a form over the basis monomials.
pub fn expand_gram(basis: &MonomialBasis, g: &RatMat) -> Form {
    let n = basis.len();
    let mut terms: BTreeMap<Exponents, Rat> = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            if g[i][j].is_zero() {
                continue;
            }
            let gamma = basis.monomials[i].add(&basis.monomials[j]);
            let entry = terms.entry(gamma).or_insert_with(Rat::zero);
            *entry += &g[i][j];
        }
    }
    Form::new(basis.n_vars, terms).expect("pair sums share a degree")
}
