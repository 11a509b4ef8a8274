//! Sparse homogeneous polynomials ("forms") with exact rational
//! coefficients. All operations are pure; a `Form` is immutable after
//! construction and cheap to share between threads.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rat;

/// Exponent vector of a monomial, one entry per variable.
///
/// Ordering is graded lexicographic: first by total degree, then
/// lexicographically on the exponent tuple. Term maps keyed by `Exponents`
/// therefore iterate deterministically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Exponents(pub Vec<u32>);

impl Exponents {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &Exponents) -> Exponents {
        Exponents(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn checked_sub(&self, other: &Exponents) -> Option<Exponents> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_sub(*b)?);
        }
        Some(Exponents(out))
    }

    pub fn double(&self) -> Exponents {
        Exponents(self.0.iter().map(|e| 2 * e).collect())
    }

    pub fn is_all_even(&self) -> bool {
        self.0.iter().all(|e| e % 2 == 0)
    }

    /// Graded-lex comparison but with the *descending* lex convention used
    /// for printing (x before y before z).
    fn print_key(&self) -> (u32, Vec<i64>) {
        (self.degree(), self.0.iter().map(|&e| -(e as i64)).collect())
    }
}

/// Enumerate all exponent vectors of the given total degree, graded-lex
/// ascending.
pub fn exponents_of_degree(n_vars: usize, degree: u32) -> Vec<Exponents> {
    let mut out = Vec::new();
    let mut current = vec![0u32; n_vars];
    fn rec(out: &mut Vec<Exponents>, current: &mut Vec<u32>, pos: usize, remaining: u32) {
        if pos + 1 == current.len() {
            current[pos] = remaining;
            out.push(Exponents(current.clone()));
            return;
        }
        for e in 0..=remaining {
            current[pos] = e;
            rec(out, current, pos + 1, remaining - e);
        }
        current[pos] = 0;
    }
    if n_vars == 0 {
        return out;
    }
    rec(&mut out, &mut current, 0, degree);
    out.sort();
    out
}

/// Number of monomials of degree `d` in `n` variables: C(n+d-1, n-1).
pub fn dimension_of_space(n: usize, d: u32) -> u128 {
    // binomial(n + d - 1, n - 1)
    let n = n as u128;
    let d = d as u128;
    let top = n + d - 1;
    let k = (n - 1).min(d);
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= top - i;
        den *= i + 1;
        let g = gcd_u128(num, den);
        num /= g;
        den /= g;
    }
    num / den
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.max(1)
}

/// A homogeneous polynomial with non-zero exact rational coefficients.
///
/// The zero form is the empty term map and may stand in for any degree;
/// `degree()` returns `None` for it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Form {
    n_vars: usize,
    terms: BTreeMap<Exponents, Rat>,
}

impl Form {
    /// Build a form from raw terms, combining duplicates and pruning zeros.
    /// Rejects mixed degrees and mismatched exponent lengths.
    pub fn new<I: IntoIterator<Item = (Exponents, Rat)>>(n_vars: usize, terms: I) -> Result<Form> {
        assert!(n_vars >= 1, "a form needs at least one variable");
        let mut map: BTreeMap<Exponents, Rat> = BTreeMap::new();
        let mut degree: Option<u32> = None;
        for (exp, coeff) in terms {
            if exp.len() != n_vars {
                return Err(Error::DimensionMismatch {
                    expected: n_vars,
                    found: exp.len(),
                });
            }
            if coeff.is_zero() {
                continue;
            }
            let d = exp.degree();
            match degree {
                None => degree = Some(d),
                Some(expected) if expected != d => {
                    return Err(Error::NonHomogeneous {
                        expected,
                        found: d,
                    })
                }
                _ => {}
            }
            let entry = map.entry(exp).or_insert_with(Rat::zero);
            *entry += coeff;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(Form { n_vars, terms: map })
    }

    pub fn zero(n_vars: usize) -> Form {
        assert!(n_vars >= 1);
        Form {
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    /// The monomial `coeff * x^exp`.
    pub fn monomial(n_vars: usize, exp: Exponents, coeff: Rat) -> Form {
        Form::new(n_vars, [(exp, coeff)]).expect("monomial exponents match n_vars")
    }

    /// The variable `x_{index}` (0-based) as a linear form.
    pub fn variable(n_vars: usize, index: usize) -> Form {
        assert!(index < n_vars);
        let mut e = vec![0u32; n_vars];
        e[index] = 1;
        Form::monomial(n_vars, Exponents(e), Rat::one())
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    /// Total degree; `None` for the zero form.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next().map(|e| e.degree())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &Exponents) -> Rat {
        self.terms.get(exp).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn support(&self) -> Vec<Exponents> {
        self.terms.keys().cloned().collect()
    }

    /// Largest term in the descending-lex print order.
    pub fn leading_term(&self) -> Option<(&Exponents, &Rat)> {
        self.terms
            .iter()
            .min_by(|(a, _), (b, _)| a.print_key().cmp(&b.print_key()))
    }

    pub fn is_even_form(&self) -> bool {
        self.terms.keys().all(|e| e.is_all_even())
    }

    pub fn max_abs_coeff(&self) -> Rat {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rat::zero)
    }

    pub fn coeff_one_norm(&self) -> Rat {
        self.terms.values().map(|c| c.abs()).sum()
    }

    fn check_dims(&self, other: &Form) -> Result<()> {
        if self.n_vars != other.n_vars {
            return Err(Error::DimensionMismatch {
                expected: self.n_vars,
                found: other.n_vars,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Form) -> Result<Form> {
        self.check_dims(other)?;
        if let (Some(a), Some(b)) = (self.degree(), other.degree()) {
            if a != b {
                return Err(Error::DegreeMismatch { left: a, right: b });
            }
        }
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let entry = terms.entry(e.clone()).or_insert_with(Rat::zero);
            *entry += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(Form {
            n_vars: self.n_vars,
            terms,
        })
    }

    pub fn sub(&self, other: &Form) -> Result<Form> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Form {
        Form {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Form {
        if c.is_zero() {
            return Form::zero(self.n_vars);
        }
        Form {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Form) -> Result<Form> {
        self.check_dims(other)?;
        let mut terms: BTreeMap<Exponents, Rat> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.add(eb);
                let entry = terms.entry(e).or_insert_with(Rat::zero);
                *entry += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(Form {
            n_vars: self.n_vars,
            terms,
        })
    }

    pub fn pow(&self, k: u32) -> Form {
        let mut acc = Form::monomial(
            self.n_vars,
            Exponents(vec![0; self.n_vars]),
            Rat::one(),
        );
        for _ in 0..k {
            acc = acc.mul(self).expect("same dimension");
        }
        acc
    }

    /// Exact evaluation at a rational point.
    pub fn evaluate(&self, point: &[Rat]) -> Result<Rat> {
        if point.len() != self.n_vars {
            return Err(Error::DimensionMismatch {
                expected: self.n_vars,
                found: point.len(),
            });
        }
        // Cache powers of each coordinate up to the maximum exponent used.
        let mut max_exp = vec![0u32; self.n_vars];
        for e in self.terms.keys() {
            for (m, &x) in max_exp.iter_mut().zip(&e.0) {
                *m = (*m).max(x);
            }
        }
        let powers: Vec<Vec<Rat>> = point
            .iter()
            .zip(&max_exp)
            .map(|(v, &m)| {
                let mut p = Vec::with_capacity(m as usize + 1);
                p.push(Rat::one());
                for _ in 0..m {
                    let last = p.last().cloned().expect("non-empty");
                    p.push(last * v);
                }
                p
            })
            .collect();
        let mut total = Rat::zero();
        for (e, c) in &self.terms {
            let mut v = c.clone();
            for (i, &exp) in e.0.iter().enumerate() {
                if exp > 0 {
                    v *= &powers[i][exp as usize];
                }
            }
            total += v;
        }
        Ok(total)
    }

    /// `p(s_1 x_1, ..., s_n x_n)`: multiply each coefficient by the monomial
    /// of the scales given by its exponent vector.
    pub fn scale_variables(&self, scales: &[Rat]) -> Result<Form> {
        if scales.len() != self.n_vars {
            return Err(Error::DimensionMismatch {
                expected: self.n_vars,
                found: scales.len(),
            });
        }
        if let Some(i) = scales.iter().position(|s| s.is_zero()) {
            return Err(Error::ZeroScale { index: i });
        }
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut factor = Rat::one();
            for (s, &exp) in scales.iter().zip(&e.0) {
                for _ in 0..exp {
                    factor *= s;
                }
            }
            terms.insert(e.clone(), c * factor);
        }
        Ok(Form {
            n_vars: self.n_vars,
            terms,
        })
    }

    /// `p(A x)` for an invertible square matrix `A` (exact determinant check).
    pub fn linear_change(&self, matrix: &[Vec<Rat>]) -> Result<Form> {
        let n = self.n_vars;
        if matrix.len() != n || matrix.iter().any(|row| row.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: matrix.len(),
            });
        }
        if crate::linalg::determinant(matrix).is_zero() {
            return Err(Error::SingularMatrix);
        }
        // Row i of the matrix is the substitution for variable i.
        let rows: Vec<Form> = matrix
            .iter()
            .map(|row| {
                Form::new(
                    n,
                    row.iter().enumerate().map(|(j, c)| {
                        let mut e = vec![0u32; n];
                        e[j] = 1;
                        (Exponents(e), c.clone())
                    }),
                )
                .expect("linear rows are homogeneous")
            })
            .collect();
        let mut out = Form::zero(n);
        for (e, c) in &self.terms {
            let mut term = Form::monomial(n, Exponents(vec![0; n]), c.clone());
            for (i, &exp) in e.0.iter().enumerate() {
                if exp > 0 {
                    term = term.mul(&rows[i].pow(exp))?;
                }
            }
            out = match out.degree() {
                None => term,
                Some(_) => out.add(&term)?,
            };
        }
        Ok(out)
    }

    /// Divide exactly by `ell^2` for a non-zero linear form `ell`.
    pub fn divide_by_linear_square(&self, ell: &Form) -> Result<Form> {
        self.check_dims(ell)?;
        if ell.degree() != Some(1) {
            return Err(Error::NotLinear);
        }
        let q = self.divide_by_linear(ell)?;
        q.divide_by_linear(ell)
    }

    /// Exact division by a linear form, failing with the remainder's leading
    /// term if not divisible.
    pub fn divide_by_linear(&self, ell: &Form) -> Result<Form> {
        self.check_dims(ell)?;
        if ell.degree() != Some(1) {
            return Err(Error::NotLinear);
        }
        let (lead_exp, lead_coeff) = ell.leading_term().expect("non-zero divisor");
        let lead_exp = lead_exp.clone();
        let lead_coeff = lead_coeff.clone();
        let mut remainder = self.clone();
        let mut quotient = Form::zero(self.n_vars);
        while let Some((r_exp, r_coeff)) = remainder.leading_term() {
            let Some(q_exp) = r_exp.checked_sub(&lead_exp) else {
                return Err(Error::NotDivisible {
                    leading: r_exp.0.clone(),
                });
            };
            let q_coeff = r_coeff / &lead_coeff;
            let q_term = Form::monomial(self.n_vars, q_exp, q_coeff);
            remainder = remainder.sub(&q_term.mul(ell)?)?;
            quotient = match quotient.degree() {
                None => q_term,
                Some(_) => quotient.add(&q_term)?,
            };
        }
        Ok(quotient)
    }

    /// Exact square root, if the form is a perfect square `q^2`.
    pub fn square_root(&self) -> Option<Form> {
        if self.is_zero() {
            return Some(Form::zero(self.n_vars));
        }
        let degree = self.degree()?;
        if degree % 2 != 0 {
            return None;
        }
        let (lead_exp, lead_coeff) = self.leading_term()?;
        if lead_exp.0.iter().any(|e| e % 2 != 0) {
            return None;
        }
        let root_coeff = crate::rational::exact_sqrt(lead_coeff)?;
        let root_lead = Exponents(lead_exp.0.iter().map(|e| e / 2).collect());
        let lead_exp = lead_exp.clone();
        let mut root = Form::monomial(self.n_vars, root_lead.clone(), root_coeff.clone());
        // Greedy completion: each new term of the root is the remainder's
        // leading term divided by twice the root's leading term.
        loop {
            let rem = self.sub(&root.mul(&root).ok()?).ok()?;
            if rem.is_zero() {
                return Some(root);
            }
            let (r_exp, r_coeff) = rem.leading_term()?;
            // Terms of the root must stay strictly below its leading term.
            if r_exp.print_key() <= lead_exp.print_key() {
                return None;
            }
            let t_exp = r_exp.checked_sub(&root_lead)?;
            if t_exp.degree() != degree / 2 {
                return None;
            }
            let t_coeff = r_coeff / (&root_coeff + &root_coeff);
            let t = Form::monomial(self.n_vars, t_exp, t_coeff);
            root = root.add(&t).ok()?;
        }
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::parse::format_form(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::rational::{rat, rat_int};

    fn xyz(e: [u32; 3]) -> Exponents {
        Exponents(e.to_vec())
    }

    #[test]
    fn degrees_dimensions() {
        assert_eq!(dimension_of_space(3, 2), 6);
        assert_eq!(dimension_of_space(3, 6), 28);
        assert_eq!(dimension_of_space(1, 0), 1);
        assert_eq!(dimension_of_space(5, 0), 1);
        assert_eq!(dimension_of_space(2, 7), 8);
    }

    #[test]
    fn zero_form_has_no_degree() {
        let z = Form::zero(3);
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
        assert!(z.is_even_form());
    }

    #[test]
    fn mixed_degrees_rejected() {
        let err = Form::new(
            2,
            [
                (Exponents(vec![2, 0]), rat_int(1)),
                (Exponents(vec![0, 1]), rat_int(1)),
            ],
        )
        .unwrap_err();
        assert!(matches!(err, Error::NonHomogeneous { .. }));
    }

    #[test]
    fn add_mul_pow_basics() {
        let x = Form::variable(2, 0);
        let y = Form::variable(2, 1);
        let sum = x.add(&y).unwrap();
        let sq = sum.pow(2);
        assert_eq!(sq.coeff(&Exponents(vec![2, 0])), rat_int(1));
        assert_eq!(sq.coeff(&Exponents(vec![1, 1])), rat_int(2));
        assert_eq!(sq.coeff(&Exponents(vec![0, 2])), rat_int(1));

        let x2 = Form::monomial(3, xyz([2, 0, 0]), rat_int(1));
        let y2 = Form::monomial(3, xyz([0, 2, 0]), rat_int(1));
        let prod = x2.mul(&y2).unwrap();
        assert_eq!(prod, Form::monomial(3, xyz([2, 2, 0]), rat_int(1)));

        let m = catalog::motzkin();
        assert!(m.add(&m.neg()).unwrap().is_zero());
    }

    #[test]
    fn add_requires_matching_degree() {
        let x = Form::variable(2, 0);
        let x2 = x.mul(&x).unwrap();
        assert!(matches!(
            x.add(&x2).unwrap_err(),
            Error::DegreeMismatch { .. }
        ));
        // Adding the zero form is always allowed.
        assert_eq!(x2.add(&Form::zero(2)).unwrap(), x2);
    }

    #[test]
    fn classic_forms_vanish_at_ones() {
        let one = vec![rat_int(1), rat_int(1), rat_int(1)];
        assert_eq!(catalog::motzkin().evaluate(&one).unwrap(), rat_int(0));
        assert_eq!(catalog::robinson().evaluate(&one).unwrap(), rat_int(0));
        assert_eq!(catalog::choi_lam().evaluate(&one).unwrap(), rat_int(0));
    }

    #[test]
    fn scale_variables_motzkin_lambda_two() {
        // Monomial-wise expansion of M(x, 2y, 2z), cross-checked term by term.
        let m = catalog::motzkin();
        let scaled = m
            .scale_variables(&[rat_int(1), rat_int(2), rat_int(2)])
            .unwrap();
        let expected = Form::new(
            3,
            [
                (xyz([4, 2, 0]), rat_int(4)),
                (xyz([2, 4, 0]), rat_int(16)),
                (xyz([0, 0, 6]), rat_int(64)),
                (xyz([2, 2, 2]), rat_int(-48)),
            ],
        )
        .unwrap();
        assert_eq!(scaled, expected);
    }

    #[test]
    fn scale_variables_identity_and_monomial() {
        let m = catalog::motzkin();
        let ones = vec![rat_int(1); 3];
        assert_eq!(m.scale_variables(&ones).unwrap(), m);

        let x2y = Form::monomial(2, Exponents(vec![2, 1]), rat_int(1));
        let scaled = x2y.scale_variables(&[rat_int(2), rat_int(3)]).unwrap();
        assert_eq!(scaled, Form::monomial(2, Exponents(vec![2, 1]), rat_int(12)));

        assert!(matches!(
            m.scale_variables(&[rat_int(1), rat_int(0), rat_int(1)])
                .unwrap_err(),
            Error::ZeroScale { index: 1 }
        ));
    }

    #[test]
    fn linear_change_swap_identity_shear() {
        let x2 = Form::monomial(2, Exponents(vec![2, 0]), rat_int(1));
        let swap = vec![
            vec![rat_int(0), rat_int(1)],
            vec![rat_int(1), rat_int(0)],
        ];
        assert_eq!(
            x2.linear_change(&swap).unwrap(),
            Form::monomial(2, Exponents(vec![0, 2]), rat_int(1))
        );

        let id = vec![
            vec![rat_int(1), rat_int(0)],
            vec![rat_int(0), rat_int(1)],
        ];
        let m = catalog::motzkin();
        let id3 = vec![
            vec![rat_int(1), rat_int(0), rat_int(0)],
            vec![rat_int(0), rat_int(1), rat_int(0)],
            vec![rat_int(0), rat_int(0), rat_int(1)],
        ];
        assert_eq!(m.linear_change(&id3).unwrap(), m);
        assert_eq!(x2.linear_change(&id).unwrap(), x2);

        let shear = vec![
            vec![rat_int(1), rat_int(1)],
            vec![rat_int(0), rat_int(1)],
        ];
        let out = x2.linear_change(&shear).unwrap();
        let expected = Form::new(
            2,
            [
                (Exponents(vec![2, 0]), rat_int(1)),
                (Exponents(vec![1, 1]), rat_int(2)),
                (Exponents(vec![0, 2]), rat_int(1)),
            ],
        )
        .unwrap();
        assert_eq!(out, expected);

        let singular = vec![
            vec![rat_int(1), rat_int(1)],
            vec![rat_int(2), rat_int(2)],
        ];
        assert!(matches!(
            x2.linear_change(&singular).unwrap_err(),
            Error::SingularMatrix
        ));
    }

    #[test]
    fn linear_change_composition_law() {
        let p = catalog::motzkin();
        let a = vec![
            vec![rat_int(1), rat_int(2), rat_int(0)],
            vec![rat_int(0), rat_int(1), rat_int(1)],
            vec![rat_int(1), rat_int(0), rat_int(1)],
        ];
        let b = vec![
            vec![rat_int(2), rat_int(0), rat_int(1)],
            vec![rat_int(1), rat_int(1), rat_int(0)],
            vec![rat_int(0), rat_int(3), rat_int(1)],
        ];
        let lhs = p.linear_change(&a).unwrap().linear_change(&b).unwrap();
        let ab = crate::linalg::mat_mul(&a, &b);
        let rhs = p.linear_change(&ab).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn peeling_division() {
        let m = catalog::motzkin();
        let x = Form::variable(3, 0);
        let x2m = x.mul(&x).unwrap().mul(&m).unwrap();
        assert_eq!(x2m.divide_by_linear_square(&x).unwrap(), m);

        let y = Form::variable(3, 1);
        let ell = x.add(&y).unwrap();
        let q = Form::new(
            3,
            [
                (xyz([2, 0, 0]), rat_int(1)),
                (xyz([0, 2, 0]), rat_int(1)),
            ],
        )
        .unwrap();
        let p = ell.mul(&ell).unwrap().mul(&q).unwrap();
        assert_eq!(p.divide_by_linear_square(&ell).unwrap(), q);

        // M(0, y, z) = z^6 != 0, so x does not divide M; the z^6 term is the
        // one that survives.
        let err = m.divide_by_linear_square(&x).unwrap_err();
        assert_eq!(
            err,
            Error::NotDivisible {
                leading: vec![0, 0, 6]
            }
        );

        assert!(matches!(
            m.divide_by_linear_square(&q).unwrap_err(),
            Error::NotLinear
        ));
    }

    #[test]
    fn evenness() {
        assert!(catalog::motzkin().is_even_form());
        assert!(!catalog::stengle().is_even_form());
        assert!(Form::zero(3).is_even_form());
    }

    #[test]
    fn square_root_of_squares() {
        let x = Form::variable(3, 0);
        let y = Form::variable(3, 1);
        let q = x
            .mul(&x)
            .unwrap()
            .add(&y.mul(&y).unwrap())
            .unwrap()
            .scale(&rat(4, 9));
        let sq = q.mul(&q).unwrap();
        let root = sq.square_root().expect("perfect square");
        assert_eq!(root.mul(&root).unwrap(), sq);
        assert!(catalog::motzkin().square_root().is_none());

        let st = catalog::stengle();
        let st2 = st.mul(&st).unwrap();
        let r = st2.square_root().expect("stengle squared");
        assert_eq!(r.mul(&r).unwrap(), st2);
    }

    #[test]
    fn evaluate_dimension_mismatch() {
        let m = catalog::motzkin();
        assert!(matches!(
            m.evaluate(&[rat_int(1)]).unwrap_err(),
            Error::DimensionMismatch { .. }
        ));
    }
}
