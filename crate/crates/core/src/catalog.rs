//! The classical ternary forms this toolkit is exercised against, plus the
//! four-square composition identity and Hilbert's ternary degree bound.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::form::{Exponents, Form};
use crate::rational::{rat_int, Rat};

/// What is known about a catalog form, independent of any computation here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KnownStatus {
    /// Positive semidefinite but not a sum of squares.
    PsdNotSos,
    /// A sum of squares of forms.
    Sos,
    /// Positive semidefinite (no sharper classification recorded).
    Psd,
}

impl KnownStatus {
    pub fn label(&self) -> &'static str {
        match self {
            KnownStatus::PsdNotSos => "psd, not sos",
            KnownStatus::Sos => "sos",
            KnownStatus::Psd => "psd",
        }
    }
}

/// A named form together with its classical attribution.
#[derive(Debug, Clone)]
pub struct NamedForm {
    pub key: &'static str,
    pub form: Form,
    pub provenance: &'static str,
    pub known_status: KnownStatus,
}

fn t3(e: [u32; 3], c: i64) -> (Exponents, Rat) {
    (Exponents(e.to_vec()), rat_int(c))
}

/// Motzkin's sextic `x^4 y^2 + x^2 y^4 + z^6 - 3 x^2 y^2 z^2`.
pub fn motzkin() -> Form {
    Form::new(
        3,
        [
            t3([4, 2, 0], 1),
            t3([2, 4, 0], 1),
            t3([0, 0, 6], 1),
            t3([2, 2, 2], -3),
        ],
    )
    .expect("fixed homogeneous terms")
}

/// Robinson's sextic
/// `x^6 + y^6 + z^6 - (x^4 y^2 + x^2 y^4 + x^4 z^2 + x^2 z^4 + y^4 z^2 + y^2 z^4) + 3 x^2 y^2 z^2`.
pub fn robinson() -> Form {
    Form::new(
        3,
        [
            t3([6, 0, 0], 1),
            t3([0, 6, 0], 1),
            t3([0, 0, 6], 1),
            t3([4, 2, 0], -1),
            t3([2, 4, 0], -1),
            t3([4, 0, 2], -1),
            t3([2, 0, 4], -1),
            t3([0, 4, 2], -1),
            t3([0, 2, 4], -1),
            t3([2, 2, 2], 3),
        ],
    )
    .expect("fixed homogeneous terms")
}

/// The Choi-Lam sextic `x^4 y^2 + y^4 z^2 + z^4 x^2 - 3 x^2 y^2 z^2`.
pub fn choi_lam() -> Form {
    Form::new(
        3,
        [
            t3([4, 2, 0], 1),
            t3([0, 4, 2], 1),
            t3([2, 0, 4], 1),
            t3([2, 2, 2], -3),
        ],
    )
    .expect("fixed homogeneous terms")
}

/// Stengle's sextic `x^3 z^3 + (y^2 z - x^3 - z^2 x)^2`, stored expanded.
pub fn stengle() -> Form {
    Form::new(
        3,
        [
            t3([6, 0, 0], 1),
            t3([4, 0, 2], 2),
            t3([3, 0, 3], 1),
            t3([2, 0, 4], 1),
            t3([3, 2, 1], -2),
            t3([1, 2, 3], -2),
            t3([0, 4, 2], 1),
        ],
    )
    .expect("fixed homogeneous terms")
}

/// Stengle's form rebuilt from its defining expression; used by tests to
/// guard the expanded constant table against transcription drift.
pub fn stengle_from_definition() -> Form {
    let x = Form::variable(3, 0);
    let y = Form::variable(3, 1);
    let z = Form::variable(3, 2);
    let x3z3 = x.pow(3).mul(&z.pow(3)).expect("same dims");
    let inner = y
        .pow(2)
        .mul(&z)
        .expect("same dims")
        .sub(&x.pow(3))
        .expect("same degree")
        .sub(&z.pow(2).mul(&x).expect("same dims"))
        .expect("same degree");
    x3z3
        .add(&inner.mul(&inner).expect("same dims"))
        .expect("same degree")
}

/// `x^2 + y^2 + z^2`, the round multiplier used throughout the experiments.
pub fn sum_of_squares_multiplier(n_vars: usize) -> Form {
    let mut acc = Form::zero(n_vars);
    for i in 0..n_vars {
        let v = Form::variable(n_vars, i);
        let sq = v.mul(&v).expect("same dims");
        acc = acc.add(&sq).expect("same degree");
    }
    acc
}

/// All catalog entries, in a fixed display order.
pub fn named_forms() -> Vec<NamedForm> {
    vec![
        NamedForm {
            key: "M",
            form: motzkin(),
            provenance: "Motzkin (1967)",
            known_status: KnownStatus::PsdNotSos,
        },
        NamedForm {
            key: "R",
            form: robinson(),
            provenance: "Robinson (1969), simplifying Hilbert's construction",
            known_status: KnownStatus::PsdNotSos,
        },
        NamedForm {
            key: "S",
            form: choi_lam(),
            provenance: "Choi and Lam (1977)",
            known_status: KnownStatus::PsdNotSos,
        },
        NamedForm {
            key: "stengle",
            form: stengle(),
            provenance: "Stengle (1979)",
            known_status: KnownStatus::PsdNotSos,
        },
    ]
}

pub fn lookup(key: &str) -> Option<NamedForm> {
    named_forms().into_iter().find(|f| f.key == key)
}

/// Hilbert's ternary denominator degree bound: for even `m >= 4` there is a
/// form `q` of degree `floor((m-2)^2 / 8)` with `q^2 p` a sum of four
/// squares for every psd ternary `p` of degree `m`.
pub fn hilbert_degree_bound(m: u32) -> Result<u32> {
    if m < 4 || m % 2 != 0 {
        return Err(Error::InvalidParameter(format!(
            "degree bound needs even m >= 4, got {m}"
        )));
    }
    Ok((m - 2) * (m - 2) / 8)
}

/// Euler's four-square composition: bilinear forms `c` with
/// `c1^2 + c2^2 + c3^2 + c4^2 = (a1^2 + .. + a4^2)(b1^2 + .. + b4^2)`.
///
/// Sign convention: `c1 = a1 b1 - a2 b2 - a3 b3 - a4 b4`,
/// `c2 = a1 b2 + a2 b1 + a3 b4 - a4 b3`,
/// `c3 = a1 b3 - a2 b4 + a3 b1 + a4 b2`,
/// `c4 = a1 b4 + a2 b3 - a3 b2 + a4 b1`.
pub fn four_square_compose(a: &[Form; 4], b: &[Form; 4]) -> Result<[Form; 4]> {
    let deg_a = a.iter().find_map(|f| f.degree());
    let deg_b = b.iter().find_map(|f| f.degree());
    for f in a.iter() {
        if f.n_vars() != a[0].n_vars() || f.degree().is_some() && f.degree() != deg_a {
            return Err(Error::DegreeMismatch {
                left: deg_a.unwrap_or(0),
                right: f.degree().unwrap_or(0),
            });
        }
    }
    for f in b.iter() {
        if f.n_vars() != a[0].n_vars() {
            return Err(Error::DimensionMismatch {
                expected: a[0].n_vars(),
                found: f.n_vars(),
            });
        }
        if f.degree().is_some() && f.degree() != deg_b {
            return Err(Error::DegreeMismatch {
                left: deg_b.unwrap_or(0),
                right: f.degree().unwrap_or(0),
            });
        }
    }
    let m = |i: usize, j: usize| a[i].mul(&b[j]);
    let c1 = m(0, 0)?
        .sub(&m(1, 1)?)?
        .sub(&m(2, 2)?)?
        .sub(&m(3, 3)?)?;
    let c2 = m(0, 1)?.add(&m(1, 0)?)?.add(&m(2, 3)?)?.sub(&m(3, 2)?)?;
    let c3 = m(0, 2)?.sub(&m(1, 3)?)?.add(&m(2, 0)?)?.add(&m(3, 1)?)?;
    let c4 = m(0, 3)?.add(&m(1, 2)?)?.sub(&m(2, 1)?)?.add(&m(3, 0)?)?;
    Ok([c1, c2, c3, c4])
}
