//! JSON serialization of certificates. Rationals travel as decimal strings
//! (`["num", "den"]` pairs) so arbitrary-precision values round-trip
//! bit-exactly; the Gram matrix is stored row-major.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::basis::MonomialBasis;
use crate::cert::{DualCertificate, GramCertificate};
use crate::error::{Error, Result};
use crate::form::Exponents;
use crate::rational::Rat;

pub const SCHEMA_VERSION: u32 = 1;

fn rat_to_pair(q: &Rat) -> [String; 2] {
    [q.numer().to_string(), q.denom().to_string()]
}

fn pair_to_rat(p: &[String; 2]) -> Result<Rat> {
    let num: BigInt = p[0]
        .parse()
        .map_err(|_| Error::InvalidParameter(format!("bad numerator `{}`", p[0])))?;
    let den: BigInt = p[1]
        .parse()
        .map_err(|_| Error::InvalidParameter(format!("bad denominator `{}`", p[1])))?;
    if den <= BigInt::from(0) {
        return Err(Error::InvalidParameter(format!(
            "denominator must be positive, got `{}`",
            p[1]
        )));
    }
    Ok(Rat::new(num, den))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GramCertificateJson {
    pub schema_version: u32,
    pub n_vars: usize,
    pub half_degree: u32,
    /// Basis monomials as exponent vectors, in graded-lex order.
    pub basis: Vec<Vec<u32>>,
    /// Row-major `len(basis)^2` entries, each an exact `[num, den]` pair.
    pub gram: Vec<[String; 2]>,
}

impl From<&GramCertificate> for GramCertificateJson {
    fn from(cert: &GramCertificate) -> Self {
        let n = cert.basis.len();
        let mut gram = Vec::with_capacity(n * n);
        for row in &cert.gram {
            for q in row {
                gram.push(rat_to_pair(q));
            }
        }
        GramCertificateJson {
            schema_version: SCHEMA_VERSION,
            n_vars: cert.basis.n_vars,
            half_degree: cert.basis.half_degree,
            basis: cert.basis.monomials.iter().map(|e| e.0.clone()).collect(),
            gram,
        }
    }
}

impl GramCertificateJson {
    pub fn decode(&self) -> Result<GramCertificate> {
        let n = self.basis.len();
        if self.gram.len() != n * n {
            return Err(Error::InvalidParameter(format!(
                "gram has {} entries, expected {}",
                self.gram.len(),
                n * n
            )));
        }
        let basis = MonomialBasis::new(
            self.n_vars,
            self.half_degree,
            self.basis.iter().map(|e| Exponents(e.clone())).collect(),
        );
        if basis.len() != n {
            return Err(Error::InvalidParameter(
                "duplicate basis monomials in serialized certificate".into(),
            ));
        }
        let mut gram = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                row.push(pair_to_rat(&self.gram[i * n + j])?);
            }
            gram.push(row);
        }
        Ok(GramCertificate { basis, gram })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FunctionalEntryJson {
    pub monomial: Vec<u32>,
    pub value: [String; 2],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DualCertificateJson {
    pub schema_version: u32,
    pub n_vars: usize,
    pub half_degree: u32,
    pub basis: Vec<Vec<u32>>,
    pub functional: Vec<FunctionalEntryJson>,
}

impl From<&DualCertificate> for DualCertificateJson {
    fn from(dual: &DualCertificate) -> Self {
        DualCertificateJson {
            schema_version: SCHEMA_VERSION,
            n_vars: dual.basis.n_vars,
            half_degree: dual.basis.half_degree,
            basis: dual.basis.monomials.iter().map(|e| e.0.clone()).collect(),
            functional: dual
                .functional
                .iter()
                .map(|(gamma, value)| FunctionalEntryJson {
                    monomial: gamma.0.clone(),
                    value: rat_to_pair(value),
                })
                .collect(),
        }
    }
}

impl DualCertificateJson {
    pub fn decode(&self) -> Result<DualCertificate> {
        let basis = MonomialBasis::new(
            self.n_vars,
            self.half_degree,
            self.basis.iter().map(|e| Exponents(e.clone())).collect(),
        );
        let mut functional = std::collections::BTreeMap::new();
        for entry in &self.functional {
            functional.insert(Exponents(entry.monomial.clone()), pair_to_rat(&entry.value)?);
        }
        Ok(DualCertificate { basis, functional })
    }
}

pub fn gram_to_json(cert: &GramCertificate) -> String {
    serde_json::to_string_pretty(&GramCertificateJson::from(cert)).expect("serializable")
}

pub fn gram_from_json(text: &str) -> Result<GramCertificate> {
    let dto: GramCertificateJson = serde_json::from_str(text)
        .map_err(|e| Error::InvalidParameter(format!("certificate JSON: {e}")))?;
    dto.decode()
}

pub fn dual_to_json(dual: &DualCertificate) -> String {
    serde_json::to_string_pretty(&DualCertificateJson::from(dual)).expect("serializable")
}

pub fn dual_from_json(text: &str) -> Result<DualCertificate> {
    let dto: DualCertificateJson = serde_json::from_str(text)
        .map_err(|e| Error::InvalidParameter(format!("certificate JSON: {e}")))?;
    dto.decode()
}

/// Clear denominators in a matrix: scale by the lcm so entries are integers.
/// Provided for display; certificates keep their exact entries.
pub fn integer_scaled(m: &crate::linalg::RatMat) -> (BigInt, Vec<Vec<BigInt>>) {
    let lcm = crate::rational::denominator_lcm(m.iter().flat_map(|r| r.iter()));
    let scaled = m
        .iter()
        .map(|row| {
            row.iter()
                .map(|q| (q * Rat::from_integer(lcm.clone())).to_integer())
                .collect()
        })
        .collect();
    (if m.is_empty() { BigInt::one() } else { lcm }, scaled)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn gram_round_trip_is_bit_exact() {
        let basis = MonomialBasis::new(
            2,
            2,
            vec![Exponents(vec![0, 2]), Exponents(vec![1, 1]), Exponents(vec![2, 0])],
        );
        let gram = vec![
            vec![rat(1, 1), rat(-7, 3), rat(0, 1)],
            vec![rat(-7, 3), rat(123456789123456789, 1024), rat(1, 2)],
            vec![rat(0, 1), rat(1, 2), rat(5, 7)],
        ];
        let cert = GramCertificate { basis, gram };
        let text = gram_to_json(&cert);
        let back = gram_from_json(&text).unwrap();
        assert_eq!(back, cert);
    }

    #[test]
    fn dual_round_trip_is_bit_exact() {
        let m = crate::catalog::motzkin();
        let basis = crate::basis::half_newton_basis(&m).unwrap();
        let mut functional = std::collections::BTreeMap::new();
        functional.insert(Exponents(vec![2, 2, 2]), rat(2, 1));
        functional.insert(Exponents(vec![0, 0, 6]), rat(-1, 3));
        let dual = DualCertificate { basis, functional };
        let text = dual_to_json(&dual);
        let back = dual_from_json(&text).unwrap();
        assert_eq!(back, dual);
    }

    #[test]
    fn rejects_bad_denominator() {
        assert!(pair_to_rat(&["1".into(), "0".into()]).is_err());
        assert!(pair_to_rat(&["1".into(), "-2".into()]).is_err());
        assert!(pair_to_rat(&["a".into(), "1".into()]).is_err());
    }
}
