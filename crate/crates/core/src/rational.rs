//! Small helpers around `num_rational::BigRational`, the coefficient type
//! used everywhere. Certificates must verify bit-exactly, so floats never
//! enter the algebra; these helpers are the only crossing points.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rat = BigRational;

/// `n/d` as an exact rational.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn to_f64(q: &Rat) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // Fall back to a quotient of lossy conversions for extreme operands.
        let n = q.numer().to_f64().unwrap_or(f64::MAX);
        let d = q.denom().to_f64().unwrap_or(f64::MAX);
        n / d
    })
}

/// Nearest rational with the given power-of-two denominator.
pub fn round_to_dyadic(x: f64, log2_den: u32) -> Rat {
    let den = BigInt::one() << log2_den;
    let scaled = x * (2f64).powi(log2_den as i32);
    let num = BigInt::from(scaled.round() as i128);
    Rat::new(num, den)
}

/// Best rational approximation to `x` with denominator at most `max_den`,
/// via the continued-fraction convergents of `x`.
pub fn approx_rational(x: f64, max_den: u64) -> Option<Rat> {
    if !x.is_finite() {
        return None;
    }
    let negative = x < 0.0;
    let mut x = x.abs();
    // Convergents p/q of the continued fraction expansion.
    let (mut p0, mut q0, mut p1, mut q1) = (
        BigInt::zero(),
        BigInt::one(),
        BigInt::one(),
        BigInt::zero(),
    );
    let limit = BigInt::from(max_den);
    for _ in 0..64 {
        let a = x.floor();
        if a > 1e18 {
            break;
        }
        let ai = BigInt::from(a as i128);
        let p2 = &ai * &p1 + &p0;
        let q2 = &ai * &q1 + &q0;
        if q2 > limit {
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        let frac = x - a;
        if frac < 1e-15 {
            break;
        }
        x = 1.0 / frac;
    }
    if q1.is_zero() {
        return None;
    }
    let mut r = Rat::new(p1, q1);
    if negative {
        r = -r;
    }
    Some(r)
}

/// Ceiling of a rational as a signed integer.
pub fn ceil_bigint(q: &Rat) -> BigInt {
    q.ceil().to_integer()
}

/// Exact square root of a rational, if it is a perfect square.
pub fn exact_sqrt(q: &Rat) -> Option<Rat> {
    if q.is_negative() {
        return None;
    }
    let sn = q.numer().sqrt();
    let sd = q.denom().sqrt();
    if &(&sn * &sn) == q.numer() && &(&sd * &sd) == q.denom() {
        Some(Rat::new(sn, sd))
    } else {
        None
    }
}

/// Parse "a", "-a", or "a/b" into an exact rational.
pub fn parse_ratio(text: &str) -> Option<Rat> {
    let text = text.trim();
    if let Some((n, d)) = text.split_once('/') {
        let num: BigInt = n.trim().parse().ok()?;
        let den: BigInt = d.trim().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        Some(Rat::new(num, den))
    } else {
        let num: BigInt = text.parse().ok()?;
        Some(Rat::from_integer(num))
    }
}

/// Least common multiple of the coefficient denominators.
pub fn denominator_lcm<'a, I: Iterator<Item = &'a Rat>>(iter: I) -> BigInt {
    let mut l = BigInt::one();
    for q in iter {
        l = l.lcm(q.denom());
    }
    l
}

/// Render with an explicit sign for display purposes.
pub fn signed_str(q: &Rat) -> String {
    match q.numer().sign() {
        Sign::Minus => format!("- {}", -q),
        _ => format!("+ {}", q),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dyadic_rounding() {
        assert_eq!(round_to_dyadic(0.5, 10), rat(1, 2));
        assert_eq!(round_to_dyadic(-1.25, 4), rat(-5, 4));
    }

    #[test]
    fn continued_fractions_recover_simple_ratios() {
        assert_eq!(approx_rational(0.5, 100), Some(rat(1, 2)));
        assert_eq!(approx_rational(2.0 / 3.0, 100), Some(rat(2, 3)));
        assert_eq!(approx_rational(-64.0 / 127.0, 1 << 20), Some(rat(-64, 127)));
    }

    #[test]
    fn exact_sqrt_detects_squares() {
        assert_eq!(exact_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(exact_sqrt(&rat(2, 1)), None);
        assert_eq!(exact_sqrt(&rat(-1, 1)), None);
    }

    #[test]
    fn ratio_parsing() {
        assert_eq!(parse_ratio("3/4"), Some(rat(3, 4)));
        assert_eq!(parse_ratio("-7"), Some(rat_int(-7)));
        assert_eq!(parse_ratio("1/0"), None);
    }
}
