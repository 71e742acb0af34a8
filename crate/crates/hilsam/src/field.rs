//! Coefficient fields: exact rationals (the default) and odd prime fields.
//!
//! Every computation in the toolkit is exact.  `FieldElem` is a tagged value
//! so the field can be chosen at runtime from an input file or CLI flag; the
//! rational variant wraps arbitrary-precision `BigRational` (always reduced,
//! positive denominator), the prime variant is a residue stored with its
//! modulus so mixed-field bugs are caught immediately.

use crate::error::{Error, Result};
use num::bigint::Sign;
use num::{BigInt, BigRational, One, Signed, Zero};
use std::fmt;

/// Which field a ring works over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    /// The rationals.
    Rational,
    /// F_p for an odd prime p (p >= 3; inputs are validated for primality).
    Prime(u64),
}

impl FieldSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            FieldSpec::Rational => Ok(()),
            FieldSpec::Prime(p) => {
                if *p < 3 || !is_prime(*p) {
                    Err(Error::invalid(format!("{p} is not an odd prime")))
                } else {
                    Ok(())
                }
            }
        }
    }

    pub fn zero(&self) -> FieldElem {
        match self {
            FieldSpec::Rational => FieldElem::Q(BigRational::zero()),
            FieldSpec::Prime(p) => FieldElem::Fp { v: 0, p: *p },
        }
    }

    pub fn one(&self) -> FieldElem {
        match self {
            FieldSpec::Rational => FieldElem::Q(BigRational::one()),
            FieldSpec::Prime(p) => FieldElem::Fp { v: 1, p: *p },
        }
    }

    /// Embed a signed integer.
    pub fn from_i64(&self, n: i64) -> FieldElem {
        match self {
            FieldSpec::Rational => FieldElem::Q(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::Prime(p) => FieldElem::Fp {
                v: n.rem_euclid(*p as i64) as u64,
                p: *p,
            },
        }
    }

    /// Embed a fraction a/b (b != 0; in F_p this is a * b^-1).
    pub fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<FieldElem> {
        if den.is_zero() {
            return Err(Error::invalid("zero denominator"));
        }
        match self {
            FieldSpec::Rational => Ok(FieldElem::Q(BigRational::new(num.clone(), den.clone()))),
            FieldSpec::Prime(p) => {
                let n = bigint_mod(num, *p);
                let d = bigint_mod(den, *p);
                if d == 0 {
                    return Err(Error::invalid(format!(
                        "denominator vanishes modulo {p}"
                    )));
                }
                Ok(FieldElem::Fp {
                    v: mul_mod(n, inv_mod(d, *p), *p),
                    p: *p,
                })
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "Fp {p}"),
        }
    }
}

/// An element of the active coefficient field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Q(BigRational),
    Fp { v: u64, p: u64 },
}

impl FieldElem {
    pub fn spec(&self) -> FieldSpec {
        match self {
            FieldElem::Q(_) => FieldSpec::Rational,
            FieldElem::Fp { p, .. } => FieldSpec::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Q(r) => r.is_zero(),
            FieldElem::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Q(r) => r.is_one(),
            FieldElem::Fp { v, .. } => *v == 1,
        }
    }

    /// True for rationals that are negative; used only for printing.
    pub fn is_display_negative(&self) -> bool {
        match self {
            FieldElem::Q(r) => r.is_negative(),
            FieldElem::Fp { .. } => false,
        }
    }

    fn check_same(&self, other: &FieldElem) -> Result<()> {
        if self.spec() != other.spec() {
            return Err(Error::RingMismatch(format!(
                "field {} vs {}",
                self.spec(),
                other.spec()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &FieldElem) -> Result<FieldElem> {
        self.check_same(other)?;
        Ok(match (self, other) {
            (FieldElem::Q(a), FieldElem::Q(b)) => FieldElem::Q(a + b),
            (FieldElem::Fp { v: a, p }, FieldElem::Fp { v: b, .. }) => FieldElem::Fp {
                v: add_mod(*a, *b, *p),
                p: *p,
            },
            _ => unreachable!(),
        })
    }

    pub fn sub(&self, other: &FieldElem) -> Result<FieldElem> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &FieldElem) -> Result<FieldElem> {
        self.check_same(other)?;
        Ok(match (self, other) {
            (FieldElem::Q(a), FieldElem::Q(b)) => FieldElem::Q(a * b),
            (FieldElem::Fp { v: a, p }, FieldElem::Fp { v: b, .. }) => FieldElem::Fp {
                v: mul_mod(*a, *b, *p),
                p: *p,
            },
            _ => unreachable!(),
        })
    }

    pub fn div(&self, other: &FieldElem) -> Result<FieldElem> {
        if other.is_zero() {
            return Err(Error::invalid("division by zero"));
        }
        self.mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<FieldElem> {
        if self.is_zero() {
            return Err(Error::invalid("inverse of zero"));
        }
        Ok(match self {
            FieldElem::Q(a) => FieldElem::Q(a.recip()),
            FieldElem::Fp { v, p } => FieldElem::Fp {
                v: inv_mod(*v, *p),
                p: *p,
            },
        })
    }

    pub fn neg(&self) -> FieldElem {
        match self {
            FieldElem::Q(a) => FieldElem::Q(-a),
            FieldElem::Fp { v: 0, p } => FieldElem::Fp { v: 0, p: *p },
            FieldElem::Fp { v, p } => FieldElem::Fp { v: p - v, p: *p },
        }
    }

    /// The underlying rational, when over Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElem::Q(r) => Some(r),
            _ => None,
        }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Q(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            FieldElem::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Modular inverse by extended Euclid; panics on non-unit (callers check).
fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "inverse of non-unit");
    t0.rem_euclid(p as i128) as u64
}

fn bigint_mod(n: &BigInt, p: u64) -> u64 {
    let m = n % BigInt::from(p);
    let m = if m.sign() == Sign::Minus {
        m + BigInt::from(p)
    } else {
        m
    };
    let digits = m.to_u64_digits().1;
    digits.first().copied().unwrap_or(0)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arithmetic_is_canonical() {
        let q = FieldSpec::Rational;
        let two_thirds = q
            .from_fraction(&BigInt::from(4), &BigInt::from(6))
            .unwrap();
        let other = q
            .from_fraction(&BigInt::from(-2), &BigInt::from(-3))
            .unwrap();
        assert_eq!(two_thirds, other);
        assert_eq!(two_thirds.to_string(), "2/3");
        let sum = two_thirds.add(&q.from_i64(1)).unwrap();
        assert_eq!(sum.to_string(), "5/3");
        assert_eq!(sum.mul(&sum.inv().unwrap()).unwrap(), q.one());
    }

    #[test]
    fn prime_field_inverse_and_wraparound() {
        let f = FieldSpec::Prime(32003);
        f.validate().unwrap();
        let a = f.from_i64(-1);
        assert_eq!(a, f.from_i64(32002));
        let b = f.from_i64(12345);
        let prod = b.mul(&b.inv().unwrap()).unwrap();
        assert!(prod.is_one());
        let frac = f
            .from_fraction(&BigInt::from(2), &BigInt::from(3))
            .unwrap();
        let three = f.from_i64(3);
        assert_eq!(frac.mul(&three).unwrap(), f.from_i64(2));
    }

    #[test]
    fn composite_modulus_rejected() {
        assert!(FieldSpec::Prime(32001).validate().is_err());
        assert!(FieldSpec::Prime(2).validate().is_err());
        assert!(FieldSpec::Prime(32003).validate().is_ok());
    }

    #[test]
    fn mixed_field_operations_error() {
        let a = FieldSpec::Rational.one();
        let b = FieldSpec::Prime(32003).one();
        assert!(a.add(&b).is_err());
    }
}
