//! Exact scalar coefficients: arbitrary-precision rationals and `ℤ/m`.
//!
//! Mixing the two kinds, or two different moduli, is a checked error at the
//! public seams. Modular values are kept reduced to `[0, m)` at all times.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Identifies the coefficient ring of a scalar or polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RingTag {
    Rational,
    Mod(u64),
}

impl fmt::Display for RingTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingTag::Rational => write!(f, "rational"),
            RingTag::Mod(m) => write!(f, "mod {m}"),
        }
    }
}

/// An exact scalar: a rational number or a residue class mod `m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Mod { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn zero(ring: RingTag) -> Scalar {
        match ring {
            RingTag::Rational => Scalar::Rat(BigRational::zero()),
            RingTag::Mod(m) => Scalar::Mod { value: 0, modulus: m },
        }
    }

    pub fn one(ring: RingTag) -> Scalar {
        match ring {
            RingTag::Rational => Scalar::Rat(BigRational::one()),
            RingTag::Mod(m) => Scalar::Mod { value: 1 % m, modulus: m },
        }
    }

    /// Rational scalar from an integer.
    pub fn from_int(v: i64) -> Scalar {
        Scalar::Rat(BigRational::from_integer(BigInt::from(v)))
    }

    /// Rational scalar `n/d`; `d` must be nonzero.
    pub fn rational(n: i64, d: i64) -> Result<Scalar> {
        if d == 0 {
            return Err(Error::ZeroDenominator);
        }
        Ok(Scalar::Rat(BigRational::new(BigInt::from(n), BigInt::from(d))))
    }

    /// Residue class of `v` mod `m`, for `m >= 2`.
    pub fn modular(v: i64, m: u64) -> Result<Scalar> {
        if m < 2 {
            return Err(Error::InvalidModulus(m));
        }
        let r = v.rem_euclid(m as i64) as u64;
        Ok(Scalar::Mod { value: r, modulus: m })
    }

    /// Reduce a big integer into `ℤ/m`.
    pub fn modular_from_bigint(v: &BigInt, m: u64) -> Result<Scalar> {
        if m < 2 {
            return Err(Error::InvalidModulus(m));
        }
        let mm = BigInt::from(m);
        let mut r = v % &mm;
        if r.is_negative() {
            r += &mm;
        }
        let value = u64::try_from(&r).map_err(|_| Error::Internal("residue out of range".into()))?;
        Ok(Scalar::Mod { value, modulus: m })
    }

    pub fn ring(&self) -> RingTag {
        match self {
            Scalar::Rat(_) => RingTag::Rational,
            Scalar::Mod { modulus, .. } => RingTag::Mod(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod { value, modulus } => *value == 1 % *modulus,
        }
    }

    /// The rational payload, if this scalar is rational.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Mod { .. } => None,
        }
    }

    fn check_same_ring(&self, other: &Scalar) -> Result<()> {
        match (self, other) {
            (Scalar::Rat(_), Scalar::Rat(_)) => Ok(()),
            (Scalar::Mod { modulus: a, .. }, Scalar::Mod { modulus: b, .. }) => {
                if a == b {
                    Ok(())
                } else {
                    Err(Error::ModulusMismatch(*a, *b))
                }
            }
            (a, b) => Err(Error::RingMismatch(a.ring().to_string(), b.ring().to_string())),
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.check_same_ring(other)?;
        Ok(match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { value: a, modulus: m }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: ((*a as u128 + *b as u128) % *m as u128) as u64,
                modulus: *m,
            },
            _ => unreachable!(),
        })
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check_same_ring(other)?;
        Ok(match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { value: a, modulus: m }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: ((*a as u128 * *b as u128) % *m as u128) as u64,
                modulus: *m,
            },
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }

    /// `self^e` by repeated squaring.
    pub fn pow(&self, e: u64) -> Scalar {
        let mut acc = Scalar::one(self.ring());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&base).expect("same ring");
            }
            base = base.checked_mul(&base.clone()).expect("same ring");
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{r}"),
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}
