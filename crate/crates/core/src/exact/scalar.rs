use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number used for grades, shifts and rational scalars.
pub type Rational = BigRational;

/// Builds the rational `num / den`.
///
/// Panics if `den` is zero.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds the integer rational `n`.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"` into a reduced rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let trimmed = text.trim();
    let value = Rational::from_str(trimmed)
        .map_err(|_| Error::Parse(format!("not a rational number: {text:?}")))?;
    Ok(value)
}

/// Formats a rational as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// The coefficient field of a computation.
///
/// Every scalar, matrix and module carries the field it lives over; mixing
/// fields is a programming error and panics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    /// Exact rationals.
    Rational,
    /// The prime field GF(p).
    Prime(u64),
}

impl Field {
    /// GF(p), rejecting non-primes.
    pub fn prime(p: u64) -> Result<Field> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::InvalidField(format!("{p} is not prime")))
        }
    }

    pub fn zero(self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(Rational::zero()),
            Field::Prime(p) => Scalar::Modular { residue: 0, modulus: p },
        }
    }

    pub fn one(self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(Rational::one()),
            Field::Prime(p) => Scalar::Modular { residue: 1 % p, modulus: p },
        }
    }

    pub fn from_i64(self, value: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(int(value)),
            Field::Prime(p) => Scalar::Modular {
                residue: value.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    /// Maps a rational into this field. Fails for GF(p) when `p` divides the
    /// denominator.
    pub fn from_rational(self, value: &Rational) -> Result<Scalar> {
        match self {
            Field::Rational => Ok(Scalar::Rational(value.clone())),
            Field::Prime(p) => {
                let modulus = BigInt::from(p);
                let num = value.numer().mod_floor(&modulus).to_u64().unwrap_or(0);
                let den = value.denom().mod_floor(&modulus).to_u64().unwrap_or(0);
                if den == 0 {
                    return Err(Error::InvalidField(format!(
                        "{} has no image in GF({p})",
                        format_rational(value)
                    )));
                }
                let den_inv = inverse_mod(den, p);
                Ok(Scalar::Modular {
                    residue: mul_mod(num, den_inv, p),
                    modulus: p,
                })
            }
        }
    }

    /// Re-expresses a scalar of any field in this one. Residues of GF(p) are
    /// read as integers when converting to another field.
    pub fn convert(self, value: &Scalar) -> Result<Scalar> {
        match value {
            Scalar::Rational(q) => self.from_rational(q),
            Scalar::Modular { residue, modulus } => {
                if self == Field::Prime(*modulus) {
                    Ok(value.clone())
                } else {
                    self.from_rational(&Rational::from_integer(BigInt::from(*residue)))
                }
            }
        }
    }

    /// Parses a scalar written as `"p/q"`, `"p"`, or a decimal residue.
    pub fn parse(self, text: &str) -> Result<Scalar> {
        self.from_rational(&parse_rational(text)?)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "rational"),
            Field::Prime(p) => write!(f, "gf:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("rational") || s == "Q" {
            return Ok(Field::Rational);
        }
        let digits = s
            .strip_prefix("gf:")
            .or_else(|| s.strip_prefix("GF:"))
            .ok_or_else(|| Error::InvalidField(format!("unknown field {s:?}")))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::InvalidField(format!("bad prime in {s:?}")))?;
        Field::prime(p)
    }
}

/// An element of the active field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(Rational),
    Modular { residue: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Modular { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Modular { residue, .. } => *residue == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Modular { residue, .. } => *residue == 1,
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Modular { residue, modulus } => Scalar::Modular {
                residue: inverse_mod(*residue, *modulus),
                modulus: *modulus,
            },
        })
    }

    /// The rational value, or the residue read as an integer.
    pub fn to_rational(&self) -> Rational {
        match self {
            Scalar::Rational(q) => q.clone(),
            Scalar::Modular { residue, .. } => Rational::from_integer(BigInt::from(*residue)),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{}", format_rational(q)),
            Scalar::Modular { residue, .. } => write!(f, "{residue}"),
        }
    }
}

fn mixed(a: &Scalar, b: &Scalar) -> ! {
    panic!("mixed scalar kinds: {} and {}", a.field(), b.field())
}

impl Add for &Scalar {
    type Output = Scalar;

    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (
                Scalar::Modular { residue: a, modulus: p },
                Scalar::Modular { residue: b, modulus: q },
            ) if p == q => Scalar::Modular {
                residue: ((*a as u128 + *b as u128) % *p as u128) as u64,
                modulus: *p,
            },
            _ => mixed(self, rhs),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (
                Scalar::Modular { residue: a, modulus: p },
                Scalar::Modular { residue: b, modulus: q },
            ) if p == q => Scalar::Modular {
                residue: mul_mod(*a, *b, *p),
                modulus: *p,
            },
            _ => mixed(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Modular { residue, modulus } => Scalar::Modular {
                residue: (modulus - residue) % modulus,
                modulus: *modulus,
            },
        }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -(&self)
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

// p is prime, so Fermat applies.
fn inverse_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic primality test (trial division; desk-scale moduli).
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Sign helper for simplicial boundaries: `(-1)^k` in `field`.
pub fn alternating_sign(field: Field, k: usize) -> Scalar {
    if k.is_multiple_of(2) {
        field.one()
    } else {
        -field.one()
    }
}

/// `true` when the rational is strictly negative.
pub fn is_negative(value: &Rational) -> bool {
    value.is_negative()
}
