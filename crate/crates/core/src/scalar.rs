//! Exact scalars over the rationals or a prime field.
//!
//! A session picks one [`Field`]; every [`Scalar`] built in it carries that
//! field. Arithmetic between scalars of different fields is a programming
//! error and panics; inputs are validated when tensors are constructed.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Largest prime modulus accepted for `F_p`.
pub const MAX_PRIME: u32 = 257;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rational,
    Prime(u32),
}

impl Field {
    pub fn prime(p: u32) -> Result<Field, Error> {
        if !(2..=MAX_PRIME).contains(&p) || !is_prime(p) {
            return Err(Error::Field(format!("{p} is not a prime in 2..={MAX_PRIME}")));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Fp {
                v: v.rem_euclid(p as i64) as u32,
                p,
            },
        }
    }

    /// Maps an exact rational into this field. Fails when the denominator
    /// vanishes mod p.
    pub fn from_rational(self, q: &BigRational) -> Result<Scalar, Error> {
        match self {
            Field::Rational => Ok(Scalar::Q(q.clone())),
            Field::Prime(p) => {
                let pm = BigInt::from(p);
                let n = mod_big(q.numer(), &pm);
                let d = mod_big(q.denom(), &pm);
                if d == 0 {
                    return Err(Error::Field(format!("denominator of {q} vanishes mod {p}")));
                }
                Ok(Scalar::Fp {
                    v: (n as u64 * inv_mod(d, p) as u64 % p as u64) as u32,
                    p,
                })
            }
        }
    }

    /// All field elements; only meaningful for prime fields.
    pub fn elements(self) -> Vec<Scalar> {
        match self {
            Field::Rational => vec![self.zero(), self.one(), self.from_i64(-1), self.from_i64(2)],
            Field::Prime(p) => (0..p).map(|v| Scalar::Fp { v, p }).collect(),
        }
    }

    pub fn parse_literal(self, s: &str) -> Result<Scalar, Error> {
        let q = parse_rational(s)?;
        self.from_rational(&q)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "q"),
            Field::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s == "q" || s == "Q" {
            return Ok(Field::Rational);
        }
        if let Some(p) = s.strip_prefix("fp:") {
            let p: u32 = p
                .parse()
                .map_err(|_| Error::Field(format!("bad prime in field spec `{s}`")))?;
            return Field::prime(p);
        }
        Err(Error::Field(format!("unknown field `{s}` (expected q or fp:<p>)")))
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn mod_big(n: &BigInt, p: &BigInt) -> u32 {
    let r = ((n % p) + p) % p;
    u32::try_from(r).expect("residue fits in u32")
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // p is prime, so a^(p-2) is the inverse.
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let s = s.trim();
    let bad = || Error::Field(format!("bad scalar literal `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// An exact field element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp { v: u32, p: u32 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rational,
            Scalar::Fp { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::Fp { v, .. } => *v == 1,
        }
    }

    pub fn inverse(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Q(q) => Scalar::Q(q.recip()),
            Scalar::Fp { v, p } => Scalar::Fp { v: inv_mod(*v, *p), p: *p },
        })
    }

    pub fn to_field(&self, field: Field) -> Result<Scalar, Error> {
        match self {
            Scalar::Q(q) => field.from_rational(q),
            Scalar::Fp { p, .. } => match field {
                Field::Prime(p2) if p2 == *p => Ok(self.clone()),
                _ => Err(Error::Field(format!(
                    "cannot move an F_{p} element into {field}"
                ))),
            },
        }
    }

    /// Literal form used by the tensor serialization: `p/q` in lowest terms
    /// for rationals, the canonical residue for `F_p`.
    pub fn literal(&self) -> String {
        match self {
            Scalar::Q(q) => {
                if q.denom().is_one() {
                    q.numer().to_string()
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Fp { v, .. } => v.to_string(),
        }
    }

    fn check_same(&self, other: &Scalar) {
        if let (Scalar::Fp { p, .. }, Scalar::Fp { p: q, .. }) = (self, other) {
            assert_eq!(p, q, "mixed prime fields in arithmetic");
            return;
        }
        assert_eq!(self.field(), other.field(), "mixed fields in arithmetic");
    }

    pub fn add_ref(&self, rhs: &Scalar) -> Scalar {
        self.check_same(rhs);
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, .. }) => Scalar::Fp {
                v: (a + b) % p,
                p: *p,
            },
            _ => unreachable!(),
        }
    }

    pub fn mul_ref(&self, rhs: &Scalar) -> Scalar {
        self.check_same(rhs);
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, .. }) => Scalar::Fp {
                v: ((*a as u64 * *b as u64) % *p as u64) as u32,
                p: *p,
            },
            _ => unreachable!(),
        }
    }

    pub fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp { v, p } => Scalar::Fp { v: (p - v) % p, p: *p },
        }
    }

    /// `self += a * b` without intermediate clones on the prime-field path.
    pub fn add_product(&mut self, a: &Scalar, b: &Scalar) {
        match (&mut *self, a, b) {
            (Scalar::Fp { v, p }, Scalar::Fp { v: x, .. }, Scalar::Fp { v: y, .. }) => {
                *v = ((*v as u64 + *x as u64 * *y as u64) % *p as u64) as u32;
            }
            _ => {
                let t = a.mul_ref(b);
                *self = self.add_ref(&t);
            }
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Q(q) if q.is_negative())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.literal())
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        self.add_ref(&rhs)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.add_ref(rhs)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = self.add_ref(rhs);
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        self.add_ref(&rhs.neg_ref())
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.add_ref(&rhs.neg_ref())
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        self.mul_ref(&rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.mul_ref(rhs)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_literals_are_lowest_terms() {
        let q = Field::Rational;
        assert_eq!(q.parse_literal("6/4").unwrap().literal(), "3/2");
        assert_eq!(q.parse_literal("-4/2").unwrap().literal(), "-2");
        assert!(q.parse_literal("1/0").is_err());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(7).unwrap();
        let a = f.from_i64(5);
        let b = f.from_i64(4);
        assert_eq!((&a + &b).literal(), "2");
        assert_eq!((&a * &b).literal(), "6");
        assert_eq!(a.inverse().unwrap().mul_ref(&a), f.one());
        assert_eq!(f.parse_literal("1/2").unwrap().literal(), "4");
        assert!(Field::prime(9).is_err());
        assert!(Field::prime(263).is_err());
    }

    #[test]
    fn field_spec_parsing() {
        assert_eq!("q".parse::<Field>().unwrap(), Field::Rational);
        assert_eq!("fp:2".parse::<Field>().unwrap(), Field::Prime(2));
        assert!("fp:4".parse::<Field>().is_err());
        assert!("r".parse::<Field>().is_err());
    }

    #[test]
    #[should_panic(expected = "mixed")]
    fn mixing_fields_panics() {
        let _ = Field::Rational.one() + Field::Prime(2).one();
    }

    #[test]
    fn add_product_matches_mul_then_add() {
        for field in [Field::Rational, Field::Prime(5)] {
            let mut acc = field.from_i64(3);
            acc.add_product(&field.from_i64(4), &field.from_i64(-2));
            assert_eq!(acc, field.from_i64(-5));
        }
    }
}
