//! Exact scalars over the rationals or a prime field of odd characteristic.
//!
//! A [`Scalar`] carries its field with it, so values from different fields
//! can never be combined silently. The checked methods (`checked_add`, ...)
//! report a [`FieldError::FieldMismatch`]; the operator impls panic instead,
//! which is what the geometry kernel uses once every input has been built
//! from a single [`FieldSpec`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("FieldMismatch: cannot combine {0} and {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("DivisionByZero")]
    DivisionByZero,
    #[error("InvalidModulus: {0} is not an odd prime")]
    InvalidModulus(u64),
    #[error("ParseError: cannot read {input:?} as an element of {field}")]
    Parse { input: String, field: FieldSpec },
    #[error("ParseError: unknown field {0:?} (expected Q or GFp:<p>)")]
    UnknownField(String),
}

/// The ground field: the rationals or GF(p) for an odd prime p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    /// GF(p), validating that `p` is an odd prime.
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if p < 3 || !is_prime(p) {
            return Err(FieldError::InvalidModulus(p));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::Prime(p) => Some(*p),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, FieldSpec::Prime(_))
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            FieldSpec::Rationals => Scalar(Repr::Rational(BigRational::from_integer(n.into()))),
            FieldSpec::Prime(p) => Scalar(Repr::Residue {
                value: (n as i128).rem_euclid(p as i128) as u64,
                modulus: p,
            }),
        }
    }

    fn from_bigint(&self, n: &BigInt) -> Scalar {
        match *self {
            FieldSpec::Rationals => Scalar(Repr::Rational(BigRational::from_integer(n.clone()))),
            FieldSpec::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                Scalar(Repr::Residue { value: r.to_u64().unwrap_or(0), modulus: p })
            }
        }
    }

    /// `n / d` in this field.
    pub fn ratio(&self, n: i64, d: i64) -> Result<Scalar, FieldError> {
        self.from_i64(n).checked_div(&self.from_i64(d))
    }

    /// All elements of a finite field in residue order; `None` for the rationals.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match *self {
            FieldSpec::Rationals => None,
            FieldSpec::Prime(p) => Some(
                (0..p)
                    .map(|value| Scalar(Repr::Residue { value, modulus: p }))
                    .collect(),
            ),
        }
    }

    /// Reads `n`, `-n` or `n/d`. Over GF(p) any integer is reduced and
    /// `n/d` means `n * d^-1`; the canonical rendering is the bare residue.
    pub fn parse_scalar(&self, input: &str) -> Result<Scalar, FieldError> {
        let err = || FieldError::Parse { input: input.to_string(), field: *self };
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(err());
        }
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s.as_str(), None),
        };
        let parse_int = |t: &str| -> Result<BigInt, FieldError> {
            let t = t.strip_prefix('+').unwrap_or(t);
            if t.is_empty() || !t.trim_start_matches('-').chars().all(|c| c.is_ascii_digit()) {
                return Err(err());
            }
            t.parse::<BigInt>().map_err(|_| err())
        };
        let n = self.from_bigint(&parse_int(num)?);
        match den {
            None => Ok(n),
            Some(d) => {
                let d = self.from_bigint(&parse_int(d)?);
                n.checked_div(&d).map_err(|_| err())
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "GFp:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t == "Q" || t == "q" || t.eq_ignore_ascii_case("rationals") {
            return Ok(FieldSpec::Rationals);
        }
        let upper = t.to_ascii_uppercase();
        let digits = upper
            .strip_prefix("GFP:")
            .or_else(|| upper.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')))
            .or_else(|| upper.strip_prefix("GF"))
            .ok_or_else(|| FieldError::UnknownField(s.to_string()))?;
        let p: u64 = digits.parse().map_err(|_| FieldError::UnknownField(s.to_string()))?;
        FieldSpec::prime(p)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum Repr {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

/// An exact element of a [`FieldSpec`], always held in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match &self.0 {
            Repr::Rational(_) => FieldSpec::Rationals,
            Repr::Residue { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Rational(r) => r.is_zero(),
            Repr::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Rational(r) => r.is_one(),
            Repr::Residue { value, .. } => *value == 1,
        }
    }

    /// Strictly negative rational. Residues are never negative.
    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Rational(r) => r.is_negative(),
            Repr::Residue { .. } => false,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Rational(r) => Some(r),
            Repr::Residue { .. } => None,
        }
    }

    pub fn residue(&self) -> Option<u64> {
        match &self.0 {
            Repr::Rational(_) => None,
            Repr::Residue { value, .. } => Some(*value),
        }
    }

    /// Lossy conversion used only when drawing.
    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Rational(r) => {
                let n = r.numer().to_f64().unwrap_or(f64::NAN);
                let d = r.denom().to_f64().unwrap_or(f64::NAN);
                n / d
            }
            Repr::Residue { value, .. } => *value as f64,
        }
    }

    fn same_field(&self, other: &Scalar) -> Result<(), FieldError> {
        let (a, b) = (self.field(), other.field());
        if a == b {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch(a, b))
        }
    }

    pub fn checked_add(&self, rhs: &Scalar) -> Result<Scalar, FieldError> {
        self.same_field(rhs)?;
        Ok(Scalar(match (&self.0, &rhs.0) {
            (Repr::Rational(a), Repr::Rational(b)) => Repr::Rational(a + b),
            (Repr::Residue { value: a, modulus: p }, Repr::Residue { value: b, .. }) => {
                Repr::Residue { value: ((*a as u128 + *b as u128) % *p as u128) as u64, modulus: *p }
            }
            _ => unreachable!(),
        }))
    }

    pub fn checked_sub(&self, rhs: &Scalar) -> Result<Scalar, FieldError> {
        self.same_field(rhs)?;
        self.checked_add(&-rhs)
    }

    pub fn checked_mul(&self, rhs: &Scalar) -> Result<Scalar, FieldError> {
        self.same_field(rhs)?;
        Ok(Scalar(match (&self.0, &rhs.0) {
            (Repr::Rational(a), Repr::Rational(b)) => Repr::Rational(a * b),
            (Repr::Residue { value: a, modulus: p }, Repr::Residue { value: b, .. }) => {
                Repr::Residue { value: mul_mod(*a, *b, *p), modulus: *p }
            }
            _ => unreachable!(),
        }))
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar, FieldError> {
        self.same_field(rhs)?;
        self.checked_mul(&rhs.inv()?)
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Scalar, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Scalar(match &self.0 {
            Repr::Rational(r) => Repr::Rational(r.recip()),
            Repr::Residue { value, modulus } => {
                Repr::Residue { value: pow_mod(*value, modulus - 2, *modulus), modulus: *modulus }
            }
        }))
    }

    pub fn square(&self) -> Scalar {
        self * self
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }

    /// `self / 2`, always defined because the characteristic is not 2.
    pub fn half(&self) -> Scalar {
        let two = self.field().from_i64(2);
        self / &two
    }

    pub fn is_square(&self) -> bool {
        self.sqrt().is_some()
    }

    /// A square root inside the field, if one exists.
    ///
    /// The root is canonical: the nonnegative one over the rationals, the
    /// even residue over GF(p).
    pub fn sqrt(&self) -> Option<Scalar> {
        match &self.0 {
            Repr::Rational(r) => {
                if r.is_negative() {
                    return None;
                }
                let n = exact_isqrt(r.numer())?;
                let d = exact_isqrt(r.denom())?;
                Some(Scalar(Repr::Rational(BigRational::new(n, d))))
            }
            Repr::Residue { value, modulus } => {
                let root = sqrt_mod(*value, *modulus)?;
                let root = if root % 2 == 1 { modulus - root } else { root };
                Some(Scalar(Repr::Residue { value: root % modulus, modulus: *modulus }))
            }
        }
    }
}

fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Numeric order over the rationals, residue order over GF(p). Used only
/// for canonical storage order, never as a geometric predicate.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Rational(a), Repr::Rational(b)) => a.cmp(b),
            (Repr::Residue { value: a, modulus: p }, Repr::Residue { value: b, modulus: q }) => {
                (p, a).cmp(&(q, b))
            }
            (Repr::Rational(_), Repr::Residue { .. }) => Ordering::Less,
            (Repr::Residue { .. }, Repr::Rational(_)) => Ordering::Greater,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Rational(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Repr::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Repr::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Rational(_) => write!(f, "{self}"),
            Repr::Residue { modulus, .. } => write!(f, "{self} (mod {modulus})"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        Scalar(match &self.0 {
            Repr::Rational(r) => Repr::Rational(-r),
            Repr::Residue { value, modulus } => {
                Repr::Residue { value: (modulus - value) % modulus, modulus: *modulus }
            }
        })
    }
}

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! scalar_binop {
    ($Trait:ident, $method:ident, $checked:ident) => {
        impl $Trait<&Scalar> for &Scalar {
            type Output = Scalar;

            fn $method(self, rhs: &Scalar) -> Scalar {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }

        impl $Trait<Scalar> for Scalar {
            type Output = Scalar;

            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }

        impl $Trait<&Scalar> for Scalar {
            type Output = Scalar;

            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }

        impl $Trait<Scalar> for &Scalar {
            type Output = Scalar;

            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add, checked_add);
scalar_binop!(Sub, sub, checked_sub);
scalar_binop!(Mul, mul, checked_mul);
scalar_binop!(Div, div, checked_div);

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

/// Some square root of `a` modulo the odd prime `p`.
fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, (p + 1) / 4, p));
    }
    // Tonelli-Shanks: p - 1 = q * 2^s with q odd.
    let s = (p - 1).trailing_zeros();
    let q = (p - 1) >> s;
    let z = (2..p).find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1)?;
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

/// Deterministic Miller-Rabin for 64-bit inputs.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
