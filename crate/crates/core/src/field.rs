//! Exact scalar fields: the rationals and prime fields.
//!
//! Every computation in the crate is exact. Elements print in exact form
//! (`p/q` for rationals, a canonical residue for prime fields) and parse
//! back from the same form.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Runtime description of a field, as it appears in input files.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    /// The rational numbers.
    Rationals,
    /// The prime field with the given characteristic.
    Prime(u64),
}

impl FieldSpec {
    /// Parses the `"Q"` / `"Fp"` tag plus the optional characteristic used in
    /// JSON inputs.
    pub fn from_tag(tag: &str, p: Option<u64>) -> Result<Self> {
        match tag {
            "Q" | "QQ" | "rationals" => Ok(FieldSpec::Rationals),
            "Fp" | "F" | "prime" => {
                let p = p.ok_or_else(|| Error::Unsupported("prime field without \"p\"".into()))?;
                if !is_prime(p) {
                    return Err(Error::Unsupported(format!("{p} is not prime")));
                }
                Ok(FieldSpec::Prime(p))
            }
            other => Err(Error::Unsupported(format!("field spec {other:?}"))),
        }
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// An exact field. Implementors are small `Copy` descriptors; the elements
/// carry no reference to their field.
pub trait Field: Copy + Eq + Ord + Hash + Debug + Send + Sync + 'static {
    type Elem: Clone + Eq + Ord + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Exact textual form.
    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem>;

    /// All elements, for finite fields.
    fn elements(&self) -> Option<Vec<Self::Elem>>;
    fn spec(&self) -> FieldSpec;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// Cardinality when finite.
    fn order(&self) -> Option<u64> {
        match self.spec() {
            FieldSpec::Rationals => None,
            FieldSpec::Prime(p) => Some(p),
        }
    }
}

/// ℚ with arbitrary-precision numerators and denominators.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn parse(&self, s: &str) -> Result<BigRational> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not an exact rational: {s:?}"));
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
    fn elements(&self) -> Option<Vec<BigRational>> {
        None
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
}

/// 𝔽_p for a prime `p` below 2³².
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) || p >= 1 << 32 {
            return Err(Error::Unsupported(format!(
                "prime field of characteristic {p}"
            )));
        }
        Ok(Self { p })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // Fermat: a^(p-2)
        let (mut base, mut exp, mut acc) = (*a, self.p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        Some(acc)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<u64> {
        let q = Rationals.parse(s)?;
        let n = q.numer().mod_floor_i64(self.p);
        let d = q.denom().mod_floor_i64(self.p);
        let d_inv = self.inv(&d).ok_or_else(|| {
            Error::Parse(format!("{s:?} has a denominator divisible by {}", self.p))
        })?;
        Ok(self.mul(&n, &d_inv))
    }
    fn elements(&self) -> Option<Vec<u64>> {
        Some((0..self.p).collect())
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }
}

/// A scalar as written in JSON inputs: an integer or an exact string such
/// as `"-3/4"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

impl Scalar {
    pub fn to_elem<F: Field>(&self, field: F) -> Result<F::Elem> {
        match self {
            Scalar::Int(n) => Ok(field.from_i64(*n)),
            Scalar::Text(s) => field.parse(s),
        }
    }

    /// Integers are written as JSON numbers, everything else as text.
    pub fn from_elem<F: Field>(field: F, a: &F::Elem) -> Self {
        let text = field.format(a);
        text.parse().map_or(Scalar::Text(text), Scalar::Int)
    }
}

/// A linear combination `Σ cᵢ·labelᵢ` in exact form, e.g. `p0 - 2·p1`.
/// Zero coefficients are dropped; the empty sum is `0`.
pub fn format_combination<'a, F: Field>(
    field: F,
    terms: impl IntoIterator<Item = (&'a F::Elem, String)>,
) -> String {
    let mut out = String::new();
    for (c, label) in terms {
        if field.is_zero(c) {
            continue;
        }
        let text = field.format(c);
        let (negative, magnitude) = match text.strip_prefix('-') {
            Some(m) => (true, m),
            None => (false, text.as_str()),
        };
        out.push_str(match (out.is_empty(), negative) {
            (true, false) => "",
            (true, true) => "-",
            (false, false) => " + ",
            (false, true) => " - ",
        });
        if magnitude != "1" {
            out.push_str(magnitude);
            out.push('·');
        }
        out.push_str(&label);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn parse_vector<F: Field>(field: F, v: &[Scalar]) -> Result<Vec<F::Elem>> {
    v.iter().map(|s| s.to_elem(field)).collect()
}

trait ModFloor {
    fn mod_floor_i64(&self, p: u64) -> u64;
}

impl ModFloor for BigInt {
    fn mod_floor_i64(&self, p: u64) -> u64 {
        let m = BigInt::from(p);
        let mut r = self % &m;
        if r.is_negative() {
            r += &m;
        }
        r.to_u64().expect("residue fits in u64")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_roundtrip() {
        let q = Rationals;
        for s in ["0", "5", "-3/4", "7/2"] {
            assert_eq!(q.format(&q.parse(s).unwrap()), s);
        }
        assert_eq!(q.format(&q.parse("6/4").unwrap()), "3/2");
        assert!(q.parse("1/0").is_err());
    }

    #[test]
    fn prime_field_inverses() {
        let f = PrimeField::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
        }
        assert_eq!(f.inv(&0), None);
        assert_eq!(f.parse("1/2").unwrap(), 4);
        assert_eq!(f.parse("-1").unwrap(), 6);
        assert!(PrimeField::new(6).is_err());
    }

    #[test]
    fn combinations() {
        let q = Rationals;
        let v = [
            q.from_i64(1),
            q.zero(),
            q.from_i64(-2),
            q.parse("-1/3").unwrap(),
        ];
        let labels = ["a", "b", "c", "d"].map(String::from);
        assert_eq!(
            format_combination(q, v.iter().zip(labels)),
            "a - 2·c - 1/3·d"
        );
        assert_eq!(
            format_combination(q, [(&q.from_i64(-1), "x".to_string())]),
            "-x"
        );
        assert_eq!(format_combination(q, std::iter::empty()), "0");
    }

    #[test]
    fn json_scalars() {
        let v: Vec<Scalar> = serde_json::from_str(r#"[1, "-1/2", "3"]"#).unwrap();
        let q = parse_vector(Rationals, &v).unwrap();
        assert_eq!(q[1], Rationals.parse("-1/2").unwrap());
        assert_eq!(
            parse_vector(PrimeField::new(5).unwrap(), &v).unwrap(),
            vec![1, 2, 3]
        );
    }
}
