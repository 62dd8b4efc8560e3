//! Exact fields, polynomials over them, and dense square matrices.
//!
//! Every arithmetic routine takes the field as an explicit context argument, so a
//! single element type (say `u64` for finite fields) serves many fields.

mod cyclotomic;
mod factor_q;
mod finite;
mod matrix;
mod poly;
mod rational;

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::RngCore;

use crate::error::{Error, Result};

pub use cyclotomic::{cyclotomic_polynomial, CyclotomicField};
pub use factor_q::is_irreducible_over_q;
pub use finite::{make_extension, nth_roots_of_unity, FiniteField, MAX_FIELD_ORDER};
pub use matrix::{char_poly, min_poly, SquareMatrix};
pub use poly::Poly;
pub use rational::Rationals;

/// A field whose elements are plain values of type `Elem`.
pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;
    /// 0 for ℚ and its extensions, p otherwise.
    fn characteristic(&self) -> u64;
    /// Number of elements, `None` when infinite.
    fn order(&self) -> Option<u64>;
    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem>;
    /// A random element; used for sampling tests.
    fn random(&self, rng: &mut dyn RngCore) -> Self::Elem;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Image of a rational number; `None` when the denominator vanishes in the field.
    fn from_rational(&self, r: &BigRational) -> Option<Self::Elem> {
        let num = self.from_bigint(r.numer());
        let den = self.from_bigint(r.denom());
        self.div(&num, &den)
    }
}

/// A working field selected at run time: ℚ, GF(p) or GF(p^m).
#[derive(Clone, Debug, PartialEq)]
pub enum FieldCtx {
    Rationals(Rationals),
    Finite(FiniteField),
}

impl FieldCtx {
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldCtx::Rationals(q) => q.characteristic(),
            FieldCtx::Finite(f) => f.characteristic(),
        }
    }

    pub fn order(&self) -> Option<u64> {
        match self {
            FieldCtx::Rationals(_) => None,
            FieldCtx::Finite(f) => Some(f.size()),
        }
    }

    /// Field with the given characteristic; 0 means ℚ, otherwise the prime field.
    pub fn from_characteristic(p: u64) -> Result<Self> {
        if p == 0 {
            Ok(FieldCtx::Rationals(Rationals))
        } else {
            Ok(FieldCtx::Finite(FiniteField::prime(p)?))
        }
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldCtx::Rationals(_) => f.write_str("Q"),
            FieldCtx::Finite(ff) => write!(f, "{ff}"),
        }
    }
}

impl FromStr for FieldCtx {
    type Err = Error;

    /// Accepts "Q", "GF(p)" and "GF(p^m)".
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t == "Q" {
            return Ok(FieldCtx::Rationals(Rationals));
        }
        let inner = t
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("unknown field {s:?}; expected Q, GF(p) or GF(p^m)")))?;
        let (p, m) = match inner.split_once('^') {
            Some((p, m)) => (p, m),
            None => (inner, "1"),
        };
        let p: u64 = p.parse().map_err(|_| Error::Parse(format!("bad prime in {s:?}")))?;
        let m: u32 = m.parse().map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?;
        if m == 0 {
            return Err(Error::Parse(format!("exponent must be positive in {s:?}")));
        }
        Ok(FieldCtx::Finite(make_extension(p, m)?))
    }
}

/// Checks a polynomial for irreducibility over ℚ or a finite field.
pub fn is_irreducible_in(ctx: &FieldCtx, f: &Poly<BigRational>) -> Result<bool> {
    match ctx {
        FieldCtx::Rationals(_) => is_irreducible_over_q(f),
        FieldCtx::Finite(ff) => {
            let g = f
                .map_coeffs(ff, |c| ff.from_rational(c))
                .ok_or_else(|| Error::Unsupported("coefficient denominator divisible by p".into()))?;
            ff.is_irreducible(&g)
        }
    }
}

#[cfg(test)]
pub(crate) mod axioms {
    use super::Field;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Ring axioms and inverses on random samples.
    pub fn check_field_axioms<F: Field>(f: &F, samples: usize, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let a = f.random(&mut rng);
            let b = f.random(&mut rng);
            let c = f.random(&mut rng);
            assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
            assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            assert_eq!(f.add(&a, &b), f.add(&b, &a));
            assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
            assert_eq!(f.add(&a, &f.neg(&a)), f.zero());
            assert_eq!(f.sub(&a, &b), f.add(&a, &f.neg(&b)));
            if f.is_zero(&a) {
                assert!(f.inv(&a).is_none());
            } else {
                let ai = f.inv(&a).unwrap();
                assert!(f.is_one(&f.mul(&a, &ai)));
            }
            assert_eq!(f.parse(&f.format(&a)).unwrap(), a);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_specs_parse() {
        assert_eq!("Q".parse::<FieldCtx>().unwrap().characteristic(), 0);
        let f: FieldCtx = "GF(7)".parse().unwrap();
        assert_eq!(f.order(), Some(7));
        let f: FieldCtx = "GF(2^3)".parse().unwrap();
        assert_eq!(f.order(), Some(8));
        assert_eq!(f.to_string(), "GF(2^3)");
        assert!("GF(6)".parse::<FieldCtx>().is_err());
        assert!("R".parse::<FieldCtx>().is_err());
        assert!("GF(3^0)".parse::<FieldCtx>().is_err());
    }
}
