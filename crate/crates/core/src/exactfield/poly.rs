use std::fmt::Debug;
use std::hash::Hash;

use super::Field;
use crate::error::{Error, Result};

/// Univariate polynomial, coefficients low degree first with no trailing zeros.
///
/// The zero polynomial has an empty coefficient list and `degree() == None`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

impl<E: Clone + PartialEq + Eq + Hash + Debug> Poly<E> {
    pub fn new<F: Field<Elem = E>>(f: &F, mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|c| f.is_zero(c)) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn from_ints<F: Field<Elem = E>>(f: &F, coeffs: &[i64]) -> Self {
        Self::new(f, coeffs.iter().map(|&c| f.from_i64(c)).collect())
    }

    pub fn constant<F: Field<Elem = E>>(f: &F, c: E) -> Self {
        Self::new(f, vec![c])
    }

    pub fn one<F: Field<Elem = E>>(f: &F) -> Self {
        Self::constant(f, f.one())
    }

    /// The polynomial `x`.
    pub fn x<F: Field<Elem = E>>(f: &F) -> Self {
        Self::monomial(f, f.one(), 1)
    }

    pub fn monomial<F: Field<Elem = E>>(f: &F, c: E, d: usize) -> Self {
        let mut coeffs = vec![f.zero(); d + 1];
        coeffs[d] = c;
        Self::new(f, coeffs)
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn coeff<F: Field<Elem = E>>(&self, i: usize, f: &F) -> E {
        self.coeffs.get(i).cloned().unwrap_or_else(|| f.zero())
    }

    pub fn add<F: Field<Elem = E>>(&self, other: &Self, f: &F) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let c = (0..len).map(|i| f.add(&self.coeff(i, f), &other.coeff(i, f))).collect();
        Self::new(f, c)
    }

    pub fn sub<F: Field<Elem = E>>(&self, other: &Self, f: &F) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let c = (0..len).map(|i| f.sub(&self.coeff(i, f), &other.coeff(i, f))).collect();
        Self::new(f, c)
    }

    pub fn neg<F: Field<Elem = E>>(&self, f: &F) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| f.neg(c)).collect() }
    }

    pub fn scale<F: Field<Elem = E>>(&self, c: &E, f: &F) -> Self {
        Self::new(f, self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    fn shift_with(&self, k: usize, zero: E) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![zero; k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn mul<F: Field<Elem = E>>(&self, other: &Self, f: &F) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut c = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] = f.add(&c[i + j], &f.mul(a, b));
            }
        }
        Self::new(f, c)
    }

    /// Quotient and remainder. Panics when `divisor` is zero.
    pub fn divmod<F: Field<Elem = E>>(&self, divisor: &Self, f: &F) -> (Self, Self) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lead_inv = f.inv(divisor.leading().unwrap()).expect("leading coefficient is a unit");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![f.zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = f.mul(&rem[i + dd], &lead_inv);
            if f.is_zero(&c) {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = f.sub(&rem[i + j], &f.mul(&c, d));
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(f, quot), Self::new(f, rem))
    }

    pub fn rem<F: Field<Elem = E>>(&self, divisor: &Self, f: &F) -> Self {
        self.divmod(divisor, f).1
    }

    /// Exact quotient, `None` when the division leaves a remainder.
    pub fn div_exact<F: Field<Elem = E>>(&self, divisor: &Self, f: &F) -> Option<Self> {
        let (q, r) = self.divmod(divisor, f);
        r.is_zero().then_some(q)
    }

    pub fn monic<F: Field<Elem = E>>(&self, f: &F) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => self.scale(&f.inv(l).expect("nonzero leading coefficient"), f),
        }
    }

    /// Monic greatest common divisor; zero only if both inputs are zero.
    pub fn gcd<F: Field<Elem = E>>(&self, other: &Self, f: &F) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, f);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    /// Returns (g, s, t) with s·self + t·other = g and g monic.
    pub fn xgcd<F: Field<Elem = E>>(&self, other: &Self, f: &F) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(f), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1, f);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1, f), f);
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1, f), f);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading().cloned() {
            None => (r0, s0, t0),
            Some(l) => {
                let li = f.inv(&l).unwrap();
                (r0.scale(&li, f), s0.scale(&li, f), t0.scale(&li, f))
            }
        }
    }

    pub fn derivative<F: Field<Elem = E>>(&self, f: &F) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| f.mul(a, &f.from_i64(i as i64)))
            .collect();
        Self::new(f, c)
    }

    pub fn eval<F: Field<Elem = E>>(&self, x: &E, f: &F) -> E {
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    /// self^e mod `modulus`.
    pub fn powmod<F: Field<Elem = E>>(&self, mut e: u64, modulus: &Self, f: &F) -> Self {
        let mut acc = Self::one(f).rem(modulus, f);
        let mut base = self.rem(modulus, f);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, f).rem(modulus, f);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, f).rem(modulus, f);
            }
        }
        acc
    }

    /// Substitutes `g` for the variable.
    pub fn compose<F: Field<Elem = E>>(&self, g: &Self, f: &F) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| acc.mul(g, f).add(&Self::constant(f, c.clone()), f))
    }

    /// Coefficientwise image in another field; `None` if any coefficient has no image.
    pub fn map_coeffs<G: Field>(&self, g: &G, mut fun: impl FnMut(&E) -> Option<G::Elem>) -> Option<Poly<G::Elem>> {
        let c = self.coeffs.iter().map(&mut fun).collect::<Option<Vec<_>>>()?;
        Some(Poly::new(g, c))
    }

    /// Text form "c0 + c1*x + c2*x^2", zero terms omitted.
    pub fn format<F: Field<Elem = E>>(&self, f: &F) -> String {
        self.format_var(f, "x")
    }

    pub fn format_var<F: Field<Elem = E>>(&self, f: &F, var: &str) -> String {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            let s = f.format(c);
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let term = if i == 0 {
                s
            } else if s == "1" {
                mono
            } else if s == "-1" {
                format!("-{mono}")
            } else {
                format!("{s}*{mono}")
            };
            if out.is_empty() {
                out = term;
            } else if let Some(rest) = term.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&term);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Parses the output of [`Poly::format`]; the variable may be `x`, `y` or `w`.
    pub fn parse<F: Field<Elem = E>>(f: &F, s: &str) -> Result<Self> {
        let t: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for i in 1..t.len() {
            if (t[i] == '+' || t[i] == '-') && !matches!(t[i - 1], '^' | '*' | '/' | '+' | '-') {
                terms.push(t[start..i].iter().collect::<String>());
                start = i;
            }
        }
        terms.push(t[start..].iter().collect());
        let mut coeffs: Vec<E> = Vec::new();
        for term in terms {
            let (neg, body) = match term.strip_prefix('-') {
                Some(b) => (true, b.to_string()),
                None => (false, term.trim_start_matches('+').to_string()),
            };
            let (coef, exp) = match body.find(['x', 'y', 'w']) {
                None => (f.parse(&body)?, 0usize),
                Some(pos) => {
                    let c = match &body[..pos] {
                        "" => f.one(),
                        pre => f.parse(pre.strip_suffix('*').ok_or_else(|| Error::Parse(format!("bad term {term:?}")))?)?,
                    };
                    let e = match &body[pos + 1..] {
                        "" => 1,
                        post => post
                            .strip_prefix('^')
                            .and_then(|d| d.parse().ok())
                            .ok_or_else(|| Error::Parse(format!("bad exponent in {term:?}")))?,
                    };
                    (c, e)
                }
            };
            let coef = if neg { f.neg(&coef) } else { coef };
            if coeffs.len() <= exp {
                coeffs.resize(exp + 1, f.zero());
            }
            coeffs[exp] = f.add(&coeffs[exp], &coef);
        }
        Ok(Self::new(f, coeffs))
    }

    /// Multiplies by x^k.
    pub fn shift_in<F: Field<Elem = E>>(&self, k: usize, f: &F) -> Self {
        self.shift_with(k, f.zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{FiniteField, Rationals};
    use proptest::prelude::*;

    #[test]
    fn division_and_gcd() {
        let q = Rationals;
        let a = Poly::from_ints(&q, &[-1, 0, 1]); // x^2 - 1
        let b = Poly::from_ints(&q, &[1, 1]);
        let (quot, r) = a.divmod(&b, &q);
        assert!(r.is_zero());
        assert_eq!(quot, Poly::from_ints(&q, &[-1, 1]));
        let c = Poly::from_ints(&q, &[2, 3, 1]); // (x+1)(x+2)
        assert_eq!(a.gcd(&c, &q), b);
        let (g, s, t) = a.xgcd(&c, &q);
        assert_eq!(s.mul(&a, &q).add(&t.mul(&c, &q), &q), g);
    }

    #[test]
    fn text_round_trip() {
        let q = Rationals;
        let p = Poly::parse(&q, "1 - 3/2*x + x^3").unwrap();
        assert_eq!(p.coeffs().len(), 4);
        assert_eq!(p.format(&q), "1 - 3/2*x + x^3");
        assert_eq!(Poly::parse(&q, "-x^2 + -1").unwrap(), Poly::from_ints(&q, &[-1, 0, -1]));
        assert_eq!(Poly::<num_rational::BigRational>::zero().format(&q), "0");
        let f7 = FiniteField::prime(7).unwrap();
        let p = Poly::from_ints(&f7, &[-1, 0, 2]);
        assert_eq!(p.format(&f7), "6 + 2*x^2");
        assert_eq!(Poly::parse(&f7, "6 + 2*x^2").unwrap(), p);
    }

    #[test]
    fn powmod_matches_repeated_multiplication() {
        let f = FiniteField::prime(5).unwrap();
        let m = Poly::from_ints(&f, &[2, 0, 1, 1]);
        let b = Poly::from_ints(&f, &[1, 3]);
        let mut acc = Poly::one(&f);
        for e in 0..30u64 {
            assert_eq!(b.powmod(e, &m, &f), acc);
            acc = acc.mul(&b, &f).rem(&m, &f);
        }
    }

    proptest! {
        #[test]
        fn divmod_reconstructs(a in prop::collection::vec(-9i64..9, 0..8), b in prop::collection::vec(-9i64..9, 1..6)) {
            let q = Rationals;
            let a = Poly::from_ints(&q, &a);
            let b = Poly::from_ints(&q, &b);
            prop_assume!(!b.is_zero());
            let (quot, r) = a.divmod(&b, &q);
            prop_assert_eq!(quot.mul(&b, &q).add(&r, &q), a);
            prop_assert!(r.degree() < b.degree() || r.is_zero());
        }

        #[test]
        fn format_parse_round_trip(a in prop::collection::vec(-9i64..9, 0..8)) {
            let q = Rationals;
            let p = Poly::from_ints(&q, &a);
            prop_assert_eq!(Poly::parse(&q, &p.format(&q)).unwrap(), p);
        }
    }
}
