use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, RngCore};

use super::{Field, Poly};
use crate::error::{Error, Result};
use crate::numtheory::{factorize, is_prime};

/// Largest supported field order; keeps q − 1 factorable by trial division.
pub const MAX_FIELD_ORDER: u64 = 1 << 40;

/// Extension fields up to this order get log/antilog tables.
const TABLE_LIMIT: u64 = 1 << 20;

/// GF(p^m). Elements are integers in 0..p^m whose base-p digits are the
/// coefficients of a polynomial in the generator of the modulus, low degree first.
/// The prime subfield is therefore 0..p.
#[derive(Clone)]
pub struct FiniteField {
    inner: Arc<Inner>,
}

struct Inner {
    p: u64,
    m: u32,
    q: u64,
    modulus: Vec<u64>,
    generator: u64,
    log: Vec<u32>,
    exp: Vec<u64>,
}

impl FiniteField {
    /// The prime field of order `p`.
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p > MAX_FIELD_ORDER {
            return Err(Error::FieldTooLarge { p, m: 1 });
        }
        let mut f = Self {
            inner: Arc::new(Inner { p, m: 1, q: p, modulus: vec![0, 1], generator: 1, log: Vec::new(), exp: Vec::new() }),
        };
        let g = f.find_generator();
        Arc::get_mut(&mut f.inner).unwrap().generator = g;
        Ok(f)
    }

    pub fn p(&self) -> u64 {
        self.inner.p
    }

    /// Extension degree over the prime field.
    pub fn degree(&self) -> u32 {
        self.inner.m
    }

    /// Number of elements p^m.
    pub fn size(&self) -> u64 {
        self.inner.q
    }

    /// Monic defining polynomial over GF(p), low degree first.
    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    /// The deterministic generator of the multiplicative group.
    pub fn generator(&self) -> u64 {
        self.inner.generator
    }

    /// The embedded prime field.
    pub fn prime_subfield(&self) -> FiniteField {
        if self.inner.m == 1 {
            self.clone()
        } else {
            FiniteField::prime(self.inner.p).expect("characteristic is prime")
        }
    }

    fn digits(&self, mut a: u64) -> Vec<u64> {
        let p = self.inner.p;
        (0..self.inner.m)
            .map(|_| {
                let d = a % p;
                a /= p;
                d
            })
            .collect()
    }

    fn undigits(&self, d: &[u64]) -> u64 {
        d.iter().rev().fold(0, |acc, &x| acc * self.inner.p + x)
    }

    fn mul_slow(&self, a: u64, b: u64) -> u64 {
        let p = self.inner.p;
        if self.inner.m == 1 {
            return ((a as u128 * b as u128) % p as u128) as u64;
        }
        let m = self.inner.m as usize;
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * m - 1];
        for i in 0..m {
            if da[i] == 0 {
                continue;
            }
            for j in 0..m {
                prod[i + j] = ((prod[i + j] as u128 + da[i] as u128 * db[j] as u128) % p as u128) as u64;
            }
        }
        let modulus = &self.inner.modulus;
        for top in (m..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            for i in 0..m {
                let sub = (c as u128 * modulus[i] as u128 % p as u128) as u64;
                let idx = top - m + i;
                prod[idx] = (prod[idx] + p - sub) % p;
            }
            prod[top] = 0;
        }
        self.undigits(&prod[..m])
    }

    fn pow_slow(&self, a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    fn find_generator(&self) -> u64 {
        let q = self.inner.q;
        if q == 2 {
            return 1;
        }
        let factors = factorize(q - 1);
        (1..q)
            .find(|&g| factors.iter().all(|&(r, _)| self.pow_slow(g, (q - 1) / r) != 1))
            .expect("the multiplicative group of a finite field is cyclic")
    }

    /// Irreducibility by distinct-degree screening: f is irreducible iff
    /// gcd(f, x^{q^i} − x) = 1 for every i ≤ deg(f)/2.
    pub fn is_irreducible(&self, f: &Poly<u64>) -> Result<bool> {
        let d = match f.degree() {
            None | Some(0) => return Ok(false),
            Some(1) => return Ok(true),
            Some(d) => d,
        };
        let f = f.monic(self);
        let x = Poly::x(self);
        let mut h = x.clone();
        for _ in 1..=d / 2 {
            h = h.powmod(self.size(), &f, self);
            if f.gcd(&h.sub(&x, self), self).degree() != Some(0) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_squarefree(&self, f: &Poly<u64>) -> bool {
        match f.degree() {
            None => false,
            Some(0) => true,
            Some(_) => f.gcd(&f.derivative(self), self).degree() == Some(0),
        }
    }

    /// Distinct-degree factorization of a squarefree polynomial: pairs (d, g_d) where
    /// g_d is the product of all monic irreducible factors of degree d.
    pub fn distinct_degree_factorization(&self, f: &Poly<u64>) -> Result<Vec<(usize, Poly<u64>)>> {
        if !self.is_squarefree(f) {
            return Err(Error::Unsupported("distinct-degree factorization needs a squarefree input".into()));
        }
        let mut rest = f.monic(self);
        let x = Poly::x(self);
        let mut h = x.clone();
        let mut out = Vec::new();
        let mut d = 0;
        while rest.degree().unwrap_or(0) >= 2 * (d + 1) {
            d += 1;
            h = h.powmod(self.size(), &rest, self);
            let g = rest.gcd(&h.sub(&x, self), self);
            if g.degree() != Some(0) {
                rest = rest.div_exact(&g, self).expect("gcd divides");
                h = h.rem(&rest, self);
                out.push((d, g));
            }
        }
        if let Some(r) = rest.degree().filter(|&r| r > 0) {
            out.push((r, rest));
        }
        Ok(out)
    }

    /// Degrees of the irreducible factors of a squarefree polynomial, ascending.
    pub fn factor_degrees(&self, f: &Poly<u64>) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for (d, g) in self.distinct_degree_factorization(f)? {
            let count = g.degree().unwrap() / d;
            out.extend(std::iter::repeat_n(d, count));
        }
        Ok(out)
    }

    /// Splits a monic squarefree product of irreducibles of common degree `d`
    /// into its irreducible factors (Cantor–Zassenhaus).
    pub fn equal_degree_factors(&self, f: &Poly<u64>, d: usize, rng: &mut dyn RngCore) -> Vec<Poly<u64>> {
        let n = f.degree().unwrap_or(0);
        if n <= d {
            return vec![f.monic(self)];
        }
        let q = self.size();
        loop {
            let a = Poly::new(self, (0..n).map(|_| self.random(rng)).collect());
            if a.degree().unwrap_or(0) == 0 {
                continue;
            }
            let c = if q % 2 == 1 {
                // a^((q^d − 1)/2) = (a^(1 + q + ... + q^(d−1)))^((q − 1)/2)
                let mut frob = a.rem(f, self);
                let mut norm = frob.clone();
                for _ in 1..d {
                    frob = frob.powmod(q, f, self);
                    norm = norm.mul(&frob, self).rem(f, self);
                }
                norm.powmod((q - 1) / 2, f, self).sub(&Poly::one(self), self)
            } else {
                let mut term = a.rem(f, self);
                let mut trace = term.clone();
                for _ in 1..(self.degree() as usize * d) {
                    term = term.mul(&term, self).rem(f, self);
                    trace = trace.add(&term, self);
                }
                trace
            };
            let g = f.gcd(&c, self);
            let gd = g.degree().unwrap_or(0);
            if gd > 0 && gd < n {
                let h = f.div_exact(&g, self).unwrap();
                let mut out = self.equal_degree_factors(&g, d, rng);
                out.extend(self.equal_degree_factors(&h, d, rng));
                return out;
            }
        }
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.m == 1 {
            write!(f, "GF({})", self.inner.p)
        } else {
            write!(f, "GF({}^{})", self.inner.p, self.inner.m)
        }
    }
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} modulus {:?}", self.inner.modulus)
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus
    }
}

impl Eq for FiniteField {}

impl Field for FiniteField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        let p = self.inner.p;
        if self.inner.m == 1 {
            let s = a + b;
            return if s >= p { s - p } else { s };
        }
        let (mut a, mut b) = (*a, *b);
        let (mut out, mut place) = (0, 1);
        while a > 0 || b > 0 {
            out += (a % p + b % p) % p * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    fn neg(&self, a: &u64) -> u64 {
        let p = self.inner.p;
        if self.inner.m == 1 {
            return if *a == 0 { 0 } else { p - a };
        }
        let mut a = *a;
        let (mut out, mut place) = (0, 1);
        while a > 0 {
            out += (p - a % p) % p * place;
            a /= p;
            place *= p;
        }
        out
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        self.add(a, &self.neg(b))
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        if *a == 0 || *b == 0 {
            return 0;
        }
        let inner = &*self.inner;
        if inner.exp.is_empty() {
            return self.mul_slow(*a, *b);
        }
        let s = inner.log[*a as usize] as u64 + inner.log[*b as usize] as u64;
        inner.exp[(s % (inner.q - 1)) as usize]
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        let inner = &*self.inner;
        if !inner.exp.is_empty() {
            let l = inner.log[*a as usize] as u64;
            return Some(inner.exp[((inner.q - 1 - l) % (inner.q - 1)) as usize]);
        }
        Some(self.pow_slow(*a, inner.q - 2))
    }

    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.inner.p as i64) as u64
    }

    fn from_bigint(&self, v: &BigInt) -> u64 {
        let p = BigInt::from(self.inner.p);
        let r = ((v % &p) + &p) % &p;
        r.to_u64().expect("residue fits")
    }

    fn characteristic(&self) -> u64 {
        self.inner.p
    }

    fn order(&self) -> Option<u64> {
        Some(self.inner.q)
    }

    fn format(&self, a: &u64) -> String {
        a.to_string()
    }

    fn parse(&self, s: &str) -> Result<u64> {
        let s = s.trim();
        let v: BigInt = s.parse().map_err(|_| Error::Parse(format!("bad field element {s:?}")))?;
        if v < BigInt::zero() || self.inner.m == 1 {
            return Ok(self.from_bigint(&v));
        }
        v.to_u64()
            .filter(|&x| x < self.inner.q)
            .ok_or_else(|| Error::Parse(format!("{s} is not an element of {self}")))
    }

    fn random(&self, rng: &mut dyn RngCore) -> u64 {
        rng.random_range(0..self.inner.q)
    }

    fn pow(&self, a: &u64, e: u64) -> u64 {
        if *a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let inner = &*self.inner;
        if inner.exp.is_empty() {
            return self.pow_slow(*a, e);
        }
        let l = inner.log[*a as usize] as u128 * e as u128 % (inner.q - 1) as u128;
        inner.exp[l as usize]
    }
}

/// GF(p^m) with modulus the first monic irreducible of degree m over GF(p), in the
/// order of the base-p integer formed by its lower coefficients.
pub fn make_extension(p: u64, m: u32) -> Result<FiniteField> {
    let base = FiniteField::prime(p)?;
    if m <= 1 {
        return Ok(base);
    }
    let q = p
        .checked_pow(m)
        .filter(|&q| q <= MAX_FIELD_ORDER)
        .ok_or(Error::FieldTooLarge { p, m })?;
    let lower = p.pow(m);
    let modulus = (0..lower)
        .map(|c| {
            let mut coeffs = base.digits_of(c, m);
            coeffs.push(1);
            coeffs
        })
        .find(|coeffs| base.is_irreducible(&Poly::new(&base, coeffs.clone())).unwrap_or(false))
        .expect("irreducible polynomials exist in every degree");
    let mut f = FiniteField {
        inner: Arc::new(Inner { p, m, q, modulus, generator: 1, log: Vec::new(), exp: Vec::new() }),
    };
    let g = f.find_generator();
    let (mut log, mut exp) = (Vec::new(), Vec::new());
    if q <= TABLE_LIMIT {
        log = vec![0u32; q as usize];
        exp = Vec::with_capacity(q as usize - 1);
        let mut x = 1u64;
        for i in 0..q - 1 {
            exp.push(x);
            log[x as usize] = i as u32;
            x = f.mul_slow(x, g);
        }
    }
    let inner = Arc::get_mut(&mut f.inner).unwrap();
    inner.generator = g;
    inner.log = log;
    inner.exp = exp;
    Ok(f)
}

impl FiniteField {
    fn digits_of(&self, mut c: u64, m: u32) -> Vec<u64> {
        (0..m)
            .map(|_| {
                let d = c % self.inner.p;
                c /= self.inner.p;
                d
            })
            .collect()
    }
}

/// The n distinct n-th roots of unity w^0, w^1, ..., w^(n−1) with w = g^((q−1)/n).
pub fn nth_roots_of_unity(f: &FiniteField, n: u64) -> Result<Vec<u64>> {
    let p = f.characteristic();
    if n == 0 {
        return Err(Error::Parse("root-of-unity order must be positive".into()));
    }
    if n % p == 0 {
        return Err(Error::UnsupportedCharacteristic { p, n });
    }
    let q = f.size();
    if (q - 1) % n != 0 {
        return Err(Error::MissingRootsOfUnity { order: q, n });
    }
    let w = f.pow(&f.generator(), (q - 1) / n);
    let mut out = Vec::with_capacity(n as usize);
    let mut z = 1;
    for _ in 0..n {
        out.push(z);
        z = f.mul(&z, &w);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::axioms::check_field_axioms;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Brute-force irreducibility: no monic factor of degree ≤ deg/2 divides f.
    fn brute_irreducible(f: &FiniteField, poly: &Poly<u64>) -> bool {
        let n = poly.degree().unwrap();
        let p = f.size();
        for d in 1..=n / 2 {
            for c in 0..p.pow(d as u32) {
                let mut coeffs: Vec<u64> = (0..d).map(|i| c / p.pow(i as u32) % p).collect();
                coeffs.push(1);
                if poly.rem(&Poly::new(f, coeffs), f).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn extension_moduli_are_irreducible() {
        for (p, m) in [(7, 2), (2, 3), (3, 3), (2, 5), (5, 2)] {
            let f = make_extension(p, m).unwrap();
            assert_eq!(f.size(), p.pow(m));
            let base = FiniteField::prime(p).unwrap();
            let modulus = Poly::new(&base, f.modulus().to_vec());
            assert!(brute_irreducible(&base, &modulus));
        }
        assert_eq!(make_extension(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(make_extension(7, 1).unwrap().size(), 7);
        assert!(matches!(make_extension(6, 2), Err(Error::NotPrime(6))));
        assert!(make_extension(2, 41).is_err());
    }

    #[test]
    fn axioms_on_samples() {
        for spec in [(2, 1), (7, 1), (7, 2), (2, 3), (3, 4), (101, 1)] {
            check_field_axioms(&make_extension(spec.0, spec.1).unwrap(), 1000, 3);
        }
        // above the table limit the schoolbook path is used
        check_field_axioms(&make_extension(3, 13).unwrap(), 300, 4);
    }

    #[test]
    fn tables_agree_with_schoolbook() {
        let f = make_extension(3, 4).unwrap();
        for a in 0..81 {
            for b in 0..81 {
                assert_eq!(f.mul(&a, &b), f.mul_slow(a, b));
            }
        }
    }

    #[test]
    fn generator_is_primitive() {
        let f = FiniteField::prime(7).unwrap();
        assert_eq!(f.generator(), 3);
        let f = make_extension(2, 4).unwrap();
        let mut seen = std::collections::HashSet::new();
        let mut x = 1;
        for _ in 0..15 {
            seen.insert(x);
            x = f.mul(&x, &f.generator());
        }
        assert_eq!(seen.len(), 15);
    }

    #[test]
    fn roots_of_unity() {
        let f = FiniteField::prime(7).unwrap();
        let mut r = nth_roots_of_unity(&f, 3).unwrap();
        assert_eq!(r[0], 1);
        r.sort();
        // oracle: the cubes of all nonzero residues equal 1 exactly for these
        let cubes: Vec<u64> = (1..7).filter(|x| x * x * x % 7 == 1).collect();
        assert_eq!(r, cubes);
        let mut r6 = nth_roots_of_unity(&f, 6).unwrap();
        r6.sort();
        assert_eq!(r6, vec![1, 2, 3, 4, 5, 6]);
        assert_eq!(nth_roots_of_unity(&f, 1).unwrap(), vec![1]);
        assert!(matches!(nth_roots_of_unity(&f, 14), Err(Error::UnsupportedCharacteristic { .. })));
        assert!(matches!(nth_roots_of_unity(&f, 4), Err(Error::MissingRootsOfUnity { .. })));
    }

    #[test]
    fn roots_multiply_out_to_x_n_minus_one() {
        for (p, m, n) in [(7, 1, 6), (11, 1, 5), (2, 3, 7), (3, 2, 8), (7, 2, 16)] {
            let f = make_extension(p, m).unwrap();
            let roots = nth_roots_of_unity(&f, n).unwrap();
            let prod = roots.iter().fold(Poly::one(&f), |acc, z| {
                acc.mul(&Poly::new(&f, vec![f.neg(z), 1]), &f)
            });
            let mut target = vec![0; n as usize + 1];
            target[0] = f.neg(&1);
            target[n as usize] = 1;
            assert_eq!(prod, Poly::new(&f, target));
        }
    }

    #[test]
    fn irreducibility_examples() {
        let f3 = FiniteField::prime(3).unwrap();
        let f5 = FiniteField::prime(5).unwrap();
        let golden = |f: &FiniteField| Poly::from_ints(f, &[-1, -1, 1]);
        assert!(f3.is_irreducible(&golden(&f3)).unwrap());
        assert!(!f5.is_irreducible(&golden(&f5)).unwrap());
        assert!(f5.is_irreducible(&Poly::x(&f5)).unwrap());
    }

    #[test]
    fn irreducibility_matches_brute_force() {
        let f = FiniteField::prime(3).unwrap();
        for c in 0..3u64.pow(4) {
            let mut coeffs: Vec<u64> = (0..4).map(|i| c / 3u64.pow(i) % 3).collect();
            coeffs.push(1);
            let poly = Poly::new(&f, coeffs);
            assert_eq!(f.is_irreducible(&poly).unwrap(), brute_irreducible(&f, &poly), "{poly:?}");
        }
    }

    #[test]
    fn factorization_pieces_multiply_back() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (p, m, n) in [(5u64, 1u32, 12u64), (7, 1, 12), (2, 1, 15), (2, 2, 21), (3, 2, 20)] {
            let f = make_extension(p, m).unwrap();
            let mut poly = Poly::one(&f);
            let target = Poly::new(&f, {
                let mut c = vec![0; n as usize + 1];
                c[0] = f.neg(&1);
                c[n as usize] = 1;
                c
            });
            assert!(f.is_squarefree(&target));
            for (d, g) in f.distinct_degree_factorization(&target).unwrap() {
                for factor in f.equal_degree_factors(&g, d, &mut rng) {
                    assert_eq!(factor.degree(), Some(d));
                    assert!(f.is_irreducible(&factor).unwrap());
                    poly = poly.mul(&factor, &f);
                }
            }
            assert_eq!(poly, target);
        }
    }
}
