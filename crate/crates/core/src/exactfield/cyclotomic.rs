use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, RngCore};

use super::{Field, Poly, Rationals};
use crate::error::Result;
use crate::numtheory::totient;

/// The N-th cyclotomic polynomial Φ_N over ℚ.
pub fn cyclotomic_polynomial(n: u64) -> Poly<BigRational> {
    let q = Rationals;
    let mut coeffs = vec![0i64; n as usize + 1];
    coeffs[0] = -1;
    coeffs[n as usize] = 1;
    let mut f = Poly::from_ints(&q, &coeffs);
    for d in (1..n).filter(|d| n % d == 0) {
        f = f.div_exact(&cyclotomic_polynomial(d), &q).expect("Φ_d divides x^n − 1");
    }
    f
}

/// ℚ(ω) for a primitive N-th root of unity ω, elements as polynomials in ω of
/// degree below φ(N).
#[derive(Clone, Debug, PartialEq)]
pub struct CyclotomicField {
    order: u64,
    modulus: Arc<Poly<BigRational>>,
}

impl CyclotomicField {
    pub fn new(order: u64) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        Self { order, modulus: Arc::new(cyclotomic_polynomial(order)) }
    }

    /// N, the order of the distinguished root ω.
    pub fn root_order(&self) -> u64 {
        self.order
    }

    /// Degree φ(N) over ℚ.
    pub fn degree(&self) -> u64 {
        totient(self.order)
    }

    /// ω^j for any integer j.
    pub fn root_power(&self, j: i64) -> Poly<BigRational> {
        let e = j.rem_euclid(self.order as i64) as usize;
        Poly::monomial(&Rationals, BigRational::from_integer(1.into()), e).rem(&self.modulus, &Rationals)
    }

    /// The automorphism ω ↦ ω^t, for t coprime to N.
    pub fn galois(&self, a: &Poly<BigRational>, t: u64) -> Poly<BigRational> {
        let q = Rationals;
        let mut acc = vec![BigRational::zero(); self.order as usize];
        for (i, c) in a.coeffs().iter().enumerate() {
            let e = (i as u64 * t % self.order) as usize;
            acc[e] += c;
        }
        Poly::new(&q, acc).rem(&self.modulus, &q)
    }

    fn reduce(&self, a: Poly<BigRational>) -> Poly<BigRational> {
        a.rem(&self.modulus, &Rationals)
    }
}

impl Field for CyclotomicField {
    type Elem = Poly<BigRational>;

    fn zero(&self) -> Self::Elem {
        Poly::zero()
    }

    fn one(&self) -> Self::Elem {
        Poly::one(&Rationals)
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.add(b, &Rationals)
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.sub(b, &Rationals)
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.neg(&Rationals)
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.reduce(a.mul(b, &Rationals))
    }

    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if a.is_zero() {
            return None;
        }
        let (g, s, _) = a.xgcd(&self.modulus, &Rationals);
        debug_assert_eq!(g.degree(), Some(0));
        Some(self.reduce(s))
    }

    fn from_i64(&self, v: i64) -> Self::Elem {
        Poly::constant(&Rationals, Rationals.from_i64(v))
    }

    fn from_bigint(&self, v: &BigInt) -> Self::Elem {
        Poly::constant(&Rationals, Rationals.from_bigint(v))
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn order(&self) -> Option<u64> {
        None
    }

    fn format(&self, a: &Self::Elem) -> String {
        a.format_var(&Rationals, "w")
    }

    fn parse(&self, s: &str) -> Result<Self::Elem> {
        Ok(self.reduce(Poly::parse(&Rationals, s)?))
    }

    fn random(&self, rng: &mut dyn RngCore) -> Self::Elem {
        let coeffs = (0..self.degree()).map(|_| Rationals.from_i64(rng.random_range(-4..=4))).collect();
        Poly::new(&Rationals, coeffs)
    }
}
