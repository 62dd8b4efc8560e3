//! The degree-zero subring QH⁰: the tridiagonal action of a distinguished element
//! of QH⁰(Gr(2,n)), its characteristic polynomial, Frobenius orbits, field tests
//! and the (k, n, characteristic) verdict.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::diagram::{graded_basis, GrContext, GradedBasisElement, YoungDiagram};
use crate::error::{Error, Result};
use crate::exactfield::{
    is_irreducible_in, is_irreducible_over_q, min_poly, Field, FieldCtx, FiniteField, Poly, Rationals, SquareMatrix,
};
use crate::numtheory::{binomial, gcd, is_prime, multiplicative_order, primes_up_to, split_prime_power, totient};
use crate::qh::{Monomial, QhElement, SchubertRing};

/// Largest number of candidate elements the exhaustive zero-divisor search will visit.
pub const BRUTE_FORCE_LIMIT: u64 = 1_000_000;

/// Primes up to this bound are tried by [`witness_prime`].
pub const WITNESS_SEARCH_BOUND: u64 = 10_000;

const MIN_POLY_ATTEMPTS: usize = 24;

/// Basis q^{−|D|/n} σ_D of QH⁰, over diagrams with n | |D|.
pub fn qh0_basis(ctx: &GrContext) -> Vec<GradedBasisElement> {
    graded_basis(ctx, 0)
}

/// Which normalization of the distinguished element of QH⁰(Gr(2,n)) to use.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum AVariant {
    /// A = σ_∅ − q^{−1} x_2 ∗ v_1.
    #[default]
    Primary,
    /// q^{−1} x_2 ∗ v_1, whose eigenvalues are the sums s + s^{−1}.
    Shifted,
}

/// The distinguished element of QH⁰(Gr(2,n)), with v_1 = σ_{(n−3,1)} (absent for n = 3).
pub fn degree_zero_element<F: Field>(n: u32, field: &F, variant: AVariant) -> Result<QhElement<F>> {
    if n < 3 {
        return Err(Error::InvalidContext { k: 2, n });
    }
    let ctx = GrContext::new(2, n)?;
    let shifted = if n == 3 {
        QhElement::zero(&ctx, field)
    } else {
        QhElement::x(&ctx, field, 2)?.product(&QhElement::v(&ctx, field, n - 3, 1)?)?.q_shift(-1)
    };
    match variant {
        AVariant::Primary => QhElement::unit(&ctx, field).sub(&shifted),
        AVariant::Shifted => Ok(shifted),
    }
}

/// Matrix of b ↦ a ∗ b on the degree-`d` piece, columns in canonical basis order.
pub fn mult_matrix<F: Field>(a: &QhElement<F>, d: i64) -> Result<SquareMatrix<F::Elem>> {
    if !a.is_homogeneous(0) {
        return Err(Error::NotHomogeneous);
    }
    let ctx = a.ctx();
    let f = a.field();
    let basis = graded_basis(ctx, d);
    let index: HashMap<Monomial, usize> = basis
        .iter()
        .enumerate()
        .map(|(i, b)| (Monomial::new(b.q_power, b.diagram.clone()), i))
        .collect();
    let mut m = SquareMatrix::zeros(f, basis.len());
    for (j, b) in basis.iter().enumerate() {
        let e = QhElement::sigma(ctx, f, &b.diagram)?.q_shift(b.q_power);
        for (mono, c) in a.product(&e)?.terms() {
            m.set(index[mono], j, c.clone());
        }
    }
    Ok(m)
}

/// Size of the tridiagonal matrix: ℓ for n = 2ℓ+1, ℓ+1 for n = 2ℓ+2.
pub fn laurent_shift(n: u32) -> u32 {
    if n % 2 == 1 {
        (n - 1) / 2
    } else {
        n / 2
    }
}

fn check_n(n: u32) -> Result<()> {
    if n < 3 {
        return Err(Error::InvalidContext { k: 2, n });
    }
    Ok(())
}

/// The expected action of the primary element: diagonal (1, 0, …, 0) with −1 on both
/// off-diagonals, and a +1 in the last diagonal slot when n is even.
pub fn closed_form_matrix(n: u32) -> Result<SquareMatrix<BigRational>> {
    check_n(n)?;
    let s = laurent_shift(n) as usize;
    let int = |v: i64| BigRational::from_integer(v.into());
    Ok(SquareMatrix::from_fn(s, |i, j| {
        if i == j {
            int(i64::from(i == 0 || (n % 2 == 0 && i == s - 1)))
        } else if i.abs_diff(j) == 1 {
            int(-1)
        } else {
            int(0)
        }
    }))
}

/// R_ℓ from R_ℓ = (x²+1) R_{ℓ−1} − x² R_{ℓ−2}, R_0 = 1, R_1 = 1 + x + x².
pub fn r_polynomial(l: u32) -> Poly<BigRational> {
    let q = Rationals;
    let mut prev = Poly::one(&q);
    let mut cur = Poly::from_ints(&q, &[1, 1, 1]);
    if l == 0 {
        return prev;
    }
    let x2p1 = Poly::from_ints(&q, &[1, 0, 1]);
    let x2 = Poly::from_ints(&q, &[0, 0, 1]);
    for _ in 1..l {
        let next = x2p1.mul(&cur, &q).sub(&x2.mul(&prev, &q), &q);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Right-hand side of the Laurent identity: R_ℓ for n odd, R_{ℓ+1} + x R_ℓ for n even.
pub fn laurent_target(n: u32) -> Result<Poly<BigRational>> {
    check_n(n)?;
    let q = Rationals;
    if n % 2 == 1 {
        Ok(r_polynomial((n - 1) / 2))
    } else {
        let l = (n - 2) / 2;
        Ok(r_polynomial(l + 1).add(&r_polynomial(l).shift_in(1, &q), &q))
    }
}

/// x^L π(−x − x^{−1}) as an honest polynomial; errors if deg π > L.
pub fn laurent_substitute(pi: &Poly<BigRational>, l: u32) -> Result<Poly<BigRational>> {
    let q = Rationals;
    let deg = pi.degree().unwrap_or(0);
    if deg > l as usize {
        return Err(Error::DegreeLimit { degree: deg, limit: l as usize });
    }
    let x2p1 = Poly::from_ints(&q, &[1, 0, 1]);
    let mut acc = Poly::zero();
    let mut power = Poly::one(&q);
    for (i, c) in pi.coeffs().iter().enumerate() {
        let signed = if i % 2 == 0 { c.clone() } else { -c.clone() };
        acc = acc.add(&power.scale(&signed, &q).shift_in(l as usize - i, &q), &q);
        power = power.mul(&x2p1, &q);
    }
    Ok(acc)
}

/// The π with x^L π(−x − x^{−1}) = laurent_target(n), recovered by writing the
/// palindromic target in the basis x^j + x^{−j} = P_j(x + x^{−1}).
pub fn closed_form_charpoly(n: u32) -> Result<Poly<BigRational>> {
    let q = Rationals;
    let target = laurent_target(n)?;
    let l = laurent_shift(n) as usize;
    let t = |i: usize| target.coeff(i, &q);
    debug_assert!((0..=l).all(|j| t(l + j) == t(l - j)), "target is palindromic");
    // P_0 = 2, P_1 = u, P_j = u P_{j−1} − P_{j−2}
    let u = Poly::x(&q);
    let mut pj: Vec<Poly<BigRational>> = vec![Poly::from_ints(&q, &[2]), u.clone()];
    for j in 2..=l {
        let next = u.mul(&pj[j - 1], &q).sub(&pj[j - 2], &q);
        pj.push(next);
    }
    let mut in_u = Poly::constant(&q, t(l));
    for (j, p) in pj.iter().enumerate().take(l + 1).skip(1) {
        in_u = in_u.add(&p.scale(&t(l + j), &q), &q);
    }
    // π(y) = Q(−y)
    let coeffs = in_u
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| if i % 2 == 0 { c.clone() } else { -c.clone() })
        .collect();
    Ok(Poly::new(&q, coeffs))
}

/// π reduced into a finite field.
pub fn charpoly_in(n: u32, f: &FiniteField) -> Result<Poly<u64>> {
    let pi = closed_form_charpoly(n)?;
    pi.map_coeffs(f, |c| f.from_rational(c))
        .ok_or_else(|| Error::Unsupported("non-integral characteristic polynomial".into()))
}

/// Degrees of the irreducible factors of π over GF(p), ascending; needs gcd(n, p) = 1.
pub fn charpoly_factor_degrees(n: u32, p: u64) -> Result<Vec<usize>> {
    if gcd(n as u64, p) != 1 {
        return Err(Error::NotCoprime { a: n as u64, b: p });
    }
    let f = FiniteField::prime(p)?;
    f.factor_degrees(&charpoly_in(n, &f)?)
}

/// Whether p mod n and −1 generate (ℤ/nℤ)^×, by closure.
pub fn generates_units(p: u64, n: u64) -> Result<bool> {
    if n == 0 || gcd(p, n) != 1 {
        return Err(Error::NotCoprime { a: p, b: n });
    }
    if n <= 2 {
        return Ok(true);
    }
    let gens = [p % n, n - 1];
    let mut seen = vec![false; n as usize];
    seen[1] = true;
    let mut stack = vec![1u64];
    let mut count = 1u64;
    while let Some(a) = stack.pop() {
        for g in gens {
            let b = a * g % n;
            if !seen[b as usize] {
                seen[b as usize] = true;
                count += 1;
                stack.push(b);
            }
        }
    }
    Ok(count == totient(n))
}

/// Orbits of {a, −a} ↦ {pa, −pa} on the pairs of nonzero residues mod n.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitDecomposition {
    pub n: u64,
    pub p: u64,
    /// Each orbit lists its pairs (a, n − a) with a ≤ n − a, in the order p visits them.
    pub orbits: Vec<Vec<(u64, u64)>>,
}

impl OrbitDecomposition {
    pub fn count(&self) -> usize {
        self.orbits.len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(Vec::len).collect()
    }
}

/// Orbits sorted by (size, smallest representative).
pub fn orbit_decomposition(n: u64, p: u64) -> Result<OrbitDecomposition> {
    if n < 2 || gcd(n, p) != 1 {
        return Err(Error::NotCoprime { a: n, b: p });
    }
    let rep = |a: u64| a.min(n - a);
    let mut seen = vec![false; n as usize / 2 + 1];
    let mut orbits = Vec::new();
    for start in 1..=n / 2 {
        if seen[start as usize] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut a = start;
        while !seen[a as usize] {
            seen[a as usize] = true;
            orbit.push((a, n - a));
            a = rep(a * (p % n) % n);
        }
        orbits.push(orbit);
    }
    orbits.sort_by_key(|o| (o.len(), o.iter().map(|pair| pair.0).min()));
    Ok(OrbitDecomposition { n, p, orbits })
}

/// QH⁰ as a finite-dimensional commutative algebra with integer structure constants.
#[derive(Clone, Debug)]
pub struct Qh0Algebra {
    ctx: GrContext,
    basis: Vec<GradedBasisElement>,
    /// structure[i][j][l]: coefficient of b_l in b_i ∗ b_j.
    structure: Vec<Vec<Vec<i128>>>,
}

impl Qh0Algebra {
    pub fn new(ctx: &GrContext) -> Result<Self> {
        let basis = qh0_basis(ctx);
        let index: HashMap<&YoungDiagram, usize> = basis.iter().enumerate().map(|(i, b)| (&b.diagram, i)).collect();
        let ring = SchubertRing::shared(*ctx);
        let d = basis.len();
        let mut structure = vec![vec![Vec::new(); d]; d];
        for i in 0..d {
            for j in i..d {
                let mut coords = vec![0i128; d];
                for (m, c) in ring.product(&basis[i].diagram, &basis[j].diagram)?.iter() {
                    let l = index[&m.diagram];
                    debug_assert_eq!(m.q + basis[i].q_power + basis[j].q_power, basis[l].q_power);
                    coords[l] += c;
                }
                structure[j][i] = coords.clone();
                structure[i][j] = coords;
            }
        }
        Ok(Self { ctx: *ctx, basis, structure })
    }

    pub fn ctx(&self) -> &GrContext {
        &self.ctx
    }

    pub fn basis(&self) -> &[GradedBasisElement] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of b_i ∗ b_j.
    pub fn structure_constants(&self, i: usize, j: usize) -> &[i128] {
        &self.structure[i][j]
    }

    /// Matrices of multiplication by each basis element.
    pub fn basis_matrices<F: Field>(&self, f: &F) -> Vec<SquareMatrix<F::Elem>> {
        let d = self.dim();
        (0..d)
            .map(|i| SquareMatrix::from_fn(d, |l, j| f.from_bigint(&BigInt::from(self.structure[i][j][l]))))
            .collect()
    }

    /// Matrix of b ↦ a ∗ b for a given in coordinates.
    pub fn multiplication_matrix<F: Field>(&self, f: &F, a: &[F::Elem]) -> SquareMatrix<F::Elem> {
        let d = self.dim();
        let mut m = SquareMatrix::zeros(f, d);
        for (c, li) in a.iter().zip(self.basis_matrices(f)) {
            if !f.is_zero(c) {
                m = m.add(&li.scale(c, f), f);
            }
        }
        m
    }

    pub fn to_element<F: Field>(&self, f: &F, a: &[F::Elem]) -> Result<QhElement<F>> {
        QhElement::from_terms(
            &self.ctx,
            f,
            self.basis.iter().zip(a).map(|(b, c)| (Monomial::new(b.q_power, b.diagram.clone()), c.clone())),
        )
    }
}

/// Outcome of the exhaustive search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ZeroDivisorSearch {
    /// Coordinates of a nonzero element with singular multiplication matrix.
    Found { witness: Vec<u64> },
    /// Every nonzero element was checked and is invertible.
    Exhausted { checked: u64 },
}

fn is_singular(f: &FiniteField, m: &mut [u64], d: usize) -> bool {
    for col in 0..d {
        let Some(piv) = (col..d).find(|&r| m[r * d + col] != 0) else {
            return true;
        };
        if piv != col {
            for c in 0..d {
                m.swap(piv * d + c, col * d + c);
            }
        }
        let inv = f.inv(&m[col * d + col]).expect("pivot is nonzero");
        for r in col + 1..d {
            let factor = f.mul(&m[r * d + col], &inv);
            if factor == 0 {
                continue;
            }
            for c in col..d {
                let t = f.mul(&factor, &m[col * d + c]);
                m[r * d + c] = f.sub(&m[r * d + c], &t);
            }
        }
    }
    false
}

/// Visits every nonzero element of QH⁰ over a finite field and tests its
/// multiplication matrix for singularity. Stops at the first zero divisor.
pub fn find_zero_divisor(alg: &Qh0Algebra, f: &FiniteField, limit: u64) -> Result<ZeroDivisorSearch> {
    let q = f.size();
    let d = alg.dim();
    let total = (q as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    if total > limit as u128 {
        return Err(Error::Unsupported(format!("{q}^{d} elements exceed the search limit {limit}")));
    }
    let mats: Vec<Vec<u64>> = alg.basis_matrices(f).into_iter().map(|m| m.entries().to_vec()).collect();
    let mut digits = vec![0u64; d];
    let mut cur = vec![0u64; d * d];
    let mut scratch = vec![0u64; d * d];
    let mut checked = 0u64;
    loop {
        let mut i = 0;
        loop {
            if i == d {
                return Ok(ZeroDivisorSearch::Exhausted { checked });
            }
            let old = digits[i];
            let new = if old + 1 == q { 0 } else { old + 1 };
            digits[i] = new;
            let delta = f.sub(&new, &old);
            for (c, m) in cur.iter_mut().zip(&mats[i]) {
                if *m != 0 {
                    *c = f.add(c, &f.mul(&delta, m));
                }
            }
            if new != 0 {
                break;
            }
            i += 1;
        }
        checked += 1;
        scratch.copy_from_slice(&cur);
        if is_singular(f, &mut scratch, d) {
            return Ok(ZeroDivisorSearch::Found { witness: digits });
        }
    }
}

/// Certificate from the minimal polynomial μ of a random element a: if μ = gh
/// factors then g(a) h(a) = 0 with both factors nonzero; if μ is irreducible of
/// degree dim QH⁰ then QH⁰ = 𝐅[a] is a field. `None` when every sample was inconclusive.
fn min_poly_certificate<F: Field>(
    alg: &Qh0Algebra,
    f: &F,
    irreducible: impl Fn(&Poly<F::Elem>) -> Result<bool>,
    seed: u64,
) -> Result<Option<(bool, String)>> {
    let mats = alg.basis_matrices(f);
    let d = alg.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MIN_POLY_ATTEMPTS {
        let coords: Vec<F::Elem> = (0..d).map(|_| f.random(&mut rng)).collect();
        if coords.iter().all(|c| f.is_zero(c)) {
            continue;
        }
        let mut m = SquareMatrix::zeros(f, d);
        for (c, li) in coords.iter().zip(&mats) {
            m = m.add(&li.scale(c, f), f);
        }
        let mu = min_poly(f, &m);
        let text = mu.format_var(f, "y");
        match irreducible(&mu) {
            Ok(false) => return Ok(Some((false, text))),
            Ok(true) if mu.degree() == Some(d) => return Ok(Some((true, text))),
            Ok(true) => {}
            Err(Error::DegreeLimit { .. }) => return Ok(None),
            Err(e) => return Err(e),
        }
    }
    Ok(None)
}

/// How an [`is_graded_field`] answer was reached.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "method", rename_all = "camelCase")]
pub enum Evidence {
    /// k = 1 or k = n: QH⁰ is the ground field.
    Trivial,
    /// Exhaustive zero-divisor search.
    #[serde(rename_all = "camelCase")]
    BruteForce { elements_checked: u64, witness: Option<Vec<u64>> },
    /// Irreducibility of π for Gr(2, n odd), with the unit-group criterion alongside.
    #[serde(rename_all = "camelCase")]
    Irreducibility { polynomial: String, units_criterion: bool },
    /// Dimension count: a field QH⁰ would have n·dim = C(n,k) and dim dividing [𝐅(ζ):𝐅].
    #[serde(rename_all = "camelCase")]
    DimensionCount { dim: usize, binomial: u128, extension_degree: u64 },
    /// Minimal polynomial of a random element.
    #[serde(rename_all = "camelCase")]
    MinimalPolynomial { polynomial: String },
    /// No computation was decisive; the answer is the classification rule.
    RuleOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FieldTest {
    pub is_field: bool,
    pub evidence: Evidence,
}

/// The classification rule: k = 1 or k = n; or k = 2 with n prime, n ∤ |F| and,
/// for finite F, {|F|, −1} generating (ℤ/nℤ)^×. Applied after Gr(k,n) ≅ Gr(n−k,n).
pub fn rule_is_field(ctx: &GrContext, field: &FieldCtx) -> bool {
    let c = ctx.normalized();
    let (k, n) = (c.k() as u64, c.n() as u64);
    if k == 1 || k == n {
        return true;
    }
    if k != 2 || !is_prime(n) {
        return false;
    }
    match field.order() {
        None => true,
        Some(q) => gcd(q, n) == 1 && generates_units(q % n, n).unwrap_or(false),
    }
}

/// Decides whether QH⁰(Gr(k,n); 𝐅) is a field, preferring the most direct evidence available.
pub fn is_graded_field(ctx: &GrContext, field: &FieldCtx) -> Result<FieldTest> {
    let c = ctx.normalized();
    let (k, n) = (c.k(), c.n());
    if k == 1 || k == n {
        return Ok(FieldTest { is_field: true, evidence: Evidence::Trivial });
    }
    let alg = Qh0Algebra::new(&c)?;
    if let FieldCtx::Finite(ff) = field {
        if let Ok(search) = find_zero_divisor(&alg, ff, BRUTE_FORCE_LIMIT) {
            return Ok(match search {
                ZeroDivisorSearch::Found { witness } => FieldTest {
                    is_field: false,
                    evidence: Evidence::BruteForce { elements_checked: 0, witness: Some(witness) },
                },
                ZeroDivisorSearch::Exhausted { checked } => FieldTest {
                    is_field: true,
                    evidence: Evidence::BruteForce { elements_checked: checked, witness: None },
                },
            });
        }
    }
    if k == 2 && n % 2 == 1 {
        let pi = closed_form_charpoly(n)?;
        match is_irreducible_in(field, &pi) {
            Ok(irr) => {
                let units = rule_is_field(&c, field);
                let text = pi.format_var(&Rationals, "y");
                return Ok(FieldTest { is_field: irr, evidence: Evidence::Irreducibility { polynomial: text, units_criterion: units } });
            }
            Err(Error::DegreeLimit { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    let (dim, binom) = (alg.dim(), binomial(n as u64, k as u64));
    let ext = root_extension_degree(n as u64, field);
    if dim as u128 * n as u128 != binom || ext % dim as u64 != 0 {
        return Ok(FieldTest {
            is_field: false,
            evidence: Evidence::DimensionCount { dim, binomial: binom, extension_degree: ext },
        });
    }
    let seed = 0x5eed ^ ((k as u64) << 32 | n as u64);
    let cert = match field {
        FieldCtx::Rationals(q) => min_poly_certificate(&alg, q, is_irreducible_over_q, seed)?,
        FieldCtx::Finite(ff) => min_poly_certificate(&alg, ff, |p| ff.is_irreducible(p), seed)?,
    };
    Ok(match cert {
        Some((is_field, polynomial)) => FieldTest { is_field, evidence: Evidence::MinimalPolynomial { polynomial } },
        None => FieldTest { is_field: rule_is_field(&c, field), evidence: Evidence::RuleOnly },
    })
}

/// [𝐅(ζ):𝐅] for ζ a primitive root of unity of order n (of order m in characteristic p, n = p^d·m).
pub fn root_extension_degree(n: u64, field: &FieldCtx) -> u64 {
    match field.order() {
        None => totient(n),
        Some(q) => {
            let (_, m) = split_prime_power(n, field.characteristic());
            if m == 1 {
                1
            } else {
                multiplicative_order(q % m, m).expect("q is coprime to m")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Diameter {
    FiniteWithBound { bound: u32 },
    Infinite,
    Unknown,
}

/// The (k, n, characteristic) verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassifierVerdict {
    pub k: u32,
    pub n: u32,
    #[serde(rename = "char")]
    pub characteristic: u64,
    pub is_graded_field: bool,
    pub diameter: Diameter,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub orbit_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub field_dims: Option<Vec<usize>>,
    pub reasons: Vec<String>,
}

/// Classifies Gr(k,n) over the prime field of characteristic `ch` (0 for ℚ).
pub fn classify(k: u32, n: u32, ch: u64) -> Result<ClassifierVerdict> {
    let ctx = GrContext::new(k, n)?;
    if ch != 0 && !is_prime(ch) {
        return Err(Error::NotPrime(ch));
    }
    let field = FieldCtx::from_characteristic(ch)?;
    let c = ctx.normalized();
    let (kk, nn) = (c.k(), c.n());
    let mut reasons = Vec::new();
    if kk != k {
        reasons.push(format!("Gr({k},{n}) is isomorphic to Gr({kk},{nn})"));
    }
    let is_field = rule_is_field(&ctx, &field);
    if kk == nn {
        reasons.push("Gr(n,n) is a point, so QH⁰ is the ground field".into());
    } else if kk == 1 {
        reasons.push("k = 1: QH⁰ is the ground field".into());
    } else if kk == 2 {
        if !is_prime(nn as u64) {
            reasons.push(format!("k = 2 and n = {nn} is not prime: π is reducible, so QH⁰ has zero divisors"));
        } else if ch == nn as u64 {
            reasons.push(format!("k = 2 and n = p = {nn}: π = (y + 2)^ℓ in characteristic n"));
        } else if ch == 0 {
            reasons.push(format!("k = 2, n = {nn} prime, characteristic 0: π is irreducible over ℚ"));
        } else if is_field {
            reasons.push(format!("k = 2, n = {nn} prime, and {{{ch}, -1}} generates (Z/{nn}Z)^×"));
        } else {
            reasons.push(format!("k = 2, n = {nn} prime, but {{{ch}, -1}} does not generate (Z/{nn}Z)^×"));
        }
    } else {
        reasons.push(format!(
            "k = {kk} ≥ 3 with n ≥ 2k: dim QH⁰ cannot divide [𝐅(ζ):𝐅]·k!, so QH⁰ is not a field"
        ));
    }
    let diameter = if is_field {
        let bound = 2 * k * (n - k) / n;
        reasons.push(format!(
            "every nonzero homogeneous element is invertible: diameter ≤ ⌊2·{}/{n}⌋ = {bound}",
            k * (n - k)
        ));
        Diameter::FiniteWithBound { bound }
    } else if ch == 0 && k % 2 == 0 && n % 2 == 0 && k < n {
        reasons.push(format!("Gr({k},{n}) = Gr(2·{},2·{}) over characteristic 0 has infinite diameter", k / 2, n / 2));
        Diameter::Infinite
    } else {
        reasons.push("no finiteness or infiniteness criterion applies".into());
        Diameter::Unknown
    };
    let (orbit_count, field_dims) = if kk == 2 && ch != 0 && gcd(nn as u64, ch) == 1 {
        let orbits = orbit_decomposition(nn as u64, ch)?;
        reasons.push(format!("QH⁰ splits into {} field(s), one per Frobenius orbit", orbits.count()));
        (Some(orbits.count()), Some(orbits.sizes()))
    } else {
        (None, None)
    };
    Ok(ClassifierVerdict { k, n, characteristic: ch, is_graded_field: is_field, diameter, orbit_count, field_dims, reasons })
}

/// Smallest prime p ≠ n for which {p, −1} generates (ℤ/nℤ)^×.
pub fn witness_prime(n: u64) -> Result<u64> {
    if !is_prime(n) {
        return Err(Error::NotPrime(n));
    }
    for p in primes_up_to(WITNESS_SEARCH_BOUND) {
        if p != n && generates_units(p, n)? {
            return Ok(p);
        }
    }
    Err(Error::SearchExhausted(WITNESS_SEARCH_BOUND))
}

/// Whether `f` is the zero polynomial over ℚ; used by identity checks.
pub fn is_zero_poly(f: &Poly<BigRational>) -> bool {
    f.coeffs().iter().all(Zero::is_zero)
}

/// x^n−1 over x−1 as a polynomial, 1 + x + … + x^{n−1}.
pub fn repunit(n: u32) -> Poly<BigRational> {
    Poly::new(&Rationals, vec![BigRational::one(); n as usize])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::char_poly;

    fn rat_matrix(rows: &[&[i64]]) -> SquareMatrix<BigRational> {
        let s = rows.len();
        SquareMatrix::from_fn(s, |i, j| BigRational::from_integer(rows[i][j].into()))
    }

    #[test]
    fn basis_examples() {
        let b = qh0_basis(&GrContext::new(2, 5).unwrap());
        let text: Vec<_> = b.iter().map(|e| (e.diagram.to_string(), e.q_power)).collect();
        assert_eq!(text, vec![("-".to_string(), 0), ("3,2".to_string(), -1)]);
        assert_eq!(qh0_basis(&GrContext::new(1, 9).unwrap()).len(), 1);
        assert_eq!(qh0_basis(&GrContext::new(2, 13).unwrap()).len(), 6);
    }

    #[test]
    fn matrix_for_thirteen_and_twelve() {
        let q = Rationals;
        let a = degree_zero_element(13, &q, AVariant::Primary).unwrap();
        let m = mult_matrix(&a, 11).unwrap();
        let expected = rat_matrix(&[
            &[1, -1, 0, 0, 0, 0],
            &[-1, 0, -1, 0, 0, 0],
            &[0, -1, 0, -1, 0, 0],
            &[0, 0, -1, 0, -1, 0],
            &[0, 0, 0, -1, 0, -1],
            &[0, 0, 0, 0, -1, 0],
        ]);
        assert_eq!(m, expected);
        let a = degree_zero_element(12, &q, AVariant::Primary).unwrap();
        let expected = rat_matrix(&[
            &[1, -1, 0, 0, 0, 0],
            &[-1, 0, -1, 0, 0, 0],
            &[0, -1, 0, -1, 0, 0],
            &[0, 0, -1, 0, -1, 0],
            &[0, 0, 0, -1, 0, -1],
            &[0, 0, 0, 0, -1, 1],
        ]);
        assert_eq!(mult_matrix(&a, 10).unwrap(), expected);
        let unit = QhElement::unit(&GrContext::new(2, 7).unwrap(), &q);
        assert_eq!(mult_matrix(&unit, 5).unwrap(), SquareMatrix::identity(&q, 3));
        let x1 = QhElement::x(&GrContext::new(2, 7).unwrap(), &q, 1).unwrap();
        assert_eq!(mult_matrix(&x1, 5), Err(Error::NotHomogeneous));
    }

    #[test]
    fn ring_matrix_matches_closed_form() {
        let q = Rationals;
        for n in 3..=16 {
            let a = degree_zero_element(n, &q, AVariant::Primary).unwrap();
            assert_eq!(mult_matrix(&a, n as i64 - 2).unwrap(), closed_form_matrix(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn charpoly_examples() {
        let q = Rationals;
        assert_eq!(closed_form_charpoly(3).unwrap(), Poly::from_ints(&q, &[1, -1]));
        assert_eq!(closed_form_charpoly(5).unwrap(), Poly::from_ints(&q, &[-1, -1, 1]));
        assert_eq!(closed_form_charpoly(4).unwrap(), Poly::from_ints(&q, &[0, -2, 1]));
        assert!(closed_form_charpoly(2).is_err());
        for l in 0..=12 {
            assert_eq!(r_polynomial(l), repunit(2 * l + 1));
        }
    }

    #[test]
    fn laurent_identity_small() {
        let q = Rationals;
        for n in 3..=20u32 {
            let pi = char_poly(&q, &closed_form_matrix(n).unwrap());
            assert_eq!(pi, closed_form_charpoly(n).unwrap());
            let lhs = laurent_substitute(&pi, laurent_shift(n)).unwrap();
            let rhs = if n % 2 == 1 {
                repunit(n)
            } else {
                repunit(n).mul(&Poly::from_ints(&q, &[1, 1]), &q)
            };
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }

    #[test]
    fn unit_group_examples() {
        assert!(generates_units(2, 3).unwrap());
        assert!(generates_units(3, 7).unwrap());
        // the whole group {1,3,7,9}; the three orbits for n = 10 come from non-unit residues
        assert!(generates_units(7, 10).unwrap());
        assert!(generates_units(2, 13).unwrap());
        assert!(generates_units(2, 7).unwrap());
        assert!(!generates_units(2, 17).unwrap());
        assert!(generates_units(5, 10).is_err());
        assert_eq!(witness_prime(3).unwrap(), 2);
        assert_eq!(witness_prime(13).unwrap(), 2);
        // ⟨2⟩ = {1,2,4} mod 7 and −1 ∉ ⟨2⟩, so the pair generates everything
        assert_eq!(witness_prime(7).unwrap(), 2);
        assert!(witness_prime(9).is_err());
    }

    #[test]
    fn orbit_examples() {
        let o = orbit_decomposition(10, 7).unwrap();
        assert_eq!(o.orbits, vec![vec![(5, 5)], vec![(1, 9), (3, 7)], vec![(2, 8), (4, 6)]]);
        assert_eq!(o.sizes(), vec![1, 2, 2]);
        let o = orbit_decomposition(4, 3).unwrap();
        assert_eq!(o.count(), 2);
        assert_eq!(orbit_decomposition(13, 2).unwrap().count(), 1);
        assert!(orbit_decomposition(10, 5).is_err());
    }

    #[test]
    fn factor_degrees_match_orbits() {
        for n in 3..=16u32 {
            for p in [2u64, 3, 5, 7] {
                if gcd(n as u64, p) != 1 {
                    continue;
                }
                let mut sizes = orbit_decomposition(n as u64, p).unwrap().sizes();
                sizes.sort();
                assert_eq!(charpoly_factor_degrees(n, p).unwrap(), sizes, "n={n} p={p}");
            }
        }
    }

    #[test]
    fn algebra_structure() {
        let alg = Qh0Algebra::new(&GrContext::new(2, 7).unwrap()).unwrap();
        assert_eq!(alg.dim(), 3);
        // b_0 is the unit
        for j in 0..3 {
            let mut e = vec![0; 3];
            e[j] = 1;
            assert_eq!(alg.structure_constants(0, j), &e[..]);
        }
        let q = Rationals;
        let a = alg.multiplication_matrix(&q, &[q.one(), q.from_i64(2), q.zero()]);
        assert_eq!(a.get(0, 0), &q.one());
    }

    #[test]
    fn brute_force_examples() {
        let f7 = FiniteField::prime(7).unwrap();
        let alg = Qh0Algebra::new(&GrContext::new(2, 10).unwrap()).unwrap();
        assert!(matches!(find_zero_divisor(&alg, &f7, BRUTE_FORCE_LIMIT).unwrap(), ZeroDivisorSearch::Found { .. }));
        let f2 = FiniteField::prime(2).unwrap();
        let alg = Qh0Algebra::new(&GrContext::new(2, 13).unwrap()).unwrap();
        assert_eq!(
            find_zero_divisor(&alg, &f2, BRUTE_FORCE_LIMIT).unwrap(),
            ZeroDivisorSearch::Exhausted { checked: 63 }
        );
        assert!(find_zero_divisor(&alg, &FiniteField::prime(11).unwrap(), 1000).is_err());
    }

    #[test]
    fn graded_field_examples() {
        let gf = |p| FieldCtx::Finite(FiniteField::prime(p).unwrap());
        let q = FieldCtx::Rationals(Rationals);
        for n in 2..=9 {
            assert!(is_graded_field(&GrContext::new(1, n).unwrap(), &q).unwrap().is_field);
        }
        assert!(is_graded_field(&GrContext::new(2, 13).unwrap(), &gf(2)).unwrap().is_field);
        assert!(!is_graded_field(&GrContext::new(2, 10).unwrap(), &gf(7)).unwrap().is_field);
        let t = is_graded_field(&GrContext::new(2, 11).unwrap(), &q).unwrap();
        assert!(t.is_field);
        assert!(matches!(t.evidence, Evidence::Irreducibility { units_criterion: true, .. }));
        assert!(!is_graded_field(&GrContext::new(2, 9).unwrap(), &q).unwrap().is_field);
        let t = is_graded_field(&GrContext::new(3, 7).unwrap(), &q).unwrap();
        assert!(!t.is_field, "{t:?}");
        // GF(4) ⊃ GF(2): π for n = 5 splits, although 2 generates the units mod 5
        let gf4 = FieldCtx::Finite(crate::exactfield::make_extension(2, 2).unwrap());
        assert!(!is_graded_field(&GrContext::new(2, 5).unwrap(), &gf4).unwrap().is_field);
        assert!(!rule_is_field(&GrContext::new(2, 5).unwrap(), &gf4));
        assert!(rule_is_field(&GrContext::new(2, 5).unwrap(), &gf(2)));
    }

    #[test]
    fn dimension_count_certificates() {
        let q = FieldCtx::Rationals(Rationals);
        assert_eq!(root_extension_degree(12, &q), 4);
        assert_eq!(root_extension_degree(7, &FieldCtx::Finite(FiniteField::prime(2).unwrap())), 3);
        // n = 12 = 3·4 in characteristic 3: 4th roots of unity need GF(9)
        assert_eq!(root_extension_degree(12, &FieldCtx::Finite(FiniteField::prime(3).unwrap())), 2);
        // Gr(5,10): dim QH⁰ = 26 but C(10,5)/10 is not an integer
        let t = is_graded_field(&GrContext::new(5, 10).unwrap(), &q).unwrap();
        assert_eq!(t, FieldTest { is_field: false, evidence: Evidence::DimensionCount { dim: 26, binomial: 252, extension_degree: 4 } });
        // Gr(3,7): dim 5 = C(7,3)/7, but 5 does not divide φ(7) = 6
        let t = is_graded_field(&GrContext::new(3, 7).unwrap(), &q).unwrap();
        assert!(matches!(t.evidence, Evidence::DimensionCount { dim: 5, binomial: 35, extension_degree: 6 }));
    }

    #[test]
    fn classifier_examples() {
        let v = classify(2, 5, 0).unwrap();
        assert!(v.is_graded_field);
        assert_eq!(v.diameter, Diameter::FiniteWithBound { bound: 2 });
        let v = classify(2, 10, 7).unwrap();
        assert!(!v.is_graded_field);
        assert_eq!(v.diameter, Diameter::Unknown);
        assert_eq!(v.orbit_count, Some(3));
        assert_eq!(v.field_dims, Some(vec![1, 2, 2]));
        assert_eq!(classify(4, 8, 0).unwrap().diameter, Diameter::Infinite);
        assert_eq!(classify(2, 4, 0).unwrap().diameter, Diameter::Infinite);
        assert!(classify(1, 5, 0).unwrap().is_graded_field);
        assert!(classify(4, 5, 3).unwrap().is_graded_field);
        assert!(classify(2, 5, 4).is_err());
        let json = serde_json::to_string(&classify(2, 10, 7).unwrap()).unwrap();
        assert!(json.contains(r#""diameter":{"kind":"Unknown"}"#), "{json}");
        assert!(json.contains(r#""char":7"#));
        let back: ClassifierVerdict = serde_json::from_str(&json).unwrap();
        assert_eq!(back, classify(2, 10, 7).unwrap());
        let json = serde_json::to_string(&classify(2, 7, 0).unwrap()).unwrap();
        assert!(json.contains(r#"{"kind":"FiniteWithBound","bound":2}"#), "{json}");
        assert!(!json.contains("orbitCount"));
    }

    #[test]
    fn shifted_variant_negates_sums() {
        // Shifted = σ_∅ − Primary, so its matrix is I − M
        let q = Rationals;
        for n in [5u32, 8] {
            let s = mult_matrix(&degree_zero_element(n, &q, AVariant::Shifted).unwrap(), n as i64 - 2).unwrap();
            let m = closed_form_matrix(n).unwrap();
            let one = SquareMatrix::identity(&q, m.size());
            assert_eq!(s.add(&m, &q), one);
        }
    }
}
