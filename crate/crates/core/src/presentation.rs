//! The presentation F[x_1..x_k, q]/𝒥 through symmetric functions, and the
//! evaluation homomorphisms ev_J at multisets of roots of unity.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::diagram::{GrContext, YoungDiagram};
use crate::error::{Error, Result};
use crate::exactfield::{make_extension, nth_roots_of_unity, CyclotomicField, Field, FiniteField};
use crate::mpoly::IntPoly;
use crate::numtheory::{gcd, multiplicative_order, split_prime_power};
use crate::qh::{QhElement, SchubertRing};

/// Variables z_1..z_k with n the ambient dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymContext {
    pub k: u32,
    pub n: u32,
}

/// e_i of the values; e_0 = 1.
pub fn elementary_sym<F: Field>(f: &F, values: &[F::Elem], i: usize) -> Result<F::Elem> {
    if i > values.len() {
        return Err(Error::IndexOutOfRange { index: i as u32, max: values.len() as u32 });
    }
    Ok(elementary_all(f, values)[i].clone())
}

/// [e_0, ..., e_len] via the product ∏(1 + z t).
pub fn elementary_all<F: Field>(f: &F, values: &[F::Elem]) -> Vec<F::Elem> {
    let mut e = vec![f.one()];
    for z in values {
        e.push(f.zero());
        for i in (1..e.len()).rev() {
            e[i] = f.add(&e[i], &f.mul(&e[i - 1], z));
        }
    }
    e
}

/// [h_0, ..., h_max] from h_r = Σ_{i≥1} (−1)^{i−1} e_i h_{r−i}, the coefficient form of E(−t)H(t) = 1.
pub fn complete_all<F: Field>(f: &F, values: &[F::Elem], max: usize) -> Vec<F::Elem> {
    let e = elementary_all(f, values);
    let mut h = vec![f.one()];
    for r in 1..=max {
        let mut acc = f.zero();
        for i in 1..=r.min(values.len()) {
            let t = f.mul(&e[i], &h[r - i]);
            acc = if i % 2 == 1 { f.add(&acc, &t) } else { f.sub(&acc, &t) };
        }
        h.push(acc);
    }
    h
}

pub fn complete_sym<F: Field>(f: &F, values: &[F::Elem], i: usize) -> F::Elem {
    complete_all(f, values, i).pop().unwrap()
}

/// Y_r = det(x_{1+j−i}) by the expansion Y_r = x_1 Y_{r−1} − x_2 Y_{r−2} + …, with x_j = 0 for j > k.
pub fn y_polynomial(r: u32, k: u32) -> IntPoly {
    let k = k as usize;
    let mut ys = vec![IntPoly::one(k)];
    for s in 1..=r as usize {
        let mut acc = IntPoly::zero(k);
        for i in 1..=s.min(k) {
            let t = IntPoly::var(k, i as i64).mul(&ys[s - i]);
            acc = if i % 2 == 1 { acc.add(&t) } else { acc.sub(&t) };
        }
        ys.push(acc);
    }
    ys.pop().unwrap()
}

/// A multiset of roots of unity given by exponents into the canonical root list,
/// sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AdmissibleMultiset {
    pub exponents: Vec<u32>,
}

impl fmt::Display for AdmissibleMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.exponents.iter().map(u32::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl FromStr for AdmissibleMultiset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("bad multiset {s:?}")))?;
        let mut exponents = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|t| t.trim().parse().map_err(|_| Error::Parse(format!("bad exponent {t:?}"))))
                .collect::<Result<Vec<u32>>>()?
        };
        exponents.sort();
        Ok(Self { exponents })
    }
}

/// A splitting field 𝐊 with the fixed ξ (ξ^n + (−1)^k = 0) and the canonical list of
/// distinct roots of unity. In characteristic p with n = p^d·m, the distinct roots
/// are the m-th roots and each may repeat up to p^d times.
#[derive(Clone, Debug)]
pub struct EvContext<K: Field> {
    ctx: GrContext,
    field: K,
    xi: K::Elem,
    roots: Vec<K::Elem>,
    multiplicity: u32,
    subfield: Subfield,
}

#[derive(Clone, Debug)]
enum Subfield {
    /// 𝐅(ζ) is all of 𝐊.
    Whole,
    /// Elements with a^{p^e} = a.
    Frobenius { e: u32 },
    /// Elements fixed by ω ↦ ω^t.
    Galois { t: u64 },
}

impl<K: Field> EvContext<K> {
    pub fn ctx(&self) -> &GrContext {
        &self.ctx
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn xi(&self) -> &K::Elem {
        &self.xi
    }

    /// The distinct roots ζ^0 = 1, ζ, ζ^2, ….
    pub fn roots(&self) -> &[K::Elem] {
        &self.roots
    }

    /// Maximum multiplicity p^d of a root in an admissible multiset.
    pub fn multiplicity_bound(&self) -> u32 {
        self.multiplicity
    }

    /// All admissible multisets of size k, as nondecreasing exponent lists in lexicographic order.
    pub fn admissible_multisets(&self) -> Vec<AdmissibleMultiset> {
        fn rec(m: u32, bound: u32, left: u32, start: u32, run: u32, cur: &mut Vec<u32>, out: &mut Vec<AdmissibleMultiset>) {
            if left == 0 {
                out.push(AdmissibleMultiset { exponents: cur.clone() });
                return;
            }
            for e in start..m {
                let run_here = if cur.last() == Some(&e) { run + 1 } else { 1 };
                if run_here > bound {
                    continue;
                }
                cur.push(e);
                rec(m, bound, left - 1, e, run_here, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(self.roots.len() as u32, self.multiplicity, self.ctx.k(), 0, 0, &mut Vec::new(), &mut out);
        out
    }

    fn check_multiset(&self, j: &AdmissibleMultiset) -> Result<()> {
        let m = self.roots.len() as u32;
        if j.exponents.len() as u32 != self.ctx.k() {
            return Err(Error::ContextMismatch(format!("multiset {j} has size ≠ k = {}", self.ctx.k())));
        }
        if let Some(&e) = j.exponents.iter().find(|&&e| e >= m) {
            return Err(Error::IndexOutOfRange { index: e, max: m - 1 });
        }
        let too_many = j.exponents.chunk_by(|a, b| a == b).any(|run| run.len() as u32 > self.multiplicity);
        if too_many {
            return Err(Error::Unsupported(format!("multiset {j} exceeds multiplicity {}", self.multiplicity)));
        }
        Ok(())
    }

    /// ξζ_J: the multiset scaled by ξ.
    pub fn scaled_roots(&self, j: &AdmissibleMultiset) -> Vec<K::Elem> {
        j.exponents.iter().map(|&e| self.field.mul(&self.xi, &self.roots[e as usize])).collect()
    }

    /// An evaluator for ev_J, memoizing images of Schubert classes.
    pub fn evaluator(&self, j: &AdmissibleMultiset) -> Result<Evaluator<'_, K>> {
        self.check_multiset(j)?;
        let e = elementary_all(&self.field, &self.scaled_roots(j));
        Ok(Evaluator {
            ev: self,
            x_values: e[1..].to_vec(),
            ring: SchubertRing::shared(self.ctx),
            cache: HashMap::new(),
        })
    }

    /// ev_J(a) for a single class.
    pub fn ev_map(&self, j: &AdmissibleMultiset, a: &QhElement<K>) -> Result<K::Elem> {
        self.evaluator(j)?.eval(a)
    }

    /// Checks that ev_J kills the generators h_{n−k+1}, …, h_{n−1} and h_n + (−1)^k.
    pub fn verify_ideal_vanishing(&self, j: &AdmissibleMultiset) -> Result<IdealReport> {
        self.check_multiset(j)?;
        let f = &self.field;
        let (k, n) = (self.ctx.k() as usize, self.ctx.n() as usize);
        let h = complete_all(f, &self.scaled_roots(j), n);
        let mut entries = Vec::new();
        for (r, hr) in h.iter().enumerate().take(n).skip(n - k + 1) {
            entries.push(IdealEntry { generator: format!("h_{r}"), value: f.format(hr), vanishes: f.is_zero(hr) });
        }
        let sign = if k % 2 == 0 { f.one() } else { f.neg(&f.one()) };
        let last = f.add(&h[n], &sign);
        let label = if k % 2 == 0 { format!("h_{n} + 1") } else { format!("h_{n} - 1") };
        entries.push(IdealEntry { generator: label, value: f.format(&last), vanishes: f.is_zero(&last) });
        let passed = entries.iter().all(|e| e.vanishes);
        Ok(IdealReport { k: self.ctx.k(), n: self.ctx.n(), multiset: j.to_string(), entries, passed })
    }
}

/// Memoized ev_J: x_i ↦ e_i(ξζ_J), q ↦ 1, σ_D through its Giambelli expansion.
pub struct Evaluator<'a, K: Field> {
    ev: &'a EvContext<K>,
    x_values: Vec<K::Elem>,
    ring: Arc<SchubertRing>,
    cache: HashMap<YoungDiagram, K::Elem>,
}

impl<K: Field> Evaluator<'_, K> {
    /// Images of x_1, …, x_k.
    pub fn x_values(&self) -> &[K::Elem] {
        &self.x_values
    }

    pub fn sigma(&mut self, d: &YoungDiagram) -> Result<K::Elem> {
        if let Some(v) = self.cache.get(d) {
            return Ok(v.clone());
        }
        let poly = self.ring.giambelli(d)?;
        let v = poly.eval(&self.ev.field, &self.x_values);
        self.cache.insert(d.clone(), v.clone());
        Ok(v)
    }

    pub fn eval(&mut self, a: &QhElement<K>) -> Result<K::Elem> {
        if a.ctx() != &self.ev.ctx {
            return Err(Error::ContextMismatch(format!("{} vs {}", a.ctx(), self.ev.ctx)));
        }
        let f = self.ev.field.clone();
        let mut acc = f.zero();
        for (m, c) in a.terms() {
            acc = f.add(&acc, &f.mul(c, &self.sigma(&m.diagram)?));
        }
        Ok(acc)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IdealEntry {
    pub generator: String,
    pub value: String,
    pub vanishes: bool,
}

/// Outcome of [`EvContext::verify_ideal_vanishing`]; failures are entries, not errors.
#[derive(Clone, Debug, Serialize)]
pub struct IdealReport {
    pub k: u32,
    pub n: u32,
    pub multiset: String,
    pub entries: Vec<IdealEntry>,
    pub passed: bool,
}

impl EvContext<FiniteField> {
    /// The smallest extension of `base` containing the needed roots of unity and ξ.
    ///
    /// With n = p^d·m: the m-th roots are needed, and for k even and p odd also a
    /// primitive 2m-th root, which serves as ξ. For k odd or p = 2, ξ = 1.
    pub fn finite(ctx: &GrContext, base: &FiniteField) -> Result<Self> {
        let p = base.characteristic();
        let (d, m) = split_prime_power(ctx.n() as u64, p);
        let need_sign = ctx.k() % 2 == 0 && p != 2;
        let order_needed = if need_sign { 2 * m } else { m };
        let ord = multiplicative_order(p, order_needed).expect("p is coprime to the root order") as u32;
        let base_deg = base.degree();
        let total = lcm32(base_deg, ord);
        let field = make_extension(p, total)?;
        let q = field.size();
        let roots = nth_roots_of_unity(&field, m)?;
        let xi = if need_sign { field.pow(&field.generator(), (q - 1) / (2 * m)) } else { field.one() };
        let multiplicity = u32::try_from(p.pow(d)).unwrap_or(u32::MAX);
        let e = lcm32(base_deg, multiplicative_order(p, m).unwrap() as u32);
        let subfield = if e == total { Subfield::Whole } else { Subfield::Frobenius { e } };
        Ok(Self { ctx: *ctx, field, xi, roots, multiplicity, subfield })
    }

    /// Whether `a` lies in 𝐅(ζ), the subfield generated over the base by the roots.
    pub fn in_root_subfield(&self, a: &u64) -> bool {
        match self.subfield {
            Subfield::Whole => true,
            Subfield::Frobenius { e } => {
                let p = self.field.characteristic();
                let mut x = *a;
                for _ in 0..e {
                    x = self.field.pow(&x, p);
                }
                x == *a
            }
            Subfield::Galois { .. } => unreachable!(),
        }
    }
}

impl EvContext<CyclotomicField> {
    /// Characteristic zero: 𝐊 = ℚ(ω) with ω a primitive N-th root, N = n for k odd
    /// (ξ = 1) and N = 2n for k even (ξ = ω, so ξ^n = −1).
    pub fn rational(ctx: &GrContext) -> Self {
        let n = ctx.n() as u64;
        let even = ctx.k() % 2 == 0;
        let big_n = if even { 2 * n } else { n };
        let field = CyclotomicField::new(big_n);
        let step = (big_n / n) as i64;
        let roots = (0..n as i64).map(|i| field.root_power(step * i)).collect();
        let xi = if even { field.root_power(1) } else { field.one() };
        let subfield = if big_n == n || n % 2 == 1 { Subfield::Whole } else { Subfield::Galois { t: n + 1 } };
        Self { ctx: *ctx, field, xi, roots, multiplicity: 1, subfield }
    }

    /// Whether `a` lies in ℚ(ζ_n) ⊂ ℚ(ω).
    pub fn in_root_subfield(&self, a: &<CyclotomicField as Field>::Elem) -> bool {
        match self.subfield {
            Subfield::Whole => true,
            Subfield::Galois { t } => self.field.galois(a, t) == *a,
            Subfield::Frobenius { .. } => unreachable!(),
        }
    }
}

fn lcm32(a: u32, b: u32) -> u32 {
    (a as u64 / gcd(a as u64, b as u64) * b as u64) as u32
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{Poly, Rationals};
    use crate::numtheory::binomial;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn symmetric_function_examples() {
        let q = Rationals;
        let v: Vec<_> = [1, 2, 3].iter().map(|&x| q.from_i64(x)).collect();
        assert_eq!(elementary_sym(&q, &v, 0).unwrap(), q.one());
        assert_eq!(elementary_sym(&q, &v, 2).unwrap(), q.from_i64(11));
        assert!(elementary_sym(&q, &v, 4).is_err());
        let w: Vec<_> = [1, 2].iter().map(|&x| q.from_i64(x)).collect();
        assert_eq!(complete_sym(&q, &w, 0), q.one());
        assert_eq!(complete_sym(&q, &w, 2), q.from_i64(7));
    }

    /// Oracle: h_r as the sum of all degree-r monomials.
    fn h_brute(q: &Rationals, v: &[num_rational::BigRational], r: usize) -> num_rational::BigRational {
        if v.is_empty() {
            return if r == 0 { q.one() } else { q.zero() };
        }
        (0..=r).fold(q.zero(), |acc, a| q.add(&acc, &q.mul(&q.pow(&v[0], a as u64), &h_brute(q, &v[1..], r - a))))
    }

    #[test]
    fn generating_identity() {
        let q = Rationals;
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for k in 1..=4 {
            let v: Vec<_> = (0..k).map(|_| q.random(&mut rng)).collect();
            let e = elementary_all(&q, &v);
            let h = complete_all(&q, &v, 12);
            for (r, hr) in h.iter().enumerate().take(6) {
                assert_eq!(*hr, h_brute(&q, &v, r));
            }
            // coefficient of t^r in E(−t)H(t)
            for r in 0..=12 {
                let mut c = q.zero();
                for i in 0..=r.min(k) {
                    let t = q.mul(&e[i], &h[r - i]);
                    c = if i % 2 == 0 { q.add(&c, &t) } else { q.sub(&c, &t) };
                }
                assert_eq!(c, if r == 0 { q.one() } else { q.zero() });
            }
        }
    }

    #[test]
    fn y_polynomials() {
        assert_eq!(y_polynomial(1, 3).to_string(), "x1");
        assert_eq!(y_polynomial(2, 3).to_string(), "x1^2 - x2");
        let k = 4;
        let y: Vec<IntPoly> = (0..=4).map(|r| y_polynomial(r, k)).collect();
        let x = |j| IntPoly::var(k as usize, j);
        let expect = x(1).mul(&y[3]).sub(&x(2).mul(&y[2])).add(&x(3).mul(&y[1])).sub(&x(4));
        assert_eq!(y[4], expect);
        // Y_r is the Giambelli class of a single row
        let ctx = GrContext::new(3, 9).unwrap();
        for r in 1..=6 {
            assert_eq!(crate::qh::giambelli_expand(&ctx, &YoungDiagram::row(r)).unwrap(), y_polynomial(r, 3));
        }
    }

    #[test]
    fn vieta_for_all_roots() {
        for n in 1..=12u32 {
            let ctx = GrContext::new(1, n).unwrap();
            let ev = EvContext::rational(&ctx);
            let f = ev.field();
            let e = elementary_all(f, ev.roots());
            // Σ e_i(−t)^i = 1 − t^n
            for (i, ei) in e.iter().enumerate() {
                let signed = if i % 2 == 0 { ei.clone() } else { f.neg(ei) };
                let expect = match i {
                    0 => f.one(),
                    i if i == n as usize => f.neg(&f.one()),
                    _ => f.zero(),
                };
                assert_eq!(signed, expect, "n = {n}, i = {i}");
            }
        }
        for (p, n) in [(7u64, 6u32), (11, 5), (2, 7), (13, 12)] {
            let ctx = GrContext::new(1, n).unwrap();
            let ev = EvContext::finite(&ctx, &FiniteField::prime(p).unwrap()).unwrap();
            let f = ev.field();
            let prod = ev.roots().iter().fold(Poly::one(f), |acc, z| acc.mul(&Poly::new(f, vec![f.neg(z), 1]), f));
            let mut target = vec![0u64; n as usize + 1];
            target[0] = f.neg(&1);
            target[n as usize] = 1;
            assert_eq!(prod, Poly::new(f, target));
        }
    }

    #[test]
    fn multisets() {
        let ev = EvContext::rational(&GrContext::new(5, 5).unwrap());
        assert_eq!(ev.admissible_multisets().len(), 1);
        let ev = EvContext::rational(&GrContext::new(2, 5).unwrap());
        assert_eq!(ev.admissible_multisets().len(), 10);
        let f7 = FiniteField::prime(7).unwrap();
        let ev = EvContext::finite(&GrContext::new(1, 3).unwrap(), &f7).unwrap();
        let js = ev.admissible_multisets();
        let vals: Vec<u64> = js.iter().map(|j| ev.roots()[j.exponents[0] as usize]).collect();
        assert_eq!(vals, vec![1, 2, 4]);
        // p | n: Gr(2,4) in characteristic 2 has the single root 1 with multiplicity up to 4
        let f2 = FiniteField::prime(2).unwrap();
        let ev = EvContext::finite(&GrContext::new(2, 4).unwrap(), &f2).unwrap();
        assert_eq!(ev.multiplicity_bound(), 4);
        assert_eq!(ev.admissible_multisets(), vec!["[0,0]".parse().unwrap()]);
        // Gr(2,6) over GF(3): n = 3·2, roots ±1 each at most three times
        let f3 = FiniteField::prime(3).unwrap();
        let ev = EvContext::finite(&GrContext::new(2, 6).unwrap(), &f3).unwrap();
        assert_eq!(ev.admissible_multisets().len(), 3);
        for (k, n) in [(2u32, 7u32), (3, 8)] {
            let ev = EvContext::finite(&GrContext::new(k, n).unwrap(), &FiniteField::prime(5).unwrap()).unwrap();
            assert_eq!(ev.admissible_multisets().len() as u128, binomial(n as u64, k as u64));
        }
        assert_eq!("[2, 0]".parse::<AdmissibleMultiset>().unwrap().to_string(), "[0,2]");
    }

    #[test]
    fn xi_equation() {
        for (k, n, p) in [(2u32, 5u32, 11u64), (3, 6, 7), (2, 7, 2), (2, 6, 5), (4, 9, 3)] {
            let ev = EvContext::finite(&GrContext::new(k, n).unwrap(), &FiniteField::prime(p).unwrap()).unwrap();
            let f = ev.field();
            let lhs = f.pow(ev.xi(), n as u64);
            let sign = if k % 2 == 0 { f.one() } else { f.neg(&f.one()) };
            assert!(f.is_zero(&f.add(&lhs, &sign)), "k={k} n={n} p={p}");
        }
        for (k, n) in [(1u32, 4u32), (2, 4), (3, 6), (2, 5)] {
            let ev = EvContext::rational(&GrContext::new(k, n).unwrap());
            let f = ev.field();
            let sign = if k % 2 == 0 { f.one() } else { f.neg(&f.one()) };
            assert!(f.is_zero(&f.add(&f.pow(ev.xi(), n as u64), &sign)));
        }
    }

    #[test]
    fn ideal_vanishing_examples() {
        let ev = EvContext::rational(&GrContext::new(1, 7).unwrap());
        for j in ev.admissible_multisets() {
            assert!(ev.verify_ideal_vanishing(&j).unwrap().passed);
        }
        let ev = EvContext::finite(&GrContext::new(2, 5).unwrap(), &FiniteField::prime(11).unwrap()).unwrap();
        assert_eq!(ev.field().size(), 11);
        let js = ev.admissible_multisets();
        assert_eq!(js.len(), 10);
        for j in &js {
            let r = ev.verify_ideal_vanishing(j).unwrap();
            assert_eq!(r.entries.len(), 2);
            assert!(r.passed, "{r:?}");
        }
        let ev = EvContext::rational(&GrContext::new(3, 6).unwrap());
        let j: AdmissibleMultiset = "[0,2,5]".parse().unwrap();
        assert!(ev.verify_ideal_vanishing(&j).unwrap().passed);
        assert!(ev.verify_ideal_vanishing(&"[0,0,1]".parse().unwrap()).is_err());
    }

    #[test]
    fn evaluation_is_multiplicative() {
        let ctx = GrContext::new(3, 6).unwrap();
        let ev = EvContext::finite(&ctx, &FiniteField::prime(7).unwrap()).unwrap();
        let f = ev.field();
        let x2 = QhElement::x(&ctx, f, 2).unwrap();
        let s31 = QhElement::sigma(&ctx, f, &"3,1".parse().unwrap()).unwrap();
        let prod = x2.product(&s31).unwrap();
        for j in ev.admissible_multisets() {
            let mut e = ev.evaluator(&j).unwrap();
            let lhs = e.eval(&prod).unwrap();
            let rhs = f.mul(&e.eval(&x2).unwrap(), &e.eval(&s31).unwrap());
            assert_eq!(lhs, rhs);
            assert!(f.is_one(&e.eval(&QhElement::unit(&ctx, f).q_shift(1)).unwrap()));
        }
    }
}
