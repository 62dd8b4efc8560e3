//! The acceptance criteria, each paired with an oracle computed independently of the
//! code path under test. `selftest` runs the fast tier; the integration test runs the full one.

use std::fmt;
use std::time::{Duration, Instant};

use grassqh::degree_zero::{
    charpoly_factor_degrees, charpoly_in, classify, closed_form_charpoly, closed_form_matrix, degree_zero_element,
    find_zero_divisor, generates_units, is_graded_field, laurent_shift, mult_matrix, orbit_decomposition,
    r_polynomial, rule_is_field, AVariant, Diameter, Qh0Algebra, ZeroDivisorSearch, BRUTE_FORCE_LIMIT,
};
use grassqh::diagram::GrContext;
use grassqh::exactfield::{char_poly, Field, FieldCtx, FiniteField, Poly, Rationals, SquareMatrix};
use grassqh::gelfand_cetlin::{
    find_critical_point, gc_map, leading_spectra, potential_eval, potential_grad, quaternionic_frame, random_frame,
    GcPoint,
};
use grassqh::numtheory::primes_up_to;
use grassqh::presentation::EvContext;
use grassqh::qh::QhElement;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::commands;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tier {
    /// Reduced grids, a few seconds in total.
    Fast,
    /// The complete grids.
    Full,
}

/// A failed check, or a library error raised while checking.
#[derive(Debug)]
pub struct Failure(pub String);

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<grassqh::Error> for Failure {
    fn from(e: grassqh::Error) -> Self {
        Failure(format!("library error: {e}"))
    }
}

type Check = Result<String, Failure>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), Failure> {
    if cond {
        Ok(())
    } else {
        Err(Failure(msg()))
    }
}

pub struct Criterion {
    pub id: u8,
    pub name: &'static str,
    pub budget: Duration,
    run: fn(Tier) -> Check,
}

#[derive(Debug)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl Outcome {
    pub fn line(&self) -> String {
        format!(
            "{} [{:>2}] {} ({:.2} s, budget {} s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs(),
            self.detail
        )
    }
}

pub fn criteria() -> Vec<Criterion> {
    let secs = Duration::from_secs;
    vec![
        Criterion { id: 1, name: "Pieri golden case", budget: secs(1), run: golden_product },
        Criterion { id: 2, name: "power identity x_k^n = q^k", budget: secs(30), run: power_identity },
        Criterion { id: 3, name: "degree-zero matrices for n = 13, 12", budget: secs(10), run: matrix_reproduction },
        Criterion { id: 4, name: "Laurent identities for the char poly", budget: secs(10), run: laurent_identities },
        Criterion { id: 5, name: "field / irreducibility / unit-group equivalence", budget: secs(120), run: equivalence },
        Criterion { id: 6, name: "Frobenius orbits and semisimplicity", budget: secs(60), run: semisimplicity },
        Criterion { id: 7, name: "evaluation homomorphisms", budget: secs(120), run: evaluation },
        Criterion { id: 8, name: "classifier table", budget: secs(30), run: classifier_table },
        Criterion { id: 9, name: "zero-divisor search vs rule", budget: secs(300), run: zero_divisor_grid },
        Criterion { id: 10, name: "Gelfand-Cetlin frames", budget: secs(30), run: gelfand_cetlin_frames },
        Criterion { id: 11, name: "critical points of the disk potential", budget: secs(10), run: critical_points },
    ]
}

pub fn run_criterion(c: &Criterion, tier: Tier) -> Outcome {
    let start = Instant::now();
    let result = (c.run)(tier);
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = match result {
        Ok(d) => (true, d),
        Err(f) => (false, f.0),
    };
    if passed && elapsed > c.budget {
        passed = false;
        detail = format!("over budget; {detail}");
    }
    Outcome { id: c.id, name: c.name, passed, detail, elapsed, budget: c.budget }
}

pub fn run_all(tier: Tier) -> Vec<Outcome> {
    criteria().iter().map(|c| run_criterion(c, tier)).collect()
}

fn ctx(k: u32, n: u32) -> Result<GrContext, Failure> {
    Ok(GrContext::new(k, n)?)
}

fn golden_product(_: Tier) -> Check {
    let expected = "σ[3,2,1] + q*σ[-]";
    let got = commands::product(3, 6, "Q", "σ[1,1]", "σ[3,1]", false).map_err(|e| Failure(e.to_string()))?;
    ensure(got == expected, || format!("got {got:?}, expected {expected:?}"))?;
    let swapped = commands::product(3, 6, "Q", "σ[3,1]", "σ[1,1]", false).map_err(|e| Failure(e.to_string()))?;
    ensure(swapped == expected, || format!("reversed order gave {swapped:?}"))?;
    Ok(format!("σ[1,1] ∗ σ[3,1] = {got}"))
}

fn power_identity_in<F: Field>(f: &F, n_max: u32) -> Result<usize, Failure> {
    let mut cases = 0;
    for n in 4..=n_max {
        for k in 2..=n / 2 {
            let c = ctx(k, n)?;
            let expected = QhElement::unit(&c, f).q_shift(k as i32);
            let x = QhElement::x(&c, f, k)?;
            let mut by_pieri = QhElement::unit(&c, f);
            for _ in 0..n {
                by_pieri = by_pieri.pieri_multiply(k)?;
            }
            ensure(by_pieri == expected, || format!("Pieri iteration: x_{k}^{n} = {by_pieri} in Gr({k},{n})"))?;
            let by_pow = x.pow(n)?;
            ensure(by_pow == expected, || format!("product powering: x_{k}^{n} = {by_pow} in Gr({k},{n})"))?;
            cases += 1;
        }
    }
    Ok(cases)
}

fn power_identity(tier: Tier) -> Check {
    let n_max = if tier == Tier::Full { 10 } else { 8 };
    let q = power_identity_in(&Rationals, n_max)?;
    let two = power_identity_in(&FiniteField::prime(2)?, n_max)?;
    Ok(format!("{} (k,n) cases over Q and GF(2), n ≤ {n_max}", q.min(two)))
}

fn int_matrix(rows: &[[i64; 6]; 6]) -> SquareMatrix<BigRational> {
    SquareMatrix::from_fn(6, |i, j| BigRational::from_integer(BigInt::from(rows[i][j])))
}

fn matrix_reproduction(_: Tier) -> Check {
    let thirteen = int_matrix(&[
        [1, -1, 0, 0, 0, 0],
        [-1, 0, -1, 0, 0, 0],
        [0, -1, 0, -1, 0, 0],
        [0, 0, -1, 0, -1, 0],
        [0, 0, 0, -1, 0, -1],
        [0, 0, 0, 0, -1, 0],
    ]);
    let twelve = int_matrix(&[
        [1, -1, 0, 0, 0, 0],
        [-1, 0, -1, 0, 0, 0],
        [0, -1, 0, -1, 0, 0],
        [0, 0, -1, 0, -1, 0],
        [0, 0, 0, -1, 0, -1],
        [0, 0, 0, 0, -1, 1],
    ]);
    for (n, expected) in [(13u32, thirteen), (12, twelve)] {
        let a = degree_zero_element(n, &Rationals, AVariant::Primary)?;
        let m = mult_matrix(&a, n as i64 - 2)?;
        ensure(m == expected, || format!("n = {n}: got {:?}", m.format(&Rationals)))?;
    }
    Ok("both 6×6 matrices match entry by entry".into())
}

fn ints(p: &Poly<BigRational>) -> Result<Vec<BigInt>, Failure> {
    p.coeffs()
        .iter()
        .map(|c| if c.is_integer() { Ok(c.to_integer()) } else { Err(Failure(format!("non-integer coefficient {c}"))) })
        .collect()
}

fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| *c == BigInt::from(0)) {
        v.pop();
    }
    v
}

/// x^L π(−x − 1/x) = Σ c_i (−1)^i Σ_t C(i,t) x^{L−i+2t}, expanded binomially.
fn laurent_oracle(pi: &[BigInt], l: usize) -> Result<Vec<BigInt>, Failure> {
    let mut out = vec![BigInt::from(0); 2 * l + 1];
    for (i, c) in pi.iter().enumerate() {
        ensure(i <= l, || format!("deg π = {} exceeds L = {l}", pi.len() - 1))?;
        let mut binom = BigInt::from(1);
        for t in 0..=i {
            let term = c * &binom;
            let slot = &mut out[l - i + 2 * t];
            if i % 2 == 0 {
                *slot += term;
            } else {
                *slot -= term;
            }
            binom = binom * BigInt::from(i - t) / BigInt::from(t + 1);
        }
    }
    Ok(trim(out))
}

fn laurent_identities(tier: Tier) -> Check {
    let n_max = if tier == Tier::Full { 40 } else { 20 };
    let q = Rationals;
    for n in 3..=n_max {
        let a = degree_zero_element(n, &q, AVariant::Primary)?;
        let m = mult_matrix(&a, n as i64 - 2)?;
        ensure(m == closed_form_matrix(n)?, || format!("n = {n}: ring matrix differs from the tridiagonal form"))?;
        let pi = char_poly(&q, &m);
        ensure(pi == closed_form_charpoly(n)?, || format!("n = {n}: char poly differs from the closed form"))?;
        let l = laurent_shift(n) as usize;
        let lhs = laurent_oracle(&ints(&pi)?, l)?;
        let rhs: Vec<BigInt> = if n % 2 == 1 {
            vec![BigInt::from(1); n as usize]
        } else {
            (0..=n).map(|i| BigInt::from(if i == 0 || i == n { 1 } else { 2 })).collect()
        };
        ensure(lhs == rhs, || format!("n = {n}: x^L π(−x−1/x) has coefficients {lhs:?}"))?;
    }
    // R_ℓ by its three-term recursion, against the library and x^{2ℓ} + … + 1
    let mut prev: Vec<i128> = vec![1];
    let mut cur: Vec<i128> = vec![1, 1, 1];
    for l in 1..=30u32 {
        if l > 1 {
            let mut next = vec![0i128; 2 * l as usize + 1];
            for (i, c) in cur.iter().enumerate() {
                next[i] += c;
                next[i + 2] += c;
            }
            for (i, c) in prev.iter().enumerate() {
                next[i + 2] -= c;
            }
            prev = std::mem::replace(&mut cur, next);
        }
        ensure(cur.iter().all(|&c| c == 1) && cur.len() == 2 * l as usize + 1, || format!("R_{l} = {cur:?}"))?;
        let lib: Vec<BigInt> = ints(&r_polynomial(l))?;
        ensure(lib == cur.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>(), || format!("library R_{l} differs"))?;
    }
    Ok(format!("matrix, char poly and Laurent identity for n = 3..={n_max}; R_ℓ for ℓ ≤ 30"))
}

/// QH⁰ with structure constants reduced mod p, for algebra tests independent of the
/// library's finite-field and polynomial code.
struct ModAlgebra {
    p: u64,
    dim: usize,
    table: Vec<Vec<Vec<u64>>>,
    unit: Vec<u64>,
}

impl ModAlgebra {
    fn new(alg: &Qh0Algebra, p: u64) -> Self {
        let dim = alg.dim();
        let red = |c: i128| c.rem_euclid(p as i128) as u64;
        let table =
            (0..dim).map(|i| (0..dim).map(|j| alg.structure_constants(i, j).iter().map(|&c| red(c)).collect()).collect()).collect();
        let unit = alg.basis().iter().map(|b| u64::from(b.diagram.is_empty())).collect();
        Self { p, dim, table, unit }
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.dim];
        for (i, &x) in a.iter().enumerate().filter(|(_, x)| **x != 0) {
            for (j, &y) in b.iter().enumerate().filter(|(_, y)| **y != 0) {
                let s = x * y % self.p;
                for (o, &t) in out.iter_mut().zip(&self.table[i][j]) {
                    *o = (*o + s * t) % self.p;
                }
            }
        }
        out
    }

    fn pow(&self, a: &[u64], mut e: u64) -> Vec<u64> {
        let mut base = a.to_vec();
        let mut acc = self.unit.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Matrix of a ↦ a^p − shift·a, as columns of basis images.
    fn frobenius_minus(&self, shift: u64) -> Vec<Vec<u64>> {
        (0..self.dim)
            .map(|j| {
                let mut e = vec![0u64; self.dim];
                e[j] = 1;
                let mut col = self.pow(&e, self.p);
                col[j] = (col[j] + self.p - shift) % self.p;
                col
            })
            .collect()
    }

    /// (reduced, number of simple factors when reduced). A finite commutative algebra
    /// is reduced iff Frobenius is injective, and then ≅ ∏ GF(p^{d_i}) with Frobenius
    /// fixing exactly ∏ GF(p), whose dimension counts the factors.
    fn frobenius_profile(&self) -> (bool, usize) {
        let reduced = rank_mod(self.frobenius_minus(0), self.p) == self.dim;
        let fixed = self.dim - rank_mod(self.frobenius_minus(1), self.p);
        (reduced, fixed)
    }

    fn is_field(&self) -> bool {
        self.frobenius_profile() == (true, 1)
    }
}

fn rank_mod(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let inv = |a: u64| grassqh::numtheory::pow_mod(a, p - 2, p);
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, piv);
        let s = inv(rows[rank][c]);
        for v in rows[rank].iter_mut() {
            *v = *v * s % p;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c];
                for cc in 0..cols {
                    rows[r][cc] = (rows[r][cc] + p * p - f * rows[rank][cc]) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn equivalence(tier: Tier) -> Check {
    let bound = if tier == Tier::Full { 31 } else { 13 };
    let primes = primes_up_to(bound);
    let (mut brute, mut frob) = (0, 0);
    for &n in primes.iter().filter(|&&n| n >= 3) {
        let c = ctx(2, n as u32)?;
        let alg = Qh0Algebra::new(&c)?;
        let pi_q = closed_form_charpoly(n as u32)?;
        ensure(grassqh::exactfield::is_irreducible_in(&FieldCtx::Rationals(Rationals), &pi_q)?, || {
            format!("π is reducible over Q for n = {n}")
        })?;
        for &p in primes.iter().filter(|&&p| p != n) {
            let ff = FiniteField::prime(p)?;
            let field_pred = match find_zero_divisor(&alg, &ff, BRUTE_FORCE_LIMIT) {
                Ok(s) => {
                    brute += 1;
                    let by_search = matches!(s, ZeroDivisorSearch::Exhausted { .. });
                    ensure(by_search == ModAlgebra::new(&alg, p).is_field(), || {
                        format!("(n,p) = ({n},{p}): exhaustive search and Frobenius test disagree")
                    })?;
                    by_search
                }
                Err(_) => {
                    frob += 1;
                    ModAlgebra::new(&alg, p).is_field()
                }
            };
            let irreducible = ff.is_irreducible(&charpoly_in(n as u32, &ff)?)?;
            let units = generates_units(p, n)?;
            let lib = is_graded_field(&c, &FieldCtx::Finite(ff.clone()))?.is_field;
            ensure(field_pred == irreducible && irreducible == units && units == lib, || {
                format!("(n,p) = ({n},{p}): field {field_pred}, π irreducible {irreducible}, units {units}, library {lib}")
            })?;
        }
    }
    Ok(format!("primes n, p ≤ {bound}: {brute} pairs by exhaustive search, {frob} by the Frobenius test"))
}

fn semisimplicity(tier: Tier) -> Check {
    let o = orbit_decomposition(10, 7)?;
    ensure(o.count() == 3 && o.sizes() == [1, 2, 2], || format!("orbits(10,7) sizes {:?}", o.sizes()))?;
    let n_max = if tier == Tier::Full { 24 } else { 14 };
    let mut cases = 0;
    for n in 3..=n_max {
        let alg = Qh0Algebra::new(&ctx(2, n)?)?;
        for p in primes_up_to(13).into_iter().filter(|p| n as u64 % p != 0) {
            let o = orbit_decomposition(n as u64, p)?;
            let mut sizes = o.sizes();
            sizes.sort_unstable();
            let mut degrees = charpoly_factor_degrees(n, p)?;
            degrees.sort_unstable();
            ensure(sizes == degrees, || format!("(n,p) = ({n},{p}): orbit sizes {sizes:?}, factor degrees {degrees:?}"))?;
            let (reduced, factors) = ModAlgebra::new(&alg, p).frobenius_profile();
            ensure(reduced && factors == o.count(), || {
                format!("(n,p) = ({n},{p}): reduced {reduced}, {factors} simple factors vs {} orbits", o.count())
            })?;
            cases += 1;
        }
    }
    Ok(format!("orbits(10,7) = [1,2,2]; {cases} pairs (n ≤ {n_max}, p ≤ 13) agree with factor degrees and simple factors"))
}

/// e_i of `t` by expanding ∏ (1 + t_a z).
fn elementary_oracle<K: Field>(f: &K, t: &[K::Elem]) -> Vec<K::Elem> {
    let mut e = vec![f.one()];
    for ta in t {
        let mut next = e.clone();
        next.push(f.zero());
        for i in 0..e.len() {
            next[i + 1] = f.add(&next[i + 1], &f.mul(ta, &e[i]));
        }
        e = next;
    }
    e
}

/// h_r of `t` for r ≤ top through h_r(t_1..t_m) = h_r(t_1..t_{m−1}) + t_m h_{r−1}(t_1..t_m).
fn complete_oracle<K: Field>(f: &K, t: &[K::Elem], top: usize) -> Vec<K::Elem> {
    let mut h: Vec<K::Elem> = (0..=top).map(|r| if r == 0 { f.one() } else { f.zero() }).collect();
    for ta in t {
        for r in 1..=top {
            h[r] = f.add(&h[r], &f.mul(ta, &h[r - 1]));
        }
    }
    h
}

fn evaluation_case<K: Field>(ev: &EvContext<K>, pairs: usize, seed: u64) -> Result<usize, Failure> {
    let c = *ev.ctx();
    let f = ev.field();
    let (k, n) = (c.k() as usize, c.n() as usize);
    let js = ev.admissible_multisets();
    ensure(!js.is_empty(), || format!("{c}: no admissible multisets"))?;
    let mut evaluators = Vec::new();
    for j in &js {
        let report = ev.verify_ideal_vanishing(j)?;
        ensure(report.passed, || format!("{c}, J = {j}: ideal report failed"))?;
        let t = ev.scaled_roots(j);
        let h = complete_oracle(f, &t, n);
        for (r, hr) in h.iter().enumerate().take(n).skip(n - k + 1) {
            ensure(f.is_zero(hr), || format!("{c}, J = {j}: h_{r} = {}", f.format(hr)))?;
        }
        let want = if k % 2 == 0 { f.neg(&f.one()) } else { f.one() };
        ensure(h[n] == want, || format!("{c}, J = {j}: h_{n} = {}", f.format(&h[n])))?;
        let e = elementary_oracle(f, &t);
        let evaluator = ev.evaluator(j)?;
        ensure(evaluator.x_values() == &e[1..], || format!("{c}, J = {j}: x_i images differ from e_i"))?;
        evaluators.push(evaluator);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let top = c.dim() as i64;
    for t in 0..pairs {
        let a = QhElement::random_homogeneous(&c, f, rng.random_range(0..=top), &mut rng);
        let b = QhElement::random_homogeneous(&c, f, rng.random_range(0..=top), &mut rng);
        let ab = a.product(&b)?;
        let e = &mut evaluators[t % js.len()];
        let (lhs, rhs) = (e.eval(&ab)?, f.mul(&e.eval(&a)?, &e.eval(&b)?));
        ensure(lhs == rhs, || format!("{c}: ev(a∗b) ≠ ev(a)ev(b) for a = {a}, b = {b}"))?;
    }
    Ok(js.len())
}

fn evaluation(tier: Tier) -> Check {
    let pairs = if tier == Tier::Full { 100 } else { 20 };
    let mut parts = Vec::new();
    for (k, n, p) in [(2u32, 5u32, 11u64), (3, 6, 7), (2, 7, 2)] {
        let ev = EvContext::finite(&ctx(k, n)?, &FiniteField::prime(p)?)?;
        let count = evaluation_case(&ev, pairs, 0xE7 + n as u64)?;
        parts.push(format!("Gr({k},{n})/GF({p}) in GF({}): {count} multisets", ev.field().size()));
    }
    Ok(format!("{}; {pairs} random pairs each", parts.join(", ")))
}

fn classifier_table(tier: Tier) -> Check {
    let chars: &[u64] = if tier == Tier::Full { &[0, 2, 3, 5, 7, 11, 13] } else { &[0, 2, 3] };
    let mut rows = 0;
    for &ch in chars {
        for n in 2..=10 {
            let v = classify(1, n, ch)?;
            ensure(v.is_graded_field, || format!("(1,{n},{ch}) not a field"))?;
            rows += 1;
        }
        for n in [4u32, 6, 8, 10, 12] {
            ensure(!classify(2, n, ch)?.is_graded_field, || format!("(2,{n},{ch}) reported a field"))?;
            rows += 1;
        }
        for n in [7u32, 8] {
            ensure(!classify(3, n, ch)?.is_graded_field, || format!("(3,{n},{ch}) reported a field"))?;
            rows += 1;
        }
    }
    for n in [5u32, 7] {
        let v = classify(2, n, 0)?;
        let bound = 2 * 2 * (n - 2) / n;
        ensure(v.is_graded_field && v.diameter == Diameter::FiniteWithBound { bound }, || {
            format!("(2,{n},0): {v:?}, expected finite with bound {bound}")
        })?;
        rows += 1;
    }
    for (k, n) in [(4u32, 8u32), (2, 4)] {
        let v = classify(k, n, 0)?;
        ensure(v.diameter == Diameter::Infinite, || format!("({k},{n},0): diameter {:?}", v.diameter))?;
        rows += 1;
    }
    Ok(format!("{rows} table rows reproduced"))
}

/// dim QH⁰(Gr(k,n)): coefficients of the Gaussian binomial [n choose k]_q count the
/// diagrams in the k × (n−k) box by size; sum those at multiples of n.
fn qh0_dim(k: u32, n: u32) -> usize {
    let (k, n) = (k as usize, n as usize);
    // row[j] holds [i choose j]_q as a coefficient vector, built by [i,j] = [i−1,j−1] + q^j [i−1,j]
    let mut row: Vec<Vec<u128>> = vec![vec![1]];
    for i in 1..=n {
        let mut next = vec![vec![1u128]; i + 1];
        for j in 1..i {
            let mut c = vec![0u128; j * (i - j) + 1];
            for (d, v) in row[j - 1].iter().enumerate() {
                c[d] += v;
            }
            for (d, v) in row[j].iter().enumerate() {
                c[d + j] += v;
            }
            next[j] = c;
        }
        row = next;
    }
    row[k].iter().step_by(n).sum::<u128>() as usize
}

fn zero_divisor_grid(tier: Tier) -> Check {
    let limit: u64 = if tier == Tier::Full { BRUTE_FORCE_LIMIT } else { 10_000 };
    let mut cases = Vec::new();
    // k = 1: QH⁰ is the ground field for every n and p; a finite sample stands in for the rest
    for n in 2..=12 {
        for p in primes_up_to(31) {
            cases.push((1, n, p));
        }
    }
    for k in 2u32.. {
        let mut any = false;
        // dim QH⁰ ≥ n/2 − 1 once k ≥ 2, so n beyond 2k + 60 never qualifies
        for n in 2 * k..=2 * k + 60 {
            let d = qh0_dim(k, n) as u32;
            for p in primes_up_to(limit) {
                match p.checked_pow(d) {
                    Some(s) if s <= limit => {
                        cases.push((k, n, p));
                        any = true;
                    }
                    _ => break,
                }
            }
        }
        if !any {
            break;
        }
    }
    let results: Vec<Result<bool, Failure>> = std::thread::scope(|s| {
        let workers = std::thread::available_parallelism().map_or(4, |w| w.get()).min(16);
        let chunks: Vec<Vec<(u32, u32, u64)>> =
            (0..workers).map(|w| cases.iter().copied().skip(w).step_by(workers).collect()).collect();
        let handles: Vec<_> = chunks
            .into_iter()
            .map(|chunk| {
                s.spawn(move || {
                    chunk
                        .into_iter()
                        .map(|(k, n, p)| -> Result<bool, Failure> {
                            let c = ctx(k, n)?;
                            let alg = Qh0Algebra::new(&c)?;
                            let ff = FiniteField::prime(p)?;
                            let search = find_zero_divisor(&alg, &ff, limit)?;
                            let by_search = matches!(search, ZeroDivisorSearch::Exhausted { .. });
                            let rule = rule_is_field(&c, &FieldCtx::Finite(ff));
                            ensure(by_search == rule, || {
                                format!("Gr({k},{n}) over GF({p}): search says field = {by_search}, rule says {rule}")
                            })?;
                            Ok(by_search)
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut fields = 0;
    for r in results {
        if r? {
            fields += 1;
        }
    }
    let max_k = cases.iter().map(|c| c.0).max().unwrap_or(0);
    Ok(format!("{} (k,n,p) triples with p^dim ≤ {limit}, k ≤ {max_k}; {fields} fields", cases.len()))
}

fn gelfand_cetlin_frames(tier: Tier) -> Check {
    let frames = if tier == Tier::Full { 100 } else { 10 };
    let tol = 1e-9;
    let mut separated = 0;
    for (k, n) in [(2u32, 4u32), (4, 8)] {
        let c = ctx(k, n)?;
        let mut generic_gap = 0;
        for seed in 0..frames as u64 {
            let qf = quaternionic_frame(&c, seed)?;
            let z = gc_map(&qf)?;
            let gap = (z.get(1, 2) - z.get(2, 1)).abs();
            ensure(gap < tol, || format!("Gr({k},{n}) quaternionic seed {seed}: |z12 − z21| = {gap:e}"))?;

            let frame = random_frame(&c, seed)?;
            let spectra = leading_spectra(&frame);
            let u = frame.entries();
            for (r, ev) in spectra.iter().enumerate() {
                // trace of the leading block is the sum of squared row norms of U
                let trace: f64 = (0..=r).map(|i| (0..k as usize).map(|j| u[(i, j)].norm_sqr()).sum::<f64>()).sum();
                let sum: f64 = ev.iter().sum();
                ensure((trace - sum).abs() < tol, || format!("seed {seed}: block {} trace {trace} vs {sum}", r + 1))?;
                ensure(ev.iter().all(|&l| l > -tol && l < 1.0 + tol), || format!("seed {seed}: eigenvalue out of [0,1]"))?;
                if let Some(next) = spectra.get(r + 1) {
                    for i in 0..ev.len() {
                        ensure(next[i] >= ev[i] - tol && ev[i] >= next[i + 1] - tol, || {
                            format!("Gr({k},{n}) seed {seed}: Cauchy interlacing fails at block {}", r + 1)
                        })?;
                    }
                }
            }
            let z = gc_map(&frame)?;
            let cols = n as usize - k as usize;
            for i in 1..=k as usize {
                for j in 1..=cols {
                    let v = z.get(i, j);
                    ensure(v > -tol && v < 1.0 + tol, || format!("seed {seed}: z_{i}_{j} = {v}"))?;
                    ensure(j == cols || z.get(i, j + 1) >= v - tol, || format!("seed {seed}: z_{i}_{j} > z_{i}_{}", j + 1))?;
                    ensure(i == k as usize || v >= z.get(i + 1, j) - tol, || format!("seed {seed}: z_{i}_{j} < z_{}_{j}", i + 1))?;
                }
            }
            if (z.get(1, 2) - z.get(2, 1)).abs() > 1e-3 {
                generic_gap += 1;
            }
        }
        ensure(generic_gap * 100 >= 95 * frames, || format!("Gr({k},{n}): only {generic_gap}/{frames} generic frames separate z12, z21"))?;
        separated += generic_gap;
    }
    Ok(format!("{frames} quaternionic and {frames} generic frames in Gr(2,4), Gr(4,8); {separated} generic frames with z12 ≠ z21"))
}

fn finite_difference_check(point: &GcPoint) -> Result<(), Failure> {
    let c = *point.ctx();
    let grad = potential_grad(point);
    for (m, &g) in grad.iter().enumerate() {
        let h = 1e-5 * point.coords()[m];
        let shifted = |s: f64| -> Result<f64, Failure> {
            let mut z = point.coords().to_vec();
            z[m] += s;
            Ok(potential_eval(&GcPoint::new(&c, z)?))
        };
        let fd = (shifted(h)? - shifted(-h)?) / (2.0 * h);
        let scale = g.abs().max(1.0);
        ensure((fd - g).abs() <= 1e-6 * scale, || format!("{c}: coordinate {m}: finite difference {fd} vs gradient {g}"))?;
    }
    Ok(())
}

fn critical_points(_: Tier) -> Check {
    let tol = 1e-8;
    let r = find_critical_point(&ctx(1, 2)?, 1e-12)?;
    let z = r.z.values().next().copied().unwrap_or(f64::NAN);
    ensure((z - 1.0).abs() <= 1e-12 && (r.w - 2.0).abs() <= 1e-12, || format!("Gr(1,2): z = {z}, W = {}", r.w))?;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut summary = vec![format!("Gr(1,2) z = {z}, W = {}", r.w)];
    for (k, n) in [(2u32, 4u32), (2, 5), (3, 6)] {
        let c = ctx(k, n)?;
        let r = find_critical_point(&c, tol)?;
        let point = r.point.clone().ok_or_else(|| Failure(format!("{c}: no point returned")))?;
        let g = potential_grad(&point).iter().fold(0.0f64, |m, v| m.max(v.abs()));
        ensure(g < tol, || format!("{c}: ‖∇W‖∞ = {g:e}"))?;
        finite_difference_check(&point)?;
        for _ in 0..5 {
            let z: Vec<f64> = (0..point.coords().len()).map(|_| rng.random_range(0.3..3.0)).collect();
            finite_difference_check(&GcPoint::new(&c, z)?)?;
        }
        summary.push(format!("{c}: W = {:.12}, ‖∇W‖∞ = {g:.1e} after {} iterations", r.w, r.iters));
    }
    Ok(summary.join("; "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qh0_dim_matches_library_basis() {
        for (k, n) in [(2u32, 4u32), (2, 7), (3, 6), (3, 9), (4, 8)] {
            assert_eq!(qh0_dim(k, n), Qh0Algebra::new(&GrContext::new(k, n).unwrap()).unwrap().dim());
        }
    }

    #[test]
    fn frobenius_test_on_known_cases() {
        // Gr(2,5): a field over GF(2) (2 generates (Z/5)^×), two copies of GF(11) over GF(11)
        let alg = Qh0Algebra::new(&GrContext::new(2, 5).unwrap()).unwrap();
        assert!(ModAlgebra::new(&alg, 2).is_field());
        assert_eq!(ModAlgebra::new(&alg, 11).frobenius_profile(), (true, 2));
        // characteristic 5 divides n: π = (y + 2)^2 gives nilpotents
        assert!(!ModAlgebra::new(&alg, 5).frobenius_profile().0);
    }

    #[test]
    fn rank_mod_small() {
        assert_eq!(rank_mod(vec![vec![1, 2], vec![2, 4]], 7), 1);
        assert_eq!(rank_mod(vec![vec![1, 2], vec![2, 5]], 7), 2);
        assert_eq!(rank_mod(vec![vec![0, 0], vec![0, 0]], 3), 0);
    }

    #[test]
    fn laurent_oracle_for_n_four() {
        // π(y) = y² − 2y for n = 4
        let pi = [0, -2, 1].map(BigInt::from).to_vec();
        assert_eq!(laurent_oracle(&pi, 2).unwrap(), [1, 2, 2, 2, 1].map(BigInt::from).to_vec());
    }

    #[test]
    fn oracles_for_symmetric_functions() {
        let f = FiniteField::prime(101).unwrap();
        let t = [2u64, 3, 5];
        assert_eq!(elementary_oracle(&f, &t), vec![1, 10, 31, 30]);
        // h_2(2,3,5) = 4+9+25+6+10+15
        assert_eq!(complete_oracle(&f, &t, 2), vec![1, 10, 69]);
    }
}
