//! Irreducibility over ℚ: modular degree screening, then Zassenhaus with Hensel
//! lifting and factor recombination.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Field, FiniteField, Poly, Rationals};
use crate::error::{Error, Result};
use crate::numtheory::is_prime;

/// Degree cap for irreducibility testing over ℚ.
pub const MAX_DEGREE_Q: usize = 64;

const SCREEN_PRIMES: usize = 8;

/// Exact irreducibility test over ℚ for degree ≤ 64.
pub fn is_irreducible_over_q(f: &Poly<BigRational>) -> Result<bool> {
    let deg = match f.degree() {
        None | Some(0) => return Ok(false),
        Some(1) => return Ok(true),
        Some(d) if d > MAX_DEGREE_Q => return Err(Error::DegreeLimit { degree: d, limit: MAX_DEGREE_Q }),
        Some(d) => d,
    };
    let q = Rationals;
    if f.coeffs()[0].is_zero() {
        return Ok(false);
    }
    if f.gcd(&f.derivative(&q), &q).degree() != Some(0) {
        return Ok(false);
    }
    let g = primitive_integer_poly(f);
    let lc = g.last().unwrap().clone();

    // Factor degrees modulo several good primes bound the possible degrees of
    // rational factors: each must be a subset sum in every reduction.
    let mut possible = vec![true; deg + 1];
    let mut best: Option<(FiniteField, Vec<(usize, Poly<u64>)>, usize)> = None;
    let mut screened = 0;
    let mut p = 2u64;
    while screened < SCREEN_PRIMES {
        p += 1;
        if !is_prime(p) || (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = FiniteField::prime(p)?;
        let gp = reduce_mod(&g, &fp);
        if !fp.is_squarefree(&gp) {
            continue;
        }
        screened += 1;
        let ddf = fp.distinct_degree_factorization(&gp)?;
        let mut sums = vec![false; deg + 1];
        sums[0] = true;
        let mut count = 0;
        for (d, block) in &ddf {
            for _ in 0..block.degree().unwrap() / d {
                count += 1;
                for s in (*d..=deg).rev() {
                    sums[s] |= sums[s - d];
                }
            }
        }
        if count == 1 {
            return Ok(true);
        }
        for (a, b) in possible.iter_mut().zip(&sums) {
            *a &= *b;
        }
        if possible[1..deg].iter().all(|&x| !x) {
            return Ok(true);
        }
        if best.as_ref().is_none_or(|b| count < b.2) {
            best = Some((fp, ddf, count));
        }
    }

    let (fp, ddf, _) = best.expect("screening found good primes");
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut factors = Vec::new();
    for (d, block) in &ddf {
        factors.extend(fp.equal_degree_factors(block, *d, &mut rng));
    }
    let p = fp.p();
    let bound = coefficient_bound(&g);
    let mut modulus = BigInt::from(p);
    let mut exponent = 1u32;
    while modulus <= &bound * 2 {
        modulus *= p;
        exponent += 1;
    }
    let lifted = hensel_lift(&g, &factors, &fp, exponent);
    Ok(!has_true_factor(&g, &lifted, &modulus))
}

/// Clears denominators and content; the leading coefficient is made positive.
fn primitive_integer_poly(f: &Poly<BigRational>) -> Vec<BigInt> {
    let den = f.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = f.coeffs().iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect();
    primitive_part(ints)
}

fn primitive_part(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let content = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !content.is_zero() {
        for c in &mut v {
            *c /= &content;
        }
    }
    if v.last().is_some_and(|c| c.sign() == Sign::Minus) {
        for c in &mut v {
            *c = -&*c;
        }
    }
    v
}

fn reduce_mod(g: &[BigInt], fp: &FiniteField) -> Poly<u64> {
    Poly::new(fp, g.iter().map(|c| fp.from_bigint(c)).collect())
}

/// |lc| · 2^deg · ‖g‖₂ bounds every coefficient of lc·h/lc(h) for a factor h of g.
fn coefficient_bound(g: &[BigInt]) -> BigInt {
    let norm_sq: BigInt = g.iter().map(|c| c * c).sum();
    let norm = norm_sq.sqrt() + 1;
    g.last().unwrap().abs() * (BigInt::one() << (g.len() - 1)) * norm
}

fn to_ints(p: &Poly<u64>) -> Vec<BigInt> {
    p.coeffs().iter().map(|&c| BigInt::from(c)).collect()
}

fn int_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn int_sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let len = a.len().max(b.len());
    (0..len)
        .map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default())
        .collect()
}

fn reduce_nonneg(v: &mut [BigInt], m: &BigInt) {
    for c in v.iter_mut() {
        *c = c.mod_floor(m);
    }
}

/// Lifts the monic factorization g ≡ lc · ∏ u_i (mod p) to modulus p^exponent.
/// Returns monic lifts, one per input factor.
fn hensel_lift(g: &[BigInt], factors: &[Poly<u64>], fp: &FiniteField, exponent: u32) -> Vec<Vec<BigInt>> {
    let p = BigInt::from(fp.p());
    let big_p = p.pow(exponent);
    let lc = g.last().unwrap().clone();
    let mut current = g.to_vec();
    let mut out = Vec::with_capacity(factors.len());
    for i in 0..factors.len() - 1 {
        let g0 = factors[i].clone();
        let h0 = factors[i + 1..]
            .iter()
            .fold(Poly::constant(fp, fp.from_bigint(&lc)), |acc, u| acc.mul(u, fp));
        let (one, s, t) = g0.xgcd(&h0, fp);
        debug_assert_eq!(one.degree(), Some(0));
        let (mut gl, mut hl) = (to_ints(&g0), to_ints(&h0));
        let mut m = p.clone();
        for _ in 1..exponent {
            let diff = int_sub(&current, &int_mul(&gl, &hl));
            let e = Poly::new(fp, diff.iter().map(|c| fp.from_bigint(&(c / &m))).collect());
            let (quot, dg) = t.mul(&e, fp).divmod(&g0, fp);
            let dh = s.mul(&e, fp).add(&quot.mul(&h0, fp), fp);
            gl = add_scaled(&gl, &dg, &m);
            hl = add_scaled(&hl, &dh, &m);
            m *= &p;
        }
        reduce_nonneg(&mut gl, &big_p);
        reduce_nonneg(&mut hl, &big_p);
        out.push(gl);
        current = hl;
    }
    let lc_inv = BigInt::from(fp.inv(&fp.from_bigint(&lc)).unwrap());
    let lc_inv = lift_inverse(&lc, &lc_inv, &big_p);
    let mut last: Vec<BigInt> = current.iter().map(|c| c * &lc_inv).collect();
    reduce_nonneg(&mut last, &big_p);
    out.push(last);
    out
}

fn add_scaled(a: &[BigInt], d: &Poly<u64>, m: &BigInt) -> Vec<BigInt> {
    let len = a.len().max(d.coeffs().len());
    (0..len)
        .map(|i| a.get(i).cloned().unwrap_or_default() + m * BigInt::from(d.coeffs().get(i).copied().unwrap_or(0)))
        .collect()
}

/// Inverse of `a` modulo `m` given an inverse modulo p, by Newton iteration.
fn lift_inverse(a: &BigInt, inv_p: &BigInt, m: &BigInt) -> BigInt {
    let mut x = inv_p.clone();
    loop {
        let check = (a * &x).mod_floor(m);
        if check.is_one() {
            return x;
        }
        x = (&x * (BigInt::from(2) - a * &x)).mod_floor(m);
    }
}

fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// Searches subsets of at most half the lifted factors for a true divisor of g.
fn has_true_factor(g: &[BigInt], lifted: &[Vec<BigInt>], modulus: &BigInt) -> bool {
    let q = Rationals;
    let lc = g.last().unwrap().clone();
    let target = Poly::new(&q, g.iter().map(|c| BigRational::from_integer(c.clone())).collect());
    let r = lifted.len();
    for size in 1..=r / 2 {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let mut cand = vec![lc.clone()];
            for &i in &idx {
                cand = int_mul(&cand, &lifted[i]);
                reduce_nonneg(&mut cand, modulus);
            }
            let cand: Vec<BigInt> = cand.iter().map(|c| symmetric(c, modulus)).collect();
            let cand = primitive_part(cand);
            let divisor = Poly::new(&q, cand.into_iter().map(BigRational::from_integer).collect());
            if divisor.degree().is_some_and(|d| d > 0) && target.rem(&divisor, &q).is_zero() {
                return true;
            }
            // next combination in lexicographic order
            let mut k = size;
            while k > 0 && idx[k - 1] == r - size + k - 1 {
                k -= 1;
            }
            if k == 0 {
                break;
            }
            idx[k - 1] += 1;
            for j in k..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qpoly(c: &[i64]) -> Poly<BigRational> {
        Poly::from_ints(&Rationals, c)
    }

    #[test]
    fn small_cases() {
        assert!(is_irreducible_over_q(&qpoly(&[-1, -1, 1])).unwrap());
        assert!(is_irreducible_over_q(&qpoly(&[0, 1])).unwrap());
        assert!(!is_irreducible_over_q(&qpoly(&[-1, 0, 1])).unwrap());
        assert!(!is_irreducible_over_q(&qpoly(&[0, 1, 1])).unwrap());
        assert!(is_irreducible_over_q(&qpoly(&[1, 0, 1])).unwrap());
        assert!(!is_irreducible_over_q(&qpoly(&[7])).unwrap());
        let big = Poly::monomial(&Rationals, BigRational::one(), 65);
        assert!(matches!(is_irreducible_over_q(&big), Err(Error::DegreeLimit { .. })));
    }

    #[test]
    fn swinnerton_dyer_needs_recombination() {
        // x^4 − 10x^2 + 1 is irreducible over ℚ but splits into degree ≤ 2 factors mod every prime
        assert!(is_irreducible_over_q(&qpoly(&[1, 0, -10, 0, 1])).unwrap());
        // (x^2 − 2)(x^2 − 3): reducible, factor degrees mod p look the same
        assert!(!is_irreducible_over_q(&qpoly(&[6, 0, -5, 0, 1])).unwrap());
    }

    #[test]
    fn products_of_irreducibles_are_reducible() {
        let q = Rationals;
        let a = qpoly(&[3, -1, 0, 2]);
        let b = qpoly(&[-5, 2, 7, 0, 1, 1]);
        assert!(is_irreducible_over_q(&a).unwrap());
        assert!(!is_irreducible_over_q(&a.mul(&b, &q)).unwrap());
        let c = qpoly(&[1, 1, 1, 1, 1, 1, 1]);
        assert!(is_irreducible_over_q(&c).unwrap());
        let d = qpoly(&[-2, 0, 0, 0, 0, 0, 0, 0, 1]);
        assert!(is_irreducible_over_q(&d).unwrap());
        assert!(!is_irreducible_over_q(&c.mul(&d, &q)).unwrap());
        // rational coefficients are cleared first
        let e = Poly::parse(&q, "1/2 - 1/3*x + x^2").unwrap();
        assert!(is_irreducible_over_q(&e).unwrap());
    }

    #[test]
    fn cyclotomic_polynomials_are_irreducible() {
        for n in 1..40u64 {
            let phi = crate::exactfield::cyclotomic_polynomial(n);
            assert!(is_irreducible_over_q(&phi).unwrap(), "Phi_{n}");
        }
        let q = Rationals;
        let x12 = qpoly(&[-1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
        assert!(!is_irreducible_over_q(&x12.div_exact(&qpoly(&[-1, 1]), &q).unwrap()).unwrap());
    }
}
