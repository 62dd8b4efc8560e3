use std::fmt::Debug;
use std::hash::Hash;

use serde::Serialize;

use super::{Field, Poly};
use crate::error::{Error, Result};

/// Dense square matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SquareMatrix<E> {
    size: usize,
    entries: Vec<E>,
}

impl<E: Clone + PartialEq + Eq + Hash + Debug> SquareMatrix<E> {
    pub fn new(size: usize, entries: Vec<E>) -> Result<Self> {
        if entries.len() != size * size {
            return Err(Error::Unsupported(format!(
                "{} entries cannot fill a {size}×{size} matrix",
                entries.len()
            )));
        }
        Ok(Self { size, entries })
    }

    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let entries = (0..size * size).map(|k| f(k / size, k % size)).collect();
        Self { size, entries }
    }

    pub fn zeros<F: Field<Elem = E>>(f: &F, size: usize) -> Self {
        Self::from_fn(size, |_, _| f.zero())
    }

    pub fn identity<F: Field<Elem = E>>(f: &F, size: usize) -> Self {
        Self::from_fn(size, |i, j| if i == j { f.one() } else { f.zero() })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entries(&self) -> &[E] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.entries[i * self.size + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.entries[i * self.size + j] = v;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[E]> {
        self.entries.chunks(self.size.max(1))
    }

    pub fn map<G: Field>(&self, mut fun: impl FnMut(&E) -> G::Elem) -> SquareMatrix<G::Elem> {
        SquareMatrix { size: self.size, entries: self.entries.iter().map(&mut fun).collect() }
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.entries.iter().all(|e| f.is_zero(e))
    }

    pub fn add<F: Field<Elem = E>>(&self, other: &Self, f: &F) -> Self {
        Self::from_fn(self.size, |i, j| f.add(self.get(i, j), other.get(i, j)))
    }

    pub fn scale<F: Field<Elem = E>>(&self, c: &E, f: &F) -> Self {
        Self { size: self.size, entries: self.entries.iter().map(|e| f.mul(e, c)).collect() }
    }

    pub fn mul<F: Field<Elem = E>>(&self, other: &Self, f: &F) -> Self {
        let n = self.size;
        let mut out = Self::zeros(f, n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..n {
                    let v = f.add(out.get(i, j), &f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// p(M) by Horner's rule.
    pub fn eval_poly<F: Field<Elem = E>>(&self, p: &Poly<E>, f: &F) -> Self {
        let id = Self::identity(f, self.size);
        p.coeffs()
            .iter()
            .rev()
            .fold(Self::zeros(f, self.size), |acc, c| acc.mul(self, f).add(&id.scale(c, f), f))
    }

    pub fn format<F: Field<Elem = E>>(&self, f: &F) -> Vec<Vec<String>> {
        self.rows().map(|r| r.iter().map(|e| f.format(e)).collect()).collect()
    }
}

/// det(M − xI), with leading coefficient (−1)^size, via Hessenberg reduction.
pub fn char_poly<F: Field>(f: &F, m: &SquareMatrix<F::Elem>) -> Poly<F::Elem> {
    let n = m.size();
    let mut h = m.clone();
    // reduce to upper Hessenberg form by similarity transformations
    for c in 0..n.saturating_sub(2) {
        let piv = c + 1;
        let Some(r) = (piv..n).find(|&r| !f.is_zero(h.get(r, c))) else {
            continue;
        };
        if r != piv {
            for j in 0..n {
                let (a, b) = (h.get(r, j).clone(), h.get(piv, j).clone());
                h.set(r, j, b);
                h.set(piv, j, a);
            }
            for i in 0..n {
                let (a, b) = (h.get(i, r).clone(), h.get(i, piv).clone());
                h.set(i, r, b);
                h.set(i, piv, a);
            }
        }
        let pinv = f.inv(h.get(piv, c)).unwrap();
        for i in piv + 1..n {
            let u = f.mul(h.get(i, c), &pinv);
            if f.is_zero(&u) {
                continue;
            }
            for j in 0..n {
                let v = f.sub(h.get(i, j), &f.mul(&u, h.get(piv, j)));
                h.set(i, j, v);
            }
            for k in 0..n {
                let v = f.add(h.get(k, piv), &f.mul(&u, h.get(k, i)));
                h.set(k, piv, v);
            }
        }
    }
    // p_k = det(xI − H_k) for the leading k×k block
    let x = Poly::x(f);
    let mut p: Vec<Poly<F::Elem>> = vec![Poly::one(f)];
    for k in 0..n {
        let mut next = x.sub(&Poly::constant(f, h.get(k, k).clone()), f).mul(&p[k], f);
        let mut sub_prod = f.one();
        for i in (0..k).rev() {
            sub_prod = f.mul(&sub_prod, h.get(i + 1, i));
            if f.is_zero(&sub_prod) {
                break;
            }
            let coef = f.mul(&sub_prod, h.get(i, k));
            next = next.sub(&p[i].scale(&coef, f), f);
        }
        p.push(next);
    }
    let det = p.pop().unwrap();
    if n % 2 == 1 {
        det.neg(f)
    } else {
        det
    }
}

/// Monic minimal polynomial, from the first linear dependency among I, M, M², ….
pub fn min_poly<F: Field>(f: &F, m: &SquareMatrix<F::Elem>) -> Poly<F::Elem> {
    let n = m.size();
    // echelon rows: (vector, combination of powers, pivot column)
    let mut basis: Vec<(Vec<F::Elem>, Vec<F::Elem>, usize)> = Vec::new();
    let mut power = SquareMatrix::identity(f, n);
    for k in 0..=n {
        let mut v = power.entries().to_vec();
        let mut combo = vec![f.zero(); k + 1];
        combo[k] = f.one();
        for (bv, bc, piv) in &basis {
            if f.is_zero(&v[*piv]) {
                continue;
            }
            let factor = f.div(&v[*piv], &bv[*piv]).unwrap();
            for (a, b) in v.iter_mut().zip(bv) {
                *a = f.sub(a, &f.mul(&factor, b));
            }
            for (a, b) in combo.iter_mut().zip(bc) {
                *a = f.sub(a, &f.mul(&factor, b));
            }
        }
        match v.iter().position(|e| !f.is_zero(e)) {
            None => return Poly::new(f, combo),
            Some(piv) => basis.push((v, combo, piv)),
        }
        power = power.mul(m, f);
    }
    unreachable!("Cayley–Hamilton bounds the degree of the minimal polynomial")
}
