//! Integer polynomials in the special classes x_1..x_k.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::exactfield::Field;

/// Sparse polynomial with `i128` coefficients; exponent vectors have one slot per variable.
///
/// Arithmetic is checked and panics on coefficient overflow.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, i128>,
}

impl IntPoly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: i128) -> Self {
        let mut p = Self::zero(nvars);
        if c != 0 {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    /// x_j with the conventions x_0 = 1 and x_j = 0 outside 0..=nvars.
    pub fn var(nvars: usize, j: i64) -> Self {
        if j == 0 {
            return Self::one(nvars);
        }
        if j < 0 || j as usize > nvars {
            return Self::zero(nvars);
        }
        let mut e = vec![0; nvars];
        e[j as usize - 1] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(e, 1);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, i128> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: i128) {
        if c == 0 {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let v = o.get().checked_add(c).expect("integer coefficient overflow");
                if v == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), *c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, c: i128) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v.checked_mul(c).expect("integer coefficient overflow"));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.checked_mul(*cb).expect("integer coefficient overflow"));
            }
        }
        out
    }

    /// Weighted degree with x_j of degree j; `None` for the zero polynomial or mixed degrees.
    pub fn weighted_degree(&self) -> Option<u32> {
        let mut degs = self
            .terms
            .keys()
            .map(|e| e.iter().enumerate().map(|(i, a)| (i as u32 + 1) * a).sum::<u32>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Substitutes field values for x_1..x_k.
    pub fn eval<F: Field>(&self, f: &F, values: &[F::Elem]) -> F::Elem {
        assert_eq!(values.len(), self.nvars, "one value per variable");
        let mut acc = f.zero();
        for (e, c) in &self.terms {
            let mut term = f.from_bigint(&(*c).into());
            for (v, &a) in values.iter().zip(e) {
                if a > 0 {
                    term = f.mul(&term, &f.pow(v, a as u64));
                }
            }
            acc = f.add(&acc, &term);
        }
        acc
    }

    /// Splits off the powers of variable `j` (1-based): self = Σ_a x_j^a · parts[a].
    pub fn horner_parts(&self, j: usize) -> Vec<IntPoly> {
        let mut parts: Vec<IntPoly> = Vec::new();
        for (e, c) in &self.terms {
            let a = e[j - 1] as usize;
            if parts.len() <= a {
                parts.resize(a + 1, Self::zero(self.nvars));
            }
            let mut rest = e.clone();
            rest[j - 1] = 0;
            parts[a].add_term(rest, *c);
        }
        parts
    }

    /// Constant term, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<i128> {
        match self.terms.len() {
            0 => Some(0),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&a| a == 0).then_some(*c)
            }
            _ => None,
        }
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &a)| a > 0)
                .map(|(i, &a)| if a == 1 { format!("x{}", i + 1) } else { format!("x{}^{a}", i + 1) })
                .collect();
            let mag = c.unsigned_abs();
            let body = match (vars.is_empty(), mag) {
                (true, _) => mag.to_string(),
                (false, 1) => vars.join("*"),
                (false, _) => format!("{mag}*{}", vars.join("*")),
            };
            match (k, *c < 0) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::Rationals;

    #[test]
    fn arithmetic() {
        let x1 = IntPoly::var(2, 1);
        let x2 = IntPoly::var(2, 2);
        let p = x1.mul(&x1).sub(&x2);
        assert_eq!(p.to_string(), "x1^2 - x2");
        assert_eq!(p.weighted_degree(), Some(2));
        assert!(IntPoly::var(2, 3).is_zero());
        assert_eq!(IntPoly::var(2, 0), IntPoly::one(2));
        assert!(p.sub(&p).is_zero());
        let q = Rationals;
        let v = p.eval(&q, &[q.from_i64(3), q.from_i64(4)]);
        assert_eq!(v, q.from_i64(5));
        let parts = p.horner_parts(1);
        assert_eq!(parts.len(), 3);
        assert_eq!(parts[0], x2.scale(-1));
        assert!(parts[1].is_zero());
        assert_eq!(parts[2], IntPoly::one(2));
    }
}
