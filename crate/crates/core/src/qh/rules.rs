//! The combinatorial rules: quantum Pieri for the column classes x_j, its transpose
//! for the row classes, and the Giambelli determinant.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::diagram::{GrContext, YoungDiagram};
use crate::error::{Error, Result};
use crate::mpoly::IntPoly;

/// q^q σ_D, the additive basis of QH*(Gr(k,n)) over F[q, q^{-1}].
///
/// Ordered by q-power first, then by the canonical diagram order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial {
    pub q: i32,
    pub diagram: YoungDiagram,
}

impl Monomial {
    pub fn new(q: i32, diagram: YoungDiagram) -> Self {
        Self { q, diagram }
    }

    pub fn degree(&self, ctx: &GrContext) -> i64 {
        self.diagram.size() as i64 + ctx.n() as i64 * self.q as i64
    }
}

/// Choices of `count` rows among `rows.len()` to change by `delta` (±1) such that
/// the result is still weakly decreasing, non-negative and at most `width`.
fn strip_moves(rows: &[u32], count: usize, delta: i32, width: u32) -> Vec<Vec<u32>> {
    fn rec(rows: &[u32], i: usize, left: usize, delta: i32, width: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == rows.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if rows.len() - i < left {
            return;
        }
        for change in [false, true] {
            if change && left == 0 {
                continue;
            }
            let v = rows[i] as i64 + if change { delta as i64 } else { 0 };
            if v < 0 || v > width as i64 {
                continue;
            }
            let v = v as u32;
            if i > 0 && v > cur[i - 1] {
                continue;
            }
            cur.push(v);
            rec(rows, i + 1, left - usize::from(change), delta, width, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(rows, 0, count, delta, width, &mut Vec::with_capacity(rows.len()), &mut out);
    out
}

/// x_j ∗ σ_D as a list of monomials, each with coefficient one.
///
/// Classical terms add a vertical strip of j boxes. When the top row is full,
/// quantum terms delete it, shift the remaining rows up, and remove a vertical strip
/// of k − j further boxes; each survivor contributes q·σ.
pub fn pieri_terms(ctx: &GrContext, j: u32, d: &YoungDiagram) -> Result<Vec<Monomial>> {
    let k = ctx.k();
    if j == 0 || j > k {
        return Err(Error::IndexOutOfRange { index: j, max: k });
    }
    ctx.check(d)?;
    let rows: Vec<u32> = (0..k as usize).map(|i| d.row_len(i)).collect();
    let mut out: Vec<Monomial> = strip_moves(&rows, j as usize, 1, ctx.cols())
        .into_iter()
        .map(|r| Monomial::new(0, YoungDiagram::from_rows_unchecked(r)))
        .collect();
    if rows[0] == ctx.cols() {
        let rest = &rows[1..];
        for r in strip_moves(rest, (k - j) as usize, -1, ctx.cols()) {
            out.push(Monomial::new(1, YoungDiagram::from_rows_unchecked(r)));
        }
    }
    out.sort();
    Ok(out)
}

/// V_{j,0} ∗ σ_D (the single-row class) through the transposition Gr(k,n) ≅ Gr(n−k,n).
pub fn transposed_pieri_terms(ctx: &GrContext, j: u32, d: &YoungDiagram) -> Result<Vec<Monomial>> {
    if j == 0 || j > ctx.cols() {
        return Err(Error::IndexOutOfRange { index: j, max: ctx.cols() });
    }
    ctx.check(d)?;
    let dual = ctx.dual()?;
    let mut out: Vec<Monomial> = pieri_terms(&dual, j, &d.transpose())?
        .into_iter()
        .map(|m| Monomial::new(m.q, m.diagram.transpose()))
        .collect();
    out.sort();
    Ok(out)
}

/// σ_D = det(x_{λ'_i − i + j}) over the column lengths λ' of D, with x_0 = 1 and
/// x_m = 0 outside 0..=k, expanded as an integer polynomial in x_1..x_k.
pub fn giambelli_expand(ctx: &GrContext, d: &YoungDiagram) -> Result<IntPoly> {
    ctx.check(d)?;
    let k = ctx.k() as usize;
    let cols = d.columns();
    let r = cols.len();
    if r > 128 {
        return Err(Error::Unsupported(format!("Giambelli determinant of size {r}")));
    }
    // banded permutation expansion: the state is the set of columns used so far
    let mut states: HashMap<u128, IntPoly> = HashMap::from([(0u128, IntPoly::one(k))]);
    for (i, &c) in cols.iter().enumerate() {
        let lo = i as i64 - c as i64;
        let hi = lo + k as i64;
        let next_lo = cols.get(i + 1).map_or(r as i64, |&c2| i as i64 + 1 - c2 as i64);
        let mut next: HashMap<u128, IntPoly> = HashMap::new();
        for (mask, poly) in &states {
            for col in lo.max(0)..=hi.min(r as i64 - 1) {
                let bit = 1u128 << col;
                if mask & bit != 0 {
                    continue;
                }
                let new_mask = mask | bit;
                if next_lo > 0 {
                    let need = if next_lo >= 128 { u128::MAX } else { (1u128 << next_lo) - 1 };
                    if new_mask & need != need {
                        continue;
                    }
                }
                let inversions = (mask >> (col + 1)).count_ones();
                let entry = IntPoly::var(k, c as i64 - i as i64 + col);
                let mut term = poly.mul(&entry);
                if inversions % 2 == 1 {
                    term = term.scale(-1);
                }
                next.entry(new_mask)
                    .and_modify(|p| *p = p.add(&term))
                    .or_insert(term);
            }
        }
        states = next;
    }
    let mut total = IntPoly::zero(k);
    for p in states.values() {
        total = total.add(p);
    }
    Ok(total)
}
