//! Young diagrams in the k × (n−k) rectangle indexing the Schubert basis of Gr(k,n).

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The Grassmannian Gr(k, n) of complex k-planes in C^n.
///
/// The minimal Chern number is `n`, which is also the complex degree of `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GrContext {
    k: u32,
    n: u32,
}

impl GrContext {
    pub fn new(k: u32, n: u32) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::InvalidContext { k, n });
        }
        Ok(Self { k, n })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of columns of the rectangle, n − k.
    pub fn cols(&self) -> u32 {
        self.n - self.k
    }

    pub fn minimal_chern_number(&self) -> u32 {
        self.n
    }

    /// Complex dimension k(n−k).
    pub fn dim(&self) -> u32 {
        self.k * (self.n - self.k)
    }

    /// The transposed Grassmannian Gr(n−k, n).
    pub fn dual(&self) -> Result<Self> {
        Self::new(self.n - self.k, self.n)
    }

    /// Representative with n ≥ 2k, using Gr(k,n) ≅ Gr(n−k,n).
    pub fn normalized(&self) -> Self {
        if 2 * self.k > self.n && self.k < self.n {
            Self { k: self.n - self.k, n: self.n }
        } else {
            *self
        }
    }

    pub fn contains(&self, d: &YoungDiagram) -> bool {
        d.rows.len() as u32 <= self.k && d.rows.first().is_none_or(|&r| r <= self.cols())
    }

    pub fn check(&self, d: &YoungDiagram) -> Result<()> {
        if self.contains(d) {
            Ok(())
        } else {
            Err(Error::InvalidDiagram { rows: d.rows.clone(), k: self.k, n: self.n })
        }
    }
}

impl fmt::Display for GrContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gr({},{})", self.k, self.n)
    }
}

/// A partition stored as weakly decreasing row lengths, trailing zeros stripped.
///
/// Ordering is the canonical basis order used everywhere: by size, then by rows in
/// decreasing lexicographic order, so (11) precedes (10,1) precedes (9,2).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct YoungDiagram {
    rows: Vec<u32>,
}

impl YoungDiagram {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a diagram from row lengths; fails unless they are weakly decreasing.
    pub fn new(mut rows: Vec<u32>) -> Result<Self> {
        while rows.last() == Some(&0) {
            rows.pop();
        }
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("rows {rows:?} are not weakly decreasing")));
        }
        Ok(Self { rows })
    }

    pub(crate) fn from_rows_unchecked(mut rows: Vec<u32>) -> Self {
        while rows.last() == Some(&0) {
            rows.pop();
        }
        debug_assert!(rows.windows(2).all(|w| w[0] >= w[1]));
        Self { rows }
    }

    /// The special class x_j: a single column of j boxes.
    pub fn column(j: u32) -> Self {
        Self { rows: vec![1; j as usize] }
    }

    /// A single row of j boxes.
    pub fn row(j: u32) -> Self {
        Self::from_rows_unchecked(vec![j])
    }

    /// The full k × (n−k) rectangle, the class of a point.
    pub fn rectangle(ctx: &GrContext) -> Self {
        Self::from_rows_unchecked(vec![ctx.cols(); ctx.k() as usize])
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    /// Row `i` (0-based), zero past the last row.
    pub fn row_len(&self, i: usize) -> u32 {
        self.rows.get(i).copied().unwrap_or(0)
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn size(&self) -> u32 {
        self.rows.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Column lengths (the conjugate partition).
    pub fn columns(&self) -> Vec<u32> {
        let width = self.row_len(0);
        (0..width)
            .map(|c| self.rows.iter().take_while(|&&r| r > c).count() as u32)
            .collect()
    }

    pub fn transpose(&self) -> Self {
        Self { rows: self.columns() }
    }
}

impl Ord for YoungDiagram {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| other.rows.cmp(&self.rows))
    }
}

impl PartialOrd for YoungDiagram {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return f.write_str("-");
        }
        let parts: Vec<String> = self.rows.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for YoungDiagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "-" || s.is_empty() {
            return Ok(Self::empty());
        }
        let rows = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad row length {t:?} in diagram {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(rows)
    }
}

/// A monomial q^m σ_D of the localized quantum cohomology.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GradedBasisElement {
    pub diagram: YoungDiagram,
    pub q_power: i32,
}

impl GradedBasisElement {
    pub fn degree(&self, ctx: &GrContext) -> i64 {
        self.diagram.size() as i64 + ctx.n() as i64 * self.q_power as i64
    }
}

/// All diagrams in the k × (n−k) rectangle in canonical order; there are binom(n, k).
pub fn enumerate_diagrams(ctx: &GrContext) -> Vec<YoungDiagram> {
    fn rec(rows_left: u32, max_len: u32, prefix: &mut Vec<u32>, out: &mut Vec<YoungDiagram>) {
        out.push(YoungDiagram::from_rows_unchecked(prefix.clone()));
        if rows_left == 0 {
            return;
        }
        for len in 1..=max_len {
            prefix.push(len);
            rec(rows_left - 1, len, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(ctx.k(), ctx.cols(), &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Transposes `d`; the result lives in Gr(n−k, n).
pub fn conjugate(ctx: &GrContext, d: &YoungDiagram) -> Result<YoungDiagram> {
    ctx.check(d)?;
    Ok(d.transpose())
}

/// Basis of the degree-`d` graded piece: all q^m σ_D with |D| + n·m = d.
pub fn graded_basis(ctx: &GrContext, d: i64) -> Vec<GradedBasisElement> {
    let n = ctx.n() as i64;
    enumerate_diagrams(ctx)
        .into_iter()
        .filter_map(|diagram| {
            let rest = d - diagram.size() as i64;
            (rest.rem_euclid(n) == 0).then(|| GradedBasisElement {
                q_power: (rest / n) as i32,
                diagram,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::binomial;

    fn dg(s: &str) -> YoungDiagram {
        s.parse().unwrap()
    }

    #[test]
    fn counts_match_binomials() {
        let ctx = GrContext::new(2, 5).unwrap();
        assert_eq!(enumerate_diagrams(&ctx).len(), 10);
        let ctx = GrContext::new(1, 2).unwrap();
        assert_eq!(enumerate_diagrams(&ctx), vec![dg("-"), dg("1")]);
        // brute force: every weakly decreasing triple in {0..3}^3
        let ctx = GrContext::new(3, 6).unwrap();
        let mut brute = 0;
        for a in 0..=3u32 {
            for b in 0..=a {
                for _c in 0..=b {
                    brute += 1;
                }
            }
        }
        assert_eq!(brute, 20);
        assert_eq!(enumerate_diagrams(&ctx).len(), brute);
        for n in 1..=9 {
            for k in 1..=n {
                let ctx = GrContext::new(k, n).unwrap();
                assert_eq!(enumerate_diagrams(&ctx).len() as u128, binomial(n as u64, k as u64));
            }
        }
    }

    #[test]
    fn conjugation() {
        let ctx = GrContext::new(2, 5).unwrap();
        assert_eq!(conjugate(&ctx, &dg("3,1")).unwrap(), dg("2,1,1"));
        assert_eq!(conjugate(&ctx, &dg("3,2")).unwrap(), dg("2,2,1"));
        let ctx = GrContext::new(3, 6).unwrap();
        assert_eq!(conjugate(&ctx, &dg("-")).unwrap(), dg("-"));
        assert!(conjugate(&ctx, &dg("4")).is_err());
    }

    #[test]
    fn conjugation_is_involutive() {
        for n in 1..=10 {
            for k in 1..n {
                let ctx = GrContext::new(k, n).unwrap();
                let dual = ctx.dual().unwrap();
                for d in enumerate_diagrams(&ctx) {
                    let t = conjugate(&ctx, &d).unwrap();
                    assert!(dual.contains(&t));
                    assert_eq!(conjugate(&dual, &t).unwrap(), d);
                }
            }
        }
    }

    #[test]
    fn graded_pieces_reproduce_standard_bases() {
        let ctx = GrContext::new(2, 13).unwrap();
        let basis: Vec<String> = graded_basis(&ctx, 11)
            .iter()
            .map(|b| {
                assert_eq!(b.q_power, 0);
                b.diagram.to_string()
            })
            .collect();
        assert_eq!(basis, ["11", "10,1", "9,2", "8,3", "7,4", "6,5"]);

        let ctx = GrContext::new(2, 12).unwrap();
        let basis: Vec<String> = graded_basis(&ctx, 10).iter().map(|b| b.diagram.to_string()).collect();
        assert_eq!(basis, ["10", "9,1", "8,2", "7,3", "6,4", "5,5"]);
    }

    #[test]
    fn graded_pieces_partition_the_basis() {
        for n in 1..=9 {
            for k in 1..=n {
                let ctx = GrContext::new(k, n).unwrap();
                let total: usize = (0..n as i64).map(|d| graded_basis(&ctx, d).len()).sum();
                assert_eq!(total as u128, binomial(n as u64, k as u64));
                assert!(graded_basis(&ctx, 0).contains(&GradedBasisElement {
                    diagram: YoungDiagram::empty(),
                    q_power: 0
                }));
                for d in -3..(2 * n as i64) {
                    let shifted: Vec<_> = graded_basis(&ctx, d)
                        .into_iter()
                        .map(|mut b| {
                            b.q_power += 1;
                            b
                        })
                        .collect();
                    assert_eq!(graded_basis(&ctx, d + n as i64), shifted);
                }
            }
        }
    }

    #[test]
    fn text_format() {
        assert_eq!(dg("-"), YoungDiagram::empty());
        assert_eq!(dg("3,1").to_string(), "3,1");
        assert_eq!(dg("2,0").to_string(), "2");
        assert!("1,2".parse::<YoungDiagram>().is_err());
        assert_eq!(YoungDiagram::column(3).to_string(), "1,1,1");
    }
}
