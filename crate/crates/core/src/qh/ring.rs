use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use super::rules::{giambelli_expand, pieri_terms, Monomial};
use crate::diagram::{GrContext, YoungDiagram};
use crate::error::Result;
use crate::mpoly::IntPoly;

/// An integer combination of monomials q^m σ_D.
pub type IntClass = BTreeMap<Monomial, i128>;

fn add_into(acc: &mut IntClass, m: Monomial, c: i128) {
    if c == 0 {
        return;
    }
    let v = acc.entry(m.clone()).or_insert(0);
    *v = v.checked_add(c).expect("integer structure constant overflow");
    if *v == 0 {
        acc.remove(&m);
    }
}

/// Read-mostly memo table: lookups take the read lock, a miss computes outside any
/// lock and the first writer wins.
struct Memo<K, V> {
    map: RwLock<HashMap<K, Arc<V>>>,
}

impl<K: Eq + Hash + Clone, V> Memo<K, V> {
    fn new() -> Self {
        Self { map: RwLock::new(HashMap::new()) }
    }

    fn get_or_compute(&self, key: &K, compute: impl FnOnce() -> Result<V>) -> Result<Arc<V>> {
        if let Some(v) = self.map.read().unwrap().get(key) {
            return Ok(v.clone());
        }
        let v = Arc::new(compute()?);
        let mut w = self.map.write().unwrap();
        Ok(w.entry(key.clone()).or_insert(v).clone())
    }
}

/// Integer structure constants of QH*(Gr(k,n)), shared by every coefficient field.
///
/// The quantum Pieri and Giambelli rules have integer coefficients, so products are
/// computed once over ℤ and then mapped into the working field.
pub struct SchubertRing {
    ctx: GrContext,
    pieri: Memo<(u32, YoungDiagram), Vec<Monomial>>,
    giambelli: Memo<YoungDiagram, IntPoly>,
    products: Memo<(YoungDiagram, YoungDiagram), IntClass>,
}

impl SchubertRing {
    pub fn new(ctx: GrContext) -> Self {
        Self { ctx, pieri: Memo::new(), giambelli: Memo::new(), products: Memo::new() }
    }

    /// The process-wide instance for `ctx`.
    pub fn shared(ctx: GrContext) -> Arc<SchubertRing> {
        static REGISTRY: OnceLock<Mutex<HashMap<GrContext, Arc<SchubertRing>>>> = OnceLock::new();
        let reg = REGISTRY.get_or_init(|| Mutex::new(HashMap::new()));
        reg.lock().unwrap().entry(ctx).or_insert_with(|| Arc::new(SchubertRing::new(ctx))).clone()
    }

    pub fn ctx(&self) -> &GrContext {
        &self.ctx
    }

    pub fn pieri(&self, j: u32, d: &YoungDiagram) -> Result<Arc<Vec<Monomial>>> {
        self.pieri.get_or_compute(&(j, d.clone()), || pieri_terms(&self.ctx, j, d))
    }

    pub fn giambelli(&self, d: &YoungDiagram) -> Result<Arc<IntPoly>> {
        self.giambelli.get_or_compute(d, || giambelli_expand(&self.ctx, d))
    }

    /// x_j ∗ c.
    pub fn pieri_class(&self, j: u32, c: &IntClass) -> Result<IntClass> {
        let mut out = IntClass::new();
        for (m, coef) in c {
            for t in self.pieri(j, &m.diagram)?.iter() {
                add_into(&mut out, Monomial::new(m.q + t.q, t.diagram.clone()), *coef);
            }
        }
        Ok(out)
    }

    /// P(x_1, ..., x_k) ∗ c by nested Horner evaluation.
    pub fn apply_poly(&self, p: &IntPoly, c: &IntClass) -> Result<IntClass> {
        if let Some(k) = p.as_constant() {
            let mut out = IntClass::new();
            for (m, v) in c {
                add_into(&mut out, m.clone(), v.checked_mul(k).expect("integer structure constant overflow"));
            }
            return Ok(out);
        }
        let j = (1..=p.nvars())
            .rev()
            .find(|&j| p.terms().keys().any(|e| e[j - 1] > 0))
            .expect("non-constant polynomial has a variable");
        let parts = p.horner_parts(j);
        let mut acc = self.apply_poly(parts.last().unwrap(), c)?;
        for part in parts.iter().rev().skip(1) {
            acc = self.pieri_class(j as u32, &acc)?;
            if !part.is_zero() {
                for (m, v) in self.apply_poly(part, c)? {
                    add_into(&mut acc, m, v);
                }
            }
        }
        Ok(acc)
    }

    /// σ_A ∗ σ_B over ℤ, cached under the unordered pair.
    pub fn product(&self, a: &YoungDiagram, b: &YoungDiagram) -> Result<Arc<IntClass>> {
        self.ctx.check(a)?;
        self.ctx.check(b)?;
        let key = if a <= b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
        self.products.get_or_compute(&key, || {
            let poly = self.giambelli(&key.0)?;
            let start = IntClass::from([(Monomial::new(0, key.1.clone()), 1)]);
            self.apply_poly(&poly, &start)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dg(s: &str) -> YoungDiagram {
        s.parse().unwrap()
    }

    #[test]
    fn giambelli_recovers_schubert_classes() {
        // applying the expansion of σ_D to σ_∅ gives back σ_D exactly
        for (k, n) in [(2, 5), (3, 6), (2, 7), (3, 7), (4, 8)] {
            let ctx = GrContext::new(k, n).unwrap();
            let ring = SchubertRing::new(ctx);
            for d in crate::diagram::enumerate_diagrams(&ctx) {
                let got = ring.product(&d, &YoungDiagram::empty()).unwrap();
                assert_eq!(*got, IntClass::from([(Monomial::new(0, d.clone()), 1)]), "{d} in {ctx}");
            }
        }
    }

    #[test]
    fn worked_example() {
        let ring = SchubertRing::new(GrContext::new(3, 6).unwrap());
        let p = ring.product(&dg("1,1"), &dg("3,1")).unwrap();
        let expect = IntClass::from([(Monomial::new(0, dg("3,2,1")), 1), (Monomial::new(1, dg("-")), 1)]);
        assert_eq!(*p, expect);
    }

    #[test]
    fn shared_registry_reuses_instances() {
        let ctx = GrContext::new(2, 6).unwrap();
        assert!(Arc::ptr_eq(&SchubertRing::shared(ctx), &SchubertRing::shared(ctx)));
    }
}
