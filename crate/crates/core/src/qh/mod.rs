//! The quantum cohomology ring QH*(Gr(k,n); F) ⊗ F[q, q^{-1}].

mod ring;
mod rules;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::RngCore;

pub use ring::{IntClass, SchubertRing};
pub use rules::{giambelli_expand, pieri_terms, transposed_pieri_terms, Monomial};

use crate::diagram::{graded_basis, GrContext, YoungDiagram};
use crate::error::{Error, Result};
use crate::exactfield::Field;

/// A quantum cohomology class: finitely many monomials q^m σ_D with nonzero
/// coefficients in the field `F`.
#[derive(Clone)]
pub struct QhElement<F: Field> {
    ring: Arc<SchubertRing>,
    field: F,
    terms: BTreeMap<Monomial, F::Elem>,
}

impl<F: Field> QhElement<F> {
    pub fn zero(ctx: &GrContext, field: &F) -> Self {
        Self { ring: SchubertRing::shared(*ctx), field: field.clone(), terms: BTreeMap::new() }
    }

    /// The unit σ_∅.
    pub fn unit(ctx: &GrContext, field: &F) -> Self {
        Self::sigma(ctx, field, &YoungDiagram::empty()).expect("empty diagram fits")
    }

    pub fn sigma(ctx: &GrContext, field: &F, d: &YoungDiagram) -> Result<Self> {
        Self::from_terms(ctx, field, [(Monomial::new(0, d.clone()), field.one())])
    }

    /// The column class x_j.
    pub fn x(ctx: &GrContext, field: &F, j: u32) -> Result<Self> {
        if j == 0 || j > ctx.k() {
            return Err(Error::IndexOutOfRange { index: j, max: ctx.k() });
        }
        Self::sigma(ctx, field, &YoungDiagram::column(j))
    }

    /// The two-row class V_{a,b}.
    pub fn v(ctx: &GrContext, field: &F, a: u32, b: u32) -> Result<Self> {
        Self::sigma(ctx, field, &YoungDiagram::new(vec![a, b])?)
    }

    pub fn from_terms(
        ctx: &GrContext,
        field: &F,
        terms: impl IntoIterator<Item = (Monomial, F::Elem)>,
    ) -> Result<Self> {
        let mut out = Self::zero(ctx, field);
        for (m, c) in terms {
            ctx.check(&m.diagram)?;
            out.add_term(m, c);
        }
        Ok(out)
    }

    /// Image of an integer class.
    pub fn from_int_class(ctx: &GrContext, field: &F, c: &IntClass) -> Self {
        let mut out = Self::zero(ctx, field);
        for (m, v) in c {
            out.add_term(m.clone(), field.from_bigint(&(*v).into()));
        }
        out
    }

    /// A random combination of the degree-`d` basis.
    pub fn random_homogeneous(ctx: &GrContext, field: &F, d: i64, rng: &mut dyn RngCore) -> Self {
        let mut out = Self::zero(ctx, field);
        for b in graded_basis(ctx, d) {
            let c = field.random(rng);
            out.add_term(Monomial::new(b.q_power, b.diagram), c);
        }
        out
    }

    fn add_term(&mut self, m: Monomial, c: F::Elem) {
        if self.field.is_zero(&c) {
            return;
        }
        match self.terms.get(&m) {
            None => {
                self.terms.insert(m, c);
            }
            Some(old) => {
                let s = self.field.add(old, &c);
                if self.field.is_zero(&s) {
                    self.terms.remove(&m);
                } else {
                    self.terms.insert(m, s);
                }
            }
        }
    }

    pub fn ctx(&self) -> &GrContext {
        self.ring.ctx()
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, F::Elem> {
        &self.terms
    }

    pub fn coefficient(&self, m: &Monomial) -> F::Elem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn same_ctx(&self, other: &Self) -> Result<()> {
        if self.ctx() != other.ctx() {
            return Err(Error::ContextMismatch(format!("{} vs {}", self.ctx(), other.ctx())));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_ctx(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&self.field.neg(&self.field.one()))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let mut out = Self { ring: self.ring.clone(), field: self.field.clone(), terms: BTreeMap::new() };
        for (m, v) in &self.terms {
            out.add_term(m.clone(), self.field.mul(v, c));
        }
        out
    }

    /// Multiplies by q^m.
    pub fn q_shift(&self, m: i32) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(mono, c)| (Monomial::new(mono.q + m, mono.diagram.clone()), c.clone()))
            .collect();
        Self { ring: self.ring.clone(), field: self.field.clone(), terms }
    }

    /// x_j ∗ self by the quantum Pieri rule.
    pub fn pieri_multiply(&self, j: u32) -> Result<Self> {
        if j == 0 || j > self.ctx().k() {
            return Err(Error::IndexOutOfRange { index: j, max: self.ctx().k() });
        }
        let mut out = Self { ring: self.ring.clone(), field: self.field.clone(), terms: BTreeMap::new() };
        for (m, c) in &self.terms {
            for t in self.ring.pieri(j, &m.diagram)?.iter() {
                out.add_term(Monomial::new(m.q + t.q, t.diagram.clone()), c.clone());
            }
        }
        Ok(out)
    }

    /// V_{j,0} ∗ self by the transposed quantum Pieri rule.
    pub fn transposed_pieri_multiply(&self, j: u32) -> Result<Self> {
        if j == 0 || j > self.ctx().cols() {
            return Err(Error::IndexOutOfRange { index: j, max: self.ctx().cols() });
        }
        let mut out = Self { ring: self.ring.clone(), field: self.field.clone(), terms: BTreeMap::new() };
        for (m, c) in &self.terms {
            for t in transposed_pieri_terms(self.ctx(), j, &m.diagram)? {
                out.add_term(Monomial::new(m.q + t.q, t.diagram), c.clone());
            }
        }
        Ok(out)
    }

    /// The quantum product, bilinear over the integer structure constants.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.same_ctx(other)?;
        let f = &self.field;
        let mut out = Self { ring: self.ring.clone(), field: f.clone(), terms: BTreeMap::new() };
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let cab = f.mul(ca, cb);
                for (m, v) in self.ring.product(&ma.diagram, &mb.diagram)?.iter() {
                    let coef = f.mul(&cab, &f.from_bigint(&(*v).into()));
                    out.add_term(Monomial::new(m.q + ma.q + mb.q, m.diagram.clone()), coef);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::unit(self.ctx(), &self.field);
        for _ in 0..e {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// Common degree of all monomials; `None` for zero or inhomogeneous classes.
    pub fn degree(&self) -> Option<i64> {
        let ctx = *self.ctx();
        let mut degs = self.terms.keys().map(|m| m.degree(&ctx));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self, d: i64) -> bool {
        let ctx = *self.ctx();
        self.terms.keys().all(|m| m.degree(&ctx) == d)
    }

    /// Parses "σ[3,1] + q^2*σ[-]"-style text; "s[...]" is accepted for "σ[...]".
    pub fn parse(ctx: &GrContext, field: &F, s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        if chars.is_empty() {
            return Err(Error::Parse("empty element".into()));
        }
        if chars == ['0'] {
            return Ok(Self::zero(ctx, field));
        }
        let mut terms = Vec::new();
        let (mut depth, mut start) = (0i32, 0usize);
        for i in 0..chars.len() {
            match chars[i] {
                '[' | '(' => depth += 1,
                ']' | ')' => depth -= 1,
                '+' | '-' if depth == 0 && i > start && !matches!(chars[i - 1], '^' | '*' | '/' | '+' | '-') => {
                    terms.push(chars[start..i].iter().collect::<String>());
                    start = i;
                }
                _ => {}
            }
        }
        terms.push(chars[start..].iter().collect());
        let mut out = Self::zero(ctx, field);
        for term in terms {
            let (m, c) = parse_term(field, &term)?;
            ctx.check(&m.diagram)?;
            out.add_term(m, c);
        }
        Ok(out)
    }
}

fn parse_term<F: Field>(field: &F, term: &str) -> Result<(Monomial, F::Elem)> {
    let bad = || Error::Parse(format!("bad term {term:?}"));
    let (negative, body) = match term.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, term.strip_prefix('+').unwrap_or(term)),
    };
    let pos = body.find("σ[").or_else(|| body.find("s[")).ok_or_else(bad)?;
    let open = body[pos..].find('[').unwrap() + pos;
    let inner = body[open + 1..].strip_suffix(']').ok_or_else(bad)?;
    let diagram: YoungDiagram = inner.parse()?;
    let mut prefix = &body[..pos];
    let mut coef = field.one();
    let mut q = 0i32;
    while !prefix.is_empty() {
        let (factor, rest) = if prefix.starts_with('(') {
            let close = prefix.find(')').ok_or_else(bad)?;
            (&prefix[1..close], prefix[close + 1..].strip_prefix('*').ok_or_else(bad)?)
        } else {
            let star = prefix.find('*').ok_or_else(bad)?;
            (&prefix[..star], &prefix[star + 1..])
        };
        if let Some(e) = factor.strip_prefix('q') {
            q += match e {
                "" => 1,
                _ => e.strip_prefix('^').and_then(|e| e.parse::<i32>().ok()).ok_or_else(bad)?,
            };
        } else {
            coef = field.mul(&coef, &field.parse(factor)?);
        }
        prefix = rest;
    }
    if negative {
        coef = field.neg(&coef);
    }
    Ok((Monomial::new(q, diagram), coef))
}

impl<F: Field> PartialEq for QhElement<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ctx() == other.ctx() && self.terms == other.terms
    }
}

impl<F: Field> fmt::Debug for QhElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QhElement({}, {})", self.ctx(), self)
    }
}

impl<F: Field> fmt::Display for QhElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let mut s = self.field.format(c);
            let negative = s.starts_with('-') && !s[1..].contains([' ', '+', '-']);
            if negative {
                s.remove(0);
            }
            let coef = if s == "1" {
                String::new()
            } else if s.contains(' ') {
                format!("({s})*")
            } else {
                format!("{s}*")
            };
            let q = match m.q {
                0 => String::new(),
                1 => "q*".to_string(),
                e => format!("q^{e}*"),
            };
            let sep = match (i, negative) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            write!(f, "{sep}{coef}{q}σ[{}]", m.diagram)?;
        }
        Ok(())
    }
}
