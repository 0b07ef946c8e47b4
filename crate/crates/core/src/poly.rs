//! Monomials, monomial orders and sparse polynomials over a [`Field`].
//!
//! The binomial edge ring of a graph on `n` vertices has `2n` variables;
//! index `i - 1` is `x_i` and index `n + i - 1` is `y_i`, so the variable
//! precedence `x_1 > ... > x_n > y_1 > ... > y_n` is plain index order.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::Field;
use crate::graph::Graph;

/// Hard cap on the number of ring variables.
pub const MAX_VARS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomial uses variable {var} but the ring has {nvars} variables")]
    RingMismatch { var: usize, nvars: usize },
    #[error("ring with {0} variables exceeds the limit of {MAX_VARS}")]
    TooManyVariables(usize),
    #[error("leading term of the zero polynomial")]
    ZeroPolynomial,
}

/// Exponent vector with cached total degree. Unused trailing slots are zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u8; MAX_VARS],
    deg: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { exps: [0; MAX_VARS], deg: 0 }
    }

    pub fn var(i: usize) -> Self {
        let mut m = Self::one();
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    pub fn from_exponents(exps: &[u8]) -> Self {
        assert!(exps.len() <= MAX_VARS);
        let mut m = Self::one();
        m.exps[..exps.len()].copy_from_slice(exps);
        m.deg = exps.iter().map(|&e| e as u32).sum();
        m
    }

    pub fn exp(&self, i: usize) -> u8 {
        self.exps[i]
    }

    pub fn exponents(&self) -> &[u8; MAX_VARS] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    /// Bit `i` set iff variable `i` occurs.
    pub fn support(&self) -> u64 {
        let mut s = 0u64;
        for (i, &e) in self.exps.iter().enumerate() {
            if e != 0 {
                s |= 1 << i;
            }
        }
        s
    }

    /// Highest variable index occurring plus one (0 for the unit monomial).
    pub fn var_span(&self) -> usize {
        self.exps.iter().rposition(|&e| e != 0).map_or(0, |i| i + 1)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for (a, &b) in m.exps.iter_mut().zip(other.exps.iter()) {
            *a = a.checked_add(b).expect("exponent overflow");
        }
        m.deg += other.deg;
        m
    }

    pub fn mul_var(&self, i: usize) -> Monomial {
        let mut m = *self;
        m.exps[i] = m.exps[i].checked_add(1).expect("exponent overflow");
        m.deg += 1;
        m
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let mut m = *self;
        for (a, &b) in m.exps.iter_mut().zip(other.exps.iter()) {
            *a -= b;
        }
        m.deg -= other.deg;
        Some(m)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        let mut deg = 0;
        for (a, &b) in m.exps.iter_mut().zip(other.exps.iter()) {
            *a = (*a).max(b);
            deg += *a as u32;
        }
        m.deg = deg;
        m
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Moves every exponent up by `k` slots (prepends `k` variables).
    pub fn shift_up(&self, k: usize) -> Monomial {
        assert!(self.var_span() + k <= MAX_VARS, "shift exceeds variable cap");
        let mut m = Monomial::one();
        m.exps[k..].copy_from_slice(&self.exps[..MAX_VARS - k]);
        m.deg = self.deg;
        m
    }

    /// Inverse of [`shift_up`](Self::shift_up); the dropped slots must be zero.
    pub fn shift_down(&self, k: usize) -> Monomial {
        debug_assert!(self.exps[..k].iter().all(|&e| e == 0));
        let mut m = Monomial::one();
        m.exps[..MAX_VARS - k].copy_from_slice(&self.exps[k..]);
        m.deg = self.deg;
        m
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let span = self.var_span();
        write!(f, "{:?}", &self.exps[..span])
    }
}

/// Monomial orders. Variables are always ranked by index, index 0 highest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    Lex,
    DegRevLex,
    /// Degree reverse lexicographic on the first `block` variables, ties
    /// broken by degree reverse lexicographic on the rest. Eliminates the
    /// first block.
    Elimination { block: usize },
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::DegRevLex => a.deg.cmp(&b.deg).then_with(|| revlex(a, b, 0, MAX_VARS)),
            MonomialOrder::Elimination { block } => {
                let da: u32 = a.exps[..block].iter().map(|&e| e as u32).sum();
                let db: u32 = b.exps[..block].iter().map(|&e| e as u32).sum();
                da.cmp(&db)
                    .then_with(|| revlex(a, b, 0, block))
                    .then_with(|| (a.deg - da).cmp(&(b.deg - db)))
                    .then_with(|| revlex(a, b, block, MAX_VARS))
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::DegRevLex => "degrevlex".into(),
            MonomialOrder::Elimination { block } => format!("elim{block}"),
        }
    }
}

/// Reverse lexicographic tie-break on `lo..hi`: the monomial with the smaller
/// exponent in the last differing variable is larger.
fn revlex(a: &Monomial, b: &Monomial, lo: usize, hi: usize) -> Ordering {
    for i in (lo..hi).rev() {
        if a.exps[i] != b.exps[i] {
            return b.exps[i].cmp(&a.exps[i]);
        }
    }
    Ordering::Equal
}

/// Terms in strictly descending monomial order, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<E> {
    terms: Vec<(Monomial, E)>,
}

impl<E: fmt::Debug> fmt::Debug for Polynomial<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.terms.iter()).finish()
    }
}

impl<E> Polynomial<E> {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, E)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Leading monomial under the ordering the polynomial was built with.
    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coefficient(&self) -> Option<&E> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].0.degree() == w[1].0.degree())
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn var_span(&self) -> usize {
        self.terms.iter().map(|(m, _)| m.var_span()).max().unwrap_or(0)
    }

    pub(crate) fn pop_leading(&mut self) -> Option<(Monomial, E)> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    /// Terms must already be strictly descending in the target order.
    pub(crate) fn from_sorted_terms(terms: Vec<(Monomial, E)>) -> Self {
        Polynomial { terms }
    }
}

/// A polynomial ring `K[v_0, ..., v_{k-1}]` with a fixed monomial order.
#[derive(Debug, Clone)]
pub struct PolyRing<F: Field> {
    field: F,
    nvars: usize,
    order: MonomialOrder,
    names: Vec<String>,
}

impl<F: Field> PolyRing<F> {
    pub fn new(field: F, names: Vec<String>, order: MonomialOrder) -> Result<Self, PolyError> {
        if names.len() > MAX_VARS {
            return Err(PolyError::TooManyVariables(names.len()));
        }
        Ok(PolyRing { field, nvars: names.len(), order, names })
    }

    /// `K[x_1..x_n, y_1..y_n]` for a graph on `n` vertices.
    pub fn binomial_edge_ring(field: F, n: usize, order: MonomialOrder) -> Result<Self, PolyError> {
        let names = (1..=n)
            .map(|i| format!("x{i}"))
            .chain((1..=n).map(|i| format!("y{i}")))
            .collect();
        Self::new(field, names, order)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// The same ring under another order.
    pub fn with_order(&self, order: MonomialOrder) -> Self {
        PolyRing { order, ..self.clone() }
    }

    /// Prepends `extra` variables with the given names.
    pub fn extended(&self, extra: &[&str], order: MonomialOrder) -> Result<Self, PolyError> {
        let names = extra.iter().map(|s| s.to_string()).chain(self.names.iter().cloned()).collect();
        Self::new(self.field.clone(), names, order)
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b)
    }

    /// Checks that `f` lives in this ring and is sorted for its order.
    pub fn check(&self, f: &Polynomial<F::Elem>) -> Result<(), PolyError> {
        let span = f.var_span();
        if span > self.nvars {
            return Err(PolyError::RingMismatch { var: span - 1, nvars: self.nvars });
        }
        debug_assert!(f.terms.windows(2).all(|w| self.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        Ok(())
    }

    pub fn zero(&self) -> Polynomial<F::Elem> {
        Polynomial::zero()
    }

    pub fn constant(&self, c: F::Elem) -> Polynomial<F::Elem> {
        self.term(Monomial::one(), c)
    }

    pub fn one(&self) -> Polynomial<F::Elem> {
        self.constant(self.field.one())
    }

    pub fn term(&self, m: Monomial, c: F::Elem) -> Polynomial<F::Elem> {
        if self.field.is_zero(&c) {
            Polynomial::zero()
        } else {
            Polynomial { terms: vec![(m, c)] }
        }
    }

    pub fn var(&self, i: usize) -> Polynomial<F::Elem> {
        assert!(i < self.nvars, "variable {i} outside ring");
        self.term(Monomial::var(i), self.field.one())
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(&self, terms: impl IntoIterator<Item = (Monomial, F::Elem)>) -> Polynomial<F::Elem> {
        let mut terms: Vec<_> = terms.into_iter().collect();
        terms.sort_by(|a, b| self.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, F::Elem)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = self.field.add(lc, &c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !self.field.is_zero(c));
        Polynomial { terms: out }
    }

    /// Re-sorts a polynomial produced under a different order.
    pub fn resort(&self, f: &Polynomial<F::Elem>) -> Polynomial<F::Elem> {
        let mut terms = f.terms.clone();
        terms.sort_by(|a, b| self.cmp(&b.0, &a.0));
        Polynomial { terms }
    }

    pub fn leading_term<'a>(
        &self,
        f: &'a Polynomial<F::Elem>,
    ) -> Result<(&'a Monomial, &'a F::Elem), PolyError> {
        f.terms.first().map(|(m, c)| (m, c)).ok_or(PolyError::ZeroPolynomial)
    }

    /// `f + c * m * g`, merging in one pass.
    pub fn add_scaled(
        &self,
        f: &Polynomial<F::Elem>,
        c: &F::Elem,
        m: &Monomial,
        g: &Polynomial<F::Elem>,
    ) -> Polynomial<F::Elem> {
        let k = &self.field;
        if k.is_zero(c) {
            return f.clone();
        }
        let mut out = Vec::with_capacity(f.terms.len() + g.terms.len());
        let mut a = f.terms.iter().peekable();
        let mut b = g.terms.iter().map(|(gm, gc)| (gm.mul(m), k.mul(gc, c))).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some((am, _)), Some((bm, _))) => match self.cmp(am, bm) {
                    Ordering::Greater => out.push(a.next().expect("peeked").clone()),
                    Ordering::Less => out.push(b.next().expect("peeked")),
                    Ordering::Equal => {
                        let (am, ac) = a.next().expect("peeked");
                        let (_, bc) = b.next().expect("peeked");
                        let s = k.add(ac, &bc);
                        if !k.is_zero(&s) {
                            out.push((*am, s));
                        }
                    }
                },
                (Some(_), None) => out.push(a.next().expect("peeked").clone()),
                (None, Some(_)) => out.push(b.next().expect("peeked")),
                (None, None) => break,
            }
        }
        Polynomial { terms: out }
    }

    pub fn add(&self, f: &Polynomial<F::Elem>, g: &Polynomial<F::Elem>) -> Polynomial<F::Elem> {
        self.add_scaled(f, &self.field.one(), &Monomial::one(), g)
    }

    pub fn sub(&self, f: &Polynomial<F::Elem>, g: &Polynomial<F::Elem>) -> Polynomial<F::Elem> {
        self.add_scaled(f, &self.field.neg(&self.field.one()), &Monomial::one(), g)
    }

    pub fn neg(&self, f: &Polynomial<F::Elem>) -> Polynomial<F::Elem> {
        self.scale(f, &self.field.neg(&self.field.one()))
    }

    pub fn scale(&self, f: &Polynomial<F::Elem>, c: &F::Elem) -> Polynomial<F::Elem> {
        if self.field.is_zero(c) {
            return Polynomial::zero();
        }
        Polynomial { terms: f.terms.iter().map(|(m, a)| (*m, self.field.mul(a, c))).collect() }
    }

    pub fn mul_term(&self, f: &Polynomial<F::Elem>, m: &Monomial, c: &F::Elem) -> Polynomial<F::Elem> {
        if self.field.is_zero(c) {
            return Polynomial::zero();
        }
        Polynomial { terms: f.terms.iter().map(|(fm, a)| (fm.mul(m), self.field.mul(a, c))).collect() }
    }

    pub fn mul(&self, f: &Polynomial<F::Elem>, g: &Polynomial<F::Elem>) -> Polynomial<F::Elem> {
        g.terms
            .iter()
            .fold(Polynomial::zero(), |acc, (m, c)| self.add_scaled(&acc, c, m, f))
    }

    pub fn pow(&self, f: &Polynomial<F::Elem>, e: u32) -> Polynomial<F::Elem> {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, f))
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self, f: &Polynomial<F::Elem>) -> Polynomial<F::Elem> {
        match f.leading_coefficient() {
            None => Polynomial::zero(),
            Some(c) if self.field.is_one(c) => f.clone(),
            Some(c) => self.scale(f, &self.field.inv(c)),
        }
    }

    /// Maps a polynomial of this ring into `target` after prepending `k`
    /// variables (see [`Monomial::shift_up`]).
    pub fn embed_shifted(&self, f: &Polynomial<F::Elem>, k: usize, target: &PolyRing<F>) -> Polynomial<F::Elem> {
        target.from_terms(f.terms.iter().map(|(m, c)| (m.shift_up(k), c.clone())))
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for i in 0..m.var_span() {
            match m.exp(i) {
                0 => {}
                1 => parts.push(self.names[i].clone()),
                e => parts.push(format!("{}^{}", self.names[i], e)),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    /// Human-readable form such as `x1*y2 - x2*y1`.
    pub fn format(&self, f: &Polynomial<F::Elem>) -> String {
        if f.is_zero() {
            return "0".into();
        }
        let k = &self.field;
        let mut out = String::new();
        for (idx, (m, c)) in f.terms.iter().enumerate() {
            let negative = k.is_negative(c);
            let magnitude = if negative { k.neg(c) } else { c.clone() };
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono = self.format_monomial(m);
            if k.is_one(&magnitude) {
                out.push_str(&mono);
            } else if mono == "1" {
                out.push_str(&k.render(&magnitude));
            } else {
                out.push_str(&format!("{}*{}", k.render(&magnitude), mono));
            }
        }
        out
    }
}

/// Variable index of `x_i` in the binomial edge ring.
pub fn x_var(i: usize) -> usize {
    i - 1
}

/// Variable index of `y_i` in the binomial edge ring of an `n`-vertex graph.
pub fn y_var(n: usize, i: usize) -> usize {
    n + i - 1
}

/// `x_i y_j - x_j y_i` for `i < j`.
pub fn edge_binomial<F: Field>(ring: &PolyRing<F>, n: usize, i: usize, j: usize) -> Polynomial<F::Elem> {
    let (i, j) = (i.min(j), i.max(j));
    let k = ring.field();
    let a = Monomial::var(x_var(i)).mul(&Monomial::var(y_var(n, j)));
    let b = Monomial::var(x_var(j)).mul(&Monomial::var(y_var(n, i)));
    ring.from_terms([(a, k.one()), (b, k.neg(&k.one()))])
}

/// Generators of `J_G`, one per edge in canonical edge order.
pub fn binomial_edge_generators<F: Field>(ring: &PolyRing<F>, g: &Graph) -> Vec<Polynomial<F::Elem>> {
    assert!(ring.nvars() >= 2 * g.n(), "ring too small for graph");
    g.edges().iter().map(|&(i, j)| edge_binomial(ring, g.n(), i, j)).collect()
}
