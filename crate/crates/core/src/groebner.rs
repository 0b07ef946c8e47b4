//! Buchberger's algorithm and the ideal operations built on it.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::field::Field;
use crate::graph::{Graph, VertexSet};
use crate::invariants::internal_vertices;
use crate::poly::{binomial_edge_generators, edge_binomial, x_var, y_var, Monomial, MonomialOrder, PolyRing, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("vertex {0} is not an internal vertex")]
    NotInternal(usize),
    #[error("graph has {0} vertices; at most {1} supported here")]
    TooLarge(usize, usize),
    #[error(transparent)]
    Graph(#[from] crate::graph::GraphError),
    #[error(transparent)]
    Poly(#[from] crate::poly::PolyError),
}

/// An ideal given by generators; zero generators are dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal<E> {
    generators: Vec<Polynomial<E>>,
}

impl<E> Ideal<E> {
    pub fn new(generators: Vec<Polynomial<E>>) -> Self {
        Ideal { generators: generators.into_iter().filter(|g| !g.is_zero()).collect() }
    }

    pub fn generators(&self) -> &[Polynomial<E>] {
        &self.generators
    }
}

/// A reduced Gröbner basis: monic elements sorted by increasing leading
/// monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis<E> {
    elements: Vec<Polynomial<E>>,
    order: MonomialOrder,
}

impl<E> GroebnerBasis<E> {
    pub fn elements(&self) -> &[Polynomial<E>] {
        &self.elements
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Minimal generators of the initial ideal.
    pub fn initial_ideal(&self) -> Vec<Monomial> {
        self.elements.iter().filter_map(|g| g.leading_monomial().copied()).collect()
    }
}

struct Entry<E> {
    poly: Polynomial<E>,
    lm: Monomial,
    mask: u64,
    sugar: u32,
    active: bool,
}

/// Pair key: (lcm degree, sugar, i, j). Lowest first.
type PairKey = (u32, u32, usize, usize);

struct Engine<'a, F: Field> {
    ring: &'a PolyRing<F>,
    basis: Vec<Entry<F::Elem>>,
    pairs: BTreeSet<PairKey>,
}

impl<'a, F: Field> Engine<'a, F> {
    fn pair_key(&self, i: usize, j: usize) -> PairKey {
        let (a, b) = (&self.basis[i], &self.basis[j]);
        let lcm = a.lm.lcm(&b.lm);
        let sugar = (a.sugar + lcm.degree() - a.lm.degree()).max(b.sugar + lcm.degree() - b.lm.degree());
        (lcm.degree(), sugar, i.min(j), i.max(j))
    }

    fn lcm_of(&self, i: usize, j: usize) -> Monomial {
        self.basis[i].lm.lcm(&self.basis[j].lm)
    }

    /// Gebauer–Möller update with the new element at index `h`.
    fn update(&mut self, h: usize) {
        let lm_h = self.basis[h].lm;
        let olds: Vec<usize> = (0..h).filter(|&g| self.basis[g].active).collect();
        let mut c: Vec<(usize, Monomial)> = olds.iter().map(|&g| (g, self.lcm_of(h, g))).collect();
        let mut d: Vec<(usize, Monomial)> = Vec::new();
        while let Some((g, l)) = c.pop() {
            let coprime = lm_h.is_coprime(&self.basis[g].lm);
            if coprime || !(c.iter().any(|(_, o)| o.divides(&l)) || d.iter().any(|(_, o)| o.divides(&l))) {
                d.push((g, l));
            }
        }
        let old: Vec<PairKey> = self.pairs.iter().copied().collect();
        for key in old {
            let (_, _, i, j) = key;
            let l = self.lcm_of(i, j);
            if lm_h.divides(&l) && self.lcm_of(i, h) != l && self.lcm_of(j, h) != l {
                self.pairs.remove(&key);
            }
        }
        for (g, _) in d {
            if !lm_h.is_coprime(&self.basis[g].lm) {
                let key = self.pair_key(h, g);
                self.pairs.insert(key);
            }
        }
        for g in olds {
            if lm_h.divides(&self.basis[g].lm) {
                self.basis[g].active = false;
            }
        }
    }

    fn insert(&mut self, poly: Polynomial<F::Elem>, sugar: u32) {
        let poly = self.ring.monic(&poly);
        let lm = *poly.leading_monomial().expect("nonzero");
        self.basis.push(Entry { mask: lm.support(), lm, poly, sugar, active: true });
        let h = self.basis.len() - 1;
        self.update(h);
    }

    fn s_polynomial(&self, i: usize, j: usize) -> Polynomial<F::Elem> {
        s_polynomial(self.ring, &self.basis[i].poly, &self.basis[j].poly)
    }

    fn reduce(&self, f: Polynomial<F::Elem>) -> Polynomial<F::Elem> {
        let reducers: Vec<(&Monomial, u64, &Polynomial<F::Elem>)> = self
            .basis
            .iter()
            .filter(|e| e.active)
            .map(|e| (&e.lm, e.mask, &e.poly))
            .collect();
        reduce_full(self.ring, f, &reducers)
    }
}

pub(crate) fn s_polynomial<F: Field>(
    ring: &PolyRing<F>,
    f: &Polynomial<F::Elem>,
    g: &Polynomial<F::Elem>,
) -> Polynomial<F::Elem> {
    let k = ring.field();
    let (fm, fc) = ring.leading_term(f).expect("nonzero");
    let (gm, gc) = ring.leading_term(g).expect("nonzero");
    let lcm = fm.lcm(gm);
    let a = ring.mul_term(f, &lcm.div(fm).expect("lcm"), &k.inv(fc));
    let b_mono = lcm.div(gm).expect("lcm");
    ring.add_scaled(&a, &k.neg(&k.inv(gc)), &b_mono, g)
}

/// Full reduction of `f` by `(leading monomial, support mask, polynomial)`
/// triples.
fn reduce_full<F: Field>(
    ring: &PolyRing<F>,
    mut f: Polynomial<F::Elem>,
    reducers: &[(&Monomial, u64, &Polynomial<F::Elem>)],
) -> Polynomial<F::Elem> {
    let k = ring.field();
    let mut remainder: Vec<(Monomial, F::Elem)> = Vec::new();
    while let Some((m, c)) = f.terms().first().cloned() {
        let mmask = m.support();
        let reducer = reducers.iter().find(|(lm, mask, _)| mask & !mmask == 0 && lm.divides(&m));
        match reducer {
            Some((lm, _, g)) => {
                let q = m.div(lm).expect("divides");
                let coef = k.neg(&k.div(&c, g.leading_coefficient().expect("nonzero")));
                f = ring.add_scaled(&f, &coef, &q, g);
            }
            None => {
                f.pop_leading();
                remainder.push((m, c));
            }
        }
    }
    Polynomial::from_sorted_terms(remainder)
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn buchberger<F: Field>(ring: &PolyRing<F>, gens: &[Polynomial<F::Elem>]) -> GroebnerBasis<F::Elem> {
    let mut engine = Engine { ring, basis: Vec::new(), pairs: BTreeSet::new() };
    // generators enter in order; each is reduced against the previous ones
    for g in gens {
        let sugar = g.total_degree();
        let r = engine.reduce(ring.resort(g));
        if !r.is_zero() {
            engine.insert(r, sugar);
        }
    }
    while let Some(key) = engine.pairs.pop_first() {
        let (_, sugar, i, j) = key;
        let s = engine.s_polynomial(i, j);
        let r = engine.reduce(s);
        if !r.is_zero() {
            engine.insert(r, sugar);
        }
    }
    let active: Vec<Polynomial<F::Elem>> =
        engine.basis.into_iter().filter(|e| e.active).map(|e| e.poly).collect();
    interreduce(ring, active)
}

/// Turns a Gröbner basis into the reduced one.
fn interreduce<F: Field>(ring: &PolyRing<F>, mut polys: Vec<Polynomial<F::Elem>>) -> GroebnerBasis<F::Elem> {
    polys.retain(|p| !p.is_zero());
    let lms: Vec<Monomial> = polys.iter().map(|p| *p.leading_monomial().expect("nonzero")).collect();
    // minimal: drop elements whose leading monomial is divisible by another's
    let mut keep = Vec::new();
    for (i, m) in lms.iter().enumerate() {
        let redundant = lms.iter().enumerate().any(|(j, other)| {
            j != i && other.divides(m) && (other != m || j < i)
        });
        if !redundant {
            keep.push(ring.monic(&polys[i]));
        }
    }
    let mut reduced = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<(&Monomial, u64, &Polynomial<F::Elem>)> = keep
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, p)| {
                let lm = p.leading_monomial().expect("nonzero");
                (lm, lm.support(), p)
            })
            .collect();
        let r = reduce_full(ring, keep[i].clone(), &others);
        reduced.push(ring.monic(&r));
    }
    reduced.sort_by(|a, b| ring.cmp(a.leading_monomial().expect("nonzero"), b.leading_monomial().expect("nonzero")));
    GroebnerBasis { elements: reduced, order: ring.order() }
}

/// Remainder of `f` on division by a Gröbner basis.
pub fn normal_form<F: Field>(
    ring: &PolyRing<F>,
    f: &Polynomial<F::Elem>,
    gb: &GroebnerBasis<F::Elem>,
) -> Polynomial<F::Elem> {
    assert_eq!(ring.order(), gb.order(), "basis computed under another order");
    let reducers: Vec<(&Monomial, u64, &Polynomial<F::Elem>)> = gb
        .elements
        .iter()
        .map(|p| {
            let lm = p.leading_monomial().expect("nonzero");
            (lm, lm.support(), p)
        })
        .collect();
    reduce_full(ring, ring.resort(f), &reducers)
}

pub fn ideal_membership<F: Field>(ring: &PolyRing<F>, f: &Polynomial<F::Elem>, ideal: &Ideal<F::Elem>) -> bool {
    let gb = buchberger(ring, ideal.generators());
    normal_form(ring, f, &gb).is_zero()
}

pub fn ideal_sum<E: Clone>(a: &Ideal<E>, b: &Ideal<E>) -> Ideal<E> {
    Ideal::new(a.generators.iter().chain(b.generators.iter()).cloned().collect())
}

/// Equality via reduced Gröbner bases in the ring's order.
pub fn ideal_equal<F: Field>(ring: &PolyRing<F>, a: &Ideal<F::Elem>, b: &Ideal<F::Elem>) -> bool {
    buchberger(ring, a.generators()) == buchberger(ring, b.generators())
}

/// `I ∩ J` by eliminating `t` from `t·I + (1 - t)·J`.
pub fn ideal_intersection<F: Field>(ring: &PolyRing<F>, a: &Ideal<F::Elem>, b: &Ideal<F::Elem>) -> Ideal<F::Elem> {
    let ext = ring
        .extended(&["t"], MonomialOrder::Elimination { block: 1 })
        .expect("room for one auxiliary variable");
    let t = ext.var(0);
    let one_minus_t = ext.sub(&ext.one(), &t);
    let mut gens = Vec::new();
    for f in a.generators() {
        gens.push(ext.mul(&t, &ring.embed_shifted(f, 1, &ext)));
    }
    for g in b.generators() {
        gens.push(ext.mul(&one_minus_t, &ring.embed_shifted(g, 1, &ext)));
    }
    let gb = buchberger(&ext, &gens);
    let out = gb
        .elements()
        .iter()
        .filter(|p| p.terms().iter().all(|(m, _)| m.exp(0) == 0))
        .map(|p| ring.from_terms(p.terms().iter().map(|(m, c)| (m.shift_down(1), c.clone()))))
        .collect();
    Ideal::new(out)
}

/// Whether every S-polynomial of `gens` reduces to zero modulo `gens`.
pub fn is_groebner<F: Field>(ring: &PolyRing<F>, gens: &[Polynomial<F::Elem>]) -> bool {
    let polys: Vec<Polynomial<F::Elem>> =
        gens.iter().filter(|g| !g.is_zero()).map(|g| ring.monic(&ring.resort(g))).collect();
    let reducers: Vec<(&Monomial, u64, &Polynomial<F::Elem>)> = polys
        .iter()
        .map(|p| {
            let lm = p.leading_monomial().expect("nonzero");
            (lm, lm.support(), p)
        })
        .collect();
    for i in 0..polys.len() {
        for j in i + 1..polys.len() {
            let s = s_polynomial(ring, &polys[i], &polys[j]);
            if !reduce_full(ring, s, &reducers).is_zero() {
                return false;
            }
        }
    }
    true
}

pub fn binomial_edge_ideal<F: Field>(ring: &PolyRing<F>, g: &Graph) -> Ideal<F::Elem> {
    Ideal::new(binomial_edge_generators(ring, g))
}

/// `(x_v, y_v : v in set)` in the edge ring of an `n`-vertex graph.
pub fn variable_ideal<F: Field>(ring: &PolyRing<F>, n: usize, set: VertexSet) -> Ideal<F::Elem> {
    let mut gens = Vec::new();
    for v in set.iter() {
        gens.push(ring.var(x_var(v)));
        gens.push(ring.var(y_var(n, v)));
    }
    Ideal::new(gens)
}

/// `P_T(G)`: the variables of `T` plus the binomial edge ideals of the
/// complete graphs on the components of `G - T`.
pub fn p_t_ideal<F: Field>(ring: &PolyRing<F>, g: &Graph, t: VertexSet) -> Ideal<F::Elem> {
    let n = g.n();
    let mut gens = variable_ideal(ring, n, t).generators;
    for comp in g.components_within(g.vertices().difference(t)) {
        let vs = comp.to_vec();
        for (a, &i) in vs.iter().enumerate() {
            for &j in &vs[a + 1..] {
                gens.push(edge_binomial(ring, n, i, j));
            }
        }
    }
    Ideal::new(gens)
}

/// Checks `J_G = ⋂_T P_T(G)` over all `2^n` subsets `T`.
pub fn verify_herzog_decomposition<F: Field>(ring: &PolyRing<F>, g: &Graph) -> Result<bool, GroebnerError> {
    const LIMIT: usize = 6;
    if g.n() > LIMIT {
        return Err(GroebnerError::TooLarge(g.n(), LIMIT));
    }
    let mut acc = p_t_ideal(ring, g, VertexSet::EMPTY);
    for bits in 1u64..(1u64 << g.n()) {
        acc = ideal_intersection(ring, &acc, &p_t_ideal(ring, g, VertexSet(bits)));
    }
    Ok(ideal_equal(ring, &acc, &binomial_edge_ideal(ring, g)))
}

/// The three ideals of the splitting at an internal vertex `v`, all in the
/// `2n`-variable ring of `G`.
#[derive(Debug, Clone)]
pub struct OhtaniSplit<E> {
    /// `J_{G_v}`
    pub completed: Ideal<E>,
    /// `(x_v, y_v) + J_{G \ v}`
    pub deleted: Ideal<E>,
    /// `(x_v, y_v) + J_{G_v \ v}`
    pub completed_deleted: Ideal<E>,
    /// `J_{G_v} ∩ ((x_v, y_v) + J_{G \ v}) = J_G`
    pub intersection_holds: bool,
    /// `J_{G_v} + ((x_v, y_v) + J_{G \ v}) = (x_v, y_v) + J_{G_v \ v}`
    pub sum_holds: bool,
}

pub fn ohtani_split<F: Field>(ring: &PolyRing<F>, g: &Graph, v: usize) -> Result<OhtaniSplit<F::Elem>, GroebnerError> {
    if !internal_vertices(g).contains(v) {
        return Err(GroebnerError::NotInternal(v));
    }
    let n = g.n();
    let gv = g.neighborhood_completion(v)?;
    let vars = variable_ideal(ring, n, VertexSet::singleton(v));
    let completed = binomial_edge_ideal(ring, &gv);
    let deleted = ideal_sum(&vars, &binomial_edge_ideal(ring, &g.isolate_vertex(v)?));
    let completed_deleted = ideal_sum(&vars, &binomial_edge_ideal(ring, &gv.isolate_vertex(v)?));
    let intersection = ideal_intersection(ring, &completed, &deleted);
    let intersection_holds = ideal_equal(ring, &intersection, &binomial_edge_ideal(ring, g));
    let sum_holds = ideal_equal(ring, &ideal_sum(&completed, &deleted), &completed_deleted);
    Ok(OhtaniSplit { completed, deleted, completed_deleted, intersection_holds, sum_holds })
}

/// Text dump: a header `# order <name> char <p>` followed by one element
/// per line.
pub fn dump_basis<F: Field>(ring: &PolyRing<F>, gb: &GroebnerBasis<F::Elem>) -> String {
    let mut out = format!("# order {} char {}\n", gb.order().name(), ring.field().characteristic());
    for g in gb.elements() {
        out.push_str(&ring.format(g));
        out.push('\n');
    }
    out
}
