//! Graded Betti numbers of `S/J_G` via Koszul homology.
//!
//! `J_G` is homogeneous for the grading `deg x_k = (e_k, 1, 0)`,
//! `deg y_k = (e_k, 0, 1)` by `Z^n x Z^2`, so every strand of the Koszul
//! complex splits into much smaller pieces. Two further reductions keep the
//! pieces small:
//!
//! * a piece whose vertex support is `A` only sees `J_{G[A]}`, so the table
//!   of `G` is the sum over vertex subsets `A` of the full-support part of
//!   `G[A]`, which depends only on the isomorphism class of `G[A]`;
//! * swapping `x` and `y` fixes `J_G`, so a piece and its mirror image have
//!   the same homology.
//!
//! Nonzero multidegrees are bounded by the lcm of the lex initial ideal,
//! which is squarefree, so each vertex degree is at most 2. Rows are
//! truncated at `n - 1` and every truncated piece is checked against its
//! Euler characteristic.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::Field;
use crate::graph::{Graph, VertexSet};
use crate::groebner::buchberger;
use crate::hilbert::{binomial, h_polynomial, HPolynomial, IntPoly};
use crate::linalg::{rank, SparseRow};
use crate::poly::{binomial_edge_generators, Monomial, MonomialOrder, PolyRing};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BettiError {
    #[error("envelope exceeded: {0}")]
    EnvelopeExceeded(String),
    #[error("rows capped at {row_cap} miss homology in internal degree {degree}")]
    TruncationFailed { row_cap: usize, degree: usize },
    #[error("table has {0} extremal Betti numbers, expected exactly one")]
    NotUniqueExtremal(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Strategy {
    /// Multigraded pieces with subset and symmetry reductions.
    Multigraded,
    /// Plain degree-by-degree Koszul strands; slow, for cross-checks.
    GradedKoszul,
}

#[derive(Debug, Clone)]
pub struct BettiOptions {
    pub strategy: Strategy,
    pub deadline: Option<Instant>,
    /// Largest Koszul piece (basis elements) allowed.
    pub max_piece: usize,
}

impl Default for BettiOptions {
    fn default() -> Self {
        BettiOptions { strategy: Strategy::Multigraded, deadline: None, max_piece: 4_000_000 }
    }
}

impl BettiOptions {
    fn check_deadline(&self) -> Result<(), BettiError> {
        match self.deadline {
            Some(d) if Instant::now() >= d => Err(BettiError::EnvelopeExceeded("time budget exhausted".into())),
            _ => Ok(()),
        }
    }
}

type Entries = BTreeMap<(usize, usize), u64>;

/// Nonzero `β_{i,j}` of `S/J_G` for a graph on `n` vertices.
#[derive(Clone, PartialEq, Eq)]
pub struct BettiTable {
    n: usize,
    entries: Entries,
}

#[derive(Serialize, Deserialize)]
struct Triple {
    i: usize,
    j: usize,
    rank: u64,
}

#[derive(Serialize, Deserialize)]
struct TableRepr {
    n: usize,
    entries: Vec<Triple>,
}

impl Serialize for BettiTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        TableRepr {
            n: self.n,
            entries: self.entries.iter().map(|(&(i, j), &rank)| Triple { i, j, rank }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BettiTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = TableRepr::deserialize(d)?;
        Ok(BettiTable::from_entries(r.n, r.entries.into_iter().map(|t| ((t.i, t.j), t.rank))))
    }
}

impl fmt::Debug for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BettiTable(n={}, {:?})", self.n, self.entries)
    }
}

impl BettiTable {
    pub fn from_entries(n: usize, entries: impl IntoIterator<Item = ((usize, usize), u64)>) -> Self {
        let entries = entries.into_iter().filter(|&(_, r)| r > 0).collect();
        BettiTable { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn regularity(&self) -> usize {
        self.entries.keys().map(|&(i, j)| j - i).max().unwrap_or(0)
    }

    pub fn projective_dimension(&self) -> usize {
        self.entries.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    pub fn depth(&self) -> usize {
        2 * self.n - self.projective_dimension()
    }

    /// Corners `(i, j)`: no other nonzero entry sits weakly below and to the
    /// right in the `(i, j - i)` layout.
    pub fn extremal_betti(&self) -> Vec<(usize, usize)> {
        self.entries
            .keys()
            .filter(|&&(i, j)| {
                let r = j - i;
                !self.entries.keys().any(|&(k, l)| (k, l) != (i, j) && k >= i && l - k >= r)
            })
            .copied()
            .collect()
    }

    pub fn is_unique_extremal(&self) -> bool {
        self.extremal_betti().len() == 1
    }

    /// `Σ (-1)^i β_{i,j} t^j`
    pub fn alternating_sum(&self) -> IntPoly {
        let top = self.entries.keys().map(|&(_, j)| j).max().unwrap_or(0);
        let mut c = vec![0i128; top + 1];
        for (&(i, j), &b) in &self.entries {
            let b = b as i128;
            c[j] += if i % 2 == 0 { b } else { -b };
        }
        IntPoly::new(c)
    }

    /// Rows `j - i`, columns `i`.
    pub fn to_triangular(&self) -> String {
        let cols = self.projective_dimension() + 1;
        let rows = self.regularity() + 1;
        let mut totals = vec![0u64; cols];
        for (&(i, _), &b) in &self.entries {
            totals[i] += b;
        }
        let cell = |v: u64| if v == 0 { ".".to_string() } else { v.to_string() };
        let width = totals.iter().map(|t| t.to_string().len()).max().unwrap_or(1).max(cols.to_string().len());
        let label_width = format!("{}", rows - 1).len().max(5) + 1;
        let mut out = String::new();
        out.push_str(&" ".repeat(label_width));
        for i in 0..cols {
            out.push_str(&format!(" {:>width$}", i));
        }
        out.push('\n');
        out.push_str(&format!("{:>label_width$}", "total:"));
        for t in &totals {
            out.push_str(&format!(" {:>width$}", t));
        }
        out.push('\n');
        for r in 0..rows {
            out.push_str(&format!("{:>label_width$}", format!("{r}:")));
            for i in 0..cols {
                out.push_str(&format!(" {:>width$}", cell(self.get(i, i + r))));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("table serializes")
    }
}

/// Memo of full-support contributions keyed by isomorphism class; shareable
/// across computations and threads.
#[derive(Default)]
pub struct BettiCache {
    map: Mutex<HashMap<(u64, usize, Vec<(usize, usize)>), Arc<Entries>>>,
}

impl BettiCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.map.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub fn graded_betti<F: Field>(field: &F, g: &Graph, opts: &BettiOptions) -> Result<BettiTable, BettiError> {
    graded_betti_cached(field, g, opts, &BettiCache::new())
}

pub fn graded_betti_cached<F: Field>(
    field: &F,
    g: &Graph,
    opts: &BettiOptions,
    cache: &BettiCache,
) -> Result<BettiTable, BettiError> {
    match opts.strategy {
        Strategy::Multigraded => multigraded_table(field, g, opts, cache),
        Strategy::GradedKoszul => graded_koszul_table(field, g, opts),
    }
}

pub fn regularity<F: Field>(field: &F, g: &Graph, opts: &BettiOptions) -> Result<usize, BettiError> {
    Ok(graded_betti(field, g, opts)?.regularity())
}

pub fn projective_dimension<F: Field>(field: &F, g: &Graph, opts: &BettiOptions) -> Result<usize, BettiError> {
    Ok(graded_betti(field, g, opts)?.projective_dimension())
}

pub fn depth<F: Field>(field: &F, g: &Graph, opts: &BettiOptions) -> Result<usize, BettiError> {
    Ok(graded_betti(field, g, opts)?.depth())
}

/// `Σ (-1)^i β_{i,j} t^j = h(t) (1-t)^{2n-d}`
pub fn alternating_sum_check(table: &BettiTable, hp: &HPolynomial) -> bool {
    let codim = 2 * table.n() - hp.dim;
    let rhs = (0..codim).fold(hp.h.clone(), |acc, _| acc.mul(&IntPoly::one_minus_t_pow(1)));
    table.alternating_sum() == rhs
}

/// `pd + reg = 2n - d + deg h`, valid when the extremal Betti number is
/// unique.
pub fn unique_extremal_identity_check(table: &BettiTable, hp: &HPolynomial) -> Result<bool, BettiError> {
    let corners = table.extremal_betti().len();
    if corners != 1 {
        return Err(BettiError::NotUniqueExtremal(corners));
    }
    Ok(table.projective_dimension() + table.regularity() + hp.dim == 2 * table.n() + hp.degree())
}

/// Betti table together with the h-polynomial, both computed from scratch.
pub fn betti_and_h<F: Field>(field: &F, g: &Graph, opts: &BettiOptions) -> Result<(BettiTable, HPolynomial), BettiError> {
    Ok((graded_betti(field, g, opts)?, h_polynomial(field.clone(), g)))
}

fn add_into(acc: &mut Entries, other: &Entries, mult: u64) {
    for (&k, &v) in other {
        *acc.entry(k).or_insert(0) += v * mult;
    }
}

fn convolve(a: &Entries, b: &Entries) -> Entries {
    let mut out = Entries::new();
    for (&(i1, j1), &v1) in a {
        for (&(i2, j2), &v2) in b {
            *out.entry((i1 + i2, j1 + j2)).or_insert(0) += v1 * v2;
        }
    }
    out
}

fn multigraded_table<F: Field>(
    field: &F,
    g: &Graph,
    opts: &BettiOptions,
    cache: &BettiCache,
) -> Result<BettiTable, BettiError> {
    let mut total: Entries = BTreeMap::from([((0, 0), 1)]);
    let n = g.n();
    for bits in 1u64..(1u64 << n) {
        opts.check_deadline()?;
        let a = VertexSet(bits);
        let (h, _) = g.induced_subgraph(a).expect("subset of vertices");
        let part = full_support_part(field, &h, opts, cache)?;
        add_into(&mut total, &part, 1);
    }
    Ok(BettiTable::from_entries(n, total))
}

/// Contributions of the multidegrees that involve every vertex of `h`.
fn full_support_part<F: Field>(
    field: &F,
    h: &Graph,
    opts: &BettiOptions,
    cache: &BettiCache,
) -> Result<Arc<Entries>, BettiError> {
    if (1..=h.n()).any(|v| h.degree(v) == 0) {
        return Ok(Arc::new(Entries::new()));
    }
    let (canon, _) = h.canonical_form();
    let key = (field.characteristic(), canon.n(), canon.edges().to_vec());
    if let Some(hit) = cache.map.lock().expect("cache lock").get(&key) {
        return Ok(hit.clone());
    }
    let comps = canon.connected_components();
    let part = if comps.len() > 1 {
        let mut acc = BTreeMap::from([((0, 0), 1)]);
        for c in comps {
            let (sub, _) = canon.induced_subgraph(c).expect("component");
            acc = convolve(&acc, full_support_part(field, &sub, opts, cache)?.as_ref());
        }
        acc
    } else {
        connected_full_support(field, &canon, opts)?
    };
    let part = Arc::new(part);
    cache.map.lock().expect("cache lock").insert(key, part.clone());
    Ok(part)
}

/// Monomial normal forms modulo a Gröbner basis of binomials and monomials.
struct MonomialReducer<F: Field> {
    /// (leading monomial, tail monomial and coefficient, or none for a
    /// monomial element)
    rules: Vec<(Monomial, u64, Option<(Monomial, F::Elem)>)>,
    memo: HashMap<Monomial, Option<(Monomial, F::Elem)>>,
    field: F,
}

impl<F: Field> MonomialReducer<F> {
    fn new(field: F, gb: &[crate::poly::Polynomial<F::Elem>]) -> Self {
        let rules = gb
            .iter()
            .map(|p| {
                let t = p.terms();
                assert!(t.len() <= 2, "Gröbner basis element with more than two terms");
                let tail = t.get(1).map(|(m, c)| (*m, field.neg(c)));
                (t[0].0, t[0].0.support(), tail)
            })
            .collect();
        MonomialReducer { rules, memo: HashMap::new(), field }
    }

    fn is_standard(&self, m: &Monomial) -> bool {
        let s = m.support();
        !self.rules.iter().any(|(lm, mask, _)| mask & !s == 0 && lm.divides(m))
    }

    /// `NF(m) = c · m'` or zero.
    fn reduce(&mut self, m: &Monomial) -> Option<(Monomial, F::Elem)> {
        if let Some(hit) = self.memo.get(m) {
            return hit.clone();
        }
        let mut w = *m;
        let mut c = self.field.one();
        let result = loop {
            let s = w.support();
            match self.rules.iter().find(|(lm, mask, _)| mask & !s == 0 && lm.divides(&w)) {
                None => break Some((w, c)),
                Some((_, _, None)) => break None,
                Some((lm, _, Some((tm, tc)))) => {
                    w = w.div(lm).expect("divides").mul(tm);
                    c = self.field.mul(&c, tc);
                }
            }
        };
        self.memo.insert(*m, result.clone());
        result
    }
}

/// One Koszul piece: basis elements `e_F ⊗ m` grouped by `|F|`.
struct Piece {
    groups: Vec<Vec<(u64, Monomial)>>,
}

fn sign_of(f: u64, v: u32) -> bool {
    (f & ((1u64 << v) - 1)).count_ones() % 2 == 1
}

fn piece_differential<F: Field>(
    field: &F,
    reducer: &mut MonomialReducer<F>,
    source: &[(u64, Monomial)],
    target: &[(u64, Monomial)],
) -> Vec<SparseRow<F::Elem>> {
    let index: HashMap<(u64, Monomial), u32> =
        target.iter().enumerate().map(|(k, &(f, m))| ((f, m), k as u32)).collect();
    let one = field.one();
    let minus_one = field.neg(&one);
    source
        .iter()
        .map(|&(f, m)| {
            let mut row = Vec::new();
            let mut bits = f;
            while bits != 0 {
                let v = bits.trailing_zeros();
                bits &= bits - 1;
                if let Some((mm, c)) = reducer.reduce(&m.mul_var(v as usize)) {
                    let col = *index.get(&(f & !(1u64 << v), mm)).expect("normal form lies in the piece");
                    let s = if sign_of(f, v) { &minus_one } else { &one };
                    row.push((col, field.mul(&c, s)));
                }
            }
            row
        })
        .collect()
}

/// Homology ranks of one piece with rows capped at `row_cap`; the Euler
/// characteristic over all homological degrees must match.
fn piece_homology<F: Field>(
    field: &F,
    reducer: &mut MonomialReducer<F>,
    piece: &Piece,
    total_degree: usize,
    row_cap: usize,
    opts: &BettiOptions,
) -> Result<Vec<(usize, u64)>, BettiError> {
    let top = piece.groups.len() - 1;
    let lo = total_degree.saturating_sub(row_cap);
    let dims: Vec<usize> = piece.groups.iter().map(Vec::len).collect();
    let mut ranks = vec![0usize; top + 2];
    for i in lo.max(1)..=top {
        if dims[i] == 0 || dims[i - 1] == 0 {
            continue;
        }
        opts.check_deadline()?;
        let rows = piece_differential(field, reducer, &piece.groups[i], &piece.groups[i - 1]);
        ranks[i] = rank(field, dims[i - 1], rows);
    }
    let mut out = Vec::new();
    let mut chi_window: i128 = 0;
    for i in lo..=top {
        let b = dims[i] - ranks[i] - ranks[i + 1];
        if b > 0 {
            out.push((i, b as u64));
        }
        chi_window += if i % 2 == 0 { b as i128 } else { -(b as i128) };
    }
    // homology below the window would show up as a mismatch here
    let chi_all: i128 = dims.iter().enumerate().map(|(i, &d)| if i % 2 == 0 { d as i128 } else { -(d as i128) }).sum();
    if chi_all != chi_window {
        return Err(BettiError::TruncationFailed { row_cap, degree: total_degree });
    }
    Ok(out)
}

fn connected_full_support<F: Field>(field: &F, h: &Graph, opts: &BettiOptions) -> Result<Entries, BettiError> {
    let n = h.n();
    let ring = PolyRing::binomial_edge_ring(field.clone(), n, MonomialOrder::Lex).expect("graph fits the ring");
    let gb = buchberger(&ring, &binomial_edge_generators(&ring, h));
    let initial = gb.initial_ideal();
    let (mut cap_x, mut cap_y) = (vec![0usize; n], vec![0usize; n]);
    for m in &initial {
        for k in 0..n {
            cap_x[k] = cap_x[k].max(m.exp(k) as usize);
            cap_y[k] = cap_y[k].max(m.exp(n + k) as usize);
        }
    }
    let cap: Vec<usize> = cap_x.iter().zip(&cap_y).map(|(x, y)| x + y).collect();
    if cap.iter().any(|&c| c == 0) {
        return Ok(Entries::new());
    }
    let row_cap = n.saturating_sub(1).max(1);

    let mut vertex_degrees: Vec<Vec<usize>> = vec![Vec::new()];
    for &c in &cap {
        vertex_degrees = vertex_degrees
            .into_iter()
            .flat_map(|prefix| {
                (1..=c).map(move |d| {
                    let mut p = prefix.clone();
                    p.push(d);
                    p
                })
            })
            .collect();
    }

    let results: Vec<Result<Entries, BettiError>> = vertex_degrees
        .par_iter()
        .map(|a| {
            opts.check_deadline()?;
            let mut reducer = MonomialReducer::new(field.clone(), gb.elements());
            let total: usize = a.iter().sum();
            let mut out = Entries::new();
            for p in 0..=total / 2 {
                let piece = build_piece(&reducer, a, p, opts)?;
                let mult = if 2 * p < total { 2 } else { 1 };
                for (i, b) in piece_homology(field, &mut reducer, &piece, total, row_cap, opts)? {
                    *out.entry((i, total)).or_insert(0) += b * mult;
                }
            }
            Ok(out)
        })
        .collect();
    let mut acc = Entries::new();
    for r in results {
        add_into(&mut acc, &r?, 1);
    }
    Ok(acc)
}

/// Basis of the piece of multidegree `(a, p)`: vertex `k` carries total
/// degree `a[k]` and the `x` variables carry `p` in all.
fn build_piece<F: Field>(
    reducer: &MonomialReducer<F>,
    a: &[usize],
    p: usize,
    opts: &BettiOptions,
) -> Result<Piece, BettiError> {
    let n = a.len();
    let total: usize = a.iter().sum();
    let mut groups: Vec<Vec<(u64, Monomial)>> = vec![Vec::new(); total + 1];
    let mut count = 0usize;
    // suffix sums bound how much x-degree is still available
    let mut rest = vec![0usize; n + 1];
    for k in (0..n).rev() {
        rest[k] = rest[k + 1] + a[k];
    }

    #[allow(clippy::too_many_arguments)]
    fn go<F: Field>(
        reducer: &MonomialReducer<F>,
        a: &[usize],
        rest: &[usize],
        k: usize,
        p_left: usize,
        f: u64,
        m: Monomial,
        groups: &mut Vec<Vec<(u64, Monomial)>>,
        count: &mut usize,
        limit: usize,
    ) -> bool {
        let n = a.len();
        if k == n {
            if p_left == 0 {
                groups[f.count_ones() as usize].push((f, m));
                *count += 1;
                return *count <= limit;
            }
            return true;
        }
        if p_left > rest[k] {
            return true;
        }
        let (xv, yv) = (k, n + k);
        for fx in 0..=1usize.min(a[k]) {
            for fy in 0..=1usize.min(a[k] - fx) {
                let e = a[k] - fx - fy;
                for ex in 0..=e {
                    let px = fx + ex;
                    if px > p_left {
                        break;
                    }
                    let ey = e - ex;
                    let mut mm = m;
                    for _ in 0..ex {
                        mm = mm.mul_var(xv);
                    }
                    for _ in 0..ey {
                        mm = mm.mul_var(yv);
                    }
                    if e > 0 && !reducer.is_standard(&mm) {
                        continue;
                    }
                    let ff = f | (fx as u64) << xv | (fy as u64) << yv;
                    if !go(reducer, a, rest, k + 1, p_left - px, ff, mm, groups, count, limit) {
                        return false;
                    }
                }
            }
        }
        true
    }

    if !go(reducer, a, &rest, 0, p, 0, Monomial::one(), &mut groups, &mut count, opts.max_piece) {
        return Err(BettiError::EnvelopeExceeded(format!("Koszul piece above {} basis elements", opts.max_piece)));
    }
    Ok(Piece { groups })
}

/// Degree-by-degree Koszul strands without any multigrading.
fn graded_koszul_table<F: Field>(field: &F, g: &Graph, opts: &BettiOptions) -> Result<BettiTable, BettiError> {
    let n = g.n();
    let nv = 2 * n;
    let ring = PolyRing::binomial_edge_ring(field.clone(), n, MonomialOrder::DegRevLex).expect("graph fits the ring");
    let gb = buchberger(&ring, &binomial_edge_generators(&ring, g));
    let mut reducer = MonomialReducer::new(field.clone(), gb.elements());
    let row_cap = n.saturating_sub(1).max(1);
    let hp = h_polynomial(field.clone(), g);

    // standard monomials by degree, up to one past the row cap
    let mut standard: Vec<Vec<Monomial>> = vec![vec![Monomial::one()]];
    for d in 1..=row_cap + 1 {
        let mut next: Vec<Monomial> = Vec::new();
        for m in &standard[d - 1] {
            let start = (0..nv).rev().find(|&v| m.exp(v) > 0).unwrap_or(0);
            for v in start..nv {
                let mm = m.mul_var(v);
                if reducer.is_standard(&mm) {
                    next.push(mm);
                }
            }
        }
        standard.push(next);
    }
    let subsets_of_size = |i: usize| -> Vec<u64> {
        let mut out = Vec::new();
        let mut stack = vec![(0usize, 0u64, 0usize)];
        while let Some((v, f, c)) = stack.pop() {
            if c == i {
                out.push(f);
                continue;
            }
            if nv - v < i - c {
                continue;
            }
            stack.push((v + 1, f, c));
            stack.push((v + 1, f | 1 << v, c + 1));
        }
        out
    };
    let basis = |i: usize, r: usize| -> Vec<(u64, Monomial)> {
        let subsets = subsets_of_size(i);
        let mut out = Vec::with_capacity(subsets.len() * standard[r].len());
        for &f in &subsets {
            for &m in &standard[r] {
                out.push((f, m));
            }
        }
        out
    };

    let mut entries = Entries::new();
    entries.insert((0, 0), 1);
    let max_j = nv + row_cap;
    for j in 1..=max_j {
        opts.check_deadline()?;
        let lo = j.saturating_sub(row_cap).max(1);
        let hi = j.min(nv);
        if lo > hi {
            continue;
        }
        // rank of d_i: K_{i,j} -> K_{i-1,j} for i in lo..=hi
        let mut ranks = vec![0usize; hi + 2];
        let mut dims = vec![0usize; hi + 1];
        for i in lo..=hi {
            let src = basis(i, j - i);
            dims[i] = src.len();
            if src.len() > opts.max_piece {
                return Err(BettiError::EnvelopeExceeded(format!("graded strand above {} basis elements", opts.max_piece)));
            }
            let tgt = basis(i - 1, j - i + 1);
            if src.is_empty() || tgt.is_empty() {
                continue;
            }
            let rows = piece_differential(field, &mut reducer, &src, &tgt);
            ranks[i] = rank(field, tgt.len(), rows);
        }
        let mut chi_window = 0i128;
        for i in lo..=hi {
            let b = dims[i] - ranks[i] - ranks[i + 1];
            if b > 0 {
                entries.insert((i, j), b as u64);
            }
            chi_window += if i % 2 == 0 { b as i128 } else { -(b as i128) };
        }
        // Euler characteristic of the whole strand from the Hilbert function
        let chi: i128 = (0..=j.min(nv))
            .map(|i| {
                let d = binomial(nv as u64, i as u64) * hp.series_coefficient(j - i);
                if i % 2 == 0 { d } else { -d }
            })
            .sum();
        if chi != chi_window {
            return Err(BettiError::TruncationFailed { row_cap, degree: j });
        }
    }
    Ok(BettiTable::from_entries(n, entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::hilbert::h_polynomial;

    fn betti(g: &Graph) -> BettiTable {
        graded_betti(&PrimeField::default(), g, &BettiOptions::default()).unwrap()
    }

    fn graded(g: &Graph) -> BettiTable {
        let opts = BettiOptions { strategy: Strategy::GradedKoszul, ..Default::default() };
        graded_betti(&PrimeField::default(), g, &opts).unwrap()
    }

    fn table(n: usize, e: &[((usize, usize), u64)]) -> BettiTable {
        BettiTable::from_entries(n, e.iter().copied())
    }

    #[test]
    fn small_tables() {
        assert_eq!(betti(&Graph::path(2)), table(2, &[((0, 0), 1), ((1, 2), 1)]));
        assert_eq!(betti(&Graph::path(3)), table(3, &[((0, 0), 1), ((1, 2), 2), ((2, 4), 1)]));
        assert_eq!(betti(&Graph::empty(3)), table(3, &[((0, 0), 1)]));
        // Eagon–Northcott for the 2x3 minors
        assert_eq!(betti(&Graph::complete(3)), table(3, &[((0, 0), 1), ((1, 2), 3), ((2, 3), 2)]));
    }

    #[test]
    fn strategies_agree() {
        let graphs = [
            Graph::path(3),
            Graph::complete(3),
            Graph::cycle(4),
            Graph::star(3),
            Graph::path(4),
            Graph::complete(4),
            Graph::new(4, &[(1, 2), (2, 3), (3, 1), (3, 4)]).unwrap(),
            Graph::new(4, &[(1, 2), (3, 4)]).unwrap(),
        ];
        for g in graphs {
            assert_eq!(betti(&g), graded(&g), "{g:?}");
        }
    }

    #[test]
    fn read_offs() {
        let f = PrimeField::default();
        let o = BettiOptions::default();
        for n in 2..=5 {
            assert_eq!(regularity(&f, &Graph::complete(n), &o).unwrap(), 1);
            assert_eq!(projective_dimension(&f, &Graph::complete(n), &o).unwrap(), n - 1);
        }
        assert_eq!(regularity(&f, &Graph::cycle(5), &o).unwrap(), 3);
        let t = betti(&Graph::path(3));
        assert_eq!((t.regularity(), t.projective_dimension(), t.depth()), (2, 2, 4));
    }

    #[test]
    fn extremal_corners() {
        assert_eq!(betti(&Graph::path(3)).extremal_betti(), vec![(2, 4)]);
        assert_eq!(betti(&Graph::path(2)).extremal_betti(), vec![(1, 2)]);
        let t = table(3, &[((0, 0), 1), ((1, 2), 3), ((2, 3), 1), ((2, 5), 1), ((3, 4), 2)]);
        assert_eq!(t.extremal_betti(), vec![(2, 5), (3, 4)]);
        assert!(!t.is_unique_extremal());
    }

    #[test]
    fn identities_on_small_graphs() {
        let f = PrimeField::default();
        for g in [Graph::path(3), Graph::complete(3), Graph::cycle(4), Graph::path(5), Graph::star(3)] {
            let t = betti(&g);
            let hp = h_polynomial(f, &g);
            assert!(alternating_sum_check(&t, &hp));
            if t.is_unique_extremal() {
                assert!(unique_extremal_identity_check(&t, &hp).unwrap());
            }
        }
        let t = betti(&Graph::path(3));
        let hp = h_polynomial(f, &Graph::path(3));
        assert_eq!(t.alternating_sum(), IntPoly::new(vec![1, 0, -2, 0, 1]));
        assert_eq!(t.projective_dimension() + t.regularity(), 6 - hp.dim + hp.degree());
    }

    #[test]
    fn triangular_and_json() {
        let t = betti(&Graph::path(3));
        let text = t.to_triangular();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 5);
        assert!(lines[1].starts_with("total:"));
        assert!(lines[2].trim_start().starts_with("0:"));
        let json = t.to_json();
        assert!(json.contains("\"rank\":2"));
        let back: BettiTable = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn envelope_is_reported() {
        let opts = BettiOptions { max_piece: 3, ..Default::default() };
        let err = graded_betti(&PrimeField::default(), &Graph::cycle(5), &opts).unwrap_err();
        assert!(matches!(err, BettiError::EnvelopeExceeded(_)));
        let opts = BettiOptions { deadline: Some(Instant::now()), ..Default::default() };
        let err = graded_betti(&PrimeField::default(), &Graph::cycle(5), &opts).unwrap_err();
        assert!(matches!(err, BettiError::EnvelopeExceeded(_)));
    }

    #[test]
    fn cache_is_reused() {
        let cache = BettiCache::new();
        let f = PrimeField::default();
        let o = BettiOptions::default();
        let a = graded_betti_cached(&f, &Graph::cycle(5), &o, &cache).unwrap();
        let filled = cache.len();
        assert!(filled > 0);
        let b = graded_betti_cached(&f, &Graph::cycle(5), &o, &cache).unwrap();
        assert_eq!(a, b);
        assert_eq!(cache.len(), filled);
    }
}
