//! Hilbert series of `S/J_G`, computed from an initial ideal.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::field::Field;
use crate::graph::Graph;
use crate::groebner::buchberger;
use crate::poly::{binomial_edge_generators, Monomial, MonomialOrder, PolyRing};

/// Dense integer polynomial in `t`, coefficients in ascending degree with no
/// trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct IntPoly(Vec<i128>);

impl IntPoly {
    pub fn new(mut coeffs: Vec<i128>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPoly(coeffs)
    }

    pub fn zero() -> Self {
        IntPoly(Vec::new())
    }

    pub fn one() -> Self {
        IntPoly(vec![1])
    }

    /// `1 - t^k`
    pub fn one_minus_t_pow(k: usize) -> Self {
        let mut c = vec![0; k + 1];
        c[0] += 1;
        c[k] -= 1;
        IntPoly::new(c)
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.0
    }

    pub fn coeff(&self, k: usize) -> i128 {
        self.0.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn eval_at_one(&self) -> i128 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let len = self.0.len().max(other.0.len());
        IntPoly::new((0..len).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let len = self.0.len().max(other.0.len());
        IntPoly::new((0..len).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut c = vec![0i128; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        IntPoly::new(c)
    }

    pub fn shift(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut c = vec![0; k];
        c.extend_from_slice(&self.0);
        IntPoly(c)
    }

    /// Exact division by `1 - t`; `None` when `p(1) != 0`.
    pub fn div_one_minus_t(&self) -> Option<IntPoly> {
        if self.eval_at_one() != 0 {
            return None;
        }
        // p = (1 - t) q  ⇔  q_k = p_0 + ... + p_k
        let mut acc = 0;
        let q: Vec<i128> = self.0.iter().map(|c| {
            acc += c;
            acc
        })
        .collect();
        Some(IntPoly::new(q))
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Ascending degree, e.g. `1+10t+38t^2-24t^5`.
impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.unsigned_abs();
            let body = match (k, mag) {
                (0, m) => m.to_string(),
                (1, 1) => "t".to_string(),
                (1, m) => format!("{m}t"),
                (k, 1) => format!("t^{k}"),
                (k, m) => format!("{m}t^{k}"),
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        Ok(())
    }
}

/// `Hilb(S/M)(t) = N(t) / (1-t)^nvars`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertNumerator {
    pub numerator: IntPoly,
    pub nvars: usize,
}

/// `Hilb(t) = h(t) / (1-t)^d` with `h(1) != 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HPolynomial {
    pub h: IntPoly,
    pub dim: usize,
}

impl HPolynomial {
    pub fn degree(&self) -> usize {
        self.h.degree().unwrap_or(0)
    }

    /// Coefficient of `t^k` in the expanded series.
    pub fn series_coefficient(&self, k: usize) -> i128 {
        (0..=k)
            .map(|i| {
                let h = self.h.coeff(i);
                if self.dim == 0 {
                    if i == k { h } else { 0 }
                } else {
                    h * binomial((k - i + self.dim - 1) as u64, (self.dim - 1) as u64)
                }
            })
            .sum()
    }
}

impl fmt::Display for HPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/(1-t)^{}", self.h, self.dim)
    }
}

pub(crate) fn binomial(n: u64, k: u64) -> i128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc
}

/// Removes generators divisible by another one; sorts the rest.
fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.exponents().cmp(b.exponents())));
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|o| o.divides(&g)) {
            out.push(g);
        }
    }
    out.sort_by(|a, b| a.exponents().cmp(b.exponents()));
    out
}

struct NumeratorMemo {
    table: HashMap<Vec<Monomial>, IntPoly>,
}

impl NumeratorMemo {
    /// `gens` must be minimal and sorted.
    fn numerator(&mut self, gens: &[Monomial]) -> IntPoly {
        if gens.is_empty() {
            return IntPoly::one();
        }
        if gens.iter().any(|g| g.degree() == 0) {
            return IntPoly::zero();
        }
        if let Some(n) = self.table.get(gens) {
            return n.clone();
        }
        let result = self.compute(gens);
        self.table.insert(gens.to_vec(), result.clone());
        result
    }

    fn compute(&mut self, gens: &[Monomial]) -> IntPoly {
        // variable generators contribute (1 - t) each and leave the rest free of that variable
        let linear: u64 = gens.iter().filter(|g| g.degree() == 1).fold(0, |acc, g| acc | g.support());
        if linear != 0 {
            let rest: Vec<Monomial> = gens.iter().filter(|g| g.support() & linear == 0).copied().collect();
            let factor = (0..linear.count_ones()).fold(IntPoly::one(), |acc, _| acc.mul(&IntPoly::one_minus_t_pow(1)));
            return factor.mul(&self.numerator(&rest));
        }

        let components = variable_components(gens);
        if components.len() > 1 {
            return components.iter().fold(IntPoly::one(), |acc, comp| {
                let part: Vec<Monomial> = gens.iter().filter(|g| g.support() & comp != 0).copied().collect();
                acc.mul(&self.numerator(&part))
            });
        }
        if gens.len() == 1 {
            return IntPoly::one_minus_t_pow(gens[0].degree() as usize);
        }

        let pivot = pivot_variable(gens);
        // N(I) = N(I + (x)) + t N(I : x)
        let with_pivot: Vec<Monomial> = gens
            .iter()
            .filter(|g| g.exp(pivot) == 0)
            .copied()
            .chain(std::iter::once(Monomial::var(pivot)))
            .collect();
        let colon: Vec<Monomial> = gens
            .iter()
            .map(|g| g.div(&Monomial::var(pivot)).unwrap_or(*g))
            .collect();
        let a = self.numerator(&minimalize(with_pivot));
        let b = self.numerator(&minimalize(colon));
        a.add(&b.shift(1))
    }
}

/// Supports of the connected components of the "share a variable" relation.
fn variable_components(gens: &[Monomial]) -> Vec<u64> {
    let mut comps: Vec<u64> = Vec::new();
    for g in gens {
        let mut s = g.support();
        let mut keep = Vec::with_capacity(comps.len());
        for c in comps {
            if c & s != 0 {
                s |= c;
            } else {
                keep.push(c);
            }
        }
        keep.push(s);
        comps = keep;
    }
    comps
}

/// Most frequent variable among the generators, ties to the lowest index.
fn pivot_variable(gens: &[Monomial]) -> usize {
    let mut counts = [0u32; 64];
    for g in gens {
        let mut s = g.support();
        while s != 0 {
            counts[s.trailing_zeros() as usize] += 1;
            s &= s - 1;
        }
    }
    let mut best = 0;
    for (i, &c) in counts.iter().enumerate() {
        if c > counts[best] {
            best = i;
        }
    }
    best
}

/// Numerator of the Hilbert series of `S/M` for a monomial ideal `M`.
pub fn hilbert_numerator(gens: &[Monomial], nvars: usize) -> HilbertNumerator {
    let mut memo = NumeratorMemo { table: HashMap::new() };
    let numerator = memo.numerator(&minimalize(gens.to_vec()));
    HilbertNumerator { numerator, nvars }
}

/// Cancels every `(1 - t)` factor of the numerator.
pub fn reduce_numerator(n: &HilbertNumerator) -> HPolynomial {
    let mut h = n.numerator.clone();
    let mut dim = n.nvars;
    while dim > 0 && !h.is_zero() {
        match h.div_one_minus_t() {
            Some(q) => {
                h = q;
                dim -= 1;
            }
            None => break,
        }
    }
    HPolynomial { h, dim }
}

/// Minimal generators of the degrevlex initial ideal of `J_G`.
pub fn initial_ideal_of<F: Field>(field: F, g: &Graph, order: MonomialOrder) -> Vec<Monomial> {
    let ring = PolyRing::binomial_edge_ring(field, g.n(), order).expect("graph fits the ring");
    buchberger(&ring, &binomial_edge_generators(&ring, g)).initial_ideal()
}

pub fn h_polynomial<F: Field>(field: F, g: &Graph) -> HPolynomial {
    let ini = initial_ideal_of(field, g, MonomialOrder::DegRevLex);
    reduce_numerator(&hilbert_numerator(&ini, 2 * g.n()))
}

pub fn deg_h<F: Field>(field: F, g: &Graph) -> usize {
    h_polynomial(field, g).degree()
}

/// Number of degree-`k` monomials in `nvars` variables outside the ideal.
pub fn count_standard_monomials(gens: &[Monomial], nvars: usize, k: u32) -> u128 {
    fn go(gens: &[Monomial], nvars: usize, var: usize, left: u32, current: &mut Monomial) -> u128 {
        if gens.iter().any(|g| g.divides(current)) {
            return 0;
        }
        if left == 0 {
            return 1;
        }
        if var + 1 == nvars {
            let mut m = *current;
            for _ in 0..left {
                m = m.mul_var(var);
            }
            return u128::from(!gens.iter().any(|g| g.divides(&m)));
        }
        let mut total = 0;
        let saved = *current;
        for e in 0..=left {
            total += go(gens, nvars, var + 1, left - e, current);
            *current = current.mul_var(var);
        }
        *current = saved;
        total
    }
    if nvars == 0 {
        return u128::from(k == 0);
    }
    go(gens, nvars, 0, k, &mut Monomial::one())
}

/// `dim_K (S/J_G)_k`, by counting standard monomials of the initial ideal.
pub fn hilbert_function<F: Field>(field: F, g: &Graph, k: u32) -> u128 {
    let ini = initial_ideal_of(field, g, MonomialOrder::DegRevLex);
    count_standard_monomials(&ini, 2 * g.n(), k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use proptest::prelude::*;

    fn mono(exps: &[u8]) -> Monomial {
        Monomial::from_exponents(exps)
    }

    #[test]
    fn int_poly_arithmetic_and_format() {
        let p = IntPoly::new(vec![1, 10, 38, 60, 19, -24]);
        assert_eq!(p.to_string(), "1+10t+38t^2+60t^3+19t^4-24t^5");
        assert_eq!(IntPoly::one_minus_t_pow(2).to_string(), "1-t^2");
        let q = IntPoly::one_minus_t_pow(2).div_one_minus_t().unwrap();
        assert_eq!(q, IntPoly::new(vec![1, 1]));
        assert!(IntPoly::new(vec![1, 1]).div_one_minus_t().is_none());
        assert_eq!(IntPoly::new(vec![0, 0]), IntPoly::zero());
    }

    #[test]
    fn numerator_examples() {
        let n = hilbert_numerator(&[mono(&[1, 0, 0, 1])], 4);
        assert_eq!(n.numerator, IntPoly::new(vec![1, 0, -1]));
        assert_eq!(hilbert_numerator(&[], 4).numerator, IntPoly::one());
        assert_eq!(hilbert_numerator(&[Monomial::one()], 4).numerator, IntPoly::zero());
    }

    #[test]
    fn numerator_of_complete_graph_matches_counts() {
        let ini = initial_ideal_of(PrimeField::default(), &Graph::complete(3), MonomialOrder::Lex);
        let hp = reduce_numerator(&hilbert_numerator(&ini, 6));
        for k in 0..=6 {
            assert_eq!(hp.series_coefficient(k as usize), count_standard_monomials(&ini, 6, k) as i128);
        }
        // 2x3 minors: determinantal ring of dimension 4 with h = 1 + 2t
        assert_eq!(hp, HPolynomial { h: IntPoly::new(vec![1, 2]), dim: 4 });
    }

    #[test]
    fn h_polynomial_examples() {
        let f = PrimeField::default();
        assert_eq!(h_polynomial(f, &Graph::path(2)), HPolynomial { h: IntPoly::new(vec![1, 1]), dim: 3 });
        assert_eq!(h_polynomial(f, &Graph::empty(3)), HPolynomial { h: IntPoly::one(), dim: 6 });
        assert_eq!(deg_h(f, &Graph::complete(2)), 1);
        assert_eq!(h_polynomial(f, &Graph::path(2)).to_string(), "(1+t)/(1-t)^3");
    }

    #[test]
    fn hilbert_function_examples() {
        let f = PrimeField::default();
        assert_eq!(hilbert_function(f, &Graph::path(2), 2), 9);
        let c5 = Graph::cycle(5);
        assert_eq!(hilbert_function(f, &c5, 0), 1);
        assert_eq!(hilbert_function(f, &c5, 1), 10);
    }

    #[test]
    fn series_is_order_independent() {
        let f = PrimeField::default();
        for g in [Graph::cycle(4), Graph::cycle(5), Graph::complete_bipartite(2, 3), Graph::star(3)] {
            let n = g.n();
            let lex = reduce_numerator(&hilbert_numerator(&initial_ideal_of(f, &g, MonomialOrder::Lex), 2 * n));
            let drl = reduce_numerator(&hilbert_numerator(&initial_ideal_of(f, &g, MonomialOrder::DegRevLex), 2 * n));
            assert_eq!(lex, drl);
            assert!(drl.dim > n);
        }
    }

    proptest! {
        #[test]
        fn numerator_matches_monomial_counts(
            raw in proptest::collection::vec(proptest::collection::vec(0u8..3, 5), 0..6)
        ) {
            let gens: Vec<Monomial> = raw.iter().map(|e| mono(e)).collect();
            let hp = reduce_numerator(&hilbert_numerator(&gens, 5));
            for k in 0..6u32 {
                prop_assert_eq!(hp.series_coefficient(k as usize), count_standard_monomials(&gens, 5, k) as i128);
            }
        }
    }
}
