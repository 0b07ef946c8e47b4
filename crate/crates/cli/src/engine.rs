//! Shared computation context: field, budget and memoized algebra.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use binedge_core::betti::{graded_betti_cached, BettiCache, BettiError, BettiOptions, BettiTable};
use binedge_core::field::NotPrime;
use binedge_core::hilbert::{h_polynomial, HPolynomial};
use binedge_core::{Graph, PrimeField, DEFAULT_PRIME};

use crate::enumerate::graph_id;

/// Largest graph whose Betti table is attempted without `--stretch`.
pub const DEFAULT_ENVELOPE: usize = 10;

pub struct Engine {
    field: PrimeField,
    opts: BettiOptions,
    envelope: usize,
    pieces: BettiCache,
    tables: Mutex<HashMap<String, Arc<BettiTable>>>,
    hpolys: Mutex<HashMap<String, HPolynomial>>,
}

impl Engine {
    pub fn new(prime: u32) -> Result<Self, NotPrime> {
        Ok(Engine {
            field: PrimeField::new(prime)?,
            opts: BettiOptions::default(),
            envelope: DEFAULT_ENVELOPE,
            pieces: BettiCache::new(),
            tables: Mutex::new(HashMap::new()),
            hpolys: Mutex::new(HashMap::new()),
        })
    }

    /// Wall-clock budget for all Betti computations, counted from now.
    pub fn with_budget(mut self, budget: Option<Duration>) -> Self {
        self.opts.deadline = budget.map(|b| Instant::now() + b);
        self
    }

    /// Lifts the vertex-count envelope for Betti tables.
    pub fn with_stretch(mut self, stretch: bool) -> Self {
        if stretch {
            self.envelope = binedge_core::graph::MAX_VERTICES;
        }
        self
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn prime(&self) -> u32 {
        self.field.prime()
    }

    /// Betti table of `S/J_G`, memoized by isomorphism class.
    pub fn betti(&self, g: &Graph) -> Result<Arc<BettiTable>, BettiError> {
        if g.n() > self.envelope {
            return Err(BettiError::EnvelopeExceeded(format!(
                "{} vertices exceeds the default envelope of {}; pass --stretch",
                g.n(),
                self.envelope
            )));
        }
        let key = graph_id(g);
        if let Some(t) = self.tables.lock().expect("table memo").get(&key) {
            return Ok(t.clone());
        }
        let table = Arc::new(graded_betti_cached(&self.field, g, &self.opts, &self.pieces)?);
        self.tables.lock().expect("table memo").insert(key, table.clone());
        Ok(table)
    }

    pub fn regularity(&self, g: &Graph) -> Result<usize, BettiError> {
        Ok(self.betti(g)?.regularity())
    }

    pub fn h_polynomial(&self, g: &Graph) -> HPolynomial {
        let key = graph_id(g);
        if let Some(h) = self.hpolys.lock().expect("h memo").get(&key) {
            return h.clone();
        }
        let h = h_polynomial(self.field.clone(), g);
        self.hpolys.lock().expect("h memo").insert(key, h.clone());
        h
    }
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new(DEFAULT_PRIME).expect("default prime")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn memoized_results_are_label_independent() {
        let e = Engine::default();
        let p = Graph::new(4, &[(2, 1), (1, 4), (4, 3)]).unwrap();
        assert_eq!(e.regularity(&p).unwrap(), 3);
        assert_eq!(e.regularity(&Graph::path(4)).unwrap(), 3);
        assert_eq!(e.h_polynomial(&p), e.h_polynomial(&Graph::path(4)));
    }

    #[test]
    fn envelope_is_enforced() {
        let e = Engine::default();
        assert!(matches!(e.betti(&Graph::path(11)), Err(BettiError::EnvelopeExceeded(_))));
    }
}
