//! HOMFLY-PT and Kauffman polynomials by skein recursion toward descending
//! diagrams.
//!
//! Conventions:
//! * HOMFLY-PT: `v^{-1} P(L+) - v P(L-) = z P(L0)`, `P(unknot) = 1`.
//! * Kauffman: the regular-isotopy polynomial `Λ` satisfies
//!   `Λ(L+) + Λ(L-) = z (Λ(L0) + Λ(L∞))`, a positive kink contributes a
//!   factor `v`, `Λ(unknot) = 1`, and `F = v^{-w} Λ`.
//!
//! A diagram is descending when, walking the components in order from
//! their first visit, every crossing is first reached on its over-strand.
//! Such a diagram is an unlink. The recursion switches or smooths the first
//! crossing that breaks this, after clearing R-I and R-II configurations.

mod key;

use std::sync::atomic::{AtomicU64, Ordering};

use dashmap::DashMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{CrossingSign, LinkDiagram};
use crate::par;
use crate::poly::{LaurentPoly2, Ring};

pub use key::CanonicalKey;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SkeinError {
    #[error("skein recursion exceeded its budget of {budget} nodes")]
    ResourceLimit { budget: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineConfig {
    pub node_budget: u64,
    pub use_cache: bool,
    pub parallel: bool,
    /// Subtrees of diagrams with at least this many crossings are split
    /// across threads.
    pub parallel_threshold: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self { node_budget: 10_000_000, use_cache: true, parallel: par::available(), parallel_threshold: 14 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CacheStats {
    pub hits: u64,
    pub misses: u64,
    pub entries: u64,
}

/// Memo table from canonical diagram keys to polynomials. Concurrent
/// callers may compute the same entry twice; the values always agree.
#[derive(Debug, Default)]
pub struct SkeinCache {
    map: DashMap<CanonicalKey, LaurentPoly2>,
    hits: AtomicU64,
    misses: AtomicU64,
}

impl SkeinCache {
    fn get(&self, key: &CanonicalKey) -> Option<LaurentPoly2> {
        let found = self.map.get(key).map(|p| p.clone());
        let counter = if found.is_some() { &self.hits } else { &self.misses };
        counter.fetch_add(1, Ordering::Relaxed);
        found
    }

    fn insert(&self, key: CanonicalKey, value: LaurentPoly2) {
        let previous = self.map.insert(key, value.clone());
        debug_assert!(previous.is_none_or(|p| p == value), "cache saw divergent results");
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats {
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
            entries: self.map.len() as u64,
        }
    }

    pub fn clear(&self) {
        self.map.clear();
        self.hits.store(0, Ordering::Relaxed);
        self.misses.store(0, Ordering::Relaxed);
    }
}

struct Budget {
    used: AtomicU64,
    limit: u64,
}

impl Budget {
    fn new(limit: u64) -> Self {
        Self { used: AtomicU64::new(0), limit }
    }

    fn tick(&self) -> Result<(), SkeinError> {
        if self.used.fetch_add(1, Ordering::Relaxed) >= self.limit {
            Err(SkeinError::ResourceLimit { budget: self.limit })
        } else {
            Ok(())
        }
    }
}

/// First crossing met on its under-strand before its over-strand.
pub fn first_non_descending(d: &LinkDiagram) -> Option<usize> {
    let mut seen = vec![false; d.crossing_count()];
    for v in d.components().iter().flatten() {
        if !seen[v.crossing] {
            seen[v.crossing] = true;
            if !v.over {
                return Some(v.crossing);
            }
        }
    }
    None
}

/// `((v^{-1} - v)/z)^{n-1}`.
pub fn homfly_unlink(n: usize) -> LaurentPoly2 {
    LaurentPoly2::from_terms(Ring::Integer, [(1, -1, -1), (-1, 1, -1)]).pow(n.saturating_sub(1) as u32)
}

/// `((v + v^{-1})/z - 1)^{n-1}`.
pub fn kauffman_unlink(n: usize) -> LaurentPoly2 {
    LaurentPoly2::from_terms(Ring::Integer, [(1, 1, -1), (1, -1, -1), (-1, 0, 0)]).pow(n.saturating_sub(1) as u32)
}

#[derive(Debug, Default)]
pub struct SkeinEngine {
    config: EngineConfig,
    homfly_cache: SkeinCache,
    lambda_cache: SkeinCache,
}

impl SkeinEngine {
    pub fn new(config: EngineConfig) -> Self {
        Self { config, ..Default::default() }
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    pub fn cache_stats(&self) -> CacheStats {
        let (a, b) = (self.homfly_cache.stats(), self.lambda_cache.stats());
        CacheStats { hits: a.hits + b.hits, misses: a.misses + b.misses, entries: a.entries + b.entries }
    }

    pub fn clear_cache(&self) {
        self.homfly_cache.clear();
        self.lambda_cache.clear();
    }

    pub fn homfly(&self, d: &LinkDiagram) -> Result<LaurentPoly2, SkeinError> {
        let budget = Budget::new(self.config.node_budget);
        self.homfly_rec(d.clone(), &budget)
    }

    /// The ambient-isotopy Kauffman polynomial `F = v^{-w} Λ`.
    pub fn kauffman(&self, d: &LinkDiagram) -> Result<LaurentPoly2, SkeinError> {
        Ok(self.regular_kauffman(d)?.mul_monomial(1, -d.writhe() as i32, 0))
    }

    /// The regular-isotopy polynomial `Λ`.
    pub fn regular_kauffman(&self, d: &LinkDiagram) -> Result<LaurentPoly2, SkeinError> {
        let budget = Budget::new(self.config.node_budget);
        self.lambda_rec(d.clone(), &budget)
    }

    fn split(&self, d: &LinkDiagram) -> bool {
        self.config.parallel && d.crossing_count() >= self.config.parallel_threshold
    }

    fn homfly_rec(&self, d: LinkDiagram, budget: &Budget) -> Result<LaurentPoly2, SkeinError> {
        budget.tick()?;
        let mut d = d;
        while let Some((next, _)) = crate::diagram::reduce_once(&d) {
            d = next;
        }
        if d.crossing_count() == 0 {
            return Ok(homfly_unlink(d.component_count()));
        }
        let key = self.config.use_cache.then(|| CanonicalKey::of(&d));
        if let Some(hit) = key.as_ref().and_then(|k| self.homfly_cache.get(k)) {
            return Ok(hit);
        }
        let value = match first_non_descending(&d) {
            None => homfly_unlink(d.component_count()),
            Some(c) => {
                let (switched, smoothed) = (d.switch(c), d.smooth_oriented(c));
                let (a, b) = par::join(
                    self.split(&d),
                    || self.homfly_rec(switched, budget),
                    || self.homfly_rec(smoothed, budget),
                );
                let (a, b) = (a?, b?);
                // v^{-1} P+ - v P- = z P0
                match d.sign(c) {
                    CrossingSign::Positive => {
                        let mut out = a.mul_monomial(1, 2, 0);
                        out.add_scaled(&b, 1, 1, 1);
                        out
                    }
                    CrossingSign::Negative => {
                        let mut out = a.mul_monomial(1, -2, 0);
                        out.add_scaled(&b, -1, -1, 1);
                        out
                    }
                }
            }
        };
        if let Some(k) = key {
            self.homfly_cache.insert(k, value.clone());
        }
        Ok(value)
    }

    fn lambda_rec(&self, d: LinkDiagram, budget: &Budget) -> Result<LaurentPoly2, SkeinError> {
        budget.tick()?;
        let mut d = d;
        let mut kinks = 0i64;
        while let Some((next, removed_kink)) = crate::diagram::reduce_once(&d) {
            kinks += removed_kink.map_or(0, |s| s.value());
            d = next;
        }
        let core = if d.crossing_count() == 0 {
            kauffman_unlink(d.component_count())
        } else {
            let key = self.config.use_cache.then(|| CanonicalKey::of(&d));
            match key.as_ref().and_then(|k| self.lambda_cache.get(k)) {
                Some(hit) => hit,
                None => {
                    let value = match first_non_descending(&d) {
                        None => kauffman_unlink(d.component_count()).mul_monomial(1, d.writhe() as i32, 0),
                        Some(c) => {
                            let switched = d.switch(c);
                            let (a, b) = (d.smooth_oriented(c), d.smooth_unoriented(c));
                            let ((sw, sa), sb) = par::join(
                                self.split(&d),
                                || {
                                    par::join(
                                        false,
                                        || self.lambda_rec(switched, budget),
                                        || self.lambda_rec(a, budget),
                                    )
                                },
                                || self.lambda_rec(b, budget),
                            );
                            let mut out = &sa? + &sb?;
                            out = out.mul_monomial(1, 0, 1);
                            &out - &sw?
                        }
                    };
                    if let Some(k) = key {
                        self.lambda_cache.insert(k, value.clone());
                    }
                    value
                }
            }
        };
        Ok(core.mul_monomial(1, kinks as i32, 0))
    }
}

/// HOMFLY-PT polynomial with a fresh default engine.
pub fn homfly(d: &LinkDiagram) -> Result<LaurentPoly2, SkeinError> {
    SkeinEngine::default().homfly(d)
}

/// Kauffman polynomial `F` with a fresh default engine.
pub fn kauffman(d: &LinkDiagram) -> Result<LaurentPoly2, SkeinError> {
    SkeinEngine::default().kauffman(d)
}
