//! Backtracking engines: small-cover census, chromatic counts up to symmetry
//! and the orientable extension search on the 120-cell.

mod chromatic;
mod extension;

pub use chromatic::{enumerate_chromatic_colourings, ChromaticCount};
pub use extension::{
    odd_palette, search_orientable_extension, seed_from_facet, seed_from_facet_with_rank, ExtensionOutcome,
    ExtensionStatus,
};

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::colouring::{canonical_form, colouring_automorphisms, is_orientable, CanonicalForm, Colouring};
use crate::error::{Error, Result};
use crate::f2::{self, F2Vector};
use crate::polytope::{Polytope, SymmetryGroup};

/// Limits for a search: visited nodes, wall-clock time and thread count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub max_seconds: f64,
    pub parallel: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: 100_000_000,
            max_seconds: 1800.0,
            parallel: 1,
        }
    }
}

impl SearchBudget {
    pub fn new(max_nodes: u64, max_seconds: f64, parallel: usize) -> Result<Self> {
        if max_nodes == 0 || max_seconds.is_nan() || max_seconds <= 0.0 || parallel == 0 {
            return Err(Error::Search("budget limits must be positive".into()));
        }
        Ok(SearchBudget {
            max_nodes,
            max_seconds,
            parallel,
        })
    }

    pub(crate) fn pool(&self) -> rayon::ThreadPool {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.parallel)
            .build()
            .expect("thread pool")
    }
}

/// Node and time accounting shared by the engines.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub seconds: f64,
    /// False when a budget limit stopped the search early.
    pub complete: bool,
}

pub(crate) struct Meter {
    start: Instant,
    deadline: Duration,
    max_nodes: u64,
    pub nodes: u64,
    pub exhausted: bool,
}

impl Meter {
    pub fn new(max_nodes: u64, max_seconds: f64) -> Self {
        Meter {
            start: Instant::now(),
            deadline: Duration::try_from_secs_f64(max_seconds).unwrap_or(Duration::MAX),
            max_nodes,
            nodes: 0,
            exhausted: false,
        }
    }

    /// Counts one node; returns false once the budget is spent.
    #[inline]
    pub fn tick(&mut self) -> bool {
        if self.exhausted {
            return false;
        }
        self.nodes += 1;
        if self.nodes > self.max_nodes || (self.nodes & 0xfff == 0 && self.start.elapsed() > self.deadline) {
            self.exhausted = true;
        }
        !self.exhausted
    }

    pub fn stats(&self) -> SearchStats {
        SearchStats {
            nodes: self.nodes,
            seconds: self.start.elapsed().as_secs_f64(),
            complete: !self.exhausted,
        }
    }
}

/// One equivalence class found by an enumeration.
#[derive(Debug, Clone)]
pub struct ClassRecord {
    pub colouring: Colouring,
    pub canonical: CanonicalForm,
    pub orientable: bool,
    /// Order of the group of polytope symmetries preserving the colouring up to a linear map.
    pub automorphisms: usize,
}

/// Class representatives (sorted by canonical form) with search statistics.
#[derive(Debug, Clone)]
pub struct EnumerationResult {
    pub classes: Vec<ClassRecord>,
    pub stats: SearchStats,
}

impl EnumerationResult {
    pub fn orientable_count(&self) -> usize {
        self.classes.iter().filter(|c| c.orientable).count()
    }

    pub fn non_orientable(&self) -> impl Iterator<Item = &ClassRecord> {
        self.classes.iter().filter(|c| !c.orientable)
    }
}

/// Facets of the first vertex, then the rest in breadth-first order.
pub(crate) fn search_order(p: &Polytope) -> Vec<usize> {
    let m = p.num_facets();
    let mut order: Vec<usize> = p.vertices()[0].clone();
    let mut seen = vec![false; m];
    for &f in &order {
        seen[f] = true;
    }
    let mut head = 0;
    while head < order.len() {
        let i = order[head];
        head += 1;
        for &j in p.neighbours(i) {
            if !seen[j] {
                seen[j] = true;
                order.push(j);
            }
        }
    }
    order
}

struct SmallCoverSearch<'a> {
    p: &'a Polytope,
    order: Vec<usize>,
    colours: Vec<F2Vector>,
    found: Vec<Vec<F2Vector>>,
}

impl SmallCoverSearch<'_> {
    fn fits(&self, f: usize, c: F2Vector) -> bool {
        self.p.facet_vertices(f).iter().all(|&vi| {
            let mut cs: Vec<F2Vector> = self.p.vertices()[vi]
                .iter()
                .filter(|&&g| g != f && self.colours[g] != 0)
                .map(|&g| self.colours[g])
                .collect();
            cs.push(c);
            f2::gf2_rank(&cs) == cs.len()
        })
    }

    fn run(&mut self, depth: usize, meter: &mut Meter) {
        if depth == self.order.len() {
            self.found.push(self.colours.clone());
            return;
        }
        let f = self.order[depth];
        let n = self.p.dimension();
        for c in 1..(1u128 << n) {
            if !self.fits(f, c) {
                continue;
            }
            if !meter.tick() {
                return;
            }
            self.colours[f] = c;
            self.run(depth + 1, meter);
            self.colours[f] = 0;
        }
    }
}

/// All small covers of `p` (proper F₂ⁿ-colourings spanning F₂ⁿ) up to equivalence.
///
/// The first vertex's facets are fixed to e₁, …, e_n, the remaining facets are
/// assigned depth-first, and leaves are deduplicated by canonical form. The
/// subtrees below the first free facet are searched in parallel, each with an
/// equal share of the node budget, so the result does not depend on the
/// thread count.
pub fn enumerate_small_covers(p: &Polytope, group: &SymmetryGroup, budget: &SearchBudget) -> Result<EnumerationResult> {
    let n = p.dimension();
    let order = search_order(p);
    let mut base = vec![0; p.num_facets()];
    for (i, &f) in order[..n].iter().enumerate() {
        base[f] = f2::unit(i);
    }
    let branches: Vec<F2Vector> = (1..(1u128 << n)).collect();
    let share = (budget.max_nodes / branches.len() as u64).max(1);
    let start = Instant::now();

    let results: Vec<(Vec<Vec<F2Vector>>, SearchStats)> = budget.pool().install(|| {
        branches
            .par_iter()
            .map(|&c| {
                let mut meter = Meter::new(share, budget.max_seconds);
                let mut s = SmallCoverSearch {
                    p,
                    order: order.clone(),
                    colours: base.clone(),
                    found: Vec::new(),
                };
                if order.len() > n {
                    let f = order[n];
                    if s.fits(f, c) && meter.tick() {
                        s.colours[f] = c;
                        s.run(n + 1, &mut meter);
                    }
                } else if c == 1 {
                    s.run(n, &mut meter);
                }
                (s.found, meter.stats())
            })
            .collect()
    });

    let mut classes: BTreeMap<CanonicalForm, Colouring> = BTreeMap::new();
    let mut stats = SearchStats {
        complete: true,
        ..Default::default()
    };
    for (found, st) in results {
        stats.nodes += st.nodes;
        stats.complete &= st.complete;
        for colours in found {
            let lam = Colouring::new(n, colours)?;
            let key = canonical_form(p, group, &lam);
            classes.entry(key).or_insert(lam);
        }
    }
    stats.seconds = start.elapsed().as_secs_f64();
    let classes = classes
        .into_iter()
        .map(|(canonical, colouring)| {
            let orientable = is_orientable(p, &colouring).map(|o| o.is_some())?;
            let automorphisms = colouring_automorphisms(p, group, &colouring);
            Ok(ClassRecord {
                colouring,
                canonical,
                orientable,
                automorphisms,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EnumerationResult { classes, stats })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{make_polygon, symmetry_group};

    #[test]
    fn pentagon_small_covers() {
        let p = make_polygon(5);
        let g = symmetry_group(&p);
        let res = enumerate_small_covers(&p, &g, &SearchBudget::default()).unwrap();
        assert!(res.stats.complete);
        assert_eq!(res.classes.len(), 1);
        assert_eq!(res.orientable_count(), 0);
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        let p = make_polygon(7);
        let g = symmetry_group(&p);
        let budget = SearchBudget::new(3, 10.0, 1).unwrap();
        let res = enumerate_small_covers(&p, &g, &budget).unwrap();
        assert!(!res.stats.complete);
    }

    #[test]
    fn zero_budget_rejected() {
        assert!(SearchBudget::new(0, 1.0, 1).is_err());
        assert!(SearchBudget::new(1, 1.0, 0).is_err());
        assert!(SearchBudget::new(1, f64::NAN, 1).is_err());
    }

    #[test]
    fn unbounded_time_is_accepted() {
        let mut meter = Meter::new(10, f64::INFINITY);
        assert!(meter.tick());
    }
}
