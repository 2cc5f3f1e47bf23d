//! Extending a non-orientable colouring of a dodecahedral facet of the
//! 120-cell to an orientable colouring of the whole 120-cell.
//!
//! The seed puts (0, …, 0, 1) on the facet and (v, 0, …, 0, ε(v)+1) on the
//! neighbour meeting it in a face coloured v. Every seeded colour then has odd
//! weight, and the search only ever uses odd-weight colours, so any
//! completion is orientable with χ = coordinate sum.

use serde::{Deserialize, Serialize};

use super::{Meter, SearchBudget, SearchStats};
use crate::colouring::{Colouring, PartialColouring};
use crate::error::{Error, Result};
use crate::f2::{self, Basis, F2Vector};
use crate::polytope::Polytope;

/// Largest rank the extension engine handles (colours index a 64-bit mask).
const MAX_SEARCH_RANK: usize = 6;

/// The odd-weight vectors of F₂ˢ in increasing encoding.
pub fn odd_palette(rank: usize) -> Vec<F2Vector> {
    (1..(1u128 << rank)).filter(|&v| f2::parity(v) == 1).collect()
}

/// Seed of rank 5 at facet `f0` from a proper F₂³-colouring `mu` of its facet subpolytope.
pub fn seed_from_facet(z: &Polytope, f0: usize, mu: &Colouring) -> Result<PartialColouring> {
    seed_from_facet_with_rank(z, f0, mu, 5)
}

/// Seed of arbitrary rank: `f0` gets the last unit vector; the neighbour
/// across the face coloured `v` gets `v` in the low coordinates and the
/// parity correction ε(v)+1 in the last one.
pub fn seed_from_facet_with_rank(z: &Polytope, f0: usize, mu: &Colouring, rank: usize) -> Result<PartialColouring> {
    if rank <= mu.rank() {
        return Err(Error::RankOutOfRange(rank));
    }
    let (sub, incidence) = z.facet_subpolytope(f0)?;
    if let Some(vertex) = mu.improper_vertex(&sub)? {
        return Err(Error::Improper {
            vertex,
            facets: sub.vertices()[vertex].clone(),
        });
    }
    let top = rank - 1;
    let mut seed = PartialColouring::empty(rank, z.num_facets())?;
    seed.set(f0, Some(f2::unit(top)));
    for (a, &g) in incidence.iter().enumerate() {
        let v = mu.colour(a);
        seed.set(g, Some(v | ((f2::parity(v) ^ 1) as u128) << top));
    }
    Ok(seed)
}

/// How an extension search ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtensionStatus {
    Found,
    /// The whole search space was explored without a solution.
    ExhaustedSpace,
    BudgetOut,
}

#[derive(Debug, Clone)]
pub struct ExtensionOutcome {
    pub status: ExtensionStatus,
    pub colouring: Option<Colouring>,
    pub stats: SearchStats,
}

struct Engine<'a> {
    p: &'a Polytope,
    palette: u64,
    colours: Vec<u8>,
    coloured_neighbours: Vec<u32>,
    rank: usize,
}

const UNSET: u8 = u8::MAX;

/// Bit mask (over the 2^rank vectors) of the span of up to three vectors.
#[inline]
fn span_mask(vs: &[u8]) -> u64 {
    let mut elems: u64 = 1;
    for &v in vs {
        let mut shifted = 0u64;
        let mut rest = elems;
        while rest != 0 {
            let e = rest.trailing_zeros() as u8;
            rest &= rest - 1;
            shifted |= 1u64 << (e ^ v);
        }
        elems |= shifted;
    }
    elems
}

impl Engine<'_> {
    /// Palette colours keeping every vertex on `f` independent.
    fn candidates(&self, f: usize) -> u64 {
        let mut forbidden = 0u64;
        let mut buf = [0u8; 4];
        for &vi in self.p.facet_vertices(f) {
            let mut n = 0;
            for &g in &self.p.vertices()[vi] {
                if g != f && self.colours[g] != UNSET {
                    buf[n] = self.colours[g];
                    n += 1;
                }
            }
            if n > 0 {
                forbidden |= span_mask(&buf[..n]);
            } else {
                forbidden |= 1;
            }
        }
        self.palette & !forbidden
    }

    fn assign(&mut self, f: usize, c: u8) {
        self.colours[f] = c;
        for &g in self.p.neighbours(f) {
            self.coloured_neighbours[g] += 1;
        }
    }

    fn unassign(&mut self, f: usize) {
        self.colours[f] = UNSET;
        for &g in self.p.neighbours(f) {
            self.coloured_neighbours[g] -= 1;
        }
    }

    /// Most coloured neighbours first, then lowest index.
    fn next_facet(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for f in 0..self.colours.len() {
            if self.colours[f] != UNSET {
                continue;
            }
            match best {
                Some(b) if self.coloured_neighbours[b] >= self.coloured_neighbours[f] => {}
                _ => best = Some(f),
            }
        }
        best
    }

    fn neighbours_alive(&self, f: usize) -> bool {
        self.p
            .neighbours(f)
            .iter()
            .all(|&g| self.colours[g] != UNSET || self.candidates(g) != 0)
    }

    fn span_of_assigned(&self) -> Basis {
        let mut b = Basis::new();
        for &c in &self.colours {
            if c != UNSET {
                b.insert(c as u128);
            }
        }
        b
    }

    /// Depth-first search; returns true once a spanning completion is in `colours`.
    fn run(&mut self, span: &Basis, meter: &mut Meter) -> bool {
        let Some(f) = self.next_facet() else {
            return span.rank() == self.rank;
        };
        let cands = self.candidates(f);
        let mut rest = cands;
        let mut tried_new_direction = false;
        while rest != 0 {
            let c = rest.trailing_zeros() as u8;
            rest &= rest - 1;
            let fresh = !span.contains(c as u128);
            // colours outside the current span are all equivalent under linear
            // maps fixing the span and the parity functional
            if fresh {
                if tried_new_direction {
                    continue;
                }
                tried_new_direction = true;
            }
            if !meter.tick() {
                return false;
            }
            self.assign(f, c);
            if self.neighbours_alive(f) {
                let found = if fresh {
                    let mut bigger = span.clone();
                    bigger.insert(c as u128);
                    self.run(&bigger, meter)
                } else {
                    self.run(span, meter)
                };
                if found {
                    return true;
                }
                if meter.exhausted {
                    self.unassign(f);
                    return false;
                }
            }
            self.unassign(f);
        }
        false
    }
}

/// Completes `seed` to a proper colouring of `z` using only odd-weight colours
/// and spanning F₂ˢ, or reports that none exists within the budget.
pub fn search_orientable_extension(
    z: &Polytope,
    seed: &PartialColouring,
    budget: &SearchBudget,
) -> Result<ExtensionOutcome> {
    let rank = seed.rank();
    if rank > MAX_SEARCH_RANK {
        return Err(Error::RankOutOfRange(rank));
    }
    if seed.colours().len() != z.num_facets() {
        return Err(Error::LengthMismatch {
            expected: z.num_facets(),
            got: seed.colours().len(),
        });
    }
    if let Some(c) = seed.colours().iter().flatten().find(|&&c| f2::parity(c) != 1) {
        return Err(Error::Search(format!("seed colour {c} has even weight")));
    }
    if !seed.is_consistent(z) {
        return Err(Error::Search("seed is not proper on its assigned facets".into()));
    }
    let palette = odd_palette(rank).iter().fold(0u64, |m, &v| m | 1u64 << v);
    let mut engine = Engine {
        p: z,
        palette,
        colours: vec![UNSET; z.num_facets()],
        coloured_neighbours: vec![0; z.num_facets()],
        rank,
    };
    for (f, c) in seed.colours().iter().enumerate() {
        if let Some(c) = c {
            engine.assign(f, *c as u8);
        }
    }
    let mut meter = Meter::new(budget.max_nodes, budget.max_seconds);
    let span = engine.span_of_assigned();
    let alive = (0..z.num_facets()).all(|f| engine.colours[f] != UNSET || engine.candidates(f) != 0);
    let found = alive && engine.run(&span, &mut meter);
    let stats = meter.stats();
    if found {
        let colours = engine.colours.iter().map(|&c| c as u128).collect();
        return Ok(ExtensionOutcome {
            status: ExtensionStatus::Found,
            colouring: Some(Colouring::new(rank, colours)?),
            stats,
        });
    }
    let status = if meter.exhausted {
        ExtensionStatus::BudgetOut
    } else {
        ExtensionStatus::ExhaustedSpace
    };
    Ok(ExtensionOutcome {
        status,
        colouring: None,
        stats,
    })
}
