//! Counting k-colourings (adjacent facets differ) up to polytope symmetry and
//! renaming of colours.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::time::Instant;

use rayon::prelude::*;

use super::{search_order, Meter, SearchBudget, SearchStats};
use crate::error::{Error, Result};
use crate::polytope::{Polytope, SymmetryGroup};

/// Result of a chromatic count. `classes` is exact when `stats.complete`,
/// otherwise a lower bound.
#[derive(Debug, Clone)]
pub struct ChromaticCount {
    pub k: usize,
    pub classes: usize,
    /// Colourings counted up to renaming of colours only (no polytope symmetry).
    pub up_to_colour_permutation: u64,
    /// One colouring per class, values in `1..=k`, sorted by canonical form.
    pub representatives: Vec<Vec<usize>>,
    pub stats: SearchStats,
}

/// Relabels colours by first appearance along `order` and compares against
/// `bound` as it goes; `None` means the result exceeds the bound.
fn relabel(colours: &[u8], order: &[usize], k: usize, bound: Option<&[u8]>) -> Option<Vec<u8>> {
    let mut names = [u8::MAX; 256];
    let mut next = 0u8;
    let mut out = Vec::with_capacity(order.len());
    let mut decided = bound.is_none();
    for (i, &f) in order.iter().enumerate() {
        let c = colours[f] as usize;
        if names[c] == u8::MAX {
            names[c] = next;
            next += 1;
        }
        let code = names[c];
        if !decided {
            match code.cmp(&bound.unwrap()[i]) {
                Ordering::Less => decided = true,
                Ordering::Greater => return None,
                Ordering::Equal => {}
            }
        }
        out.push(code);
    }
    debug_assert!(next as usize <= k);
    Some(out)
}

fn canonical(colours: &[u8], group: &SymmetryGroup, k: usize) -> Vec<u8> {
    let mut best: Option<Vec<u8>> = None;
    for sigma in group.perms() {
        if let Some(r) = relabel(colours, sigma, k, best.as_deref()) {
            best = Some(r);
        }
    }
    best.expect("group contains the identity")
}

struct Engine<'a> {
    p: &'a Polytope,
    group: &'a SymmetryGroup,
    order: &'a [usize],
    k: usize,
    colours: Vec<u8>,
    found: BTreeSet<Vec<u8>>,
    leaves: u64,
}

const UNSET: u8 = u8::MAX;

impl Engine<'_> {
    fn allowed(&self, f: usize, c: u8) -> bool {
        self.p.neighbours(f).iter().all(|&g| self.colours[g] != c)
    }

    fn run(&mut self, depth: usize, used: u8, meter: &mut Meter) {
        if depth == self.order.len() {
            let key = canonical(&self.colours, self.group, self.k);
            self.found.insert(key);
            self.leaves += 1;
            return;
        }
        let f = self.order[depth];
        let limit = (used as usize + 1).min(self.k) as u8;
        for c in 0..limit {
            if !self.allowed(f, c) {
                continue;
            }
            if !meter.tick() {
                return;
            }
            self.colours[f] = c;
            self.run(depth + 1, used.max(c + 1), meter);
            self.colours[f] = UNSET;
        }
    }

    /// Partial assignments of the first `depth` facets in search order.
    fn prefixes(&mut self, depth: usize, pos: usize, used: u8, out: &mut Vec<(Vec<u8>, u8)>) {
        if pos == depth.min(self.order.len()) {
            out.push((self.colours.clone(), used));
            return;
        }
        let f = self.order[pos];
        let limit = (used as usize + 1).min(self.k) as u8;
        for c in 0..limit {
            if self.allowed(f, c) {
                self.colours[f] = c;
                self.prefixes(depth, pos + 1, used.max(c + 1), out);
                self.colours[f] = UNSET;
            }
        }
    }
}

/// Counts proper k-colourings of the facets of `p` up to `group` and colour
/// permutations.
///
/// Colours are introduced in order of first appearance, which removes colour
/// permutations from the search; each leaf is then reduced to its minimal
/// relabelled form over the symmetry group. The search tree is split at a
/// fixed depth into independent tasks that share the node budget equally.
pub fn enumerate_chromatic_colourings(
    p: &Polytope,
    group: &SymmetryGroup,
    k: usize,
    budget: &SearchBudget,
) -> Result<ChromaticCount> {
    if k < p.dimension() || k > 64 {
        return Err(Error::Search(format!(
            "k = {k} is below the clique size {} or above 64",
            p.dimension()
        )));
    }
    let start = Instant::now();
    let order = search_order(p);
    let mut root = Engine {
        p,
        group,
        order: &order,
        k,
        colours: vec![UNSET; p.num_facets()],
        found: BTreeSet::new(),
        leaves: 0,
    };
    let mut tasks = Vec::new();
    let split = 8.min(order.len());
    root.prefixes(split, 0, 0, &mut tasks);
    let share = (budget.max_nodes / tasks.len().max(1) as u64).max(1);

    let results: Vec<(BTreeSet<Vec<u8>>, u64, SearchStats)> = budget.pool().install(|| {
        tasks
            .par_iter()
            .map(|(colours, used)| {
                let mut meter = Meter::new(share, budget.max_seconds);
                let mut e = Engine {
                    p,
                    group,
                    order: &order,
                    k,
                    colours: colours.clone(),
                    found: BTreeSet::new(),
                    leaves: 0,
                };
                e.run(split, *used, &mut meter);
                (e.found, e.leaves, meter.stats())
            })
            .collect()
    });

    let mut all = BTreeSet::new();
    let mut stats = SearchStats {
        complete: true,
        ..Default::default()
    };
    let mut leaves = 0;
    for (found, n, st) in results {
        leaves += n;
        stats.nodes += st.nodes;
        stats.complete &= st.complete;
        all.extend(found);
    }
    stats.seconds = start.elapsed().as_secs_f64();
    let representatives: Vec<Vec<usize>> = all
        .iter()
        .map(|key| {
            // key[i] is the colour of facet i (identity order is one of the relabelled orders)
            key.iter().map(|&c| c as usize + 1).collect()
        })
        .collect();
    Ok(ChromaticCount {
        k,
        classes: all.len(),
        up_to_colour_permutation: leaves,
        representatives,
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{make_dodecahedron, make_polygon, symmetry_group};

    #[test]
    fn pentagon_three_colourings() {
        let p = make_polygon(5);
        let g = symmetry_group(&p);
        let c = enumerate_chromatic_colourings(&p, &g, 3, &SearchBudget::default()).unwrap();
        assert!(c.stats.complete);
        assert_eq!(c.classes, 1);
    }

    #[test]
    fn dodecahedron_four_colourings() {
        let d = make_dodecahedron();
        let g = symmetry_group(&d);
        let c = enumerate_chromatic_colourings(&d, &g, 4, &SearchBudget::default()).unwrap();
        assert_eq!(c.classes, 1);
        // 240 proper colourings of the icosahedron graph / 4! renamings
        assert_eq!(c.up_to_colour_permutation, 10);
        for rep in &c.representatives {
            for (i, j) in d.edges() {
                assert_ne!(rep[i], rep[j]);
            }
        }
    }

    #[test]
    fn too_few_colours_rejected() {
        let d = make_dodecahedron();
        let g = symmetry_group(&d);
        assert!(enumerate_chromatic_colourings(&d, &g, 2, &SearchBudget::default()).is_err());
    }
}
