//! F₂ˢ-valued facet colourings and the predicates on them.

mod canonical;

pub use canonical::{canonical_form, colouring_automorphisms, equivalent, CanonicalForm};

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::f2::{self, F2Vector, MAX_RANK};
use crate::polytope::Polytope;

/// Assignment of a vector of F₂ˢ to each facet, in facet-index order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Colouring {
    rank: usize,
    colours: Vec<F2Vector>,
}

/// Covector χ: F₂ˢ → F₂ with χ(λ_F) = 1 for every facet, witnessing orientability.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Functional(pub F2Vector);

impl Functional {
    pub fn eval(&self, v: F2Vector) -> u32 {
        f2::pair(self.0, v)
    }
}

impl Colouring {
    pub fn new(rank: usize, colours: Vec<F2Vector>) -> Result<Self> {
        if rank == 0 || rank > MAX_RANK {
            return Err(Error::RankOutOfRange(rank));
        }
        let mask = f2::full_mask(rank);
        if let Some(&c) = colours.iter().find(|&&c| c & !mask != 0) {
            return Err(Error::ColourOutOfRange { colour: c, rank });
        }
        Ok(Colouring { rank, colours })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn colours(&self) -> &[F2Vector] {
        &self.colours
    }

    pub fn colour(&self, facet: usize) -> F2Vector {
        self.colours[facet]
    }

    pub fn len(&self) -> usize {
        self.colours.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colours.is_empty()
    }

    fn check_length(&self, p: &Polytope) -> Result<()> {
        if self.colours.len() != p.num_facets() {
            return Err(Error::LengthMismatch {
                expected: p.num_facets(),
                got: self.colours.len(),
            });
        }
        Ok(())
    }

    /// First vertex whose colours are dependent, if any.
    pub fn improper_vertex(&self, p: &Polytope) -> Result<Option<usize>> {
        self.check_length(p)?;
        Ok(p.vertices().iter().position(|v| {
            let cs: Vec<F2Vector> = v.iter().map(|&f| self.colours[f]).collect();
            f2::gf2_rank(&cs) != v.len()
        }))
    }

    fn require_proper(&self, p: &Polytope) -> Result<()> {
        match self.improper_vertex(p)? {
            None => Ok(()),
            Some(vertex) => Err(Error::Improper {
                vertex,
                facets: p.vertices()[vertex].clone(),
            }),
        }
    }

    /// The colouring with every colour mapped through `g`, given by the images
    /// of the unit vectors of the source; `target_rank` is the rank of the result.
    pub fn map_linear(&self, columns: &[F2Vector], target_rank: usize) -> Result<Colouring> {
        let colours = self
            .colours
            .iter()
            .map(|&c| {
                (0..self.rank)
                    .filter(|&i| c >> i & 1 == 1)
                    .fold(0, |acc, i| acc ^ columns[i])
            })
            .collect();
        Colouring::new(target_rank, colours)
    }

    /// The colouring `F ↦ λ_{σ(F)}`.
    pub fn permute(&self, sigma: &[usize]) -> Colouring {
        Colouring {
            rank: self.rank,
            colours: sigma.iter().map(|&s| self.colours[s]).collect(),
        }
    }
}

/// True iff at every vertex the incident colours are linearly independent.
pub fn is_proper(p: &Polytope, lambda: &Colouring) -> bool {
    matches!(lambda.improper_vertex(p), Ok(None))
}

/// Dimension of the span of all colours. The cover has degree `2^image_dimension`.
pub fn image_dimension(lambda: &Colouring) -> usize {
    f2::gf2_rank(&lambda.colours)
}

/// Whether the colours span the whole of F₂ˢ.
pub fn spans(lambda: &Colouring) -> bool {
    image_dimension(lambda) == lambda.rank
}

/// Solves χ(λ_F) = 1 for all facets. `Ok(None)` means the cover is non-orientable.
pub fn is_orientable(p: &Polytope, lambda: &Colouring) -> Result<Option<Functional>> {
    lambda.require_proper(p)?;
    Ok(f2::solve_all_ones(&lambda.colours).map(Functional))
}

/// Three distinct facets whose colours sum to zero (lowest such triple).
pub fn non_orientability_witness(p: &Polytope, lambda: &Colouring) -> Option<[usize; 3]> {
    if lambda.colours.len() != p.num_facets() {
        return None;
    }
    let mut by_colour: HashMap<F2Vector, Vec<usize>> = HashMap::new();
    for (f, &c) in lambda.colours.iter().enumerate() {
        by_colour.entry(c).or_default().push(f);
    }
    let m = lambda.colours.len();
    for i in 0..m {
        for j in i + 1..m {
            let want = lambda.colours[i] ^ lambda.colours[j];
            if let Some(ks) = by_colour.get(&want) {
                if let Some(&k) = ks.iter().find(|&&k| k > j) {
                    return Some([i, j, k]);
                }
            }
        }
    }
    None
}

/// Turns a chromatic assignment `facet ↦ i ∈ 1..=k` into the F₂ᵏ-colouring `e_i`.
pub fn from_k_colouring(p: &Polytope, k: usize, assignment: &[usize]) -> Result<Colouring> {
    if assignment.len() != p.num_facets() {
        return Err(Error::LengthMismatch {
            expected: p.num_facets(),
            got: assignment.len(),
        });
    }
    if let Some(&bad) = assignment.iter().find(|&&a| a == 0 || a > k) {
        return Err(Error::ColourOutOfRange {
            colour: bad as u128,
            rank: k,
        });
    }
    for (i, j) in p.edges() {
        if assignment[i] == assignment[j] {
            return Err(Error::ChromaticViolation(i, j));
        }
    }
    Colouring::new(k, assignment.iter().map(|&a| f2::unit(a - 1)).collect())
}

/// Projection F₂ˢ → F₂ˢ / ⟨w⟩ ≅ F₂^{s−1}: clear the lowest set bit of `w`
/// using `w` itself, then delete that coordinate.
pub fn quotient_map(w: F2Vector) -> impl Fn(F2Vector) -> F2Vector {
    assert!(w != 0, "cannot quotient by the zero vector");
    let pivot = w.trailing_zeros();
    move |v| {
        let v = if v >> pivot & 1 == 1 { v ^ w } else { v };
        let low = v & ((1u128 << pivot) - 1);
        let high = if pivot >= 127 { 0 } else { v >> (pivot + 1) };
        low | (high << pivot)
    }
}

/// Colouring of the facet subpolytope at `facet` with values in F₂ˢ/⟨λ_F⟩.
/// Facet `a` of the subpolytope is the `a`-th neighbour of `facet`.
pub fn induced_colouring(p: &Polytope, facet: usize, lambda: &Colouring) -> Result<(Polytope, Colouring)> {
    lambda.require_proper(p)?;
    if lambda.rank < 2 {
        return Err(Error::RankOutOfRange(lambda.rank - 1));
    }
    let (sub, incidence) = p.facet_subpolytope(facet)?;
    let project = quotient_map(lambda.colours[facet]);
    let colours = incidence.iter().map(|&g| project(lambda.colours[g])).collect();
    Ok((sub, Colouring::new(lambda.rank - 1, colours)?))
}

/// Extends a proper colouring of the facet subpolytope at `facet` to an
/// orientable colouring of `p` with values in F₂ ⊕ F₂ˢ ⊕ F₂^f, where `f` is
/// the number of facets not adjacent to `facet`. Coordinate 1 carries the
/// parity correction, coordinates 2..=s+1 the facet colour, and each
/// non-adjacent facet gets its own unit vector after that.
pub fn extend_colouring_generic(p: &Polytope, facet: usize, lambda: &Colouring) -> Result<Colouring> {
    let (sub, incidence) = p.facet_subpolytope(facet)?;
    lambda.require_proper(&sub)?;
    let s = lambda.rank;
    let others: Vec<usize> = (0..p.num_facets())
        .filter(|&g| g != facet && !p.adjacent(g, facet))
        .collect();
    let rank = 1 + s + others.len();
    if rank > MAX_RANK {
        return Err(Error::RankOutOfRange(rank));
    }
    let mut colours = vec![0; p.num_facets()];
    colours[facet] = 1;
    for (a, &g) in incidence.iter().enumerate() {
        let v = lambda.colours[a];
        colours[g] = (f2::parity(v) ^ 1) as u128 | v << 1;
    }
    for (i, &g) in others.iter().enumerate() {
        colours[g] = f2::unit(1 + s + i);
    }
    Colouring::new(rank, colours)
}

/// Per-facet optional colours; the frontier of the extension searches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialColouring {
    rank: usize,
    colours: Vec<Option<F2Vector>>,
}

impl PartialColouring {
    pub fn empty(rank: usize, facets: usize) -> Result<Self> {
        if rank == 0 || rank > MAX_RANK {
            return Err(Error::RankOutOfRange(rank));
        }
        Ok(PartialColouring {
            rank,
            colours: vec![None; facets],
        })
    }

    pub fn new(rank: usize, colours: Vec<Option<F2Vector>>) -> Result<Self> {
        let mut out = Self::empty(rank, 0)?;
        let mask = f2::full_mask(rank);
        if let Some(c) = colours.iter().flatten().find(|&&c| c & !mask != 0) {
            return Err(Error::ColourOutOfRange { colour: *c, rank });
        }
        out.colours = colours;
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn colours(&self) -> &[Option<F2Vector>] {
        &self.colours
    }

    pub fn get(&self, facet: usize) -> Option<F2Vector> {
        self.colours[facet]
    }

    pub fn set(&mut self, facet: usize, colour: Option<F2Vector>) {
        self.colours[facet] = colour;
    }

    pub fn assigned(&self) -> usize {
        self.colours.iter().filter(|c| c.is_some()).count()
    }

    /// Every vertex's assigned colours are linearly independent.
    pub fn is_consistent(&self, p: &Polytope) -> bool {
        p.vertices().iter().all(|v| {
            let cs: Vec<F2Vector> = v.iter().filter_map(|&f| self.colours[f]).collect();
            f2::gf2_rank(&cs) == cs.len()
        })
    }

    pub fn complete(&self) -> Option<Colouring> {
        let colours: Option<Vec<_>> = self.colours.iter().copied().collect();
        colours.map(|colours| Colouring {
            rank: self.rank,
            colours,
        })
    }
}
