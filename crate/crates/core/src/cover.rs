//! Explicit manifold covers M_λ as copies of the polytope glued across facets.
//!
//! Copies are indexed by the image subgroup G = span{λ_F}, written in
//! coordinates of a basis of G so that copy indices run over `0..2^r`.
//! Copy `g` is glued to copy `g + λ_F` along facet `F`.

use std::collections::{BTreeMap, HashMap};

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::colouring::{induced_colouring, is_orientable, Colouring};
use crate::error::{Error, Result};
use crate::f2::{self, F2Vector};
use crate::polytope::Polytope;
use crate::volume::{Tiling, Volume};

/// Largest image dimension for which the copies are materialised.
pub const MAX_COVER_RANK: usize = 20;

#[derive(Debug, Clone)]
pub struct CoverComplex {
    base: Polytope,
    colouring: Colouring,
    rank: usize,
    /// λ_F in coordinates of the image basis.
    coords: Vec<u32>,
    tiling: Option<Tiling>,
}

/// One connected component of the preimage of a facet.
///
/// The piece `(g, F)` is the copy of `F` shared by copies `g` and `g + λ_F`;
/// it is recorded by the smaller of the two.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypersurfaceComponent {
    pub facet: usize,
    pub pieces: Vec<u32>,
}

/// Union–find over `0..n`.
pub(crate) struct Dsu(Vec<usize>);

impl Dsu {
    pub fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Whether the multigraph on `nodes` with the given edges admits a 2-colouring
/// in which every edge joins different colours.
fn bipartite(nodes: &[u32], edges: impl Fn(u32) -> Vec<u32>) -> bool {
    let mut side: HashMap<u32, bool> = HashMap::new();
    for &start in nodes {
        if side.contains_key(&start) {
            continue;
        }
        side.insert(start, false);
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            let s = side[&x];
            for y in edges(x) {
                match side.get(&y) {
                    Some(&t) if t == s => return false,
                    Some(_) => {}
                    None => {
                        side.insert(y, !s);
                        stack.push(y);
                    }
                }
            }
        }
    }
    true
}

impl CoverComplex {
    pub fn base(&self) -> &Polytope {
        &self.base
    }

    pub fn colouring(&self) -> &Colouring {
        &self.colouring
    }

    /// Dimension of the image subgroup; the cover has `2^rank` copies.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn copies(&self) -> usize {
        1 << self.rank
    }

    pub fn tiling(&self) -> Option<Tiling> {
        self.tiling
    }

    /// Overrides the tile count recognised from the base polytope.
    pub fn with_tiling(mut self, tiling: Tiling) -> Self {
        self.tiling = Some(tiling);
        self
    }

    /// The copy glued to `copy` across `facet`.
    #[inline]
    pub fn partner(&self, copy: u32, facet: usize) -> u32 {
        copy ^ self.coords[facet]
    }

    /// Image coordinates of λ_F.
    pub fn coordinate(&self, facet: usize) -> u32 {
        self.coords[facet]
    }

    /// The gluing is a fixed-point-free involution on (copy, facet) pairs.
    pub fn gluing_is_involution(&self) -> bool {
        (0..self.copies() as u32).all(|g| {
            (0..self.base.num_facets()).all(|f| {
                let h = self.partner(g, f);
                h != g && self.partner(h, f) == g
            })
        })
    }

    /// Connectivity of the graph on copies with an edge per facet gluing.
    pub fn connected(&self) -> bool {
        let n = self.copies();
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0u32];
        let mut count = 1;
        while let Some(g) = stack.pop() {
            for f in 0..self.base.num_facets() {
                let h = self.partner(g, f) as usize;
                if !seen[h] {
                    seen[h] = true;
                    count += 1;
                    stack.push(h as u32);
                }
            }
        }
        count == n
    }

    /// χ(M_λ) = |G|·χ_orb(P); an error if this is not an integer.
    pub fn euler_characteristic(&self) -> Result<i64> {
        let chi = self.base.orbifold_euler_characteristic() * Rational64::from_integer(self.copies() as i64);
        if chi.is_integer() {
            Ok(chi.to_integer())
        } else {
            Err(Error::NonIntegralEuler(chi.to_string()))
        }
    }

    /// χ counted directly on the glued complex: every face of every copy,
    /// identified with its images across the facets containing it.
    pub fn euler_characteristic_from_faces(&self) -> i64 {
        let n = self.base.dimension();
        let copies = self.copies();
        // interiors of the copies are never identified
        let mut chi = if n.is_multiple_of(2) {
            copies as i64
        } else {
            -(copies as i64)
        };
        for codim in 1..=n {
            let faces = if codim == n {
                self.base.vertices().to_vec()
            } else {
                self.base.faces_of_codim(codim)
            };
            let mut dsu = Dsu::new(faces.len() * copies);
            for (i, face) in faces.iter().enumerate() {
                for g in 0..copies as u32 {
                    for &f in face {
                        let h = self.partner(g, f);
                        dsu.union(i * copies + g as usize, i * copies + h as usize);
                    }
                }
            }
            let classes = (0..faces.len() * copies).filter(|&x| dsu.find(x) == x).count() as i64;
            let dim = n - codim;
            chi += if dim.is_multiple_of(2) { classes } else { -classes };
        }
        chi
    }

    /// Orientability via the functional criterion on the image colouring.
    pub fn orientable(&self) -> bool {
        f2::solve_all_ones(&self.coords.iter().map(|&c| c as F2Vector).collect::<Vec<_>>()).is_some()
    }

    /// Orientability read off the complex: adjacent copies are mirror images,
    /// so an orientation exists iff the copy graph is bipartite.
    pub fn orientable_from_gluing(&self) -> bool {
        let nodes: Vec<u32> = (0..self.copies() as u32).collect();
        bipartite(&nodes, |g| {
            (0..self.base.num_facets()).map(|f| self.partner(g, f)).collect()
        })
    }

    /// Components of the preimage of `facet`, ordered by smallest piece.
    ///
    /// Pieces `(g, F)` and `(g′, F)` are adjacent across the ridge `F ∩ G`
    /// when `g′ ∈ {g, g + λ_F} + λ_G`.
    pub fn facet_preimage(&self, facet: usize) -> Result<Vec<HypersurfaceComponent>> {
        self.base.check_facet(facet)?;
        let cf = self.coords[facet];
        let n = self.copies();
        let rep = |g: u32| g.min(g ^ cf);
        let mut dsu = Dsu::new(n);
        for g in 0..n as u32 {
            for &nb in self.base.neighbours(facet) {
                dsu.union(rep(g) as usize, rep(g ^ self.coords[nb]) as usize);
            }
        }
        let mut comps: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
        for g in 0..n as u32 {
            if rep(g) == g {
                comps.entry(dsu.find(g as usize)).or_default().push(g);
            }
        }
        Ok(comps
            .into_values()
            .map(|pieces| HypersurfaceComponent { facet, pieces })
            .collect())
    }

    /// Checks that `component` is, as a complex of facet copies, isomorphic to
    /// the cover of the facet built from the induced colouring.
    pub fn component_matches_induced_cover(&self, component: &HypersurfaceComponent) -> Result<bool> {
        let facet = component.facet;
        let (sub, induced) = induced_colouring(&self.base, facet, &self.colouring)?;
        let induced_cover = build_cover(&sub, &induced)?;
        if induced_cover.copies() != component.pieces.len() {
            return Ok(false);
        }
        let cf = self.coords[facet];
        let rep = |g: u32| g.min(g ^ cf);
        let index: HashMap<u32, usize> = component.pieces.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let neighbours = self.base.neighbours(facet);
        let glue = |i: usize, a: usize| -> Option<usize> {
            index
                .get(&rep(component.pieces[i] ^ self.coords[neighbours[a]]))
                .copied()
        };

        let size = component.pieces.len();
        'target: for start in 0..size as u32 {
            let mut map = vec![u32::MAX; size];
            let mut used = vec![false; size];
            map[0] = start;
            used[start as usize] = true;
            let mut stack = vec![0usize];
            while let Some(i) = stack.pop() {
                for a in 0..neighbours.len() {
                    let Some(j) = glue(i, a) else { return Ok(false) };
                    let image = induced_cover.partner(map[i], a);
                    if map[j] == u32::MAX {
                        if used[image as usize] {
                            continue 'target;
                        }
                        map[j] = image;
                        used[image as usize] = true;
                        stack.push(j);
                    } else if map[j] != image {
                        continue 'target;
                    }
                }
            }
            if map.iter().all(|&x| x != u32::MAX) {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Cuts the cover open along `component`.
    ///
    /// Each piece splits into the two facet copies on either side. Boundary
    /// cell `(h, F)` continues across the ridge `F ∩ G` into `(h + λ_G, F)`,
    /// the cell on the copy reached through facet `G`.
    pub fn cut_along(&self, component: &HypersurfaceComponent) -> Result<CutReport> {
        let facet = component.facet;
        let components = self.facet_preimage(facet)?;
        if !components.contains(component) {
            return Err(Error::InvalidComponent(format!(
                "not a component of the preimage of facet {facet}"
            )));
        }
        let cf = self.coords[facet];
        let mut cells: Vec<u32> = component.pieces.iter().flat_map(|&g| [g, g ^ cf]).collect();
        cells.sort_unstable();
        let index: HashMap<u32, usize> = cells.iter().enumerate().map(|(i, &h)| (h, i)).collect();
        let neighbours = self.base.neighbours(facet);
        let mut dsu = Dsu::new(cells.len());
        for (i, &h) in cells.iter().enumerate() {
            for &g in neighbours {
                let j = index[&(h ^ self.coords[g])];
                dsu.union(i, j);
            }
        }
        let mut groups: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
        for (i, &h) in cells.iter().enumerate() {
            groups.entry(dsu.find(i)).or_default().push(h);
        }
        let boundary: Vec<BoundaryComponent> = groups
            .into_values()
            .map(|members| {
                let orientable = bipartite(&members, |h| neighbours.iter().map(|&g| h ^ self.coords[g]).collect());
                BoundaryComponent {
                    cells: members.len(),
                    orientable,
                    copies: members,
                }
            })
            .collect();

        // one-sided exactly when λ_F lies in the span of the neighbouring colours
        let nbr: Vec<F2Vector> = neighbours.iter().map(|&g| self.coords[g] as F2Vector).collect();
        let predicted_one_sided = f2::gf2_rank(&nbr) == f2::gf2_rank(&[nbr.clone(), vec![cf as F2Vector]].concat());

        let volumes = match self.tiling {
            Some(t) => {
                let (sub, _) = self.base.facet_subpolytope(facet)?;
                Tiling::identify(&sub).ok().map(|bt| {
                    let ambient = Volume::new(t.kind, t.count * self.copies() as u64);
                    let per = boundary
                        .iter()
                        .map(|b| Volume::new(bt.kind, bt.count * b.cells as u64))
                        .collect();
                    CutVolumes { ambient, boundary: per }
                })
            }
            None => None,
        };
        Ok(CutReport {
            ambient_copies: self.copies(),
            ambient_cells: self.tiling.map(|t| t.count * self.copies() as u64),
            ambient_orientable: self.orientable(),
            pieces: component.pieces.len(),
            one_sided: boundary.len() == 1,
            predicted_one_sided,
            boundary,
            volumes,
        })
    }

    /// Serializable summary of the cover.
    pub fn summary(&self) -> Result<CoverSummary> {
        let mut preimages = Vec::with_capacity(self.base.num_facets());
        for f in 0..self.base.num_facets() {
            let comps = self.facet_preimage(f)?;
            preimages.push(PreimageSummary {
                facet: f,
                components: comps.len(),
                pieces_per_component: comps.iter().map(|c| c.pieces.len()).collect(),
            });
        }
        let volume = self.tiling.map(|t| Volume::new(t.kind, t.count * self.copies() as u64));
        Ok(CoverSummary {
            copies: self.copies(),
            orientable: self.orientable(),
            connected: self.connected(),
            euler_characteristic: self.euler_characteristic()?,
            facet_preimages: preimages,
            volume,
        })
    }
}

/// Builds M_λ for a proper colouring.
pub fn build_cover(p: &Polytope, lambda: &Colouring) -> Result<CoverComplex> {
    if let Some(vertex) = lambda.improper_vertex(p)? {
        return Err(Error::Improper {
            vertex,
            facets: p.vertices()[vertex].clone(),
        });
    }
    let (rank, coords) = f2::image_coordinates(lambda.colours());
    if rank > MAX_COVER_RANK {
        return Err(Error::CoverTooLarge(rank));
    }
    Ok(CoverComplex {
        base: p.clone(),
        colouring: lambda.clone(),
        rank,
        coords: coords.into_iter().map(|c| c as u32).collect(),
        tiling: Tiling::identify(p).ok(),
    })
}

/// Orientability of the cover through the functional criterion on λ itself.
pub fn cover_orientable(cover: &CoverComplex) -> bool {
    matches!(is_orientable(cover.base(), cover.colouring()), Ok(Some(_)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryComponent {
    /// Number of facet copies tessellating this component.
    pub cells: usize,
    pub orientable: bool,
    /// The copies of the polytope on whose side each cell lies.
    pub copies: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CutVolumes {
    pub ambient: Volume,
    pub boundary: Vec<Volume>,
}

/// Outcome of cutting a cover along one hypersurface component.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CutReport {
    pub ambient_copies: usize,
    pub ambient_cells: Option<u64>,
    pub ambient_orientable: bool,
    pub pieces: usize,
    pub boundary: Vec<BoundaryComponent>,
    /// Computed from the cut complex: a single boundary component.
    pub one_sided: bool,
    /// Predicted from the colours: λ_F in the span of the neighbouring colours.
    pub predicted_one_sided: bool,
    pub volumes: Option<CutVolumes>,
}

impl CutReport {
    pub fn boundary_cells(&self) -> usize {
        self.boundary.iter().map(|b| b.cells).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreimageSummary {
    pub facet: usize,
    pub components: usize,
    pub pieces_per_component: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverSummary {
    pub copies: usize,
    pub orientable: bool,
    pub connected: bool,
    pub euler_characteristic: i64,
    pub facet_preimages: Vec<PreimageSummary>,
    pub volume: Option<Volume>,
}
