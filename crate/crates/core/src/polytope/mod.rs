//! Combinatorics of simple right-angled polytopes.
//!
//! A polytope is stored by its facets, the facet adjacency relation and its
//! vertices, each vertex being the set of the `n` facets that meet there. All
//! higher faces are implicit: in a simple polytope a codimension-k face is a
//! k-subset of facets contained in some vertex.

mod generate;
mod symmetry;

pub use generate::{make_120cell, make_dodecahedron, make_polygon};
pub use symmetry::{find_isomorphism, symmetry_group, SymmetryGroup};

use std::collections::{BTreeSet, HashMap, HashSet};

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Simple polytope of dimension 2 to 4, immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polytope {
    dimension: usize,
    labels: Vec<String>,
    neighbours: Vec<Vec<usize>>,
    vertices: Vec<Vec<usize>>,
    adjacent: Vec<bool>,
    facet_vertices: Vec<Vec<usize>>,
}

/// Face counts `f₀, …, f_{n−1}` followed by `f_n = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FVector(pub Vec<usize>);

impl FVector {
    pub fn vertices(&self) -> usize {
        self.0[0]
    }

    pub fn facets(&self) -> usize {
        self.0[self.0.len() - 2]
    }

    /// Alternating sum `Σ (−1)^k f_k` over proper faces.
    pub fn euler(&self) -> i64 {
        self.0[..self.0.len() - 1]
            .iter()
            .enumerate()
            .map(|(k, &f)| if k % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }
}

impl Polytope {
    /// Builds and validates a polytope. Vertex sets and the vertex list are
    /// sorted so that indices and serialization are canonical.
    pub fn new(
        dimension: usize,
        labels: Vec<String>,
        edges: &[(usize, usize)],
        vertices: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if !(2..=4).contains(&dimension) {
            return Err(Error::InvalidPolytope(format!("dimension {dimension} outside 2..=4")));
        }
        let m = labels.len();
        if m == 0 {
            return Err(Error::InvalidPolytope("no facets".into()));
        }
        let mut adjacent = vec![false; m * m];
        for &(i, j) in edges {
            if i >= m || j >= m {
                return Err(Error::FacetOutOfRange {
                    index: i.max(j),
                    facets: m,
                });
            }
            if i == j {
                return Err(Error::InvalidPolytope(format!("facet {i} adjacent to itself")));
            }
            adjacent[i * m + j] = true;
            adjacent[j * m + i] = true;
        }
        let mut vertices: Vec<Vec<usize>> = vertices
            .into_iter()
            .map(|mut v| {
                v.sort_unstable();
                v
            })
            .collect();
        vertices.sort();
        for w in vertices.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidPolytope(format!("duplicate vertex {:?}", w[0])));
            }
        }
        if let Some(&index) = vertices.iter().flatten().find(|&&i| i >= m) {
            return Err(Error::FacetOutOfRange { index, facets: m });
        }
        let mut facet_vertices = vec![Vec::new(); m];
        for (vi, v) in vertices.iter().enumerate() {
            if v.len() != dimension {
                return Err(Error::InvalidPolytope(format!(
                    "vertex {v:?} lies on {} facets, expected {dimension}",
                    v.len()
                )));
            }
            for (a, &i) in v.iter().enumerate() {
                if a > 0 && v[a - 1] == i {
                    return Err(Error::InvalidPolytope(format!("vertex {v:?} repeats a facet")));
                }
                for &j in &v[a + 1..] {
                    if !adjacent[i * m + j] {
                        return Err(Error::InvalidPolytope(format!(
                            "facets {i} and {j} share vertex {v:?} but are not adjacent"
                        )));
                    }
                }
                facet_vertices[i].push(vi);
            }
        }
        // a facet is itself a simple polytope of one dimension less
        if let Some(i) = facet_vertices.iter().position(|fv| fv.len() < dimension) {
            return Err(Error::InvalidPolytope(format!(
                "facet {i} has {} vertices, fewer than {dimension}",
                facet_vertices[i].len()
            )));
        }
        for &(i, j) in edges {
            if !facet_vertices[i].iter().any(|v| vertices[*v].contains(&j)) {
                return Err(Error::InvalidPolytope(format!(
                    "adjacent facets {i} and {j} share no vertex"
                )));
            }
        }
        let neighbours: Vec<Vec<usize>> = (0..m)
            .map(|i| (0..m).filter(|&j| adjacent[i * m + j]).collect())
            .collect();
        let p = Polytope {
            dimension,
            labels,
            neighbours,
            vertices,
            adjacent,
            facet_vertices,
        };
        if !p.is_connected() {
            return Err(Error::InvalidPolytope("facet adjacency graph is disconnected".into()));
        }
        Ok(p)
    }

    fn is_connected(&self) -> bool {
        let m = self.num_facets();
        let mut seen = vec![false; m];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(i) = stack.pop() {
            for &j in &self.neighbours[i] {
                if !seen[j] {
                    seen[j] = true;
                    count += 1;
                    stack.push(j);
                }
            }
        }
        count == m
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn num_facets(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertices(&self) -> &[Vec<usize>] {
        &self.vertices
    }

    pub fn neighbours(&self, facet: usize) -> &[usize] {
        &self.neighbours[facet]
    }

    /// Indices of the vertices lying on `facet`.
    pub fn facet_vertices(&self, facet: usize) -> &[usize] {
        &self.facet_vertices[facet]
    }

    #[inline]
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacent[i * self.labels.len() + j]
    }

    /// Adjacent pairs `(i, j)` with `i < j`, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, ns) in self.neighbours.iter().enumerate() {
            out.extend(ns.iter().filter(|&&j| j > i).map(|&j| (i, j)));
        }
        out
    }

    pub fn check_facet(&self, facet: usize) -> Result<()> {
        if facet < self.num_facets() {
            Ok(())
        } else {
            Err(Error::FacetOutOfRange {
                index: facet,
                facets: self.num_facets(),
            })
        }
    }

    /// Graph distances from `facet` in the adjacency graph.
    pub fn distances_from(&self, facet: usize) -> Vec<usize> {
        let m = self.num_facets();
        let mut dist = vec![usize::MAX; m];
        let mut queue = std::collections::VecDeque::new();
        dist[facet] = 0;
        queue.push_back(facet);
        while let Some(i) = queue.pop_front() {
            for &j in &self.neighbours[i] {
                if dist[j] == usize::MAX {
                    dist[j] = dist[i] + 1;
                    queue.push_back(j);
                }
            }
        }
        dist
    }

    /// Facet sets of all codimension-`k` faces (k ≥ 1), sorted.
    pub fn faces_of_codim(&self, k: usize) -> Vec<Vec<usize>> {
        let mut faces = BTreeSet::new();
        for v in &self.vertices {
            for_each_subset(v, k, &mut |s| {
                faces.insert(s.to_vec());
            });
        }
        faces.into_iter().collect()
    }

    pub fn f_vector(&self) -> FVector {
        let n = self.dimension;
        let mut f = vec![0; n + 1];
        f[0] = self.vertices.len();
        for codim in 1..n {
            f[n - codim] = self.faces_of_codim(codim).len();
        }
        f[n] = 1;
        FVector(f)
    }

    /// Σ over all faces (including the polytope itself) of (−1)^dim / 2^codim.
    pub fn orbifold_euler_characteristic(&self) -> Rational64 {
        let n = self.dimension;
        let f = self.f_vector();
        (0..=n)
            .map(|d| {
                let sign = if d % 2 == 0 { 1 } else { -1 };
                Rational64::new(sign * f.0[d] as i64, 1i64 << (n - d))
            })
            .sum()
    }

    /// The facet `facet` as an (n−1)-polytope. Its facets are the facets of
    /// `self` adjacent to `facet` in ascending order; the returned map sends
    /// each of them to its index in `self`.
    pub fn facet_subpolytope(&self, facet: usize) -> Result<(Polytope, Vec<usize>)> {
        self.check_facet(facet)?;
        if self.dimension == 2 {
            return Err(Error::InvalidPolytope(
                "facets of a polygon are segments, not polytopes".into(),
            ));
        }
        let incidence = self.neighbours[facet].clone();
        let local: HashMap<usize, usize> = incidence.iter().enumerate().map(|(a, &g)| (g, a)).collect();
        let vertices: Vec<Vec<usize>> = self.facet_vertices[facet]
            .iter()
            .map(|&vi| {
                self.vertices[vi]
                    .iter()
                    .filter(|&&g| g != facet)
                    .map(|g| local[g])
                    .collect()
            })
            .collect();
        // two facets of the subpolytope are adjacent when they meet on a vertex of `facet`
        let mut edges = BTreeSet::new();
        for v in &vertices {
            for a in 0..v.len() {
                for b in a + 1..v.len() {
                    edges.insert((v[a].min(v[b]), v[a].max(v[b])));
                }
            }
        }
        let labels = incidence.iter().map(|&g| self.labels[g].clone()).collect();
        let edges: Vec<_> = edges.into_iter().collect();
        let sub = Polytope::new(self.dimension - 1, labels, &edges, vertices)?;
        Ok((sub, incidence))
    }

    /// The same polytope with every facet label passed through `f`.
    pub fn relabelled(&self, f: impl Fn(&str) -> String) -> Polytope {
        Polytope {
            labels: self.labels.iter().map(|l| f(l)).collect(),
            ..self.clone()
        }
    }

    /// Facet with the largest graph distance from `facet` (lowest index on ties).
    pub fn antipodal_facet(&self, facet: usize) -> usize {
        let d = self.distances_from(facet);
        let max = *d.iter().max().unwrap();
        d.iter().position(|&x| x == max).unwrap()
    }
}

pub(crate) fn for_each_subset(items: &[usize], k: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, k, i + 1, cur, f);
            cur.pop();
        }
    }
    let mut cur = Vec::with_capacity(k);
    rec(items, k, 0, &mut cur, f);
}

/// Combinatorial identification of facet `source` of one polytope with facet
/// `target` of another. `bijection[a]` is the image of the `a`-th neighbour
/// of `source` (ascending order) among the neighbours of `target`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetMatching {
    pub source: usize,
    pub target: usize,
    pub bijection: Vec<usize>,
}

impl FacetMatching {
    /// Checks the matching against both polytopes: it must be a bijection of
    /// neighbourhoods preserving adjacency and carrying vertices on `source`
    /// to vertices on `target`.
    pub fn validate(&self, p1: &Polytope, p2: &Polytope) -> Result<()> {
        if p1.dimension != p2.dimension {
            return Err(Error::DimensionMismatch(p1.dimension, p2.dimension));
        }
        p1.check_facet(self.source)?;
        p2.check_facet(self.target)?;
        let n1 = p1.neighbours(self.source);
        let n2 = p2.neighbours(self.target);
        if n1.len() != n2.len() || self.bijection.len() != n1.len() {
            return Err(Error::InvalidMatching("neighbourhood sizes differ".into()));
        }
        let mut seen = HashSet::new();
        for &b in &self.bijection {
            if !n2.contains(&b) || !seen.insert(b) {
                return Err(Error::InvalidMatching(format!(
                    "{b} is not a distinct neighbour of the target facet"
                )));
            }
        }
        let sigma: HashMap<usize, usize> = n1.iter().copied().zip(self.bijection.iter().copied()).collect();
        for (a, &g) in n1.iter().enumerate() {
            for &h in &n1[a + 1..] {
                if p1.adjacent(g, h) != p2.adjacent(sigma[&g], sigma[&h]) {
                    return Err(Error::InvalidMatching(format!("adjacency of {g},{h} not preserved")));
                }
            }
        }
        let target_vertices: HashSet<Vec<usize>> = p2
            .facet_vertices(self.target)
            .iter()
            .map(|&vi| p2.vertices[vi].clone())
            .collect();
        if p1.facet_vertices(self.source).len() != target_vertices.len() {
            return Err(Error::InvalidMatching("vertex counts differ".into()));
        }
        for &vi in p1.facet_vertices(self.source) {
            let mut image: Vec<usize> = p1.vertices[vi]
                .iter()
                .map(|g| if *g == self.source { self.target } else { sigma[g] })
                .collect();
            image.sort_unstable();
            if !target_vertices.contains(&image) {
                return Err(Error::InvalidMatching(format!(
                    "vertex {:?} has no image vertex",
                    p1.vertices[vi]
                )));
            }
        }
        Ok(())
    }

    /// All valid matchings between `source` in `p1` and `target` in `p2`,
    /// lexicographically ordered by bijection.
    pub fn all(p1: &Polytope, source: usize, p2: &Polytope, target: usize) -> Result<Vec<FacetMatching>> {
        if p1.dimension == 2 && p2.dimension == 2 {
            // an edge of a polygon has two ends and can be matched either way round
            let n2 = p2.neighbours(target);
            let mut out = Vec::new();
            for bijection in [n2.to_vec(), n2.iter().rev().copied().collect()] {
                let m = FacetMatching {
                    source,
                    target,
                    bijection,
                };
                if m.validate(p1, p2).is_ok() && !out.contains(&m) {
                    out.push(m);
                }
            }
            out.sort_by(|a, b| a.bijection.cmp(&b.bijection));
            return Ok(out);
        }
        let (s1, _) = p1.facet_subpolytope(source)?;
        let (s2, _) = p2.facet_subpolytope(target)?;
        let mut out: Vec<FacetMatching> = symmetry::isomorphisms(&s1, &s2, usize::MAX)
            .into_iter()
            .map(|iso| FacetMatching {
                source,
                target,
                bijection: iso.iter().map(|&b| p2.neighbours(target)[b]).collect(),
            })
            .collect();
        out.sort_by(|a, b| a.bijection.cmp(&b.bijection));
        Ok(out)
    }
}

/// Where the facets of the summands ended up in a connected sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumProvenance {
    /// `first[i]`: index of facet `i` of the first summand (None for the glued facet).
    pub first: Vec<Option<usize>>,
    /// Same for the second summand.
    pub second: Vec<Option<usize>>,
}

/// Glues `p1` and `p2` along the facets named by `matching`.
///
/// The glued facets disappear along with their vertices; each neighbour `G`
/// of the source facet merges with its partner `σG` into a single facet.
pub fn connected_sum(p1: &Polytope, p2: &Polytope, matching: &FacetMatching) -> Result<(Polytope, SumProvenance)> {
    matching.validate(p1, p2)?;
    let (f1, f2) = (matching.source, matching.target);
    let mut labels = Vec::new();
    let mut first = vec![None; p1.num_facets()];
    for (i, slot) in first.iter_mut().enumerate() {
        if i != f1 {
            *slot = Some(labels.len());
            labels.push(p1.labels[i].clone());
        }
    }
    let mut second = vec![None; p2.num_facets()];
    for (&g, &h) in p1.neighbours(f1).iter().zip(&matching.bijection) {
        let merged = first[g].unwrap();
        second[h] = Some(merged);
        labels[merged] = format!("{}|{}", p1.labels[g], p2.labels[h]);
    }
    for (j, slot) in second.iter_mut().enumerate() {
        if j != f2 && slot.is_none() {
            *slot = Some(labels.len());
            labels.push(p2.labels[j].clone());
        }
    }
    let mut edges = BTreeSet::new();
    for (p, map) in [(p1, &first), (p2, &second)] {
        for (i, j) in p.edges() {
            if let (Some(a), Some(b)) = (map[i], map[j]) {
                edges.insert((a.min(b), a.max(b)));
            }
        }
    }
    let mut vertices = Vec::new();
    for (p, map, glued) in [(p1, &first, f1), (p2, &second, f2)] {
        for v in &p.vertices {
            if !v.contains(&glued) {
                vertices.push(v.iter().map(|&i| map[i].unwrap()).collect());
            }
        }
    }
    let edges: Vec<_> = edges.into_iter().collect();
    let sum = Polytope::new(p1.dimension, labels, &edges, vertices)?;
    Ok((sum, SumProvenance { first, second }))
}
