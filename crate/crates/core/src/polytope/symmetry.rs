//! Combinatorial automorphisms and isomorphisms of polytopes.
//!
//! Facets of the source are visited in breadth-first order; every facet after
//! the first must map to a neighbour of its parent's image, which makes the
//! search nearly forced once a flag is fixed. A complete map is accepted only
//! if it carries the vertex family onto the vertex family.

use std::collections::HashSet;

use super::Polytope;

/// Facet permutations of a polytope preserving adjacency and vertices.
/// `perms[k][i]` is the image of facet `i` under the `k`-th symmetry; the
/// identity comes first.
#[derive(Debug, Clone)]
pub struct SymmetryGroup {
    perms: Vec<Vec<usize>>,
}

impl SymmetryGroup {
    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn perms(&self) -> &[Vec<usize>] {
        &self.perms
    }

    /// Elements fixing `facet`.
    pub fn stabilizer(&self, facet: usize) -> Vec<&[usize]> {
        self.perms
            .iter()
            .filter(|p| p[facet] == facet)
            .map(|p| p.as_slice())
            .collect()
    }
}

/// All combinatorial symmetries of `p`.
pub fn symmetry_group(p: &Polytope) -> SymmetryGroup {
    let mut perms = isomorphisms(p, p, usize::MAX);
    let m = p.num_facets();
    let id: Vec<usize> = (0..m).collect();
    let pos = perms.iter().position(|q| *q == id).expect("identity is a symmetry");
    perms.swap(0, pos);
    perms[1..].sort();
    SymmetryGroup { perms }
}

/// Some isomorphism from `p` to `q`, as a facet map.
pub fn find_isomorphism(p: &Polytope, q: &Polytope) -> Option<Vec<usize>> {
    isomorphisms(p, q, 1).pop()
}

pub(crate) fn isomorphisms(p: &Polytope, q: &Polytope, limit: usize) -> Vec<Vec<usize>> {
    let m = p.num_facets();
    if p.dimension() != q.dimension()
        || m != q.num_facets()
        || p.vertices().len() != q.vertices().len()
        || p.edges().len() != q.edges().len()
    {
        return Vec::new();
    }
    let mut deg_p: Vec<usize> = (0..m).map(|i| p.neighbours(i).len()).collect();
    let mut deg_q: Vec<usize> = (0..m).map(|i| q.neighbours(i).len()).collect();
    let (dp, dq) = (deg_p.clone(), deg_q.clone());
    deg_p.sort_unstable();
    deg_q.sort_unstable();
    if deg_p != deg_q {
        return Vec::new();
    }

    let mut order = Vec::with_capacity(m);
    let mut parent = vec![usize::MAX; m];
    let mut seen = vec![false; m];
    seen[0] = true;
    order.push(0);
    let mut head = 0;
    while head < order.len() {
        let i = order[head];
        head += 1;
        for &j in p.neighbours(i) {
            if !seen[j] {
                seen[j] = true;
                parent[j] = i;
                order.push(j);
            }
        }
    }

    let q_vertices: HashSet<&[usize]> = q.vertices().iter().map(|v| v.as_slice()).collect();
    let mut search = Search {
        p,
        q,
        dp,
        dq,
        order,
        parent,
        image: vec![usize::MAX; m],
        preimage: vec![usize::MAX; m],
        q_vertices,
        out: Vec::new(),
        limit,
    };
    search.extend(0);
    search.out
}

struct Search<'a> {
    p: &'a Polytope,
    q: &'a Polytope,
    dp: Vec<usize>,
    dq: Vec<usize>,
    order: Vec<usize>,
    parent: Vec<usize>,
    image: Vec<usize>,
    preimage: Vec<usize>,
    q_vertices: HashSet<&'a [usize]>,
    out: Vec<Vec<usize>>,
    limit: usize,
}

impl Search<'_> {
    fn consistent(&self, v: usize, c: usize) -> bool {
        if self.preimage[c] != usize::MAX || self.dp[v] != self.dq[c] {
            return false;
        }
        let forward = self.p.neighbours(v).iter().all(|&u| {
            let iu = self.image[u];
            iu == usize::MAX || self.q.adjacent(iu, c)
        });
        forward
            && self.q.neighbours(c).iter().all(|&w| {
                let pw = self.preimage[w];
                pw == usize::MAX || self.p.adjacent(pw, v)
            })
    }

    fn preserves_vertices(&self) -> bool {
        let mut buf = Vec::with_capacity(self.p.dimension());
        self.p.vertices().iter().all(|v| {
            buf.clear();
            buf.extend(v.iter().map(|&i| self.image[i]));
            buf.sort_unstable();
            self.q_vertices.contains(buf.as_slice())
        })
    }

    fn extend(&mut self, depth: usize) {
        if self.out.len() >= self.limit {
            return;
        }
        if depth == self.order.len() {
            if self.preserves_vertices() {
                self.out.push(self.image.clone());
            }
            return;
        }
        let v = self.order[depth];
        let candidates: Vec<usize> = if depth == 0 {
            (0..self.q.num_facets()).collect()
        } else {
            self.q.neighbours(self.image[self.parent[v]]).to_vec()
        };
        for c in candidates {
            if self.consistent(v, c) {
                self.image[v] = c;
                self.preimage[c] = v;
                self.extend(depth + 1);
                self.image[v] = usize::MAX;
                self.preimage[c] = usize::MAX;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{make_dodecahedron, make_polygon};

    #[test]
    fn polygon_group_is_dihedral() {
        assert_eq!(symmetry_group(&make_polygon(5)).order(), 10);
        assert_eq!(symmetry_group(&make_polygon(6)).order(), 12);
    }

    #[test]
    fn dodecahedron_group() {
        let g = symmetry_group(&make_dodecahedron());
        assert_eq!(g.order(), 120);
        assert_eq!(g.perms()[0], (0..12).collect::<Vec<_>>());
        assert_eq!(g.stabilizer(0).len(), 10);
    }

    #[test]
    fn non_isomorphic_polygons() {
        assert!(find_isomorphism(&make_polygon(5), &make_polygon(6)).is_none());
    }
}
