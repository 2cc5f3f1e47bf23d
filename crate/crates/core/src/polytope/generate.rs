//! Deterministic generators for the polygon, the dodecahedron and the 120-cell.

use std::collections::BTreeSet;

use super::Polytope;
use crate::golden::Golden;

/// The `k`-gon: facet `i` is the edge between corners `i` and `i + 1`.
pub fn make_polygon(k: usize) -> Polytope {
    assert!(k >= 3, "a polygon needs at least three sides");
    let labels = (0..k).map(|i| format!("E{i}")).collect();
    let edges: Vec<_> = (0..k).map(|i| (i, (i + 1) % k)).collect();
    let vertices = edges.iter().map(|&(i, j)| vec![i, j]).collect();
    Polytope::new(2, labels, &edges, vertices).expect("polygon is valid")
}

/// The dodecahedron with the fixed face numbering used throughout the crate:
///
/// * face 0 on top, face 11 at the bottom;
/// * faces 1..=5 form the upper ring, in cyclic order;
/// * face 5+i (i in 1..=5) sits in the lower ring between upper faces i and i+1 (mod 5).
///
/// Antipodal pairs are 0–11 and i–(6 + (i+1) mod 5) for i in 1..=5.
pub fn make_dodecahedron() -> Polytope {
    let next = |i: usize| if i == 5 { 1 } else { i + 1 };
    let mut edges = BTreeSet::new();
    let mut add = |a: usize, b: usize| {
        edges.insert((a.min(b), a.max(b)));
    };
    for i in 1..=5 {
        add(0, i);
        add(i, next(i));
        add(11, 5 + i);
        add(5 + i, 5 + next(i));
        add(i, 5 + i);
        add(next(i), 5 + i);
    }
    let edges: Vec<_> = edges.into_iter().collect();
    let labels = (0..12).map(|i| format!("D{i}")).collect();
    let vertices = cliques(12, &edges, 3);
    Polytope::new(3, labels, &edges, vertices).expect("dodecahedron is valid")
}

/// Vertices of the 600-cell (scaled by 2) in Z[φ]⁴: the 8 axis points, the
/// 16 points (±1, ±1, ±1, ±1) and the 96 even permutations of (±φ, ±1, ±φ⁻¹, 0).
fn hexacosichoron_vertices() -> Vec<[Golden; 4]> {
    let mut out = Vec::with_capacity(120);
    for axis in 0..4 {
        for s in [2, -2] {
            let mut v = [Golden::ZERO; 4];
            v[axis] = Golden::int(s);
            out.push(v);
        }
    }
    for signs in 0..16u32 {
        let mut v = [Golden::ZERO; 4];
        for (c, slot) in v.iter_mut().enumerate() {
            *slot = Golden::int(if signs >> c & 1 == 1 { -1 } else { 1 });
        }
        out.push(v);
    }
    let base = [Golden::PHI, Golden::ONE, Golden::PHI_INV, Golden::ZERO];
    for perm in even_permutations() {
        for signs in 0..8u32 {
            let mut v = [Golden::ZERO; 4];
            for (k, &value) in base.iter().enumerate().take(3) {
                v[perm[k]] = if signs >> k & 1 == 1 { -value } else { value };
            }
            out.push(v);
        }
    }
    out.sort_by(|x, y| y.cmp(x));
    out
}

fn even_permutations() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let distinct = (0..4).all(|i| (0..i).all(|j| p[i] != p[j]));
                    if !distinct {
                        continue;
                    }
                    let inversions = (0..4)
                        .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
                        .filter(|&(i, j)| p[i] > p[j])
                        .count();
                    if inversions % 2 == 0 {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

fn dot(u: &[Golden; 4], v: &[Golden; 4]) -> Golden {
    u.iter().zip(v).fold(Golden::ZERO, |acc, (&a, &b)| acc + a * b)
}

/// The 120-cell, built as the dual of the 600-cell.
///
/// Facets are the 600-cell's vertices (sorted descending by exact
/// coordinates); two facets are adjacent when the corresponding unit
/// quaternions have inner product φ/2; vertices are the 600-cell's
/// tetrahedra, i.e. the 4-cliques of that graph.
pub fn make_120cell() -> Polytope {
    let points = hexacosichoron_vertices();
    // scaled by 2 in each factor: ⟨u, v⟩ = φ/2 becomes 4·φ/2 = 2φ
    let edge_product = Golden::new(0, 2);
    let mut edges = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if dot(&points[i], &points[j]) == edge_product {
                edges.push((i, j));
            }
        }
    }
    let labels = (0..points.len()).map(|i| format!("Z{i}")).collect();
    let vertices = cliques(points.len(), &edges, 4);
    Polytope::new(4, labels, &edges, vertices).expect("120-cell is valid")
}

/// All `size`-cliques of a graph, each sorted ascending.
fn cliques(n: usize, edges: &[(usize, usize)], size: usize) -> Vec<Vec<usize>> {
    let mut adj = vec![vec![false; n]; n];
    for &(i, j) in edges {
        adj[i][j] = true;
        adj[j][i] = true;
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn extend(adj: &[Vec<bool>], size: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for v in start..adj.len() {
            if cur.iter().all(|&u| adj[u][v]) {
                cur.push(v);
                extend(adj, size, v + 1, cur, out);
                cur.pop();
            }
        }
    }
    extend(&adj, size, 0, &mut cur, &mut out);
    out
}
