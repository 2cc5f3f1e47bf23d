#![allow(dead_code)]

use racolour::colouring::Colouring;
use racolour::f2::F2Vector;
use racolour::polytope::Polytope;
use rand::seq::SliceRandom;
use rand::Rng;

/// The dodecahedron four-colouring used throughout the tests.
pub const FOUR_COLOURING: [usize; 12] = [1, 2, 3, 2, 3, 4, 4, 1, 4, 1, 3, 2];

/// Rank by naive elimination, kept separate from the library's version.
pub fn naive_rank(vs: &[F2Vector]) -> usize {
    let mut basis: Vec<F2Vector> = Vec::new();
    for &v in vs {
        let mut v = v;
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
        }
    }
    basis.len()
}

pub fn naive_proper(p: &Polytope, colours: &[F2Vector]) -> bool {
    p.vertices()
        .iter()
        .all(|v| naive_rank(&v.iter().map(|&f| colours[f]).collect::<Vec<_>>()) == v.len())
}

/// A random proper colouring with values in F₂ˢ: facets are coloured in a
/// random order, each with a random colour keeping every vertex independent;
/// dead ends restart.
pub fn random_proper(p: &Polytope, rank: usize, rng: &mut impl Rng) -> Colouring {
    let m = p.num_facets();
    'restart: loop {
        let mut order: Vec<usize> = (0..m).collect();
        order.shuffle(rng);
        let mut colours: Vec<Option<F2Vector>> = vec![None; m];
        for &f in &order {
            let mut options: Vec<F2Vector> = (1..(1u128 << rank))
                .filter(|&c| {
                    p.facet_vertices(f).iter().all(|&vi| {
                        let mut vs: Vec<F2Vector> = p.vertices()[vi].iter().filter_map(|&g| colours[g]).collect();
                        vs.push(c);
                        naive_rank(&vs) == vs.len()
                    })
                })
                .collect();
            if options.is_empty() {
                continue 'restart;
            }
            options.shuffle(rng);
            colours[f] = Some(options[0]);
        }
        return Colouring::new(rank, colours.into_iter().map(Option::unwrap).collect()).unwrap();
    }
}

/// All invertible s×s matrices over F₂, as column lists.
pub fn invertible_maps(s: usize) -> Vec<Vec<F2Vector>> {
    let mut out = Vec::new();
    let n = 1usize << s;
    let mut cols = vec![0 as F2Vector; s];
    fn rec(i: usize, s: usize, n: usize, cols: &mut Vec<F2Vector>, out: &mut Vec<Vec<F2Vector>>) {
        if i == s {
            if naive_rank(cols) == s {
                out.push(cols.clone());
            }
            return;
        }
        for c in 1..n {
            cols[i] = c as F2Vector;
            rec(i + 1, s, n, cols, out);
        }
    }
    rec(0, s, n, &mut cols, &mut out);
    out
}

pub fn apply(columns: &[F2Vector], v: F2Vector) -> F2Vector {
    (0..columns.len())
        .filter(|&i| v >> i & 1 == 1)
        .fold(0, |a, i| a ^ columns[i])
}

/// A random invertible s×s matrix.
pub fn random_invertible(s: usize, rng: &mut impl Rng) -> Vec<F2Vector> {
    loop {
        let cols: Vec<F2Vector> = (0..s).map(|_| rng.gen_range(1..(1u128 << s))).collect();
        if naive_rank(&cols) == s {
            return cols;
        }
    }
}
