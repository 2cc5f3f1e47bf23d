//! Bit-packed linear algebra over F₂.
//!
//! A vector of F₂ˢ (s ≤ 128) is a `u128` whose bit `i` holds coordinate `i + 1`,
//! so `(v₁, …, v_s)` is stored as the integer `v₁·2⁰ + v₂·2¹ + … + v_s·2^{s−1}`.

pub type F2Vector = u128;

pub const MAX_RANK: usize = 128;

/// Coordinate sum ε(v) ∈ F₂.
#[inline]
pub fn parity(v: F2Vector) -> u32 {
    v.count_ones() & 1
}

/// Evaluates the covector `chi` on `v`.
#[inline]
pub fn pair(chi: F2Vector, v: F2Vector) -> u32 {
    parity(chi & v)
}

#[inline]
pub fn unit(i: usize) -> F2Vector {
    1u128 << i
}

/// Mask with the low `rank` bits set.
#[inline]
pub fn full_mask(rank: usize) -> F2Vector {
    if rank >= 128 {
        u128::MAX
    } else {
        (1u128 << rank) - 1
    }
}

/// Incremental echelon basis. Each stored row remembers which inserted
/// vectors it is a combination of, so membership queries also return
/// coordinates with respect to the accepted vectors (in insertion order).
#[derive(Debug, Clone, Default)]
pub struct Basis {
    // (reduced row, combination of accepted vectors), keyed by highest bit
    rows: Vec<(F2Vector, F2Vector)>,
    pivots: Vec<u32>,
}

impl Basis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut v: F2Vector) -> (F2Vector, F2Vector) {
        let mut combo = 0;
        for (&(row, c), &p) in self.rows.iter().zip(&self.pivots) {
            if v >> p & 1 == 1 {
                v ^= row;
                combo ^= c;
            }
        }
        (v, combo)
    }

    /// Coordinates of `v` in terms of the accepted vectors, if `v` lies in their span.
    pub fn express(&self, v: F2Vector) -> Option<F2Vector> {
        match self.reduce(v) {
            (0, combo) => Some(combo),
            _ => None,
        }
    }

    pub fn contains(&self, v: F2Vector) -> bool {
        self.reduce(v).0 == 0
    }

    /// Adds `v` if it is independent of the current span. Returns whether it was accepted.
    pub fn insert(&mut self, v: F2Vector) -> bool {
        let (r, mut combo) = self.reduce(v);
        if r == 0 {
            return false;
        }
        combo ^= unit(self.rows.len());
        let p = 127 - r.leading_zeros();
        // keep existing rows free of the new pivot
        for row in self.rows.iter_mut() {
            if row.0 >> p & 1 == 1 {
                row.0 ^= r;
                row.1 ^= combo;
            }
        }
        self.rows.push((r, combo));
        self.pivots.push(p);
        true
    }
}

/// Rank of the span of `vectors`.
pub fn gf2_rank(vectors: &[F2Vector]) -> usize {
    let mut basis = Basis::new();
    for &v in vectors {
        basis.insert(v);
    }
    basis.rank()
}

/// Finds a covector χ with χ(v) = 1 for every `v` in `rows`, if one exists.
///
/// Augments each row with a right-hand side bit and eliminates; an equation
/// reducing to `0 = 1` means no solution.
pub fn solve_all_ones(rows: &[F2Vector]) -> Option<F2Vector> {
    // reduced rows with their right-hand sides, pivot = lowest set bit
    let mut reduced: Vec<(F2Vector, u32)> = Vec::new();
    for &row in rows {
        let mut v = row;
        let mut rhs = 1u32;
        for &(r, b) in &reduced {
            if v & (r & r.wrapping_neg()) != 0 {
                v ^= r;
                rhs ^= b;
            }
        }
        if v == 0 {
            if rhs == 1 {
                return None;
            }
            continue;
        }
        let low = v & v.wrapping_neg();
        for (r, b) in reduced.iter_mut() {
            if *r & low != 0 {
                *r ^= v;
                *b ^= rhs;
            }
        }
        reduced.push((v, rhs));
    }
    // fully reduced: pivot bits appear in exactly one row
    let chi = reduced
        .iter()
        .filter(|(_, b)| *b == 1)
        .fold(0, |acc, (r, _)| acc | (r & r.wrapping_neg()));
    Some(chi)
}

/// All elements of the span of `vectors`. Only sensible for small rank.
pub fn span(vectors: &[F2Vector]) -> Vec<F2Vector> {
    let mut basis = Basis::new();
    let mut gens = Vec::new();
    for &v in vectors {
        if basis.insert(v) {
            gens.push(v);
        }
    }
    let mut out = vec![0];
    for g in gens {
        let n = out.len();
        for i in 0..n {
            out.push(out[i] ^ g);
        }
    }
    out.sort_unstable();
    out
}

/// Rewrites `vectors` in coordinates of a basis of their span.
///
/// The basis is formed greedily from `vectors` in order; returns the rank and
/// the coordinate vectors (each `< 2^rank`).
pub fn image_coordinates(vectors: &[F2Vector]) -> (usize, Vec<F2Vector>) {
    let mut basis = Basis::new();
    for &v in vectors {
        basis.insert(v);
    }
    let coords = vectors
        .iter()
        .map(|&v| basis.express(v).expect("vector lies in its own span"))
        .collect();
    (basis.rank(), coords)
}

/// Whether some invertible linear map between the spans carries `a[i]` to
/// `b[i]` for every `i`. Both sides must fit in 64 coordinates.
pub fn linearly_related(a: &[F2Vector], b: &[F2Vector]) -> bool {
    assert!(
        a.iter().chain(b).all(|&v| v >> 64 == 0),
        "linearly_related works in rank ≤ 64"
    );
    if a.len() != b.len() {
        return false;
    }
    let joint: Vec<F2Vector> = a.iter().zip(b).map(|(&x, &y)| x | y << 64).collect();
    let r = gf2_rank(&joint);
    r == gf2_rank(a) && r == gf2_rank(b)
}
