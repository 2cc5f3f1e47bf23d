//! Canonical forms of colourings under polytope symmetries and linear maps.
//!
//! For a fixed facet order, a colouring is rewritten greedily: each colour
//! independent of the earlier ones becomes the next unit vector, and every
//! other colour is written in coordinates of those. This removes GL(F₂ˢ)
//! entirely. Minimising over all facet orders given by the symmetry group
//! gives a complete invariant of the class.

use std::cmp::Ordering;

use super::Colouring;
use crate::f2::{Basis, F2Vector};
use crate::polytope::{Polytope, SymmetryGroup};

/// Dedup key of an equivalence class of colourings.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    pub image_dimension: usize,
    pub codes: Vec<F2Vector>,
}

impl CanonicalForm {
    /// Byte encoding: image dimension, then each code as 16 big-endian bytes.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(1 + 16 * self.codes.len());
        out.push(self.image_dimension as u8);
        for c in &self.codes {
            out.extend_from_slice(&c.to_be_bytes());
        }
        out
    }

    /// Compact hex digest of the byte encoding, handy as a class id.
    pub fn hex(&self) -> String {
        let width = self.image_dimension.div_ceil(4).max(1);
        let mut s = format!("{}:", self.image_dimension);
        for c in &self.codes {
            s.push_str(&format!("{c:0width$x}"));
        }
        s
    }
}

/// Greedy normal form of the colours read in `order`. Returns `None` as soon
/// as the result is known to be larger than `bound`.
fn normal_form(colours: &[F2Vector], order: &[usize], bound: Option<&[F2Vector]>) -> Option<(usize, Vec<F2Vector>)> {
    let mut basis = Basis::new();
    let mut codes = Vec::with_capacity(order.len());
    let mut decided = bound.is_none();
    for (i, &f) in order.iter().enumerate() {
        let c = colours[f];
        let code = match basis.express(c) {
            Some(code) => code,
            None => {
                basis.insert(c);
                1u128 << (basis.rank() - 1)
            }
        };
        if !decided {
            match code.cmp(&bound.unwrap()[i]) {
                Ordering::Less => decided = true,
                Ordering::Greater => return None,
                Ordering::Equal => {}
            }
        }
        codes.push(code);
    }
    Some((basis.rank(), codes))
}

/// Minimal normal form over all symmetries, and how many symmetries attain it.
fn minimise(group: &SymmetryGroup, lambda: &Colouring) -> (CanonicalForm, usize) {
    let mut best: Option<(usize, Vec<F2Vector>)> = None;
    let mut hits = 0;
    for sigma in group.perms() {
        let bound = best.as_ref().map(|b| b.1.as_slice());
        if let Some(nf) = normal_form(lambda.colours(), sigma, bound) {
            match &best {
                Some(b) if b.1 == nf.1 => hits += 1,
                _ => {
                    best = Some(nf);
                    hits = 1;
                }
            }
        }
    }
    let (image_dimension, codes) = best.expect("group contains the identity");
    (CanonicalForm { image_dimension, codes }, hits)
}

/// Canonical form of `lambda` on `p` (whose symmetry group is `group`).
pub fn canonical_form(p: &Polytope, group: &SymmetryGroup, lambda: &Colouring) -> CanonicalForm {
    debug_assert_eq!(p.num_facets(), lambda.len());
    minimise(group, lambda).0
}

/// Whether `a` and `b` differ by a symmetry of `p` and an invertible linear
/// map between their images.
pub fn equivalent(p: &Polytope, group: &SymmetryGroup, a: &Colouring, b: &Colouring) -> bool {
    a.len() == b.len() && canonical_form(p, group, a) == canonical_form(p, group, b)
}

/// Number of symmetries σ of `p` such that `λ∘σ = g∘λ` for some linear `g`.
pub fn colouring_automorphisms(p: &Polytope, group: &SymmetryGroup, lambda: &Colouring) -> usize {
    debug_assert_eq!(p.num_facets(), lambda.len());
    minimise(group, lambda).1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{make_polygon, symmetry_group};

    #[test]
    fn normal_form_forgets_basis() {
        let a = [3u128, 5, 6, 3];
        let b = [1u128, 2, 3, 1];
        let order = [0, 1, 2, 3];
        assert_eq!(normal_form(&a, &order, None), normal_form(&b, &order, None));
        assert_eq!(normal_form(&a, &order, None).unwrap().1, vec![1, 2, 3, 1]);
    }

    #[test]
    fn pentagon_classes_by_rotation() {
        let p = make_polygon(5);
        let g = symmetry_group(&p);
        let a = Colouring::new(2, vec![1, 2, 1, 2, 3]).unwrap();
        let b = Colouring::new(2, vec![3, 1, 2, 1, 2]).unwrap();
        let c = Colouring::new(3, vec![4, 2, 4, 2, 6]).unwrap();
        assert!(equivalent(&p, &g, &a, &b));
        assert!(equivalent(&p, &g, &a, &c));
        let d = Colouring::new(3, vec![1, 2, 1, 2, 4]).unwrap();
        assert!(!equivalent(&p, &g, &a, &d));
    }
}
