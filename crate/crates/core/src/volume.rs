//! Volumes of tessellated manifolds as exact multiples of the tile volumes.

use std::f64::consts::PI;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polytope::Polytope;

/// Volume of the right-angled dodecahedron, to the precision it is usually quoted.
pub const V_DODECAHEDRON: f64 = 4.3062;

/// Volume of the right-angled 120-cell as a rational multiple of π².
pub fn v_120cell_over_pi2() -> Rational64 {
    Rational64::new(34, 3)
}

pub fn v_120cell() -> f64 {
    34.0 * PI * PI / 3.0
}

/// Gauss–Bonnet in dimension 4: vol = (4π²/3)·χ, as a multiple of π².
pub fn gauss_bonnet_over_pi2(chi: Rational64) -> Rational64 {
    Rational64::new(4, 3) * chi
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CellKind {
    Dodecahedron,
    #[serde(rename = "120-cell")]
    Cell120,
}

/// A polytope known to be an assembly of `count` cells of one kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tiling {
    pub kind: CellKind,
    pub count: u64,
}

impl Tiling {
    /// Recognises chains of k right-angled dodecahedra (5k+7 faces,
    /// 10k+10 vertices, all faces pentagons or larger) and assemblies of k
    /// 120-cells. In dimension 4 the orbifold Euler characteristic is
    /// proportional to volume, so 17k/2 pins down k.
    pub fn identify(p: &Polytope) -> Result<Tiling> {
        let m = p.num_facets() as u64;
        let v = p.vertices().len() as u64;
        match p.dimension() {
            3 if m >= 12 && (m - 7).is_multiple_of(5) => {
                let k = (m - 7) / 5;
                if v == 10 * k + 10 && (0..p.num_facets()).all(|f| p.neighbours(f).len() >= 5) {
                    return Ok(Tiling {
                        kind: CellKind::Dodecahedron,
                        count: k,
                    });
                }
            }
            4 => {
                let twice = p.orbifold_euler_characteristic() * Rational64::from_integer(2);
                if twice.is_integer() && twice.to_integer() > 0 && twice.to_integer() % 17 == 0 {
                    let k = (twice.to_integer() / 17) as u64;
                    if m <= 120 * k && (0..p.num_facets()).all(|f| p.neighbours(f).len() >= 12) {
                        return Ok(Tiling {
                            kind: CellKind::Cell120,
                            count: k,
                        });
                    }
                }
            }
            _ => {}
        }
        Err(Error::UnknownCell(format!(
            "dimension {} polytope with {m} facets and {v} vertices",
            p.dimension()
        )))
    }
}

/// `cells` copies of one tile.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Volume {
    pub kind: CellKind,
    pub cells: u64,
    /// Exact form, e.g. `32·V_Z = 1088/3·π²` or `16·V_D`.
    pub exact: String,
    pub numeric: f64,
}

impl Volume {
    pub fn new(kind: CellKind, cells: u64) -> Volume {
        match kind {
            CellKind::Dodecahedron => Volume {
                kind,
                cells,
                exact: format!("{cells}·V_D"),
                numeric: cells as f64 * V_DODECAHEDRON,
            },
            CellKind::Cell120 => {
                let q = v_120cell_over_pi2() * Rational64::from_integer(cells as i64);
                Volume {
                    kind,
                    cells,
                    exact: format!("{cells}·V_Z = {q}·π²"),
                    numeric: cells as f64 * v_120cell(),
                }
            }
        }
    }

    /// Multiple of π² when the tile is the 120-cell.
    pub fn over_pi2(&self) -> Option<Rational64> {
        match self.kind {
            CellKind::Cell120 => Some(v_120cell_over_pi2() * Rational64::from_integer(self.cells as i64)),
            CellKind::Dodecahedron => None,
        }
    }
}

/// Ambient over boundary volume: `(a·V_Z)/(b·V_D)`, reported as the exact
/// ratio of cell counts times `V_Z/V_D` and numerically.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VolumeRatio {
    /// Coefficient c in `c·V_Z/V_D`.
    pub coefficient: Rational64,
    pub exact: String,
    pub numeric: f64,
}

pub fn volume_ratio(ambient: &Volume, boundary: &Volume) -> Result<VolumeRatio> {
    if ambient.kind != CellKind::Cell120 || boundary.kind != CellKind::Dodecahedron || boundary.cells == 0 {
        return Err(Error::UnknownCell(
            "ratio needs 120-cell ambient and dodecahedral boundary".into(),
        ));
    }
    let coefficient = Rational64::new(ambient.cells as i64, boundary.cells as i64);
    Ok(VolumeRatio {
        coefficient,
        exact: format!("{coefficient}·V_Z/V_D"),
        numeric: ambient.numeric / boundary.numeric,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{make_120cell, make_dodecahedron, make_polygon};

    #[test]
    fn boundary_of_first_manifold() {
        let v = Volume::new(CellKind::Dodecahedron, 16);
        assert!((v.numeric - 68.8992).abs() < 5e-4);
        assert_eq!(v.exact, "16·V_D");
    }

    #[test]
    fn ambient_is_exact_multiple_of_pi_squared() {
        let v = Volume::new(CellKind::Cell120, 32);
        assert_eq!(v.over_pi2(), Some(Rational64::new(32 * 34, 3)));
    }

    #[test]
    fn ratio_below_53() {
        let r = volume_ratio(
            &Volume::new(CellKind::Cell120, 32),
            &Volume::new(CellKind::Dodecahedron, 16),
        )
        .unwrap();
        assert_eq!(r.coefficient, Rational64::from_integer(2));
        assert!(r.numeric < 53.0);
        assert!((r.numeric - 2.0 * v_120cell() / V_DODECAHEDRON).abs() < 1e-9);
    }

    #[test]
    fn gauss_bonnet_for_120cell() {
        let chi = make_120cell().orbifold_euler_characteristic();
        assert_eq!(gauss_bonnet_over_pi2(chi), v_120cell_over_pi2());
    }

    #[test]
    fn identifies_single_tiles() {
        assert_eq!(
            Tiling::identify(&make_dodecahedron()).unwrap(),
            Tiling {
                kind: CellKind::Dodecahedron,
                count: 1
            }
        );
        assert_eq!(
            Tiling::identify(&make_120cell()).unwrap(),
            Tiling {
                kind: CellKind::Cell120,
                count: 1
            }
        );
        assert!(Tiling::identify(&make_polygon(5)).is_err());
    }
}
