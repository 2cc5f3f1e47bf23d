//! The chain construction: closed orientable 3-manifolds tessellated by 16n
//! right-angled dodecahedra bounding orientable 4-manifolds tessellated by
//! 32n right-angled 120-cells.
//!
//! A non-orientable small cover class μ of the dodecahedron D with a
//! zero-sum triple (F, F′, F″) and a face F* disjoint from all three is
//! chained into P = D₁#…#D_n by mirrored gluings. The same chain on 120-cells
//! carrying an orientable F₂⁵ extension λ of μ gives Q = Z₁#…#Z_n, with P as
//! a facet. The cover M_λ of Q is orientable while the preimage of P is
//! one-sided, so cutting along it leaves a connected orientable boundary.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::colouring::{canonical_form, equivalent};
use crate::colouring::{
    image_dimension, induced_colouring, is_orientable, is_proper, non_orientability_witness, spans, Colouring,
};
use crate::cover::{build_cover, CoverSummary, CutReport};
use crate::error::{Error, Result};
use crate::f2::{self, F2Vector};
use crate::io;
use crate::polytope::{
    connected_sum, find_isomorphism, make_120cell, make_dodecahedron, symmetry_group, FVector, FacetMatching, Polytope,
};
use crate::search::{
    enumerate_small_covers, search_orientable_extension, seed_from_facet, EnumerationResult, ExtensionStatus,
    SearchBudget, SearchStats,
};
use crate::volume::{gauss_bonnet_over_pi2, volume_ratio, CellKind, Tiling, Volume, VolumeRatio};

/// The 120-cell facet that carries the seeded dodecahedron.
pub const SEED_FACET: usize = 0;

/// How to choose the dodecahedral class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Policy {
    /// The non-orientable class with the most colouring automorphisms
    /// (first in enumeration order on ties).
    MaxSymmetry,
    /// The k-th non-orientable class in enumeration order, from 0.
    Index(usize),
}

impl FromStr for Policy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Policy> {
        if s == "max-symmetry" {
            return Ok(Policy::MaxSymmetry);
        }
        s.strip_prefix("index:")
            .and_then(|k| k.parse().ok())
            .map(Policy::Index)
            .ok_or_else(|| Error::Parse {
                line: 0,
                message: format!("unknown policy `{s}`"),
            })
    }
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Policy::MaxSymmetry => write!(f, "max-symmetry"),
            Policy::Index(k) => write!(f, "index:{k}"),
        }
    }
}

/// All facet triples with zero colour sum, in lexicographic order.
pub fn zero_sum_triples(lambda: &Colouring) -> Vec<[usize; 3]> {
    let c = lambda.colours();
    let mut out = Vec::new();
    for i in 0..c.len() {
        for j in i + 1..c.len() {
            for k in j + 1..c.len() {
                if c[i] ^ c[j] ^ c[k] == 0 {
                    out.push([i, j, k]);
                }
            }
        }
    }
    out
}

/// Lowest facet that is neither one of `faces` nor adjacent to any of them.
pub fn disjoint_facet(p: &Polytope, faces: &[usize]) -> Option<usize> {
    (0..p.num_facets()).find(|&g| faces.iter().all(|&f| f != g && !p.adjacent(f, g)))
}

/// The first zero-sum triple admitting a disjoint fourth facet, with that facet.
pub fn witness_with_disjoint_facet(p: &Polytope, lambda: &Colouring) -> Option<([usize; 3], usize)> {
    zero_sum_triples(lambda)
        .into_iter()
        .find_map(|t| disjoint_facet(p, &t).map(|f| (t, f)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Selection {
    /// Position of the class in the enumeration result.
    pub class_index: usize,
    pub colouring: Colouring,
    pub canonical: String,
    pub automorphisms: usize,
    pub triple: [usize; 3],
    pub f_star: usize,
}

/// Picks a non-orientable class of the dodecahedron with its witness triple
/// and a disjoint face F*.
pub fn select_class(d: &Polytope, result: &EnumerationResult, policy: Policy) -> Result<Selection> {
    let candidates: Vec<usize> = (0..result.classes.len())
        .filter(|&i| !result.classes[i].orientable)
        .collect();
    let class_index = match policy {
        Policy::MaxSymmetry => {
            let best = candidates.iter().map(|&i| result.classes[i].automorphisms).max();
            candidates
                .iter()
                .copied()
                .find(|&i| Some(result.classes[i].automorphisms) == best)
                .ok_or_else(|| Error::Search("no non-orientable class".into()))?
        }
        Policy::Index(k) => *candidates.get(k).ok_or_else(|| {
            Error::Search(format!(
                "index {k} out of range: {} non-orientable classes",
                candidates.len()
            ))
        })?,
    };
    let record = &result.classes[class_index];
    let (triple, f_star) = witness_with_disjoint_facet(d, &record.colouring).ok_or_else(|| {
        Error::Search(format!(
            "class {class_index} has no zero-sum triple with a disjoint fourth face"
        ))
    })?;
    Ok(Selection {
        class_index,
        colouring: record.colouring.clone(),
        canonical: record.canonical.hex(),
        automorphisms: record.automorphisms,
        triple,
        f_star,
    })
}

/// A linear chain of mirrored copies of one coloured polytope.
#[derive(Debug, Clone)]
pub struct Chain {
    pub polytope: Polytope,
    pub colouring: Colouring,
    /// `origin[j][f]` is where facet `f` of summand `j` sits in `polytope`;
    /// `None` once it has been glued away.
    pub origin: Vec<Vec<Option<usize>>>,
    /// Facets, in the numbering of the base polytope, along which summand
    /// `j + 1` was glued to summand `j`.
    pub glue_faces: Vec<usize>,
    pub matchings: Vec<FacetMatching>,
}

impl Chain {
    pub fn single(base: &Polytope, colouring: &Colouring) -> Chain {
        Chain {
            polytope: base.relabelled(|l| format!("1:{l}")),
            colouring: colouring.clone(),
            origin: vec![(0..base.num_facets()).map(Some).collect()],
            glue_faces: Vec::new(),
            matchings: Vec::new(),
        }
    }

    pub fn summands(&self) -> usize {
        self.origin.len()
    }

    /// Glues a mirror copy of `base` onto the newest summand along `face`.
    ///
    /// The mirror sends each neighbour of `face` to its own copy, so merged
    /// facets carry equal colours.
    pub fn push_mirror(&mut self, base: &Polytope, colouring: &Colouring, face: usize) -> Result<()> {
        let last = self.origin.len() - 1;
        let source = self.origin[last][face]
            .ok_or_else(|| Error::InvalidMatching(format!("facet {face} of summand {} is already glued", last + 1)))?;
        let mut pairs = Vec::new();
        for &y in base.neighbours(face) {
            let x = self.origin[last][y]
                .ok_or_else(|| Error::InvalidMatching(format!("neighbour {y} of facet {face} is glued away")))?;
            if self.colouring.colour(x) != colouring.colour(y) {
                return Err(Error::InvalidMatching(format!(
                    "colour mismatch across the glue: {} vs {}",
                    self.colouring.colour(x),
                    colouring.colour(y)
                )));
            }
            pairs.push((x, y));
        }
        pairs.sort_unstable();
        if pairs
            .iter()
            .map(|&(x, _)| x)
            .ne(self.polytope.neighbours(source).iter().copied())
        {
            return Err(Error::InvalidMatching(format!("facet {face} has merged neighbours")));
        }
        let matching = FacetMatching {
            source,
            target: face,
            bijection: pairs.iter().map(|&(_, y)| y).collect(),
        };
        let tag = self.origin.len() + 1;
        let copy = base.relabelled(|l| format!("{tag}:{l}"));
        let (sum, prov) = connected_sum(&self.polytope, &copy, &matching)?;
        let mut colours: Vec<F2Vector> = vec![0; sum.num_facets()];
        for (i, target) in prov.first.iter().enumerate() {
            if let Some(t) = target {
                colours[*t] = self.colouring.colour(i);
            }
        }
        for (y, target) in prov.second.iter().enumerate() {
            if let Some(t) = target {
                colours[*t] = colouring.colour(y);
            }
        }
        for row in &mut self.origin {
            for slot in row.iter_mut() {
                *slot = slot.and_then(|i| prov.first[i]);
            }
        }
        self.origin.push(prov.second);
        self.colouring = Colouring::new(self.colouring.rank(), colours)?;
        self.polytope = sum;
        self.glue_faces.push(face);
        self.matchings.push(matching);
        Ok(())
    }
}

/// Glue faces of the dodecahedral chain, in dodecahedron numbering.
///
/// The first glue uses F*. Each later one uses the face antipodal to the one
/// along which the newest summand was attached, falling back to the lowest
/// face that is neither that face nor adjacent to it.
pub fn chain_faces(d: &Polytope, triple: [usize; 3], f_star: usize, n: usize) -> Vec<usize> {
    let mut faces = Vec::with_capacity(n.saturating_sub(1));
    let mut prev = f_star;
    for step in 0..n.saturating_sub(1) {
        let face = if step == 0 {
            f_star
        } else {
            let a = d.antipodal_facet(prev);
            if a != prev && !d.adjacent(a, prev) {
                a
            } else {
                (0..d.num_facets())
                    .find(|&g| g != prev && !d.adjacent(g, prev) && !triple.contains(&g))
                    .expect("a dodecahedron has faces disjoint from any face")
            }
        };
        faces.push(face);
        prev = face;
    }
    faces
}

/// The two chains of one construction, before any cover is built.
#[derive(Debug, Clone)]
pub struct Assembly {
    pub n: usize,
    /// `dodecahedron_in_z[f]`: the 120-cell facet whose intersection with the
    /// seed facet is face `f` of the dodecahedron.
    pub dodecahedron_in_z: Vec<usize>,
    /// Orientable F₂⁵-colouring of a single 120-cell extending the class.
    pub extension: Colouring,
    pub extension_stats: SearchStats,
    /// P = D₁#…#D_n with the inherited class.
    pub p_chain: Chain,
    /// Q = Z₁#…#Z_n with the inherited extension.
    pub q_chain: Chain,
    /// Index in Q of the facet built from the seed facets.
    pub p_facet: usize,
}

/// Builds P and Q for `n` summands from a selected class.
pub fn assemble_chain(selection: &Selection, n: usize, budget: &SearchBudget) -> Result<Assembly> {
    if n == 0 {
        return Err(Error::Search("n must be at least 1".into()));
    }
    let d = make_dodecahedron();
    let z = make_120cell();
    let (sub, incidence) = z.facet_subpolytope(SEED_FACET)?;
    let iso = find_isomorphism(&d, &sub)
        .ok_or_else(|| Error::InvalidPolytope("facet of the 120-cell is not a dodecahedron".into()))?;
    let dodecahedron_in_z: Vec<usize> = iso.iter().map(|&a| incidence[a]).collect();

    let mut mu_sub = vec![0; sub.num_facets()];
    for (f, &a) in iso.iter().enumerate() {
        mu_sub[a] = selection.colouring.colour(f);
    }
    let mu_sub = Colouring::new(selection.colouring.rank(), mu_sub)?;
    let seed = seed_from_facet(&z, SEED_FACET, &mu_sub)?;
    let outcome = search_orientable_extension(&z, &seed, budget)?;
    let extension = match (outcome.status, outcome.colouring) {
        (ExtensionStatus::Found, Some(c)) => c,
        (status, _) => {
            return Err(Error::Search(format!(
                "no orientable extension for class {} ({status:?} after {} nodes)",
                selection.class_index, outcome.stats.nodes
            )))
        }
    };

    let faces = chain_faces(&d, selection.triple, selection.f_star, n);
    let mut p_chain = Chain::single(&d, &selection.colouring);
    let mut q_chain = Chain::single(&z, &extension);
    for &face in &faces {
        p_chain.push_mirror(&d, &selection.colouring, face)?;
        q_chain.push_mirror(&z, &extension, dodecahedron_in_z[face])?;
    }
    let p_facet = q_chain.origin[0][SEED_FACET].expect("seed facet is never glued");
    if q_chain.origin.iter().any(|row| row[SEED_FACET] != Some(p_facet)) {
        return Err(Error::InvalidMatching(
            "seed facets did not merge into one facet".into(),
        ));
    }
    Ok(Assembly {
        n,
        dodecahedron_in_z,
        extension,
        extension_stats: outcome.stats,
        p_chain,
        q_chain,
        p_facet,
    })
}

/// One named check with its outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeInfo {
    pub facets: usize,
    pub f_vector: Vec<usize>,
    pub tiling: Option<Tiling>,
}

impl PolytopeInfo {
    fn of(p: &Polytope) -> PolytopeInfo {
        let FVector(f_vector) = p.f_vector();
        PolytopeInfo {
            facets: p.num_facets(),
            f_vector,
            tiling: Tiling::identify(p).ok(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverFacts {
    pub copies: usize,
    pub euler_characteristic: i64,
    pub euler_characteristic_from_faces: i64,
    pub orientable: bool,
    pub orientable_from_gluing: bool,
    pub connected: bool,
    /// Pieces in each component of the preimage of P.
    pub preimage_components: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VolumeTable {
    pub ambient: Volume,
    pub boundary: Volume,
    pub ratio: VolumeRatio,
    /// χ(M)·4/3, to be compared with the ambient volume over π².
    pub gauss_bonnet_over_pi2: Rational64,
}

/// Everything recomputed from P, μ_P, Q, λ_Q and the position of P in Q.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub p: PolytopeInfo,
    pub q: PolytopeInfo,
    pub witness_triple: Option<[usize; 3]>,
    pub cover: CoverFacts,
    pub cut: CutReport,
    pub volumes: Option<VolumeTable>,
    pub checks: Vec<Check>,
}

impl Evaluation {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

struct Checklist(Vec<Check>);

impl Checklist {
    fn add(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.0.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }
}

/// Runs every check of a certificate on the stored objects.
pub fn evaluate(
    n: usize,
    p: &Polytope,
    mu_p: &Colouring,
    q: &Polytope,
    lambda_q: &Colouring,
    p_facet: usize,
) -> Result<Evaluation> {
    let n64 = n as u64;
    let mut c = Checklist(Vec::new());

    c.add(
        "lambda_q_proper",
        is_proper(q, lambda_q),
        format!("{} facets", q.num_facets()),
    );
    let odd = lambda_q.colours().iter().all(|&v| f2::parity(v) == 1);
    c.add("lambda_q_odd_weight", odd, "every colour has odd weight");
    let lambda_orientable = is_proper(q, lambda_q) && matches!(is_orientable(q, lambda_q), Ok(Some(_)));
    c.add(
        "lambda_q_orientable",
        lambda_orientable,
        "a functional takes value 1 on every colour",
    );
    c.add(
        "lambda_q_spans",
        spans(lambda_q),
        format!("image dimension {}", image_dimension(lambda_q)),
    );

    c.add("mu_p_proper", is_proper(p, mu_p), format!("{} facets", p.num_facets()));
    let witness_triple = non_orientability_witness(p, mu_p);
    c.add(
        "mu_p_witness_triple",
        witness_triple.is_some(),
        format!("{witness_triple:?}"),
    );
    let mu_non_orientable = is_proper(p, mu_p) && matches!(is_orientable(p, mu_p), Ok(None));
    c.add(
        "mu_p_non_orientable",
        mu_non_orientable,
        "no functional is 1 on every colour",
    );

    let (sub, induced) = induced_colouring(q, p_facet, lambda_q)?;
    let iso = find_isomorphism(p, &sub);
    c.add("p_is_facet_of_q", iso.is_some(), format!("facet {p_facet} of Q"));
    let induced_ok = match &iso {
        Some(iso) => {
            let pulled = Colouring::new(induced.rank(), iso.iter().map(|&a| induced.colour(a)).collect())?;
            let group = symmetry_group(p);
            equivalent(p, &group, &pulled, mu_p)
        }
        None => false,
    };
    c.add(
        "induced_colouring_matches_mu_p",
        induced_ok,
        "up to symmetry of P and a linear map",
    );

    let p_info = PolytopeInfo::of(p);
    let q_info = PolytopeInfo::of(q);
    let p_tiles = p_info.tiling
        == Some(Tiling {
            kind: CellKind::Dodecahedron,
            count: n64,
        });
    c.add("p_tiled_by_n_dodecahedra", p_tiles, format!("{:?}", p_info.tiling));
    let q_tiles = q_info.tiling
        == Some(Tiling {
            kind: CellKind::Cell120,
            count: n64,
        });
    c.add("q_tiled_by_n_120cells", q_tiles, format!("{:?}", q_info.tiling));

    let cover = build_cover(q, lambda_q)?;
    let copies = cover.copies();
    c.add("cover_copies", copies == 32, format!("{copies} copies"));
    c.add(
        "gluing_involution",
        cover.gluing_is_involution(),
        "fixed-point-free involution on (copy, facet)",
    );
    let ambient_cells = copies as u64 * n64;
    c.add(
        "ambient_cells",
        ambient_cells == 32 * n64,
        format!("{ambient_cells} 120-cells"),
    );
    let connected = cover.connected();
    c.add("cover_connected", connected, "");
    let orientable = cover.orientable();
    let orientable_from_gluing = cover.orientable_from_gluing();
    c.add(
        "cover_orientable",
        orientable && orientable_from_gluing,
        format!("functional {orientable}, bipartite copy graph {orientable_from_gluing}"),
    );
    let chi = cover.euler_characteristic()?;
    let chi_faces = cover.euler_characteristic_from_faces();
    c.add(
        "euler_characteristic",
        chi == chi_faces && chi == 272 * n as i64,
        format!("|G|·χ_orb = {chi}, from faces = {chi_faces}"),
    );

    let components = cover.facet_preimage(p_facet)?;
    let pieces: usize = components.iter().map(|s| s.pieces.len()).sum();
    c.add("preimage_pieces", pieces == copies / 2, format!("{pieces} pieces"));
    let mut all_match = true;
    for s in &components {
        all_match &= cover.component_matches_induced_cover(s)?;
    }
    c.add(
        "components_match_induced_cover",
        all_match,
        format!("{} components", components.len()),
    );

    let component = &components[0];
    let cut = cover.cut_along(component)?;
    c.add(
        "boundary_connected",
        cut.boundary.len() == 1,
        format!("{} components", cut.boundary.len()),
    );
    c.add("boundary_orientable", cut.boundary.iter().all(|b| b.orientable), "");
    let boundary_cells = cut.boundary_cells() as u64 * n64;
    c.add(
        "boundary_cells",
        boundary_cells == 16 * n64,
        format!("{boundary_cells} dodecahedra"),
    );
    c.add(
        "sidedness_prediction",
        cut.one_sided == cut.predicted_one_sided,
        format!(
            "computed one-sided {}, predicted {}",
            cut.one_sided, cut.predicted_one_sided
        ),
    );

    let volumes = cut.volumes.as_ref().and_then(|v| {
        let boundary = Volume::new(CellKind::Dodecahedron, v.boundary.iter().map(|b| b.cells).sum());
        let ratio = volume_ratio(&v.ambient, &boundary).ok()?;
        Some(VolumeTable {
            ambient: v.ambient.clone(),
            boundary,
            ratio,
            gauss_bonnet_over_pi2: gauss_bonnet_over_pi2(Rational64::from_integer(chi)),
        })
    });
    match &volumes {
        Some(v) => {
            c.add("ambient_volume", v.ambient.cells == 32 * n64, v.ambient.exact.clone());
            c.add(
                "boundary_volume",
                v.boundary.cells == 16 * n64,
                format!("{} ≈ {:.4}", v.boundary.exact, v.boundary.numeric),
            );
            c.add(
                "gauss_bonnet",
                v.ambient.over_pi2() == Some(v.gauss_bonnet_over_pi2),
                format!("4π²/3·χ = {}·π²", v.gauss_bonnet_over_pi2),
            );
            c.add(
                "volume_ratio",
                v.ratio.coefficient == Rational64::from_integer(2) && v.ratio.numeric < 53.0,
                format!("{} ≈ {:.4}", v.ratio.exact, v.ratio.numeric),
            );
        }
        None => c.add("volumes", false, "tile counts not recognised"),
    }

    Ok(Evaluation {
        p: p_info,
        q: q_info,
        witness_triple,
        cover: CoverFacts {
            copies,
            euler_characteristic: chi,
            euler_characteristic_from_faces: chi_faces,
            orientable,
            orientable_from_gluing,
            connected,
            preimage_components: components.iter().map(|s| s.pieces.len()).collect(),
        },
        cut,
        volumes,
        checks: c.0,
    })
}

/// A claim about the construction set against what the complex shows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimComparison {
    pub claim: String,
    pub computed: String,
}

pub const FILE_P: &str = "p.json";
pub const FILE_MU_P: &str = "mu_p.txt";
pub const FILE_Q: &str = "q.json";
pub const FILE_LAMBDA_Q: &str = "lambda_q.txt";
pub const FILE_COVER: &str = "cover.json";
pub const FILE_CERTIFICATE: &str = "certificate.json";

/// Machine-checkable record of one instance of the chain construction.
///
/// Names follow the convention that N_n is the boundary 3-manifold and M_n
/// the 4-manifold it bounds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub tool_version: String,
    pub n: usize,
    pub policy: String,
    pub class_index: usize,
    pub class_canonical_form: String,
    pub class_automorphisms: usize,
    /// The class representative on the dodecahedron. Face F* is glued away
    /// in every summand of P, so this is kept separately.
    pub class_colouring: Vec<F2Vector>,
    /// (F, F′, F″) in dodecahedron numbering.
    pub witness_triple: [usize; 3],
    pub f_star: usize,
    /// Glue face of each step in dodecahedron numbering; the 120-cells are
    /// glued along the corresponding facets adjacent to the seed facet.
    pub glue_faces: Vec<usize>,
    pub p_matchings: Vec<FacetMatching>,
    pub q_matchings: Vec<FacetMatching>,
    pub seed_facet: usize,
    pub dodecahedron_in_z: Vec<usize>,
    pub extension_nodes: u64,
    pub p_facet_in_q: usize,
    pub files: Vec<String>,
    pub evaluation: Evaluation,
    pub passed: bool,
    pub failed_step: Option<String>,
    pub naming: String,
    pub equivalence: String,
    pub claims: Vec<ClaimComparison>,
}

/// A certificate together with the objects it describes.
#[derive(Debug, Clone)]
pub struct CertifiedRun {
    pub certificate: Certificate,
    pub p: Polytope,
    pub mu_p: Colouring,
    pub q: Polytope,
    pub lambda_q: Colouring,
    pub cover: CoverSummary,
}

impl CertifiedRun {
    /// Writes the polytopes, colourings, cover summary and certificate.
    pub fn write(&self, dir: &Path) -> Result<()> {
        io::write(&dir.join(FILE_P), &io::polytope_to_json(&self.p))?;
        io::write(&dir.join(FILE_MU_P), &io::colouring_to_text(&self.mu_p))?;
        io::write(&dir.join(FILE_Q), &io::polytope_to_json(&self.q))?;
        io::write(&dir.join(FILE_LAMBDA_Q), &io::colouring_to_text(&self.lambda_q))?;
        io::write(
            &dir.join(FILE_COVER),
            &(serde_json::to_string_pretty(&self.cover)? + "\n"),
        )?;
        io::write(
            &dir.join(FILE_CERTIFICATE),
            &(serde_json::to_string_pretty(&self.certificate)? + "\n"),
        )
    }
}

/// Runs the whole construction for `n` summands.
pub fn certify(n: usize, policy: Policy, budget: &SearchBudget) -> Result<CertifiedRun> {
    let d = make_dodecahedron();
    let group = symmetry_group(&d);
    let classes = enumerate_small_covers(&d, &group, budget)?;
    let selection = select_class(&d, &classes, policy)?;
    certify_selection(n, policy, &selection, budget)
}

/// Runs the construction for an already selected class.
pub fn certify_selection(
    n: usize,
    policy: Policy,
    selection: &Selection,
    budget: &SearchBudget,
) -> Result<CertifiedRun> {
    let assembly = assemble_chain(selection, n, budget)?;
    let (p, mu_p) = (assembly.p_chain.polytope.clone(), assembly.p_chain.colouring.clone());
    let (q, lambda_q) = (assembly.q_chain.polytope.clone(), assembly.q_chain.colouring.clone());
    let evaluation = evaluate(n, &p, &mu_p, &q, &lambda_q, assembly.p_facet)?;
    let cover = build_cover(&q, &lambda_q)?.summary()?;

    let comps = &evaluation.cover.preimage_components;
    let claims = vec![
        ClaimComparison {
            claim: "the degree-32 cover of the 120-cell contains four copies of a non-orientable degree-8 cover of the dodecahedron".into(),
            computed: format!(
                "the preimage of P has {} components with {:?} pieces each",
                comps.len(),
                comps
            ),
        },
    ];
    let certificate = Certificate {
        tool_version: env!("CARGO_PKG_VERSION").into(),
        n,
        policy: policy.to_string(),
        class_index: selection.class_index,
        class_canonical_form: selection.canonical.clone(),
        class_automorphisms: selection.automorphisms,
        class_colouring: selection.colouring.colours().to_vec(),
        witness_triple: selection.triple,
        f_star: selection.f_star,
        glue_faces: assembly.p_chain.glue_faces.clone(),
        p_matchings: assembly.p_chain.matchings.clone(),
        q_matchings: assembly.q_chain.matchings.clone(),
        seed_facet: SEED_FACET,
        dodecahedron_in_z: assembly.dodecahedron_in_z.clone(),
        extension_nodes: assembly.extension_stats.nodes,
        p_facet_in_q: assembly.p_facet,
        files: [FILE_P, FILE_MU_P, FILE_Q, FILE_LAMBDA_Q, FILE_COVER]
            .map(String::from)
            .to_vec(),
        passed: evaluation.passed(),
        failed_step: evaluation.first_failure().map(|c| c.name.clone()),
        evaluation,
        naming: "N_n is the closed 3-manifold (16n dodecahedra) and M_n the 4-manifold it bounds (32n 120-cells); \
                 the single-summand discussion elsewhere swaps the two letters"
            .into(),
        equivalence: "classes are taken up to polytope symmetry and invertible linear maps of the image, \
                      which may be finer than isomorphism of kernels"
            .into(),
        claims,
    };
    Ok(CertifiedRun {
        certificate,
        p,
        mu_p,
        q,
        lambda_q,
        cover,
    })
}

/// Outcome of re-checking a certificate directory.
#[derive(Debug, Clone)]
pub struct Revalidation {
    pub stored: Certificate,
    pub recomputed: Evaluation,
    /// Stored fields that differ from the recomputation.
    pub mismatches: Vec<String>,
}

impl Revalidation {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.recomputed.passed() && self.stored.passed
    }
}

/// Reloads the files written by [`CertifiedRun::write`] and re-runs every check.
pub fn revalidate(dir: &Path) -> Result<Revalidation> {
    let text = std::fs::read_to_string(dir.join(FILE_CERTIFICATE)).map_err(|e| Error::Io(e.to_string()))?;
    let stored: Certificate = serde_json::from_str(&text)?;
    let p = io::read_polytope(&dir.join(FILE_P))?;
    let mu_p = io::read_colouring(&dir.join(FILE_MU_P))?;
    let q = io::read_polytope(&dir.join(FILE_Q))?;
    let lambda_q = io::read_colouring(&dir.join(FILE_LAMBDA_Q))?;
    let recomputed = evaluate(stored.n, &p, &mu_p, &q, &lambda_q, stored.p_facet_in_q)?;

    let mut mismatches = Vec::new();
    let e = &stored.evaluation;
    let mut compare = |name: &str, same: bool| {
        if !same {
            mismatches.push(name.to_string());
        }
    };
    compare("p", e.p == recomputed.p);
    compare("q", e.q == recomputed.q);
    compare("witness_triple", e.witness_triple == recomputed.witness_triple);
    compare("cover", e.cover == recomputed.cover);
    compare("cut", e.cut == recomputed.cut);
    compare("volumes", e.volumes == recomputed.volumes);
    compare("checks", e.checks == recomputed.checks);
    compare("passed", stored.passed == recomputed.passed());
    let d = make_dodecahedron();
    let class = Colouring::new(mu_p.rank(), stored.class_colouring.clone()).and_then(|c| {
        if c.len() == d.num_facets() {
            Ok(c)
        } else {
            Err(Error::LengthMismatch {
                expected: d.num_facets(),
                got: c.len(),
            })
        }
    });
    compare(
        "canonical_form",
        class
            .as_ref()
            .is_ok_and(|c| canonical_form(&d, &symmetry_group(&d), c).hex() == stored.class_canonical_form),
    );
    compare(
        "class_colouring",
        class.as_ref().is_ok_and(|c| {
            (0..d.num_facets()).all(|f| mu_p_first_summand(&p, &mu_p, f).is_none_or(|v| v == c.colour(f)))
        }),
    );
    Ok(Revalidation {
        stored,
        recomputed,
        mismatches,
    })
}

/// Colour in `mu_p` of face `f` of the first dodecahedron, located through
/// the facet labels written by [`Chain`].
/// Colour in P of face `f` of the first summand, unless it was glued away.
fn mu_p_first_summand(p: &Polytope, mu_p: &Colouring, f: usize) -> Option<F2Vector> {
    let own = format!("1:{f}");
    p.labels()
        .iter()
        .position(|l| l.split('|').any(|part| part == own))
        .map(|i| mu_p.colour(i))
}
