//! Command-line front end shared by the `racolour` binary and the tests.
//!
//! Every command writes its outputs and a `manifest.json` into the output
//! directory. Exit status is 0 when all checks pass, 1 when a result
//! contradicts what was expected (a failed certificate, an exhausted search),
//! and 2 for usage, parse and IO errors.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::colouring::{
    equivalent, image_dimension, induced_colouring, is_orientable, non_orientability_witness, spans, Colouring,
};
use crate::cover::build_cover;
use crate::error::{Error, Result};
use crate::io;
use crate::pipeline::{self, Policy};
use crate::polytope::{find_isomorphism, make_120cell, make_dodecahedron, symmetry_group, Polytope};
use crate::search::{
    enumerate_chromatic_colourings, enumerate_small_covers, search_orientable_extension, seed_from_facet_with_rank,
    ExtensionStatus, SearchBudget,
};

/// Environment variable naming the default output directory.
pub const OUT_ENV: &str = "RACOLOUR_OUT";

#[derive(Debug, Parser)]
#[command(
    name = "racolour",
    version,
    about = "Colourings and manifold covers of right-angled polytopes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the polytope file of the dodecahedron or the 120-cell.
    Generate {
        #[arg(value_enum)]
        kind: Kind,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Report properness, image dimension, orientability and witnesses.
    Check {
        polytope: PathBuf,
        colouring: PathBuf,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Enumerate small covers, or k-colourings with `--colours k`.
    Enumerate {
        polytope: PathBuf,
        #[arg(long)]
        colours: Option<usize>,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Extend a class of the seed facet to an orientable colouring of the polytope.
    Extend {
        polytope: PathBuf,
        /// Colouring of the facet, in the numbering of `--facet-polytope`.
        class: PathBuf,
        /// Polytope the class file refers to; defaults to the dodecahedron.
        #[arg(long)]
        facet_polytope: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed_facet: usize,
        #[arg(long, default_value_t = 5)]
        rank: usize,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Build the cover of a coloured polytope and optionally cut it.
    Cover {
        polytope: PathBuf,
        colouring: PathBuf,
        /// Cut along the first preimage component of this facet.
        #[arg(long)]
        cut_facet: Option<usize>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Run the chain construction for n summands, or re-check a certificate.
    Certify {
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value = "max-symmetry")]
        policy: String,
        /// Re-check the certificate stored in this directory instead.
        #[arg(long, conflicts_with = "n")]
        revalidate: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Dodecahedron,
    #[value(name = "120cell")]
    Cell120,
}

#[derive(Debug, Args)]
pub struct BudgetArgs {
    #[arg(long, default_value_t = 100_000_000)]
    pub budget_nodes: u64,
    #[arg(long, default_value_t = 1800.0)]
    pub budget_seconds: f64,
    #[arg(long, default_value_t = 1)]
    pub parallel: usize,
}

impl BudgetArgs {
    fn budget(&self) -> Result<SearchBudget> {
        SearchBudget::new(self.budget_nodes, self.budget_seconds, self.parallel)
    }
}

#[derive(Debug, Args)]
pub struct OutArgs {
    /// Output directory; defaults to $RACOLOUR_OUT or `out`.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl OutArgs {
    fn dir(&self) -> PathBuf {
        self.out
            .clone()
            .or_else(|| std::env::var_os(OUT_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("out"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileDigest {
    pub path: String,
    pub sha256: String,
}

/// Provenance of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub arguments: Vec<String>,
    pub inputs: Vec<FileDigest>,
    pub outputs: Vec<FileDigest>,
    pub tool_version: String,
    pub wall_seconds: f64,
    /// Digest over the output digests, in order.
    pub result_digest: String,
}

pub fn sha256_file(path: &Path) -> Result<String> {
    let bytes = std::fs::read(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

fn digests(paths: &[PathBuf]) -> Result<Vec<FileDigest>> {
    paths
        .iter()
        .map(|p| {
            Ok(FileDigest {
                path: p.display().to_string(),
                sha256: sha256_file(p)?,
            })
        })
        .collect()
}

/// What a command produced.
struct Outcome {
    inputs: Vec<PathBuf>,
    outputs: Vec<PathBuf>,
    /// Printed to stdout.
    report: String,
    passed: bool,
}

/// Writes `contents` under `dir` and records the path.
fn emit(outputs: &mut Vec<PathBuf>, dir: &Path, name: &str, contents: &str) -> Result<()> {
    let path = dir.join(name);
    io::write(&path, contents)?;
    outputs.push(path);
    Ok(())
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

/// Parses arguments, runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let start = Instant::now();
    let dir = out_dir(&cli.command);
    match execute(&cli.command, &dir) {
        Ok(outcome) => {
            let manifest = manifest(&cli.command, &args, &outcome, start.elapsed().as_secs_f64());
            if let Err(e) = manifest.and_then(|m| io::write(&dir.join("manifest.json"), &json(&m)?)) {
                eprintln!("error: {e}");
                return 2;
            }
            print!("{}", outcome.report);
            if outcome.passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

/// 2 for input and environment problems, 1 for mathematical failures.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_)
        | Error::Parse { .. }
        | Error::FacetOutOfRange { .. }
        | Error::LengthMismatch { .. }
        | Error::RankOutOfRange(_) => 2,
        _ => 1,
    }
}

fn out_dir(command: &Command) -> PathBuf {
    match command {
        Command::Generate { out, .. }
        | Command::Check { out, .. }
        | Command::Enumerate { out, .. }
        | Command::Extend { out, .. }
        | Command::Cover { out, .. }
        | Command::Certify { out, .. } => out.dir(),
    }
}

fn manifest(command: &Command, args: &[OsString], outcome: &Outcome, wall_seconds: f64) -> Result<RunManifest> {
    let name = match command {
        Command::Generate { .. } => "generate",
        Command::Check { .. } => "check",
        Command::Enumerate { .. } => "enumerate",
        Command::Extend { .. } => "extend",
        Command::Cover { .. } => "cover",
        Command::Certify { .. } => "certify",
    };
    let outputs = digests(&outcome.outputs)?;
    let mut hasher = Sha256::new();
    for d in &outputs {
        hasher.update(d.sha256.as_bytes());
    }
    Ok(RunManifest {
        command: name.into(),
        arguments: args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect(),
        inputs: digests(&outcome.inputs)?,
        outputs,
        tool_version: env!("CARGO_PKG_VERSION").into(),
        wall_seconds,
        result_digest: hex::encode(hasher.finalize()),
    })
}

fn execute(command: &Command, dir: &Path) -> Result<Outcome> {
    match command {
        Command::Generate { kind, .. } => cmd_generate(*kind, dir),
        Command::Check {
            polytope, colouring, ..
        } => cmd_check(polytope, colouring, dir),
        Command::Enumerate {
            polytope,
            colours,
            budget,
            ..
        } => cmd_enumerate(polytope, *colours, &budget.budget()?, dir),
        Command::Extend {
            polytope,
            class,
            facet_polytope,
            seed_facet,
            rank,
            budget,
            ..
        } => cmd_extend(
            polytope,
            class,
            facet_polytope.as_deref(),
            *seed_facet,
            *rank,
            &budget.budget()?,
            dir,
        ),
        Command::Cover {
            polytope,
            colouring,
            cut_facet,
            ..
        } => cmd_cover(polytope, colouring, *cut_facet, dir),
        Command::Certify {
            n,
            policy,
            revalidate,
            budget,
            ..
        } => match revalidate {
            Some(stored) => cmd_revalidate(stored, dir),
            None => cmd_certify(*n, policy.parse()?, &budget.budget()?, dir),
        },
    }
}

fn cmd_generate(kind: Kind, dir: &Path) -> Result<Outcome> {
    let (name, p) = match kind {
        Kind::Dodecahedron => ("dodecahedron.json", make_dodecahedron()),
        Kind::Cell120 => ("120cell.json", make_120cell()),
    };
    let mut outputs = Vec::new();
    emit(&mut outputs, dir, name, &io::polytope_to_json(&p))?;
    Ok(Outcome {
        inputs: vec![],
        report: format!(
            "{} facets, {} vertices -> {}\n",
            p.num_facets(),
            p.vertices().len(),
            outputs[0].display()
        ),
        outputs,
        passed: true,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub facets: usize,
    pub rank: usize,
    pub proper: bool,
    /// First vertex with dependent colours, with its facets.
    pub improper_vertex: Option<(usize, Vec<usize>)>,
    pub image_dimension: usize,
    pub spans: bool,
    /// Some(functional) when orientable; absent for improper colourings.
    pub orientable: Option<bool>,
    pub functional: Option<String>,
    pub witness_triple: Option<[usize; 3]>,
}

pub fn check_report(p: &Polytope, lambda: &Colouring) -> Result<CheckReport> {
    let improper = lambda.improper_vertex(p)?;
    let functional = match improper {
        None => is_orientable(p, lambda)?,
        Some(_) => None,
    };
    Ok(CheckReport {
        facets: p.num_facets(),
        rank: lambda.rank(),
        proper: improper.is_none(),
        improper_vertex: improper.map(|v| (v, p.vertices()[v].clone())),
        image_dimension: image_dimension(lambda),
        spans: spans(lambda),
        orientable: improper.is_none().then_some(functional.is_some()),
        functional: functional.map(|f| format!("{:b}", f.0)),
        witness_triple: non_orientability_witness(p, lambda),
    })
}

fn cmd_check(polytope: &Path, colouring: &Path, dir: &Path) -> Result<Outcome> {
    let p = io::read_polytope(polytope)?;
    let lambda = io::read_colouring(colouring)?;
    let report = json(&check_report(&p, &lambda)?)?;
    let mut outputs = Vec::new();
    emit(&mut outputs, dir, "check.json", &report)?;
    Ok(Outcome {
        inputs: vec![polytope.into(), colouring.into()],
        outputs,
        report,
        passed: true,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSummary {
    pub file: String,
    pub canonical_form: String,
    pub orientable: bool,
    pub automorphisms: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationSummary {
    pub classes: usize,
    pub orientable: usize,
    pub non_orientable: usize,
    pub nodes: u64,
    pub complete: bool,
    pub class_files: Vec<ClassSummary>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChromaticSummary {
    pub k: usize,
    pub classes_up_to_symmetry: usize,
    pub up_to_colour_permutation: u64,
    pub nodes: u64,
    pub complete: bool,
    pub representatives: Vec<Vec<usize>>,
}

fn cmd_enumerate(polytope: &Path, colours: Option<usize>, budget: &SearchBudget, dir: &Path) -> Result<Outcome> {
    let p = io::read_polytope(polytope)?;
    let group = symmetry_group(&p);
    let mut outputs = Vec::new();
    let (report, complete) = match colours {
        Some(k) => {
            let count = enumerate_chromatic_colourings(&p, &group, k, budget)?;
            let summary = ChromaticSummary {
                k,
                classes_up_to_symmetry: count.classes,
                up_to_colour_permutation: count.up_to_colour_permutation,
                nodes: count.stats.nodes,
                complete: count.stats.complete,
                representatives: count.representatives,
            };
            let text = json(&summary)?;
            emit(&mut outputs, dir, "chromatic.json", &text)?;
            (text, summary.complete)
        }
        None => {
            let result = enumerate_small_covers(&p, &group, budget)?;
            let mut class_files = Vec::new();
            for (i, class) in result.classes.iter().enumerate() {
                let name = format!("class_{i:02}.txt");
                emit(&mut outputs, dir, &name, &io::colouring_to_text(&class.colouring))?;
                class_files.push(ClassSummary {
                    file: name,
                    canonical_form: class.canonical.hex(),
                    orientable: class.orientable,
                    automorphisms: class.automorphisms,
                });
            }
            let summary = EnumerationSummary {
                classes: result.classes.len(),
                orientable: result.orientable_count(),
                non_orientable: result.classes.len() - result.orientable_count(),
                nodes: result.stats.nodes,
                complete: result.stats.complete,
                class_files,
            };
            let text = json(&summary)?;
            emit(&mut outputs, dir, "summary.json", &text)?;
            (
                format!(
                    "{} classes: {} orientable, {} non-orientable{}\n",
                    summary.classes,
                    summary.orientable,
                    summary.non_orientable,
                    if summary.complete { "" } else { " (incomplete)" }
                ),
                summary.complete,
            )
        }
    };
    Ok(Outcome {
        inputs: vec![polytope.into()],
        outputs,
        report,
        passed: complete,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionSummary {
    pub status: ExtensionStatus,
    pub seed_facet: usize,
    pub rank: usize,
    pub nodes: u64,
    pub complete: bool,
    /// The induced colouring on the seed facet is equivalent to the class.
    pub induced_matches_class: Option<bool>,
}

fn cmd_extend(
    polytope: &Path,
    class: &Path,
    facet_polytope: Option<&Path>,
    seed_facet: usize,
    rank: usize,
    budget: &SearchBudget,
    dir: &Path,
) -> Result<Outcome> {
    let z = io::read_polytope(polytope)?;
    let mu = io::read_colouring(class)?;
    let d = match facet_polytope {
        Some(path) => io::read_polytope(path)?,
        None => make_dodecahedron(),
    };
    z.check_facet(seed_facet)?;
    let (sub, _) = z.facet_subpolytope(seed_facet)?;
    let iso = find_isomorphism(&d, &sub)
        .ok_or_else(|| Error::InvalidPolytope("the seed facet is not isomorphic to the class polytope".into()))?;
    if mu.len() != d.num_facets() {
        return Err(Error::LengthMismatch {
            expected: d.num_facets(),
            got: mu.len(),
        });
    }
    let mut moved = vec![0; sub.num_facets()];
    for (f, &a) in iso.iter().enumerate() {
        moved[a] = mu.colour(f);
    }
    let mu_sub = Colouring::new(mu.rank(), moved)?;
    let seed = seed_from_facet_with_rank(&z, seed_facet, &mu_sub, rank)?;
    let outcome = search_orientable_extension(&z, &seed, budget)?;

    let mut outputs = Vec::new();
    let induced_matches_class = match &outcome.colouring {
        Some(lambda) => {
            emit(&mut outputs, dir, "extension.txt", &io::colouring_to_text(lambda))?;
            let (sub, induced) = induced_colouring(&z, seed_facet, lambda)?;
            Some(equivalent(&sub, &symmetry_group(&sub), &induced, &mu_sub))
        }
        None => None,
    };
    let summary = ExtensionSummary {
        status: outcome.status,
        seed_facet,
        rank,
        nodes: outcome.stats.nodes,
        complete: outcome.stats.complete,
        induced_matches_class,
    };
    let text = json(&summary)?;
    emit(&mut outputs, dir, "extension.json", &text)?;
    Ok(Outcome {
        inputs: vec![polytope.into(), class.into()],
        outputs,
        report: text,
        passed: outcome.status == ExtensionStatus::Found && induced_matches_class == Some(true),
    })
}

fn cmd_cover(polytope: &Path, colouring: &Path, cut_facet: Option<usize>, dir: &Path) -> Result<Outcome> {
    let p = io::read_polytope(polytope)?;
    let lambda = io::read_colouring(colouring)?;
    let cover = build_cover(&p, &lambda)?;
    let summary = cover.summary()?;
    let mut outputs = Vec::new();
    let mut report = json(&summary)?;
    emit(&mut outputs, dir, "cover.json", &report)?;
    let consistent = cover.euler_characteristic_from_faces() == summary.euler_characteristic
        && cover.orientable_from_gluing() == summary.orientable;
    if let Some(f) = cut_facet {
        let components = cover.facet_preimage(f)?;
        let cut = cover.cut_along(&components[0])?;
        let text = json(&cut)?;
        emit(&mut outputs, dir, "cut.json", &text)?;
        report.push_str(&text);
    }
    Ok(Outcome {
        inputs: vec![polytope.into(), colouring.into()],
        outputs,
        report,
        passed: consistent,
    })
}

fn cmd_certify(n: usize, policy: Policy, budget: &SearchBudget, dir: &Path) -> Result<Outcome> {
    let run = pipeline::certify(n, policy, budget)?;
    run.write(dir)?;
    let mut outputs: Vec<PathBuf> = run.certificate.files.iter().map(|f| dir.join(f)).collect();
    outputs.push(dir.join(pipeline::FILE_CERTIFICATE));
    let c = &run.certificate;
    let mut report = String::new();
    for check in &c.evaluation.checks {
        report.push_str(&format!(
            "{} {} {}\n",
            if check.passed { "PASS" } else { "FAIL" },
            check.name,
            check.detail
        ));
    }
    report.push_str(&format!(
        "certificate n={} {}\n",
        n,
        if c.passed { "passed" } else { "FAILED" }
    ));
    Ok(Outcome {
        inputs: vec![],
        outputs,
        report,
        passed: c.passed,
    })
}

fn cmd_revalidate(stored: &Path, dir: &Path) -> Result<Outcome> {
    let r = pipeline::revalidate(stored)?;
    let mut outputs = Vec::new();
    let text = json(&serde_json::json!({
        "passed": r.passed(),
        "mismatches": r.mismatches,
        "checks": r.recomputed.checks,
    }))?;
    emit(&mut outputs, dir, "revalidation.json", &text)?;
    let inputs = [
        pipeline::FILE_P,
        pipeline::FILE_MU_P,
        pipeline::FILE_Q,
        pipeline::FILE_LAMBDA_Q,
        pipeline::FILE_CERTIFICATE,
    ]
    .iter()
    .map(|f| stored.join(f))
    .collect();
    Ok(Outcome {
        inputs,
        outputs,
        report: text,
        passed: r.passed(),
    })
}
