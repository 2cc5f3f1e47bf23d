//! File formats: polytopes as JSON, colourings as text.
//!
//! A colouring file starts with `rank s` and then lists one decimal colour
//! per facet, in facet order, using the binary encoding with coordinate 1
//! as the least significant bit. Partial colourings write `-` for facets
//! without a colour.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::colouring::{Colouring, PartialColouring};
use crate::error::{Error, Result};
use crate::f2::F2Vector;
use crate::polytope::Polytope;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct PolytopeFile {
    dimension: usize,
    facets: Vec<String>,
    adjacency: Vec<[usize; 2]>,
    vertices: Vec<Vec<usize>>,
}

/// Serializes a polytope as a single line of JSON with sorted pairs and vertices.
pub fn polytope_to_json(p: &Polytope) -> String {
    let file = PolytopeFile {
        dimension: p.dimension(),
        facets: p.labels().to_vec(),
        adjacency: p.edges().into_iter().map(|(i, j)| [i, j]).collect(),
        vertices: p.vertices().to_vec(),
    };
    let mut s = serde_json::to_string(&file).expect("polytope serializes");
    s.push('\n');
    s
}

pub fn polytope_from_json(text: &str) -> Result<Polytope> {
    let file: PolytopeFile = serde_json::from_str(text)?;
    let edges: Vec<(usize, usize)> = file.adjacency.iter().map(|&[i, j]| (i, j)).collect();
    Polytope::new(file.dimension, file.facets, &edges, file.vertices)
}

pub fn colouring_to_text(lambda: &Colouring) -> String {
    let mut s = format!("rank {}\n", lambda.rank());
    for c in lambda.colours() {
        s.push_str(&c.to_string());
        s.push('\n');
    }
    s
}

pub fn partial_to_text(partial: &PartialColouring) -> String {
    let mut s = format!("rank {}\n", partial.rank());
    for c in partial.colours() {
        match c {
            Some(v) => s.push_str(&v.to_string()),
            None => s.push('-'),
        }
        s.push('\n');
    }
    s
}

fn parse_lines(text: &str) -> Result<(usize, Vec<Option<F2Vector>>)> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let rank = match lines.next() {
        Some((n, header)) => {
            let value = header.strip_prefix("rank").map(str::trim).ok_or_else(|| Error::Parse {
                line: n,
                message: "expected `rank s`".into(),
            })?;
            value.parse::<usize>().map_err(|e| Error::Parse {
                line: n,
                message: format!("bad rank: {e}"),
            })?
        }
        None => {
            return Err(Error::Parse {
                line: 1,
                message: "empty colouring file".into(),
            })
        }
    };
    let mut colours = Vec::new();
    let mut blank_from = None;
    for (n, line) in lines {
        if line.is_empty() {
            blank_from.get_or_insert(n);
            continue;
        }
        if let Some(b) = blank_from {
            return Err(Error::Parse {
                line: b,
                message: "blank line inside colour list".into(),
            });
        }
        if line == "-" {
            colours.push(None);
            continue;
        }
        let v = line.parse::<F2Vector>().map_err(|e| Error::Parse {
            line: n,
            message: format!("bad colour `{line}`: {e}"),
        })?;
        if rank < 128 && v >> rank != 0 {
            return Err(Error::Parse {
                line: n,
                message: format!("colour {v} does not fit in rank {rank}"),
            });
        }
        colours.push(Some(v));
    }
    Ok((rank, colours))
}

pub fn colouring_from_text(text: &str) -> Result<Colouring> {
    let (rank, colours) = parse_lines(text)?;
    let full = colours
        .iter()
        .enumerate()
        .map(|(i, c)| {
            c.ok_or_else(|| Error::Parse {
                line: i + 2,
                message: "unassigned facet in a full colouring".into(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Colouring::new(rank, full)
}

pub fn partial_from_text(text: &str) -> Result<PartialColouring> {
    let (rank, colours) = parse_lines(text)?;
    PartialColouring::new(rank, colours)
}

pub fn read_polytope(path: &Path) -> Result<Polytope> {
    polytope_from_json(&read(path)?)
}

pub fn read_colouring(path: &Path) -> Result<Colouring> {
    colouring_from_text(&read(path)?)
}

pub fn read_partial(path: &Path) -> Result<PartialColouring> {
    partial_from_text(&read(path)?)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Writes `contents`, creating parent directories as needed.
pub fn write(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
        }
    }
    fs::write(path, contents).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}
