//! The shipped knot table: a manifest plus PD files and optional lattice
//! embeddings.
//!
//! Manifest lines read `id pd-file crossing-number lattice-file|- [# note]`,
//! with paths relative to the manifest's directory.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::diagram::{parse_pd, LinkDiagram};
use crate::lattice::{parse_lattice, LatticePolygon};
use crate::pipeline::KnotInput;

pub const MANIFEST: &str = "manifest.txt";
pub const CORPUS_ENV: &str = "ROPEBOUND_CORPUS";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("manifest line {line}: {message}")]
    Manifest { line: usize, message: String },
    #[error("corpus entry {id}: {message}")]
    Validation { id: String, message: String },
    #[error("knot {0} is not in the corpus")]
    UnknownKnot(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub id: String,
    pub pd: String,
    pub diagram: LinkDiagram,
    pub crossing_number: usize,
    pub lattice: Option<LatticePolygon>,
    pub note: String,
}

impl From<&CorpusEntry> for KnotInput {
    fn from(e: &CorpusEntry) -> Self {
        KnotInput {
            id: e.id.clone(),
            diagram: e.diagram.clone(),
            crossing_number: e.crossing_number,
            lattice: e.lattice.clone(),
        }
    }
}

/// `ROPEBOUND_CORPUS` if set, else the `data` directory of this workspace.
pub fn default_dir() -> PathBuf {
    std::env::var_os(CORPUS_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data"))
}

/// Orders ids like `3_1 < 4_1 < 10_1` by their numeric parts.
pub fn knot_order(a: &str, b: &str) -> Ordering {
    let key = |s: &str| -> Option<(u64, u64)> {
        let (c, i) = s.split_once('_')?;
        Some((c.parse().ok()?, i.parse().ok()?))
    };
    match (key(a), key(b)) {
        (Some(x), Some(y)) => x.cmp(&y).then_with(|| a.cmp(b)),
        _ => a.cmp(b),
    }
}

fn read(path: &Path) -> Result<String, CorpusError> {
    std::fs::read_to_string(path)
        .map_err(|e| CorpusError::Io { path: path.display().to_string(), message: e.to_string() })
}

/// Checks one entry: alternating, reduced, a knot, and with the expected
/// number of crossings.
pub fn validate_entry(id: &str, diagram: &LinkDiagram, crossing_number: usize) -> Result<(), CorpusError> {
    let fail = |message: String| Err(CorpusError::Validation { id: id.to_string(), message });
    if diagram.component_count() != 1 {
        return fail(format!("expected a knot, found {} components", diagram.component_count()));
    }
    if diagram.crossing_count() != crossing_number {
        return fail(format!("has {} crossings, manifest says {crossing_number}", diagram.crossing_count()));
    }
    if !diagram.is_alternating() {
        return fail("diagram is not alternating".into());
    }
    if !diagram.is_reduced() {
        return fail("diagram has a nugatory crossing".into());
    }
    Ok(())
}

pub fn load(dir: &Path) -> Result<Vec<CorpusEntry>, CorpusError> {
    let manifest = dir.join(MANIFEST);
    if !manifest.exists() {
        log::warn!("no {MANIFEST} in {}; corpus is empty", dir.display());
        return Ok(Vec::new());
    }
    let text = read(&manifest)?;
    let mut entries = Vec::new();
    let mut seen = BTreeSet::new();
    for (n, raw) in text.lines().enumerate() {
        let (body, note) = match raw.split_once('#') {
            Some((b, c)) => (b, c.trim()),
            None => (raw, ""),
        };
        let fields: Vec<&str> = body.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        let line = n + 1;
        let [id, pd_file, cr, lattice_file] = fields[..] else {
            return Err(CorpusError::Manifest { line, message: format!("expected 4 fields, found {}", fields.len()) });
        };
        let crossing_number: usize =
            cr.parse().map_err(|_| CorpusError::Manifest { line, message: format!("bad crossing number `{cr}`") })?;
        if !seen.insert(id.to_string()) {
            return Err(CorpusError::Manifest { line, message: format!("duplicate entry {id}") });
        }
        let pd = read(&dir.join(pd_file))?;
        let diagram =
            parse_pd(&pd).map_err(|e| CorpusError::Validation { id: id.to_string(), message: e.to_string() })?;
        validate_entry(id, &diagram, crossing_number)?;
        let lattice = if lattice_file == "-" {
            None
        } else {
            let link = parse_lattice(&read(&dir.join(lattice_file))?)
                .map_err(|e| CorpusError::Validation { id: id.to_string(), message: e.to_string() })?;
            match link.components() {
                [p] => Some(p.clone()),
                _ => {
                    return Err(CorpusError::Validation {
                        id: id.to_string(),
                        message: "lattice embedding must have one component".into(),
                    })
                }
            }
        };
        entries.push(CorpusEntry {
            id: id.to_string(),
            pd: pd.trim().to_string(),
            diagram,
            crossing_number,
            lattice,
            note: note.to_string(),
        });
    }
    entries.sort_by(|a, b| knot_order(&a.id, &b.id));
    Ok(entries)
}

/// Entries matching `selector`: a knot id or `all`.
pub fn select<'a>(entries: &'a [CorpusEntry], selector: &str) -> Result<Vec<&'a CorpusEntry>, CorpusError> {
    if selector == "all" {
        return Ok(entries.iter().collect());
    }
    entries
        .iter()
        .find(|e| e.id == selector)
        .map(|e| vec![e])
        .ok_or_else(|| CorpusError::UnknownKnot(selector.to_string()))
}
