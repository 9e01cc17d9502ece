//! The catalog on disk: one polytope file per entry under `f<facets>/`,
//! named by canonical code.

use crate::format::{parse_polytope, serialize_combinatorial, FormatError};
use coxdeform_core::polytope::CombinatorialPolytope;
use std::path::{Path, PathBuf};
use std::{env, fs, io};
use thiserror::Error;

pub const CATALOG_ENV: &str = "COXDEFORM_CATALOG_DIR";

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Format { path: PathBuf, source: FormatError },
    #[error("{path}: file name does not match canonical code {code}")]
    CodeMismatch { path: PathBuf, code: String },
    #[error("{path}: expected {expected} facets")]
    FacetCount { path: PathBuf, expected: usize },
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> StoreError + '_ {
    move |source| StoreError::Io { path: path.to_path_buf(), source }
}

/// `$COXDEFORM_CATALOG_DIR`, falling back to the catalog shipped with the
/// crate.
pub fn catalog_dir() -> PathBuf {
    match env::var_os(CATALOG_ENV) {
        Some(dir) if !dir.is_empty() => PathBuf::from(dir),
        _ => Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join("catalog"),
    }
}

pub fn entry_file_name(p: &CombinatorialPolytope) -> String {
    format!("{}.poly", p.canonical_code())
}

/// Writes one file per polytope into `dir`, creating it if needed.
pub fn write_entries(dir: &Path, polytopes: &[CombinatorialPolytope]) -> Result<Vec<PathBuf>, StoreError> {
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let mut written = Vec::with_capacity(polytopes.len());
    for p in polytopes {
        let path = dir.join(entry_file_name(p));
        fs::write(&path, serialize_combinatorial(&p.canonical_code(), p)).map_err(io_err(&path))?;
        written.push(path);
    }
    Ok(written)
}

/// Entries for `facets` from `<root>/f<facets>/`, sorted by file name, or
/// `None` when that directory does not exist.
pub fn load_entries(root: &Path, facets: usize) -> Result<Option<Vec<CombinatorialPolytope>>, StoreError> {
    let dir = root.join(format!("f{facets}"));
    if !dir.is_dir() {
        return Ok(None);
    }
    let mut paths = Vec::new();
    for entry in fs::read_dir(&dir).map_err(io_err(&dir))? {
        let path = entry.map_err(io_err(&dir))?.path();
        if path.extension().is_some_and(|e| e == "poly") {
            paths.push(path);
        }
    }
    paths.sort();
    let mut out = Vec::with_capacity(paths.len());
    for path in paths {
        let text = fs::read_to_string(&path).map_err(io_err(&path))?;
        let file = parse_polytope(&text).map_err(|source| StoreError::Format { path: path.clone(), source })?;
        let p = file.polytope.polytope().clone();
        if p.facet_count() != facets {
            return Err(StoreError::FacetCount { path, expected: facets });
        }
        let code = p.canonical_code();
        if path.file_stem().and_then(|s| s.to_str()) != Some(code.as_str()) {
            return Err(StoreError::CodeMismatch { path, code });
        }
        out.push(p);
    }
    Ok(Some(out))
}
