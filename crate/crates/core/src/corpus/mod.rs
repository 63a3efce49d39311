//! Structure files, the two reference examples, and parametric builders.

mod builders;
mod format;

pub use builders::{
    build_krasner_quotient, build_zk_ring, k24, k33, reference_examples, standard_corpus,
    zk_name,
};
pub use format::{parse_structure, serialize_structure, FormatError};

use std::path::{Path, PathBuf};

use crate::error::Result;
use crate::structure::KrasnerStructure;

/// Read and parse one structure file.
pub fn load_file(path: &Path) -> Result<KrasnerStructure> {
    let text = std::fs::read_to_string(path).map_err(|e| FormatError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_structure(&text)
}

/// Expand a list of files and directories into structure files: directories
/// contribute their `*.json` entries in name order.
pub fn collect_paths(inputs: &[PathBuf]) -> Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    for input in inputs {
        if input.is_dir() {
            let entries = std::fs::read_dir(input).map_err(|e| FormatError::Io {
                path: input.display().to_string(),
                message: e.to_string(),
            })?;
            let mut files: Vec<PathBuf> = entries
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "json"))
                .collect();
            files.sort();
            out.extend(files);
        } else {
            out.push(input.clone());
        }
    }
    Ok(out)
}
