//! Input loading and all-or-nothing output writing.

use std::fs;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use procmix::graph::{read_edge_list, Graph};
use sha2::{Digest, Sha256};

pub fn load_graph(path: &Path) -> Result<Graph> {
    let file = fs::File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let loaded = read_edge_list(BufReader::new(file))
        .with_context(|| format!("reading edge list {}", path.display()))?;
    Ok(loaded.graph)
}

/// Graph plus the hex SHA-256 of the file it was read from.
pub fn load_graph_with_digest(path: &Path) -> Result<(Graph, String)> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let digest = format!("{:x}", Sha256::digest(&bytes));
    let loaded = read_edge_list(bytes.as_slice())
        .with_context(|| format!("reading edge list {}", path.display()))?;
    Ok((loaded.graph, digest))
}

/// Files to be written together. Nothing is written until [`commit`];
/// if any write fails, the files already written are removed.
///
/// [`commit`]: OutputSet::commit
#[derive(Debug, Default)]
pub struct OutputSet {
    files: Vec<(PathBuf, Vec<u8>)>,
}

impl OutputSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, path: impl Into<PathBuf>, contents: impl Into<Vec<u8>>) {
        self.files.push((path.into(), contents.into()));
    }

    pub fn commit(self) -> Result<Vec<PathBuf>> {
        let mut written = Vec::with_capacity(self.files.len());
        for (path, contents) in self.files {
            if let Err(e) = fs::write(&path, &contents) {
                for done in &written {
                    let _ = fs::remove_file(done);
                }
                let _ = fs::remove_file(&path);
                return Err(e).with_context(|| format!("writing {}", path.display()));
            }
            written.push(path);
        }
        Ok(written)
    }
}
