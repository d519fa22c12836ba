//! Run manifests: every artifact-producing command writes one alongside its
//! output so a run can be reproduced from the recorded flags and input
//! digests alone.

use std::fs;
use std::io;
use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Serialize)]
pub struct RunManifest {
    pub command: String,
    pub config: serde_json::Value,
    pub inputs: Vec<InputDigest>,
    pub seed: Option<u64>,
    pub version: String,
    pub outputs: Vec<String>,
}

impl RunManifest {
    pub fn new(command: &str, config: serde_json::Value, seed: Option<u64>) -> Self {
        RunManifest {
            command: command.to_string(),
            config,
            inputs: Vec::new(),
            seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            outputs: Vec::new(),
        }
    }

    pub fn add_input(&mut self, path: &Path) -> io::Result<()> {
        self.inputs.push(InputDigest {
            path: path.display().to_string(),
            sha256: digest_path(path)?,
        });
        Ok(())
    }

    pub fn add_output(&mut self, path: &Path) {
        self.outputs.push(path.display().to_string());
    }

    /// Writes the manifest next to `artifact` as `<artifact>.manifest.json`.
    pub fn write_beside(&self, artifact: &Path) -> io::Result<()> {
        let mut name = artifact.file_name().unwrap_or_default().to_os_string();
        name.push(".manifest.json");
        let path = artifact.with_file_name(name);
        fs::write(path, serde_json::to_string_pretty(self).expect("manifest serializes"))
    }
}

/// SHA-256 of a file's bytes. For a directory, hashes every regular file in
/// name order, folding each name and content into one digest.
pub fn digest_path(path: &Path) -> io::Result<String> {
    let mut hasher = Sha256::new();
    if path.is_dir() {
        let mut entries: Vec<_> = fs::read_dir(path)?
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .map(|e| e.path())
            .filter(|p| p.is_file())
            .collect();
        entries.sort();
        for p in entries {
            hasher.update(p.file_name().unwrap_or_default().as_encoded_bytes());
            hasher.update([0u8]);
            hasher.update(fs::read(&p)?);
        }
    } else {
        hasher.update(fs::read(path)?);
    }
    let out = hasher.finalize();
    let mut hex = String::with_capacity(64);
    for b in out {
        hex.push_str(&format!("{b:02x}"));
    }
    Ok(hex)
}
