//! Loading algebras and posets named on the command line.

use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};

use quasivar::brouwer::{chain, k_poset, p6, DominatedPoset, Poset};
use quasivar::demorgan::catalog;
use quasivar::format::{algebra_from_json, algebra_to_json, poset_from_json, poset_to_json};
use quasivar::FiniteAlgebra;

/// Where an input came from, with the SHA-256 of the bytes read (for
/// built-ins, of their JSON serialization).
#[derive(Clone, Debug, Serialize)]
pub struct Input {
    pub source: String,
    pub sha256: String,
}

fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn read(path: &str) -> Result<Option<String>, String> {
    if !Path::new(path).is_file() {
        return Ok(None);
    }
    std::fs::read_to_string(path).map(Some).map_err(|e| format!("{path}: {e}"))
}

/// A JSON file, or else a catalog name (`two`, `s3`, `c4`, `d4`,
/// `x-trivial`, …).
pub fn algebra(spec: &str, inputs: &mut Vec<Input>) -> Result<FiniteAlgebra, String> {
    if let Some(text) = read(spec)? {
        let a = algebra_from_json(&text).map_err(|e| format!("{spec}: {e}"))?;
        inputs.push(Input {
            source: spec.to_string(),
            sha256: digest(text.as_bytes()),
        });
        return Ok(a);
    }
    let a = catalog(spec).map_err(|_| format!("`{spec}` is neither a file nor a catalog name"))?;
    inputs.push(Input {
        source: format!("catalog:{spec}"),
        sha256: digest(algebra_to_json(&a).as_bytes()),
    });
    Ok(a)
}

fn builtin_poset(name: &str) -> Option<DominatedPoset> {
    let lower = name.to_ascii_lowercase();
    if lower == "p6" {
        return Some(p6());
    }
    let number = |prefix: &str| lower.strip_prefix(prefix)?.parse::<usize>().ok();
    if let Some(n) = number("chain") {
        return chain(n).ok();
    }
    k_poset(number("k")?).ok()
}

/// A poset JSON file, or one of `p6`, `k<n>`, `chain<n>`.
pub fn poset(spec: &str, inputs: &mut Vec<Input>) -> Result<Poset, String> {
    if let Some(text) = read(spec)? {
        let p = poset_from_json(&text).map_err(|e| format!("{spec}: {e}"))?;
        inputs.push(Input {
            source: spec.to_string(),
            sha256: digest(text.as_bytes()),
        });
        return Ok(p);
    }
    let p = builtin_poset(spec)
        .ok_or_else(|| format!("`{spec}` is neither a file nor a built-in poset (p6, k<n>, chain<n>)"))?
        .into_poset();
    inputs.push(Input {
        source: format!("builtin:{spec}"),
        sha256: digest(poset_to_json(&p).as_bytes()),
    });
    Ok(p)
}

pub fn dominated(spec: &str, inputs: &mut Vec<Input>) -> Result<DominatedPoset, String> {
    DominatedPoset::new(poset(spec, inputs)?).map_err(|e| format!("{spec}: {e}"))
}

/// Quasi-equation text given inline, or `@file` for the file's contents.
pub fn text(arg: &str, inputs: &mut Vec<Input>) -> Result<String, String> {
    let (source, body) = match arg.strip_prefix('@') {
        Some(path) => (path.to_string(), std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?),
        None => ("inline".to_string(), arg.to_string()),
    };
    inputs.push(Input {
        source,
        sha256: digest(body.as_bytes()),
    });
    Ok(body)
}
