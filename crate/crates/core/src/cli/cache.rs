//! Catalog persistence: complete classifications as versioned JSON, one file per context.

use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{QcaError, Result};
use crate::ffrep::{Catalog, Fe, Rep};
use crate::quiver::DimVec;

pub const CACHE_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    context_hash: String,
    dims: Vec<CachedDim>,
}

#[derive(Serialize, Deserialize)]
struct CachedDim {
    dim: DimVec,
    classes: Vec<CachedClass>,
}

#[derive(Serialize, Deserialize)]
struct CachedClass {
    code: Vec<Fe>,
    orbit: u64,
    aut: u64,
}

pub fn cache_path(dir: &Path, cat: &Catalog) -> PathBuf {
    dir.join(format!("catalog-{}.json", cat.context().hash()))
}

fn io(path: &Path, e: impl std::fmt::Display) -> QcaError {
    QcaError::Io(format!("{}: {e}", path.display()))
}

/// Installs every dimension stored for this context. Returns whether a file was found.
pub fn load_cache(cat: &Catalog, dir: &Path) -> Result<bool> {
    let path = cache_path(dir, cat);
    if !path.exists() {
        return Ok(false);
    }
    let text = std::fs::read_to_string(&path).map_err(|e| io(&path, e))?;
    let file: CacheFile = serde_json::from_str(&text).map_err(|e| io(&path, e))?;
    if file.version != CACHE_VERSION {
        return Err(io(&path, format!("cache version {} (expected {CACHE_VERSION})", file.version)));
    }
    if file.context_hash != cat.context().hash() {
        return Err(io(&path, "cache belongs to a different context"));
    }
    let q = BigUint::from(cat.q());
    for d in file.dims {
        let dim = d.dim.as_usize();
        let entries = cat.algebra().entry_count(&dim);
        let gl = cat.gl_order(&d.dim);
        let mut total = BigUint::from(0u32);
        let mut reps = Vec::new();
        for c in d.classes {
            if c.code.len() != entries || c.code.iter().any(|&x| u64::from(x) >= cat.q()) {
                return Err(io(&path, format!("malformed class in dimension {}", d.dim)));
            }
            if BigUint::from(c.orbit) * BigUint::from(c.aut) != gl {
                return Err(io(&path, format!("orbit and automorphism counts disagree in dimension {}", d.dim)));
            }
            total += c.orbit;
            reps.push((Rep::from_code(cat.algebra(), &dim, &c.code), c.orbit, c.aut));
        }
        if total != num_traits::pow(q.clone(), entries) {
            return Err(io(&path, format!("orbits do not cover dimension {}", d.dim)));
        }
        cat.install_complete(d.dim, reps)?;
    }
    Ok(true)
}

/// Writes every completely classified dimension.
pub fn save_cache(cat: &Catalog, dir: &Path) -> Result<PathBuf> {
    std::fs::create_dir_all(dir).map_err(|e| io(dir, e))?;
    let mut dims: Vec<CachedDim> = Vec::new();
    for (rec, complete) in cat.snapshot() {
        if !complete {
            continue;
        }
        let class = CachedClass {
            code: rec.rep.code(),
            orbit: rec.orbit_size.unwrap_or(0),
            aut: cat.aut_order(&rec.id)?,
        };
        match dims.last_mut() {
            Some(last) if last.dim == rec.id.dim => last.classes.push(class),
            _ => dims.push(CachedDim {
                dim: rec.id.dim.clone(),
                classes: vec![class],
            }),
        }
    }
    let file = CacheFile {
        version: CACHE_VERSION,
        context_hash: cat.context().hash(),
        dims,
    };
    let path = cache_path(dir, cat);
    let tmp = path.with_extension("json.tmp");
    std::fs::write(&tmp, serde_json::to_string(&file)?).map_err(|e| io(&tmp, e))?;
    std::fs::rename(&tmp, &path).map_err(|e| io(&path, e))?;
    Ok(path)
}
