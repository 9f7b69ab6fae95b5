//! On-disk resolution cache: `<dir>/v1/<sha256>.json`, keyed by the ring, the
//! presented module and the minimization flag.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::ext::Resolution;
use crate::homology::{ChainComplex, Kind, Presentation};
use crate::polyring::{FreeModule, ModMatrix, Monomial, Poly, Ring};
use crate::table::ResolutionStore;

pub const LAYOUT: &str = "v1";

/// Polynomial as (exponents, coefficient) pairs.
type Terms = Vec<(Vec<u32>, u32)>;

fn encode_poly(ring: &Ring, f: &Poly) -> Terms {
    f.terms().iter().map(|(m, c)| (m.exponents(ring.nvars()), *c)).collect()
}

fn decode_poly(ring: &Ring, t: &Terms) -> Result<Poly> {
    if t.iter().any(|(e, c)| e.len() != ring.nvars() || *c >= ring.p() || e.iter().any(|&x| x > u16::MAX as u32)) {
        return Err(Error::Cache("cached polynomial does not fit the ring".into()));
    }
    Ok(Poly::from_terms(ring, t.iter().map(|(e, c)| (Monomial::from_exponents(e), *c)).collect()))
}

fn encode_matrix(ring: &Ring, m: &ModMatrix) -> Vec<Vec<Terms>> {
    m.columns().iter().map(|c| c.iter().map(|f| encode_poly(ring, f)).collect()).collect()
}

#[derive(Serialize)]
struct Key<'a> {
    layout: &'a str,
    p: u32,
    nvars: usize,
    order: String,
    minimize: bool,
    generators: &'a [i64],
    relation_degrees: &'a [i64],
    relations: Vec<Vec<Terms>>,
}

#[derive(Serialize, Deserialize)]
struct Stored {
    key: String,
    modules: Vec<Vec<i64>>,
    maps: Vec<Vec<Vec<Terms>>>,
}

pub fn cache_key(ring: &Ring, pres: &Presentation, minimize: bool) -> String {
    let key = Key {
        layout: LAYOUT,
        p: ring.p(),
        nvars: ring.nvars(),
        order: format!("{:?}", ring.order()),
        minimize,
        generators: pres.generators().degrees(),
        relation_degrees: pres.relations().dom().degrees(),
        relations: encode_matrix(ring, pres.relations()),
    };
    let text = serde_json::to_string(&key).expect("key serializes");
    hex::encode(Sha256::digest(text.as_bytes()))
}

#[derive(Debug)]
pub struct DiskCache {
    dir: PathBuf,
    hits: AtomicUsize,
    writes: AtomicUsize,
}

impl DiskCache {
    pub fn new(root: &Path) -> Result<Self> {
        let dir = root.join(LAYOUT);
        fs::create_dir_all(&dir).map_err(|e| Error::Cache(format!("{}: {e}", dir.display())))?;
        Ok(DiskCache {
            dir,
            hits: AtomicUsize::new(0),
            writes: AtomicUsize::new(0),
        })
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    fn load(&self, ring: &Ring, key: &str, path: &Path) -> Result<Resolution> {
        let text = fs::read_to_string(path).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
        let stored: Stored = serde_json::from_str(&text).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
        if stored.key != key || stored.maps.len() + 1 != stored.modules.len() {
            return Err(Error::Cache(format!("{} does not hold this resolution", path.display())));
        }
        let modules: Vec<FreeModule> = stored.modules.into_iter().map(FreeModule::new).collect();
        let mut maps = Vec::new();
        for (t, cols) in stored.maps.iter().enumerate() {
            let cols = cols
                .iter()
                .map(|c| c.iter().map(|f| decode_poly(ring, f)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            maps.push(ModMatrix::new(modules[t + 1].clone(), modules[t].clone(), cols)?);
        }
        let c = ChainComplex::new(ring, Kind::Homological, modules, maps)?;
        Ok(Resolution::new(ring, c))
    }

    fn store(&self, ring: &Ring, key: &str, res: &Resolution) -> Result<()> {
        let c = res.complex();
        let stored = Stored {
            key: key.to_string(),
            modules: c.modules().iter().map(|m| m.degrees().to_vec()).collect(),
            maps: c.maps().iter().map(|m| encode_matrix(ring, m)).collect(),
        };
        let text = serde_json::to_string(&stored).map_err(|e| Error::Cache(e.to_string()))?;
        let path = self.path(key);
        let n = self.writes.fetch_add(1, Ordering::Relaxed);
        let tmp = self.dir.join(format!("{key}.{}.{n}.tmp", std::process::id()));
        fs::write(&tmp, text).map_err(|e| Error::Cache(format!("{}: {e}", tmp.display())))?;
        fs::rename(&tmp, &path).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))
    }
}

impl ResolutionStore for DiskCache {
    fn resolve(&self, ring: &Ring, pres: &Presentation, minimize: bool) -> Result<Resolution> {
        let key = cache_key(ring, pres, minimize);
        let path = self.path(&key);
        if path.exists() {
            let res = self.load(ring, &key, &path)?;
            self.hits.fetch_add(1, Ordering::Relaxed);
            return Ok(res);
        }
        let res = Resolution::compute(ring, pres, minimize)?;
        self.store(ring, &key, &res)?;
        Ok(res)
    }

    fn hits(&self) -> usize {
        self.hits.load(Ordering::Relaxed)
    }
}
