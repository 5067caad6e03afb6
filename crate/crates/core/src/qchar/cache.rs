//! Shift-equivariant cache of KR q-characters.
//!
//! Only the base spectral parameter `q^0` is stored; other parameters are
//! obtained by shifting. With a cache directory configured, each entry is
//! also persisted as one JSON document per `(algebra, node, level)`,
//! written to a temporary file and renamed into place.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use log::{debug, warn};
use once_cell::sync::OnceCell;
use parking_lot::RwLock;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::liealg::{cartan_for, CartanType};

use super::character::QCharacter;
use super::fm::{fm_qcharacter, DEFAULT_TERM_BUDGET};
use super::monomial::{kr_highest_monomial, YMonomial};

/// Environment variable naming the on-disk cache directory.
pub const CACHE_DIR_ENV: &str = "KR_CACHE_DIR";

type Key = (CartanType, usize, u32);

/// On-disk form: `{"algebra":"A2","node":1,"level":2,"monomials":[{"exps":[[1,0,1],[1,2,1]],"mult":1},...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CacheFile {
    pub algebra: CartanType,
    pub node: usize,
    pub level: u32,
    pub monomials: Vec<CacheTerm>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CacheTerm {
    pub exps: YMonomial,
    pub mult: i64,
}

impl CacheFile {
    pub fn from_qcharacter(algebra: CartanType, node: usize, level: u32, qc: &QCharacter) -> Self {
        CacheFile {
            algebra,
            node,
            level,
            monomials: qc
                .sorted_terms()
                .into_iter()
                .map(|(m, k)| CacheTerm {
                    exps: m.clone(),
                    mult: k,
                })
                .collect(),
        }
    }
}

pub struct QCharCache {
    dir: Option<PathBuf>,
    budget: AtomicUsize,
    mem: RwLock<HashMap<Key, Arc<QCharacter>>>,
}

static GLOBAL: OnceCell<QCharCache> = OnceCell::new();

impl QCharCache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        QCharCache {
            dir,
            budget: AtomicUsize::new(DEFAULT_TERM_BUDGET),
            mem: RwLock::new(HashMap::new()),
        }
    }

    /// The process-wide cache. Its directory comes from `KR_CACHE_DIR`
    /// unless [`QCharCache::init_global`] ran first.
    pub fn global() -> &'static QCharCache {
        GLOBAL.get_or_init(|| QCharCache::new(std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from)))
    }

    /// Configures the global cache; fails if it is already in use.
    pub fn init_global(dir: Option<PathBuf>, budget: usize) -> Result<()> {
        let cache = QCharCache::new(dir);
        cache.set_budget(budget);
        GLOBAL
            .set(cache)
            .map_err(|_| Error::Cache("global cache already initialised".into()))
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn budget(&self) -> usize {
        self.budget.load(Ordering::Relaxed)
    }

    pub fn set_budget(&self, budget: usize) {
        self.budget.store(budget, Ordering::Relaxed);
    }

    fn file_path(&self, key: &Key) -> Option<PathBuf> {
        self.dir
            .as_ref()
            .map(|d| d.join(format!("{}_node{}_level{}.json", key.0, key.1, key.2)))
    }

    /// q-character of `W^{(i)}_{m, q^c}`.
    pub fn kr_qcharacter(
        &self,
        algebra: CartanType,
        i: usize,
        m: u32,
        c: i32,
    ) -> Result<QCharacter> {
        let base = self.kr_base(algebra, i, m)?;
        base.shifted(c)
    }

    /// Shared q-character of `W^{(i)}_{m, q^0}`.
    pub fn kr_base(&self, algebra: CartanType, i: usize, m: u32) -> Result<Arc<QCharacter>> {
        let cd = cartan_for(algebra)?;
        cd.check_node(i)?;
        if m == 0 {
            return Ok(Arc::new(QCharacter::trivial(algebra)));
        }
        let key = (algebra, i, m);
        if let Some(qc) = self.mem.read().get(&key) {
            return Ok(qc.clone());
        }
        let qc = match self.load(&key) {
            Some(qc) => qc,
            None => {
                debug!("computing q-character of W({i})_{m} for {algebra}");
                let highest = kr_highest_monomial(&cd, i, m, 0)?;
                let qc = fm_qcharacter(&cd, &highest, self.budget())?;
                self.store(&key, &qc)?;
                qc
            }
        };
        let qc = Arc::new(qc);
        self.mem.write().insert(key, qc.clone());
        Ok(qc)
    }

    fn load(&self, key: &Key) -> Option<QCharacter> {
        let path = self.file_path(key)?;
        let text = fs::read_to_string(&path).ok()?;
        match Self::parse(key, &text) {
            Ok(qc) => Some(qc),
            Err(e) => {
                warn!("ignoring unreadable cache file {}: {e}", path.display());
                None
            }
        }
    }

    fn parse(key: &Key, text: &str) -> Result<QCharacter> {
        let file: CacheFile = serde_json::from_str(text)?;
        if (file.algebra, file.node, file.level) != *key {
            return Err(Error::Cache(format!(
                "file describes {} node {} level {}",
                file.algebra, file.node, file.level
            )));
        }
        let cd = cartan_for(key.0)?;
        let mut terms = HashMap::with_capacity(file.monomials.len());
        for t in file.monomials {
            if t.exps.factors().any(|(n, _, _)| n > cd.rank()) {
                return Err(Error::Cache(format!(
                    "monomial {} uses a missing node",
                    t.exps
                )));
            }
            *terms.entry(t.exps).or_insert(0) += t.mult;
        }
        let highest = kr_highest_monomial(&cd, key.1, key.2, 0)?;
        QCharacter::new(key.0, highest, terms)
    }

    fn store(&self, key: &Key, qc: &QCharacter) -> Result<()> {
        let Some(path) = self.file_path(key) else {
            return Ok(());
        };
        let dir = path.parent().expect("cache file has a parent");
        fs::create_dir_all(dir)?;
        let file = CacheFile::from_qcharacter(key.0, key.1, key.2, qc);
        let tmp = dir.join(format!(
            ".{}.{}.tmp",
            path.file_name().and_then(|s| s.to_str()).unwrap_or("entry"),
            std::process::id()
        ));
        fs::write(&tmp, serde_json::to_vec(&file)?)?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }
}

/// `W^{(i)}_{m,q^c}` through the global cache.
pub fn kr_qcharacter(algebra: CartanType, i: usize, m: u32, c: i32) -> Result<QCharacter> {
    QCharCache::global().kr_qcharacter(algebra, i, m, c)
}
