//! Content-addressed cache of computed O-space bases. A cached basis is
//! spot-checked before use: five stored circ products must reduce to zero
//! against the loaded rows; on any mismatch the basis is rebuilt.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::fock::{parse_monomial, State};
use crate::linalg::RowSpace;
use crate::rat::{rat_parse, rat_text};
use crate::zhu::{ModuleBasis, ModuleTag, ZhuContext};
use num_traits::Zero;

#[derive(Serialize, Deserialize)]
struct CachedBasis {
    version: u32,
    d: u8,
    tag: ModuleTag,
    w_doubled: i64,
    /// Rows as sparse (column, coefficient-text) pairs.
    rows: Vec<Vec<(usize, String)>>,
    /// Spot-check inputs: (a, u) monomial texts with circ(a,u) != 0.
    samples: Vec<(String, String)>,
}

const CACHE_VERSION: u32 = 1;

fn cache_key(d: u8, tag: ModuleTag, w_doubled: i64) -> String {
    let meta = format!("obasis;v={CACHE_VERSION};d={d};tag={};w={w_doubled}", tag.name());
    let mut h = Sha256::new();
    h.update(meta.as_bytes());
    hex(&h.finalize())
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn cache_path(dir: &Path, d: u8, tag: ModuleTag, w_doubled: i64) -> PathBuf {
    dir.join(format!("obasis-{}.json", cache_key(d, tag, w_doubled)))
}

/// Result of a cache lookup, with provenance for the report.
pub struct LoadedBasis {
    pub rows: RowSpace,
    pub from_cache: bool,
    pub rebuilt: bool,
}

fn try_load(
    cx: &ZhuContext,
    basis: &ModuleBasis,
    path: &Path,
    tag: ModuleTag,
) -> Option<RowSpace> {
    let text = std::fs::read_to_string(path).ok()?;
    let cached: CachedBasis = serde_json::from_str(&text).ok()?;
    if cached.version != CACHE_VERSION
        || cached.d != cx.engine.d
        || cached.tag != tag
        || cached.w_doubled != cx.w_doubled
    {
        return None;
    }
    let mut rows = RowSpace::new(basis.dim());
    for r in &cached.rows {
        let mut v = vec![crate::rat::Rat::zero(); basis.dim()];
        for (i, c) in r {
            if *i >= basis.dim() {
                return None;
            }
            v[*i] = rat_parse(c)?;
        }
        rows.insert(&v);
    }
    // the stored rows must already be reduced: rank equals row count
    if rows.rank() != cached.rows.len() {
        return None;
    }
    // spot-check: recompute the sampled circ products and reduce them
    for (a_text, u_text) in cached.samples.iter() {
        let a = State::monomial(parse_monomial(a_text).ok()?);
        let u = State::monomial(parse_monomial(u_text).ok()?);
        let p = cx.circ(&a, &u);
        let flat = basis.flatten(&p)?;
        if !rows.contains(&flat) {
            return None;
        }
    }
    Some(rows)
}

fn store(
    cx: &ZhuContext,
    basis: &ModuleBasis,
    rows: &RowSpace,
    path: &Path,
    tag: ModuleTag,
) -> std::io::Result<()> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)?;
    }
    let samples = cx
        .o_space_samples(basis, 5)
        .into_iter()
        .map(|(a, u)| (a.to_string(), u.to_string()))
        .collect();
    let cached = CachedBasis {
        version: CACHE_VERSION,
        d: cx.engine.d,
        tag,
        w_doubled: cx.w_doubled,
        rows: rows
            .rows()
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| (i, rat_text(c)))
                    .collect()
            })
            .collect(),
        samples,
    };
    std::fs::write(path, serde_json::to_string(&cached).unwrap())
}

/// Load the O-space row basis for (d, tag, W) from the cache, verifying it
/// by spot-check; rebuild (and overwrite) on miss or corruption.
pub fn load_or_build_o_basis(
    cx: &ZhuContext,
    tag: ModuleTag,
    cache_dir: &Path,
) -> LoadedBasis {
    let basis = ModuleBasis::build(cx.engine.d, tag, cx.w_doubled);
    let path = cache_path(cache_dir, cx.engine.d, tag, cx.w_doubled);
    let existed = path.exists();
    if let Some(rows) = try_load(cx, &basis, &path, tag) {
        return LoadedBasis {
            rows,
            from_cache: true,
            rebuilt: false,
        };
    }
    let rows = cx.o_space_rows(&basis);
    let _ = store(cx, &basis, &rows, &path, tag);
    LoadedBasis {
        rows,
        from_cache: false,
        rebuilt: existed,
    }
}
