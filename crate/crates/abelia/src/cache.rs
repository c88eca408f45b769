//! Binary cache of the coefficient table: the 7 bytes `ABELIA1`, the count `N`
//! as a little-endian `u64`, then `d_1..d_N` as little-endian `u32`.

use std::env;
use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use abelia_core::CoefficientTable;

use crate::error::{AppError, AppResult};
use crate::parallel;

pub const MAGIC: &[u8; 7] = b"ABELIA1";
pub const CACHE_DIR_VAR: &str = "ABELIA_CACHE_DIR";
const CACHE_FILE: &str = "coefficients.bin";

pub fn write_table<W: Write>(mut w: W, table: &CoefficientTable) -> AppResult<()> {
    w.write_all(MAGIC)?;
    w.write_all(&table.limit().to_le_bytes())?;
    for &d in table.values() {
        w.write_all(&d.to_le_bytes())?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_table<R: Read>(mut r: R) -> AppResult<CoefficientTable> {
    let mut magic = [0u8; 7];
    r.read_exact(&mut magic).map_err(|_| AppError::Cache("truncated header".into()))?;
    if &magic != MAGIC {
        return Err(AppError::Cache("wrong magic".into()));
    }
    let mut len = [0u8; 8];
    r.read_exact(&mut len).map_err(|_| AppError::Cache("truncated header".into()))?;
    let n = u64::from_le_bytes(len);
    let bytes = n.checked_mul(4).ok_or_else(|| AppError::Cache("length overflow".into()))?;
    let mut raw = Vec::new();
    r.take(bytes).read_to_end(&mut raw)?;
    if raw.len() as u64 != bytes {
        return Err(AppError::Cache(format!("expected {n} values, found {}", raw.len() / 4)));
    }
    let values = raw.chunks_exact(4).map(|c| u32::from_le_bytes([c[0], c[1], c[2], c[3]])).collect();
    Ok(CoefficientTable::from_values(values))
}

pub fn save(path: &Path, table: &CoefficientTable) -> AppResult<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    // write then rename so readers never see a partial file
    let tmp = path.with_extension("partial");
    write_table(BufWriter::new(File::create(&tmp)?), table)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

pub fn load(path: &Path) -> AppResult<CoefficientTable> {
    read_table(BufReader::new(File::open(path)?))
}

/// `$ABELIA_CACHE_DIR/coefficients.bin`, if the variable is set.
pub fn default_path() -> Option<PathBuf> {
    env::var_os(CACHE_DIR_VAR).filter(|v| !v.is_empty()).map(|d| PathBuf::from(d).join(CACHE_FILE))
}

/// Coefficients `d_1..=d_limit`, read from `path` when it holds enough of
/// them, otherwise sieved and (re)written there.
pub fn load_or_sieve(path: Option<&Path>, limit: u64, budget: u64, threads: usize) -> AppResult<CoefficientTable> {
    if let Some(p) = path.filter(|p| p.exists()) {
        match load(p) {
            Ok(t) if t.limit() >= limit => {
                log::info!("coefficients up to {limit} read from {}", p.display());
                let mut values = t.values().to_vec();
                values.truncate(limit as usize);
                return Ok(CoefficientTable::from_values(values));
            }
            Ok(t) => log::info!("cache {} covers only {}; sieving", p.display(), t.limit()),
            Err(e) => log::warn!("ignoring cache {}: {e}", p.display()),
        }
    }
    let table = parallel::sieve_coefficients(limit, budget, threads)?;
    if let Some(p) = path {
        save(p, &table)?;
    }
    Ok(table)
}
