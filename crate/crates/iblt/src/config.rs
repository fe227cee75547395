//! Scheme configuration files (JSON) and the binary table file format.
//!
//! A table file is self-contained: magic bytes, the embedded config that
//! built it, then the canonical bit-packed cells, so `apply` and `list`
//! need no side channel.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::field::Field;
use crate::listing::AlgorithmId;
use crate::matrices::{Construction, Mapping};
use crate::schemes::{Family, Scheme, Table};

pub const TABLE_MAGIC: &[u8; 5] = b"IBLT1";

/// On-disk scheme description. Unknown fields are rejected; round-trips
/// losslessly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeConfigFile {
    pub version: u32,
    pub family: String,
    pub construction: String,
    pub n: u64,
    pub d: u32,
    #[serde(default)]
    pub k: Option<u32>,
    #[serde(default)]
    pub r: Option<u32>,
    #[serde(default)]
    pub counter_bits: Option<u32>,
    #[serde(default)]
    pub poly: Option<u64>,
}

impl SchemeConfigFile {
    pub fn from_json(s: &str) -> Result<SchemeConfigFile, Error> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn load(path: &Path) -> Result<SchemeConfigFile, Error> {
        SchemeConfigFile::from_json(&fs::read_to_string(path)?)
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidConfig(msg.into())
}

fn field_for(cfg: &SchemeConfigFile, r: u32) -> Result<Field, Error> {
    match cfg.poly {
        Some(p) => Field::with_poly(r, p),
        None => Field::new(r),
    }
}

/// The degree r to use, either explicit or derived so that `n = derive(r)`.
fn resolve_degree(cfg: &SchemeConfigFile, derive: impl Fn(u32) -> u64) -> Result<u32, Error> {
    if let Some(r) = cfg.r {
        if derive(r) != cfg.n {
            return Err(invalid(format!(
                "n={} does not match r={} for construction {}",
                cfg.n, r, cfg.construction
            )));
        }
        return Ok(r);
    }
    (1..=63).find(|&r| derive(r) == cfg.n).ok_or_else(|| {
        invalid(format!(
            "no degree r gives n={} for {}",
            cfg.n, cfg.construction
        ))
    })
}

/// Instantiates the scheme a config describes.
pub fn build_scheme(cfg: &SchemeConfigFile) -> Result<Scheme, Error> {
    if cfg.version != 1 {
        return Err(invalid(format!(
            "unsupported config version {}",
            cfg.version
        )));
    }
    let family = Family::parse(&cfg.family)
        .ok_or_else(|| invalid(format!("unknown family {:?}", cfg.family)))?;
    let construction = Construction::parse(&cfg.construction)
        .ok_or_else(|| invalid(format!("unknown construction {:?}", cfg.construction)))?;

    let mapping = match construction {
        Construction::Example2 => {
            if cfg.n != 6 {
                return Err(invalid("example2 is fixed at n=6"));
            }
            Mapping::example2()
        }
        Construction::AllColsPlusOnes => {
            let r = resolve_degree(cfg, |r| 1u64.checked_shl(r).unwrap_or(0))?;
            Mapping::all_columns_plus_ones(r)?
        }
        Construction::ConstWtPlusOnes => {
            let k = cfg.k.ok_or_else(|| invalid("const-wt+1 needs k"))?;
            Mapping::constant_weight_plus_ones(cfg.n, k)?
        }
        Construction::BchBinPlusOnes => {
            let r = resolve_degree(cfg, |r| (1u64 << r.min(63)) - 1)?;
            Mapping::bch_binary_plus_ones_from(field_for(cfg, r)?)?
        }
        Construction::BchGf => {
            let r = resolve_degree(cfg, |r| (1u64 << r.min(63)) - 1)?;
            let base = Mapping::bch_gf(field_for(cfg, r)?, cfg.d)?;
            match cfg.k {
                None => base,
                Some(k) if k == cfg.d => base,
                Some(k) if k > cfg.d => base.pad_redundant(k - cfg.d)?,
                Some(k) => {
                    return Err(invalid(format!(
                        "bch-gf needs k >= d, got k={k}, d={}",
                        cfg.d
                    )))
                }
            }
        }
        Construction::BdDiag => {
            let r = cfg.r.ok_or_else(|| invalid("bd-diag needs r"))?;
            if cfg.k.is_some_and(|k| k != 1) {
                return Err(invalid("bd-diag has column weight 1"));
            }
            Mapping::bd_diag(field_for(cfg, r)?, cfg.d, cfg.n)?
        }
        Construction::H2 => {
            let r = cfg.r.ok_or_else(|| invalid("h2 needs r"))?;
            if cfg.k.is_some_and(|k| k != 2) {
                return Err(invalid("h2 has column weight 2"));
            }
            Mapping::block_h2(field_for(cfg, r)?, cfg.d, cfg.n)?
        }
        Construction::H2Hat => {
            let r = cfg.r.ok_or_else(|| invalid("h2hat needs r"))?;
            if cfg.d != 4 {
                return Err(invalid("h2hat is fixed at d=4"));
            }
            if cfg.k.is_some_and(|k| k != 2) {
                return Err(invalid("h2hat has column weight 2"));
            }
            Mapping::block_h2_hat(field_for(cfg, r)?, cfg.n)?
        }
        Construction::Custom => return Err(invalid("custom matrices cannot be configured")),
    };

    let counter_bits = match family {
        Family::General => match cfg.counter_bits {
            None | Some(0) => 0,
            Some(c) => return Err(invalid(format!("general family has no counters, got {c}"))),
        },
        Family::Standard => cfg
            .counter_bits
            .unwrap_or_else(|| 64 - (cfg.n - 1).leading_zeros().min(63)),
        Family::StandardIndel => cfg
            .counter_bits
            .ok_or_else(|| invalid("standard-indel configs must pin counter_bits"))?,
    };
    Scheme::new(family, mapping, cfg.d, counter_bits)
}

/// The listing algorithm a construction was designed around.
pub fn default_algorithm(scheme: &Scheme) -> AlgorithmId {
    match scheme.construction() {
        Construction::Example2 | Construction::Custom => AlgorithmId::Peel,
        Construction::AllColsPlusOnes | Construction::ConstWtPlusOnes => {
            if scheme.counter_bits() == 1 {
                AlgorithmId::D3OneBit
            } else {
                AlgorithmId::ExtendedPeel
            }
        }
        Construction::BchBinPlusOnes => AlgorithmId::ExtendedPeel,
        Construction::BchGf => AlgorithmId::Pgz,
        Construction::BdDiag => AlgorithmId::K1Bd,
        Construction::H2 | Construction::H2Hat => AlgorithmId::Oracle,
    }
}

/// Writes magic, embedded config, and the canonical cell bytes.
pub fn write_table_file(
    path: &Path,
    cfg: &SchemeConfigFile,
    scheme: &Scheme,
    table: &Table,
) -> Result<(), Error> {
    let cfg_json = serde_json::to_string(cfg)?;
    let mut out = Vec::new();
    out.extend_from_slice(TABLE_MAGIC);
    out.extend_from_slice(&(cfg_json.len() as u32).to_le_bytes());
    out.extend_from_slice(cfg_json.as_bytes());
    out.extend_from_slice(&scheme.canonical_bytes(table));
    fs::write(path, out)?;
    Ok(())
}

/// Reads a table file back into its config, scheme and table.
pub fn read_table_file(path: &Path) -> Result<(SchemeConfigFile, Scheme, Table), Error> {
    let bytes = fs::read(path)?;
    let rest = bytes
        .strip_prefix(TABLE_MAGIC.as_slice())
        .ok_or_else(|| Error::BadTableFile("missing magic bytes".into()))?;
    if rest.len() < 4 {
        return Err(Error::BadTableFile("truncated header".into()));
    }
    let (len_bytes, rest) = rest.split_at(4);
    let cfg_len = u32::from_le_bytes(len_bytes.try_into().unwrap()) as usize;
    if rest.len() < cfg_len {
        return Err(Error::BadTableFile("truncated config".into()));
    }
    let (cfg_bytes, cell_bytes) = rest.split_at(cfg_len);
    let cfg: SchemeConfigFile = serde_json::from_slice(cfg_bytes)?;
    let scheme = build_scheme(&cfg)?;
    let table = scheme.table_from_bytes(cell_bytes)?;
    Ok((cfg, scheme, table))
}
