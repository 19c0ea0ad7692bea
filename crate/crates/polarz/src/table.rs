//! Reliability tables and their CSV / JSON cache serializations.
//!
//! A [`ReliabilityTable`] is the complete list of bit-channel Bhattacharyya
//! parameters for one channel at one level `k`: row `i` (1-based) carries the
//! length-`k` bit pattern of bit-channel `i` and its value `z`. Two encodings
//! are supported:
//!
//! * **CSV** (`index,pattern,z,selected`) for downstream processing, written
//!   with LF line endings and shortest round-trip decimals, so parsing the
//!   `z` column back with `str::parse::<f64>` recovers the exact bits;
//! * **JSON cache** (`{schema_version, channel, level, rows, metadata}`) for
//!   storing pre-evaluated lookup tables. Serialization is byte-stable: the
//!   same table always produces the same file, and a loaded file is checked
//!   against [`CACHE_SCHEMA_VERSION`] and the table invariants before use.
//!
//! Loading depends on serde_json's `float_roundtrip` feature (enabled in
//! this crate's manifest): the default best-effort float parser can come
//! back one ulp off on 17-digit values, which would break the bit-for-bit
//! round-trip the cache promises.

use std::io::Write;

use polar_ce::BitPattern;
use polar_density::ChannelSpec;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

/// Version tag written into (and required of) every cache file.
pub const CACHE_SCHEMA_VERSION: u32 = 1;

/// One bit-channel entry: 1-based index, its bit pattern, and its
/// Bhattacharyya parameter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    /// Bit-channel index in `1..=2^level`.
    pub index: u64,
    /// The index's bit pattern (`0` = check, `1` = variable).
    pub pattern: String,
    /// Bhattacharyya parameter, in `[0, 1]`.
    pub z: f64,
}

/// Provenance recorded alongside a table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableMetadata {
    /// Arithmetic backend name (`"float"` or `"rational"`).
    pub backend: String,
    /// Merge tolerance the evolution ran with.
    pub merge_tol: f64,
    /// Interior atom budget the evolution ran with.
    pub atom_cap: u64,
    /// Version of the tool that produced the table.
    pub tool_version: String,
}

/// A complete, index-sorted reliability table for one channel and level.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReliabilityTable {
    /// The channel the table was computed for.
    pub channel: ChannelSpec,
    /// Polarization level `k`; the table has `2^k` rows.
    pub level: u32,
    /// One entry per bit-channel, sorted by index.
    pub rows: Vec<TableRow>,
    /// How the table was produced.
    pub metadata: TableMetadata,
}

/// On-disk cache envelope; identical to [`ReliabilityTable`] plus the
/// explicit schema version, with a fixed field order for byte stability.
#[derive(Serialize, Deserialize)]
struct CacheFile {
    schema_version: u32,
    channel: ChannelSpec,
    level: u32,
    rows: Vec<TableRow>,
    metadata: TableMetadata,
}

impl ReliabilityTable {
    /// Checks the structural invariants: a valid channel, exactly `2^level`
    /// rows, indices `1..=2^level` in order, each pattern consistent with its
    /// index, and every `z` in `[0, 1]`.
    pub fn validate(&self) -> Result<()> {
        self.channel.validate()?;
        let expected = 1u64
            .checked_shl(self.level)
            .ok_or_else(|| CliError::Usage(format!("level {} too large", self.level)))?;
        if self.rows.len() as u64 != expected {
            return Err(CliError::Usage(format!(
                "table at level {} must have {} rows, found {}",
                self.level,
                expected,
                self.rows.len()
            )));
        }
        for (position, row) in self.rows.iter().enumerate() {
            let index = position as u64 + 1;
            if row.index != index {
                return Err(CliError::Usage(format!(
                    "row {position} has index {}, expected {index}",
                    row.index
                )));
            }
            let pattern = BitPattern::from_index(self.level, index)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            if row.pattern != pattern.to_string() {
                return Err(CliError::Usage(format!(
                    "index {index} has pattern {:?}, expected {:?}",
                    row.pattern,
                    pattern.to_string()
                )));
            }
            if !(0.0..=1.0).contains(&row.z) {
                return Err(CliError::Usage(format!(
                    "index {index} has z = {} outside [0, 1]",
                    row.z
                )));
            }
        }
        Ok(())
    }

    /// Writes the table as CSV with header `index,pattern,z,selected`.
    ///
    /// `selected` is the ascending list of 1-based selected indices; matching
    /// rows get `true` in the last column. Numbers use the shortest decimal
    /// that round-trips, and records end with a single LF.
    pub fn write_csv<W: Write>(&self, selected: &[usize], out: W) -> Result<()> {
        debug_assert!(selected.windows(2).all(|w| w[0] < w[1]));
        let mut writer = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        writer.write_record(["index", "pattern", "z", "selected"])?;
        for row in &self.rows {
            let marked = selected.binary_search(&(row.index as usize)).is_ok();
            writer.write_record([
                row.index.to_string(),
                row.pattern.clone(),
                row.z.to_string(),
                marked.to_string(),
            ])?;
        }
        writer.flush().map_err(CliError::from)?;
        Ok(())
    }

    /// Serializes the table into the versioned cache format.
    ///
    /// The output is deterministic byte-for-byte: pretty-printed JSON with a
    /// fixed field order, shortest round-trip decimals, and a trailing LF.
    pub fn to_cache_json(&self) -> String {
        let file = CacheFile {
            schema_version: CACHE_SCHEMA_VERSION,
            channel: self.channel.clone(),
            level: self.level,
            rows: self.rows.clone(),
            metadata: self.metadata.clone(),
        };
        let mut text = serde_json::to_string_pretty(&file)
            .expect("a validated table serializes cleanly");
        text.push('\n');
        text
    }

    /// Parses and validates a cache file produced by [`Self::to_cache_json`].
    ///
    /// The schema version is checked before anything else so that a future
    /// format bump fails with an explicit version message rather than a
    /// confusing field error.
    pub fn from_cache_json(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text)
            .map_err(|e| CliError::Usage(format!("cache file is not valid JSON: {e}")))?;
        let version = value
            .get("schema_version")
            .and_then(serde_json::Value::as_u64)
            .ok_or_else(|| {
                CliError::Usage("cache file is missing the schema_version field".into())
            })?;
        if version != u64::from(CACHE_SCHEMA_VERSION) {
            return Err(CliError::Usage(format!(
                "cache schema version {version} is not supported \
                 (this tool reads version {CACHE_SCHEMA_VERSION})"
            )));
        }
        let file: CacheFile = serde_json::from_value(value)
            .map_err(|e| CliError::Usage(format!("malformed cache file: {e}")))?;
        let table = ReliabilityTable {
            channel: file.channel,
            level: file.level,
            rows: file.rows,
            metadata: file.metadata,
        };
        table.validate()?;
        Ok(table)
    }
}
