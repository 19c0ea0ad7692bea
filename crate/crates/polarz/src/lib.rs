//! Batch front-end for polar bit-channel reliability tables.
//!
//! The `polarz` binary computes Bhattacharyya parameters for all `2^k`
//! bit-channels of a symmetric binary-input channel, selects information
//! sets, cross-checks independent computation paths, sweeps channel
//! parameters for plot data, and caches finished tables as JSON.
//!
//! ```text
//! polarz construct --channel bsc:0.1 --level 3 --gamma 0.1 --out table.csv
//! polarz construct --channel bec:0.5 --level 2 --rate 0.25
//! polarz verify --level 3
//! polarz sweep --family bsc --grid 20 --level 3 --out sweep.csv
//! polarz cache --channel bsc:0.1 --level 4 --out table.json
//! polarz load-cache table.json
//! ```
//!
//! Channels are given as `bsc:P`, `bec:E`, or `@FILE` pointing at a JSON
//! description. Every command accepts `--backend {float,rational}` (the
//! rational backend runs the entire evolution in exact arithmetic, parsing
//! inline decimal parameters as exact fractions) and `--atom-cap N`.
//!
//! Exit codes: `0` success, `1` usage or input error, `2` resource limit or
//! I/O error, `3` verification failure.
//!
//! The table type and its serializations are usable as a library:
//!
//! ```
//! use polar_density::ChannelSpec;
//! use polarz::{ReliabilityTable, TableMetadata, TableRow};
//!
//! let table = ReliabilityTable {
//!     channel: ChannelSpec::Bec { eps: 0.5 },
//!     level: 1,
//!     rows: vec![
//!         TableRow { index: 1, pattern: "0".into(), z: 0.75 },
//!         TableRow { index: 2, pattern: "1".into(), z: 0.25 },
//!     ],
//!     metadata: TableMetadata {
//!         backend: "float".into(),
//!         merge_tol: 1e-12,
//!         atom_cap: 1_000_000,
//!         tool_version: "0.1.0".into(),
//!     },
//! };
//! table.validate().unwrap();
//! let json = table.to_cache_json();
//! assert_eq!(ReliabilityTable::from_cache_json(&json).unwrap(), table);
//! ```

pub mod channel_arg;
pub mod cli;
pub mod commands;
pub mod error;
pub mod table;

pub use channel_arg::ChannelArg;
pub use cli::{
    BackendChoice, CacheArgs, Cli, Command, ConstructArgs, FamilyChoice, LoadCacheArgs,
    SweepArgs, VerifyArgs,
};
pub use commands::{read_cache, run, MAX_TABLE_LEVEL};
pub use error::{CliError, Result};
pub use table::{ReliabilityTable, TableMetadata, TableRow, CACHE_SCHEMA_VERSION};
