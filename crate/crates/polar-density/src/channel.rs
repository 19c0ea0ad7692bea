//! Serializable channel descriptions.

use serde::{Deserialize, Serialize};

use crate::error::{DensityError, Result};
use crate::CHANNEL_ROW_TOL;

/// A binary-input symmetric channel, as written in configuration files.
///
/// The JSON form tags the variant through `"kind"`:
///
/// ```json
/// {"kind": "bsc", "p": 0.1}
/// {"kind": "bec", "eps": 0.3}
/// {"kind": "general", "rows": [[0.4, 0.3, 0.2, 0.1], [0.1, 0.2, 0.3, 0.4]], "perm": [3, 2, 1, 0]}
/// ```
///
/// `rows[0][y]` and `rows[1][y]` are the transition probabilities of output `y` under
/// the two inputs; `perm` is the output involution realizing the channel symmetry
/// `rows[0][y] = rows[1][perm[y]]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ChannelSpec {
    /// Binary symmetric channel with crossover probability `p`.
    Bsc {
        /// Crossover probability, `0 <= p <= 1/2`.
        p: f64,
    },
    /// Binary erasure channel with erasure probability `eps`.
    Bec {
        /// Erasure probability, `0 <= eps <= 1`.
        eps: f64,
    },
    /// Explicit finite-output symmetric channel.
    General {
        /// Two transition rows, one per input, each summing to 1.
        rows: Vec<Vec<f64>>,
        /// Output involution pairing `y` with its mirror image.
        perm: Vec<usize>,
    },
}

impl ChannelSpec {
    /// Validates parameter ranges and, for general channels, shape, row sums,
    /// involution, and symmetry.
    pub fn validate(&self) -> Result<()> {
        match self {
            ChannelSpec::Bsc { p } => {
                if !p.is_finite() || !(0.0..=0.5).contains(p) {
                    return Err(DensityError::channel(format!(
                        "BSC crossover {p} outside [0, 1/2]"
                    )));
                }
            }
            ChannelSpec::Bec { eps } => {
                if !eps.is_finite() || !(0.0..=1.0).contains(eps) {
                    return Err(DensityError::channel(format!(
                        "BEC erasure probability {eps} outside [0, 1]"
                    )));
                }
            }
            ChannelSpec::General { rows, perm } => {
                if rows.len() != 2 {
                    return Err(DensityError::channel(format!(
                        "general channel needs exactly 2 transition rows, got {}",
                        rows.len()
                    )));
                }
                let n = rows[0].len();
                if n == 0 || rows[1].len() != n || perm.len() != n {
                    return Err(DensityError::channel(
                        "general channel rows and permutation must share one nonzero length",
                    ));
                }
                for row in rows {
                    if row.iter().any(|x| !x.is_finite() || *x < 0.0) {
                        return Err(DensityError::channel(
                            "transition probabilities must be finite and nonnegative",
                        ));
                    }
                    let total: f64 = row.iter().sum();
                    if (total - 1.0).abs() > CHANNEL_ROW_TOL {
                        return Err(DensityError::channel(format!(
                            "transition row sums to {total}, expected 1"
                        )));
                    }
                }
                for (y, &py) in perm.iter().enumerate() {
                    if py >= n {
                        return Err(DensityError::channel(format!(
                            "permutation entry {py} out of range"
                        )));
                    }
                    if perm[py] != y {
                        return Err(DensityError::channel("output permutation is not an involution"));
                    }
                    if (rows[0][y] - rows[1][py]).abs() > CHANNEL_ROW_TOL {
                        return Err(DensityError::channel(format!(
                            "channel is not symmetric under the permutation at output {y}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Short human-readable form, e.g. `bsc(0.1)`.
    pub fn describe(&self) -> String {
        match self {
            ChannelSpec::Bsc { p } => format!("bsc({p})"),
            ChannelSpec::Bec { eps } => format!("bec({eps})"),
            ChannelSpec::General { rows, .. } => {
                format!("general({} outputs)", rows.first().map_or(0, Vec::len))
            }
        }
    }
}
