//! Parsing of the `--channel` command-line argument.
//!
//! Three forms are accepted:
//!
//! * `bsc:P` for a binary symmetric channel with crossover probability `P`,
//! * `bec:E` for a binary erasure channel with erasure probability `E`,
//! * `@FILE` for a JSON channel description read from `FILE`, e.g.
//!   `{"kind": "general", "rows": [[...], [...]], "perm": [...]}`.
//!
//! For the inline forms the raw decimal text of the parameter is kept
//! alongside the parsed value so that the rational backend can reconstruct
//! the parameter exactly (e.g. `0.1` becomes the fraction 1/10 rather than
//! the nearest binary double).

use num_rational::BigRational;
use polar_density::{AbsDDensity, ChannelSpec, Scalar};

use crate::error::{CliError, Result};

/// A channel selected on the command line, with enough raw text retained to
/// support exact-rational reconstruction of inline parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelArg {
    spec: ChannelSpec,
    /// Raw decimal text of the inline parameter (`bsc:`/`bec:` forms only).
    decimal: Option<String>,
}

impl ChannelArg {
    /// Parses one `--channel` value.
    ///
    /// Returns a plain `String` error so it can serve directly as a clap
    /// value parser; the message is shown under the usual usage banner.
    pub fn parse(raw: &str) -> std::result::Result<Self, String> {
        if let Some(path) = raw.strip_prefix('@') {
            if path.is_empty() {
                return Err("expected a file path after '@'".into());
            }
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read channel file {path}: {e}"))?;
            let spec: ChannelSpec = serde_json::from_str(&text)
                .map_err(|e| format!("cannot parse channel file {path}: {e}"))?;
            spec.validate().map_err(|e| e.to_string())?;
            return Ok(ChannelArg { spec, decimal: None });
        }
        let (kind, param) = raw.split_once(':').ok_or_else(|| {
            format!("expected bsc:P, bec:E, or @FILE, got {raw:?}")
        })?;
        let value: f64 = param
            .parse()
            .map_err(|_| format!("{param:?} is not a number"))?;
        let spec = match kind {
            "bsc" => ChannelSpec::Bsc { p: value },
            "bec" => ChannelSpec::Bec { eps: value },
            other => return Err(format!("unknown channel kind {other:?}")),
        };
        spec.validate().map_err(|e| e.to_string())?;
        Ok(ChannelArg { spec, decimal: Some(param.to_string()) })
    }

    /// The parsed channel description.
    pub fn spec(&self) -> &ChannelSpec {
        &self.spec
    }

    /// Builds the float-backed starting density.
    pub fn density_float(&self, merge_tol: f64) -> Result<AbsDDensity<f64>> {
        Ok(AbsDDensity::from_spec(&self.spec, merge_tol)?)
    }

    /// Builds the rational-backed starting density.
    ///
    /// Inline `bsc:`/`bec:` parameters are re-parsed from their decimal text,
    /// so `bsc:0.1` uses exactly 1/10. Channels loaded from JSON fall back to
    /// the dyadic rational nearest each stored double, which is still exact
    /// arithmetic from that point on.
    pub fn density_rational(&self, merge_tol: f64) -> Result<AbsDDensity<BigRational>> {
        if let Some(text) = &self.decimal {
            let exact = BigRational::from_decimal_str(text).ok_or_else(|| {
                CliError::Usage(format!("{text:?} is not a decimal number"))
            })?;
            let density = match self.spec {
                ChannelSpec::Bsc { .. } => AbsDDensity::bsc_scalar(exact)?,
                ChannelSpec::Bec { .. } => AbsDDensity::bec_scalar(exact)?,
                ChannelSpec::General { .. } => unreachable!("inline parse is bsc/bec only"),
            };
            return Ok(density);
        }
        Ok(AbsDDensity::from_spec(&self.spec, merge_tol)?)
    }
}
