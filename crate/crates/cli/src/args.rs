use std::str::FromStr;

use avw_core::analyzer::{from_catalog, from_verma, WindowedModule};
use avw_core::catalog::{parse_spec, ModuleSpec};
use avw_core::scalar::{parse_scalar, Scalar};
use avw_core::verma::{build_verma, HighestWeightData, TruncatedModule, VermaConfig};
use clap::Args;

use crate::CliError;

/// Inclusive integer range written `lo..hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Range {
    pub lo: i64,
    pub hi: i64,
}

impl Range {
    pub fn pair(self) -> (i64, i64) {
        (self.lo, self.hi)
    }
}

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (lo, hi) = s.split_once("..").ok_or_else(|| format!("expected `lo..hi`, found `{s}`"))?;
        let parse = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("bad bound `{t}`: {e}"));
        Ok(Range { lo: parse(lo)?, hi: parse(hi)? })
    }
}

impl std::fmt::Display for Range {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

pub fn scalar_arg(s: &str) -> Result<Scalar, String> {
    parse_scalar(s).map_err(|e| e.to_string())
}

pub fn spec_arg(s: &str) -> Result<ModuleSpec, String> {
    parse_spec(s).map_err(|e| e.to_string())
}

/// Highest-weight data and truncation bounds.
#[derive(Debug, Clone, Args)]
pub struct VermaArgs {
    /// d₀-eigenvalue of the highest-weight vector
    #[arg(long, value_parser = scalar_arg, allow_hyphen_values = true)]
    pub lamd: Option<Scalar>,
    /// h₀-eigenvalue of the highest-weight vector
    #[arg(long, value_parser = scalar_arg, allow_hyphen_values = true)]
    pub mu: Option<Scalar>,
    /// central charge
    #[arg(long, value_parser = scalar_arg, allow_hyphen_values = true)]
    pub c: Option<Scalar>,
    /// depth bound N
    #[arg(long)]
    pub depth: Option<i64>,
    /// charge bound S (default N + 4)
    #[arg(long, allow_hyphen_values = true)]
    pub charge: Option<i64>,
}

impl VermaArgs {
    fn given(&self) -> bool {
        self.lamd.is_some() || self.mu.is_some() || self.c.is_some() || self.depth.is_some()
    }

    pub fn build(&self) -> Result<TruncatedModule, CliError> {
        let missing = |name: &str| CliError::Usage(format!("--{name} is required for a highest-weight module"));
        let hw = HighestWeightData::new(
            self.lamd.clone().ok_or_else(|| missing("lamd"))?,
            self.mu.clone().ok_or_else(|| missing("mu"))?,
            self.c.clone().ok_or_else(|| missing("c"))?,
        );
        let depth = self.depth.ok_or_else(|| missing("depth"))?;
        if depth < 0 {
            return Err(CliError::Usage("--depth must be nonnegative".into()));
        }
        let mut config = VermaConfig::new(depth);
        if let Some(s) = self.charge {
            config = config.with_charge(s);
        }
        build_verma(hw, &config).map_err(|e| CliError::Usage(e.to_string()))
    }
}

/// A module given either by a catalog spec on a window or by highest-weight data.
#[derive(Debug, Clone, Args)]
pub struct SourceArgs {
    /// catalog module, e.g. `loop:lambda=1,a=1/2,b=1/3`
    #[arg(long, value_parser = spec_arg)]
    pub module: Option<ModuleSpec>,
    /// offset window for catalog modules
    #[arg(long, default_value = "-3..3", allow_hyphen_values = true)]
    pub window: Range,
    #[command(flatten)]
    pub verma: VermaArgs,
}

impl SourceArgs {
    pub fn windowed(&self) -> Result<WindowedModule, CliError> {
        match (&self.module, self.verma.given()) {
            (Some(_), true) => Err(CliError::Usage("give either --module or highest-weight data, not both".into())),
            (Some(spec), false) => Ok(from_catalog(spec, self.window.pair())),
            (None, true) => Ok(from_verma(&self.verma.build()?)),
            (None, false) => Err(CliError::Usage("a module is required: --module SPEC or --lamd/--mu/--c/--depth".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!("-5..5".parse::<Range>().unwrap(), Range { lo: -5, hi: 5 });
        assert_eq!("0..0".parse::<Range>().unwrap(), Range { lo: 0, hi: 0 });
        assert!("5".parse::<Range>().is_err());
        assert!("a..2".parse::<Range>().is_err());
    }
}
