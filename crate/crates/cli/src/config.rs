//! Experiment configuration: built-in defaults, then command-line flags, then
//! a TOML file. Keys present in the file win over flags.

use std::path::{Path, PathBuf};

use ratsemi_core::measure::CompareConfig;
use ratsemi_core::pingpong::AutoOptions;
use ratsemi_core::semigroup::{EnumPolicy, GrowthThresholds};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Inputs {
    pub map: Option<String>,
    pub map1: Option<String>,
    pub map2: Option<String>,
    pub gens: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Run {
    /// Word length for growth/relations/verdict, depth for affine separation.
    pub depth: usize,
    /// Bound on iterate exponents in the probes.
    pub max: u32,
    pub seed: u64,
    pub samples: usize,
    pub burn_in: usize,
    /// Start of the backward orbit.
    pub start: String,
    /// Moment order for comparisons; period for cycles.
    pub k: usize,
    pub tol: f64,
    pub threads: Option<usize>,
    /// Verdict preset: `quick`, `default` or `thorough`.
    pub budget: String,
    pub certify: bool,
}

impl Default for Run {
    fn default() -> Self {
        Run {
            depth: 10,
            max: 4,
            seed: 0x5eed,
            samples: 100_000,
            burn_in: 64,
            start: "1".into(),
            k: 6,
            tol: 1e-8,
            threads: None,
            budget: "default".into(),
            certify: false,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Certify {
    /// `re,im,r` or `re,r` (decimal, taken exactly as binary doubles).
    pub disk: Option<String>,
    /// Boxes `x0,x1,y0,y1` separated by `;`.
    pub n1: Option<String>,
    pub n2: Option<String>,
    pub auto: bool,
    pub depth: Option<u32>,
    pub replay: Option<PathBuf>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Output {
    /// JSON report; stdout when absent.
    pub out: Option<PathBuf>,
    /// CSV artifact for `growth` and `brolin`; stdout when absent.
    pub csv: Option<PathBuf>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ExperimentConfig {
    pub inputs: Inputs,
    pub run: Run,
    pub certify: Certify,
    pub policy: EnumPolicy,
    pub growth: GrowthThresholds,
    pub compare: CompareConfig,
    pub auto: AutoOptions,
    pub output: Output,
}

impl ExperimentConfig {
    pub fn to_toml(&self) -> Result<String, CliError> {
        toml::to_string_pretty(self).map_err(|e| CliError::Usage(format!("config not representable as TOML: {e}")))
    }

    /// Overlays the keys of a TOML document onto `self`.
    pub fn merge_toml(&self, text: &str) -> Result<ExperimentConfig, CliError> {
        let file: toml::Table = text.parse().map_err(|e| CliError::Usage(format!("config: {e}")))?;
        let mut base = toml::Table::try_from(self).map_err(|e| CliError::Usage(format!("config: {e}")))?;
        merge(&mut base, file);
        toml::Value::Table(base).try_into().map_err(|e| CliError::Usage(format!("config: {e}")))
    }

    pub fn load_over(&self, path: &Path) -> Result<ExperimentConfig, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        self.merge_toml(&text)
    }

    /// Preset word lengths, sample counts and probe bounds for `verdict`.
    pub fn apply_budget(&mut self, name: &str) -> Result<(), CliError> {
        let (depth, samples, max) = match name {
            "quick" => (8, 5_000, 3),
            "default" => (10, 20_000, 4),
            "thorough" => (14, 100_000, 6),
            other => return Err(CliError::Usage(format!("unknown budget `{other}` (quick, default, thorough)"))),
        };
        self.run.budget = name.to_string();
        self.run.depth = depth;
        self.run.samples = samples;
        self.run.max = max;
        Ok(())
    }
}

fn merge(base: &mut toml::Table, over: toml::Table) {
    for (k, v) in over {
        match (base.get_mut(&k), v) {
            (Some(toml::Value::Table(b)), toml::Value::Table(o)) => merge(b, o),
            (_, v) => {
                base.insert(k, v);
            }
        }
    }
}

/// Splits on top-level commas, so JSON or parenthesized inputs stay whole.
pub fn split_list(s: &str) -> Vec<String> {
    let (mut out, mut cur, mut depth) = (Vec::new(), String::new(), 0i32);
    for ch in s.chars() {
        match ch {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur).trim().to_string());
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toml_round_trip() {
        let mut c = ExperimentConfig::default();
        c.inputs.gens = vec!["2*z".into(), "2*z+1".into()];
        c.compare.moment_threshold = Some(0.25);
        c.certify.disk = Some("0,4".into());
        let text = c.to_toml().unwrap();
        let back = ExperimentConfig::default().merge_toml(&text).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn file_keys_win() {
        let mut c = ExperimentConfig::default();
        c.run.depth = 7;
        c.run.seed = 9;
        let merged = c.merge_toml("[run]\ndepth = 12\n").unwrap();
        assert_eq!(merged.run.depth, 12);
        assert_eq!(merged.run.seed, 9);
        assert!(c.merge_toml("[run]\ndepth = \"x\"\n").is_err());
    }

    #[test]
    fn list_splitting() {
        assert_eq!(split_list("2*z, 2*z+1"), vec!["2*z", "2*z+1"]);
        assert_eq!(split_list("{\"num\":[\"0\",\"1\"],\"den\":[\"1\"]},z^2"), vec!["{\"num\":[\"0\",\"1\"],\"den\":[\"1\"]}", "z^2"]);
    }
}
