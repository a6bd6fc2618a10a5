//! Run configuration: lattice size, seed, suite selection, sample counts and
//! output settings, read from `key=value` text and command-line overrides.

use serde::Serialize;
use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("n·d = {0} is odd; the Fock representation needs an even number of real modes")]
    OddModeCount(usize),
    #[error("n·d = {value} exceeds the cap {cap} (Fock dimension 2^(n·d))")]
    TooLarge { value: usize, cap: usize },
    #[error("{0} must be positive")]
    NotPositive(&'static str),
    #[error("--points must be even (it is 2n), got {0}")]
    OddPoints(usize),
    #[error("suite {suite:?} needs d ≥ 2")]
    NeedsSpin { suite: String },
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("unknown config key {0:?}")]
    UnknownKey(String),
    #[error("bad value {value:?} for {key}")]
    BadValue { key: String, value: String },
    #[error("config line {line}: expected key=value")]
    Syntax { line: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Json,
    Markdown,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub n: usize,
    pub d: usize,
    pub seed: u64,
    pub suites: Vec<String>,
    /// Overrides every check's default sample count.
    pub samples: Option<usize>,
    /// Overrides the tolerance of every gated residual check.
    pub tol: Option<f64>,
    /// Largest allowed `n·d`.
    pub cap: usize,
    #[serde(skip)]
    pub report: Option<PathBuf>,
    #[serde(skip)]
    pub format: ReportFormat,
    #[serde(skip)]
    pub dump: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            n: 2,
            d: 2,
            seed: 0x5eed,
            suites: vec!["all".into()],
            samples: None,
            tol: None,
            cap: 8,
            report: None,
            format: ReportFormat::Json,
            dump: None,
        }
    }
}

fn parse<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, ConfigError> {
    value.trim().parse().map_err(|_| ConfigError::BadValue { key: key.into(), value: value.into() })
}

impl RunConfig {
    pub fn new(n: usize, d: usize, seed: u64) -> Self {
        Self { n, d, seed, ..Self::default() }
    }

    pub fn with_suites(mut self, suites: &[&str]) -> Self {
        self.suites = suites.iter().map(|s| s.to_string()).collect();
        self
    }

    /// Sets one key. `suite` accepts a comma-separated list and replaces the
    /// current selection.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let value = value.trim();
        match key.trim() {
            "points" => {
                let points: usize = parse(key, value)?;
                if points % 2 == 1 {
                    return Err(ConfigError::OddPoints(points));
                }
                self.n = points / 2;
            }
            "n" => self.n = parse(key, value)?,
            "dim" | "d" => self.d = parse(key, value)?,
            "seed" => self.seed = parse(key, value)?,
            "suite" | "suites" => {
                self.suites = value.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
            }
            "samples" => self.samples = Some(parse(key, value)?),
            "tol" => self.tol = Some(parse(key, value)?),
            "cap" => self.cap = parse(key, value)?,
            "report" => self.report = Some(PathBuf::from(value)),
            "dump" => self.dump = Some(PathBuf::from(value)),
            "format" => {
                self.format = match value {
                    "json" => ReportFormat::Json,
                    "md" | "markdown" => ReportFormat::Markdown,
                    _ => return Err(ConfigError::BadValue { key: key.into(), value: value.into() }),
                }
            }
            other => return Err(ConfigError::UnknownKey(other.into())),
        }
        Ok(())
    }

    /// Applies a flat `key=value` file; blank lines and `#` comments are
    /// ignored.
    pub fn apply_file(&mut self, text: &str) -> Result<(), ConfigError> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or(ConfigError::Syntax { line: i + 1 })?;
            self.set(key, value)?;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.n == 0 {
            return Err(ConfigError::NotPositive("n"));
        }
        if self.d == 0 {
            return Err(ConfigError::NotPositive("d"));
        }
        if self.samples == Some(0) {
            return Err(ConfigError::NotPositive("samples"));
        }
        if let Some(tol) = self.tol {
            if !(tol > 0.0) {
                return Err(ConfigError::BadValue { key: "tol".into(), value: tol.to_string() });
            }
        }
        let modes = self.n * self.d;
        if modes % 2 == 1 {
            return Err(ConfigError::OddModeCount(modes));
        }
        if modes > self.cap {
            return Err(ConfigError::TooLarge { value: modes, cap: self.cap });
        }
        Ok(())
    }

    /// The configured sample count, or `default`.
    pub fn samples_or(&self, default: usize) -> usize {
        self.samples.unwrap_or(default)
    }

    pub fn tolerance_or(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_and_cap_guards() {
        assert_eq!(RunConfig::new(3, 3, 0).validate(), Err(ConfigError::OddModeCount(9)));
        assert_eq!(RunConfig::new(5, 2, 0).validate(), Err(ConfigError::TooLarge { value: 10, cap: 8 }));
        assert!(RunConfig::new(2, 3, 0).validate().is_ok());
        assert_eq!(RunConfig::new(0, 2, 0).validate(), Err(ConfigError::NotPositive("n")));
    }

    #[test]
    fn key_value_files() {
        let mut config = RunConfig::default();
        config.apply_file("# reference run\npoints = 6\ndim=2\nsuite=string, stringor\nseed=7\nformat=md\n").unwrap();
        assert_eq!((config.n, config.d, config.seed), (3, 2, 7));
        assert_eq!(config.suites, vec!["string", "stringor"]);
        assert_eq!(config.format, ReportFormat::Markdown);
        assert_eq!(config.clone().apply_file("points=5"), Err(ConfigError::OddPoints(5)));
        assert_eq!(config.clone().apply_file("colour=blue"), Err(ConfigError::UnknownKey("colour".into())));
        assert_eq!(config.apply_file("oops"), Err(ConfigError::Syntax { line: 1 }));
    }
}
