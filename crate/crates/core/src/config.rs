//! Run configuration: a flat `key = value` file whose entries are overridden
//! by command-line flags.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(Error::Usage(format!("unknown output format {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub prime_limit: u64,
    pub cache_path: Option<PathBuf>,
    pub default_delta: f64,
    pub output_format: OutputFormat,
    pub rng_seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            prime_limit: 10_000_000,
            cache_path: None,
            default_delta: 0.01,
            output_format: OutputFormat::Json,
            rng_seed: 20_240_601,
        }
    }
}

fn parse_value<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::Usage(format!("bad value {value:?} for {key}")))
}

/// Integers may be written as `1e7`.
fn parse_count(key: &str, value: &str) -> Result<u64> {
    if let Ok(n) = value.parse::<u64>() {
        return Ok(n);
    }
    let x: f64 = parse_value(key, value)?;
    if x >= 0.0 && x.fract() == 0.0 && x < 1.8e19 {
        Ok(x as u64)
    } else {
        Err(Error::Usage(format!("bad count {value:?} for {key}")))
    }
}

impl RunConfig {
    /// Apply one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "prime_limit" => self.prime_limit = parse_count(key, value)?,
            "cache_path" => self.cache_path = Some(PathBuf::from(value)),
            "default_delta" => self.default_delta = parse_value(key, value)?,
            "output_format" => self.output_format = value.parse()?,
            "rng_seed" => self.rng_seed = parse_count(key, value)?,
            other => return Err(Error::Usage(format!("unknown config key {other:?}"))),
        }
        Ok(())
    }

    /// Parse a config file body. Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut config = RunConfig::default();
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Usage(format!("config line {}: expected key=value", n + 1))
            })?;
            config.set(key.trim(), value.trim())?;
        }
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.default_delta > 0.0) || !self.default_delta.is_finite() {
            return Err(Error::Usage(format!(
                "default_delta must be positive, got {}",
                self.default_delta
            )));
        }
        if self.prime_limit < 10_000 {
            return Err(Error::Usage(format!(
                "prime_limit must be at least 10^4, got {}",
                self.prime_limit
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_keys() {
        let c = RunConfig::parse(
            "# knobs\nprime_limit = 1e6\ncache_path=/tmp/p.bin\n\ndefault_delta = 0.2 # inline\noutput_format = csv\nrng_seed = 7\n",
        )
        .unwrap();
        assert_eq!(c.prime_limit, 1_000_000);
        assert_eq!(c.cache_path, Some(PathBuf::from("/tmp/p.bin")));
        assert_eq!(c.default_delta, 0.2);
        assert_eq!(c.output_format, OutputFormat::Csv);
        assert_eq!(c.rng_seed, 7);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(RunConfig::parse("prime_limit = 100").is_err());
        assert!(RunConfig::parse("default_delta = 0").is_err());
        assert!(RunConfig::parse("colour = blue").is_err());
        assert!(RunConfig::parse("just a line").is_err());
        assert!(RunConfig::parse("output_format = xml").is_err());
    }

    #[test]
    fn default_is_valid() {
        RunConfig::default().validate().unwrap();
    }
}
