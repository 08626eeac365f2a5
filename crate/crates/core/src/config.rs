//! Run configuration: defaults, `key=value` config files, and the
//! `OGWALLS_CONFIG` environment variable.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_rational::BigRational;

use crate::arith::{parse_rat, rat};
use crate::classify::DEFAULT_TS_SEARCH_BOUND;
use crate::mukai::MukaiVector;
use crate::slice::Window;
use crate::{Error, Result};

/// Environment variable naming a default config file.
pub const CONFIG_ENV: &str = "OGWALLS_CONFIG";

pub const DEFAULT_RANK_BOUND: u64 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Svg,
    Text,
}

impl FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "json" => Ok(Self::Json),
            "svg" => Ok(Self::Svg),
            "text" => Ok(Self::Text),
            other => Err(Error::Parse(format!("unknown output format `{other}`"))),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Json => "json",
            Self::Svg => "svg",
            Self::Text => "text",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub d: u64,
    pub vector: MukaiVector,
    pub window: Window,
    pub rank_bound: u64,
    pub ts_search_bound: u64,
    pub output_format: OutputFormat,
    /// `None` writes to stdout.
    pub out_path: Option<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            d: 1,
            vector: MukaiVector::new(2, 0, -2),
            window: default_window(),
            rank_bound: DEFAULT_RANK_BOUND,
            ts_search_bound: DEFAULT_TS_SEARCH_BOUND,
            output_format: OutputFormat::Json,
            out_path: None,
        }
    }
}

pub fn default_window() -> Window {
    Window { u_min: rat(-2, 1), u_max: rat(1, 1), t_max: rat(3, 2) }
}

fn parse_q(key: &str, value: &str) -> Result<BigRational> {
    parse_rat(value).ok_or_else(|| Error::Parse(format!("{key}: expected a rational, got `{value}`")))
}

fn parse_u64(key: &str, value: &str) -> Result<u64> {
    value.trim().parse().map_err(|_| Error::Parse(format!("{key}: expected a nonnegative integer, got `{value}`")))
}

impl RunConfig {
    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        match key.trim().replace('-', "_").as_str() {
            "d" => self.d = parse_u64(key, value)?,
            "v" | "vector" => self.vector = value.parse()?,
            "u_min" => self.window.u_min = parse_q(key, value)?,
            "u_max" => self.window.u_max = parse_q(key, value)?,
            "t_max" => self.window.t_max = parse_q(key, value)?,
            "rank_bound" => self.rank_bound = parse_u64(key, value)?,
            "ts_search_bound" | "ts_bound" => self.ts_search_bound = parse_u64(key, value)?,
            "format" | "output_format" => self.output_format = value.parse()?,
            "out" | "out_path" => self.out_path = (!value.is_empty()).then(|| value.to_string()),
            other => return Err(Error::Parse(format!("unknown config key `{other}`"))),
        }
        Ok(())
    }

    /// Applies a config file body. Blank lines and `#` comments are ignored.
    pub fn apply_str(&mut self, text: &str) -> Result<()> {
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("line {}: expected key=value", n + 1)))?;
            self.set(k, v).map_err(|e| Error::Parse(format!("line {}: {e}", n + 1)))?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        self.apply_str(&text)
    }

    /// Defaults, then the explicit file if given, otherwise the file named by
    /// [`CONFIG_ENV`] if set.
    pub fn load(explicit: Option<&Path>) -> Result<Self> {
        let mut cfg = Self::default();
        match explicit {
            Some(p) => cfg.apply_file(p)?,
            None => {
                if let Some(p) = std::env::var_os(CONFIG_ENV).filter(|p| !p.is_empty()) {
                    cfg.apply_file(Path::new(&p))?;
                }
            }
        }
        Ok(cfg)
    }
}
