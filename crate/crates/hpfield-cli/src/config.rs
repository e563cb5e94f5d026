//! Run configuration: defaults, overridden by an optional `key=value` config
//! file, overridden by command-line flags. Unknown keys and malformed values
//! are usage errors (exit code 2).

use std::path::{Path, PathBuf};

use hpfield::theories::ExampleParams;
use hpfield::tol;

/// A configuration or usage problem; mapped to exit code 2 by `main`.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(UsageError(msg.into()))
}

/// Merged settings for one invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub seed: u64,
    pub out: PathBuf,
    pub grid: Option<Vec<usize>>,
    pub tol: Option<f64>,
    pub samples: Option<usize>,
    pub n: Option<usize>,
    pub params: ExampleParams,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: tol::DEFAULT_SEED,
            out: PathBuf::from("."),
            grid: None,
            tol: None,
            samples: None,
            n: None,
            params: ExampleParams::default(),
        }
    }
}

impl RunConfig {
    /// Applies one `key = value` pair; unknown keys are usage errors.
    fn apply(&mut self, key: &str, value: &str) -> anyhow::Result<()> {
        fn parse<T: std::str::FromStr>(key: &str, value: &str) -> anyhow::Result<T> {
            value
                .parse()
                .map_err(|_| usage(format!("invalid value '{value}' for key '{key}'")))
        }
        match key {
            "seed" => self.seed = parse(key, value)?,
            "out" => self.out = PathBuf::from(value),
            "grid" => self.grid = Some(parse_grid(value)?),
            "tol" => self.tol = Some(parse(key, value)?),
            "samples" => self.samples = Some(parse(key, value)?),
            "n" => self.n = Some(parse(key, value)?),
            "mass" => self.params.mass = parse(key, value)?,
            "wave_number" => self.params.wave_number = parse(key, value)?,
            "lambda" => self.params.lambda = parse(key, value)?,
            "mu" => self.params.mu = parse(key, value)?,
            "traction" => self.params.traction = parse(key, value)?,
            other => return Err(usage(format!("unknown config key '{other}'"))),
        }
        Ok(())
    }

    /// Reads a plain-text config file: one `key=value` per line, `#` starts
    /// a comment, blank lines ignored.
    pub fn apply_file(&mut self, path: &Path) -> anyhow::Result<()> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                usage(format!(
                    "{}:{}: expected key=value, got '{line}'",
                    path.display(),
                    lineno + 1
                ))
            })?;
            self.apply(key.trim(), value.trim())?;
        }
        Ok(())
    }

    /// Grid extents with a per-command default, validated to the expected
    /// number of axes.
    pub fn grid_or(&self, default: &[usize], axes: usize) -> anyhow::Result<Vec<usize>> {
        let grid = self.grid.clone().unwrap_or_else(|| default.to_vec());
        if grid.len() != axes {
            return Err(usage(format!(
                "--grid needs {axes} axis extent(s) here, got {}",
                grid.len()
            )));
        }
        Ok(grid)
    }
}

/// Parses `64`, `64x64`, `64x64x64`, ... into per-axis extents.
pub fn parse_grid(text: &str) -> anyhow::Result<Vec<usize>> {
    let mut extents = Vec::new();
    for part in text.split('x') {
        let m: usize = part
            .trim()
            .parse()
            .map_err(|_| usage(format!("invalid grid '{text}'")))?;
        if m < 2 {
            return Err(usage(format!("grid extent {m} too small (need >= 2)")));
        }
        extents.push(m);
    }
    Ok(extents)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_strings_parse_per_axis() {
        assert_eq!(parse_grid("64").unwrap(), vec![64]);
        assert_eq!(parse_grid("32x48").unwrap(), vec![32, 48]);
        assert_eq!(parse_grid("8x8x8").unwrap(), vec![8, 8, 8]);
        assert!(parse_grid("0x4").is_err());
        assert!(parse_grid("abc").is_err());
    }

    #[test]
    fn config_file_overrides_defaults_and_rejects_unknown_keys() {
        let dir = std::env::temp_dir().join("hpfield-cli-config-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.cfg");
        std::fs::write(&path, "# comment\nseed = 7\nmu=2.5\ngrid=16x16 # inline\n").unwrap();
        let mut cfg = RunConfig::default();
        cfg.apply_file(&path).unwrap();
        assert_eq!(cfg.seed, 7);
        assert_eq!(cfg.params.mu, 2.5);
        assert_eq!(cfg.grid.as_deref(), Some(&[16, 16][..]));

        std::fs::write(&path, "bogus_key = 1\n").unwrap();
        let err = cfg.apply_file(&path).unwrap_err();
        assert!(err.is::<UsageError>());
        assert!(err.to_string().contains("bogus_key"));
    }
}
