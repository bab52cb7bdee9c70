//! Run configuration: defaults, key=value config file, flag overrides.

use std::path::PathBuf;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct RunConfig {
    pub d: u8,
    /// Weight cutoff, doubled so half-integers stay exact.
    pub w_doubled: i64,
    pub k_max: u32,
    pub series_order: u32,
    pub cache_dir: PathBuf,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            d: 1,
            w_doubled: 12,
            k_max: 8,
            series_order: 10,
            cache_dir: default_cache_dir(),
            format: OutputFormat::Json,
        }
    }
}

/// Cache dir: SYMPFER_CACHE_DIR env var, else ./.sympfer-cache.
pub fn default_cache_dir() -> PathBuf {
    std::env::var_os("SYMPFER_CACHE_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(".sympfer-cache"))
}

/// Parse an integer or "n/2" half-integer into a doubled value.
pub fn parse_half_doubled(s: &str) -> Result<i64, String> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: i64 = num
            .trim()
            .parse()
            .map_err(|_| format!("bad cutoff numerator: {s}"))?;
        let d: i64 = den
            .trim()
            .parse()
            .map_err(|_| format!("bad cutoff denominator: {s}"))?;
        if d == 2 {
            Ok(n)
        } else if d == 1 {
            Ok(2 * n)
        } else {
            Err(format!("cutoff denominator must be 1 or 2: {s}"))
        }
    } else {
        let n: i64 = s.parse().map_err(|_| format!("bad cutoff: {s}"))?;
        Ok(2 * n)
    }
}

impl RunConfig {
    /// Apply one key=value setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        match key {
            "d" => self.d = value.parse().map_err(|_| format!("bad d: {value}"))?,
            "cutoff" => self.w_doubled = parse_half_doubled(value)?,
            "kmax" => self.k_max = value.parse().map_err(|_| format!("bad kmax: {value}"))?,
            "order" => {
                self.series_order = value.parse().map_err(|_| format!("bad order: {value}"))?
            }
            "cache_dir" => self.cache_dir = PathBuf::from(value),
            "format" => {
                self.format = match value {
                    "json" => OutputFormat::Json,
                    "text" => OutputFormat::Text,
                    _ => return Err(format!("bad format: {value}")),
                }
            }
            _ => return Err(format!("unknown config key: {key}")),
        }
        Ok(())
    }

    /// Load key=value lines from a file; '#' starts a comment.
    pub fn load_file(&mut self, path: &std::path::Path) -> Result<(), String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("read {path:?}: {e}"))?;
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| format!("bad config line: {line}"))?;
            self.set(k.trim(), v.trim())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_integer_cutoffs() {
        assert_eq!(parse_half_doubled("6").unwrap(), 12);
        assert_eq!(parse_half_doubled("13/2").unwrap(), 13);
        assert_eq!(parse_half_doubled("7/1").unwrap(), 14);
        assert!(parse_half_doubled("1/3").is_err());
        assert!(parse_half_doubled("x").is_err());
    }

    #[test]
    fn config_file_and_overrides() {
        let mut cfg = RunConfig::default();
        assert_eq!(cfg.d, 1);
        assert_eq!(cfg.w_doubled, 12);
        assert_eq!(cfg.k_max, 8);
        assert_eq!(cfg.series_order, 10);
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("cfg");
        std::fs::write(&p, "d = 2\ncutoff = 9/2  # half-integer\nformat = text\n").unwrap();
        cfg.load_file(&p).unwrap();
        assert_eq!(cfg.d, 2);
        assert_eq!(cfg.w_doubled, 9);
        assert_eq!(cfg.format, OutputFormat::Text);
        // flag override wins
        cfg.set("d", "1").unwrap();
        assert_eq!(cfg.d, 1);
    }
}
