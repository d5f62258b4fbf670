//! Run configuration: a flat `key=value` file format, losslessly
//! serializable, with CLI flags layered on top by the binary.

use crate::{HarnessError, Result};

/// Parameters shared by the check catalog and the CLI subcommands.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// Lattice dimension (1 or 2).
    pub dim: usize,
    /// Points per axis at the base resolution.
    pub size: usize,
    /// Spatial period `L`.
    pub period: f64,
    /// Window taper: `smoothstep3`, `smoothstep5`, `smoothstep7`, `cosine`.
    pub taper: String,
    pub s1: f64,
    pub s2: f64,
    pub jmin: i32,
    pub jmax: i32,
    /// Base seed; checks use `seed, seed+1, ..., seed+nseeds-1`.
    pub seed: u64,
    pub nseeds: usize,
    /// Norm-search budget.
    pub trials: u32,
    pub iterations: u32,
    /// Refinement drift bound for inequality checks.
    pub drift_bound: f64,
    /// Check selection; empty means the full catalog.
    pub checks: Vec<String>,
    /// Output directory; `BIFOUR_OUT` overrides, `.` is the default.
    pub outdir: String,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            dim: 1,
            size: 64,
            period: std::f64::consts::TAU,
            taper: "smoothstep7".to_string(),
            s1: 0.4,
            s2: 0.6,
            jmin: -4,
            jmax: 4,
            seed: 1,
            nseeds: 3,
            trials: 4,
            iterations: 8,
            drift_bound: 1.25,
            checks: Vec::new(),
            outdir: ".".to_string(),
        }
    }
}

impl RunConfig {
    pub fn seeds(&self) -> Vec<u64> {
        (0..self.nseeds as u64).map(|i| self.seed + i).collect()
    }

    /// Serializes to the flat key=value format, one key per line, fixed
    /// order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("dim={}\n", self.dim));
        out.push_str(&format!("size={}\n", self.size));
        out.push_str(&format!("period={}\n", self.period));
        out.push_str(&format!("taper={}\n", self.taper));
        out.push_str(&format!("s1={}\n", self.s1));
        out.push_str(&format!("s2={}\n", self.s2));
        out.push_str(&format!("jmin={}\n", self.jmin));
        out.push_str(&format!("jmax={}\n", self.jmax));
        out.push_str(&format!("seed={}\n", self.seed));
        out.push_str(&format!("nseeds={}\n", self.nseeds));
        out.push_str(&format!("trials={}\n", self.trials));
        out.push_str(&format!("iterations={}\n", self.iterations));
        out.push_str(&format!("drift_bound={}\n", self.drift_bound));
        out.push_str(&format!("checks={}\n", self.checks.join(";")));
        out.push_str(&format!("outdir={}\n", self.outdir));
        out
    }

    /// Parses the flat format; unknown keys are rejected so typos do not
    /// silently fall back to defaults.
    pub fn from_text(text: &str) -> Result<RunConfig> {
        let mut cfg = RunConfig::default();
        for (lineno, line) in text.lines().enumerate() {
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let (key, value) = t.split_once('=').ok_or_else(|| {
                HarnessError::Parse(format!("line {}: expected key=value, got {t:?}", lineno + 1))
            })?;
            cfg.set(key.trim(), value.trim())?;
        }
        Ok(cfg)
    }

    /// Applies one `key=value` override.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
            value
                .parse()
                .map_err(|_| HarnessError::Parse(format!("bad value for {key}: {value:?}")))
        }
        match key {
            "dim" => self.dim = num(key, value)?,
            "size" => self.size = num(key, value)?,
            "period" => self.period = num(key, value)?,
            "taper" => self.taper = value.to_string(),
            "s1" => self.s1 = num(key, value)?,
            "s2" => self.s2 = num(key, value)?,
            "jmin" => self.jmin = num(key, value)?,
            "jmax" => self.jmax = num(key, value)?,
            "seed" => self.seed = num(key, value)?,
            "nseeds" => self.nseeds = num(key, value)?,
            "trials" => self.trials = num(key, value)?,
            "iterations" => self.iterations = num(key, value)?,
            "drift_bound" => self.drift_bound = num(key, value)?,
            "checks" => {
                self.checks =
                    value.split(';').filter(|s| !s.is_empty()).map(str::to_string).collect()
            }
            "outdir" => self.outdir = value.to_string(),
            other => return Err(HarnessError::Parse(format!("unknown config key: {other}"))),
        }
        Ok(())
    }

    pub fn taper_profile(&self) -> Result<bifour_core::symbols::TaperProfile> {
        use bifour_core::symbols::TaperProfile;
        match self.taper.as_str() {
            "smoothstep3" => Ok(TaperProfile::Smoothstep(3)),
            "smoothstep5" => Ok(TaperProfile::Smoothstep(5)),
            "smoothstep7" => Ok(TaperProfile::Smoothstep(7)),
            "cosine" => Ok(TaperProfile::CosineTaper),
            other => Err(HarnessError::Parse(format!("unknown taper: {other}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_losslessly() {
        let mut cfg = RunConfig::default();
        cfg.size = 128;
        cfg.s1 = 0.35;
        cfg.checks = vec!["LEM-5.1".to_string(), "DUAL-4.2".to_string()];
        cfg.outdir = "/tmp/out".to_string();
        let text = cfg.to_text();
        let back = RunConfig::from_text(&text).unwrap();
        assert_eq!(back, cfg);
        assert_eq!(back.to_text(), text);
    }

    #[test]
    fn rejects_unknown_keys_and_bad_values() {
        assert!(RunConfig::from_text("wibble=3\n").is_err());
        assert!(RunConfig::from_text("size=abc\n").is_err());
        assert!(RunConfig::from_text("# comment\n\nsize=32\n").is_ok());
    }

    #[test]
    fn seed_list_is_contiguous() {
        let mut cfg = RunConfig::default();
        cfg.seed = 7;
        cfg.nseeds = 3;
        assert_eq!(cfg.seeds(), vec![7, 8, 9]);
    }
}
