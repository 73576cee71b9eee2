//! Line-oriented `key = value` run configuration.

use std::fmt;
use std::ops::RangeInclusive;
use std::path::PathBuf;

use wienerlab_core::{builtin_data, builtin_domain, WosConfig};

pub const MAX_LEVEL: u32 = 12;

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub domain: String,
    pub data: String,
    /// Fine level `K`.
    pub fine_level: u32,
    /// Inclusive exhaustion levels.
    pub k_range: (u32, u32),
    pub tol: f64,
    /// Walk-on-spheres shell; `None` means `1e-4 × bbox diagonal`.
    pub epsilon: Option<f64>,
    pub n_walks: usize,
    pub max_steps: usize,
    pub seed: u64,
    pub out: PathBuf,
    pub emit_svg: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            domain: "disc(1)".into(),
            data: "fourier_mode(3)".into(),
            fine_level: 8,
            k_range: (2, 8),
            tol: 1e-10,
            epsilon: None,
            n_walks: 100_000,
            max_steps: 10_000,
            seed: 42,
            out: PathBuf::from("out"),
            emit_svg: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    /// 1-based line, or 0 for errors that concern the whole file.
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "config: {}", self.message)
        } else {
            write!(f, "config line {}: {}", self.line, self.message)
        }
    }
}

fn unquote(value: &str) -> &str {
    value
        .strip_prefix('"')
        .and_then(|v| v.strip_suffix('"'))
        .unwrap_or(value)
}

impl RunConfig {
    pub fn levels(&self) -> RangeInclusive<u32> {
        self.k_range.0..=self.k_range.1
    }

    /// Walk-on-spheres settings for `domain`, resolving the automatic shell.
    pub fn wos_config(&self, domain: &wienerlab_core::Domain) -> WosConfig {
        let base = WosConfig::for_domain(domain);
        WosConfig {
            epsilon: self.epsilon.unwrap_or(base.epsilon),
            max_steps: self.max_steps,
            n_walks: self.n_walks,
            seed: self.seed,
        }
    }

    /// Parses and validates `text`, reporting every problem found.
    pub fn parse(text: &str) -> Result<RunConfig, Vec<ConfigError>> {
        let mut cfg = RunConfig::default();
        let mut errors = Vec::new();
        let mut k_range_line = None;
        let mut seen = std::collections::HashMap::new();

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let mut err = |message: String| errors.push(ConfigError { line, message });
            let Some((key, value)) = content.split_once('=') else {
                err(format!("expected `key = value`, got `{content}`"));
                continue;
            };
            let (key, value) = (key.trim(), unquote(value.trim()));
            if let Some(prev) = seen.insert(key.to_string(), line) {
                err(format!("`{key}` already set on line {prev}"));
                continue;
            }
            macro_rules! number {
                ($ty:ty) => {
                    match value.parse::<$ty>() {
                        Ok(v) => Some(v),
                        Err(_) => {
                            err(format!("`{key}` expects a number, got `{value}`"));
                            None
                        }
                    }
                };
            }
            match key {
                "domain" => match builtin_domain(value) {
                    Ok(_) => cfg.domain = value.to_string(),
                    Err(e) => err(e.to_string()),
                },
                "data" => cfg.data = value.to_string(),
                "K" => {
                    if let Some(k) = number!(u32) {
                        if k < 2 {
                            err("K must be ≥ 2".into());
                        } else if k > MAX_LEVEL {
                            err(format!("K must be ≤ {MAX_LEVEL}"));
                        } else {
                            cfg.fine_level = k;
                        }
                    }
                }
                "k_range" => match value.split_once("..") {
                    Some((a, b)) => match (a.trim().parse::<u32>(), b.trim().parse::<u32>()) {
                        (Ok(a), Ok(b)) if a >= 1 && a <= b => {
                            cfg.k_range = (a, b);
                            k_range_line = Some(line);
                        }
                        (Ok(_), Ok(_)) => err(format!("k_range `{value}` must satisfy 1 ≤ first ≤ last")),
                        _ => err(format!("k_range expects `first..last`, got `{value}`")),
                    },
                    None => err(format!("k_range expects `first..last`, got `{value}`")),
                },
                "tol" => {
                    if let Some(t) = number!(f64) {
                        if t > 0.0 && t < 1.0 {
                            cfg.tol = t;
                        } else {
                            err(format!("tol must lie in (0, 1), got {t}"));
                        }
                    }
                }
                "epsilon" => {
                    if value == "auto" {
                        cfg.epsilon = None;
                    } else if let Some(e) = number!(f64) {
                        if e > 0.0 && e.is_finite() {
                            cfg.epsilon = Some(e);
                        } else {
                            err(format!("epsilon must be positive, got {e}"));
                        }
                    }
                }
                "n_walks" => {
                    if let Some(n) = number!(usize) {
                        if n >= 1 {
                            cfg.n_walks = n;
                        } else {
                            err("n_walks must be ≥ 1".into());
                        }
                    }
                }
                "max_steps" => {
                    if let Some(n) = number!(usize) {
                        if n >= 1 {
                            cfg.max_steps = n;
                        } else {
                            err("max_steps must be ≥ 1".into());
                        }
                    }
                }
                "seed" => {
                    if let Some(s) = number!(u64) {
                        cfg.seed = s;
                    }
                }
                "out" => cfg.out = PathBuf::from(value),
                "emit_svg" => match value {
                    "true" => cfg.emit_svg = true,
                    "false" => cfg.emit_svg = false,
                    _ => err(format!("emit_svg expects true or false, got `{value}`")),
                },
                _ => err(format!("unknown key `{key}`")),
            }
        }

        match k_range_line {
            None => cfg.k_range = (cfg.k_range.0.min(cfg.fine_level), cfg.fine_level),
            Some(line) if cfg.k_range.1 > cfg.fine_level => errors.push(ConfigError {
                line,
                message: format!("k_range ends above K = {}", cfg.fine_level),
            }),
            Some(_) => {}
        }
        if let Ok(domain) = builtin_domain(&cfg.domain) {
            if let Err(e) = builtin_data(&cfg.data, &domain) {
                let line = seen.get("data").copied().unwrap_or(0);
                errors.push(ConfigError {
                    line,
                    message: e.to_string(),
                });
            }
        }

        if errors.is_empty() {
            Ok(cfg)
        } else {
            Err(errors)
        }
    }

    /// Renders every key; `parse(render(c)) == c`.
    pub fn render(&self) -> String {
        let epsilon = self.epsilon.map_or_else(|| "auto".to_string(), |e| format!("{e:e}"));
        format!(
            "domain = \"{}\"\ndata = \"{}\"\nK = {}\nk_range = {}..{}\ntol = {:e}\nepsilon = {}\n\
             n_walks = {}\nmax_steps = {}\nseed = {}\nout = \"{}\"\nemit_svg = {}\n",
            self.domain,
            self.data,
            self.fine_level,
            self.k_range.0,
            self.k_range.1,
            self.tol,
            epsilon,
            self.n_walks,
            self.max_steps,
            self.seed,
            self.out.display(),
            self.emit_svg,
        )
    }
}
