//! key=value config files supplying defaults for the physics flags.
//!
//! Lines are `key = value`; `#` starts a comment; blank lines are
//! ignored. Keys match the long flag names (m, Q, lambda, Cm, beta, k,
//! l, n, case, C1, C2, C3). Explicit command-line flags always win.

use std::collections::HashMap;
use std::path::Path;

#[derive(Default)]
pub struct FileConfig {
    pub case: Option<u8>,
    pub n: Option<u32>,
    pub l: Option<i32>,
    floats: HashMap<String, f64>,
}

impl FileConfig {
    pub fn get(&self, key: &str) -> Option<f64> {
        self.floats.get(key).copied()
    }
}

const FLOAT_KEYS: &[&str] = &["m", "Q", "lambda", "Cm", "beta", "k", "C1", "C2", "C3"];

pub fn load(path: &Path) -> Result<FileConfig, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    let mut cfg = FileConfig::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let loc = || format!("{}:{}", path.display(), idx + 1);
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("{}: expected key = value, got {line:?}", loc()))?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "case" => {
                cfg.case = Some(
                    value
                        .parse()
                        .map_err(|_| format!("{}: bad case {value:?}", loc()))?,
                )
            }
            "n" => {
                cfg.n = Some(
                    value
                        .parse()
                        .map_err(|_| format!("{}: bad n {value:?}", loc()))?,
                )
            }
            "l" => {
                cfg.l = Some(
                    value
                        .parse()
                        .map_err(|_| format!("{}: bad l {value:?}", loc()))?,
                )
            }
            _ if FLOAT_KEYS.contains(&key) => {
                let v: f64 = value
                    .parse()
                    .map_err(|_| format!("{}: bad number {value:?} for {key}", loc()))?;
                cfg.floats.insert(key.to_string(), v);
            }
            _ => return Err(format!("{}: unknown key {key:?}", loc())),
        }
    }
    Ok(cfg)
}
