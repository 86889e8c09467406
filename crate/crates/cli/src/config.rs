//! Plain `key = value` configuration files. Blank lines and `#` comments are
//! ignored; command-line flags take precedence over everything here.

use std::path::Path;

use anyhow::{bail, Context, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Config {
    pub degree_bound: Option<u32>,
    pub gluing_bound: Option<u32>,
    pub weight: Option<u32>,
    pub trials: Option<u32>,
    pub seed: Option<u64>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Config> {
        let mut c = Config::default();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                bail!("config line {}: expected `key = value`", no + 1);
            };
            let (key, value) = (key.trim(), value.trim());
            let ctx = || format!("config line {}: bad value for `{key}`", no + 1);
            match key {
                "degree_bound" => c.degree_bound = Some(value.parse().with_context(ctx)?),
                "gluing_bound" => c.gluing_bound = Some(value.parse().with_context(ctx)?),
                "weight" => c.weight = Some(value.parse().with_context(ctx)?),
                "trials" => c.trials = Some(value.parse().with_context(ctx)?),
                "seed" => c.seed = Some(value.parse().with_context(ctx)?),
                other => bail!("config line {}: unknown key `{other}`", no + 1),
            }
        }
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Config::parse(&text)
    }
}
