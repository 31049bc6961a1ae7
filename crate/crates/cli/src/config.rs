//! Plain key=value config files. Flags always win; the resolved values are
//! echoed into every output so a run is reproducible from its report alone.

use std::collections::BTreeMap;
use std::str::FromStr;

use anyhow::{bail, Context, Result};

#[derive(Debug, Default, Clone)]
pub struct Config {
    values: BTreeMap<String, String>,
}

impl Config {
    pub fn load(path: Option<&str>) -> Result<Self> {
        let mut values = BTreeMap::new();
        if let Some(path) = path {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading config file {path}"))?;
            for (lineno, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let Some((key, value)) = line.split_once('=') else {
                    bail!("{path}:{}: expected key=value, got `{line}`", lineno + 1);
                };
                values.insert(key.trim().to_string(), value.trim().to_string());
            }
        }
        Ok(Self { values })
    }

    /// flag value if present, else config value, else default
    pub fn resolve<T: FromStr + ToString>(
        &mut self,
        key: &str,
        flag: Option<T>,
        default: T,
    ) -> Result<T>
    where
        T::Err: std::fmt::Display,
    {
        let value = match flag {
            Some(v) => v,
            None => match self.values.get(key) {
                Some(raw) => raw
                    .parse::<T>()
                    .map_err(|e| anyhow::anyhow!("config key {key}={raw}: {e}"))?,
                None => default,
            },
        };
        self.values.insert(key.to_string(), value.to_string());
        Ok(value)
    }

    /// the fully resolved map, for embedding in reports
    pub fn resolved(&self) -> &BTreeMap<String, String> {
        &self.values
    }
}

pub fn parse_list<T: FromStr>(raw: &str) -> Result<Vec<T>>
where
    T::Err: std::fmt::Display,
{
    raw.split(',')
        .map(|s| {
            s.trim()
                .parse::<T>()
                .map_err(|e| anyhow::anyhow!("bad list entry `{s}`: {e}"))
        })
        .collect()
}
