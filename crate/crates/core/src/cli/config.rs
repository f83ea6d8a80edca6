//! Run configuration, optionally read from a TOML file.
//!
//! ```toml
//! max_group_order = 512
//! window = [-3, 3]
//! corpus_size = 200
//! seed = 0
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// Bound on the order of the closure of the Galois generators.
    pub max_group_order: usize,
    /// Tate degrees checked by `verify`, inclusive.
    pub window: [i32; 2],
    /// Number of random instances generated by `verify`.
    pub corpus_size: usize,
    pub seed: u64,
    /// Bounds for random instances.
    pub random_max_group_order: usize,
    pub random_max_rank: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_group_order: 512,
            window: [-3, 3],
            corpus_size: 200,
            seed: 0,
            random_max_group_order: 12,
            random_max_rank: 5,
        }
    }
}

impl Config {
    pub fn from_toml_str(s: &str) -> Result<Self> {
        let c: Config = toml::from_str(s).map_err(|e| Error::schema("config", e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if self.window[0] > self.window[1] {
            return Err(Error::schema("config.window", "lower end exceeds upper end"));
        }
        if self.max_group_order == 0 || self.random_max_group_order == 0 {
            return Err(Error::schema("config", "group order bounds must be positive"));
        }
        if self.random_max_rank == 0 {
            return Err(Error::schema("config.random_max_rank", "must be positive"));
        }
        Ok(())
    }

    /// Largest `|r|` the Tate engine is asked for.
    pub fn degree_cap(&self) -> i32 {
        self.window[0].abs().max(self.window[1].abs())
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> {
        self.window[0]..=self.window[1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_overrides() {
        assert_eq!(Config::from_toml_str("").unwrap(), Config::default());
        let c = Config::from_toml_str("seed = 7\nwindow = [-2, 2]").unwrap();
        assert_eq!((c.seed, c.degree_cap(), c.corpus_size), (7, 2, 200));
        assert!(Config::from_toml_str("window = [2, -2]").is_err());
        assert!(Config::from_toml_str("colour = 1").is_err());
    }
}
