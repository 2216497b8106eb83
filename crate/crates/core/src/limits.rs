use crate::error::{Error, Result};

/// Environment variable overriding [`Limits::max_rank`].
pub const MAX_RANK_ENV: &str = "SWAN_MAX_RANK";

pub const DEFAULT_MAX_RANK: usize = 20_000;

/// Ceiling on the free ℤ-rank of any single module a pipeline builds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_rank: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self { max_rank: DEFAULT_MAX_RANK }
    }
}

impl Limits {
    pub fn new(max_rank: usize) -> Self {
        Self { max_rank }
    }

    /// Reads `SWAN_MAX_RANK`; unset or unparsable values fall back to the default.
    pub fn from_env() -> Self {
        std::env::var(MAX_RANK_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map_or_else(Self::default, Self::new)
    }

    pub fn check(&self, what: impl Into<String>, size: usize) -> Result<()> {
        if size > self.max_rank {
            return Err(Error::ResourceLimit { what: what.into(), size, limit: self.max_rank });
        }
        Ok(())
    }
}
