//! Samplers selectable by name.

use std::collections::BTreeMap;
use std::sync::Arc;

use hexlattice::{DimerConfig, HexDomain};
use rand::{Rng, RngCore};

use crate::cftp::cftp_sample;
use crate::enumerate::enumerate_tilings;
use crate::error::{Result, SamplerError};
use crate::glauber::glauber_sample;

pub trait TilingSampler: Send + Sync {
    fn name(&self) -> &str;
    fn sample(&self, d: &Arc<HexDomain>, rng: &mut dyn RngCore) -> Result<DimerConfig>;
}

/// Exact sampler by monotone coupling from the past.
pub struct CftpSampler;

impl TilingSampler for CftpSampler {
    fn name(&self) -> &str {
        "cftp"
    }

    fn sample(&self, d: &Arc<HexDomain>, rng: &mut dyn RngCore) -> Result<DimerConfig> {
        cftp_sample(d, rng)
    }
}

/// Fixed-length Glauber run from the minimal tiling.
pub struct GlauberSampler {
    pub sweeps: usize,
}

impl TilingSampler for GlauberSampler {
    fn name(&self) -> &str {
        "glauber"
    }

    fn sample(&self, d: &Arc<HexDomain>, rng: &mut dyn RngCore) -> Result<DimerConfig> {
        glauber_sample(d, self.sweeps, rng)
    }
}

/// Uniform pick from the full enumeration.
pub struct EnumerationSampler {
    pub cap: usize,
}

impl TilingSampler for EnumerationSampler {
    fn name(&self) -> &str {
        "enumerate"
    }

    fn sample(&self, d: &Arc<HexDomain>, rng: &mut dyn RngCore) -> Result<DimerConfig> {
        let mut all = enumerate_tilings(d, self.cap)?;
        if all.is_empty() {
            return Err(hexlattice::HexError::Untileable("no tilings".into()).into());
        }
        let i = rng.gen_range(0..all.len());
        Ok(all.swap_remove(i))
    }
}

#[derive(Default)]
pub struct SamplerRegistry {
    entries: BTreeMap<String, Box<dyn TilingSampler>>,
}

impl SamplerRegistry {
    pub fn new() -> SamplerRegistry {
        SamplerRegistry::default()
    }

    /// `cftp`, `glauber` (1000 sweeps) and `enumerate` (cap 10^6).
    pub fn with_defaults() -> SamplerRegistry {
        let mut r = SamplerRegistry::new();
        r.register(Box::new(CftpSampler));
        r.register(Box::new(GlauberSampler { sweeps: 1000 }));
        r.register(Box::new(EnumerationSampler { cap: 1_000_000 }));
        r
    }

    pub fn register(&mut self, sampler: Box<dyn TilingSampler>) {
        self.entries.insert(sampler.name().to_string(), sampler);
    }

    pub fn get(&self, name: &str) -> Result<&dyn TilingSampler> {
        self.entries.get(name).map(|b| b.as_ref()).ok_or_else(|| SamplerError::UnknownSampler(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }
}
