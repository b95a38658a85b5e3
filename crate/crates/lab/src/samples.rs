//! Sets of tilings of one domain, stored as edge indices.

use std::sync::Arc;

use hexlattice::{DimerConfig, DomainDoc, HexDomain};
use serde::{Deserialize, Serialize};
use tiling_sampler::Cftp;

use crate::error::{LabError, Result};
use crate::pool::{chunks, ordered_map, task_rng};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleSet {
    pub domain: DomainDoc,
    pub seed: u64,
    /// Matched edges of each tiling, as indices into the domain's edge list.
    pub tilings: Vec<Vec<usize>>,
}

impl SampleSet {
    pub fn from_configs(d: &HexDomain, seed: u64, ms: &[DimerConfig]) -> SampleSet {
        SampleSet { domain: d.to_doc(), seed, tilings: ms.iter().map(|m| m.edge_indices()).collect() }
    }

    pub fn configs(&self) -> Result<Vec<DimerConfig>> {
        let d = Arc::new(HexDomain::from_doc(&self.domain)?);
        self.tilings.iter().map(|t| Ok(DimerConfig::from_edge_indices(d.clone(), t)?)).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data")
    }

    pub fn from_json(s: &str) -> Result<SampleSet> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Parses `hex:a,b,c`.
pub fn parse_domain(s: &str) -> Result<HexDomain> {
    let bad = || LabError::Config(format!("expected hex:a,b,c, got {s:?}"));
    let sides = s.strip_prefix("hex:").ok_or_else(bad)?;
    let v: Vec<i64> = sides.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?;
    match v[..] {
        [a, b, c] => Ok(HexDomain::hexagon(a, b, c)?),
        _ => Err(bad()),
    }
}

/// `count` exact uniform tilings, reproducible for any worker count.
pub fn sample_set(d: &HexDomain, count: usize, seed: u64, workers: usize) -> Result<SampleSet> {
    let cftp = Cftp::for_domain(&Arc::new(d.clone()))?;
    let sizes = chunks(count, 16);
    let batches = ordered_map(workers, sizes.len(), |t| {
        let mut rng = task_rng(seed, 0, t as u64);
        Ok(cftp.sample_many(sizes[t], &mut rng)?)
    })?;
    let ms: Vec<DimerConfig> = batches.into_iter().flatten().collect();
    Ok(SampleSet::from_configs(d, seed, &ms))
}
