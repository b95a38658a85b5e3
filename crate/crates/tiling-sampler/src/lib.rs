//! Samplers for uniform lozenge tilings: exhaustive enumeration, cube-flip
//! Glauber dynamics, monotone coupling from the past, and the conditional
//! law given the tiling outside a ball.

pub mod batch;
pub mod cftp;
pub mod conditional;
pub mod enumerate;
pub mod error;
pub mod glauber;
pub mod kernel;
pub mod registry;
pub mod rng;
pub mod spread;
pub mod state;

pub use cftp::{cftp_sample, Cftp};
pub use conditional::{conditional_sample, ConditionalRegion, ConditionalSpec};
pub use enumerate::enumerate_tilings;
pub use error::{Result, SamplerError};
pub use glauber::{admissible_flips, flip, glauber_sample, glauber_step, FlipSite, GlauberChain};
pub use registry::{CftpSampler, EnumerationSampler, GlauberSampler, SamplerRegistry, TilingSampler};
pub use rng::chain_rng;
pub use spread::{spread_out_statistic, SpreadOut, WindowRow};
pub use state::{heights_of, matching_from_heights, FlipTable};
