//! Uniform measure on tilings that agree with a given one outside a ball.
//!
//! A matched edge is frozen when both triangle centroids lie at distance at
//! least `R` from the origin face centre; edges crossing the circle stay
//! free. A face moves only if all six of its triangles are free. Every other
//! face keeps the height of the frozen tiling, pinned at the reference face.

use std::sync::Arc;

use hexlattice::{extremal_heights, heights, vertex_dist_sq, Color, DimerConfig, HexDomain, HexError, Rational};
use rand::Rng;

use crate::cftp::{to_i32, Cftp};
use crate::error::{Result, SamplerError};
use crate::state::{matching_from_heights, FlipTable};

/// Radius and the tiling whose restriction outside the ball is frozen.
#[derive(Clone, Debug, PartialEq)]
pub struct ConditionalSpec {
    radius_sq: Rational,
    frozen: DimerConfig,
}

impl ConditionalSpec {
    pub fn new(radius: f64, frozen: DimerConfig) -> Result<ConditionalSpec> {
        if !radius.is_finite() || radius <= 0.0 {
            return Err(SamplerError::NonPositiveRadius(radius));
        }
        let radius_sq = Rational::approximate_float(radius * radius).ok_or(SamplerError::NonPositiveRadius(radius))?;
        ConditionalSpec::with_radius_sq(radius_sq, frozen)
    }

    pub fn with_radius_sq(radius_sq: Rational, frozen: DimerConfig) -> Result<ConditionalSpec> {
        if radius_sq <= Rational::from_integer(0) {
            return Err(SamplerError::NonPositiveRadius(0.0));
        }
        Ok(ConditionalSpec { radius_sq, frozen })
    }

    pub fn radius_sq(&self) -> Rational {
        self.radius_sq
    }

    pub fn radius(&self) -> f64 {
        (*self.radius_sq.numer() as f64 / *self.radius_sq.denom() as f64).sqrt()
    }

    pub fn frozen(&self) -> &DimerConfig {
        &self.frozen
    }

    pub fn domain(&self) -> &Arc<HexDomain> {
        self.frozen.domain()
    }
}

/// Precomputed sandwich for repeated conditional sampling.
#[derive(Clone, Debug)]
pub struct ConditionalRegion {
    cftp: Cftp,
    free: Vec<bool>,
    origin: usize,
}

impl ConditionalRegion {
    pub fn new(spec: &ConditionalSpec) -> Result<ConditionalRegion> {
        let m = &spec.frozen;
        let d = m.domain();
        let o = d.origin();
        let r2 = spec.radius_sq;
        let mut frozen_white = vec![false; d.num_whites()];
        let mut frozen_black = vec![false; d.num_blacks()];
        for e in m.edges() {
            let (w, b) = (e.white(), e.black());
            if vertex_dist_sq(o, w) >= r2 && vertex_dist_sq(o, b) >= r2 {
                frozen_white[d.white_index(w.u, w.v).expect("matched white")] = true;
                frozen_black[d.black_index(b.u, b.v).expect("matched black")] = true;
            }
        }
        let is_free_triangle = |s: usize, f: usize| {
            let t = d.face_at(f).sector(s);
            match t.color {
                Color::White => d.white_index(t.u, t.v).is_some_and(|i| !frozen_white[i]),
                Color::Black => d.black_index(t.u, t.v).is_some_and(|i| !frozen_black[i]),
            }
        };
        let free: Vec<bool> =
            (0..d.num_faces()).map(|f| d.is_interior(f) && (0..6).all(|s| is_free_triangle(s, f))).collect();
        let hm = heights(m, d.reference_face());
        let fixed: Vec<(usize, i64)> = (0..d.num_faces()).filter(|&f| !free[f]).map(|f| (f, hm[f])).collect();
        let ex = extremal_heights(d, &fixed, &free).map_err(|e| match e {
            HexError::Untileable(why) => SamplerError::NotCompletable(why),
            other => other.into(),
        })?;
        let moving = (0..d.num_faces()).filter(|&f| free[f] && ex.min[f] != ex.max[f]).collect();
        let table = FlipTable::new(d.clone(), moving);
        let cftp = Cftp::new(table, to_i32(&ex.min), to_i32(&ex.max));
        Ok(ConditionalRegion { cftp, free, origin: d.origin_index() })
    }

    pub fn domain(&self) -> &Arc<HexDomain> {
        self.cftp.domain()
    }

    /// Whether face `f` is resampled.
    pub fn is_free(&self, f: usize) -> bool {
        self.free[f]
    }

    pub fn num_free(&self) -> usize {
        self.free.iter().filter(|&&x| x).count()
    }

    /// Number of faces whose height actually varies across completions.
    pub fn num_moving(&self) -> usize {
        self.cftp.num_free()
    }

    pub fn sample_heights<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Vec<i32>> {
        self.cftp.sample_heights(rng)
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<DimerConfig> {
        let h = self.sample_heights(rng)?;
        Ok(matching_from_heights(self.domain(), &h))
    }

    /// Heights of a batch of independent exact samples.
    pub fn sample_heights_batch<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Vec<Vec<i32>>> {
        self.cftp.sample_heights_batch(rng)
    }

    /// Origin heights of `count` independent exact samples.
    pub fn sample_origin_heights<R: Rng + ?Sized>(&self, count: usize, rng: &mut R) -> Result<Vec<i64>> {
        let mut out = Vec::with_capacity(count);
        while out.len() < count {
            for h in self.sample_heights_batch(rng)? {
                if out.len() < count {
                    out.push(h[self.origin] as i64);
                }
            }
        }
        Ok(out)
    }

    /// Height at the origin face of one exact conditional sample.
    pub fn sample_origin_height<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<i64> {
        Ok(self.sample_heights(rng)?[self.origin] as i64)
    }
}

/// An exactly uniform completion of the frozen part of `spec`.
pub fn conditional_sample<R: Rng + ?Sized>(spec: &ConditionalSpec, rng: &mut R) -> Result<DimerConfig> {
    ConditionalRegion::new(spec)?.sample(rng)
}
