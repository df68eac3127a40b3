//! Seeded randomness.
//!
//! Every stochastic operator draws through [`RandomSource`], so tests can swap
//! the seeded generator for [`FixedDraws`] and trace operator arithmetic by
//! hand.
//!
//! The seeded stream is ChaCha8 (`rand_chacha`), whose output is value-stable
//! across releases. Uniforms take the top 53 bits of a `u64`; normals use the
//! Box–Muller transform with the sine branch cached for the following call.
//! Neither transform depends on a third-party distribution implementation, so
//! a seed pins the whole stream.

use std::collections::VecDeque;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::kernels::{mantegna_step, LevyParams};

/// A stream of scalar random draws.
pub trait RandomSource {
    /// Uniform real in `[0, 1)`.
    fn uniform(&mut self) -> f64;

    /// Standard normal.
    fn normal(&mut self) -> f64;

    /// One Mantegna Lévy step with the given tail exponent.
    fn levy(&mut self, params: &LevyParams) -> f64 {
        let u = self.normal() * params.sigma_u();
        let v = self.normal();
        mantegna_step(u, v, params.beta())
    }

    /// Uniform index in `0..n`. `n` must be positive.
    fn index(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        ((self.uniform() * n as f64) as usize).min(n - 1)
    }
}

impl<R: RandomSource + ?Sized> RandomSource for &mut R {
    fn uniform(&mut self) -> f64 {
        (**self).uniform()
    }
    fn normal(&mut self) -> f64 {
        (**self).normal()
    }
    fn levy(&mut self, params: &LevyParams) -> f64 {
        (**self).levy(params)
    }
    fn index(&mut self, n: usize) -> usize {
        (**self).index(n)
    }
}

/// Deterministic generator keyed by a 64-bit seed.
#[derive(Debug, Clone)]
pub struct SeededRng {
    inner: ChaCha8Rng,
    spare_normal: Option<f64>,
}

/// Shorthand for [`SeededRng::new`].
pub fn seeded_rng(seed: u64) -> SeededRng {
    SeededRng::new(seed)
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        Self { inner: ChaCha8Rng::seed_from_u64(seed), spare_normal: None }
    }
}

impl RandomSource for SeededRng {
    fn uniform(&mut self) -> f64 {
        (self.inner.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    fn normal(&mut self) -> f64 {
        if let Some(z) = self.spare_normal.take() {
            return z;
        }
        // 1 - U lies in (0, 1], keeping the logarithm finite.
        let u1 = 1.0 - self.uniform();
        let u2 = self.uniform();
        let radius = (-2.0 * u1.ln()).sqrt();
        let (s, c) = (std::f64::consts::TAU * u2).sin_cos();
        self.spare_normal = Some(radius * s);
        radius * c
    }
}

/// A source that returns the same value for every draw of each kind.
///
/// Setting `uniform = 0.5`, `normal = 1.0` and so on lets a test reproduce an
/// operator's arithmetic by hand. Index draws are taken from `uniform` like the
/// seeded generator does.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedDraws {
    pub uniform: f64,
    pub normal: f64,
    pub levy: f64,
}

impl FixedDraws {
    pub fn new(uniform: f64, normal: f64, levy: f64) -> Self {
        Self { uniform, normal, levy }
    }

    /// Every draw is zero.
    pub fn zeros() -> Self {
        Self::new(0.0, 0.0, 0.0)
    }
}

impl RandomSource for FixedDraws {
    fn uniform(&mut self) -> f64 {
        self.uniform
    }
    fn normal(&mut self) -> f64 {
        self.normal
    }
    fn levy(&mut self, _params: &LevyParams) -> f64 {
        self.levy
    }
}

/// A source that replays queued values, falling back to a constant once a
/// queue runs dry. Useful for steering a single branch of an operator.
#[derive(Debug, Clone, Default)]
pub struct ScriptedDraws {
    pub uniforms: VecDeque<f64>,
    pub normals: VecDeque<f64>,
    pub levys: VecDeque<f64>,
    pub fallback: f64,
}

impl ScriptedDraws {
    pub fn new(uniforms: &[f64], normals: &[f64], levys: &[f64], fallback: f64) -> Self {
        Self {
            uniforms: uniforms.iter().copied().collect(),
            normals: normals.iter().copied().collect(),
            levys: levys.iter().copied().collect(),
            fallback,
        }
    }
}

impl RandomSource for ScriptedDraws {
    fn uniform(&mut self) -> f64 {
        self.uniforms.pop_front().unwrap_or(self.fallback)
    }
    fn normal(&mut self) -> f64 {
        self.normals.pop_front().unwrap_or(self.fallback)
    }
    fn levy(&mut self, _params: &LevyParams) -> f64 {
        self.levys.pop_front().unwrap_or(self.fallback)
    }
}
