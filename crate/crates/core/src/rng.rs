//! Portable, seedable random stream.
//!
//! The generator is ChaCha20 (`rand_chacha::ChaCha20Rng`). The 32-byte key
//! is the 64-bit seed in little-endian order followed by 24 zero bytes, and
//! the ChaCha stream id selects an independent sub-stream. Uniform doubles
//! are `(next_u64 >> 11) * 2^-53`, where `next_u64` concatenates two
//! consecutive 32-bit output words, low word first. Standard normals come in
//! pairs from Box-Muller on two consecutive uniforms `u1, u2`:
//! `r = sqrt(-2 ln(1 - u1))`, `(r cos 2 pi u2, r sin 2 pi u2)`.
//!
//! Any implementation following these rules reproduces the exact sample
//! sequence of a campaign.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};

#[derive(Debug, Clone)]
pub struct PortableRng {
    inner: ChaCha20Rng,
}

impl PortableRng {
    pub fn new(seed: u64) -> Self {
        Self::with_stream(seed, 0)
    }

    pub fn with_stream(seed: u64, stream: u64) -> Self {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&seed.to_le_bytes());
        let mut inner = ChaCha20Rng::from_seed(key);
        inner.set_stream(stream);
        Self { inner }
    }

    /// Stream reserved for sample `sample_id` of dimension `dim`.
    pub fn for_sample(seed: u64, dim: usize, sample_id: u64) -> Self {
        Self::with_stream(seed, ((dim as u64) << 40) | sample_id)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform integer in `0..n` by rejection, `n > 0`.
    pub fn below(&mut self, n: usize) -> usize {
        assert!(n > 0);
        let n = n as u64;
        let zone = u64::MAX - (u64::MAX % n);
        loop {
            let x = self.next_u64();
            if x < zone {
                return (x % n) as usize;
            }
        }
    }

    pub fn normal_pair(&mut self) -> (f64, f64) {
        let u1 = 1.0 - self.uniform();
        let u2 = self.uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        let (s, c) = (TAU * u2).sin_cos();
        (r * c, r * s)
    }

    /// Standard complex Gaussian with independent N(0, 1) real and imaginary parts.
    pub fn complex_normal(&mut self) -> Complex64 {
        let (re, im) = self.normal_pair();
        Complex64::new(re, im)
    }

    /// Fisher-Yates shuffle of `0..n`.
    pub fn permutation(&mut self, n: usize) -> Vec<usize> {
        let mut p: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = self.below(i + 1);
            p.swap(i, j);
        }
        p
    }
}
