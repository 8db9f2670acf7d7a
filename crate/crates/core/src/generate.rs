//! Seeded random instances for benchmarks and cross-checks.
//!
//! Arguments are named `a1..an`. Ordered pairs `(i, j)` with `i != j` are
//! visited row by row, each becoming an attack with probability
//! `attack_probability`; then every argument gets a self-attack with
//! probability `self_attack_probability`. The stream is ChaCha8 seeded from
//! the 64-bit seed, so output is stable across platforms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::af::ArgumentationFramework;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomAf {
    pub n: usize,
    pub attack_probability: f64,
    pub self_attack_probability: f64,
    pub seed: u64,
}

impl RandomAf {
    pub fn new(n: usize, attack_probability: f64, seed: u64) -> Self {
        Self {
            n,
            attack_probability,
            self_attack_probability: 0.0,
            seed,
        }
    }

    pub fn with_self_attacks(mut self, probability: f64) -> Self {
        self.self_attack_probability = probability;
        self
    }

    pub fn build(&self) -> ArgumentationFramework {
        let p = self.attack_probability.clamp(0.0, 1.0);
        let q = self.self_attack_probability.clamp(0.0, 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let names = (1..=self.n).map(|i| format!("a{i}")).collect();
        let mut attacks = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j && rng.random_bool(p) {
                    attacks.push((i, j));
                }
            }
        }
        for i in 0..self.n {
            if rng.random_bool(q) {
                attacks.push((i, i));
            }
        }
        ArgumentationFramework::new(names, attacks)
    }

    /// The instance as apx text.
    pub fn to_apx(&self) -> String {
        self.build().to_apx()
    }
}
