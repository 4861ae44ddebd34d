use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{word_to_permutation, Permutation, ShuffleSpec};

/// ChaCha8 generator for `(seed, stream)`. Distinct streams of one seed are
/// independent, so work can be split across threads without changing the
/// result.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

enum Selector {
    /// Cumulative numerators over a common denominator that fits in `u64`.
    Exact {
        denom: u64,
        cumulative: Vec<u64>,
    },
    Float {
        cumulative: Vec<f64>,
    },
}

/// Draws from a shuffle without rejection: pick `L` with probability `p_L`,
/// then a uniform word with `μ_k` copies of letter `k` decides which values
/// fill block `k`.
pub struct ShuffleSampler {
    n: usize,
    selector: Selector,
    blocks: Vec<Vec<usize>>,
    templates: Vec<Vec<usize>>,
}

impl ShuffleSampler {
    pub fn new(spec: &ShuffleSpec) -> Self {
        let denom = spec
            .weights()
            .iter()
            .fold(BigInt::one(), |acc, (_, p)| acc.lcm(p.denom()));
        let selector = match denom.to_u64() {
            Some(d) => {
                let mut acc = 0u64;
                let cumulative = spec
                    .weights()
                    .iter()
                    .map(|(_, p)| {
                        acc += (p.numer() * (&denom / p.denom()))
                            .to_u64()
                            .expect("numerator below denominator");
                        acc
                    })
                    .collect();
                Selector::Exact {
                    denom: d,
                    cumulative,
                }
            }
            None => {
                let mut acc = 0.0;
                let cumulative = spec
                    .weights()
                    .iter()
                    .map(|(_, p)| {
                        acc += crate::scalar::ratio_to_f64(p);
                        acc
                    })
                    .collect();
                Selector::Float { cumulative }
            }
        };
        let blocks: Vec<Vec<usize>> = spec
            .weights()
            .iter()
            .map(|(rs, _)| rs.composition().parts().to_vec())
            .collect();
        let templates = blocks
            .iter()
            .map(|b| {
                b.iter()
                    .enumerate()
                    .flat_map(|(k, &size)| std::iter::repeat_n(k, size))
                    .collect()
            })
            .collect();
        ShuffleSampler {
            n: spec.n(),
            selector,
            blocks,
            templates,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn choose<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        match &self.selector {
            Selector::Exact { denom, cumulative } => {
                let u = rng.random_range(0..*denom);
                cumulative
                    .iter()
                    .position(|&c| u < c)
                    .expect("cumulative ends at denominator")
            }
            Selector::Float { cumulative } => {
                let u = rng.random::<f64>() * cumulative.last().copied().unwrap_or(1.0);
                cumulative
                    .iter()
                    .position(|&c| u < c)
                    .unwrap_or(cumulative.len() - 1)
            }
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let which = self.choose(rng);
        let mut word = self.templates[which].clone();
        word.shuffle(rng);
        word_to_permutation(&self.blocks[which], &word)
    }

    /// Distribution sample of `g_1 ⋯ g_r`.
    pub fn sample_product<R: Rng + ?Sized>(&self, rng: &mut R, r: u32) -> Permutation {
        let mut g = Permutation::identity(self.n);
        for _ in 0..r {
            g = g.compose(&self.sample(rng));
        }
        g
    }
}
