//! Uniform random generation of closed paths by the recursive method.
//!
//! A backward dynamic program counts the valid completions of every
//! (remaining steps, level, last-step class) state; sampling then walks
//! forward, picking each step with probability proportional to the exact
//! completion count via inverse-CDF selection on big integers. No
//! floating point touches the distribution.
//!
//! Randomness comes from a seeded ChaCha20 stream, so sampled paths are
//! reproducible given (n, seed).

use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::path::{HeightDistribution, Path, PrefixClass, Step};

/// Identifier of the RNG algorithm used by [`seeded_rng`].
pub const RNG_ALGORITHM: &str = "chacha20";

/// The deterministic RNG stream for a committed seed.
pub fn seeded_rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

fn class_index(class: PrefixClass) -> usize {
    match class {
        PrefixClass::Empty => 0,
        PrefixClass::LastUp => 1,
        PrefixClass::LastColoredDown => 2,
        PrefixClass::LastRedDown => 3,
    }
}

/// Completion counts for every reachable sampling state at one semilength.
#[derive(Debug, Clone)]
pub struct CountTable {
    n: usize,
    levels: usize,
    counts: Vec<BigUint>,
}

impl CountTable {
    /// Fill the table by backward dynamic programming over the automaton.
    pub fn build(n: usize) -> CountTable {
        let steps = 2 * n;
        let levels = n + 1;
        let mut counts = vec![BigUint::zero(); (steps + 1) * levels * 4];
        let idx = |m: usize, level: usize, class: usize| (m * levels + level) * 4 + class;

        for class in 0..4 {
            counts[idx(0, 0, class)] = BigUint::one();
        }
        for m in 1..=steps {
            for level in 0..levels {
                for class_id in 0..4 {
                    let class = [
                        PrefixClass::Empty,
                        PrefixClass::LastUp,
                        PrefixClass::LastColoredDown,
                        PrefixClass::LastRedDown,
                    ][class_id];
                    let mut total = BigUint::zero();
                    for step in Step::ALL {
                        if let Some(next_level) = next_level(level, step, m, levels) {
                            if step.allowed_after(class) {
                                total += &counts
                                    [idx(m - 1, next_level, class_index(PrefixClass::after(step)))];
                            }
                        }
                    }
                    counts[idx(m, level, class_id)] = total;
                }
            }
        }
        CountTable { n, levels, counts }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn at(&self, m: usize, level: usize, class: PrefixClass) -> &BigUint {
        &self.counts[(m * self.levels + level) * 4 + class_index(class)]
    }

    /// Number of valid completions from a mid-path state.
    pub fn completions(&self, remaining: usize, level: usize, class: PrefixClass) -> BigUint {
        if level >= self.levels || remaining > 2 * self.n {
            return BigUint::zero();
        }
        self.at(remaining, level, class).clone()
    }

    /// Total number of closed paths of semilength n.
    pub fn total(&self) -> &BigUint {
        self.at(2 * self.n, 0, PrefixClass::Empty)
    }
}

fn next_level(level: usize, step: Step, remaining: usize, levels: usize) -> Option<usize> {
    let next = if step.is_down() {
        level.checked_sub(1)?
    } else {
        level + 1
    };
    // must stay reachable-from and able to return within remaining-1 steps
    (next < levels && next <= remaining - 1).then_some(next)
}

/// Draw one uniformly random closed path of semilength `table.n()`.
pub fn sample_path<R: Rng>(table: &CountTable, rng: &mut R) -> Path {
    let n = table.n();
    let mut steps = Vec::with_capacity(2 * n);
    let mut level = 0usize;
    let mut class = PrefixClass::Empty;
    for m in (1..=2 * n).rev() {
        let total = table.at(m, level, class);
        debug_assert!(!total.is_zero(), "sampling from a dead state");
        let mut draw = rng.gen_biguint_below(total);
        let mut chosen = None;
        for step in Step::ALL {
            if !step.allowed_after(class) {
                continue;
            }
            let Some(next) = next_level(level, step, m, table.levels) else {
                continue;
            };
            let weight = table.at(m - 1, next, PrefixClass::after(step));
            if &draw < weight {
                chosen = Some((step, next));
                break;
            }
            draw -= weight;
        }
        let (step, next) = chosen.expect("weights sum to the state total");
        steps.push(step);
        level = next;
        class = PrefixClass::after(step);
    }
    crate::path::validate_path(&steps).expect("sampled path is valid by construction")
}

/// Sample mean and standard error of the height over repeated draws.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeightStats {
    pub mean: f64,
    pub stderr: f64,
    pub trials: usize,
}

/// Empirical height statistics over `trials` seeded samples.
pub fn empirical_height_stats(table: &CountTable, trials: usize, seed: u64) -> HeightStats {
    assert!(trials >= 1);
    let mut rng = seeded_rng(seed);
    let mut sum = 0.0f64;
    let mut sum_sq = 0.0f64;
    for _ in 0..trials {
        let h = sample_path(table, &mut rng).height() as f64;
        sum += h;
        sum_sq += h * h;
    }
    let t = trials as f64;
    let mean = sum / t;
    let variance = if trials > 1 {
        ((sum_sq - t * mean * mean) / (t - 1.0)).max(0.0)
    } else {
        0.0
    };
    HeightStats {
        mean,
        stderr: (variance / t).sqrt(),
        trials,
    }
}

/// Histogram of sampled heights over `trials` seeded samples.
pub fn empirical_height_histogram(
    table: &CountTable,
    trials: usize,
    seed: u64,
) -> std::collections::BTreeMap<usize, u64> {
    let mut rng = seeded_rng(seed);
    let mut hist = std::collections::BTreeMap::new();
    for _ in 0..trials {
        *hist.entry(sample_path(table, &mut rng).height()).or_insert(0u64) += 1;
    }
    hist
}

/// Pearson chi-square statistic of an observed height histogram against
/// the exact distribution, with its degrees of freedom.
pub fn chi_square_statistic(
    observed: &std::collections::BTreeMap<usize, u64>,
    exact: &HeightDistribution,
    trials: usize,
) -> (f64, usize) {
    use num_bigint::BigInt;
    let total = BigInt::from(exact.total());
    let mut stat = 0.0;
    let mut categories = 0usize;
    for (&h, count) in exact.counts() {
        let p = crate::closed_form::rational_to_f64(&crate::series::Rat::new(
            BigInt::from(count.clone()),
            total.clone(),
        ));
        let expected = trials as f64 * p;
        let obs = observed.get(&h).copied().unwrap_or(0) as f64;
        stat += (obs - expected) * (obs - expected) / expected;
        categories += 1;
    }
    (stat, categories.saturating_sub(1))
}
