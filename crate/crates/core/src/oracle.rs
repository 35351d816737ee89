//! Independent ground truth: brute-force word enumeration and Monte Carlo
//! survival simulation.
//!
//! The counter enumerates words one by one and scans each for forbidden
//! blocks; no transition-matrix or recurrence shortcut is taken, which is
//! the point — it is the reference the fast pipelines are checked against.
//! The simulator draws symbol streams from the maximal-entropy (Parry)
//! Markov chain of the ambient shift rather than iterating floating-point
//! orbits, which collapse to machine artifacts within a few dozen steps.
//! Each sample owns a counter-derived RNG stream, so runs are reproducible
//! for a fixed seed regardless of evaluation order.

use crate::shift::SubshiftSpec;
use crate::spectral;
use crate::words::WordSet;
use crate::{Error, Result};
use rand::distributions::{Distribution, Uniform};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Default ceiling on `q^k` for brute-force enumeration.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 100_000_000;

/// Exact number of length-`k` words containing no word of `forbidden`, by
/// plain enumeration of all `q^k` words.
pub fn count_avoiding_words(q: u32, forbidden: &WordSet, k: usize, budget: u64) -> Result<u64> {
    if forbidden.q() != q {
        return Err(Error::AlphabetMismatch {
            expected: q,
            found: forbidden.q(),
        });
    }
    let total = (q as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if total > u128::from(budget) {
        return Err(Error::EnumerationBudget {
            required: total,
            budget,
        });
    }
    if forbidden.is_empty() {
        return Ok(total as u64);
    }
    // one lookup table per distinct forbidden length; words longer than k
    // cannot occur and need no table
    let mut lengths: Vec<usize> = forbidden
        .iter()
        .map(|w| w.len())
        .filter(|&n| n <= k)
        .collect();
    lengths.sort_unstable();
    lengths.dedup();
    let tables: Vec<(usize, u64, Vec<bool>)> = lengths
        .iter()
        .map(|&n| {
            let size = (q as u64).pow(n as u32); // n <= k, so within budget
            let mut table = vec![false; size as usize];
            for w in forbidden.iter().filter(|w| w.len() == n) {
                table[w.encode() as usize] = true;
            }
            (n, size, table)
        })
        .collect();
    let mut word = vec![0u32; k];
    let mut count = 0u64;
    loop {
        if !contains_forbidden(&word, &tables, q) {
            count += 1;
        }
        let mut pos = k;
        loop {
            if pos == 0 {
                return Ok(count);
            }
            pos -= 1;
            word[pos] += 1;
            if word[pos] < q {
                break;
            }
            word[pos] = 0;
        }
    }
}

fn contains_forbidden(word: &[u32], tables: &[(usize, u64, Vec<bool>)], q: u32) -> bool {
    for &(n, size, ref table) in tables {
        if n > word.len() {
            continue;
        }
        let mut code = 0u64;
        for (pos, &s) in word.iter().enumerate() {
            code = code * u64::from(q) + u64::from(s);
            if pos >= n {
                code %= size;
            }
            if pos + 1 >= n && table[code as usize] {
                return true;
            }
        }
    }
    false
}

/// Survivor counts after each step of an open-system simulation.
#[derive(Clone, Debug, PartialEq)]
pub struct SurvivalCurve {
    /// `counts[t]` = samples that have not yet entered the hole by step `t`.
    pub counts: Vec<u64>,
    pub samples: u64,
    pub seed: u64,
    pub hole_word_length: usize,
}

impl SurvivalCurve {
    pub fn fraction(&self, t: usize) -> f64 {
        self.counts[t] as f64 / self.samples as f64
    }

    pub fn fractions(&self) -> Vec<f64> {
        self.counts.iter().map(|&c| c as f64 / self.samples as f64).collect()
    }

    pub fn is_monotone(&self) -> bool {
        self.counts.windows(2).all(|w| w[1] <= w[0])
    }

    /// CSV with columns `step,survivors,fraction`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("step,survivors,fraction\n");
        for (t, &c) in self.counts.iter().enumerate() {
            out.push_str(&format!("{t},{c},{}\n", c as f64 / self.samples as f64));
        }
        out
    }
}

struct ParryChain {
    /// Cumulative initial distribution over states.
    initial: Vec<f64>,
    /// Cumulative transition rows.
    rows: Vec<Vec<f64>>,
    /// Symbol emitted on entering each state (last symbol of its block).
    emit: Vec<u32>,
    /// Symbols of the initial block per state.
    prefix: Vec<Vec<u32>>,
    /// Successor state for each (state, row slot) pair.
    succ: Vec<Vec<usize>>,
}

fn cumulative(weights: &[f64]) -> Vec<f64> {
    let total: f64 = weights.iter().sum();
    let mut acc = 0.0;
    weights
        .iter()
        .map(|w| {
            acc += w / total;
            acc
        })
        .collect()
}

fn pick(cum: &[f64], u: f64) -> usize {
    cum.partition_point(|&c| c < u).min(cum.len() - 1)
}

impl ParryChain {
    fn new(ambient: &SubshiftSpec, max_dim: usize) -> Result<Self> {
        let t = ambient.higher_block_matrix(max_dim)?;
        if !t.is_irreducible() {
            return Err(Error::ReducibleAmbient);
        }
        let pd = spectral::perron(&t)?;
        let dim = t.dim();
        let initial_w: Vec<f64> = (0..dim).map(|i| pd.left[i] * pd.right[i]).collect();
        let mut rows = Vec::with_capacity(dim);
        let mut succ = Vec::with_capacity(dim);
        for i in 0..dim {
            let mut weights = Vec::new();
            let mut states = Vec::new();
            for j in 0..dim {
                if t.entry(i, j) {
                    weights.push(pd.right[j] / (pd.lambda * pd.right[i]));
                    states.push(j);
                }
            }
            rows.push(cumulative(&weights));
            succ.push(states);
        }
        let emit = t
            .labels()
            .iter()
            .map(|w| *w.symbols().last().unwrap())
            .collect();
        let prefix = t.labels().iter().map(|w| w.symbols().to_vec()).collect();
        Ok(Self {
            initial: cumulative(&initial_w),
            rows,
            emit,
            prefix,
            succ,
        })
    }
}

/// Simulates survival of `samples` Parry-distributed points for `steps`
/// steps of the shift; a sample survives step `t` while no hole word has
/// appeared in its first `t + n - 1` emitted symbols (`n` the hole word
/// length). Bit-reproducible for a fixed seed.
pub fn simulate_survival(
    ambient: &SubshiftSpec,
    hole: &WordSet,
    samples: u64,
    steps: usize,
    seed: u64,
    max_dim: usize,
) -> Result<SurvivalCurve> {
    if hole.q() != ambient.q() {
        return Err(Error::AlphabetMismatch {
            expected: ambient.q(),
            found: hole.q(),
        });
    }
    let n = match hole.common_length() {
        Some(n) => n,
        None if hole.is_empty() => {
            return Ok(SurvivalCurve {
                counts: vec![samples; steps + 1],
                samples,
                seed,
                hole_word_length: 1,
            });
        }
        None => return Err(Error::UnequalWordLengths),
    };
    let q = ambient.q();
    let hole_size = (q as u128)
        .checked_pow(n as u32)
        .filter(|&s| s <= 1 << 31)
        .ok_or(Error::DimensionCap {
            required: usize::MAX,
            cap: 1 << 31,
        })? as u64;
    let mut hole_table = vec![false; hole_size as usize];
    for w in hole {
        hole_table[w.encode() as usize] = true;
    }
    let window_mod = hole_size;
    // deaths[d] = samples whose first failed step is d
    let mut deaths = vec![0u64; steps + 2];
    let full = ambient.is_full();
    let chain = if full { None } else { Some(ParryChain::new(ambient, max_dim)?) };
    let symbol_dist = Uniform::from(0..q);
    let uniform01 = Uniform::from(0.0f64..1.0);
    let total_symbols = steps + n - 1;
    for idx in 0..samples {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(idx);
        let mut code = 0u64;
        let mut emitted = 0usize;
        let mut died: Option<usize> = None;
        let mut state = 0usize;
        let mut pending: Vec<u32> = Vec::new();
        if let Some(chain) = &chain {
            state = pick(&chain.initial, uniform01.sample(&mut rng));
            pending = chain.prefix[state].clone();
            pending.reverse(); // pop from the back
        }
        while emitted < total_symbols {
            let s = if full {
                symbol_dist.sample(&mut rng)
            } else if let Some(s) = pending.pop() {
                s
            } else {
                let chain = chain.as_ref().unwrap();
                let slot = pick(&chain.rows[state], uniform01.sample(&mut rng));
                state = chain.succ[state][slot];
                chain.emit[state]
            };
            code = (code * u64::from(q) + u64::from(s)) % window_mod;
            emitted += 1;
            if emitted >= n && hole_table[code as usize] {
                // hole word ends at symbol `emitted`; first failed step:
                // t + n - 1 >= emitted  =>  t = emitted - n + 1
                died = Some(emitted - n + 1);
                break;
            }
        }
        match died {
            Some(d) if d <= steps => deaths[d] += 1,
            _ => {}
        }
    }
    let mut counts = Vec::with_capacity(steps + 1);
    let mut alive = samples;
    for t in 0..=steps {
        alive -= deaths[t];
        counts.push(alive);
    }
    Ok(SurvivalCurve {
        counts,
        samples,
        seed,
        hole_word_length: n,
    })
}

/// Least-squares slope of `-ln s_t` over the tail window (the last half of
/// the strictly positive counts), with its standard error.
pub fn fit_escape_rate(curve: &SurvivalCurve) -> Result<(f64, f64)> {
    let positive: Vec<(f64, f64)> = curve
        .counts
        .iter()
        .enumerate()
        .take_while(|(_, &c)| c > 0)
        .map(|(t, &c)| (t as f64, -(c as f64 / curve.samples as f64).ln()))
        .collect();
    let tail = &positive[positive.len() / 2..];
    if tail.len() < 10 {
        return Err(Error::CurveTooShort {
            have: tail.len(),
            need: 10,
        });
    }
    let n = tail.len() as f64;
    let mean_x = tail.iter().map(|(x, _)| x).sum::<f64>() / n;
    let mean_y = tail.iter().map(|(_, y)| y).sum::<f64>() / n;
    let sxx: f64 = tail.iter().map(|(x, _)| (x - mean_x).powi(2)).sum();
    let sxy: f64 = tail.iter().map(|(x, y)| (x - mean_x) * (y - mean_y)).sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ssr: f64 = tail
        .iter()
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    let stderr = (ssr / (n - 2.0) / sxx).sqrt();
    Ok((slope, stderr))
}
