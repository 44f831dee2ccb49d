//! Runtime sweeps of the star solver and the brute-force oracle on random
//! distance-hereditary graphs.

use crate::dh::{random_dh, GrowthWeights};
use crate::dh_star::solve_star;
use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, VertexId};
use crate::oracle::{vertex_minor_bruteforce, BruteOptions};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::time::{Duration, Instant};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    DhStar,
    Brute,
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchRecord {
    pub algorithm: Algorithm,
    pub n: usize,
    pub trials: usize,
    pub median_ms: f64,
    pub mean_ms: f64,
    pub max_ms: f64,
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub algorithm: Algorithm,
    pub sizes: Vec<usize>,
    pub trials: usize,
    pub targets: usize,
    pub seed: u64,
    pub threads: usize,
}

/// Graph and target set for one trial, fixed by the seed, size and index.
pub fn instance(seed: u64, n: usize, trial: usize, k: usize) -> (LabeledGraph, Vec<VertexId>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64).rotate_left(32) ^ trial as u64);
    let (g, _) = random_dh(n, &mut rng, GrowthWeights::default());
    let mut t = g.vertices().to_vec();
    t.shuffle(&mut rng);
    t.truncate(k.min(n));
    t.sort();
    (g, t)
}

fn run_one(alg: Algorithm, g: &LabeledGraph, t: &[VertexId]) -> Result<Duration> {
    let start = Instant::now();
    match alg {
        Algorithm::DhStar => {
            solve_star(g, t)?;
        }
        Algorithm::Brute => {
            let star = LabeledGraph::star(t[0].clone(), t.iter().cloned());
            vertex_minor_bruteforce(g, &star, &BruteOptions { budget: u64::MAX, ..Default::default() })?;
        }
    }
    Ok(start.elapsed())
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

pub fn record(alg: Algorithm, n: usize, mut times: Vec<Duration>) -> BenchRecord {
    times.sort();
    let k = times.len();
    let median = if k % 2 == 1 { ms(times[k / 2]) } else { (ms(times[k / 2 - 1]) + ms(times[k / 2])) / 2.0 };
    BenchRecord {
        algorithm: alg,
        n,
        trials: k,
        median_ms: median,
        mean_ms: times.iter().map(|&d| ms(d)).sum::<f64>() / k as f64,
        max_ms: times.last().map_or(0.0, |&d| ms(d)),
    }
}

/// Times one size. Trials are split across `threads` workers; each trial is
/// timed on its own.
pub fn bench_size(cfg: &BenchConfig, n: usize) -> Result<BenchRecord> {
    if cfg.trials == 0 {
        return Err(Error::InvalidTarget("need at least one trial".into()));
    }
    let threads = cfg.threads.clamp(1, cfg.trials);
    let times: Vec<Result<Duration>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..threads)
            .map(|w| {
                s.spawn(move || {
                    (w..cfg.trials)
                        .step_by(threads)
                        .map(|i| {
                            let (g, t) = instance(cfg.seed, n, i, cfg.targets);
                            run_one(cfg.algorithm, &g, &t)
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("bench worker panicked")).collect()
    });
    let times = times.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(record(cfg.algorithm, n, times))
}

pub fn bench(cfg: &BenchConfig) -> Result<Vec<BenchRecord>> {
    cfg.sizes.iter().map(|&n| bench_size(cfg, n)).collect()
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_a_cubic_is_three() {
        let pts: Vec<(f64, f64)> = [10.0, 20.0, 40.0, 80.0].iter().map(|&x: &f64| (x, 0.5 * x.powi(3))).collect();
        assert!((loglog_slope(&pts) - 3.0).abs() < 1e-9);
    }

    #[test]
    fn instances_are_reproducible() {
        assert_eq!(instance(7, 20, 3, 4), instance(7, 20, 3, 4));
        assert_ne!(instance(7, 20, 3, 4).0, instance(8, 20, 3, 4).0);
    }

    #[test]
    fn median_of_even_count() {
        let r = record(Algorithm::DhStar, 5, [1, 2, 3, 10].iter().map(|&m| Duration::from_millis(m)).collect());
        assert_eq!(r.median_ms, 2.5);
        assert_eq!(r.max_ms, 10.0);
    }
}
