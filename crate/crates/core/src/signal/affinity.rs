//! Affinity propagation over channels, used to keep a representative subset
//! of a high-dimensional wave.

use crate::error::{Error, Result};
use crate::signal::Wave;
use crate::tensor::Array2;

/// Iterations the exemplar set must stay unchanged before stopping.
pub const CONVERGENCE_ITERATIONS: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AffinityConfig {
    pub damping: f64,
    pub max_iter: usize,
    /// Diagonal of the similarity matrix. `None` uses the median off-diagonal
    /// similarity.
    pub preference: Option<f64>,
    /// Stop once the exemplar set is unchanged for this many iterations.
    /// Short windows stop on transient exemplar sets under heavy damping.
    pub convergence_iter: usize,
}

impl Default for AffinityConfig {
    fn default() -> Self {
        Self {
            damping: 0.9,
            max_iter: 500,
            preference: None,
            convergence_iter: CONVERGENCE_ITERATIONS,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterResult {
    /// Exemplar indices, ascending.
    pub exemplars: Vec<usize>,
    /// `assignment[i]` is the exemplar index point `i` belongs to.
    pub assignment: Vec<usize>,
    pub iterations: usize,
    pub converged: bool,
}

impl ClusterResult {
    pub fn cluster_count(&self) -> usize {
        self.exemplars.len()
    }
}

/// Negative mean squared distance between every pair of channels.
pub fn channel_similarity(wave: &Wave) -> Array2 {
    let d = wave.channels();
    let mut s = Array2::zeros(d, d);
    for i in 0..d {
        for j in (i + 1)..d {
            let msd = wave
                .channel(i)
                .iter()
                .zip(wave.channel(j))
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                / wave.steps() as f64;
            s.set(i, j, -msd);
            s.set(j, i, -msd);
        }
    }
    s
}

/// Median of the off-diagonal entries.
pub fn median_preference(similarity: &Array2) -> f64 {
    let n = similarity.rows();
    let mut off: Vec<f64> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .map(|(i, j)| similarity.get(i, j))
        .collect();
    if off.is_empty() {
        return 0.0;
    }
    off.sort_by(f64::total_cmp);
    let m = off.len() / 2;
    if off.len().is_multiple_of(2) {
        0.5 * (off[m - 1] + off[m])
    } else {
        off[m]
    }
}

pub fn affinity_propagation(similarity: &Array2, config: &AffinityConfig) -> Result<ClusterResult> {
    let n = similarity.rows();
    if similarity.cols() != n {
        return Err(Error::ShapeMismatch {
            op: "affinity-propagation",
            detail: format!("similarity must be square, got {n}x{}", similarity.cols()),
        });
    }
    if n == 0 {
        return Err(Error::InvalidArgument("no points to cluster".into()));
    }
    if config.convergence_iter == 0 {
        return Err(Error::InvalidArgument("convergence_iter must be at least 1".into()));
    }
    if !(0.5..1.0).contains(&config.damping) {
        return Err(Error::InvalidArgument(format!(
            "damping {} outside [0.5, 1)",
            config.damping
        )));
    }
    if n == 1 {
        return Ok(ClusterResult {
            exemplars: vec![0],
            assignment: vec![0],
            iterations: 0,
            converged: true,
        });
    }

    let preference = config.preference.unwrap_or_else(|| median_preference(similarity));
    let mut s = similarity.clone();
    for i in 0..n {
        s.set(i, i, preference);
    }

    let lambda = config.damping;
    let mut r = Array2::zeros(n, n);
    let mut a = Array2::zeros(n, n);
    let mut exemplars: Vec<usize> = Vec::new();
    let mut stable = 0;
    let mut iterations = 0;
    let mut converged = false;

    for it in 0..config.max_iter {
        iterations = it + 1;

        // Responsibilities.
        for i in 0..n {
            let (mut best, mut best_k, mut second) = (f64::NEG_INFINITY, 0, f64::NEG_INFINITY);
            for k in 0..n {
                let v = a.get(i, k) + s.get(i, k);
                if v > best {
                    second = best;
                    best = v;
                    best_k = k;
                } else if v > second {
                    second = v;
                }
            }
            for k in 0..n {
                let competitor = if k == best_k { second } else { best };
                let fresh = s.get(i, k) - competitor;
                r.set(i, k, lambda * r.get(i, k) + (1.0 - lambda) * fresh);
            }
        }

        // Availabilities.
        for k in 0..n {
            let support: f64 = (0..n)
                .map(|i| if i == k { r.get(k, k) } else { r.get(i, k).max(0.0) })
                .sum();
            for i in 0..n {
                let fresh = if i == k {
                    support - r.get(k, k)
                } else {
                    (support - r.get(i, k).max(0.0)).min(0.0)
                };
                a.set(i, k, lambda * a.get(i, k) + (1.0 - lambda) * fresh);
            }
        }

        let current: Vec<usize> = (0..n).filter(|&k| r.get(k, k) + a.get(k, k) > 0.0).collect();
        if !current.is_empty() && current == exemplars {
            stable += 1;
        } else {
            stable = 0;
        }
        exemplars = current;
        if stable >= config.convergence_iter {
            converged = true;
            break;
        }
    }

    if exemplars.is_empty() {
        // No point claimed itself; fall back to the strongest self-evidence.
        let k = (0..n)
            .max_by(|&x, &y| (r.get(x, x) + a.get(x, x)).total_cmp(&(r.get(y, y) + a.get(y, y))))
            .unwrap_or(0);
        exemplars.push(k);
    }

    let assignment = (0..n)
        .map(|i| {
            if exemplars.contains(&i) {
                i
            } else {
                *exemplars
                    .iter()
                    .max_by(|&&x, &&y| s.get(i, x).total_cmp(&s.get(i, y)).then(y.cmp(&x)))
                    .expect("at least one exemplar")
            }
        })
        .collect();

    Ok(ClusterResult {
        exemplars,
        assignment,
        iterations,
        converged,
    })
}

/// Keeps only the exemplar channels, in ascending exemplar order.
pub fn reduce_channels(wave: &Wave, clusters: &ClusterResult) -> Result<Wave> {
    if clusters.assignment.len() != wave.channels() {
        return Err(Error::ShapeMismatch {
            op: "reduce-channels",
            detail: format!(
                "assignment covers {} channels, wave has {}",
                clusters.assignment.len(),
                wave.channels()
            ),
        });
    }
    wave.select_channels(&clusters.exemplars)
}
