use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::tensor::init::prng;
use crate::train::{Dataset, Split};

/// Seeded shuffle, then the first `round(n * fraction)` pairs train.
pub fn split(dataset: &Dataset, fraction: f64, seed: u64) -> Result<(Dataset, Dataset)> {
    if !(fraction > 0.0 && fraction < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "split fraction must lie in (0, 1), got {fraction}"
        )));
    }
    let n_train = (dataset.len() as f64 * fraction).round() as usize;
    split_counts(dataset, n_train, seed)
}

/// Seeded shuffle, then the first `n_train` pairs train and the rest test.
pub fn split_counts(dataset: &Dataset, n_train: usize, seed: u64) -> Result<(Dataset, Dataset)> {
    let n = dataset.len();
    if n_train == 0 || n_train >= n {
        return Err(Error::InvalidArgument(format!(
            "splitting {n} pairs into {n_train} train / {} test leaves a side empty",
            n.saturating_sub(n_train)
        )));
    }
    let (train, test) = split_indices(n, n_train, seed);
    let pick = |idx: &[usize], split| Dataset::new(idx.iter().map(|&i| dataset.pairs()[i].clone()).collect(), split);
    Ok((pick(&train, Split::Train)?, pick(&test, Split::Test)?))
}

/// Train-side and test-side indices of [`split_counts`], for inspection.
pub fn split_indices(n: usize, n_train: usize, seed: u64) -> (Vec<usize>, Vec<usize>) {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut prng(seed));
    let test = order.split_off(n_train.min(n));
    (order, test)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::Wave;
    use crate::train::WavePair;

    fn numbered(n: usize) -> Dataset {
        let pairs = (0..n)
            .map(|i| {
                let w = Wave::mono(vec![i as f64]).unwrap();
                WavePair::new(w.clone(), w)
            })
            .collect();
        Dataset::new(pairs, Split::Train).unwrap()
    }

    #[test]
    fn ten_at_point_eight() {
        let (a, b) = split(&numbered(10), 0.8, 3).unwrap();
        assert_eq!((a.len(), b.len()), (8, 2));
        assert_eq!(b.split(), Split::Test);
    }

    #[test]
    fn disjoint_and_exhaustive() {
        let (a, b) = split_counts(&numbered(374), 365, 1).unwrap();
        assert_eq!((a.len(), b.len()), (365, 9));
        let mut ids: Vec<i64> = a
            .pairs()
            .iter()
            .chain(b.pairs())
            .map(|p| p.source.at(0, 0) as i64)
            .collect();
        ids.sort();
        assert_eq!(ids, (0..374).collect::<Vec<_>>());
    }

    #[test]
    fn seeded() {
        let d = numbered(20);
        assert_eq!(split(&d, 0.5, 9).unwrap(), split(&d, 0.5, 9).unwrap());
    }

    #[test]
    fn empty_side_rejected() {
        assert!(split(&numbered(3), 0.1, 0).is_err());
        assert!(split(&numbered(3), 0.9, 0).is_err());
        assert!(split(&numbered(3), 1.0, 0).is_err());
        assert!(split(&numbered(3), 0.0, 0).is_err());
    }
}
