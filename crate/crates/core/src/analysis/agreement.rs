use crate::data::{Dataset, Label};
use crate::error::{Error, Result};
use crate::hypothesis::{HypothesisKind, WeakHypothesis};
use rayon::prelude::*;
use std::collections::BTreeMap;

fn predictions(h: &WeakHypothesis, data: &Dataset) -> Result<Vec<Label>> {
    (0..data.len())
        .map(|i| {
            h.predict(data.x(i))
                .ok_or(Error::KindMismatch { expected: "discrete", found: h.kind().name() })
        })
        .collect()
}

fn require_binary(h: &WeakHypothesis) -> Result<()> {
    if h.kind() != HypothesisKind::BinaryDiscrete {
        return Err(Error::KindMismatch { expected: "binary discrete", found: h.kind().name() });
    }
    Ok(())
}

/// `1/m sum_i h1(x_i) h2(x_i)` for +-1 valued hypotheses.
pub fn similarity(h1: &WeakHypothesis, h2: &WeakHypothesis, data: &Dataset) -> Result<f64> {
    require_binary(h1)?;
    require_binary(h2)?;
    let a = predictions(h1, data)?;
    let b = predictions(h2, data)?;
    Ok(a.iter().zip(&b).map(|(x, y)| (x * y) as f64).sum::<f64>() / data.len() as f64)
}

/// Which pairs enter the diversity sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairSum {
    /// All ordered pairs `t != s`.
    Ordered,
    /// Unordered pairs `t <= s`, diagonal included, which is what the
    /// `2 / (T (T + 1))` normalizer counts.
    UnorderedWithDiagonal,
}

/// `1 - 2 / (T (T + 1)) sum_{t != s} sim(h_t, h_s)`.
pub fn diversity(hs: &[WeakHypothesis], data: &Dataset) -> Result<f64> {
    diversity_with(hs, data, PairSum::Ordered)
}

pub fn diversity_with(hs: &[WeakHypothesis], data: &Dataset, pairs: PairSum) -> Result<f64> {
    let t = hs.len();
    if t < 2 {
        return Err(Error::TooFewHypotheses { needed: 2, found: t });
    }
    let sim = similarity_matrix(hs, data)?;
    let mut sum = 0.0;
    for a in 0..t {
        for b in 0..t {
            let take = match pairs {
                PairSum::Ordered => a != b,
                PairSum::UnorderedWithDiagonal => a <= b,
            };
            if take {
                sum += sim[a][b];
            }
        }
    }
    Ok(1.0 - 2.0 / (t * (t + 1)) as f64 * sum)
}

/// Cohen's kappa of two label sequences; 1 when chance agreement is total.
pub fn cohen_kappa(a: &[Label], b: &[Label]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch { expected: a.len(), found: b.len() });
    }
    if a.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let n = a.len() as f64;
    let observed = a.iter().zip(b).filter(|(x, y)| x == y).count() as f64 / n;
    let mut ca: BTreeMap<Label, f64> = BTreeMap::new();
    let mut cb: BTreeMap<Label, f64> = BTreeMap::new();
    for (&x, &y) in a.iter().zip(b) {
        *ca.entry(x).or_default() += 1.0;
        *cb.entry(y).or_default() += 1.0;
    }
    let chance: f64 = ca.iter().map(|(k, v)| v * cb.get(k).copied().unwrap_or(0.0)).sum::<f64>() / (n * n);
    if chance >= 1.0 {
        return Ok(1.0);
    }
    Ok((observed - chance) / (1.0 - chance))
}

pub fn kappa(h1: &WeakHypothesis, h2: &WeakHypothesis, data: &Dataset) -> Result<f64> {
    cohen_kappa(&predictions(h1, data)?, &predictions(h2, data)?)
}

fn pairwise(
    hs: &[WeakHypothesis],
    data: &Dataset,
    f: impl Fn(&[Label], &[Label]) -> Result<f64> + Sync,
) -> Result<Vec<Vec<f64>>> {
    let preds = hs.iter().map(|h| predictions(h, data)).collect::<Result<Vec<_>>>()?;
    preds
        .par_iter()
        .map(|a| preds.iter().map(|b| f(a, b)).collect::<Result<Vec<_>>>())
        .collect()
}

/// Full `T x T` matrix of pairwise kappas.
pub fn kappa_matrix(hs: &[WeakHypothesis], data: &Dataset) -> Result<Vec<Vec<f64>>> {
    pairwise(hs, data, cohen_kappa)
}

pub fn similarity_matrix(hs: &[WeakHypothesis], data: &Dataset) -> Result<Vec<Vec<f64>>> {
    for h in hs {
        require_binary(h)?;
    }
    let m = data.len() as f64;
    pairwise(hs, data, |a, b| Ok(a.iter().zip(b).map(|(x, y)| (x * y) as f64).sum::<f64>() / m))
}

/// Mean over `t != s` of a square matrix, e.g. the mean pairwise kappa.
pub fn mean_off_diagonal(matrix: &[Vec<f64>]) -> Option<f64> {
    let t = matrix.len();
    if t < 2 {
        return None;
    }
    let mut sum = 0.0;
    for (a, row) in matrix.iter().enumerate() {
        for (b, v) in row.iter().enumerate() {
            if a != b {
                sum += v;
            }
        }
    }
    Some(sum / (t * (t - 1)) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::learners::DecisionStump;

    fn d1() -> Dataset {
        Dataset::binary(vec![vec![0.0], vec![1.0], vec![2.0]], vec![1, -1, 1]).unwrap()
    }

    fn stump(t: f64, p: Label) -> WeakHypothesis {
        WeakHypothesis::Stump(DecisionStump::new(0, t, p))
    }

    #[test]
    fn similarity_examples() {
        let d = d1();
        let h = stump(0.5, 1);
        assert_eq!(similarity(&h, &h, &d).unwrap(), 1.0);
        assert_eq!(similarity(&h, &stump(0.5, -1), &d).unwrap(), -1.0);
        let c = stump(f64::NEG_INFINITY, 1);
        assert!((similarity(&c, &stump(1.5, 1), &d).unwrap() + 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn diversity_examples() {
        let d = d1();
        let h = stump(0.5, 1);
        assert!((diversity(&[h.clone(), h.clone()], &d).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert!((diversity(&[h.clone(), stump(0.5, -1)], &d).unwrap() - 5.0 / 3.0).abs() < 1e-15);
        assert!(diversity(std::slice::from_ref(&h), &d).is_err());
        let u = diversity_with(&[h.clone(), h], &d, PairSum::UnorderedWithDiagonal).unwrap();
        assert!(u.abs() < 1e-15);
    }

    #[test]
    fn uncorrelated_pair_has_unit_diversity() {
        let d = Dataset::binary((0..4).map(|i| vec![i as f64]).collect(), vec![1, 1, -1, -1]).unwrap();
        let hs = [stump(1.5, 1), stump(f64::NEG_INFINITY, 1)];
        assert_eq!(similarity(&hs[0], &hs[1], &d).unwrap(), 0.0);
        assert_eq!(diversity(&hs, &d).unwrap(), 1.0);
    }

    #[test]
    fn kappa_examples() {
        assert_eq!(cohen_kappa(&[1, 1, 0, 0], &[1, 0, 1, 0]).unwrap(), 0.0);
        assert_eq!(cohen_kappa(&[1, 2, 1, 0], &[1, 2, 1, 0]).unwrap(), 1.0);
        assert_eq!(cohen_kappa(&[3, 3], &[3, 3]).unwrap(), 1.0);
        assert!(cohen_kappa(&[1], &[1, 2]).is_err());
    }

    #[test]
    fn matrices() {
        let d = d1();
        let hs = [stump(0.5, 1), stump(1.5, -1), stump(f64::NEG_INFINITY, 1)];
        let s = similarity_matrix(&hs, &d).unwrap();
        let k = kappa_matrix(&hs, &d).unwrap();
        for a in 0..3 {
            assert_eq!(s[a][a], 1.0);
            for b in 0..3 {
                assert_eq!(s[a][b], s[b][a]);
                assert!(k[a][b] <= 1.0);
            }
        }
        assert!(mean_off_diagonal(&k).is_some());
        assert!(mean_off_diagonal(&k[..1]).is_none());
    }
}
