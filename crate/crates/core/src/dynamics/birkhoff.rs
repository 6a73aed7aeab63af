use super::CycleReport;
use crate::weights::WeightDistribution;

/// Prefix means `1/n sum_{k<n} f(orbit[k])` for `n = 1..=len`.
pub fn birkhoff_average(orbit: &[WeightDistribution], f: impl Fn(&WeightDistribution) -> f64) -> Vec<f64> {
    let mut sum = 0.0;
    orbit
        .iter()
        .enumerate()
        .map(|(k, w)| {
            sum += f(w);
            sum / (k + 1) as f64
        })
        .collect()
}

/// Mean of `f` over one period of a detected cycle; `None` without one.
pub fn cycle_mean(report: &CycleReport, f: impl Fn(&WeightDistribution) -> f64) -> Option<f64> {
    if !report.entered || report.cycle_points.is_empty() {
        return None;
    }
    Some(report.cycle_points.iter().map(f).sum::<f64>() / report.cycle_points.len() as f64)
}
