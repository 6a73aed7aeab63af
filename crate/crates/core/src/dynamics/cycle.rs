use crate::trace::BoostTrace;
use crate::weights::WeightDistribution;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// Default L-infinity tolerance for calling two orbit points equal.
pub const DEFAULT_CYCLE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CycleReport {
    pub entered: bool,
    /// First orbit index from which the orbit repeats.
    pub entry_time: usize,
    pub period: usize,
    pub tolerance: f64,
    /// `w_{T0}, .., w_{T0+p-1}`.
    pub cycle_points: Vec<WeightDistribution>,
    /// Hypotheses chosen from the cycle points, in order. Empty when the
    /// orbit carried no hypothesis ids.
    pub hypothesis_cycle: Vec<String>,
}

impl CycleReport {
    fn none(tolerance: f64) -> Self {
        Self {
            entered: false,
            entry_time: 0,
            period: 0,
            tolerance,
            cycle_points: Vec::new(),
            hypothesis_cycle: Vec::new(),
        }
    }

    pub fn distinct_hypotheses(&self) -> usize {
        self.hypothesis_cycle.iter().collect::<BTreeSet<_>>().len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceCycle {
    pub entry: usize,
    pub period: usize,
}

/// Smallest `(entry, period)` such that `same(t, t + p)` holds for every
/// `t` in `[entry, n - p)`, and that window covers at least one period.
///
/// A valid period must relate the last element to the one `p` before it, so
/// candidates come from a single pass over the tail; each is then extended
/// backwards as far as it holds.
fn find_cycle(n: usize, same: impl Fn(usize, usize) -> bool) -> Option<SequenceCycle> {
    if n < 2 {
        return None;
    }
    let last = n - 1;
    let mut best: Option<SequenceCycle> = None;
    for p in 1..=n / 2 {
        if !same(last - p, last) {
            continue;
        }
        let mut entry = last - p;
        while entry > 0 && same(entry - 1, entry - 1 + p) {
            entry -= 1;
        }
        if n - p - entry < p {
            continue;
        }
        let better = match best {
            None => true,
            Some(b) => entry < b.entry,
        };
        if better {
            best = Some(SequenceCycle { entry, period: p });
        }
    }
    best
}

/// Exact cycle of a discrete sequence such as hypothesis ids.
pub fn detect_sequence_cycle<T: PartialEq>(seq: &[T]) -> Option<SequenceCycle> {
    find_cycle(seq.len(), |a, b| seq[a] == seq[b])
}

/// Eventual periodicity of a weight orbit in L-infinity within `tol`.
pub fn detect_cycle(orbit: &[WeightDistribution], tol: f64) -> CycleReport {
    match find_cycle(orbit.len(), |a, b| orbit[a].sup_distance(&orbit[b]) <= tol) {
        None => CycleReport::none(tol),
        Some(c) => CycleReport {
            entered: true,
            entry_time: c.entry,
            period: c.period,
            tolerance: tol,
            cycle_points: orbit[c.entry..c.entry + c.period].to_vec(),
            hypothesis_cycle: Vec::new(),
        },
    }
}

/// Weight cycle of a run's orbit, labeled with the hypotheses picked from it.
pub fn detect_trace_cycle(trace: &BoostTrace, tol: f64) -> CycleReport {
    let mut report = detect_cycle(&trace.orbit(), tol);
    if report.entered {
        let end = (report.entry_time + report.period).min(trace.rounds.len());
        report.hypothesis_cycle =
            trace.rounds[report.entry_time..end].iter().map(|r| r.hypothesis_id.clone()).collect();
    }
    report
}
