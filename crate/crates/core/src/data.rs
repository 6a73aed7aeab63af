//! Labeled samples.
//!
//! Binary labels are stored as `-1` / `+1`. Multiclass labels are stored as
//! `0..K`.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

pub type Label = i32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Task {
    Binary,
    Multiclass { classes: usize },
}

impl Task {
    pub fn name(&self) -> &'static str {
        match self {
            Task::Binary => "binary",
            Task::Multiclass { .. } => "multiclass",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    features: Vec<Vec<f64>>,
    labels: Vec<Label>,
    dim: usize,
    task: Task,
}

impl Dataset {
    pub fn binary(features: Vec<Vec<f64>>, labels: Vec<Label>) -> Result<Self> {
        if let Some(bad) = labels.iter().find(|&&y| y != 1 && y != -1) {
            return Err(Error::InvalidDataset(format!("binary label {bad} not in {{-1, +1}}")));
        }
        Self::build(features, labels, Task::Binary)
    }

    pub fn multiclass(features: Vec<Vec<f64>>, labels: Vec<Label>, classes: usize) -> Result<Self> {
        if classes < 2 {
            return Err(Error::InvalidDataset(format!("need at least 2 classes, got {classes}")));
        }
        if let Some(bad) = labels.iter().find(|&&y| y < 0 || y as usize >= classes) {
            return Err(Error::InvalidDataset(format!("label {bad} not in 0..{classes}")));
        }
        Self::build(features, labels, Task::Multiclass { classes })
    }

    fn build(features: Vec<Vec<f64>>, labels: Vec<Label>, task: Task) -> Result<Self> {
        if features.is_empty() {
            return Err(Error::EmptyDataset);
        }
        if features.len() != labels.len() {
            return Err(Error::LengthMismatch { expected: features.len(), found: labels.len() });
        }
        let dim = features[0].len();
        if dim == 0 {
            return Err(Error::InvalidDataset("feature dimension is zero".into()));
        }
        for (i, x) in features.iter().enumerate() {
            if x.len() != dim {
                return Err(Error::InvalidDataset(format!(
                    "sample {i} has dimension {}, expected {dim}",
                    x.len()
                )));
            }
            if x.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidDataset(format!("sample {i} has a non-finite feature")));
            }
        }
        Ok(Self { features, labels, dim, task })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn task(&self) -> Task {
        self.task
    }

    pub fn is_binary(&self) -> bool {
        self.task == Task::Binary
    }

    pub fn n_classes(&self) -> usize {
        match self.task {
            Task::Binary => 2,
            Task::Multiclass { classes } => classes,
        }
    }

    /// The label set in canonical order: `[-1, 1]` for binary, `0..K` otherwise.
    pub fn label_set(&self) -> Vec<Label> {
        match self.task {
            Task::Binary => vec![-1, 1],
            Task::Multiclass { classes } => (0..classes as Label).collect(),
        }
    }

    pub fn x(&self, i: usize) -> &[f64] {
        &self.features[i]
    }

    pub fn y(&self, i: usize) -> Label {
        self.labels[i]
    }

    pub fn features(&self) -> &[Vec<f64>] {
        &self.features
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn require_binary(&self) -> Result<()> {
        if self.is_binary() {
            Ok(())
        } else {
            Err(Error::KindMismatch { expected: "binary", found: self.task.name() })
        }
    }
}
