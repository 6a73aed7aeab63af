use crate::data::{Dataset, Label};
use crate::hypothesis::argmax_label;
use crate::weights::WeightDistribution;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Node {
    Leaf {
        label: Label,
    },
    /// Samples with `x[feature] < threshold` go left.
    Split {
        feature: usize,
        threshold: f64,
        left: Box<Node>,
        right: Box<Node>,
    },
}

impl Node {
    fn predict(&self, x: &[f64]) -> Label {
        match self {
            Node::Leaf { label } => *label,
            Node::Split { feature, threshold, left, right } => {
                if x[*feature] < *threshold {
                    left.predict(x)
                } else {
                    right.predict(x)
                }
            }
        }
    }

    fn depth(&self) -> usize {
        match self {
            Node::Leaf { .. } => 0,
            Node::Split { left, right, .. } => 1 + left.depth().max(right.depth()),
        }
    }

    fn dump(&self, out: &mut String) {
        match self {
            Node::Leaf { label } => out.push_str(&format!("L{label}")),
            Node::Split { feature, threshold, left, right } => {
                out.push_str(&format!("f{feature}<{threshold:?}?("));
                left.dump(out);
                out.push_str("):(");
                right.dump(out);
                out.push(')');
            }
        }
    }
}

/// Axis-aligned tree grown greedily on weighted Gini impurity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionTree {
    pub max_depth: usize,
    pub root: Node,
    pub labels: Vec<Label>,
}

impl DecisionTree {
    pub fn predict(&self, x: &[f64]) -> Label {
        self.root.predict(x)
    }

    pub fn depth(&self) -> usize {
        self.root.depth()
    }

    pub fn is_binary(&self) -> bool {
        self.labels == [-1, 1]
    }

    pub fn dump(&self) -> String {
        let mut s = String::new();
        self.root.dump(&mut s);
        s
    }
}

/// `W (1 - sum_c p_c^2)`, i.e. Gini impurity scaled by node mass.
fn gini(class_mass: &[f64]) -> f64 {
    let total: f64 = class_mass.iter().sum();
    if total <= 0.0 {
        return 0.0;
    }
    total - class_mass.iter().map(|c| c * c).sum::<f64>() / total
}

struct Grower<'a> {
    data: &'a Dataset,
    w: &'a WeightDistribution,
    labels: Vec<Label>,
    class_of: Vec<usize>,
}

impl Grower<'_> {
    fn class_mass(&self, idx: &[usize]) -> Vec<f64> {
        let mut mass = vec![0.0; self.labels.len()];
        for &i in idx {
            mass[self.class_of[i]] += self.w.get(i);
        }
        mass
    }

    fn leaf(&self, idx: &[usize]) -> Node {
        Node::Leaf { label: argmax_label(&self.labels, &self.class_mass(idx)) }
    }

    fn best_split(&self, idx: &[usize]) -> Option<(usize, f64)> {
        let node_mass = self.class_mass(idx);
        let node_w: f64 = node_mass.iter().sum();
        let mut best: Option<(usize, f64, f64)> = None;
        let mut order = idx.to_vec();
        for f in 0..self.data.dim() {
            order.sort_by(|&a, &b| {
                self.data.x(a)[f].partial_cmp(&self.data.x(b)[f]).expect("finite features")
            });
            let mut left = vec![0.0; self.labels.len()];
            let mut k = 0;
            while k < order.len() {
                let v = self.data.x(order[k])[f];
                while k < order.len() && self.data.x(order[k])[f] == v {
                    left[self.class_of[order[k]]] += self.w.get(order[k]);
                    k += 1;
                }
                if k == order.len() {
                    break;
                }
                let right: Vec<f64> = node_mass.iter().zip(&left).map(|(n, l)| n - l).collect();
                let impurity = gini(&left) + gini(&right);
                let next = self.data.x(order[k])[f];
                let better = match best {
                    None => true,
                    Some((_, _, b)) => impurity < b - 1e-12 * node_w,
                };
                if better {
                    best = Some((f, v + (next - v) / 2.0, impurity));
                }
            }
        }
        best.map(|(f, t, _)| (f, t))
    }

    fn grow(&self, idx: Vec<usize>, remaining: usize) -> Node {
        let first = self.data.y(idx[0]);
        let pure = idx.iter().all(|&i| self.data.y(i) == first);
        if pure || remaining == 0 {
            return self.leaf(&idx);
        }
        match self.best_split(&idx) {
            None => self.leaf(&idx),
            Some((feature, threshold)) => {
                let (l, r): (Vec<usize>, Vec<usize>) =
                    idx.iter().partition(|&&i| self.data.x(i)[feature] < threshold);
                Node::Split {
                    feature,
                    threshold,
                    left: Box::new(self.grow(l, remaining - 1)),
                    right: Box::new(self.grow(r, remaining - 1)),
                }
            }
        }
    }
}

/// Greedy weighted-Gini tree of depth at most `depth`.
///
/// Leaves take the weighted majority label; binary ties go to `+1`,
/// multiclass ties to the smallest label.
pub fn train_tree(data: &Dataset, w: &WeightDistribution, depth: usize) -> DecisionTree {
    assert!(depth >= 1, "tree depth must be at least 1");
    assert_eq!(w.len(), data.len(), "weights and samples differ in length");
    let labels = data.label_set();
    let class_of = (0..data.len())
        .map(|i| labels.iter().position(|&l| l == data.y(i)).expect("label in label set"))
        .collect();
    let grower = Grower { data, w, labels: labels.clone(), class_of };
    let root = grower.grow((0..data.len()).collect(), depth);
    DecisionTree { max_depth: depth, root, labels }
}
