//! Weight functions `f: V -> {0, 1, 2}` and the Italian / perfect Italian
//! domination checks.
//!
//! Both conditions only constrain vertices of weight zero, and both look at
//! the open neighbourhood: a vertex never counts its own weight.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Every zero vertex sees neighbour weight at least 2.
    Italian,
    /// Every zero vertex sees neighbour weight exactly 2.
    Perfect,
}

impl Variant {
    pub fn as_str(&self) -> &'static str {
        match self {
            Variant::Italian => "italian",
            Variant::Perfect => "perfect",
        }
    }

    /// Whether a zero vertex with neighbour sum `sum` is satisfied.
    pub fn accepts(&self, sum: u32) -> bool {
        match self {
            Variant::Italian => sum >= 2,
            Variant::Perfect => sum == 2,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct WeightFunction(Vec<u8>);

impl WeightFunction {
    pub fn new(weights: Vec<u8>) -> Result<Self> {
        if let Some((v, w)) = weights.iter().enumerate().find(|(_, &w)| w > 2) {
            return Err(invalid(format!("weight {w} at vertex {v} is not in {{0,1,2}}")));
        }
        Ok(Self(weights))
    }

    pub fn zeros(len: usize) -> Self {
        Self(vec![0; len])
    }

    pub fn constant(len: usize, value: u8) -> Self {
        assert!(value <= 2, "weights live in {{0,1,2}}");
        Self(vec![value; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: usize) -> u8 {
        self.0[v]
    }

    /// Panics if `value > 2`.
    pub fn set(&mut self, v: usize, value: u8) {
        assert!(value <= 2, "weights live in {{0,1,2}}");
        self.0[v] = value;
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    pub fn total_weight(&self) -> u64 {
        total_weight(self)
    }

    /// Sum of `f` over the open neighbourhood of `v`.
    pub fn neighbor_sum(&self, g: &Graph, v: usize) -> u32 {
        g.neighbors(v).iter().map(|&u| self.0[u] as u32).sum()
    }
}

impl From<WeightFunction> for Vec<u8> {
    fn from(f: WeightFunction) -> Self {
        f.0
    }
}

pub fn total_weight(f: &WeightFunction) -> u64 {
    f.0.iter().map(|&w| w as u64).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ViolationKind {
    /// Neighbour sum below 2.
    Deficit,
    /// Neighbour sum above 2 (perfect variant only).
    Inexact,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub vertex: usize,
    pub label: String,
    pub sum: u32,
    pub kind: ViolationKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub variant: Variant,
    pub valid: bool,
    pub total_weight: u64,
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn count(&self, kind: ViolationKind) -> usize {
        self.violations.iter().filter(|v| v.kind == kind).count()
    }
}

pub fn verify(g: &Graph, f: &WeightFunction, variant: Variant) -> Result<VerificationReport> {
    if f.len() != g.order() {
        return Err(invalid(format!(
            "weight function has {} entries, graph has {} vertices",
            f.len(),
            g.order()
        )));
    }
    let mut violations = Vec::new();
    for v in (0..g.order()).filter(|&v| f.get(v) == 0) {
        let sum = f.neighbor_sum(g, v);
        let kind = if sum < 2 {
            ViolationKind::Deficit
        } else if variant == Variant::Perfect && sum > 2 {
            ViolationKind::Inexact
        } else {
            continue;
        };
        violations.push(Violation {
            vertex: v,
            label: g.label(v).to_string(),
            sum,
            kind,
        });
    }
    Ok(VerificationReport {
        variant,
        valid: violations.is_empty(),
        total_weight: f.total_weight(),
        violations,
    })
}

pub fn verify_idf(g: &Graph, f: &WeightFunction) -> Result<VerificationReport> {
    verify(g, f, Variant::Italian)
}

pub fn verify_pid(g: &Graph, f: &WeightFunction) -> Result<VerificationReport> {
    verify(g, f, Variant::Perfect)
}

/// On-disk weight function, bound to a graph by the graph's hash.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightDocument {
    pub graph_hash: String,
    pub weights: Vec<u8>,
}

impl WeightDocument {
    pub fn for_graph(g: &Graph, f: &WeightFunction) -> Self {
        Self {
            graph_hash: g.hash(),
            weights: f.as_slice().to_vec(),
        }
    }

    /// Checks the hash and size against `g` and returns the function.
    pub fn bind(&self, g: &Graph) -> Result<WeightFunction> {
        let expected = g.hash();
        if self.graph_hash != expected {
            return Err(invalid(format!(
                "graph hash mismatch: weight file is for graph {}, not {}",
                self.graph_hash, expected
            )));
        }
        if self.weights.len() != g.order() {
            return Err(invalid(format!(
                "{} weights for {} vertices",
                self.weights.len(),
                g.order()
            )));
        }
        WeightFunction::new(self.weights.clone())
    }
}
