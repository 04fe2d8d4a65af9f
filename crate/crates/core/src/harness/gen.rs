//! Seeded graph families.
//!
//! Structure is drawn first, then one weight per edge in edge order, all from
//! a single stream seeded with the spec's seed.

use std::fmt;
use std::str::FromStr;

use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::rng::SeededRng;
use crate::graph::{Edge, Graph};
use crate::labels::Vertex;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("infeasible spec: {0}")]
    InfeasibleSpec(String),
    #[error("cannot parse {what} `{input}`")]
    Parse { what: &'static str, input: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// `m` distinct ordered pairs without self loops.
    RandomM,
    /// Chain `0 -> 1 -> ... -> n-1`.
    Path,
    /// Near-square grid with arcs both ways between 4-neighbours.
    Grid,
    /// Layers of about `sqrt(n)` vertices after a single-vertex layer 0;
    /// every vertex gets an arc from the previous layer.
    Layered,
    /// Arcs from vertex 0 to every other vertex plus a cycle through them.
    StarCycle,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::RandomM, Family::Path, Family::Grid, Family::Layered, Family::StarCycle];

    pub fn name(self) -> &'static str {
        match self {
            Family::RandomM => "random-m",
            Family::Path => "path",
            Family::Grid => "grid",
            Family::Layered => "layered",
            Family::StarCycle => "star-cycle",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| GenError::Parse { what: "family", input: s.into() })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "model")]
pub enum WeightModel {
    /// Integers in `lo..=hi`.
    UniformInt { lo: u64, hi: u64 },
    /// Reals in `[lo, hi)`.
    UniformReal { lo: f64, hi: f64 },
    /// Zero with probability `p_zero`, otherwise an integer in `1..=100`.
    ZeroHeavy { p_zero: f64 },
}

impl WeightModel {
    fn draw(&self, rng: &mut SeededRng) -> f64 {
        match *self {
            WeightModel::UniformInt { lo, hi } => rng.int_in(lo, hi) as f64,
            WeightModel::UniformReal { lo, hi } => rng.real_in(lo, hi),
            WeightModel::ZeroHeavy { p_zero } => {
                if rng.unit() < p_zero {
                    0.0
                } else {
                    rng.int_in(1, 100) as f64
                }
            }
        }
    }
}

/// Text form: `int:LO:HI`, `real:LO:HI` or `zero:P`; bare `int`, `real`
/// and `zero` mean `int:1:100`, `real:0:1` and `zero:0.5`.
impl fmt::Display for WeightModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightModel::UniformInt { lo, hi } => write!(f, "int:{lo}:{hi}"),
            WeightModel::UniformReal { lo, hi } => write!(f, "real:{lo}:{hi}"),
            WeightModel::ZeroHeavy { p_zero } => write!(f, "zero:{p_zero}"),
        }
    }
}

impl FromStr for WeightModel {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GenError::Parse { what: "weight model", input: s.into() };
        let parts: Vec<&str> = s.split(':').collect();
        let model = match parts.as_slice() {
            ["int"] => WeightModel::UniformInt { lo: 1, hi: 100 },
            ["real"] => WeightModel::UniformReal { lo: 0.0, hi: 1.0 },
            ["zero"] => WeightModel::ZeroHeavy { p_zero: 0.5 },
            ["int", lo, hi] => {
                let (lo, hi) = (lo.parse().map_err(|_| bad())?, hi.parse().map_err(|_| bad())?);
                if lo > hi {
                    return Err(bad());
                }
                WeightModel::UniformInt { lo, hi }
            }
            ["real", lo, hi] => {
                let (lo, hi): (f64, f64) = (lo.parse().map_err(|_| bad())?, hi.parse().map_err(|_| bad())?);
                if !(lo >= 0.0 && hi >= lo && hi.is_finite()) {
                    return Err(bad());
                }
                WeightModel::UniformReal { lo, hi }
            }
            ["zero", p] => {
                let p: f64 = p.parse().map_err(|_| bad())?;
                if !(0.0..=1.0).contains(&p) {
                    return Err(bad());
                }
                WeightModel::ZeroHeavy { p_zero: p }
            }
            _ => return Err(bad()),
        };
        Ok(model)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub family: Family,
    pub n: usize,
    /// Edge count; `None` keeps the family's base structure (`4n` for
    /// random-m).
    pub m: Option<usize>,
    pub weights: WeightModel,
    pub seed: u64,
}

/// Builds the graph for `spec`. The same spec always yields the same edge
/// list. Base structures are thinned to a random subset when `m` is smaller
/// and topped up with random arcs when it is larger.
pub fn generate(spec: &GenSpec) -> Result<Graph, GenError> {
    let n = spec.n;
    if n == 0 {
        return Err(GenError::InfeasibleSpec("a graph needs at least one vertex".into()));
    }
    if n > u32::MAX as usize {
        return Err(GenError::InfeasibleSpec(format!("{n} vertices exceed the 32-bit id space")));
    }
    let mut rng = SeededRng::new(spec.seed);
    let pairs = match spec.family {
        Family::RandomM => random_pairs(n, spec.m.unwrap_or(4 * n), &mut rng)?,
        family => {
            let base = base_structure(family, n, &mut rng);
            let m = spec.m.unwrap_or(base.len());
            fit(base, m, n, family, &mut rng)?
        }
    };
    let edges = pairs.into_iter().map(|(src, dst)| Edge { src, dst, weight: spec.weights.draw(&mut rng) }).collect();
    Graph::new(n, edges).map_err(|e| GenError::InfeasibleSpec(e.to_string()))
}

fn random_pairs(n: usize, m: usize, rng: &mut SeededRng) -> Result<Vec<(Vertex, Vertex)>, GenError> {
    let cap = n as u128 * (n as u128 - 1);
    if m as u128 > cap {
        return Err(GenError::InfeasibleSpec(format!("m = {m} exceeds n(n-1) = {cap}")));
    }
    if (m as u128) * 2 <= cap {
        let mut seen = FxHashSet::default();
        let mut out = Vec::with_capacity(m);
        while out.len() < m {
            let u = rng.below(n as u64) as Vertex;
            let v = rng.below(n as u64) as Vertex;
            if u != v && seen.insert((u, v)) {
                out.push((u, v));
            }
        }
        return Ok(out);
    }
    // dense request: partial Fisher-Yates over all ordered pairs
    let mut all: Vec<(Vertex, Vertex)> = Vec::with_capacity(cap as usize);
    for u in 0..n as Vertex {
        for v in 0..n as Vertex {
            if u != v {
                all.push((u, v));
            }
        }
    }
    for i in 0..m {
        let j = i + rng.below((all.len() - i) as u64) as usize;
        all.swap(i, j);
    }
    all.truncate(m);
    Ok(all)
}

fn layer_width(n: usize) -> usize {
    ((n as f64).sqrt() as usize).max(1)
}

/// Layer index and position of vertex `v` (layer 0 holds only vertex 0).
fn layer_of(v: usize, width: usize) -> usize {
    if v == 0 {
        0
    } else {
        1 + (v - 1) / width
    }
}

fn layer_range(layer: usize, width: usize, n: usize) -> std::ops::Range<usize> {
    if layer == 0 {
        0..1
    } else {
        let start = 1 + (layer - 1) * width;
        start.min(n)..(start + width).min(n)
    }
}

fn base_structure(family: Family, n: usize, rng: &mut SeededRng) -> Vec<(Vertex, Vertex)> {
    let mut out = Vec::new();
    match family {
        Family::RandomM => {}
        Family::Path => {
            out.extend((1..n as Vertex).map(|v| (v - 1, v)));
        }
        Family::Grid => {
            let rows = ((n as f64).sqrt() as usize).max(1);
            let cols = n.div_ceil(rows);
            for v in 0..n {
                let (r, c) = (v / cols, v % cols);
                let right = v + 1;
                if c + 1 < cols && right < n {
                    out.push((v as Vertex, right as Vertex));
                    out.push((right as Vertex, v as Vertex));
                }
                let down = (r + 1) * cols + c;
                if down < n {
                    out.push((v as Vertex, down as Vertex));
                    out.push((down as Vertex, v as Vertex));
                }
            }
        }
        Family::Layered => {
            let w = layer_width(n);
            for v in 1..n {
                let prev = layer_range(layer_of(v, w) - 1, w, n);
                let u = prev.start + rng.below(prev.len() as u64) as usize;
                out.push((u as Vertex, v as Vertex));
            }
        }
        Family::StarCycle => {
            out.extend((1..n as Vertex).map(|v| (0, v)));
            if n > 2 {
                out.extend((1..n as Vertex).map(|v| (v, if v + 1 < n as Vertex { v + 1 } else { 1 })));
            }
        }
    }
    out
}

fn fit(
    mut base: Vec<(Vertex, Vertex)>,
    m: usize,
    n: usize,
    family: Family,
    rng: &mut SeededRng,
) -> Result<Vec<(Vertex, Vertex)>, GenError> {
    if m <= base.len() {
        // keep a random subset, in base order
        let mut idx: Vec<usize> = (0..base.len()).collect();
        for i in 0..m {
            let j = i + rng.below((idx.len() - i) as u64) as usize;
            idx.swap(i, j);
        }
        let mut keep = idx[..m].to_vec();
        keep.sort_unstable();
        return Ok(keep.into_iter().map(|i| base[i]).collect());
    }
    if n < 2 {
        return Err(GenError::InfeasibleSpec(format!("cannot place {m} arcs on one vertex")));
    }
    let w = layer_width(n);
    let layers = layer_of(n - 1, w) + 1;
    while base.len() < m {
        let pair = if family == Family::Layered && layers > 1 {
            let u = rng.below(n as u64) as usize;
            let next = layer_of(u, w) + 1;
            if next >= layers {
                continue;
            }
            let r = layer_range(next, w, n);
            (u, r.start + rng.below(r.len() as u64) as usize)
        } else {
            let u = rng.below(n as u64) as usize;
            let v = rng.below(n as u64 - 1) as usize;
            (u, if v >= u { v + 1 } else { v })
        };
        base.push((pair.0 as Vertex, pair.1 as Vertex));
    }
    Ok(base)
}
