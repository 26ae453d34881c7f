//! Resolutions, state circles and the cube of resolutions.

use petgraph::unionfind::UnionFind;
use rayon::prelude::*;

use super::LinkDiagram;
use crate::error::{Error, Result};

/// A choice of smoothing per crossing, in crossing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State {
    bits: Vec<bool>,
}

impl State {
    pub fn new(bits: Vec<bool>) -> Self {
        State { bits }
    }

    pub fn from_str01(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::Parse(format!("state {s:?} must be a 0/1 string"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(State::new)
    }

    /// The state whose bit-vector, read with crossing 0 most significant,
    /// is `index`.
    pub fn from_index(n: usize, index: usize) -> Self {
        State {
            bits: (0..n).map(|c| index >> (n - 1 - c) & 1 == 1).collect(),
        }
    }

    pub fn index(&self) -> usize {
        self.bits.iter().fold(0, |acc, &b| acc << 1 | usize::from(b))
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Number of 1-smoothings, `|s|`.
    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }
}

/// Number of 1-bits of `s1` before the position where `s1` and `s2` differ.
pub fn sign_exponent(s1: &State, s2: &State) -> Result<usize> {
    if s1.len() != s2.len() {
        return Err(Error::Diagram("states of different lengths".into()));
    }
    let diff: Vec<usize> = (0..s1.len()).filter(|&i| s1.bits[i] != s2.bits[i]).collect();
    match diff[..] {
        [pos] if !s1.bits[pos] => Ok(s1.bits[..pos].iter().filter(|&&b| b).count()),
        _ => Err(Error::Diagram(
            "states are not adjacent (s1 < s2 in exactly one bit)".into(),
        )),
    }
}

/// Circles of the resolution at `s`, each a sorted list of arc labels,
/// ordered by smallest label.
pub fn resolve(d: &LinkDiagram, s: &State) -> Result<Vec<Vec<usize>>> {
    if s.len() != d.crossing_count() {
        return Err(Error::Diagram(format!(
            "state has {} bits for {} crossings",
            s.len(),
            d.crossing_count()
        )));
    }
    let mut uf = UnionFind::<usize>::new(d.arc_count() + 1);
    for (q, &one) in d.crossings().iter().zip(s.bits()) {
        let [a, b, c, dd] = *q;
        if one {
            uf.union(a, dd);
            uf.union(b, c);
        } else {
            uf.union(a, b);
            uf.union(c, dd);
        }
    }
    let mut circles: Vec<Vec<usize>> = Vec::new();
    let mut root_to_circle = std::collections::HashMap::new();
    for arc in 1..=d.arc_count() {
        let root = uf.find(arc);
        let i = *root_to_circle.entry(root).or_insert_with(|| {
            circles.push(Vec::new());
            circles.len() - 1
        });
        circles[i].push(arc);
    }
    // arcs were visited in increasing order, so circles are already ordered
    Ok(circles)
}

/// The saddle along a cube edge, in terms of circle indices of its endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Saddle {
    /// Circles `i < j` of the source merge into circle `k` of the target.
    Merge { i: usize, j: usize, k: usize },
    /// Circle `k` of the source splits into circles `i < j` of the target.
    Split { k: usize, i: usize, j: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeEdge {
    pub from: usize,
    pub to: usize,
    pub crossing: usize,
    pub saddle: Saddle,
    /// `(source circle, target circle)` for circles the saddle leaves alone,
    /// in source order.
    pub untouched: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionCube {
    n: usize,
    circles: Vec<Vec<Vec<usize>>>,
    edges: Vec<CubeEdge>,
}

impl ResolutionCube {
    pub fn crossing_count(&self) -> usize {
        self.n
    }

    /// Circles of the state with the given index.
    pub fn circles(&self, state: usize) -> &[Vec<usize>] {
        &self.circles[state]
    }

    pub fn state_count(&self) -> usize {
        self.circles.len()
    }

    /// Edges ordered by source state, then by crossing.
    pub fn edges(&self) -> &[CubeEdge] {
        &self.edges
    }
}

fn classify_edge(from: &[Vec<usize>], to: &[Vec<usize>]) -> Result<(Saddle, Vec<(usize, usize)>)> {
    let mut untouched = Vec::new();
    let mut from_rest = Vec::new();
    for (i, c) in from.iter().enumerate() {
        match to.iter().position(|t| t == c) {
            Some(j) => untouched.push((i, j)),
            None => from_rest.push(i),
        }
    }
    let to_rest: Vec<usize> = (0..to.len()).filter(|j| !untouched.iter().any(|u| u.1 == *j)).collect();
    let saddle = match (&from_rest[..], &to_rest[..]) {
        ([i, j], [k]) => Saddle::Merge { i: *i, j: *j, k: *k },
        ([k], [i, j]) => Saddle::Split { k: *k, i: *i, j: *j },
        _ => {
            return Err(Error::Diagram(format!(
                "edge changes {} circle(s) into {}; expected a merge or a split",
                from_rest.len(),
                to_rest.len()
            )))
        }
    };
    Ok((saddle, untouched))
}

/// Resolves all `2ⁿ` states and classifies every edge of the cube.
pub fn build_cube(d: &LinkDiagram) -> Result<ResolutionCube> {
    let n = d.crossing_count();
    if n >= usize::BITS as usize - 1 {
        return Err(Error::Diagram(format!("{n} crossings is too many")));
    }
    let circles = (0..1usize << n)
        .into_par_iter()
        .map(|i| resolve(d, &State::from_index(n, i)))
        .collect::<Result<Vec<_>>>()?;
    let mut edges = Vec::with_capacity(n << n.saturating_sub(1));
    for from in 0..1usize << n {
        for c in 0..n {
            let bit = 1 << (n - 1 - c);
            if from & bit != 0 {
                continue;
            }
            let to = from | bit;
            let (saddle, untouched) = classify_edge(&circles[from], &circles[to])?;
            edges.push(CubeEdge {
                from,
                to,
                crossing: c,
                saddle,
                untouched,
            });
        }
    }
    Ok(ResolutionCube { n, circles, edges })
}
