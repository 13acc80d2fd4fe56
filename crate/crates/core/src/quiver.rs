//! Quivers of triangulations and quiver mutation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polygon::{offset, Chord, Triangulation};

/// A finite quiver with arrow multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver<V: Ord + Clone> {
    vertices: BTreeSet<V>,
    arrows: BTreeMap<(V, V), usize>,
}

impl<V: Ord + Clone + fmt::Display> Quiver<V> {
    /// Builds a quiver; repeated arrows add up.
    pub fn new(vertices: impl IntoIterator<Item = V>, arrows: impl IntoIterator<Item = (V, V)>) -> Result<Self> {
        let vertices: BTreeSet<V> = vertices.into_iter().collect();
        let mut map = BTreeMap::new();
        for (i, j) in arrows {
            for v in [&i, &j] {
                if !vertices.contains(v) {
                    return Err(Error::UnknownVertex(v.to_string()));
                }
            }
            *map.entry((i, j)).or_insert(0) += 1;
        }
        Ok(Quiver { vertices, arrows: map })
    }

    pub fn vertices(&self) -> &BTreeSet<V> {
        &self.vertices
    }

    /// Arrows with their multiplicities.
    pub fn arrows(&self) -> impl Iterator<Item = (&V, &V, usize)> {
        self.arrows.iter().map(|((i, j), m)| (i, j, *m))
    }

    pub fn arrow_count(&self, i: &V, j: &V) -> usize {
        self.arrows.get(&(i.clone(), j.clone())).copied().unwrap_or(0)
    }

    pub fn total_arrows(&self) -> usize {
        self.arrows.values().sum()
    }

    pub fn has_loops(&self) -> bool {
        self.arrows.keys().any(|(i, j)| i == j)
    }

    pub fn has_two_cycles(&self) -> bool {
        self.arrows.keys().any(|(i, j)| self.arrows.contains_key(&(j.clone(), i.clone())))
    }

    pub fn in_degree(&self, v: &V) -> usize {
        self.arrows.iter().filter(|((_, j), _)| j == v).map(|(_, m)| m).sum()
    }

    pub fn out_degree(&self, v: &V) -> usize {
        self.arrows.iter().filter(|((i, _), _)| i == v).map(|(_, m)| m).sum()
    }

    /// Vertices joined to `v` by an arrow in either direction.
    pub fn neighbors(&self, v: &V) -> BTreeSet<V> {
        self.arrows
            .keys()
            .filter_map(|(i, j)| {
                if i == v {
                    Some(j.clone())
                } else if j == v {
                    Some(i.clone())
                } else {
                    None
                }
            })
            .collect()
    }

    /// Oriented 3-cycles, each reported once with its smallest vertex first.
    pub fn three_cycles(&self) -> Vec<[V; 3]> {
        let mut out = Vec::new();
        for (i, j) in self.arrows.keys() {
            for (j2, k) in self.arrows.keys() {
                if j2 == j && self.arrows.contains_key(&(k.clone(), i.clone())) && i < j && i < k {
                    out.push([i.clone(), j.clone(), k.clone()]);
                }
            }
        }
        out
    }

    /// Mutation at `k`: compose paths through `k`, reverse the arrows at `k`,
    /// then cancel 2-cycles.
    pub fn mutate(&self, k: &V) -> Result<Self> {
        if !self.vertices.contains(k) {
            return Err(Error::UnknownVertex(k.to_string()));
        }
        let mut next: BTreeMap<(V, V), usize> = BTreeMap::new();
        let incoming: Vec<(V, usize)> = self
            .arrows
            .iter()
            .filter(|((i, j), _)| j == k && i != k)
            .map(|((i, _), m)| (i.clone(), *m))
            .collect();
        let outgoing: Vec<(V, usize)> = self
            .arrows
            .iter()
            .filter(|((i, j), _)| i == k && j != k)
            .map(|((_, j), m)| (j.clone(), *m))
            .collect();
        for ((i, j), m) in &self.arrows {
            let key = if i == k || j == k { (j.clone(), i.clone()) } else { (i.clone(), j.clone()) };
            *next.entry(key).or_insert(0) += m;
        }
        for (i, mi) in &incoming {
            for (j, mj) in &outgoing {
                *next.entry((i.clone(), j.clone())).or_insert(0) += mi * mj;
            }
        }
        let keys: Vec<(V, V)> = next.keys().cloned().collect();
        for (i, j) in keys {
            if i >= j {
                continue;
            }
            let fwd = next.get(&(i.clone(), j.clone())).copied().unwrap_or(0);
            let back = next.get(&(j.clone(), i.clone())).copied().unwrap_or(0);
            let cancel = fwd.min(back);
            if cancel > 0 {
                *next.get_mut(&(i.clone(), j.clone())).expect("present") -= cancel;
                *next.get_mut(&(j.clone(), i.clone())).expect("present") -= cancel;
            }
        }
        next.retain(|_, m| *m > 0);
        Ok(Quiver {
            vertices: self.vertices.clone(),
            arrows: next,
        })
    }

    /// Applies a label substitution to every vertex.
    pub fn relabel<W: Ord + Clone + fmt::Display>(&self, f: impl Fn(&V) -> W) -> Quiver<W> {
        let mut arrows = BTreeMap::new();
        for ((i, j), m) in &self.arrows {
            *arrows.entry((f(i), f(j))).or_insert(0) += m;
        }
        Quiver {
            vertices: self.vertices.iter().map(&f).collect(),
            arrows,
        }
    }

    pub fn to_data(&self) -> QuiverData<V> {
        QuiverData {
            vertices: self.vertices.iter().cloned().collect(),
            arrows: self
                .arrows
                .iter()
                .flat_map(|((i, j), m)| std::iter::repeat_n([i.clone(), j.clone()], *m))
                .collect(),
        }
    }

    pub fn from_data(data: QuiverData<V>) -> Result<Self> {
        Quiver::new(data.vertices, data.arrows.into_iter().map(|[i, j]| (i, j)))
    }
}

/// Structured encoding `{ "vertices": [...], "arrows": [[i, j], ...] }`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuiverData<V> {
    pub vertices: Vec<V>,
    pub arrows: Vec<[V; 2]>,
}

/// Vertex label of an abstract quiver read from JSON: an integer or a name.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Int(i64),
    Name(String),
}

impl Label {
    /// Parses a command-line vertex name, preferring the integer reading.
    pub fn parse(s: &str) -> Label {
        s.trim()
            .parse::<i64>()
            .map(Label::Int)
            .unwrap_or_else(|_| Label::Name(s.trim().to_string()))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Int(i) => write!(f, "{i}"),
            Label::Name(s) => write!(f, "{s}"),
        }
    }
}

/// Quiver of a triangulation: one vertex per diagonal and an arrow `i -> j`
/// when `j` follows `i` clockwise about a shared endpoint with no diagonal in
/// between.
pub fn quiver_of(t: &Triangulation) -> Quiver<Chord> {
    let n = t.n();
    let mut arrows = Vec::new();
    for v in 1..=n {
        let mut fan: Vec<(usize, Chord)> = t
            .diagonals()
            .iter()
            .filter_map(|c| c.other_endpoint(v).map(|w| (offset(n, v, w), *c)))
            .collect();
        fan.sort();
        for pair in fan.windows(2) {
            arrows.push((pair[0].1, pair[1].1));
        }
    }
    Quiver::new(t.diagonals().iter().copied(), arrows).expect("arrows join diagonals of t")
}
