//! String walks, shapes and submodule counts.
//!
//! A string module of type A is described by a walk `x_1 - x_2 - ... - x_ℓ`
//! whose consecutive vertices are joined by a single arrow. Its submodules are
//! the subsets of the support closed under following arrows, so
//! [`s_bruteforce`] counts those directly, while [`s_formula`] and
//! [`s_recursive`] only look at the shape (the lengths of the maximal runs of
//! equally oriented arrows).

use std::collections::HashMap;
use std::fmt;
use std::ops::Range;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

/// Orientation of the arrow between walk positions `p` and `p + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dir {
    /// The arrow points from `p + 1` to `p`.
    Left,
    /// The arrow points from `p` to `p + 1`.
    Right,
}

impl Dir {
    pub fn flipped(self) -> Dir {
        match self {
            Dir::Left => Dir::Right,
            Dir::Right => Dir::Left,
        }
    }
}

/// A multiplicity-free walk. `ℓ = 0` is the zero module, `ℓ = 1` a simple.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StringWalk<L> {
    support: Vec<L>,
    directions: Vec<Dir>,
}

impl<L: Clone + PartialEq> StringWalk<L> {
    pub fn new(support: Vec<L>, directions: Vec<Dir>) -> Result<Self> {
        if directions.len() + 1 != support.len() && !(support.is_empty() && directions.is_empty()) {
            return Err(Error::Parse(format!(
                "a walk on {} vertices needs {} arrows, got {}",
                support.len(),
                support.len().saturating_sub(1),
                directions.len()
            )));
        }
        for (idx, x) in support.iter().enumerate() {
            if support[..idx].contains(x) {
                return Err(Error::Parse("walk labels must be pairwise distinct".into()));
            }
        }
        Ok(StringWalk { support, directions })
    }

    pub fn support(&self) -> &[L] {
        &self.support
    }

    pub fn directions(&self) -> &[Dir] {
        &self.directions
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn reverse(&self) -> Self {
        StringWalk {
            support: self.support.iter().rev().cloned().collect(),
            directions: self.directions.iter().rev().map(|d| d.flipped()).collect(),
        }
    }

    /// The walk restricted to a range of positions.
    pub fn sub_walk(&self, range: Range<usize>) -> Self {
        if range.is_empty() {
            return StringWalk {
                support: Vec::new(),
                directions: Vec::new(),
            };
        }
        StringWalk {
            support: self.support[range.clone()].to_vec(),
            directions: self.directions[range.start..range.end - 1].to_vec(),
        }
    }

    /// Prepends `label`, joined to the current first vertex by `dir`.
    pub fn extend_left(&self, label: L, dir: Dir) -> Result<Self> {
        let mut support = vec![label];
        support.extend(self.support.iter().cloned());
        let mut directions = if self.support.is_empty() { Vec::new() } else { vec![dir] };
        directions.extend(self.directions.iter().copied());
        StringWalk::new(support, directions)
    }

    /// Appends `label`, joined to the current last vertex by `dir`.
    pub fn extend_right(&self, label: L, dir: Dir) -> Result<Self> {
        let mut support = self.support.clone();
        let mut directions = self.directions.clone();
        if !support.is_empty() {
            directions.push(dir);
        }
        support.push(label);
        StringWalk::new(support, directions)
    }

    /// Arrows as `(source position, target position)`.
    pub fn arrows(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.directions.iter().enumerate().map(|(p, d)| match d {
            Dir::Right => (p, p + 1),
            Dir::Left => (p + 1, p),
        })
    }
}

impl StringWalk<usize> {
    /// A walk on the labels `1..=ℓ` with the given arrows.
    pub fn from_directions(directions: Vec<Dir>) -> Self {
        StringWalk {
            support: (1..=directions.len() + 1).collect(),
            directions,
        }
    }
}

impl StringWalk<String> {
    /// Parses `1<2>3>4>5<6`. The empty string is the zero module.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return StringWalk::new(Vec::new(), Vec::new());
        }
        let mut support = Vec::new();
        let mut directions = Vec::new();
        let mut current = String::new();
        for ch in s.chars() {
            match ch {
                '<' | '>' => {
                    support.push(take_label(&mut current, s)?);
                    directions.push(if ch == '<' { Dir::Left } else { Dir::Right });
                }
                _ => current.push(ch),
            }
        }
        support.push(take_label(&mut current, s)?);
        StringWalk::new(support, directions)
    }
}

fn take_label(current: &mut String, whole: &str) -> Result<String> {
    let label = current.trim().to_string();
    current.clear();
    if label.is_empty() {
        return Err(Error::Parse(format!("empty vertex label in walk {whole:?}")));
    }
    Ok(label)
}

impl<L: fmt::Display> fmt::Display for StringWalk<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, x) in self.support.iter().enumerate() {
            if idx > 0 {
                let sym = if self.directions[idx - 1] == Dir::Left { '<' } else { '>' };
                write!(f, "{sym}")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// Leg lengths `(k_1, ..., k_m)`, all positive. `m = 0` is a simple module.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct StringShape {
    legs: Vec<usize>,
}

impl StringShape {
    pub fn new(legs: Vec<usize>) -> Result<Self> {
        if legs.contains(&0) {
            return Err(Error::Parse("legs must be positive".into()));
        }
        Ok(StringShape { legs })
    }

    pub fn simple() -> Self {
        StringShape { legs: Vec::new() }
    }

    /// Parses `1,3,1` or `simple`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("simple") || s.is_empty() {
            return Ok(StringShape::simple());
        }
        let legs = s
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad leg {:?} in shape {s:?}", x.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        StringShape::new(legs)
    }

    pub fn legs(&self) -> &[usize] {
        &self.legs
    }

    pub fn reverse(&self) -> Self {
        StringShape {
            legs: self.legs.iter().rev().copied().collect(),
        }
    }

    /// A walk of this shape whose first arrow points left.
    pub fn walk(&self) -> StringWalk<usize> {
        let mut dirs = Vec::new();
        for (idx, &k) in self.legs.iter().enumerate() {
            let d = if idx % 2 == 0 { Dir::Left } else { Dir::Right };
            dirs.extend(std::iter::repeat_n(d, k));
        }
        StringWalk::from_directions(dirs)
    }
}

impl fmt::Display for StringShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.legs.is_empty() {
            return write!(f, "simple");
        }
        let parts: Vec<String> = self.legs.iter().map(|k| k.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Lengths of the maximal runs of equally oriented arrows.
pub fn shape_of<L>(w: &StringWalk<L>) -> Result<StringShape> {
    if w.support.is_empty() {
        return Err(Error::ZeroModule);
    }
    let mut legs: Vec<usize> = Vec::new();
    let mut last: Option<Dir> = None;
    for &d in &w.directions {
        if Some(d) == last {
            *legs.last_mut().expect("run started") += 1;
        } else {
            legs.push(1);
            last = Some(d);
        }
    }
    Ok(StringShape { legs })
}

/// Subsets of `{1..m}` whose consecutive elements skip an even number of
/// integers, largest first and lexicographic within a size.
pub fn admissible_subsets(m: usize) -> Vec<Vec<usize>> {
    fn extend(current: &mut Vec<usize>, m: usize, out: &mut Vec<Vec<usize>>) {
        out.push(current.clone());
        let start = current.last().map_or(1, |&x| x + 1);
        let mut next = start;
        while next <= m {
            current.push(next);
            extend(current, m, out);
            current.pop();
            if current.is_empty() {
                next += 1;
            } else {
                next += 2;
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), m, &mut out);
    out.sort_by(|x, y| y.len().cmp(&x.len()).then_with(|| x.cmp(y)));
    out
}

/// `1 + Σ_I Π_{i ∈ I} k_i` over admissible `I`, summed by the last element of
/// `I` so the cost stays quadratic in `m`.
pub fn s_formula(shape: &StringShape) -> BigUint {
    let k = &shape.legs;
    let mut ending_at: Vec<BigUint> = Vec::with_capacity(k.len());
    for i in 0..k.len() {
        let mut prefix = BigUint::one();
        for j in (0..i).rev().step_by(2) {
            prefix += &ending_at[j];
        }
        ending_at.push(prefix * k[i]);
    }
    ending_at.iter().fold(BigUint::from(2u32), |acc, x| acc + x)
}

/// The leg recursion, memoised on intermediate shapes.
pub fn s_recursive(shape: &StringShape) -> BigUint {
    let mut memo = HashMap::new();
    recursion(&shape.legs, &mut memo)
}

fn normalized(mut legs: Vec<usize>) -> Vec<usize> {
    if legs.first() == Some(&0) {
        legs.remove(0);
    }
    legs
}

fn recursion(k: &[usize], memo: &mut HashMap<Vec<usize>, BigUint>) -> BigUint {
    match k.len() {
        0 => return BigUint::from(2u32),
        1 => return BigUint::from(k[0] + 2),
        _ => {}
    }
    if let Some(v) = memo.get(k) {
        return v.clone();
    }
    let factor = BigUint::from(k[0] + 2);
    let value = if k[1] > 1 {
        let mut head = vec![k[1] - 1];
        head.extend_from_slice(&k[2..]);
        let mut tail = vec![k[1] - 2];
        tail.extend_from_slice(&k[2..]);
        factor * recursion(&head, memo) - recursion(&normalized(tail), memo)
    } else {
        let first = recursion(&k[2..], memo);
        let second = if k.len() <= 3 {
            BigUint::one()
        } else {
            let mut tail = vec![k[3] - 1];
            tail.extend_from_slice(&k[4..]);
            recursion(&normalized(tail), memo)
        };
        factor * first - second
    };
    memo.insert(k.to_vec(), value.clone());
    value
}

/// Walks up to this many vertices are counted by enumerating every subset.
pub const ENUMERATION_LIMIT: usize = 20;

/// Number of arrow-closed subsets of the support, including the empty and full
/// sets. Walks longer than [`ENUMERATION_LIMIT`] are counted by sweeping the
/// same closure condition left to right instead of listing subsets.
pub fn s_bruteforce<L>(w: &StringWalk<L>) -> BigUint {
    if w.support.len() <= ENUMERATION_LIMIT {
        BigUint::from(enumerate_closed_subsets(&w.directions, w.support.len()))
    } else {
        count_closed_subsets(&w.directions, w.support.len())
    }
}

/// Tests every subset of `0..len` against the arrows.
pub fn enumerate_closed_subsets(directions: &[Dir], len: usize) -> u64 {
    assert!(len <= 40, "enumeration over {len} vertices is too large");
    let mut right = 0u64;
    let mut left = 0u64;
    for (p, d) in directions.iter().enumerate() {
        match d {
            Dir::Right => right |= 1 << p,
            Dir::Left => left |= 1 << p,
        }
    }
    let mut count = 0u64;
    for mask in 0u64..(1u64 << len) {
        let next = mask >> 1;
        let broken = (mask & right & !next) | (next & left & !mask);
        if broken == 0 {
            count += 1;
        }
    }
    count
}

/// Counts closed subsets by tracking whether the current vertex is included.
pub fn count_closed_subsets(directions: &[Dir], len: usize) -> BigUint {
    if len == 0 {
        return BigUint::one();
    }
    let mut inside = BigUint::one();
    let mut outside = BigUint::one();
    for d in directions {
        let (i, o) = match d {
            Dir::Right => (&inside + &outside, outside.clone()),
            Dir::Left => (inside.clone(), &inside + &outside),
        };
        inside = i;
        outside = o;
    }
    inside + outside
}
