//! Polygon vertices, chords, triangulations and flips.
//!
//! Vertices of the N-gon are labeled clockwise `1..=N`; every input label is
//! reduced modulo N. A chord is an unordered pair of distinct vertices. It is a
//! boundary segment when its endpoints are cyclically adjacent and a diagonal
//! otherwise.

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Reduces an arbitrary integer label to the range `1..=n`.
pub fn vertex(n: usize, i: i64) -> usize {
    ((i - 1).rem_euclid(n as i64) + 1) as usize
}

/// Clockwise distance from vertex `from` to vertex `to`, in `0..n`.
pub fn offset(n: usize, from: usize, to: usize) -> usize {
    (to + n - from) % n
}

/// True when `x` lies strictly inside the clockwise arc from `from` to `to`.
pub fn in_open_arc(n: usize, from: usize, to: usize, x: usize) -> bool {
    let o = offset(n, from, x);
    o > 0 && o < offset(n, from, to)
}

/// True when `x` lies on the closed clockwise arc from `from` to `to`.
pub fn in_closed_arc(n: usize, from: usize, to: usize, x: usize) -> bool {
    offset(n, from, x) <= offset(n, from, to)
}

/// An unordered pair of distinct vertices of the N-gon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Chord {
    n: usize,
    lo: usize,
    hi: usize,
}

impl Chord {
    /// Builds the chord `[i, j]`, reducing both labels modulo `n`.
    pub fn new(n: usize, i: i64, j: i64) -> Result<Chord> {
        if n < 3 {
            return Err(Error::PolygonTooSmall { n, min: 3 });
        }
        let (a, b) = (vertex(n, i), vertex(n, j));
        if a == b {
            return Err(Error::DegenerateChord { n, i, j });
        }
        Ok(Chord {
            n,
            lo: a.min(b),
            hi: a.max(b),
        })
    }

    /// Parses `i-j`.
    pub fn parse(n: usize, s: &str) -> Result<Chord> {
        let (i, j) = s
            .trim()
            .split_once('-')
            .ok_or_else(|| Error::Parse(format!("expected i-j, got {s:?}")))?;
        let parse = |x: &str| {
            x.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad vertex label {x:?} in {s:?}")))
        };
        Chord::new(n, parse(i)?, parse(j)?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Smaller endpoint label.
    pub fn lo(&self) -> usize {
        self.lo
    }

    /// Larger endpoint label.
    pub fn hi(&self) -> usize {
        self.hi
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.lo, self.hi)
    }

    pub fn is_boundary(&self) -> bool {
        let d = self.hi - self.lo;
        d == 1 || d == self.n - 1
    }

    pub fn is_diagonal(&self) -> bool {
        !self.is_boundary()
    }

    pub fn has_endpoint(&self, v: usize) -> bool {
        self.lo == v || self.hi == v
    }

    /// The endpoint different from `v`, if `v` is an endpoint.
    pub fn other_endpoint(&self, v: usize) -> Option<usize> {
        if self.lo == v {
            Some(self.hi)
        } else if self.hi == v {
            Some(self.lo)
        } else {
            None
        }
    }

    pub fn shares_endpoint(&self, other: &Chord) -> bool {
        self.has_endpoint(other.lo) || self.has_endpoint(other.hi)
    }

    /// Interleaving test. Both chords must come from the same polygon.
    pub fn crosses(&self, other: &Chord) -> bool {
        debug_assert_eq!(self.n, other.n);
        if self.shares_endpoint(other) {
            return false;
        }
        let inside = |x: usize| self.lo < x && x < self.hi;
        inside(other.lo) != inside(other.hi)
    }

    /// The chord obtained by adding `k` to both endpoints.
    pub fn shift(&self, k: i64) -> Chord {
        Chord::new(self.n, self.lo as i64 + k, self.hi as i64 + k).expect("shift keeps endpoints distinct")
    }
}

impl fmt::Display for Chord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.lo, self.hi)
    }
}

/// Checked crossing test.
pub fn chord_crosses(x: &Chord, y: &Chord) -> Result<bool> {
    if x.n != y.n {
        return Err(Error::SizeMismatch(x.n, y.n));
    }
    Ok(x.crosses(y))
}

/// All diagonals of the N-gon in lexicographic order.
pub fn all_diagonals(n: usize) -> Vec<Chord> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 2..=n {
            if !(i == 1 && j == n) {
                out.push(Chord { n, lo: i, hi: j });
            }
        }
    }
    out
}

/// A maximal set of pairwise noncrossing diagonals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "TriangulationData", into = "TriangulationData")]
pub struct Triangulation {
    n: usize,
    diagonals: BTreeSet<Chord>,
}

/// Structured encoding `{ "n": N, "diagonals": [[i, j], ...] }`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TriangulationData {
    pub n: usize,
    pub diagonals: Vec<[i64; 2]>,
}

impl TryFrom<TriangulationData> for Triangulation {
    type Error = Error;

    fn try_from(data: TriangulationData) -> Result<Self> {
        let chords = data
            .diagonals
            .iter()
            .map(|[i, j]| Chord::new(data.n, *i, *j))
            .collect::<Result<Vec<_>>>()?;
        Triangulation::new(data.n, chords)
    }
}

impl From<Triangulation> for TriangulationData {
    fn from(t: Triangulation) -> Self {
        TriangulationData {
            n: t.n,
            diagonals: t
                .diagonals
                .iter()
                .map(|c| [c.lo as i64, c.hi as i64])
                .collect(),
        }
    }
}

/// The quadrilateral formed by the two triangles on either side of `a`.
///
/// With `a = [k, l]` and `k < l`, `q` is the apex strictly inside the clockwise
/// arc from `k` to `l` and `p` the apex on the arc from `l` back to `k`, so the
/// corners read `k, q, l, p` clockwise. The sides are `b = [l,p]`, `c = [l,q]`,
/// `d = [k,q]`, `e = [k,p]`, and the quiver carries `b -> a -> c`,
/// `d -> a -> e`, `e -> b`, `c -> d` whenever those sides are diagonals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Quadrilateral {
    pub a: Chord,
    pub a_flip: Chord,
    pub b: Chord,
    pub c: Chord,
    pub d: Chord,
    pub e: Chord,
    pub k: usize,
    pub l: usize,
    pub p: usize,
    pub q: usize,
}

impl Quadrilateral {
    /// Builds the quadrilateral from its corners `k, q, l, p` (clockwise).
    pub fn from_corners(n: usize, k: usize, q: usize, l: usize, p: usize) -> Quadrilateral {
        let ch = |x: usize, y: usize| Chord::new(n, x as i64, y as i64).expect("distinct corners");
        Quadrilateral {
            a: ch(k, l),
            a_flip: ch(p, q),
            b: ch(l, p),
            c: ch(l, q),
            d: ch(k, q),
            e: ch(k, p),
            k,
            l,
            p,
            q,
        }
    }

    pub fn n(&self) -> usize {
        self.a.n
    }

    pub fn sides(&self) -> [Chord; 4] {
        [self.b, self.c, self.d, self.e]
    }
}

impl Triangulation {
    /// Validates and builds a triangulation. The first crossing pair (in input
    /// order) or the cardinality defect is reported.
    pub fn new(n: usize, diagonals: impl IntoIterator<Item = Chord>) -> Result<Triangulation> {
        if n < 3 {
            return Err(Error::PolygonTooSmall { n, min: 3 });
        }
        let list: Vec<Chord> = diagonals.into_iter().collect();
        let mut seen: Vec<Chord> = Vec::with_capacity(list.len());
        for c in &list {
            if c.n != n {
                return Err(Error::SizeMismatch(n, c.n));
            }
            if c.is_boundary() {
                return Err(Error::NotADiagonal(*c));
            }
            if seen.contains(c) {
                return Err(Error::DuplicateDiagonal(*c));
            }
            if let Some(x) = seen.iter().find(|x| x.crosses(c)) {
                return Err(Error::Crossing(*x, *c));
            }
            seen.push(*c);
        }
        if seen.len() != n - 3 {
            return Err(Error::Cardinality {
                n,
                expected: n - 3,
                found: seen.len(),
            });
        }
        Ok(Triangulation {
            n,
            diagonals: seen.into_iter().collect(),
        })
    }

    /// Parses `N; i1-j1, i2-j2, ...`.
    pub fn parse(s: &str) -> Result<Triangulation> {
        let (head, tail) = s
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("expected `N; i-j, ...`, got {s:?}")))?;
        let n: usize = head
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad polygon size {:?}", head.trim())))?;
        if n < 3 {
            return Err(Error::PolygonTooSmall { n, min: 3 });
        }
        let chords = tail
            .split(',')
            .map(str::trim)
            .filter(|x| !x.is_empty())
            .map(|x| Chord::parse(n, x))
            .collect::<Result<Vec<_>>>()?;
        Triangulation::new(n, chords)
    }

    /// The fan of all diagonals at vertex `v`.
    pub fn fan(n: usize, v: usize) -> Result<Triangulation> {
        let chords = (2..n as i64 - 1)
            .map(|k| Chord::new(n, v as i64, v as i64 + k))
            .collect::<Result<Vec<_>>>()?;
        Triangulation::new(n, chords)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn diagonals(&self) -> &BTreeSet<Chord> {
        &self.diagonals
    }

    pub fn contains(&self, c: &Chord) -> bool {
        self.diagonals.contains(c)
    }

    /// Neighbors of `v` along diagonals and boundary segments, ordered by
    /// clockwise offset from `v`.
    fn neighbors(&self, v: usize) -> Vec<usize> {
        let n = self.n;
        let mut out: Vec<usize> = self
            .diagonals
            .iter()
            .filter_map(|c| c.other_endpoint(v))
            .chain([vertex(n, v as i64 + 1), vertex(n, v as i64 - 1)])
            .collect();
        out.sort_by_key(|&w| offset(n, v, w));
        out
    }

    /// Triangles as sorted vertex triples.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let mut set = BTreeSet::new();
        for v in 1..=self.n {
            let nb = self.neighbors(v);
            for w in nb.windows(2) {
                let mut tri = [v, w[0], w[1]];
                tri.sort_unstable();
                set.insert(tri);
            }
        }
        set.into_iter().collect()
    }

    /// Number of triangles at each vertex, indexed from vertex 1.
    pub fn quiddity(&self) -> Vec<usize> {
        (1..=self.n).map(|v| self.neighbors(v).len() - 1).collect()
    }

    pub fn quadrilateral_of(&self, a: &Chord) -> Result<Quadrilateral> {
        if !self.contains(a) {
            return Err(Error::NotInTriangulation(*a));
        }
        let n = self.n;
        let (k, l) = a.endpoints();
        let apexes: Vec<usize> = self
            .triangles()
            .into_iter()
            .filter(|t| t.contains(&k) && t.contains(&l))
            .map(|t| t.into_iter().find(|&x| x != k && x != l).expect("apex"))
            .collect();
        debug_assert_eq!(apexes.len(), 2);
        let (q, p) = if in_open_arc(n, k, l, apexes[0]) {
            (apexes[0], apexes[1])
        } else {
            (apexes[1], apexes[0])
        };
        Ok(Quadrilateral::from_corners(n, k, q, l, p))
    }

    /// Replaces `a` by the other diagonal of its quadrilateral.
    pub fn flip(&self, a: &Chord) -> Result<(Triangulation, Chord)> {
        let quad = self.quadrilateral_of(a)?;
        let mut diagonals = self.diagonals.clone();
        diagonals.remove(a);
        diagonals.insert(quad.a_flip);
        Ok((Triangulation { n: self.n, diagonals }, quad.a_flip))
    }

    /// Diagonals of the triangulation crossed by `d`, in the order met when
    /// traversing `d`. Of the two traversal directions, the one whose sequence
    /// is lexicographically larger is returned.
    pub fn crossing_walk(&self, d: &Chord) -> Result<Vec<Chord>> {
        if d.is_boundary() {
            return Err(Error::NotADiagonal(*d));
        }
        if self.contains(d) {
            return Err(Error::InTriangulation(*d));
        }
        let n = self.n;
        let (u, v) = d.endpoints();
        let mut crossed: Vec<(usize, usize, Chord)> = self
            .diagonals
            .iter()
            .filter(|x| x.crosses(d))
            .map(|x| {
                let (s, w) = if in_open_arc(n, u, v, x.lo) { (x.lo, x.hi) } else { (x.hi, x.lo) };
                (offset(n, u, s), offset(n, w, u), *x)
            })
            .collect();
        crossed.sort();
        let mut walk: Vec<Chord> = crossed.into_iter().map(|(_, _, x)| x).collect();
        if walk.iter().rev().lt(walk.iter()) {
            return Ok(walk);
        }
        walk.reverse();
        Ok(walk)
    }

    /// A triangulation reached from the fan at vertex 1 by `n * n` random
    /// flips.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Triangulation> {
        let mut t = Triangulation::fan(n, 1)?;
        if n < 4 {
            return Ok(t);
        }
        for _ in 0..n * n {
            let idx = rng.gen_range(0..t.diagonals.len());
            let a = *t.diagonals.iter().nth(idx).expect("index in range");
            t = t.flip(&a)?.0;
        }
        Ok(t)
    }
}

impl fmt::Display for Triangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.n)?;
        for (idx, c) in self.diagonals.iter().enumerate() {
            let sep = if idx == 0 { " " } else { ", " };
            write!(f, "{sep}{c}")?;
        }
        Ok(())
    }
}

/// Every triangulation of the N-gon, each exactly once.
pub fn all_triangulations(n: usize) -> Vec<Triangulation> {
    fn rec(poly: &[usize], n: usize) -> Vec<Vec<Chord>> {
        let m = poly.len();
        if m < 3 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        let (first, last) = (poly[0], poly[m - 1]);
        for k in 1..m - 1 {
            let left = rec(&poly[..=k], n);
            let right = rec(&poly[k..], n);
            for l in &left {
                for r in &right {
                    let mut ds = Vec::with_capacity(l.len() + r.len() + 2);
                    if k >= 2 {
                        ds.push(Chord::new(n, first as i64, poly[k] as i64).expect("distinct"));
                    }
                    if k <= m - 3 {
                        ds.push(Chord::new(n, poly[k] as i64, last as i64).expect("distinct"));
                    }
                    ds.extend_from_slice(l);
                    ds.extend_from_slice(r);
                    out.push(ds);
                }
            }
        }
        out
    }
    if n < 3 {
        return Vec::new();
    }
    let poly: Vec<usize> = (1..=n).collect();
    rec(&poly, n)
        .into_iter()
        .map(|ds| Triangulation {
            n,
            diagonals: ds.into_iter().collect(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ch(n: usize, i: i64, j: i64) -> Chord {
        Chord::new(n, i, j).unwrap()
    }

    fn hexagon_fan() -> Triangulation {
        Triangulation::parse("6; 1-5, 2-5, 3-5").unwrap()
    }

    #[test]
    fn crossing_examples() {
        assert!(ch(6, 2, 5).crosses(&ch(6, 1, 3)));
        assert!(!ch(6, 2, 5).crosses(&ch(6, 3, 5)));
        assert!(ch(6, 1, 5).crosses(&ch(6, 2, 6)));
        assert!(!ch(6, 1, 2).crosses(&ch(6, 3, 5)));
        assert_eq!(chord_crosses(&ch(6, 1, 3), &ch(7, 2, 4)), Err(Error::SizeMismatch(6, 7)));
    }

    #[test]
    fn labels_reduce_modulo_n() {
        assert_eq!(ch(6, 7, 11), ch(6, 1, 5));
        assert_eq!(ch(6, 0, 3), ch(6, 3, 6));
        assert!(ch(6, 6, 1).is_boundary());
        assert!(Chord::new(6, 2, 8).is_err());
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert_eq!(
            Triangulation::parse("6; 1-4, 2-5, 3-5"),
            Err(Error::Crossing(ch(6, 1, 4), ch(6, 2, 5)))
        );
        assert!(matches!(
            Triangulation::parse("6; 1-5, 2-5"),
            Err(Error::Cardinality { expected: 3, found: 2, .. })
        ));
        assert_eq!(Triangulation::parse("6; 1-2, 2-5, 3-5"), Err(Error::NotADiagonal(ch(6, 1, 2))));
        assert!(Triangulation::parse("6 1-2").is_err());
    }

    #[test]
    fn json_round_trip() {
        let t = hexagon_fan();
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(s, r#"{"n":6,"diagonals":[[1,5],[2,5],[3,5]]}"#);
        let back: Triangulation = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
        assert!(serde_json::from_str::<Triangulation>(r#"{"n":6,"diagonals":[[1,4],[2,5],[3,5]]}"#).is_err());
    }

    #[test]
    fn flip_examples() {
        let t = hexagon_fan();
        let (t2, a2) = t.flip(&ch(6, 2, 5)).unwrap();
        assert_eq!(a2, ch(6, 1, 3));
        assert_eq!(t2.flip(&a2).unwrap(), (t.clone(), ch(6, 2, 5)));
        let p = Triangulation::parse("5; 1-3, 1-4").unwrap();
        assert_eq!(p.flip(&ch(5, 1, 4)).unwrap().1, ch(5, 3, 5));
        assert_eq!(t.flip(&ch(6, 1, 3)), Err(Error::NotInTriangulation(ch(6, 1, 3))));
    }

    #[test]
    fn quadrilateral_examples() {
        let quad = hexagon_fan().quadrilateral_of(&ch(6, 2, 5)).unwrap();
        assert_eq!(quad.b, ch(6, 1, 5));
        assert_eq!(quad.c, ch(6, 3, 5));
        assert_eq!(quad.d, ch(6, 2, 3));
        assert_eq!(quad.e, ch(6, 1, 2));
        assert_eq!(quad.a_flip, ch(6, 1, 3));
        let p = Triangulation::parse("5; 1-3, 1-4").unwrap();
        let quad = p.quadrilateral_of(&ch(5, 1, 3)).unwrap();
        // Only [1,4] is interior; [1,2], [2,3], [3,4] are all boundary.
        assert_eq!(quad.sides().iter().filter(|s| s.is_boundary()).count(), 3);
    }

    #[test]
    fn quiddity_examples() {
        assert_eq!(hexagon_fan().quiddity(), vec![2, 2, 2, 1, 4, 1]);
        assert_eq!(Triangulation::parse("5; 1-3, 1-4").unwrap().quiddity(), vec![3, 1, 2, 2, 1]);
    }

    #[test]
    fn crossing_walk_examples() {
        let t = hexagon_fan();
        assert_eq!(
            t.crossing_walk(&ch(6, 4, 6)).unwrap(),
            vec![ch(6, 3, 5), ch(6, 2, 5), ch(6, 1, 5)]
        );
        assert_eq!(t.crossing_walk(&ch(6, 1, 3)).unwrap(), vec![ch(6, 2, 5)]);
        assert_eq!(t.crossing_walk(&ch(6, 1, 4)).unwrap(), vec![ch(6, 3, 5), ch(6, 2, 5)]);
        assert_eq!(t.crossing_walk(&ch(6, 2, 5)), Err(Error::InTriangulation(ch(6, 2, 5))));
    }

    #[test]
    fn catalan_counts() {
        let counts: Vec<usize> = (3..=9).map(|n| all_triangulations(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 14, 42, 132, 429]);
        for t in all_triangulations(7) {
            Triangulation::new(7, t.diagonals().iter().copied()).unwrap();
            assert_eq!(t.triangles().len(), 5);
        }
    }

    #[test]
    fn display_round_trip() {
        let t = hexagon_fan();
        assert_eq!(t.to_string(), "6; 1-5, 2-5, 3-5");
        assert_eq!(Triangulation::parse(&t.to_string()).unwrap(), t);
        assert_eq!(Triangulation::parse("3;").unwrap().diagonals().len(), 0);
    }
}
