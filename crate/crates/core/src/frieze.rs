//! Friezes of triangulated polygons.
//!
//! Entries are stored per diagonal. In grid coordinates `m(i, j)` with
//! `0 <= j - i <= N`, `m(i, i) = m(i, i + N) = 0`, `m(i, i + 1) = 1` and
//! otherwise `m(i, j)` is the entry of the chord `[i, j]`. Row `r = j - i` of
//! the rendered pattern lists `m(i, i + r)` at horizontal position `2i + r`, so
//! moving right within a row shifts both endpoints by one and the quiddity
//! sequence `m(v - 1, v + 1)` is row 2.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::ar::{module_of, ModuleDescriptor};
use crate::error::{Error, Result};
use crate::polygon::{all_diagonals, vertex, Chord, Triangulation};
use crate::string_count::{s_formula, shape_of};

/// A frieze of order `N`.
#[derive(Debug, Clone)]
pub struct Frieze {
    n: usize,
    entries: BTreeMap<Chord, BigUint>,
    source: Option<Triangulation>,
}

impl PartialEq for Frieze {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.entries == other.entries
    }
}

impl Eq for Frieze {}

impl Frieze {
    /// Builds a frieze from one entry per diagonal. Nothing beyond
    /// completeness is checked; see [`validate_frieze`].
    pub fn from_entries(n: usize, entries: BTreeMap<Chord, BigUint>, source: Option<Triangulation>) -> Result<Frieze> {
        if let Some(d) = all_diagonals(n).into_iter().find(|d| !entries.contains_key(d)) {
            return Err(Error::MissingEntry(d));
        }
        if let Some(c) = entries.keys().find(|c| c.n() != n || c.is_boundary()) {
            return Err(Error::NotADiagonal(*c));
        }
        Ok(Frieze { n, entries, source })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &BTreeMap<Chord, BigUint> {
        &self.entries
    }

    pub fn source(&self) -> Option<&Triangulation> {
        self.source.as_ref()
    }

    /// A copy without provenance.
    pub fn without_source(&self) -> Frieze {
        Frieze {
            n: self.n,
            entries: self.entries.clone(),
            source: None,
        }
    }

    /// Entry at a chord; boundary segments carry 1.
    pub fn entry(&self, c: &Chord) -> BigUint {
        if c.is_boundary() {
            return BigUint::one();
        }
        self.entries.get(c).cloned().expect("entries cover every diagonal")
    }

    /// Grid value `m(i, j)` for `0 <= j - i <= N`.
    pub fn m(&self, i: i64, j: i64) -> BigInt {
        let r = j - i;
        assert!((0..=self.n as i64).contains(&r), "m({i},{j}) is outside the fundamental strip");
        if r == 0 || r == self.n as i64 {
            return BigInt::zero();
        }
        let c = Chord::new(self.n, i, j).expect("0 < j - i < N");
        BigInt::from(self.entry(&c))
    }

    /// Diagonals whose entry is 1.
    pub fn unit_positions(&self) -> BTreeSet<Chord> {
        self.entries.iter().filter(|(_, v)| v.is_one()).map(|(c, _)| *c).collect()
    }

    /// The triangulation formed by the unit entries, when they form one.
    pub fn unit_triangulation(&self) -> Result<Triangulation> {
        Triangulation::new(self.n, self.unit_positions())
    }

    /// The first nontrivial row, `m(v - 1, v + 1)` for `v = 1..=N`.
    pub fn quiddity(&self) -> Vec<BigUint> {
        (1..=self.n as i64)
            .map(|v| self.m(v - 1, v + 1).to_biguint().expect("entries are positive"))
            .collect()
    }
}

/// Fills the frieze from its quiddity row with the continuant recurrence
/// `m(i, j + 1) = q(j) m(i, j) - m(i, j - 1)`.
pub fn frieze_from_quiddity(q: &[u64]) -> Result<Frieze> {
    let n = q.len();
    if n < 3 {
        return Err(Error::PolygonTooSmall { n, min: 3 });
    }
    let qv = |j: i64| BigInt::from(q[vertex(n, j) - 1]);
    let mut entries = BTreeMap::new();
    for i in 1..=n as i64 {
        let mut prev = BigInt::zero();
        let mut cur = BigInt::one();
        for j in i + 1..i + n as i64 {
            let next = qv(j) * &cur - &prev;
            prev = cur;
            cur = next;
            let r = j + 1 - i;
            if r < n as i64 - 1 {
                if !cur.is_positive() {
                    return Err(Error::NonPositiveEntry {
                        i: vertex(n, i),
                        j: vertex(n, j + 1),
                    });
                }
                let c = Chord::new(n, i, j + 1).expect("0 < r < N");
                let value = cur.to_biguint().expect("positive");
                if let Some(old) = entries.insert(c, value.clone()) {
                    if old != value {
                        return Err(Error::NotClosing(format!("{c} reads {old} and {value}")));
                    }
                }
            }
        }
        // `prev` is m(i, i+N-1) and `cur` is m(i, i+N).
        if !prev.is_one() || !cur.is_zero() {
            return Err(Error::NotClosing(format!(
                "row starting at {i} ends with {prev}, {cur} instead of 1, 0"
            )));
        }
    }
    Frieze::from_entries(n, entries, None)
}

/// Entry at `d` via the submodule count of the module at `d`.
pub fn cc_entry(t: &Triangulation, d: &Chord) -> BigUint {
    match module_of(t, d) {
        ModuleDescriptor::ShiftedProjective(_) | ModuleDescriptor::BoundaryUnit(_) => BigUint::one(),
        ModuleDescriptor::StringModule(w) => s_formula(&shape_of(&w).expect("nonzero module")),
    }
}

/// The frieze of `t`: 1 at its diagonals and `s(M_d)` elsewhere.
pub fn frieze_from_cc(t: &Triangulation) -> Frieze {
    let n = t.n();
    let entries = all_diagonals(n).into_iter().map(|d| (d, cc_entry(t, &d))).collect();
    Frieze::from_entries(n, entries, Some(t.clone())).expect("every diagonal has an entry")
}

/// Ways to give each vertex strictly between the endpoints of `d` (on the
/// clockwise arc from the lower endpoint) its own incident triangle of `t`.
pub fn matching_number(t: &Triangulation, d: &Chord) -> BigUint {
    let triangles = t.triangles();
    let inner: Vec<usize> = (d.lo() + 1..d.hi()).collect();
    let options: Vec<Vec<usize>> = inner
        .iter()
        .map(|v| (0..triangles.len()).filter(|&k| triangles[k].contains(v)).collect())
        .collect();
    fn count(options: &[Vec<usize>], used: &mut Vec<bool>) -> u64 {
        let Some((first, rest)) = options.split_first() else {
            return 1;
        };
        let mut total = 0;
        for &k in first {
            if !used[k] {
                used[k] = true;
                total += count(rest, used);
                used[k] = false;
            }
        }
        total
    }
    BigUint::from(count(&options, &mut vec![false; triangles.len()]))
}

/// A diamond `m(i,j) m(i+1,j+1) - m(i+1,j) m(i,j+1)` that is not 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiamondViolation {
    pub i: usize,
    pub j: usize,
    pub determinant: BigInt,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FriezeReport {
    pub diamonds: Vec<DiamondViolation>,
    pub nonpositive: Vec<Chord>,
    /// Diagonals where "entry is 1" and "belongs to the source" disagree.
    pub unit_mismatch: Vec<Chord>,
}

impl FriezeReport {
    pub fn is_valid(&self) -> bool {
        self.diamonds.is_empty() && self.nonpositive.is_empty() && self.unit_mismatch.is_empty()
    }
}

/// Checks every diamond of one fundamental domain, positivity and, when the
/// frieze records its triangulation, the unit positions.
pub fn validate_frieze(f: &Frieze) -> FriezeReport {
    let n = f.n as i64;
    let mut report = FriezeReport::default();
    for i in 1..=n {
        for j in i + 1..i + n {
            let det = f.m(i, j) * f.m(i + 1, j + 1) - f.m(i + 1, j) * f.m(i, j + 1);
            if !det.is_one() {
                report.diamonds.push(DiamondViolation {
                    i: vertex(f.n, i),
                    j: vertex(f.n, j),
                    determinant: det,
                });
            }
        }
    }
    report.nonpositive = f.entries.iter().filter(|(_, v)| v.is_zero()).map(|(c, _)| *c).collect();
    if let Some(t) = &f.source {
        let units = f.unit_positions();
        report.unit_mismatch = units.symmetric_difference(t.diagonals()).copied().collect();
    }
    report
}

/// Layout options for [`render_ascii`].
#[derive(Debug, Clone, Copy)]
pub struct RenderOptions {
    /// Extra periods printed after the first.
    pub repeat: usize,
    /// Highlight the unit entries at diagonals with ANSI escapes.
    pub color: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions { repeat: 1, color: false }
    }
}

/// Staggered layout with the rows of 0s and 1s, `N + 1` rows in all.
pub fn render_ascii(f: &Frieze, opts: &RenderOptions) -> String {
    let n = f.n as i64;
    let width = f
        .entries
        .values()
        .map(|v| v.to_string().len())
        .max()
        .unwrap_or(1)
        .max(1);
    let columns = 2 * n * (1 + opts.repeat as i64);
    let mut out = String::new();
    for r in 0..=n {
        let mut line = String::new();
        for x in 0..columns {
            if (x - r).rem_euclid(2) != 0 {
                line.push_str(&" ".repeat(width));
                continue;
            }
            let i = (x - r).div_euclid(2);
            let value = f.m(i, i + r);
            let text = value.to_string();
            let highlight = opts.color && value.is_one() && r >= 2 && r <= n - 2;
            let pad = " ".repeat(width - text.len());
            if highlight {
                let _ = write!(line, "{pad}\x1b[1;33m{text}\x1b[0m");
            } else {
                let _ = write!(line, "{pad}{text}");
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

impl Serialize for Frieze {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Entries<'a>(&'a BTreeMap<Chord, BigUint>);
        impl Serialize for Entries<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
                let mut map = serializer.serialize_map(Some(self.0.len()))?;
                for (c, v) in self.0 {
                    map.serialize_entry(&c.to_string(), &v.to_string())?;
                }
                map.end()
            }
        }
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("n", &self.n)?;
        map.serialize_entry("entries", &Entries(&self.entries))?;
        map.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum EntryValue {
    Number(u64),
    Text(String),
}

#[derive(Deserialize)]
struct FriezeData {
    n: usize,
    entries: BTreeMap<String, EntryValue>,
}

impl<'de> Deserialize<'de> for Frieze {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let data = FriezeData::deserialize(deserializer)?;
        let f = decode_data(data).map_err(D::Error::custom)?;
        match validate_frieze(&f).diamonds.len() {
            0 => Ok(f),
            k => Err(D::Error::custom(Error::FriezeRule(k))),
        }
    }
}

fn decode_data(data: FriezeData) -> Result<Frieze> {
    let n = data.n;
    if n < 3 {
        return Err(Error::PolygonTooSmall { n, min: 3 });
    }
    let mut entries = BTreeMap::new();
    for (key, value) in data.entries {
        let c = Chord::parse(n, &key)?;
        let v = match value {
            EntryValue::Number(x) => BigUint::from(x),
            EntryValue::Text(s) => s
                .trim()
                .parse::<BigUint>()
                .map_err(|_| Error::Parse(format!("entry {key} is not a nonnegative integer: {s:?}")))?,
        };
        if c.is_boundary() {
            if !v.is_one() {
                return Err(Error::Parse(format!("boundary entry {key} must be 1")));
            }
            continue;
        }
        if v.is_zero() {
            return Err(Error::NonPositiveEntry { i: c.lo(), j: c.hi() });
        }
        entries.insert(c, v);
    }
    let mut f = Frieze::from_entries(n, entries, None)?;
    f.source = f.unit_triangulation().ok();
    Ok(f)
}

/// `{ "n": N, "entries": { "i-j": "v", ... } }` with `i < j`.
pub fn encode(f: &Frieze) -> String {
    serde_json::to_string(f).expect("frieze serializes")
}

/// Inverse of [`encode`]; integer entries may also be JSON numbers. Grids that
/// break the diamond rule are rejected.
pub fn decode(s: &str) -> Result<Frieze> {
    let f = decode_unchecked(s)?;
    let report = validate_frieze(&f);
    if !report.diamonds.is_empty() {
        return Err(Error::FriezeRule(report.diamonds.len()));
    }
    Ok(f)
}

/// Reads the encoding without checking the diamond rule, for reporting
/// violations with [`validate_frieze`].
pub fn decode_unchecked(s: &str) -> Result<Frieze> {
    let data: FriezeData = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    decode_data(data)
}

/// Small entries as machine integers, for tests and display.
pub fn entry_u64(f: &Frieze, c: &Chord) -> Option<u64> {
    f.entry(c).to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ch(n: usize, i: i64, j: i64) -> Chord {
        Chord::new(n, i, j).unwrap()
    }

    fn hexagon() -> Triangulation {
        Triangulation::parse("6; 1-5, 2-5, 3-5").unwrap()
    }

    const HEXAGON_ENTRIES: [(i64, i64, u64); 9] = [
        (1, 3, 2),
        (1, 4, 3),
        (1, 5, 1),
        (2, 4, 2),
        (2, 5, 1),
        (2, 6, 2),
        (3, 5, 1),
        (3, 6, 3),
        (4, 6, 4),
    ];

    #[test]
    fn hexagon_from_quiddity() {
        let f = frieze_from_quiddity(&[2, 2, 2, 1, 4, 1]).unwrap();
        for (i, j, v) in HEXAGON_ENTRIES {
            assert_eq!(entry_u64(&f, &ch(6, i, j)), Some(v), "{i}-{j}");
        }
        assert_eq!(f, frieze_from_cc(&hexagon()));
    }

    #[test]
    fn small_friezes() {
        let f = frieze_from_quiddity(&[3, 1, 2, 2, 1]).unwrap();
        assert!(validate_frieze(&f).is_valid());
        let values: BTreeSet<u64> = f.entries().values().map(|v| v.to_u64().unwrap()).collect();
        assert_eq!(values, BTreeSet::from([1, 2, 3]));
        let sq = frieze_from_quiddity(&[1, 2, 1, 2]).unwrap();
        assert_eq!(entry_u64(&sq, &ch(4, 1, 3)), Some(2));
        assert_eq!(entry_u64(&sq, &ch(4, 2, 4)), Some(1));
        assert_eq!(entry_u64(&frieze_from_cc(&Triangulation::parse("5; 1-3, 1-4").unwrap()), &ch(5, 2, 5)), Some(3));
    }

    #[test]
    fn bad_quiddity() {
        assert!(matches!(frieze_from_quiddity(&[1, 1, 1, 1, 1]), Err(Error::NonPositiveEntry { .. })));
        assert!(matches!(frieze_from_quiddity(&[2, 2, 2, 2, 2]), Err(Error::NotClosing(_))));
    }

    #[test]
    fn matching_examples() {
        let t = hexagon();
        assert_eq!(matching_number(&t, &ch(6, 4, 6)), BigUint::from(4u32));
        assert_eq!(matching_number(&t, &ch(6, 2, 5)), BigUint::one());
        let q = t.quiddity();
        for v in 1..=6i64 {
            assert_eq!(matching_number(&t, &ch(6, v - 1, v + 1)), BigUint::from(q[v as usize - 1]));
        }
    }

    #[test]
    fn perturbation_is_reported() {
        let f = frieze_from_cc(&hexagon());
        assert!(validate_frieze(&f).is_valid());
        let mut entries = f.entries().clone();
        entries.insert(ch(6, 4, 6), BigUint::from(5u32));
        let g = Frieze::from_entries(6, entries, Some(hexagon())).unwrap();
        assert!(!validate_frieze(&g).diamonds.is_empty());
    }

    #[test]
    fn render_rows() {
        let f = frieze_from_cc(&hexagon());
        let text = render_ascii(&f, &RenderOptions::default());
        let rows: Vec<&str> = text.lines().collect();
        assert_eq!(rows.len(), 7);
        assert!(rows[0].split_whitespace().all(|x| x == "0"));
        assert!(rows[1].split_whitespace().all(|x| x == "1"));
        assert_eq!(rows[2].split_whitespace().count(), 12);
        let colored = render_ascii(&f, &RenderOptions { repeat: 0, color: true });
        assert!(colored.contains("\x1b[1;33m1\x1b[0m"));
    }

    #[test]
    fn encode_round_trip() {
        let f = frieze_from_cc(&hexagon());
        let s = encode(&f);
        assert!(s.starts_with(r#"{"n":6,"entries":{"1-3":"2","1-4":"3""#));
        let g = decode(&s).unwrap();
        assert_eq!(g, f);
        assert_eq!(g.source(), Some(&hexagon()));
        let bad = s.replace(r#""4-6":"4""#, r#""4-6":"5""#);
        assert!(matches!(decode(&bad), Err(Error::FriezeRule(_))));
        let numeric = r#"{"n":4,"entries":{"1-3":1,"2-4":2}}"#;
        assert_eq!(decode(numeric).unwrap(), frieze_from_quiddity(&[2, 1, 2, 1]).unwrap());
    }
}
