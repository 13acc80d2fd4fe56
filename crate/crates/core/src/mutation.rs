//! Entrywise frieze mutation.
//!
//! Flipping a diagonal `a` changes the frieze by `δ_a`, which is read off the
//! old frieze at the projections of each position onto eight sectional rays
//! around `a` and its flip `a'`. With the corners of `a`'s quadrilateral
//! labeled `k, q, l, p` clockwise (see [`Quadrilateral`]), the rays are the
//! following segments of the lines of chords sharing one vertex, listed in the
//! direction of the AR arrows (the free endpoint moves counterclockwise):
//!
//! | ray   | pivot | free endpoint in |
//! |-------|-------|------------------|
//! | `e`   | `l`   | `(p, k)`         |
//! | `d`   | `l`   | `(k, q)`         |
//! | `b`   | `k`   | `(l, p)`         |
//! | `c`   | `k`   | `(q, l)`         |
//! | `c^a` | `p`   | `(q, l)`         |
//! | `d_a` | `p`   | `(k, q)`         |
//! | `b_a` | `q`   | `(l, p)`         |
//! | `e^a` | `q`   | `(p, k)`         |

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::frieze::Frieze;
use crate::polygon::{all_diagonals, in_closed_arc, offset, vertex, Chord, Quadrilateral, Triangulation};

/// Position of a chord relative to the flip at `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RegionTag {
    PaShift,
    Sa,
    BC,
    DE,
    BE,
    CD,
    BDInterior,
    CEInterior,
    RayB,
    RayC,
    RayD,
    RayE,
    RayBa,
    RayDa,
    RayCa,
    RayEa,
    F,
}

impl RegionTag {
    pub const ALL: [RegionTag; 17] = [
        RegionTag::PaShift,
        RegionTag::Sa,
        RegionTag::BC,
        RegionTag::DE,
        RegionTag::BE,
        RegionTag::CD,
        RegionTag::BDInterior,
        RegionTag::CEInterior,
        RegionTag::RayB,
        RegionTag::RayC,
        RegionTag::RayD,
        RegionTag::RayE,
        RegionTag::RayBa,
        RegionTag::RayDa,
        RegionTag::RayCa,
        RegionTag::RayEa,
        RegionTag::F,
    ];

    /// Rays whose projections enter the δ formula for this region.
    pub fn rays_used(self) -> &'static [Ray] {
        use RegionTag::*;
        match self {
            BC => &[Ray::Ba, Ray::B, Ray::Ca, Ray::C],
            DE => &[Ray::Da, Ray::D, Ray::Ea, Ray::E],
            BE => &[Ray::Ea, Ray::E, Ray::Ba, Ray::B],
            CD => &[Ray::Ca, Ray::C, Ray::Da, Ray::D],
            CEInterior | RayE | RayC | RayEa | RayCa | PaShift | Sa => &[Ray::Ea, Ray::C, Ray::Ca, Ray::E],
            BDInterior | RayB | RayD | RayBa | RayDa => &[Ray::Da, Ray::B, Ray::Ba, Ray::D],
            F => &[],
        }
    }
}

impl fmt::Display for RegionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// The eight sectional rays around `a` and `a'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ray {
    B,
    C,
    D,
    E,
    Ba,
    Da,
    Ca,
    Ea,
}

impl Ray {
    pub const ALL: [Ray; 8] = [Ray::B, Ray::C, Ray::D, Ray::E, Ray::Ba, Ray::Da, Ray::Ca, Ray::Ea];

    /// `(pivot, from, to)`: the ray is `[pivot, x]` for `x` strictly inside
    /// the clockwise arc `(from, to)`.
    fn geometry(self, quad: &Quadrilateral) -> (usize, usize, usize) {
        let Quadrilateral { k, l, p, q, .. } = *quad;
        match self {
            Ray::E => (l, p, k),
            Ray::D => (l, k, q),
            Ray::B => (k, l, p),
            Ray::C => (k, q, l),
            Ray::Ca => (p, q, l),
            Ray::Da => (p, k, q),
            Ray::Ba => (q, l, p),
            Ray::Ea => (q, p, k),
        }
    }
}

impl fmt::Display for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Ray::B => "b",
            Ray::C => "c",
            Ray::D => "d",
            Ray::E => "e",
            Ray::Ba => "b_a",
            Ray::Da => "d_a",
            Ray::Ca => "c^a",
            Ray::Ea => "e^a",
        };
        write!(f, "{s}")
    }
}

/// Result of projecting a position onto a ray.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Projection {
    At(Chord),
    Zero,
}

/// Region of `d` from its crossings with `a` and the four sides.
pub fn classify_in(quad: &Quadrilateral, d: &Chord) -> RegionTag {
    use RegionTag::*;
    if d.is_boundary() {
        return F;
    }
    if *d == quad.a {
        return PaShift;
    }
    if *d == quad.a_flip {
        return Sa;
    }
    let sig = (
        d.crosses(&quad.a),
        d.crosses(&quad.b),
        d.crosses(&quad.c),
        d.crosses(&quad.d),
        d.crosses(&quad.e),
    );
    match sig {
        (true, true, true, false, false) => BC,
        (true, false, false, true, true) => DE,
        (false, true, false, false, true) => BE,
        (false, false, true, true, false) => CD,
        (true, true, false, true, false) => BDInterior,
        (true, false, true, false, true) => CEInterior,
        (true, true, false, false, false) => RayBa,
        (true, false, true, false, false) => RayCa,
        (true, false, false, true, false) => RayDa,
        (true, false, false, false, true) => RayEa,
        (false, true, false, false, false) => RayB,
        (false, false, true, false, false) => RayC,
        (false, false, false, true, false) => RayD,
        (false, false, false, false, true) => RayE,
        (false, false, false, false, false) => F,
        other => unreachable!("{d} has impossible crossing signature {other:?} against {}", quad.a),
    }
}

pub fn classify(t: &Triangulation, a: &Chord, d: &Chord) -> Result<RegionTag> {
    Ok(classify_in(&t.quadrilateral_of(a)?, d))
}

/// Positions on a ray, in arrow order.
pub fn ray_positions(quad: &Quadrilateral, ray: Ray) -> Vec<Chord> {
    let n = quad.n();
    let (pivot, from, to) = ray.geometry(quad);
    let len = offset(n, from, to).saturating_sub(1);
    (1..=len as i64)
        .map(|step| Chord::new(n, pivot as i64, to as i64 - step).expect("free endpoint differs from pivot"))
        .collect()
}

/// All eight rays of `a`.
pub fn rays(t: &Triangulation, a: &Chord) -> Result<BTreeMap<Ray, Vec<Chord>>> {
    let quad = t.quadrilateral_of(a)?;
    Ok(Ray::ALL.iter().map(|&r| (r, ray_positions(&quad, r))).collect())
}

/// Intersection of the two sectional lines through `d` with the closed
/// segment of `ray` (the ray together with its two unit ends).
pub fn project_in(quad: &Quadrilateral, d: &Chord, ray: Ray) -> Projection {
    let n = quad.n();
    let (pivot, from, to) = ray.geometry(quad);
    if let Some(w) = d.other_endpoint(pivot) {
        return if in_closed_arc(n, from, to, w) { Projection::At(*d) } else { Projection::Zero };
    }
    let hits: Vec<Chord> = [d.lo(), d.hi()]
        .into_iter()
        .filter(|&u| in_closed_arc(n, from, to, u))
        .map(|u| Chord::new(n, u as i64, pivot as i64).expect("u differs from pivot"))
        .collect();
    debug_assert!(hits.len() <= 1, "{d} meets ray {ray} twice");
    hits.first().map_or(Projection::Zero, |c| Projection::At(*c))
}

pub fn project(t: &Triangulation, a: &Chord, d: &Chord, ray: Ray) -> Result<Projection> {
    let quad = t.quadrilateral_of(a)?;
    let tag = classify_in(&quad, d);
    if !tag.rays_used().contains(&ray) {
        return Err(Error::RayNotApplicable {
            ray: ray.to_string(),
            region: tag.to_string(),
        });
    }
    Ok(project_in(&quad, d, ray))
}

fn value_at(f: &Frieze, p: Projection) -> BigInt {
    match p {
        Projection::Zero => BigInt::one(),
        Projection::At(c) => BigInt::from(f.entry(&c)),
    }
}

/// `δ_a(d)` from the entries of `f` at the projections of `d`.
pub fn delta_in(f: &Frieze, quad: &Quadrilateral, d: &Chord) -> BigInt {
    use RegionTag::*;
    let tag = classify_in(quad, d);
    let s = |ray: Ray| value_at(f, project_in(quad, d, ray));
    let two = BigInt::from(2);
    let three = BigInt::from(3);
    match tag {
        BC => (s(Ray::Ba) - s(Ray::B)) * (s(Ray::Ca) - s(Ray::C)),
        DE => (s(Ray::Da) - s(Ray::D)) * (s(Ray::Ea) - s(Ray::E)),
        BE => -((s(Ray::Ea) - &two * s(Ray::E)) * (s(Ray::Ba) - &two * s(Ray::B))),
        CD => -((s(Ray::Ca) - &two * s(Ray::C)) * (s(Ray::Da) - &two * s(Ray::D))),
        CEInterior | RayE | RayC | RayEa | RayCa | PaShift | Sa => {
            let (c, e) = (s(Ray::C), s(Ray::E));
            s(Ray::Ea) * &c + s(Ray::Ca) * &e - three * c * e
        }
        BDInterior | RayB | RayD | RayBa | RayDa => {
            let (b, dd) = (s(Ray::B), s(Ray::D));
            s(Ray::Da) * &b + s(Ray::Ba) * &dd - three * b * dd
        }
        F => BigInt::zero(),
    }
}

fn check_consistent(f: &Frieze, t: &Triangulation) -> Result<()> {
    if f.order() != t.n() {
        return Err(Error::SizeMismatch(f.order(), t.n()));
    }
    if let Some(x) = t.diagonals().iter().find(|x| !f.entry(x).is_one()) {
        return Err(Error::InconsistentFrieze(*x));
    }
    Ok(())
}

pub fn delta(f: &Frieze, t: &Triangulation, a: &Chord, d: &Chord) -> Result<BigInt> {
    check_consistent(f, t)?;
    Ok(delta_in(f, &t.quadrilateral_of(a)?, d))
}

/// `δ_a` at every diagonal.
pub fn delta_map(f: &Frieze, t: &Triangulation, a: &Chord) -> Result<BTreeMap<Chord, BigInt>> {
    check_consistent(f, t)?;
    let quad = t.quadrilateral_of(a)?;
    Ok(all_diagonals(t.n()).into_iter().map(|d| (d, delta_in(f, &quad, &d))).collect())
}

/// Region of every diagonal.
pub fn region_map(t: &Triangulation, a: &Chord) -> Result<BTreeMap<Chord, RegionTag>> {
    let quad = t.quadrilateral_of(a)?;
    Ok(all_diagonals(t.n()).into_iter().map(|d| (d, classify_in(&quad, &d))).collect())
}

/// Recovers the quadrilateral of a unit entry `a` from the frieze alone: the
/// sides are the first unit entries met along the line of chords at `a`'s
/// larger endpoint, going each way from `a`.
pub fn quadrilateral_from_frieze(f: &Frieze, a: &Chord) -> Result<Quadrilateral> {
    if a.is_boundary() {
        return Err(Error::NotADiagonal(*a));
    }
    if !f.entry(a).is_one() {
        return Err(Error::NotInTriangulation(*a));
    }
    let n = f.order();
    let (k, l) = a.endpoints();
    let first_unit = |step: i64| -> usize {
        (1..n as i64)
            .map(|m| vertex(n, k as i64 + step * m))
            .find(|&x| x != l && f.entry(&Chord::new(n, x as i64, l as i64).expect("x differs from l")).is_one())
            .expect("the boundary segments at l are units")
    };
    Ok(Quadrilateral::from_corners(n, k, first_unit(1), l, first_unit(-1)))
}

/// `δ_a` computed from the frieze and the unit entry `a` only.
pub fn delta_from_frieze(f: &Frieze, a: &Chord) -> Result<BTreeMap<Chord, BigInt>> {
    let quad = quadrilateral_from_frieze(f, a)?;
    Ok(all_diagonals(f.order()).into_iter().map(|d| (d, delta_in(f, &quad, &d))).collect())
}

/// The frieze after flipping `a`, computed as `f - δ_a`, with the flipped
/// triangulation.
pub fn mutate_frieze(f: &Frieze, t: &Triangulation, a: &Chord) -> Result<(Frieze, Triangulation)> {
    let deltas = delta_map(f, t, a)?;
    let (t2, _) = t.flip(a)?;
    let mut entries = BTreeMap::new();
    for (c, dv) in deltas {
        let v = BigInt::from(f.entry(&c)) - dv;
        if !v.is_positive() {
            return Err(Error::NonPositiveEntry { i: c.lo(), j: c.hi() });
        }
        entries.insert(c, v.to_biguint().expect("positive"));
    }
    Ok((Frieze::from_entries(t.n(), entries, Some(t2.clone()))?, t2))
}

/// The structured delta report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeltaReport {
    pub at: String,
    pub flip: String,
    pub regions: BTreeMap<String, String>,
    pub delta: BTreeMap<String, String>,
}

pub fn delta_report(f: &Frieze, t: &Triangulation, a: &Chord) -> Result<DeltaReport> {
    let deltas = delta_map(f, t, a)?;
    let regions = region_map(t, a)?;
    let (_, flip) = t.flip(a)?;
    Ok(DeltaReport {
        at: a.to_string(),
        flip: flip.to_string(),
        regions: regions.iter().map(|(c, r)| (c.to_string(), r.to_string())).collect(),
        delta: deltas.iter().map(|(c, v)| (c.to_string(), v.to_string())).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frieze::frieze_from_cc;

    fn ch(i: i64, j: i64) -> Chord {
        Chord::new(6, i, j).unwrap()
    }

    fn hexagon() -> Triangulation {
        Triangulation::parse("6; 1-5, 2-5, 3-5").unwrap()
    }

    #[test]
    fn hexagon_regions() {
        let t = hexagon();
        let a = ch(2, 5);
        assert_eq!(classify(&t, &a, &ch(4, 6)).unwrap(), RegionTag::BC);
        assert_eq!(classify(&t, &a, &ch(3, 6)).unwrap(), RegionTag::RayBa);
        assert_eq!(classify(&t, &a, &ch(2, 4)).unwrap(), RegionTag::RayC);
        assert_eq!(classify(&t, &a, &ch(1, 4)).unwrap(), RegionTag::RayCa);
        assert_eq!(classify(&t, &a, &ch(1, 5)).unwrap(), RegionTag::F);
        assert_eq!(classify(&t, &a, &ch(2, 5)).unwrap(), RegionTag::PaShift);
        assert_eq!(classify(&t, &a, &ch(1, 3)).unwrap(), RegionTag::Sa);
        assert!(classify(&t, &ch(1, 3), &ch(4, 6)).is_err());
    }

    #[test]
    fn hexagon_rays() {
        let r = rays(&hexagon(), &ch(2, 5)).unwrap();
        assert_eq!(r[&Ray::Ba], vec![ch(3, 6)]);
        assert_eq!(r[&Ray::Ca], vec![ch(1, 4)]);
        assert_eq!(r[&Ray::B], vec![ch(2, 6)]);
        assert_eq!(r[&Ray::C], vec![ch(2, 4)]);
        assert!(r[&Ray::E].is_empty());
    }

    #[test]
    fn hexagon_projections() {
        let (t, a, d) = (hexagon(), ch(2, 5), ch(4, 6));
        assert_eq!(project(&t, &a, &d, Ray::Ba).unwrap(), Projection::At(ch(3, 6)));
        assert_eq!(project(&t, &a, &d, Ray::B).unwrap(), Projection::At(ch(2, 6)));
        assert_eq!(project(&t, &a, &d, Ray::Ca).unwrap(), Projection::At(ch(1, 4)));
        assert_eq!(project(&t, &a, &d, Ray::C).unwrap(), Projection::At(ch(2, 4)));
        assert!(project(&t, &a, &d, Ray::E).is_err());
        assert_eq!(project(&t, &a, &ch(3, 6), Ray::Ba).unwrap(), Projection::At(ch(3, 6)));
    }

    #[test]
    fn hexagon_delta_and_mutation() {
        let t = hexagon();
        let a = ch(2, 5);
        let f = frieze_from_cc(&t);
        let expected = [
            ((1, 3), 1),
            ((1, 4), 1),
            ((2, 4), -1),
            ((2, 5), -1),
            ((2, 6), -1),
            ((3, 6), 1),
            ((4, 6), 1),
            ((1, 5), 0),
            ((3, 5), 0),
        ];
        let map = delta_map(&f, &t, &a).unwrap();
        for ((i, j), v) in expected {
            assert_eq!(map[&ch(i, j)], BigInt::from(v), "{i}-{j}");
        }
        let (g, t2) = mutate_frieze(&f, &t, &a).unwrap();
        assert_eq!(g, frieze_from_cc(&t2));
        assert_eq!(delta_from_frieze(&f.without_source(), &a).unwrap(), map);
    }

    #[test]
    fn inconsistent_frieze_is_rejected() {
        let t = hexagon();
        let other = Triangulation::parse("6; 1-3, 1-4, 1-5").unwrap();
        let f = frieze_from_cc(&other);
        assert!(matches!(delta(&f, &t, &ch(2, 5), &ch(4, 6)), Err(Error::InconsistentFrieze(_))));
    }
}
