//! Auslander-Reiten combinatorics on chords.
//!
//! Positions are chords: diagonals name objects of the cluster category and
//! boundary segments name the projective-injectives of its Frobenius model.
//! Arrows lower one endpoint by one, `[i,j] -> [i,j-1]` and `[i,j] -> [i-1,j]`,
//! and `τ[i,j] = [i+1,j+1]`. The shifted projective `P_x[1]` sits at the
//! diagonal `x` itself, so `P_x` sits at `τ⁻¹x`.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::polygon::{offset, Chord, Triangulation};
use crate::quiver::quiver_of;
use crate::string_count::{Dir, StringShape, StringWalk};

pub fn tau(p: &Chord) -> Result<Chord> {
    if p.is_boundary() {
        return Err(Error::BoundaryPosition(*p));
    }
    Ok(p.shift(1))
}

pub fn tau_inv(p: &Chord) -> Result<Chord> {
    if p.is_boundary() {
        return Err(Error::BoundaryPosition(*p));
    }
    Ok(p.shift(-1))
}

/// Whether `Hom(X, M)` is nonzero: `M = X` or `M` crosses `τX`.
pub fn hom_nonzero(x: &Chord, m: &Chord) -> Result<bool> {
    if m.is_boundary() {
        return Err(Error::BoundaryPosition(*m));
    }
    Ok(x == m || m.crosses(&tau(x)?))
}

/// Whether `Ext¹(X, Y)` is nonzero, i.e. the chords cross.
pub fn ext_nonzero(x: &Chord, y: &Chord) -> bool {
    x.crosses(y)
}

/// Successors of a position along the two kinds of arrows.
pub fn arrows_from(p: &Chord) -> [Chord; 2] {
    let (i, j) = (p.lo() as i64, p.hi() as i64);
    let n = p.n();
    [
        Chord::new(n, i, j - 1).expect("diagonal endpoints differ by at least 2"),
        Chord::new(n, i - 1, j).expect("diagonal endpoints differ by at least 2"),
    ]
}

/// The rectangle starting at `X`, enumerated by walking the two sectional
/// rays out of `X` up to the boundary and sweeping the region between them.
///
/// With `X = [i, j]`, the position reached after `s` steps lowering `j` and
/// `t` steps lowering `i` is `[j - s, i - t]`; the far corner is `τ²X`.
pub fn hom_rectangle(x: &Chord) -> Result<BTreeSet<Chord>> {
    if x.is_boundary() {
        return Err(Error::BoundaryPosition(*x));
    }
    let n = x.n();
    let (i, j) = (x.lo() as i64, x.hi() as i64);
    let s_steps = (j - i - 2) as usize;
    let t_steps = n - (j - i) as usize - 2;
    let at = |s: usize, t: usize| Chord::new(n, j - s as i64, i - t as i64).expect("inside the rectangle");
    let mut seen = BTreeSet::new();
    let mut queued = BTreeSet::from([(0, 0)]);
    let mut queue = VecDeque::from([(0usize, 0usize)]);
    while let Some((s, t)) = queue.pop_front() {
        let pos = at(s, t);
        seen.insert(pos);
        let succ = arrows_from(&pos);
        for (ds, dt, ok) in [(1, 0, s < s_steps), (0, 1, t < t_steps)] {
            if ok && queued.insert((s + ds, t + dt)) {
                debug_assert!(succ.contains(&at(s + ds, t + dt)));
                queue.push_back((s + ds, t + dt));
            }
        }
    }
    Ok(seen)
}

/// What sits at an AR position relative to a triangulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleDescriptor {
    ShiftedProjective(Chord),
    BoundaryUnit(Chord),
    StringModule(StringWalk<Chord>),
}

/// The module at position `p`: a string over the diagonals crossed by `p`,
/// with arrows read from the quiver of `t`.
pub fn module_of(t: &Triangulation, p: &Chord) -> ModuleDescriptor {
    if p.is_boundary() {
        return ModuleDescriptor::BoundaryUnit(*p);
    }
    if t.contains(p) {
        return ModuleDescriptor::ShiftedProjective(*p);
    }
    let support = t.crossing_walk(p).expect("p is a diagonal outside t");
    let quiver = quiver_of(t);
    let directions = support
        .windows(2)
        .map(|w| {
            if quiver.arrow_count(&w[0], &w[1]) > 0 {
                Dir::Right
            } else {
                debug_assert!(quiver.arrow_count(&w[1], &w[0]) > 0);
                Dir::Left
            }
        })
        .collect();
    ModuleDescriptor::StringModule(StringWalk::new(support, directions).expect("crossed diagonals are distinct"))
}

/// Leg lengths read off the projectives in the Hom-rectangle ending at `p`.
///
/// Coordinates `(s, t)` name the position `[u+s, v+t]` where `p = [u, v]`;
/// arrows lower `s` or `t`, and `τ^r p = (r, r)`. The walk starts on the first
/// line through some `τ^r p` that carries a projective, runs along it towards
/// `p`, then alternates between the two line directions, each time collecting
/// the chain of projectives that ends (or starts) at the current one.
pub fn shape_via_construction(t: &Triangulation, p: &Chord) -> Result<StringShape> {
    if p.is_boundary() {
        return Err(Error::BoundaryPosition(*p));
    }
    if t.contains(p) {
        return Err(Error::InTriangulation(*p));
    }
    let n = t.n();
    let (u, v) = p.endpoints();
    let s_max = offset(n, u, v) - 2;
    let t_max = offset(n, v, u) - 2;
    let coords = |x: &Chord| -> Option<(usize, usize)> {
        for (a, b) in [(x.lo(), x.hi()), (x.hi(), x.lo())] {
            let (s, t) = (offset(n, u, a), offset(n, v, b));
            if s <= s_max && t <= t_max {
                return Some((s, t));
            }
        }
        None
    };
    let mut projectives: Vec<(usize, usize, Chord)> = Vec::new();
    for x in t.diagonals() {
        let pos = tau_inv(x)?;
        if hom_nonzero(&pos, p)? {
            let (s, t) = coords(&pos).expect("Hom-support lies in the rectangle");
            projectives.push((s, t, *x));
        }
    }
    if projectives.is_empty() {
        return Ok(StringShape::simple());
    }
    let min_s = projectives.iter().map(|x| x.0).min().expect("nonempty");
    let min_t = projectives.iter().map(|x| x.1).min().expect("nonempty");
    // (line coordinate, along coordinate) in the chosen orientation.
    let grid: Vec<(usize, usize, Chord)> = if min_s <= min_t {
        projectives
    } else {
        projectives.into_iter().map(|(s, t, x)| (t, s, x)).collect()
    };
    let line0 = grid.iter().map(|x| x.0).min().expect("nonempty");
    let first: Vec<&(usize, usize, Chord)> = grid.iter().filter(|x| x.0 == line0).collect();
    let mut legs = vec![first.len() - 1];
    let mut visited: BTreeSet<Chord> = first.iter().map(|x| x.2).collect();
    let mut current = **first.iter().min_by_key(|x| x.1).expect("nonempty");
    let mut across = true;
    loop {
        let chain: Vec<&(usize, usize, Chord)> = if across {
            grid.iter().filter(|x| x.1 == current.1 && x.0 > current.0).collect()
        } else {
            grid.iter().filter(|x| x.0 == current.0 && x.1 < current.1).collect()
        };
        if chain.is_empty() {
            break;
        }
        legs.push(chain.len());
        visited.extend(chain.iter().map(|x| x.2));
        current = if across {
            **chain.iter().max_by_key(|x| x.0).expect("nonempty")
        } else {
            **chain.iter().min_by_key(|x| x.1).expect("nonempty")
        };
        across = !across;
    }
    if let Some(x) = grid.iter().find(|x| !visited.contains(&x.2)) {
        return Err(Error::Construction(x.2));
    }
    StringShape::new(legs.into_iter().filter(|&k| k > 0).collect())
}
