//! Test-side oracles shared by the integration targets.

#![allow(dead_code)]

use std::collections::BTreeSet;

use frieze_core::{s_bruteforce, Chord, Dir, StringShape, StringWalk};
use num_bigint::BigInt;
use rand::Rng;

pub fn ch(n: usize, i: i64, j: i64) -> Chord {
    Chord::new(n, i, j).unwrap()
}

/// Counts arrow-closed subsets by listing them, independently of the library.
pub fn closed_subsets_naive<L: Clone + PartialEq>(w: &StringWalk<L>) -> u64 {
    let len = w.len();
    assert!(len <= 20, "naive count is for short walks");
    let arrows: Vec<(usize, usize)> = w.arrows().collect();
    (0u32..1 << len)
        .filter(|mask| arrows.iter().all(|&(s, t)| mask & (1 << s) == 0 || mask & (1 << t) != 0))
        .count() as u64
}

pub fn s(w: &StringWalk<usize>) -> BigInt {
    BigInt::from(s_bruteforce(w))
}

/// Positions reachable from `pos` along arrows.
pub fn forward_closure(w: &StringWalk<usize>, pos: usize) -> BTreeSet<usize> {
    closure(w, pos, true)
}

/// Positions from which `pos` is reachable.
pub fn backward_closure(w: &StringWalk<usize>, pos: usize) -> BTreeSet<usize> {
    closure(w, pos, false)
}

fn closure(w: &StringWalk<usize>, pos: usize, forward: bool) -> BTreeSet<usize> {
    let arrows: Vec<(usize, usize)> = w.arrows().map(|(s, t)| if forward { (s, t) } else { (t, s) }).collect();
    let mut seen = BTreeSet::from([pos]);
    let mut stack = vec![pos];
    while let Some(p) = stack.pop() {
        for &(s, t) in &arrows {
            if s == p && seen.insert(t) {
                stack.push(t);
            }
        }
    }
    seen
}

/// The walk with the given positions removed; what is left must be contiguous.
pub fn minus(w: &StringWalk<usize>, removed: &BTreeSet<usize>) -> StringWalk<usize> {
    let kept: Vec<usize> = (0..w.len()).filter(|p| !removed.contains(p)).collect();
    let Some((&first, &last)) = kept.first().zip(kept.last()) else {
        return w.sub_walk(0..0);
    };
    assert_eq!(last - first + 1, kept.len(), "remainder is not a sub-walk");
    w.sub_walk(first..last + 1)
}

/// A walk on `1..=len` with uniformly random arrows.
pub fn random_walk<R: Rng>(rng: &mut R, len: usize) -> StringWalk<usize> {
    let dirs = (0..len.saturating_sub(1))
        .map(|_| if rng.gen_bool(0.5) { Dir::Left } else { Dir::Right })
        .collect();
    if len == 0 {
        return StringWalk::new(Vec::new(), Vec::new()).unwrap();
    }
    StringWalk::from_directions(dirs)
}

/// A walk with `m <= m_max` legs of length `1..=k_max`, first arrow either way.
pub fn random_shaped_walk<R: Rng>(rng: &mut R, m_max: usize, k_max: usize) -> StringWalk<usize> {
    let m = rng.gen_range(0..=m_max);
    let legs: Vec<usize> = (0..m).map(|_| rng.gen_range(1..=k_max)).collect();
    let w = StringShape::new(legs).unwrap().walk();
    if rng.gen_bool(0.5) {
        w
    } else {
        // Mirror the arrows but keep the labels increasing.
        StringWalk::from_directions(w.directions().iter().map(|d| d.flipped()).collect())
    }
}

/// Both sides of a counting identity.
pub type Sides = (BigInt, BigInt);

/// Split at an interior source `x`: `s(M) = s(Mz)s(My) + s(M̃z)s(M̃y)`.
pub fn source_split(w: &StringWalk<usize>, x: usize) -> Option<Sides> {
    let d = w.directions();
    if x == 0 || x + 1 >= w.len() || d[x - 1] != Dir::Left || d[x] != Dir::Right {
        return None;
    }
    let mz = w.sub_walk(0..x);
    let my = w.sub_walk(x + 1..w.len());
    let mz_t = minus(&mz, &forward_closure(&mz, mz.len() - 1));
    let my_t = minus(&my, &forward_closure(&my, 0));
    Some((s(w), s(&mz) * s(&my) + s(&mz_t) * s(&my_t)))
}

/// Split at an interior sink `x`: `s(M) = s(Mz)s(My) + s(M̄z)s(M̄y)`.
pub fn sink_split(w: &StringWalk<usize>, x: usize) -> Option<Sides> {
    let d = w.directions();
    if x == 0 || x + 1 >= w.len() || d[x - 1] != Dir::Right || d[x] != Dir::Left {
        return None;
    }
    let mz = w.sub_walk(0..x);
    let my = w.sub_walk(x + 1..w.len());
    let mz_b = minus(&mz, &backward_closure(&mz, mz.len() - 1));
    let my_b = minus(&my, &backward_closure(&my, 0));
    Some((s(w), s(&mz) * s(&my) + s(&mz_b) * s(&my_b)))
}

/// Cut across the arrow between positions `p` and `p + 1`:
/// `s(M) = s(My)s(Mx) - s(M̃x)s(M̄y)` where the arrow is `x -> y`.
pub fn arrow_split(w: &StringWalk<usize>, p: usize) -> Option<Sides> {
    if p + 1 >= w.len() {
        return None;
    }
    let left = w.sub_walk(0..p + 1);
    let right = w.sub_walk(p + 1..w.len());
    let (mx, x, my, y) = match w.directions()[p] {
        Dir::Right => (left, p, right, 0),
        Dir::Left => (right, 0, left, p),
    };
    let mx_t = minus(&mx, &forward_closure(&mx, x));
    let my_b = minus(&my, &backward_closure(&my, y));
    Some((s(w), s(&my) * s(&mx) - s(&mx_t) * s(&my_b)))
}

/// A sink appended after the last vertex: `s(M) - s(Mx) = s(M̄x)`.
pub fn append_sink_split(w: &StringWalk<usize>) -> Sides {
    let ext = w.extend_right(w.len() + 1, Dir::Right).unwrap();
    let w_b = minus(w, &backward_closure(w, w.len() - 1));
    (s(&ext) - s(w), s(&w_b))
}

/// A source prepended before the first vertex: `s(M) - s(My) = s(M̃y)`.
pub fn prepend_source_split(w: &StringWalk<usize>) -> Sides {
    let ext = w.extend_left(0, Dir::Right).unwrap();
    let w_t = minus(w, &forward_closure(w, 0));
    (s(&ext) - s(w), s(&w_t))
}

/// `s(M_{x_y}) - s(M_x) = 2 s(M_x) - s(M_{x^z})` for one-vertex extensions at
/// the first vertex.
pub fn left_extension_split(w: &StringWalk<usize>) -> Sides {
    let sink = w.extend_left(0, Dir::Left).unwrap();
    let source = w.extend_left(0, Dir::Right).unwrap();
    (s(&sink) - s(w), BigInt::from(2) * s(w) - s(&source))
}
