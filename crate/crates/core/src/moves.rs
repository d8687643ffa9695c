//! Moves on bumpless pipe dreams and the two generators of Pipes(ω).
//!
//! A pipe dream is determined by the positions of its elbows, so every move
//! here is an edit of the elbow skeleton followed by [`Bpd::from_elbows`].

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use serde::Serialize;

use crate::bpd::{Bpd, MarkedBpd, Tile, TileGrid};
use crate::error::{Error, Result};
use crate::permutation::Permutation;

pub const DEFAULT_ORACLE_BOUND: usize = 5;

/// Rows `top..=bottom`, columns `left..=right`, 1-indexed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Rect {
    pub top: usize,
    pub left: usize,
    pub bottom: usize,
    pub right: usize,
}

/// Elbow counts over rectangles in O(1).
struct ElbowCounts {
    n: usize,
    prefix: Vec<usize>,
}

impl ElbowCounts {
    fn new(b: &Bpd) -> Self {
        let n = b.n();
        let mut prefix = vec![0; (n + 1) * (n + 1)];
        for r in 1..=n {
            for c in 1..=n {
                let here = usize::from(b.get(r, c).is_elbow());
                prefix[r * (n + 1) + c] =
                    here + prefix[(r - 1) * (n + 1) + c] + prefix[r * (n + 1) + c - 1]
                        - prefix[(r - 1) * (n + 1) + c - 1];
            }
        }
        ElbowCounts { n, prefix }
    }

    fn count(&self, rect: Rect) -> usize {
        let w = self.n + 1;
        let p = |r: usize, c: usize| self.prefix[r * w + c];
        p(rect.bottom, rect.right) + p(rect.top - 1, rect.left - 1)
            - p(rect.top - 1, rect.right)
            - p(rect.bottom, rect.left - 1)
    }
}

fn edit(b: &Bpd, changes: &[(usize, usize, Tile)]) -> Option<Bpd> {
    let mut skeleton: TileGrid = b.grid().clone();
    for &(r, c, t) in changes {
        skeleton.set(r, c, t);
    }
    Bpd::from_elbows(&skeleton)
}

/// All droops: a down-elbow at the NW corner of a rectangle whose SE corner
/// is blank and which holds no other elbow. The pipe is rerouted along the
/// south and east sides of the rectangle.
pub fn droops(b: &Bpd) -> Vec<(Rect, Bpd)> {
    let n = b.n();
    let counts = ElbowCounts::new(b);
    let mut out = Vec::new();
    for (a, c0) in b.down_elbows() {
        for c in a + 1..=n {
            for d in c0 + 1..=n {
                let rect = Rect {
                    top: a,
                    left: c0,
                    bottom: c,
                    right: d,
                };
                if b.get(c, d) != Tile::Blank || counts.count(rect) != 1 {
                    continue;
                }
                let moved = edit(
                    b,
                    &[
                        (a, c0, Tile::Blank),
                        (c, c0, Tile::DownElbow),
                        (c, d, Tile::UpElbow),
                        (a, d, Tile::DownElbow),
                    ],
                );
                if let Some(moved) = moved {
                    out.push((rect, moved));
                }
            }
        }
    }
    out
}

/// K-theoretic droops. The rectangle has a down-elbow at its NW corner, an
/// up-elbow at its SE corner, and exactly one more elbow: a down-elbow
/// either on the bottom row (feeding the corner from the west) or on the
/// right column (fed by the corner from below). The first pipe droops to
/// the SE corner and the second pipe's down-elbow slides to the top row or
/// left column, so the two pipes end up crossing twice.
pub fn k_droops(b: &Bpd) -> Vec<(Rect, Bpd)> {
    let counts = ElbowCounts::new(b);
    let perm = b.permutation_of();
    let ups = b.up_elbows();
    let mut out = Vec::new();
    for (a, left) in b.down_elbows() {
        for &(c, d) in ups.iter().filter(|&&(c, d)| c > a && d > left) {
            let rect = Rect {
                top: a,
                left,
                bottom: c,
                right: d,
            };
            if counts.count(rect) != 3 {
                continue;
            }
            let bottom_row = (left + 1..d).find(|&e| b.get(c, e) == Tile::DownElbow);
            let right_col = (a + 1..c).find(|&e| b.get(e, d) == Tile::DownElbow);
            let changes = match (bottom_row, right_col) {
                (Some(e), None) => [
                    (a, left, Tile::Blank),
                    (c, e, Tile::Blank),
                    (c, left, Tile::DownElbow),
                    (a, e, Tile::DownElbow),
                ],
                (None, Some(e)) => [
                    (a, left, Tile::Blank),
                    (e, d, Tile::Blank),
                    (e, left, Tile::DownElbow),
                    (a, d, Tile::DownElbow),
                ],
                _ => continue,
            };
            if let Some(moved) = edit(b, &changes) {
                if moved.permutation_of() == perm {
                    out.push((rect, moved));
                }
            }
        }
    }
    out
}

use Tile::{Blank as O, DownElbow as R, Horizontal as H, UpElbow as J, Vertical as V};

/// 2×2 windows `[top-left, top-right, bottom-left, bottom-right]`. The
/// first two add an up-elbow; the last two keep the up-elbow count.
const LOCAL_MOVES: [([Tile; 4], [Tile; 4]); 4] = [
    ([R, H, V, O], [O, R, R, J]),
    ([O, V, H, J], [R, J, J, O]),
    ([R, J, V, O], [O, V, R, J]),
    ([R, H, J, O], [O, R, H, J]),
];

fn window_moves(b: &Bpd, moves: &[([Tile; 4], [Tile; 4])]) -> Vec<Bpd> {
    let n = b.n();
    let mut out = Vec::new();
    for r in 1..n {
        for c in 1..n {
            let window = [
                b.get(r, c),
                b.get(r, c + 1),
                b.get(r + 1, c),
                b.get(r + 1, c + 1),
            ];
            for (lhs, rhs) in moves {
                for (from, to) in [(lhs, rhs), (rhs, lhs)] {
                    if window == *from {
                        let mut grid = b.grid().clone();
                        grid.set(r, c, to[0]);
                        grid.set(r, c + 1, to[1]);
                        grid.set(r + 1, c, to[2]);
                        grid.set(r + 1, c + 1, to[3]);
                        out.push(Bpd::validate(grid).expect("local moves preserve validity"));
                    }
                }
            }
        }
    }
    out
}

/// Single applications, in either direction, of the vexillary local moves.
pub fn local_moves(b: &Bpd) -> Result<Vec<Bpd>> {
    let p = b.permutation_of();
    if !p.is_vexillary() {
        return Err(Error::NotVexillary(p.to_string()));
    }
    Ok(window_moves(b, &LOCAL_MOVES))
}

/// The local moves that keep the number of up-elbows fixed.
pub fn elbow_preserving_moves(b: &Bpd) -> Vec<Bpd> {
    window_moves(b, &LOCAL_MOVES[2..])
}

/// Breadth-first closure of `start` under `step`, sorted by grid.
pub fn closure<F>(start: Vec<Bpd>, mut step: F) -> Vec<Bpd>
where
    F: FnMut(&Bpd) -> Vec<Bpd>,
{
    let mut seen: HashSet<Bpd> = start.iter().cloned().collect();
    let mut queue: VecDeque<Bpd> = start.into();
    while let Some(b) = queue.pop_front() {
        for next in step(&b) {
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let mut all: Vec<Bpd> = seen.into_iter().collect();
    all.sort();
    all
}

/// Pipes(ω): the closure of the Rothe pipe dream under droops and
/// K-theoretic droops.
pub fn enumerate_pipes(p: &Permutation) -> Vec<Bpd> {
    closure(vec![Bpd::rothe(p)], |b| {
        droops(b)
            .into_iter()
            .chain(k_droops(b))
            .map(|(_, next)| next)
            .collect()
    })
}

/// Closure of the Rothe pipe dream under the vexillary local moves.
pub fn local_move_closure(p: &Permutation) -> Result<Vec<Bpd>> {
    if !p.is_vexillary() {
        return Err(Error::NotVexillary(p.to_string()));
    }
    Ok(closure(vec![Bpd::rothe(p)], |b| {
        window_moves(b, &LOCAL_MOVES)
    }))
}

/// Every pipe dream of size `n`, found by row-by-row backtracking over the
/// set of columns carrying a pipe between consecutive rows.
pub fn all_bpds(n: usize) -> Vec<Bpd> {
    fn place(
        n: usize,
        k: usize,
        from_south: &mut Vec<bool>,
        from_west: bool,
        grid: &mut TileGrid,
        out: &mut Vec<Bpd>,
    ) {
        if k == n * n {
            if from_south.iter().all(|&x| !x) {
                out.push(Bpd::validate(grid.clone()).expect("tiler emits valid grids"));
            }
            return;
        }
        let row = n - k / n;
        let col = k % n + 1;
        let s = from_south[col - 1];
        let options: &[(Tile, bool, bool)] = match (s, from_west) {
            (false, false) => &[(Tile::Blank, false, false)],
            (true, false) => &[
                (Tile::Vertical, true, false),
                (Tile::DownElbow, false, true),
            ],
            (false, true) => &[
                (Tile::Horizontal, false, true),
                (Tile::UpElbow, true, false),
            ],
            (true, true) => &[(Tile::Cross, true, true)],
        };
        for &(tile, north, east) in options {
            if col == n && !east {
                continue;
            }
            grid.set(row, col, tile);
            from_south[col - 1] = north;
            let west = if col == n { false } else { east };
            place(n, k + 1, from_south, west, grid, out);
            from_south[col - 1] = s;
        }
    }
    let mut out = Vec::new();
    let mut grid = TileGrid::filled(n, Tile::Blank);
    place(n, 0, &mut vec![true; n], false, &mut grid, &mut out);
    out.sort();
    out
}

/// All pipe dreams of size `n`, grouped by permutation.
pub fn all_bpds_by_permutation(n: usize) -> BTreeMap<Permutation, Vec<Bpd>> {
    let mut map: BTreeMap<Permutation, Vec<Bpd>> = BTreeMap::new();
    for b in all_bpds(n) {
        map.entry(b.permutation_of()).or_default().push(b);
    }
    map
}

pub fn brute_force_pipes(p: &Permutation) -> Result<Vec<Bpd>> {
    brute_force_pipes_bounded(p, DEFAULT_ORACLE_BOUND)
}

pub fn brute_force_pipes_bounded(p: &Permutation, bound: usize) -> Result<Vec<Bpd>> {
    if p.n() > bound {
        return Err(Error::OracleBound { n: p.n(), bound });
    }
    Ok(all_bpds(p.n())
        .into_iter()
        .filter(|b| b.permutation_of() == *p)
        .collect())
}

/// MPipes(ω): every pipe dream of ω paired with every subset of its
/// up-elbows.
pub fn marked_bpds(p: &Permutation) -> impl Iterator<Item = MarkedBpd> {
    enumerate_pipes(p).into_iter().flat_map(|b| {
        let ups = b.up_elbows();
        assert!(ups.len() < 32, "too many up-elbows to enumerate subsets");
        (0u32..(1 << ups.len())).map(move |mask| {
            let marks: BTreeSet<_> = ups
                .iter()
                .enumerate()
                .filter(|(k, _)| mask & (1 << k) != 0)
                .map(|(_, &cell)| cell)
                .collect();
            MarkedBpd::new(b.clone(), marks).expect("marks are up-elbows")
        })
    })
}
