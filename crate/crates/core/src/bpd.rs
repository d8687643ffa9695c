//! Bumpless pipe dreams: the tile grammar, validation, the Rothe pipe dream,
//! pipe tracing and bump resolution.
//!
//! Cells are addressed as `(row, col)`, both 1-indexed, row 1 at the top.
//! Pipes enter along the bottom edge (pipe `c` in column `c`) and leave
//! through the right edge; a pipe only ever moves north or east.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permutation::Permutation;

const N: u8 = 1;
const E: u8 = 2;
const S: u8 = 4;
const W: u8 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tile {
    Blank,
    Cross,
    Vertical,
    Horizontal,
    /// Joins the south and east edges.
    DownElbow,
    /// Joins the west and north edges.
    UpElbow,
    /// An up-elbow and a down-elbow sharing a cell; only in resolved grids.
    Bump,
}

impl Tile {
    pub const ALL: [Tile; 7] = [
        Tile::Blank,
        Tile::Cross,
        Tile::Vertical,
        Tile::Horizontal,
        Tile::DownElbow,
        Tile::UpElbow,
        Tile::Bump,
    ];

    fn edges(self) -> u8 {
        match self {
            Tile::Blank => 0,
            Tile::Cross | Tile::Bump => N | E | S | W,
            Tile::Vertical => N | S,
            Tile::Horizontal => E | W,
            Tile::DownElbow => S | E,
            Tile::UpElbow => W | N,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Tile::Blank => '.',
            Tile::Cross => '+',
            Tile::Vertical => '|',
            Tile::Horizontal => '-',
            Tile::DownElbow => 'r',
            Tile::UpElbow => 'J',
            Tile::Bump => 'b',
        }
    }

    pub fn from_char(ch: char) -> Option<Tile> {
        Tile::ALL.into_iter().find(|t| t.to_char() == ch)
    }

    pub fn is_elbow(self) -> bool {
        matches!(self, Tile::DownElbow | Tile::UpElbow)
    }
}

/// A square array of tiles with no validity guarantee.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TileGrid {
    n: usize,
    cells: Vec<Tile>,
}

impl TileGrid {
    pub fn new(n: usize, cells: Vec<Tile>) -> Self {
        assert_eq!(cells.len(), n * n);
        TileGrid { n, cells }
    }

    pub fn filled(n: usize, tile: Tile) -> Self {
        TileGrid {
            n,
            cells: vec![tile; n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> Tile {
        self.cells[(row - 1) * self.n + (col - 1)]
    }

    pub fn set(&mut self, row: usize, col: usize, tile: Tile) {
        self.cells[(row - 1) * self.n + (col - 1)] = tile;
    }

    pub fn rows(&self) -> Vec<String> {
        self.cells
            .chunks(self.n)
            .map(|row| row.iter().map(|t| t.to_char()).collect())
            .collect()
    }

    pub fn to_ascii(&self) -> String {
        self.rows().join("\n")
    }

    /// Reads newline-separated rows, one character per cell. Blank lines
    /// and surrounding whitespace are ignored.
    pub fn parse_ascii(text: &str) -> Result<TileGrid> {
        let rows: Vec<&str> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn from_rows<R: AsRef<str>>(rows: &[R]) -> Result<TileGrid> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::NotSquare {
                row: 1,
                len: 0,
                n: 0,
            });
        }
        let mut cells = Vec::with_capacity(n * n);
        for (r, line) in rows.iter().enumerate() {
            let line = line.as_ref();
            let len = line.chars().count();
            if len != n {
                return Err(Error::NotSquare { row: r + 1, len, n });
            }
            for (c, ch) in line.chars().enumerate() {
                let tile = Tile::from_char(ch).ok_or(Error::UnknownTile {
                    row: r + 1,
                    col: c + 1,
                    ch,
                })?;
                cells.push(tile);
            }
        }
        Ok(TileGrid { n, cells })
    }

    fn cells_where(&self, tile: Tile) -> Vec<(usize, usize)> {
        let n = self.n;
        (0..n * n)
            .filter(|&k| self.cells[k] == tile)
            .map(|k| (k / n + 1, k % n + 1))
            .collect()
    }
}

impl fmt::Display for TileGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_ascii())
    }
}

/// JSON form of a grid: `{ "n": int, "rows": [string per row] }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridJson {
    pub n: usize,
    pub rows: Vec<String>,
}

/// A validated bumpless pipe dream.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bpd {
    grid: TileGrid,
}

/// How a pipe occupies one cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Segment {
    Vertical,
    Horizontal,
    DownElbow,
    UpElbow,
    /// Straight through a crossing, moving north.
    CrossNorth,
    /// Straight through a crossing, moving east.
    CrossEast,
    /// The south-east half of a bump.
    BumpDown,
    /// The west-north half of a bump.
    BumpUp,
}

impl Segment {
    pub fn is_up_elbow(self) -> bool {
        matches!(self, Segment::UpElbow | Segment::BumpUp)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PathStep {
    pub row: usize,
    pub col: usize,
    pub segment: Segment,
}

/// Result of tracing every pipe of a pipe dream from the bottom edge.
#[derive(Clone, Debug)]
pub struct Trace {
    /// `exits[r-1]` is the label of the pipe leaving row `r` on the right.
    pub exits: Vec<usize>,
    /// The grid with every redundant crossing replaced by a bump.
    pub resolved: TileGrid,
    /// `paths[i-1]` lists the cells of pipe `i` in travel order.
    pub paths: Vec<Vec<PathStep>>,
    pub bumps: usize,
}

impl Bpd {
    pub fn validate(grid: TileGrid) -> Result<Bpd> {
        let n = grid.n;
        for r in 1..=n {
            for c in 1..=n {
                if grid.get(r, c) == Tile::Bump {
                    return Err(Error::BumpInInput { row: r, col: c });
                }
            }
        }
        let edges = |r, c| grid.get(r, c).edges();
        for c in 1..=n {
            if edges(n, c) & S == 0 {
                return Err(Error::Edge(format!(
                    "no pipe on the south boundary of ({n}, {c})"
                )));
            }
        }
        for r in 1..=n {
            if edges(r, n) & E == 0 {
                return Err(Error::Edge(format!(
                    "no pipe on the east boundary of ({r}, {n})"
                )));
            }
        }
        for c in 1..=n {
            if edges(1, c) & N != 0 {
                return Err(Error::Edge(format!(
                    "pipe leaves through the north boundary of (1, {c})"
                )));
            }
        }
        for r in 1..=n {
            if edges(r, 1) & W != 0 {
                return Err(Error::Edge(format!(
                    "pipe enters through the west boundary of ({r}, 1)"
                )));
            }
        }
        for r in 1..=n {
            for c in 1..=n {
                if c < n && (edges(r, c) & E != 0) != (edges(r, c + 1) & W != 0) {
                    return Err(Error::Edge(format!(
                        "edge between ({r}, {c}) and ({r}, {}) is half-used",
                        c + 1
                    )));
                }
                if r < n && (edges(r, c) & S != 0) != (edges(r + 1, c) & N != 0) {
                    return Err(Error::Edge(format!(
                        "edge between ({r}, {c}) and ({}, {c}) is half-used",
                        r + 1
                    )));
                }
            }
        }
        Ok(Bpd { grid })
    }

    pub fn parse_ascii(text: &str) -> Result<Bpd> {
        Bpd::validate(TileGrid::parse_ascii(text)?)
    }

    pub fn from_json(text: &str) -> Result<Bpd> {
        let g: GridJson = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        let grid = TileGrid::from_rows(&g.rows)?;
        if grid.n != g.n {
            return Err(Error::NotSquare {
                row: 1,
                len: grid.n,
                n: g.n,
            });
        }
        Bpd::validate(grid)
    }

    pub fn to_json(&self) -> GridJson {
        GridJson {
            n: self.n(),
            rows: self.grid.rows(),
        }
    }

    /// The Rothe pipe dream: a down-elbow at (i, ω(i)), its pipe running
    /// straight down and straight right from there, and no up-elbows.
    pub fn rothe(p: &Permutation) -> Bpd {
        let n = p.n();
        let inv = p.inverse();
        let mut grid = TileGrid::filled(n, Tile::Blank);
        for r in 1..=n {
            for c in 1..=n {
                let elbow_col = p.get(r);
                let elbow_row = inv.get(c);
                let horizontal = c > elbow_col;
                let vertical = r > elbow_row;
                let tile = if c == elbow_col {
                    Tile::DownElbow
                } else {
                    match (vertical, horizontal) {
                        (true, true) => Tile::Cross,
                        (true, false) => Tile::Vertical,
                        (false, true) => Tile::Horizontal,
                        (false, false) => Tile::Blank,
                    }
                };
                grid.set(r, c, tile);
            }
        }
        Bpd { grid }
    }

    /// Rebuilds a pipe dream from the positions of its elbows alone; every
    /// non-elbow tile of `skeleton` is ignored. Returns `None` if the elbows
    /// do not fit together into a valid pipe dream.
    pub(crate) fn from_elbows(skeleton: &TileGrid) -> Option<Bpd> {
        let n = skeleton.n;
        let mut grid = TileGrid::filled(n, Tile::Blank);
        let mut from_south = vec![true; n];
        for r in (1..=n).rev() {
            let mut from_west = false;
            for c in 1..=n {
                let s = from_south[c - 1];
                let (tile, north, east) = match skeleton.get(r, c) {
                    Tile::DownElbow if s && !from_west => (Tile::DownElbow, false, true),
                    Tile::UpElbow if !s && from_west => (Tile::UpElbow, true, false),
                    Tile::DownElbow | Tile::UpElbow => return None,
                    _ => match (s, from_west) {
                        (false, false) => (Tile::Blank, false, false),
                        (true, false) => (Tile::Vertical, true, false),
                        (false, true) => (Tile::Horizontal, false, true),
                        (true, true) => (Tile::Cross, true, true),
                    },
                };
                grid.set(r, c, tile);
                from_south[c - 1] = north;
                from_west = east;
            }
            if !from_west {
                return None;
            }
        }
        if from_south.iter().any(|&x| x) {
            return None;
        }
        Some(Bpd { grid })
    }

    pub fn n(&self) -> usize {
        self.grid.n
    }

    pub fn get(&self, row: usize, col: usize) -> Tile {
        self.grid.get(row, col)
    }

    pub fn grid(&self) -> &TileGrid {
        &self.grid
    }

    /// D(P): the blank cells.
    pub fn blanks(&self) -> Vec<(usize, usize)> {
        self.grid.cells_where(Tile::Blank)
    }

    /// U(P): the up-elbow cells.
    pub fn up_elbows(&self) -> Vec<(usize, usize)> {
        self.grid.cells_where(Tile::UpElbow)
    }

    pub fn down_elbows(&self) -> Vec<(usize, usize)> {
        self.grid.cells_where(Tile::DownElbow)
    }

    /// Traces all pipes from the bottom edge. The first crossing of each
    /// pair is a true crossing; every later one is read as a bump.
    pub fn trace(&self) -> Trace {
        let n = self.n();
        let mut resolved = self.grid.clone();
        let mut paths: Vec<Vec<PathStep>> = vec![Vec::new(); n];
        let mut crossed = vec![false; (n + 1) * (n + 1)];
        let mut from_south: Vec<usize> = (1..=n).collect();
        let mut exits = vec![0; n];
        let mut bumps = 0;
        for r in (1..=n).rev() {
            let mut from_west = 0usize;
            for c in 1..=n {
                let s = from_south[c - 1];
                let w = from_west;
                let mut step = |label: usize, segment| {
                    paths[label - 1].push(PathStep {
                        row: r,
                        col: c,
                        segment,
                    })
                };
                let (north, east) = match self.grid.get(r, c) {
                    Tile::Blank => (0, 0),
                    Tile::Vertical => {
                        step(s, Segment::Vertical);
                        (s, 0)
                    }
                    Tile::Horizontal => {
                        step(w, Segment::Horizontal);
                        (0, w)
                    }
                    Tile::DownElbow => {
                        step(s, Segment::DownElbow);
                        (0, s)
                    }
                    Tile::UpElbow => {
                        step(w, Segment::UpElbow);
                        (w, 0)
                    }
                    Tile::Cross => {
                        let key = s.min(w) * (n + 1) + s.max(w);
                        if crossed[key] {
                            resolved.set(r, c, Tile::Bump);
                            bumps += 1;
                            step(w, Segment::BumpUp);
                            step(s, Segment::BumpDown);
                            (w, s)
                        } else {
                            crossed[key] = true;
                            step(w, Segment::CrossEast);
                            step(s, Segment::CrossNorth);
                            (s, w)
                        }
                    }
                    Tile::Bump => unreachable!("validated pipe dreams carry no bumps"),
                };
                from_south[c - 1] = north;
                from_west = east;
            }
            exits[r - 1] = from_west;
        }
        Trace {
            exits,
            resolved,
            paths,
            bumps,
        }
    }

    /// The permutation ω with ω(r) the label of the pipe exiting row r.
    pub fn permutation_of(&self) -> Permutation {
        Permutation::from_one_line(&self.trace().exits)
            .expect("a validated pipe dream always yields a permutation")
    }

    pub fn is_reduced(&self) -> bool {
        self.trace().bumps == 0
    }

    pub fn resolve_to_bumps(&self) -> TileGrid {
        self.trace().resolved
    }

    /// Up-elbows on each pipe of the bump-resolved grid, indexed by label
    /// (`counts[i-1]` for pipe `i`). A bump gives one up-elbow to the pipe
    /// using its west-north half.
    pub fn up_elbows_per_pipe(&self) -> Vec<usize> {
        self.trace()
            .paths
            .iter()
            .map(|p| p.iter().filter(|s| s.segment.is_up_elbow()).count())
            .collect()
    }

    pub fn render_ascii(&self) -> String {
        self.grid.to_ascii()
    }
}

impl fmt::Display for Bpd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.grid.fmt(f)
    }
}

/// A pipe dream with a chosen subset of its up-elbow cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedBpd {
    bpd: Bpd,
    marks: BTreeSet<(usize, usize)>,
}

impl MarkedBpd {
    pub fn new(bpd: Bpd, marks: BTreeSet<(usize, usize)>) -> Result<MarkedBpd> {
        for &(r, c) in &marks {
            if r == 0 || c == 0 || r > bpd.n() || c > bpd.n() || bpd.get(r, c) != Tile::UpElbow {
                return Err(Error::Edge(format!("mark ({r}, {c}) is not an up-elbow")));
            }
        }
        Ok(MarkedBpd { bpd, marks })
    }

    pub fn bpd(&self) -> &Bpd {
        &self.bpd
    }

    pub fn marks(&self) -> &BTreeSet<(usize, usize)> {
        &self.marks
    }

    /// Exponent of x_1..x_n: one per blank cell and per marked up-elbow, in
    /// the cell's row.
    pub fn weight(&self) -> Vec<u32> {
        let mut exp = vec![0u32; self.bpd.n()];
        for (r, _) in self
            .bpd
            .blanks()
            .into_iter()
            .chain(self.marks.iter().copied())
        {
            exp[r - 1] += 1;
        }
        exp
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permutation::all_permutations;

    pub(crate) const GRID_16352874: [&str; 8] = [
        "....r---", "...rJ.r-", "..rJr-+-", "..|rJr+-", ".rJ|r++-", "rJr+++Jr", "|r+J||r+",
        "|||r++++",
    ];
    const RESOLVED_16352874: [&str; 8] = [
        "....r---", "...rJ.r-", "..rJr-+-", "..|rJrb-", ".rJ|r+b-", "rJrb++Jr", "|r+J||r+",
        "|||r++++",
    ];

    fn perm(v: &[usize]) -> Permutation {
        Permutation::from_one_line(v).unwrap()
    }

    /// Independent checker: follow each pipe from the bottom edge through
    /// tile edge sets and require it to leave on the right; every edge of
    /// every tile must be used exactly once.
    fn path_checker(grid: &TileGrid) -> bool {
        let n = grid.n();
        let mut used = vec![0u8; n * n];
        for start in 1..=n {
            let (mut r, mut c, mut came) = (n, start, S);
            loop {
                let e = grid.get(r, c).edges();
                if e & came == 0 || used[(r - 1) * n + c - 1] & came != 0 {
                    return false;
                }
                let out = match (grid.get(r, c), came) {
                    (Tile::Cross, S) => N,
                    (Tile::Cross, W) => E,
                    (_, _) => e & !came,
                };
                if out.count_ones() != 1 {
                    return false;
                }
                used[(r - 1) * n + c - 1] |= came | out;
                match out {
                    N if r == 1 => return false,
                    N => {
                        r -= 1;
                        came = S;
                    }
                    E if c == n => break,
                    E => {
                        c += 1;
                        came = W;
                    }
                    _ => return false,
                }
            }
        }
        (1..=n).all(|r| (1..=n).all(|c| used[(r - 1) * n + c - 1] == grid.get(r, c).edges()))
    }

    #[test]
    fn identity_rothe_validates() {
        let b = Bpd::rothe(&Permutation::identity(3));
        assert_eq!(b.render_ascii(), "r--\n|r-\n||r");
        assert!(b.blanks().is_empty());
        assert!(Bpd::validate(b.grid().clone()).is_ok());
    }

    #[test]
    fn all_blank_fails_on_south_boundary() {
        let err = Bpd::validate(TileGrid::filled(3, Tile::Blank)).unwrap_err();
        assert_eq!(
            err,
            Error::Edge("no pipe on the south boundary of (3, 1)".into())
        );
    }

    #[test]
    fn bump_input_is_rejected() {
        let g = TileGrid::from_rows(&["b"]).unwrap();
        assert_eq!(Bpd::validate(g), Err(Error::BumpInInput { row: 1, col: 1 }));
    }

    #[test]
    fn bumped_grid_16352874() {
        let b = Bpd::validate(TileGrid::from_rows(&GRID_16352874).unwrap()).unwrap();
        assert_eq!(b.permutation_of(), perm(&[1, 6, 3, 5, 2, 8, 7, 4]));
        assert!(!b.is_reduced());
        assert_eq!(
            b.resolve_to_bumps(),
            TileGrid::from_rows(&RESOLVED_16352874).unwrap()
        );
        assert!(path_checker(b.grid()));
    }

    #[test]
    fn rothe_examples() {
        let w = perm(&[1, 8, 2, 7, 3, 5, 6, 4]);
        let b = Bpd::rothe(&w);
        let mut expected: Vec<(usize, usize)> = (2..=7).map(|c| (2, c)).collect();
        expected.extend((3..=6).map(|c| (4, c)));
        expected.extend([(6, 4), (7, 4)]);
        expected.sort();
        assert_eq!(b.blanks(), expected);
        // Rothe diagram: (i, j) with j < ω(i) and i < ω⁻¹(j)
        let inv = w.inverse();
        let diagram: Vec<_> = (1..=8)
            .flat_map(|i| (1..=8).map(move |j| (i, j)))
            .filter(|&(i, j)| j < w.get(i) && i < inv.get(j))
            .collect();
        assert_eq!(b.blanks(), diagram);
        let b21 = Bpd::rothe(&perm(&[2, 1]));
        assert_eq!(b21.blanks(), vec![(1, 1)]);
    }

    #[test]
    fn rothe_round_trips_up_to_s6() {
        for n in 1..=6 {
            for p in all_permutations(n) {
                let b = Bpd::rothe(&p);
                assert!(Bpd::validate(b.grid().clone()).is_ok());
                assert!(path_checker(b.grid()));
                assert_eq!(b.permutation_of(), p);
                assert!(b.is_reduced());
                assert_eq!(b.blanks().len(), p.length());
                assert!(b.up_elbows().is_empty());
                assert!(b.up_elbows_per_pipe().iter().all(|&k| k == 0));
                assert_eq!(Bpd::from_elbows(b.grid()).as_ref(), Some(&b));
            }
        }
    }

    #[test]
    fn single_cell() {
        let b = Bpd::parse_ascii("r").unwrap();
        assert_eq!(b.permutation_of(), perm(&[1]));
    }

    #[test]
    fn ascii_and_json_forms() {
        let b = Bpd::rothe(&Permutation::identity(2));
        assert_eq!(b.render_ascii(), "r-\n|r");
        assert_eq!(Bpd::parse_ascii(&b.render_ascii()).unwrap(), b);
        let json = serde_json::to_string(&b.to_json()).unwrap();
        assert_eq!(json, r#"{"n":2,"rows":["r-","|r"]}"#);
        assert_eq!(Bpd::from_json(&json).unwrap(), b);
        assert!(matches!(
            TileGrid::parse_ascii("r-\n|x"),
            Err(Error::UnknownTile {
                row: 2,
                col: 2,
                ch: 'x'
            })
        ));
        assert!(matches!(
            TileGrid::parse_ascii("r-\n|"),
            Err(Error::NotSquare { row: 2, .. })
        ));
    }

    #[test]
    fn marked_weight() {
        let b = Bpd::rothe(&perm(&[2, 1]));
        let m = MarkedBpd::new(b.clone(), BTreeSet::new()).unwrap();
        assert_eq!(m.weight(), vec![1, 0]);
        assert!(MarkedBpd::new(b, [(1, 1)].into()).is_err());
    }

    pub(crate) fn exhaustive_checker_agrees(grid: &TileGrid) -> bool {
        Bpd::validate(grid.clone()).is_ok() == path_checker(grid)
    }

    #[test]
    fn validate_agrees_with_path_checker_on_all_small_grids() {
        let tiles = [
            Tile::Blank,
            Tile::Cross,
            Tile::Vertical,
            Tile::Horizontal,
            Tile::DownElbow,
            Tile::UpElbow,
        ];
        for n in 1..=2usize {
            let total = 6usize.pow((n * n) as u32);
            for mut code in 0..total {
                let cells = (0..n * n)
                    .map(|_| {
                        let t = tiles[code % 6];
                        code /= 6;
                        t
                    })
                    .collect();
                assert!(exhaustive_checker_agrees(&TileGrid::new(n, cells)));
            }
        }
    }
}
