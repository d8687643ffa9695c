//! Degree formulas for Grothendieck polynomials.
//!
//! `psw_degree` sums the Rajchgot code and holds for every permutation.
//! `rrw_degree` is the vexillary formula ℓ(ω) + Σ_k ρ_a(τ_k(ω)), built from
//! the labelled Rothe diagram reshaped into a Young diagram λ(ω).

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::bpd::Bpd;
use crate::error::{Error, Result};
use crate::permutation::{Permutation, RankInterpretation};

pub type Cell = (usize, usize);

/// The rank reading under which the rank/ρ_a bridge holds on every
/// vexillary permutation we sweep (pinned by tests through S_6).
pub const PINNED_INTERPRETATION: RankInterpretation = RankInterpretation::Value;

/// A Young diagram with a non-negative integer label in every cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FilledShape {
    rows: Vec<usize>,
    fill: BTreeMap<Cell, usize>,
}

impl FilledShape {
    pub fn new(rows: Vec<usize>, fill: BTreeMap<Cell, usize>) -> Option<FilledShape> {
        if rows.windows(2).any(|w| w[0] < w[1]) || rows.contains(&0) {
            return None;
        }
        let cells: BTreeSet<Cell> = rows
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (1..=len).map(move |c| (r + 1, c)))
            .collect();
        if cells != fill.keys().copied().collect() {
            return None;
        }
        Some(FilledShape { rows, fill })
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn fill(&self) -> &BTreeMap<Cell, usize> {
        &self.fill
    }

    pub fn label(&self, cell: Cell) -> Option<usize> {
        self.fill.get(&cell).copied()
    }

    pub fn max_label(&self) -> usize {
        self.fill.values().copied().max().unwrap_or(0)
    }

    /// Labels row by row.
    pub fn row_labels(&self) -> Vec<Vec<usize>> {
        self.rows
            .iter()
            .enumerate()
            .map(|(r, &len)| (1..=len).map(|c| self.fill[&(r + 1, c)]).collect())
            .collect()
    }
}

pub fn psw_degree(p: &Permutation) -> usize {
    p.rajchgot_code().sum()
}

fn require_vexillary(p: &Permutation) -> Result<()> {
    if p.is_vexillary() {
        Ok(())
    } else {
        Err(Error::NotVexillary(p.to_string()))
    }
}

/// r(i, j) = #{k < i : ω(k) < j} on every blank cell of the Rothe pipe
/// dream, i.e. the number of pipes passing above and to the left.
pub fn rothe_labels(p: &Permutation) -> Result<BTreeMap<Cell, usize>> {
    require_vexillary(p)?;
    Ok(Bpd::rothe(p)
        .blanks()
        .into_iter()
        .map(|(i, j)| ((i, j), (1..i).filter(|&k| p.get(k) < j).count()))
        .collect())
}

/// Row lengths of the unique Young diagram with `counts[d]` cells on the
/// diagonal `col − row = d`, built row by row.
pub fn young_from_diagonals(counts: &BTreeMap<i64, usize>) -> Option<Vec<usize>> {
    let mut left = counts.clone();
    left.retain(|_, v| *v > 0);
    let mut rows = Vec::new();
    let mut r: i64 = 1;
    while !left.is_empty() {
        let mut len = 0i64;
        while left.get(&(len + 1 - r)).is_some_and(|&v| v > 0) {
            *left.get_mut(&(len + 1 - r)).unwrap() -= 1;
            len += 1;
        }
        if len == 0 {
            return None;
        }
        left.retain(|_, v| *v > 0);
        rows.push(len as usize);
        r += 1;
    }
    if rows.windows(2).any(|w| w[0] < w[1]) {
        return None;
    }
    Some(rows)
}

fn diagonal(cell: Cell) -> i64 {
    cell.1 as i64 - cell.0 as i64
}

/// λ(ω): the Young diagram with the Rothe diagram's diagonal counts, each
/// diagonal's labels carried over in north-west to south-east order.
pub fn lambda_filled(p: &Permutation) -> Result<FilledShape> {
    let labels = rothe_labels(p)?;
    let mut by_diag: BTreeMap<i64, Vec<(Cell, usize)>> = BTreeMap::new();
    for (&cell, &label) in &labels {
        by_diag
            .entry(diagonal(cell))
            .or_default()
            .push((cell, label));
    }
    let counts = by_diag.iter().map(|(&d, v)| (d, v.len())).collect();
    let rows = young_from_diagonals(&counts)
        .unwrap_or_else(|| panic!("diagonal counts of {p} admit no Young diagram"));
    let mut fill = BTreeMap::new();
    let mut next: BTreeMap<i64, usize> = BTreeMap::new();
    for (r, &len) in rows.iter().enumerate() {
        for c in 1..=len {
            let cell = (r + 1, c);
            let d = diagonal(cell);
            let k = next.entry(d).or_default();
            // BTreeMap iteration put each diagonal's Rothe cells in row order
            fill.insert(cell, by_diag[&d][*k].1);
            *k += 1;
        }
    }
    Ok(FilledShape::new(rows, fill).expect("rows and fill describe the same diagram"))
}

/// τ_k: the cells labelled at least `k`.
pub fn tau(shape: &FilledShape, k: usize) -> BTreeSet<Cell> {
    shape
        .fill
        .iter()
        .filter(|(_, &v)| v >= k)
        .map(|(&c, _)| c)
        .collect()
}

/// Longest antidiagonal path: rows strictly decreasing while columns
/// strictly increase.
pub fn rho_a(cells: &BTreeSet<Cell>) -> usize {
    let mut sorted: Vec<Cell> = cells.iter().copied().collect();
    sorted.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut best = vec![1usize; sorted.len()];
    for i in 0..sorted.len() {
        for j in 0..i {
            if sorted[j].0 > sorted[i].0 && sorted[j].1 < sorted[i].1 {
                best[i] = best[i].max(best[j] + 1);
            }
        }
    }
    best.into_iter().max().unwrap_or(0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RrwDecomposition {
    pub length: usize,
    /// ρ_a(τ_k) for k = 1..=n.
    pub rho: Vec<usize>,
    pub total: usize,
}

pub fn rrw_decomposition(p: &Permutation) -> Result<RrwDecomposition> {
    let shape = lambda_filled(p)?;
    let rho: Vec<usize> = (1..=p.n()).map(|k| rho_a(&tau(&shape, k))).collect();
    let length = p.length();
    Ok(RrwDecomposition {
        length,
        total: length + rho.iter().sum::<usize>(),
        rho,
    })
}

pub fn rrw_degree(p: &Permutation) -> Result<usize> {
    Ok(rrw_decomposition(p)?.total)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BridgeReport {
    pub interpretation: RankInterpretation,
    /// k ↦ (Σ_{rank = k} (r − c), ρ_a(τ_k)).
    pub rows: BTreeMap<usize, (usize, usize)>,
    pub holds: bool,
}

/// Compares, for every k, the total r − c excess of the indices of rank k
/// with ρ_a(τ_k).
pub fn corollary_bridge(
    p: &Permutation,
    interpretation: RankInterpretation,
) -> Result<BridgeReport> {
    let shape = lambda_filled(p)?;
    let n = p.n();
    let r = p.rajchgot_code();
    let c = p.lehmer_code();
    let inv = p.inverse();
    let rank = p.rank_profile(interpretation);
    let mut rows = BTreeMap::new();
    for k in 1..=n {
        let lhs = (1..=n)
            .filter(|&i| rank[i - 1] == k)
            .map(|i| r.get(inv.get(i)) - c.get(inv.get(i)))
            .sum();
        rows.insert(k, (lhs, rho_a(&tau(&shape, k))));
    }
    let holds = rows.values().all(|(a, b)| a == b);
    Ok(BridgeReport {
        interpretation,
        rows,
        holds,
    })
}
