//! Permutations in one-line notation and their statistics.
//!
//! Everything here is 1-indexed at the API boundary: `get(i)` is ω(i) for
//! `1 <= i <= n`, and codes are reported in position order.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `{1..n}` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    word: Vec<usize>,
}

/// A sequence of non-negative integers indexed by position (Lehmer or
/// Rajchgot code).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Code(Vec<usize>);

impl Code {
    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    /// 1-indexed entry.
    pub fn get(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<usize>> for Code {
    fn from(v: Vec<usize>) -> Self {
        Code(v)
    }
}

/// How the index of `rank_ω(i)` is read: as a position in the one-line
/// word, or as a pipe label (a value of ω).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RankInterpretation {
    Position,
    Value,
}

impl Permutation {
    pub fn from_one_line(values: &[usize]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyPermutation);
        }
        let n = values.len();
        let mut seen = vec![0usize; n + 1];
        for (idx, &v) in values.iter().enumerate() {
            let index = idx + 1;
            if v == 0 || v > n {
                return Err(Error::ValueOutOfRange { index, value: v, n });
            }
            if seen[v] != 0 {
                return Err(Error::RepeatedValue {
                    index,
                    first: seen[v],
                    value: v,
                });
            }
            seen[v] = index;
        }
        Ok(Permutation {
            word: values.to_vec(),
        })
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1);
        Permutation {
            word: (1..=n).collect(),
        }
    }

    /// The longest element ω₀ = n n−1 … 1.
    pub fn longest(n: usize) -> Self {
        assert!(n >= 1);
        Permutation {
            word: (1..=n).rev().collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.word.len()
    }

    /// ω(i), 1-indexed.
    pub fn get(&self, i: usize) -> usize {
        self.word[i - 1]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.word
    }

    pub fn is_identity(&self) -> bool {
        self.word.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (i, &v) in self.word.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { word: inv }
    }

    /// `self ∘ other`, i.e. `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.n(), other.n());
        Permutation {
            word: other.word.iter().map(|&j| self.word[j - 1]).collect(),
        }
    }

    /// ω·s_i: swaps the entries in positions i and i+1.
    pub fn swap_positions(&self, i: usize) -> Permutation {
        assert!(i >= 1 && i < self.n());
        let mut word = self.word.clone();
        word.swap(i - 1, i);
        Permutation { word }
    }

    /// Positions i with ω(i) < ω(i+1).
    pub fn ascents(&self) -> impl Iterator<Item = usize> + '_ {
        self.word
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] < w[1])
            .map(|(i, _)| i + 1)
    }

    pub fn lehmer_code(&self) -> Code {
        let w = &self.word;
        Code(
            (0..w.len())
                .map(|i| w[i + 1..].iter().filter(|&&x| x < w[i]).count())
                .collect(),
        )
    }

    /// r_i = (n − i + 1) − L_i, with L_i the longest increasing subsequence
    /// of ω(i..n) that starts at ω(i).
    pub fn rajchgot_code(&self) -> Code {
        let w = &self.word;
        let n = w.len();
        let mut longest = vec![1usize; n];
        for i in (0..n).rev() {
            for j in i + 1..n {
                if w[j] > w[i] && longest[j] + 1 > longest[i] {
                    longest[i] = longest[j] + 1;
                }
            }
        }
        Code((0..n).map(|i| (n - i) - longest[i]).collect())
    }

    pub fn length(&self) -> usize {
        let w = &self.word;
        let mut inv = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    inv += 1;
                }
            }
        }
        inv
    }

    /// 2143-avoidance. For each pair j<k with ω(j)<ω(k) take the smallest
    /// earlier value inside (ω(j), ω(k)) and look for a later value between
    /// it and ω(k).
    pub fn is_vexillary(&self) -> bool {
        let w = &self.word;
        let n = w.len();
        for j in 1..n {
            for k in j + 1..n {
                let (lo, hi) = (w[j], w[k]);
                if lo >= hi {
                    continue;
                }
                let Some(two) = w[..j].iter().copied().filter(|&x| x > lo && x < hi).min() else {
                    continue;
                };
                if w[k + 1..].iter().any(|&x| x > two && x < hi) {
                    return false;
                }
            }
        }
        true
    }

    /// Length of the longest increasing chain ending at each index.
    ///
    /// Under [`RankInterpretation::Position`], entry `i` (1-indexed) is the
    /// longest chain `j_1 < … < j_m = i` of positions with increasing values.
    /// Under [`RankInterpretation::Value`], entry `i` is the longest chain of
    /// labels `j_1 < … < j_m = i` with increasing positions ω⁻¹(j).
    pub fn rank_profile(&self, interpretation: RankInterpretation) -> Vec<usize> {
        let by_position = longest_chain_ending(&self.word);
        match interpretation {
            RankInterpretation::Position => by_position,
            RankInterpretation::Value => {
                let inv = self.inverse();
                (1..=self.n())
                    .map(|i| by_position[inv.get(i) - 1])
                    .collect()
            }
        }
    }
}

fn longest_chain_ending(w: &[usize]) -> Vec<usize> {
    let mut rank = vec![1usize; w.len()];
    for i in 0..w.len() {
        for j in 0..i {
            if w[j] < w[i] {
                rank[i] = rank[i].max(rank[j] + 1);
            }
        }
    }
    rank
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.word.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts `2,1,4,3`; a bare digit string such as `2143` is read one
    /// digit per entry (n ≤ 9).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let values: std::result::Result<Vec<usize>, _> = if s.contains(',') {
            s.split(',').map(|t| t.trim().parse::<usize>()).collect()
        } else if !s.is_empty() && s.chars().all(|c| c.is_ascii_digit()) {
            Ok(s.chars().map(|c| c as usize - '0' as usize).collect())
        } else {
            return Err(Error::Parse(s.to_string()));
        };
        let values = values.map_err(|_| Error::Parse(s.to_string()))?;
        Permutation::from_one_line(&values)
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Streams S_n in lexicographic order of one-line notation.
pub fn all_permutations(n: usize) -> AllPermutations {
    assert!(n >= 1);
    AllPermutations {
        next: Some((1..=n).collect()),
    }
}

pub struct AllPermutations {
    next: Option<Vec<usize>>,
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_lexicographic(&mut succ) {
            self.next = Some(succ);
        }
        Some(Permutation { word: current })
    }
}

fn next_lexicographic(w: &mut [usize]) -> bool {
    let n = w.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| w[i] < w[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| w[j] > w[i]).unwrap();
    w.swap(i, j);
    w[i + 1..].reverse();
    true
}
