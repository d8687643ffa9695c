//! Support-structure checks, maximal-degree pipe dreams, leading terms and
//! conjecture sweeps.
//!
//! Every checker returns a [`Report`]; violations are report content, never
//! errors. Checkers whose statement only makes sense for vexillary
//! permutations return [`Error::NotVexillary`] otherwise.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bpd::Bpd;
use crate::degree::{psw_degree, rrw_degree};
use crate::error::{Error, Result};
use crate::moves::{elbow_preserving_moves, enumerate_pipes};
use crate::permutation::{all_permutations, Permutation};
use crate::polynomial::{groth_bpd, groth_oracle, Exponent, SparsePoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    Degree,
    ElbowBound,
    SameRowCol,
    Connectivity,
    UpByOne,
    DownByOne,
    Interval,
    Saturation,
    Leading,
    SPlusOne,
}

impl Property {
    pub const ALL: [Property; 10] = [
        Property::Degree,
        Property::ElbowBound,
        Property::SameRowCol,
        Property::Connectivity,
        Property::UpByOne,
        Property::DownByOne,
        Property::Interval,
        Property::Saturation,
        Property::Leading,
        Property::SPlusOne,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Degree => "degree",
            Property::ElbowBound => "elbow-bound",
            Property::SameRowCol => "same-row-col",
            Property::Connectivity => "connectivity",
            Property::UpByOne => "up-by-one",
            Property::DownByOne => "down-by-one",
            Property::Interval => "interval",
            Property::Saturation => "saturation",
            Property::Leading => "leading",
            Property::SPlusOne => "s-plus-one",
        }
    }

    /// Whether the statement is only meaningful for vexillary permutations.
    pub fn vexillary_only(self) -> bool {
        matches!(
            self,
            Property::SameRowCol | Property::Connectivity | Property::Saturation
        )
    }

    /// Whether the statement is proven for vexillary permutations only, so
    /// that a run on any other permutation is a conjecture scan.
    pub fn conjectural_beyond_vexillary(self) -> bool {
        matches!(
            self,
            Property::ElbowBound | Property::UpByOne | Property::Interval | Property::Leading
        )
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Property> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::UnknownProperty(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bpd: Option<String>,
}

impl Violation {
    fn new(detail: String) -> Violation {
        Violation { detail, bpd: None }
    }

    fn with_bpd(detail: String, b: &Bpd) -> Violation {
        Violation {
            detail,
            bpd: Some(b.render_ascii()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub property: Property,
    pub permutation: Permutation,
    pub status: Status,
    /// True when the permutation lies outside the proven range, so the run
    /// tests an open statement.
    pub conjectural: bool,
    /// Number of individual instances examined.
    pub checked: usize,
    pub violations: Vec<Violation>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

impl Report {
    fn finish(
        property: Property,
        p: &Permutation,
        checked: usize,
        violations: Vec<Violation>,
    ) -> Report {
        Report {
            property,
            permutation: p.clone(),
            status: if violations.is_empty() {
                Status::Pass
            } else {
                Status::Fail
            },
            conjectural: property.conjectural_beyond_vexillary() && !p.is_vexillary(),
            checked,
            violations,
            note: None,
        }
    }

    fn skipped(property: Property, p: &Permutation, note: &str) -> Report {
        Report {
            property,
            permutation: p.clone(),
            status: Status::Skipped,
            conjectural: false,
            checked: 0,
            violations: Vec::new(),
            note: Some(note.to_string()),
        }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

/// A permutation with its pipe dreams and Grothendieck polynomial computed
/// on first use, so several checks can share them.
pub struct Subject {
    p: Permutation,
    pipes: OnceLock<Vec<Bpd>>,
    groth: OnceLock<SparsePoly>,
    support: OnceLock<BTreeSet<Exponent>>,
}

impl Subject {
    pub fn new(p: Permutation) -> Subject {
        Subject {
            p,
            pipes: OnceLock::new(),
            groth: OnceLock::new(),
            support: OnceLock::new(),
        }
    }

    pub fn permutation(&self) -> &Permutation {
        &self.p
    }

    pub fn pipes(&self) -> &[Bpd] {
        self.pipes.get_or_init(|| enumerate_pipes(&self.p))
    }

    pub fn groth(&self) -> &SparsePoly {
        self.groth.get_or_init(|| groth_bpd(&self.p))
    }

    pub fn support(&self) -> &BTreeSet<Exponent> {
        self.support.get_or_init(|| self.groth().support())
    }

    /// r_{ω⁻¹(i)} − c_{ω⁻¹(i)} for each pipe label i.
    fn pipe_bounds(&self) -> Vec<usize> {
        let r = self.p.rajchgot_code();
        let c = self.p.lehmer_code();
        let inv = self.p.inverse();
        (1..=self.p.n())
            .map(|i| r.get(inv.get(i)) - c.get(inv.get(i)))
            .collect()
    }

    fn max_degree(&self) -> Result<Vec<Bpd>> {
        require_vexillary(&self.p)?;
        let target = psw_degree(&self.p) - self.p.length();
        Ok(self
            .pipes()
            .iter()
            .filter(|b| b.up_elbows().len() == target)
            .cloned()
            .collect())
    }
}

fn require_vexillary(p: &Permutation) -> Result<()> {
    if p.is_vexillary() {
        Ok(())
    } else {
        Err(Error::NotVexillary(p.to_string()))
    }
}

fn fmt_exp(e: &Exponent) -> String {
    let parts: Vec<String> = e.as_slice().iter().map(u32::to_string).collect();
    format!("({})", parts.join(","))
}

fn bumped(e: &Exponent, i: usize, up: bool) -> Option<Exponent> {
    let mut v = e.0.clone();
    if up {
        v[i] += 1;
    } else {
        v[i] = v[i].checked_sub(1)?;
    }
    Some(Exponent(v))
}

fn leq(a: &Exponent, b: &Exponent) -> bool {
    a.as_slice().iter().zip(b.as_slice()).all(|(x, y)| x <= y)
}

/// Pipe dreams of ω carrying a maximal-degree term: ℓ(ω) + |U(P)| equals
/// the PSW degree.
pub fn max_degree_bpds(p: &Permutation) -> Result<Vec<Bpd>> {
    Subject::new(p.clone()).max_degree()
}

fn degree_report(s: &Subject) -> Report {
    let p = &s.p;
    let psw = psw_degree(p) as i64;
    let mut violations = Vec::new();
    let from_pipes = s.groth().degree();
    let from_oracle = groth_oracle(p).degree();
    if from_pipes != psw {
        violations.push(Violation::new(format!(
            "pipe-dream polynomial has degree {from_pipes}, PSW degree is {psw}"
        )));
    }
    if from_oracle != psw {
        violations.push(Violation::new(format!(
            "recursive polynomial has degree {from_oracle}, PSW degree is {psw}"
        )));
    }
    let mut checked = 2;
    if p.is_vexillary() {
        checked += 1;
        let rrw = rrw_degree(p).expect("vexillary") as i64;
        if rrw != psw {
            violations.push(Violation::new(format!(
                "RRW degree is {rrw}, PSW degree is {psw}"
            )));
        }
    }
    Report::finish(Property::Degree, p, checked, violations)
}

fn elbow_bound_report(s: &Subject) -> Report {
    let bounds = s.pipe_bounds();
    let mut violations = Vec::new();
    for b in s.pipes() {
        for (i, (&count, &bound)) in b.up_elbows_per_pipe().iter().zip(&bounds).enumerate() {
            if count > bound {
                violations.push(Violation::with_bpd(
                    format!("pipe {} has {count} up-elbows, bound {bound}", i + 1),
                    b,
                ));
            }
        }
    }
    // on vexillary input the maximal-degree members meet every bound
    if let Ok(top) = s.max_degree() {
        if top.is_empty() {
            violations.push(Violation::new("no maximal-degree pipe dream".into()));
        }
        for b in &top {
            for (i, (&count, &bound)) in b.up_elbows_per_pipe().iter().zip(&bounds).enumerate() {
                if count != bound {
                    violations.push(Violation::with_bpd(
                        format!(
                            "maximal-degree pipe dream: pipe {} has {count} up-elbows, expected {bound}",
                            i + 1
                        ),
                        b,
                    ));
                }
            }
        }
    }
    Report::finish(Property::ElbowBound, &s.p, s.pipes().len(), violations)
}

/// Checks the pipe-wise up-elbow bound on every pipe dream of `p`, counting
/// the up-elbow half of each bump. For vexillary `p` it also checks that
/// the maximal-degree pipe dreams attain the bound on every pipe.
pub fn check_up_elbow_bound(p: &Permutation) -> Report {
    elbow_bound_report(&Subject::new(p.clone()))
}

/// Up-elbow cells of each pipe, in order from the bottom edge.
fn up_elbow_cells(b: &Bpd) -> Vec<Vec<(usize, usize)>> {
    b.trace()
        .paths
        .iter()
        .map(|path| {
            path.iter()
                .filter(|s| s.segment.is_up_elbow())
                .map(|s| (s.row, s.col))
                .collect()
        })
        .collect()
}

fn same_row_col_report(s: &Subject) -> Result<Report> {
    let top = s.max_degree()?;
    let mut slots: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
    for b in &top {
        for (i, cells) in up_elbow_cells(b).into_iter().enumerate() {
            for (j, cell) in cells.into_iter().enumerate() {
                slots.entry((i + 1, j + 1)).or_default().push(cell);
            }
        }
    }
    let mut violations = Vec::new();
    for (&(i, j), cells) in &slots {
        if cells.len() != top.len() {
            violations.push(Violation::new(format!(
                "up-elbow {j} of pipe {i} is missing from some maximal-degree pipe dream"
            )));
            continue;
        }
        let one_row = cells.iter().all(|c| c.0 == cells[0].0);
        let one_col = cells.iter().all(|c| c.1 == cells[0].1);
        if !one_row && !one_col {
            violations.push(Violation::new(format!(
                "up-elbow {j} of pipe {i} moves across both rows and columns: {cells:?}"
            )));
        }
    }
    Ok(Report::finish(
        Property::SameRowCol,
        &s.p,
        slots.len(),
        violations,
    ))
}

/// For each pipe i and ordinal j, the j-th up-elbow of pipe i sits in one
/// common row across all maximal-degree pipe dreams, or in one common
/// column.
pub fn check_same_row_col(p: &Permutation) -> Result<Report> {
    same_row_col_report(&Subject::new(p.clone()))
}

fn connectivity_report(s: &Subject) -> Result<Report> {
    let top = s.max_degree()?;
    let nodes: HashSet<&Bpd> = top.iter().collect();
    let mut seen: HashSet<Bpd> = HashSet::new();
    let mut queue = VecDeque::new();
    if let Some(first) = top.first() {
        seen.insert(first.clone());
        queue.push_back(first.clone());
    }
    while let Some(b) = queue.pop_front() {
        for next in elbow_preserving_moves(&b) {
            if nodes.contains(&next) && seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let violations = top
        .iter()
        .filter(|b| !seen.contains(*b))
        .map(|b| {
            Violation::with_bpd(
                "unreachable from the first maximal-degree pipe dream".into(),
                b,
            )
        })
        .collect();
    Ok(Report::finish(
        Property::Connectivity,
        &s.p,
        top.len(),
        violations,
    ))
}

/// The maximal-degree pipe dreams form one component under the local moves
/// that keep the number of up-elbows fixed.
pub fn check_top_connectivity(p: &Permutation) -> Result<Report> {
    connectivity_report(&Subject::new(p.clone()))
}

fn up_by_one_report(s: &Subject) -> Report {
    let psw = psw_degree(&s.p);
    let support = s.support();
    let n = s.p.n();
    let mut checked = 0;
    let mut violations = Vec::new();
    for e in support.iter().filter(|e| e.total() < psw) {
        checked += 1;
        if !(0..n).any(|i| support.contains(&bumped(e, i, true).unwrap())) {
            violations.push(Violation::new(format!(
                "{} has no successor in the support",
                fmt_exp(e)
            )));
        }
    }
    Report::finish(Property::UpByOne, &s.p, checked, violations)
}

/// Every support exponent below the top degree has a unit step up that
/// stays in the support.
pub fn check_up_by_one(p: &Permutation) -> Report {
    up_by_one_report(&Subject::new(p.clone()))
}

fn down_by_one_report(s: &Subject) -> Report {
    let support = s.support();
    let low = support.iter().map(Exponent::total).min().unwrap_or(0);
    let n = s.p.n();
    let mut checked = 0;
    let mut violations = Vec::new();
    for e in support.iter().filter(|e| e.total() > low) {
        checked += 1;
        if !(0..n).any(|i| bumped(e, i, false).is_some_and(|d| support.contains(&d))) {
            violations.push(Violation::new(format!(
                "{} has no predecessor in the support",
                fmt_exp(e)
            )));
        }
    }
    Report::finish(Property::DownByOne, &s.p, checked, violations)
}

/// Every support exponent above the bottom degree has a unit step down
/// that stays in the support.
pub fn check_down_by_one(p: &Permutation) -> Report {
    down_by_one_report(&Subject::new(p.clone()))
}

/// All exponents e with lo ≤ e ≤ hi componentwise.
fn interval(lo: &Exponent, hi: &Exponent) -> Vec<Exponent> {
    let mut out = vec![Vec::with_capacity(lo.0.len())];
    for (&a, &b) in lo.as_slice().iter().zip(hi.as_slice()) {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (a..=b).map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(Exponent).collect()
}

fn interval_report(s: &Subject) -> Report {
    let support = s.support();
    let mut checked = 0;
    let mut violations = Vec::new();
    for lo in support {
        for hi in support.iter().filter(|hi| *hi != lo && leq(lo, hi)) {
            checked += 1;
            if let Some(gap) = interval(lo, hi).into_iter().find(|e| !support.contains(e)) {
                violations.push(Violation::new(format!(
                    "{} lies between {} and {} but is not in the support",
                    fmt_exp(&gap),
                    fmt_exp(lo),
                    fmt_exp(hi)
                )));
            }
        }
    }
    Report::finish(Property::Interval, &s.p, checked, violations)
}

/// The support contains every exponent lying componentwise between two of
/// its members.
pub fn check_interval_closure(p: &Permutation) -> Report {
    interval_report(&Subject::new(p.clone()))
}

fn saturation_report(s: &Subject) -> Result<Report> {
    require_vexillary(&s.p)?;
    let support = s.support();
    let low = support.iter().map(Exponent::total).min().unwrap_or(0);
    let high = support.iter().map(Exponent::total).max().unwrap_or(0);
    let bottom: Vec<&Exponent> = support.iter().filter(|e| e.total() == low).collect();
    let top: Vec<&Exponent> = support.iter().filter(|e| e.total() == high).collect();
    let mut violations = Vec::new();
    for e in support {
        if !bottom.iter().any(|b| leq(b, e)) {
            violations.push(Violation::new(format!(
                "{} lies above no minimal-degree exponent",
                fmt_exp(e)
            )));
        }
        if !top.iter().any(|t| leq(e, t)) {
            violations.push(Violation::new(format!(
                "{} lies below no maximal-degree exponent",
                fmt_exp(e)
            )));
        }
    }
    Ok(Report::finish(
        Property::Saturation,
        &s.p,
        support.len(),
        violations,
    ))
}

/// Every support exponent divides some top-degree exponent and is divided
/// by some bottom-degree exponent.
pub fn check_divisibility_saturation(p: &Permutation) -> Result<Report> {
    saturation_report(&Subject::new(p.clone()))
}

/// The predicted leading exponent of the degree-k component under
/// x₁ < x₂ < … < xₙ.
pub fn leading_exponent_formula(p: &Permutation, k: usize) -> Result<Exponent> {
    let len = p.length();
    let psw = psw_degree(p);
    if k < len || k > psw {
        return Err(Error::DegreeOutOfRange {
            k,
            low: len,
            high: psw,
        });
    }
    let r = p.rajchgot_code();
    let c = p.lehmer_code();
    let n = p.n();
    let budget = k - len;
    // tail[j-1] = Σ_{i ≥ j} (r_i − c_i), with tail[n] = 0
    let mut tail = vec![0usize; n + 1];
    for i in (1..=n).rev() {
        tail[i - 1] = tail[i] + r.get(i) - c.get(i);
    }
    let j = (1..=n + 1)
        .find(|&j| tail[j - 1] <= budget)
        .expect("tail[n] = 0");
    let e = (1..=n)
        .map(|i| {
            let v = if i >= j {
                r.get(i)
            } else if i == j - 1 {
                c.get(i) + budget - tail[j - 1]
            } else {
                c.get(i)
            };
            v as u32
        })
        .collect();
    Ok(Exponent(e))
}

/// The last exponent of total degree `k` in lexicographic order read from
/// xₙ down to x₁, i.e. the leading term when x₁ < x₂ < … < xₙ.
pub fn lex_last_exponent(f: &SparsePoly, k: usize) -> Result<Exponent> {
    f.terms()
        .map(|(e, _)| e)
        .filter(|e| e.total() == k)
        .max_by(|a, b| a.as_slice().iter().rev().cmp(b.as_slice().iter().rev()))
        .cloned()
        .ok_or(Error::EmptyComponent(k))
}

fn leading_report(s: &Subject) -> Report {
    let p = &s.p;
    let len = p.length();
    let psw = psw_degree(p);
    let f = s.groth();
    let mut violations = Vec::new();
    for k in len..=psw {
        let predicted = leading_exponent_formula(p, k).expect("k in range");
        match lex_last_exponent(f, k) {
            Ok(actual) if actual == predicted => {}
            Ok(actual) => violations.push(Violation::new(format!(
                "degree {k}: leading exponent {}, formula gives {}",
                fmt_exp(&actual),
                fmt_exp(&predicted)
            ))),
            Err(_) => violations.push(Violation::new(format!("degree {k}: empty component"))),
        }
    }
    let ends = [
        (len, p.lehmer_code(), "Lehmer"),
        (psw, p.rajchgot_code(), "Rajchgot"),
    ];
    for (k, code, name) in ends {
        let code = Exponent(code.entries().iter().map(|&v| v as u32).collect());
        if leading_exponent_formula(p, k).ok() != Some(code.clone()) {
            violations.push(Violation::new(format!(
                "degree {k}: formula does not reduce to the {name} code {}",
                fmt_exp(&code)
            )));
        }
    }
    Report::finish(Property::Leading, p, psw - len + 1, violations)
}

/// Compares `leading_exponent_formula` with the actual leading exponent in
/// every degree from ℓ(ω) to the PSW degree.
pub fn check_leading(p: &Permutation) -> Report {
    leading_report(&Subject::new(p.clone()))
}

fn s_plus_one_report(s: &Subject) -> Report {
    let p = &s.p;
    let len = p.length();
    if len == psw_degree(p) {
        return Report::skipped(
            Property::SPlusOne,
            p,
            "Grothendieck and Schubert degrees coincide",
        );
    }
    let r = p.rajchgot_code();
    let c = p.lehmer_code();
    let i = (1..=p.n())
        .rev()
        .find(|&i| c.get(i) < r.get(i))
        .expect("some c_i < r_i when the degrees differ");
    let mut expected: Vec<u32> = c.entries().iter().map(|&v| v as u32).collect();
    expected[i - 1] += 1;
    let expected = Exponent(expected);
    let violations = match lex_last_exponent(s.groth(), len + 1) {
        Ok(actual) if actual == expected => Vec::new(),
        Ok(actual) => vec![Violation::new(format!(
            "degree {}: leading exponent {}, expected {}",
            len + 1,
            fmt_exp(&actual),
            fmt_exp(&expected)
        ))],
        Err(_) => vec![Violation::new(format!(
            "degree {}: empty component",
            len + 1
        ))],
    };
    Report::finish(Property::SPlusOne, p, 1, violations)
}

/// The leading exponent one degree above ℓ(ω) is the Lehmer code plus a
/// unit vector at the largest i with c_i < r_i.
pub fn check_s_plus_one_leading(p: &Permutation) -> Report {
    s_plus_one_report(&Subject::new(p.clone()))
}

/// Runs one property on a subject. Vexillary-only properties skip other
/// permutations instead of failing.
pub fn check(property: Property, s: &Subject) -> Report {
    let p = &s.p;
    if property.vexillary_only() && !p.is_vexillary() {
        return Report::skipped(property, p, "not vexillary");
    }
    let done = match property {
        Property::Degree => Ok(degree_report(s)),
        Property::ElbowBound => Ok(elbow_bound_report(s)),
        Property::SameRowCol => same_row_col_report(s),
        Property::Connectivity => connectivity_report(s),
        Property::UpByOne => Ok(up_by_one_report(s)),
        Property::DownByOne => Ok(down_by_one_report(s)),
        Property::Interval => Ok(interval_report(s)),
        Property::Saturation => saturation_report(s),
        Property::Leading => Ok(leading_report(s)),
        Property::SPlusOne => Ok(s_plus_one_report(s)),
    };
    done.expect("vexillary-only properties are skipped above")
}

#[derive(Clone, Copy, Debug)]
pub struct SweepOptions {
    pub n: usize,
    pub vexillary_only: bool,
    pub threads: usize,
}

/// Permutations of S_n covered by a sweep, in lexicographic order.
pub fn sweep_domain(n: usize, vexillary_only: bool) -> Vec<Permutation> {
    all_permutations(n)
        .filter(|p| !vexillary_only || p.is_vexillary())
        .collect()
}

/// Runs `work` on every permutation of the sweep in a pool of
/// `opts.threads` workers. Results come back in permutation order whatever
/// the thread count; `progress` sees (done, total) after each item.
pub fn sweep_with<T, F>(
    opts: SweepOptions,
    work: F,
    progress: &(dyn Fn(usize, usize) + Sync),
) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&Permutation) -> T + Sync,
{
    let domain = sweep_domain(opts.n, opts.vexillary_only);
    let total = domain.len();
    let done = AtomicUsize::new(0);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.threads.max(1))
        .build()
        .map_err(|e| Error::Io(format!("thread pool: {e}")))?;
    Ok(pool.install(|| {
        domain
            .par_iter()
            .map(|p| {
                let out = work(p);
                progress(done.fetch_add(1, Ordering::Relaxed) + 1, total);
                out
            })
            .collect()
    }))
}

/// One property over S_n.
pub fn sweep(
    property: Property,
    opts: SweepOptions,
    progress: &(dyn Fn(usize, usize) + Sync),
) -> Result<Vec<Report>> {
    sweep_with(
        opts,
        |p| check(property, &Subject::new(p.clone())),
        progress,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permutation::all_permutations;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::from_one_line(v).unwrap()
    }

    fn exp(v: &[u32]) -> Exponent {
        Exponent(v.to_vec())
    }

    fn quiet(_: usize, _: usize) {}

    #[test]
    fn property_names_round_trip() {
        for p in Property::ALL {
            assert_eq!(p.name().parse::<Property>().unwrap(), p);
            assert_eq!(
                serde_json::to_string(&p).unwrap(),
                format!("\"{}\"", p.name())
            );
        }
        assert!("nope".parse::<Property>().is_err());
    }

    #[test]
    fn max_degree_examples() {
        let id = Permutation::identity(3);
        assert_eq!(max_degree_bpds(&id).unwrap(), vec![Bpd::rothe(&id)]);
        let top = max_degree_bpds(&perm(&[1, 3, 2])).unwrap();
        assert!(!top.is_empty());
        assert!(top.iter().all(|b| b.up_elbows().len() == 1));
        assert!(max_degree_bpds(&perm(&[2, 1, 4, 3])).is_err());
    }

    #[test]
    fn small_reports() {
        let p = perm(&[1, 3, 2]);
        for r in [
            check_up_elbow_bound(&p),
            check_up_by_one(&p),
            check_down_by_one(&p),
            check_interval_closure(&p),
            check_divisibility_saturation(&p).unwrap(),
            check_leading(&p),
            check_same_row_col(&p).unwrap(),
            check_top_connectivity(&p).unwrap(),
            check_s_plus_one_leading(&p),
        ] {
            assert_eq!(r.status, Status::Pass, "{r:?}");
        }
        assert_eq!(check_up_by_one(&p).checked, 2);
        assert_eq!(check_down_by_one(&p).checked, 1);
        let w0 = Permutation::longest(4);
        assert_eq!(check_s_plus_one_leading(&w0).status, Status::Skipped);
        assert!(check_same_row_col(&perm(&[2, 1, 4, 3])).is_err());
        assert!(check_top_connectivity(&perm(&[2, 1, 4, 3])).is_err());
        assert!(check_divisibility_saturation(&perm(&[2, 1, 4, 3])).is_err());
    }

    #[test]
    fn identity_is_vacuous() {
        let id = Subject::new(Permutation::identity(4));
        for prop in Property::ALL {
            let r = check(prop, &id);
            assert!(r.passed(), "{prop}");
            assert!(r.violations.is_empty());
        }
    }

    #[test]
    fn leading_formula_examples() {
        let p = perm(&[1, 3, 2]);
        assert_eq!(leading_exponent_formula(&p, 1).unwrap(), exp(&[0, 1, 0]));
        assert_eq!(leading_exponent_formula(&p, 2).unwrap(), exp(&[1, 1, 0]));
        assert!(matches!(
            leading_exponent_formula(&p, 3),
            Err(Error::DegreeOutOfRange {
                k: 3,
                low: 1,
                high: 2
            })
        ));
        assert!(leading_exponent_formula(&p, 0).is_err());
    }

    #[test]
    fn lex_last_examples() {
        let f = SparsePoly::variable(2, 1).add(&SparsePoly::variable(2, 2));
        assert_eq!(lex_last_exponent(&f, 1).unwrap(), exp(&[0, 1]));
        assert_eq!(lex_last_exponent(&f, 2), Err(Error::EmptyComponent(2)));
        // x₁² vs x₁x₂ vs x₂: x₂ wins in degree 1, x₁x₂ in degree 2
        let g = SparsePoly::monomial(exp(&[2, 0]), 1.into())
            .add(&SparsePoly::monomial(exp(&[1, 1]), 1.into()));
        assert_eq!(lex_last_exponent(&g, 2).unwrap(), exp(&[1, 1]));
    }

    #[test]
    fn interval_enumeration() {
        let box_ = interval(&exp(&[0, 1]), &exp(&[1, 2]));
        assert_eq!(
            box_,
            vec![exp(&[0, 1]), exp(&[0, 2]), exp(&[1, 1]), exp(&[1, 2])]
        );
    }

    #[test]
    fn detects_planted_gaps() {
        // a support with a hole in the middle fails both closure checks
        let s = Subject::new(perm(&[1, 3, 2]));
        let mut holes = BTreeSet::new();
        holes.insert(exp(&[0, 0, 0]));
        holes.insert(exp(&[1, 1, 0]));
        s.support.set(holes).unwrap();
        assert_eq!(interval_report(&s).status, Status::Fail);
        assert_eq!(down_by_one_report(&s).status, Status::Fail);
    }

    #[test]
    fn sweep_is_ordered_and_thread_independent() {
        let one = sweep(
            Property::DownByOne,
            SweepOptions {
                n: 4,
                vexillary_only: false,
                threads: 1,
            },
            &quiet,
        )
        .unwrap();
        let four = sweep(
            Property::DownByOne,
            SweepOptions {
                n: 4,
                vexillary_only: false,
                threads: 4,
            },
            &quiet,
        )
        .unwrap();
        assert_eq!(one, four);
        let perms: Vec<Permutation> = one.iter().map(|r| r.permutation.clone()).collect();
        assert_eq!(perms, all_permutations(4).collect::<Vec<_>>());
        assert!(one.iter().all(Report::passed));
        let vex = sweep_domain(4, true);
        assert_eq!(vex.len(), 23);
    }

    #[test]
    fn all_properties_hold_on_s4() {
        for p in all_permutations(4) {
            let s = Subject::new(p.clone());
            for prop in Property::ALL {
                let r = check(prop, &s);
                assert!(r.passed(), "{prop} on {p}: {:?}", r.violations);
            }
        }
    }

    #[test]
    fn report_json_shape() {
        let r = check_up_by_one(&perm(&[1, 3, 2]));
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["property"], "up-by-one");
        assert_eq!(v["permutation"], "1,3,2");
        assert_eq!(v["status"], "pass");
        assert_eq!(v["conjectural"], false);
        let back: Report = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
    }
}
