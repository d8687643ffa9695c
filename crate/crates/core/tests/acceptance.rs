//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any criterion fails. All comparisons are exact; the
//! only tolerances are the wall-clock budgets pinned below.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use pipedream::degree::{lambda_filled, psw_degree, rho_a, rrw_decomposition, rrw_degree, tau};
use pipedream::moves::{brute_force_pipes, enumerate_pipes, local_move_closure};
use pipedream::polynomial::{groth_bpd, groth_oracle, schubert_bpd, schubert_oracle};
use pipedream::support::{
    check_divisibility_saturation, check_down_by_one, check_interval_closure,
    check_s_plus_one_leading, check_same_row_col, check_top_connectivity, check_up_by_one,
    check_up_elbow_bound, leading_exponent_formula, lex_last_exponent, max_degree_bpds, Report,
    Status,
};
use pipedream::{all_permutations, Bpd, Exponent, Permutation, SparsePoly, Tile, TileGrid};

const BUDGET_S4_ORACLE: Duration = Duration::from_secs(5);
const BUDGET_S5_ORACLE: Duration = Duration::from_secs(600);
const BUDGET_S5_ELBOW: Duration = Duration::from_secs(900);

const GRID_16352874: [&str; 8] = [
    "....r---", "...rJ.r-", "..rJr-+-", "..|rJr+-", ".rJ|r++-", "rJr+++Jr", "|r+J||r+", "|||r++++",
];
const BUMPS_16352874: [(usize, usize); 3] = [(4, 7), (5, 7), (6, 4)];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn perm(s: &str) -> Permutation {
    s.parse().unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn vexillary(n: usize) -> impl Iterator<Item = Permutation> {
    all_permutations(n).filter(Permutation::is_vexillary)
}

fn all_pass(reports: impl IntoIterator<Item = Report>, what: &str) -> Result<usize, String> {
    let mut count = 0;
    for r in reports {
        if r.status == Status::Fail {
            return Err(format!(
                "{what} fails on {}: {}",
                r.permutation, r.violations[0].detail
            ));
        }
        count += 1;
    }
    Ok(count)
}

/// Longest chain with strictly decreasing rows and strictly increasing
/// columns, by trying every subset.
fn rho_subsets(cells: &BTreeSet<(usize, usize)>) -> usize {
    let v: Vec<_> = cells.iter().copied().collect();
    (0u32..1 << v.len())
        .filter_map(|mask| {
            let mut chosen: Vec<_> = (0..v.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| v[i])
                .collect();
            chosen.sort_by_key(|c| std::cmp::Reverse(c.0));
            chosen
                .windows(2)
                .all(|w| w[0].0 > w[1].0 && w[0].1 < w[1].1)
                .then_some(chosen.len())
        })
        .max()
        .unwrap_or(0)
}

/// Leading exponent of a homogeneous component by sorting the whole
/// component on the reversed exponent vector.
fn lex_last_by_sorting(f: &SparsePoly, k: usize) -> Option<Exponent> {
    let mut component: Vec<Vec<u32>> = f
        .terms()
        .filter(|(e, _)| e.total() == k)
        .map(|(e, _)| e.as_slice().iter().rev().copied().collect())
        .collect();
    component.sort();
    component
        .pop()
        .map(|rev| Exponent(rev.into_iter().rev().collect()))
}

fn code_exp(c: &pipedream::Code) -> Exponent {
    Exponent(c.entries().iter().map(|&v| v as u32).collect())
}

fn c1_oracle_equivalence() -> Outcome {
    let mut timings = Vec::new();
    for (n, budget) in [(4, BUDGET_S4_ORACLE), (5, BUDGET_S5_ORACLE)] {
        let start = Instant::now();
        for p in all_permutations(n) {
            ensure(groth_bpd(&p) == groth_oracle(&p), || {
                format!("Grothendieck mismatch at {p}")
            })?;
            ensure(schubert_bpd(&p) == schubert_oracle(&p), || {
                format!("Schubert mismatch at {p}")
            })?;
        }
        let took = start.elapsed();
        ensure(took < budget, || {
            format!("S_{n} took {took:?}, budget {budget:?}")
        })?;
        timings.push(format!("S_{n} in {:.2}s", took.as_secs_f64()));
    }
    Ok(timings.join(", "))
}

fn c2_psw_degree() -> Outcome {
    for p in all_permutations(5) {
        let psw = psw_degree(&p) as i64;
        let deg = groth_oracle(&p).degree();
        ensure(deg == psw, || {
            format!("{p}: degree {deg}, rajchgot sum {psw}")
        })?;
    }
    Ok("120 permutations of S_5".into())
}

fn c3_rrw_degree() -> Outcome {
    let mut count = 0;
    for p in vexillary(6) {
        let (rrw, psw) = (rrw_degree(&p).unwrap(), psw_degree(&p));
        ensure(rrw == psw, || format!("{p}: RRW {rrw}, PSW {psw}"))?;
        count += 1;
    }
    let w = perm("1,8,2,7,3,5,6,4");
    let shape = lambda_filled(&w).unwrap();
    ensure(w.length() == 12, || "length of 18273564".into())?;
    ensure(shape.rows() == [6, 4, 1, 1], || {
        format!("shape {:?}", shape.rows())
    })?;
    let fills: Vec<BTreeSet<usize>> = shape
        .row_labels()
        .into_iter()
        .map(|r| r.into_iter().collect())
        .collect();
    let expected: Vec<BTreeSet<usize>> = [1, 2, 3, 3]
        .iter()
        .map(|&v| [v].into_iter().collect())
        .collect();
    ensure(fills == expected, || format!("row fills {fills:?}"))?;
    let rho: Vec<usize> = (1..=3).map(|k| rho_a(&tau(&shape, k))).collect();
    let rho_check: Vec<usize> = (1..=3).map(|k| rho_subsets(&tau(&shape, k))).collect();
    ensure(rho == [3, 2, 1] && rho_check == rho, || {
        format!("rho {rho:?}, subset oracle {rho_check:?}")
    })?;
    let d = rrw_decomposition(&w).unwrap();
    ensure(d.total == 18 && psw_degree(&w) == 18, || {
        format!("degrees {} / {}", d.total, psw_degree(&w))
    })?;
    Ok(format!(
        "{count} vexillary permutations of S_6; 18273564 golden"
    ))
}

fn c4_pipewise_bound() -> Outcome {
    let mut count = 0;
    for p in vexillary(5) {
        let top = max_degree_bpds(&p).unwrap();
        ensure(!top.is_empty(), || {
            format!("{p}: no maximal-degree pipe dream")
        })?;
        count += all_pass([check_up_elbow_bound(&p)], "pipe-wise bound")?;
    }
    Ok(format!("{count} vexillary permutations of S_5"))
}

fn c5_bump_bound() -> Outcome {
    let start = Instant::now();
    let s5 = all_pass(
        all_permutations(5).map(|p| check_up_elbow_bound(&p)),
        "S_5 bound",
    )?;
    let took = start.elapsed();
    ensure(took < BUDGET_S5_ELBOW, || format!("S_5 took {took:?}"))?;
    let s6 = all_pass(
        all_permutations(6).map(|p| check_up_elbow_bound(&p)),
        "S_6 bound",
    )?;
    Ok(format!("{s5} permutations of S_5, {s6} of S_6"))
}

fn c6_enumeration_oracle() -> Outcome {
    for p in all_permutations(4) {
        let closure = enumerate_pipes(&p);
        let mut brute = brute_force_pipes(&p).unwrap();
        brute.sort();
        ensure(closure == brute, || {
            format!("{p}: {} by moves, {} by tiling", closure.len(), brute.len())
        })?;
        if p.is_vexillary() {
            ensure(local_move_closure(&p).unwrap() == brute, || {
                format!("{p}: local moves differ")
            })?;
        }
    }
    Ok("24 permutations of S_4, 23 via local moves".into())
}

fn c7_bumped_grid() -> Outcome {
    let b = Bpd::validate(TileGrid::from_rows(&GRID_16352874).unwrap()).map_err(|e| e.to_string())?;
    let w = b.permutation_of();
    ensure(w == perm("16352874"), || format!("permutation {w}"))?;
    ensure(!b.is_reduced(), || "reported reduced".into())?;
    let resolved = b.resolve_to_bumps();
    let mut changed = Vec::new();
    for r in 1..=8 {
        for c in 1..=8 {
            if resolved.get(r, c) != b.get(r, c) {
                ensure(
                    b.get(r, c) == Tile::Cross && resolved.get(r, c) == Tile::Bump,
                    || format!("({r},{c}) changed unexpectedly"),
                )?;
                changed.push((r, c));
            }
        }
    }
    ensure(changed == BUMPS_16352874, || format!("bumps at {changed:?}"))?;
    Ok("16352874, bumps at (4,7) (5,7) (6,4)".into())
}

fn c8_support() -> Outcome {
    let mut vex = 0;
    for p in vexillary(5) {
        all_pass(
            [check_up_by_one(&p), check_interval_closure(&p)],
            "vexillary support",
        )?;
        all_pass([check_divisibility_saturation(&p).unwrap()], "saturation")?;
        vex += 1;
    }
    let mut skipped = 0;
    for p in all_permutations(5) {
        all_pass([check_down_by_one(&p)], "down-by-one")?;
        let r = check_s_plus_one_leading(&p);
        skipped += usize::from(r.status == Status::Skipped);
        all_pass([r], "s-plus-one")?;
    }
    Ok(format!(
        "{vex} vexillary and 120 total permutations of S_5 ({skipped} with equal degrees)"
    ))
}

fn leading_matches(p: &Permutation) -> Result<usize, String> {
    let f = groth_oracle(p);
    let (low, high) = (p.length(), psw_degree(p));
    for k in low..=high {
        let formula = leading_exponent_formula(p, k).map_err(|e| e.to_string())?;
        let actual = lex_last_exponent(&f, k).map_err(|e| e.to_string())?;
        ensure(lex_last_by_sorting(&f, k).as_ref() == Some(&actual), || {
            format!("{p}: comparators disagree in degree {k}")
        })?;
        ensure(formula == actual, || {
            format!("{p}, k={k}: formula {formula:?}, actual {actual:?}")
        })?;
    }
    ensure(
        leading_exponent_formula(p, low).unwrap() == code_exp(&p.lehmer_code()),
        || format!("{p}: bottom degree is not the Lehmer code"),
    )?;
    ensure(
        leading_exponent_formula(p, high).unwrap() == code_exp(&p.rajchgot_code()),
        || format!("{p}: top degree is not the Rajchgot code"),
    )?;
    Ok(high - low + 1)
}

fn c9_leading_terms() -> Outcome {
    let mut degrees = 0;
    for p in vexillary(5) {
        degrees += leading_matches(&p)?;
    }
    let mut counterexamples = Vec::new();
    for p in all_permutations(4) {
        if leading_matches(&p).is_err() {
            counterexamples.push(p.to_string());
        }
    }
    ensure(counterexamples.is_empty(), || {
        format!("S_4 counterexamples {counterexamples:?}")
    })?;
    Ok(format!(
        "{degrees} components over vexillary S_5; S_4 scan clean"
    ))
}

fn c10_structure() -> Outcome {
    let mut count = 0;
    for p in vexillary(5).chain([perm("1,2,7,5,4,6,3")]) {
        all_pass([check_same_row_col(&p).unwrap()], "row/column dichotomy")?;
        all_pass([check_top_connectivity(&p).unwrap()], "connectivity")?;
        count += 1;
    }
    let example = perm("1,2,7,5,4,6,3");
    let top = max_degree_bpds(&example).unwrap().len();
    Ok(format!(
        "{count} permutations; 1275463 has {top} maximal-degree pipe dreams"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1 oracle equivalence S_4, S_5", c1_oracle_equivalence),
        ("2 degree equals Rajchgot sum on S_5", c2_psw_degree),
        ("3 shape degree on vexillary S_6 + 18273564 golden", c3_rrw_degree),
        (
            "4 pipe-wise up-elbow bound, vexillary S_5",
            c4_pipewise_bound,
        ),
        ("5 bump-aware up-elbow bound, S_5 and S_6", c5_bump_bound),
        (
            "6 enumeration oracle S_4 + local moves",
            c6_enumeration_oracle,
        ),
        ("7 non-reduced 8x8 grid golden", c7_bumped_grid),
        ("8 support suite S_5", c8_support),
        ("9 leading terms", c9_leading_terms),
        ("10 row/column dichotomy + connectivity", c10_structure),
    ];
    let mut results = BTreeMap::new();
    for (name, run) in criteria {
        let outcome = run();
        match &outcome {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => println!("FAIL  {name}: {why}"),
        }
        results.insert(name, outcome.is_ok());
    }
    let failed = results.values().filter(|ok| !**ok).count();
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
