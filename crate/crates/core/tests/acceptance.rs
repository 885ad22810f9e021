//! Acceptance criteria, one line per criterion. Runs with its own harness so
//! the lines reach the terminal in order.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use common::{random_dag, random_graph};
use grundy_forge::gw::{critical_parameter, fixed_points, reduced_pgf, stability_profile, FamilyKind, Pgf, Verdict};
use grundy_forge::sampler::{
    certify_tree, child_key, empirical_distribution, root_key, truncated_is_p, CertifiedValue, LazyTree,
    OffspringSampler, DEFAULT_NODE_BUDGET,
};
use grundy_forge::{
    enumerate_mex_labellings, is_k_stable, load_graph, product_graph, reduce, solve, sum_value, GameGraph, SGValue,
};
use rand::{Rng, SeedableRng};
use rand_pcg::Pcg64Mcg;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn values_by_id(g: &GameGraph) -> BTreeMap<String, String> {
    let s = solve(g);
    (0..g.len()).map(|x| (g.id(x).to_string(), s.values[x].to_string())).collect()
}

fn expect(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

fn fig2() -> Outcome {
    let g = load_graph(&fixture("fig2-left.game")).unwrap();
    let t = Instant::now();
    let before = values_by_id(&g);
    let after = values_by_id(&reduce(&g).reduced);
    let elapsed = t.elapsed();
    let ok = before == expect(&[("a", "inf:{1}"), ("b", "inf:{2}"), ("c", "2"), ("d", "1"), ("e", "0")])
        && after == expect(&[("a", "1"), ("b", "inf:{1}"), ("c", "1"), ("d", "0")]);
    outcome(ok && elapsed.as_secs_f64() < 1e-3, format!("{before:?} -> {after:?} in {elapsed:?}"))
}

fn sweep_p(i: usize, count: usize) -> f64 {
    0.01 + 0.29 * i as f64 / (count - 1) as f64
}

fn sum_oracle() -> Outcome {
    let mut rng = Pcg64Mcg::seed_from_u64(2);
    let t = Instant::now();
    let mut agree = 0;
    for i in 0..500 {
        let p = sweep_p(i, 500);
        let n = rng.random_range(1..=40);
        let v = random_graph(&mut rng, n, p, true);
        let n = rng.random_range(1..=40);
        let w = random_graph(&mut rng, n, p, true);
        let (sv, sw) = (solve(&v), solve(&w));
        let got = solve(&product_graph(&v, &w).unwrap()).root_value().cloned();
        agree += usize::from(got.as_ref() == Some(&sum_value(sv.root_value().unwrap(), sw.root_value().unwrap())));
    }
    let elapsed = t.elapsed();
    outcome(agree == 500 && elapsed.as_secs() < 60, format!("{agree}/500 pairs agree in {elapsed:.2?}"))
}

/// Counts surviving vertices whose values obey the shift laws: finite
/// values (always) and infinite ones (only when `infinite` is set).
fn shift_violations(g: &GameGraph, infinite: bool) -> (usize, usize) {
    let before = solve(g);
    let after = solve(&reduce(g).reduced);
    let (mut checked, mut bad) = (0, 0);
    for x in 0..g.len() {
        let got = after.value_of(g.id(x).as_str());
        let want = match &before.values[x] {
            SGValue::Finite(0) => continue,
            SGValue::Finite(m) => SGValue::Finite(m - 1),
            SGValue::InfiniteRank(_) if !infinite => continue,
            SGValue::InfiniteRank(a) => SGValue::infinite(a.iter().filter(|&&v| v > 0).map(|v| v - 1)),
        };
        checked += 1;
        bad += usize::from(got != Some(&want));
    }
    (checked, bad)
}

fn reduction_shift() -> Outcome {
    let mut rng = Pcg64Mcg::seed_from_u64(3);
    let (mut found, mut tried) = (0, 0);
    let (mut checked_df, mut bad_df) = (0, 0);
    while found < 500 {
        let p = sweep_p(tried % 100, 100);
        tried += 1;
        let n = rng.random_range(1..=30);
        let g = random_graph(&mut rng, n, p, true);
        if !solve(&g).is_draw_free() {
            continue;
        }
        found += 1;
        let (c, b) = shift_violations(&g, true);
        checked_df += c;
        bad_df += b;
    }
    let (mut checked, mut bad) = (0, 0);
    for i in 0..500 {
        let n = rng.random_range(1..=30);
        let g = random_graph(&mut rng, n, sweep_p(i, 500), true);
        let (c, b) = shift_violations(&g, false);
        checked += c;
        bad += b;
    }
    outcome(
        bad_df == 0 && bad == 0,
        format!(
            "draw-free: {bad_df} violations over {checked_df} vertices (500 graphs of {tried} drawn); \
             unrestricted: {bad} violations over {checked} finite vertices"
        ),
    )
}

fn poisson_threshold() -> Outcome {
    let t = Instant::now();
    let r = critical_parameter(FamilyKind::Poisson, 0, 2.0, 3.5, 1e-9).unwrap();
    let elapsed = t.elapsed();
    let err = (r.value - std::f64::consts::E).abs();
    outcome(err < 1e-3 && elapsed.as_secs() < 5, format!("lambda_c = {:.10} (|err| {err:.1e}) in {elapsed:.2?}", r.value))
}

fn poisson_closure() -> Outcome {
    let mut worst: f64 = 0.0;
    for lambda in [1.5, 2.0, 2.5] {
        let phi = Pgf::poisson(lambda).unwrap();
        let p = fixed_points(&phi).unwrap().p;
        let r = reduced_pgf(&phi).unwrap();
        for i in 0..=2000 {
            let s = i as f64 / 2000.0;
            worst = worst.max((r.eval(s) - (lambda * (1.0 - p) * (s - 1.0)).exp()).abs());
        }
    }
    outcome(worst < 1e-10, format!("max deviation {worst:.2e}"))
}

fn zero_or_four() -> Outcome {
    let t = Instant::now();
    let a1 = critical_parameter(FamilyKind::ZeroOrFour, 1, 0.4, 0.7, 1e-10).unwrap().value;
    let a2 = critical_parameter(FamilyKind::ZeroOrFour, 0, 0.7, 0.95, 1e-10).unwrap().value;
    let elapsed = t.elapsed();
    let closed = 5f64.powf(0.75) / 4.0;
    let ok = (a1 - 0.52198).abs() < 1e-3
        && (a2 - 0.835919).abs() < 1e-3
        && (a2 - closed).abs() < 1e-6
        && elapsed.as_secs() < 10;
    outcome(ok, format!("a1 = {a1:.10}, a2 = {a2:.10}, 5^(3/4)/4 = {closed:.10}, in {elapsed:.2?}"))
}

fn geometric() -> Outcome {
    let level0 = [0.6, 0.8, 0.95, 0.99].iter().all(|&q| fixed_points(&Pgf::geometric(q).unwrap()).unwrap().draw_free);
    let q = |level, lo, hi| critical_parameter(FamilyKind::Geometric, level, lo, hi, 1e-10).unwrap().value;
    let (q1, q2, q3) = (q(3, 0.85, 0.95), q(2, 0.85, 0.95), q(1, 0.85, 0.99));
    let prof = stability_profile(&Pgf::geometric(0.91).unwrap(), 5).unwrap();
    let profile_ok = prof.levels.len() == 3
        && prof.levels[0].draw_free
        && prof.levels[1].draw_free
        && prof.verdict == Verdict::DrawsAtLevel { level: 2 };
    let ok = level0
        && (q1 - 0.88578).abs() < 1e-3
        && (q2 - 0.88956).abs() < 1e-3
        && (q3 - 0.923077).abs() < 1e-3
        && profile_ok;
    outcome(
        ok,
        format!("level-0 draw-free {level0}; q1 = {q1:.10}, q2 = {q2:.10}, q3 = {q3:.10}; q=0.91 verdict {:?}", prof.verdict),
    )
}

fn discontinuous() -> Outcome {
    let r = critical_parameter(FamilyKind::Discontinuous, 0, 0.95, 0.999, 1e-10).unwrap();
    // The draw side of the final bracket: the law at the critical point.
    let at_critical = fixed_points(&Pgf::discontinuous(r.hi).unwrap()).unwrap().gap();
    let literal = fixed_points(&Pgf::discontinuous(0.979).unwrap()).unwrap().gap();
    let ok = (r.value - 0.979).abs() < 2e-3 && (0.60..=0.70).contains(&at_critical);
    outcome(
        ok,
        format!(
            "a_c = {:.10}; gap at a_c = {at_critical:.6} (figures quoted: 0.61 and 0.681); gap at a = 0.979 exactly = {literal:.6}",
            r.value
        ),
    )
}

fn monte_carlo() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for phi in [Pgf::poisson(2.0).unwrap(), Pgf::geometric(0.7).unwrap(), Pgf::zero_or_four(0.4).unwrap()] {
        let t = Instant::now();
        let d = empirical_distribution(&phi, 40, 100_000, 9).unwrap();
        let elapsed = t.elapsed();
        let z = d.p_zscore.unwrap();
        pass &= z.abs() <= 3.0 && elapsed.as_secs() < 60;
        parts.push(format!(
            "{}: f0 = {:.5} vs P = {:.5} (z = {z:+.2}, unsettled zero tests {}) in {elapsed:.1?}",
            d.family,
            d.freq("0"),
            d.analytic.p,
            d.zero_test_exhausted
        ));
    }
    outcome(pass, parts.join("; "))
}

fn labellings() -> Outcome {
    let mut rng = Pcg64Mcg::seed_from_u64(10);
    let mut unique = 0;
    for i in 0..200 {
        let n = rng.random_range(1..=20);
        let g = random_dag(&mut rng, n, sweep_p(i, 200) * 2.0);
        let e = enumerate_mex_labellings(&g, 2).unwrap();
        let s = solve(&g);
        unique += usize::from(
            e.labellings.len() == 1
                && e.labellings[0].label.iter().zip(&s.values).all(|(&l, v)| *v == SGValue::Finite(l)),
        );
    }
    // A self-loop rules out every mex labelling, and a graph without
    // labellings satisfies the level-set claim vacuously; both are skipped.
    let (mut found, mut tried, mut consistent, mut vacuous) = (0, 0, 0, 0);
    while found < 50 {
        tried += 1;
        let k = found % 3;
        let n = rng.random_range(2..=12);
        let g = random_graph(&mut rng, n, sweep_p(tried % 50, 50) + 0.05, false);
        if g.is_loop_free() || !is_k_stable(&g, k).unwrap() {
            continue;
        }
        let e = enumerate_mex_labellings(&g, 100_000).unwrap();
        if e.truncated {
            continue;
        }
        if e.labellings.is_empty() {
            vacuous += 1;
            continue;
        }
        found += 1;
        let s = solve(&g);
        let want: Vec<bool> = s.values.iter().map(|v| *v == SGValue::Finite(k as u32)).collect();
        consistent +=
            usize::from(e.labellings.iter().all(|f| f.label.iter().map(|&l| l == k as u32).collect::<Vec<_>>() == want));
    }
    outcome(
        unique == 200 && consistent == 50,
        format!(
            "loop-free: {unique}/200 unique and equal to values; loopy k-stable: {consistent}/50 level sets agree \
             ({vacuous} graphs without labellings skipped)"
        ),
    )
}

/// Parity of the truncation labelling at the root of likely drawn trees.
fn parity() -> (Outcome, String) {
    const QUERY_BUDGET: u64 = 100_000;
    let phi = Pgf::zero_or_four(0.9).unwrap();
    let s = OffspringSampler::new(&phi).unwrap();
    let (mut cases, mut xor, mut same, mut unexamined) = (0usize, 0usize, 0usize, 0usize);
    let (mut candidates, mut cand_xor, mut cand_unexamined) = (0usize, 0usize, 0usize);
    for i in 0..1000 {
        let (v, _) = certify_tree(&s, 40, 12, i, DEFAULT_NODE_BUDGET);
        if !matches!(v, CertifiedValue::RankExceeds(_)) {
            continue;
        }
        cases += 1;
        let key = root_key(12, i);
        match (truncated_is_p(&s, key, 30, QUERY_BUDGET), truncated_is_p(&s, key, 31, QUERY_BUDGET)) {
            (Some(a), Some(b)) if a != b => xor += 1,
            (Some(_), Some(_)) => same += 1,
            _ => unexamined += 1,
        }
        // Roots with a certified P-child are N-positions, not draws.
        let p_child = (0..s.count(key)).any(|j| {
            let mut t = LazyTree::from_key(&s, child_key(key, j), DEFAULT_NODE_BUDGET);
            matches!(t.certified_root_value(20).0, CertifiedValue::Exact { value: SGValue::Finite(0), .. })
        });
        if p_child {
            continue;
        }
        candidates += 1;
        match (truncated_is_p(&s, key, 16, 10 * QUERY_BUDGET), truncated_is_p(&s, key, 17, 10 * QUERY_BUDGET)) {
            (Some(a), Some(b)) if a != b => cand_xor += 1,
            (Some(_), Some(_)) => {}
            _ => cand_unexamined += 1,
        }
    }
    let examined = xor + same;
    let rate = if examined > 0 { xor as f64 / examined as f64 } else { f64::NAN };
    let best_case = (xor + unexamined) as f64 / cases as f64;
    let main = outcome(
        examined > 0 && rate >= 0.99,
        format!(
            "{cases} RankExceeds roots; depths 30/31: {xor} one parity, {same} same parity, {unexamined} over budget; \
             rate among examined {rate:.3}, at most {best_case:.3} even if every unexamined case split"
        ),
    );
    let info = format!(
        "roots without a certified P-child: {candidates} ({:.3} of RankExceeds; D/(1-P) = {:.3}); \
         depths 16/17 split by parity in {cand_xor}, {cand_unexamined} over budget",
        candidates as f64 / cases as f64,
        {
            let r = fixed_points(&phi).unwrap();
            r.d / (1.0 - r.p)
        }
    );
    (main, info)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("fig2 exact reproduction", fig2),
        ("sum-algebra oracle", sum_oracle),
        ("reduction shift law", reduction_shift),
        ("Poisson draw threshold", poisson_threshold),
        ("Poisson reduction closure", poisson_closure),
        ("0-or-4 thresholds", zero_or_four),
        ("geometric profile", geometric),
        ("discontinuous family", discontinuous),
        ("Monte Carlo agreement", monte_carlo),
        ("mex-labelling consistency", labellings),
    ];
    let mut failed = 0;
    let mut report = |i: usize, name: &str, o: &Outcome| {
        println!("criterion {i:>2} [{}] {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    };
    for (i, (name, f)) in criteria.iter().enumerate() {
        report(i + 1, name, &f());
    }
    let (o, info) = parity();
    report(11, "parity-truncation demonstration", &o);
    println!("             info: {info}");
    println!("{} of 11 criteria passed", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
