//! Acceptance suite. One line per criterion; exits nonzero if any fails.
//!
//! Run with `cargo test -p threefold --test acceptance`.

use std::process::{Command, ExitCode};
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use threefold::basket_solver::{hz_p2_bound, solve, Preset};
use threefold::hilbert::{ci_series, count_monomials, degree_volume, hypersurface_series};
use threefold::moduli::{aut_dimension, moduli_dimension};
use threefold::noether::{noether_lower_bound, noether_table};
use threefold::reid_rr::{chi_mk, l_term, plurigenus};
use threefold::scalar::Scalar;
use threefold::{normalize_basket, Basket, BasketEntry, Catalog, NumericalData, Rational, WeightSystem};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn ws(w: &[u64]) -> WeightSystem {
    WeightSystem::new(w.iter().copied()).unwrap()
}

fn q(n: i64, d: i64) -> Rational {
    Rational::from_frac(n, d)
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        Config { cases, failure_persistence: None, ..Config::default() },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    )
}

// Histogram of exponent tuples by total degree, enumerated directly.
fn enumerate_tuples(w: &[u64], budget: u64, acc: u64, hist: &mut [u64]) {
    match w.split_first() {
        None => hist[acc as usize] += 1,
        Some((&wi, rest)) => {
            let mut used = 0;
            while used <= budget {
                enumerate_tuples(rest, budget - used, acc + used, hist);
                used += wi;
            }
        }
    }
}

fn weight_multisets(max_len: usize, max_w: u64) -> Vec<Vec<u64>> {
    fn go(prefix: &mut Vec<u64>, min: u64, max_len: usize, max_w: u64, out: &mut Vec<Vec<u64>>) {
        if !prefix.is_empty() {
            out.push(prefix.clone());
        }
        if prefix.len() == max_len {
            return;
        }
        for w in min..=max_w {
            prefix.push(w);
            go(prefix, w, max_len, max_w, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), 1, max_len, max_w, &mut out);
    out
}

fn ac1() -> Outcome {
    for (w, d, expected) in [
        (&[1, 1, 2, 3, 8][..], 16, 246u32),
        (&[1, 1, 1, 2, 6], 12, 303),
        (&[1, 1, 1, 1, 5], 10, 343),
    ] {
        let got = count_monomials(&ws(w), d);
        ensure!(got == BigUint::from(expected), "count({w:?}, {d}) = {got}, expected {expected}");
    }
    const MAX_DEG: u64 = 30;
    let systems = weight_multisets(6, 10);
    for w in &systems {
        let mut hist = vec![0u64; MAX_DEG as usize + 1];
        enumerate_tuples(w, MAX_DEG, 0, &mut hist);
        let weights = ws(w);
        for (k, &n) in hist.iter().enumerate() {
            let got = count_monomials(&weights, k as i64);
            ensure!(got == BigUint::from(n), "count({w:?}, {k}) = {got}, oracle {n}");
        }
        ensure!(count_monomials(&weights, -1) == BigUint::from(0u32), "negative degree nonzero for {w:?}");
    }
    Ok(format!("246/303/343; oracle agrees on {} weight systems, degrees 0..=30", systems.len()))
}

fn ac2() -> Outcome {
    let cases: [(&[u64], u64, &[(usize, u32)]); 3] = [
        (&[1, 1, 2, 3, 8], 16, &[(1, 2), (2, 4), (3, 7), (4, 11)]),
        (&[1, 1, 1, 2, 6], 12, &[(1, 3), (2, 7)]),
        (&[1, 1, 1, 1, 5], 10, &[(1, 4), (2, 10), (5, 57), (10, 342)]),
    ];
    for (w, d, pins) in cases {
        let s = hypersurface_series(&ws(w), d, 64).map_err(|e| e.to_string())?;
        for &(k, c) in pins {
            let got = s.get(k).unwrap();
            ensure!(*got == BigUint::from(c), "{w:?} deg {d}: c_{k} = {got}, expected {c}");
        }
    }
    Ok("X16 (2,4,7,11), X12 (3,7), X10 c1,c2,c5,c10 = (4,10,57,342)".into())
}

fn ac3() -> Outcome {
    let catalog = Catalog::shipped();
    for f in &catalog.families {
        let series = ci_series(&f.ambient, &f.degrees, 50).map_err(|e| e.to_string())?;
        for m in 1..=50u32 {
            let chi = chi_mk(&f.data, &f.basket, m);
            ensure!(chi.as_integer().is_some(), "{}: chi({m}K) = {chi} not integral", f.name);
        }
        for m in 2..=50u32 {
            let p = plurigenus(&f.data, &f.basket, m).map_err(|e| format!("{}: {e}", f.name))?;
            let c = series.get(m as usize).unwrap();
            ensure!(&p == c, "{}: P_{m} = {p}, c_{m} = {c}", f.name);
        }
    }
    Ok(format!("{} families, 2 <= m <= 50", catalog.families.len()))
}

fn solution_keys(preset: Preset, bound: u32) -> Result<Vec<(Vec<u32>, i64, BigUint)>, String> {
    let sols = solve(&preset.scenario::<Rational>(bound)).map_err(|e| e.to_string())?;
    Ok(sols
        .iter()
        .map(|s| {
            let mults = s.multiplicities.iter().map(|&(_, m)| m).collect();
            (mults, s.chi, s.table.get(2).unwrap())
        })
        .collect())
}

fn ac4() -> Outcome {
    let expected: [(Preset, Vec<u32>, i64, u32); 3] = [
        (Preset::Pg2, vec![2, 1], -1, 4),
        (Preset::Pg3, vec![2], -2, 7),
        (Preset::Pg4, vec![0], -3, 10),
    ];
    for (preset, mults, chi, p2) in expected {
        let base = solution_keys(preset, 20)?;
        let want = vec![(mults, chi, BigUint::from(p2))];
        ensure!(base == want, "{}: got {base:?}, expected {want:?}", preset.name());
        let doubled = solution_keys(preset, 40)?;
        ensure!(doubled == base, "{}: bound 40 gives {doubled:?}", preset.name());
    }
    let hz = hz_p2_bound(&q(2, 1), 4).map_err(|e| e.to_string())?;
    ensure!(hz == BigInt::from(10), "hz bound(2, 4) = {hz}");
    Ok("pg2 {a=2,b=1,chi=-1}, pg3 {a=2,chi=-2}, pg4 {a=0,chi=-3,P2=10}, hz=10; stable at bound 40".into())
}

fn ac5() -> Outcome {
    for (w, d, aut, moduli) in [
        (&[1, 1, 2, 3, 8][..], 16, 56u32, 189i64),
        (&[1, 1, 1, 2, 6], 12, 66, 236),
        (&[1, 1, 1, 1, 5], 10, 72, 270),
    ] {
        let a = aut_dimension(&ws(w));
        ensure!(a == BigUint::from(aut), "aut{w:?} = {a}, expected {aut}");
        let m = moduli_dimension(&ws(w), d);
        ensure!(m == BigInt::from(moduli), "moduli{w:?} = {m}, expected {moduli}");
    }
    Ok("aut 56/66/72, moduli 189/236/270".into())
}

fn ac6() -> Outcome {
    let lb = noether_lower_bound::<Rational>(5).map_err(|e| e.to_string())?;
    ensure!(lb.value == q(52, 15), "bound(5) = {}", lb.value);
    ensure!(lb.value > q(10, 3), "52/15 not above 10/3");
    let rows = noether_table::<Rational>(6, 10).map_err(|e| e.to_string())?;
    let mins: Vec<Rational> = rows.iter().map(|r| r.min.clone()).collect();
    let want = [q(55, 12), q(39, 7), q(133, 20), q(208, 27), q(87, 10)];
    ensure!(mins == want, "min row {mins:?}");
    let exp: Vec<Rational> = rows.iter().map(|r| r.expected.clone()).collect();
    let want = [q(14, 3), q(6, 1), q(22, 3), q(26, 3), q(10, 1)];
    ensure!(exp == want, "expected row {exp:?}");
    Ok("52/15 > 10/3; table rows for p_g 6..=10 match".into())
}

fn ac7() -> Outcome {
    let ci = ci_series(&ws(&[1, 1, 1, 1, 2, 5]), &[2, 10], 64).map_err(|e| e.to_string())?;
    let hs = hypersurface_series(&ws(&[1, 1, 1, 1, 5]), 10, 64).map_err(|e| e.to_string())?;
    ensure!(ci.coefficients().len() == 65, "prefix length {}", ci.coefficients().len());
    if let Some(k) = (0..=64).find(|&k| ci.get(k) != hs.get(k)) {
        return Err(format!("c_{k}: {:?} vs {:?}", ci.get(k), hs.get(k)));
    }
    Ok("termwise equal for k <= 64".into())
}

fn ac8() -> Outcome {
    for (w, d, v) in [
        (&[1, 1, 2, 3, 8][..], 16, q(1, 3)),
        (&[1, 1, 1, 2, 6], 12, q(1, 1)),
        (&[1, 1, 1, 1, 5], 10, q(2, 1)),
    ] {
        let got: Rational = degree_volume(&ws(w), d).map_err(|e| e.to_string())?;
        ensure!(got == v, "volume{w:?} = {got}, expected {v}");
    }
    let identity = |a: [u64; 4]| -> Result<(), String> {
        let w = ws(&[1, a[0], a[1], a[2], a[3]]);
        let got: Rational = degree_volume(&w, 2 * a[3]).map_err(|e| e.to_string())?;
        let want = q(2, (a[0] * a[1] * a[2]) as i64);
        ensure!(got == want, "volume(1,{a:?}) = {got}, expected {want}");
        Ok(())
    };
    // admissible: a1 <= a2 <= a3 < a4 <= 12
    let tuples = (1u64..=11, 1u64..=11, 1u64..=11, 2u64..=12).prop_filter_map("admissible", |(x, y, z, t)| {
        let mut a = [x, y, z];
        a.sort_unstable();
        (a[2] < t).then_some([a[0], a[1], a[2], t])
    });
    let cases = 2000;
    runner(cases)
        .run(&tuples, |a| identity(a).map_err(TestCaseError::fail))
        .map_err(|e| e.to_string())?;
    let mut exhaustive = 0;
    for a4 in 2..=12 {
        for a3 in 1..a4 {
            for a2 in 1..=a3 {
                for a1 in 1..=a2 {
                    identity([a1, a2, a3, a4])?;
                    exhaustive += 1;
                }
            }
        }
    }
    Ok(format!("1/3, 1, 2; identity on {cases} random and all {exhaustive} admissible tuples"))
}

enum Mutation {
    K3(Rational),
    Chi(i64),
    Pg(i64),
    Mult(BasketEntry, i64),
    Weight(usize, i64),
    Degree(usize, i64),
}

fn apply(catalog: &mut Catalog, name: &str, m: &Mutation) -> Option<String> {
    let f = catalog.family_mut(name).unwrap();
    let (k3, chi, pg) = (f.data.k3().clone(), f.data.chi(), f.data.pg() as i64);
    let shifted = |x: u64, by: i64| u64::try_from(x as i64 + by).ok().filter(|&v| v > 0);
    match m {
        Mutation::K3(new) => {
            f.data = NumericalData::new(new.clone(), chi, pg as u64).ok()?;
            Some(format!("K^3 {k3} -> {new}"))
        }
        Mutation::Chi(by) => {
            f.data = NumericalData::new(k3, chi + by, pg as u64).ok()?;
            Some(format!("chi {chi} -> {}", chi + by))
        }
        Mutation::Pg(by) => {
            let new = u64::try_from(pg + by).ok()?;
            f.data = NumericalData::new(k3, chi, new).ok()?;
            Some(format!("p_g {pg} -> {new}"))
        }
        Mutation::Mult(entry, by) => {
            let old = f.basket.multiplicity(*entry);
            let new = u32::try_from(old as i64 + by).ok()?;
            f.basket = f.basket.with_multiplicity(*entry, new);
            Some(format!("mult {entry} {old} -> {new}"))
        }
        Mutation::Weight(i, by) => {
            let mut w = f.ambient.weights().to_vec();
            let old = w[*i];
            w[*i] = shifted(old, *by)?;
            f.ambient = WeightSystem::new(w).ok()?;
            Some(format!("weight #{i} {old} -> {}", old as i64 + by))
        }
        Mutation::Degree(i, by) => {
            let old = f.degrees[*i];
            f.degrees[*i] = shifted(old, *by)?;
            Some(format!("degree {old} -> {}", f.degrees[*i]))
        }
    }
}

fn mutations(catalog: &Catalog, name: &str) -> Vec<Mutation> {
    let f = catalog.family(name).unwrap();
    let k3 = f.data.k3().clone();
    let mut out = vec![
        Mutation::K3(k3.clone() + Rational::from_int(1)),
        Mutation::K3(k3.clone() / Rational::from_int(2)),
        Mutation::K3(k3 + q(1, 6)),
    ];
    for by in [-1, 1] {
        out.push(Mutation::Chi(by));
        out.push(Mutation::Pg(by));
        let mut entries: Vec<BasketEntry> = f.basket.iter().map(|(e, _)| e).collect();
        if entries.is_empty() {
            entries.push(BasketEntry::new(1, 2).unwrap());
        }
        for e in entries {
            out.push(Mutation::Mult(e, by));
        }
        for i in 0..f.ambient.len() {
            out.push(Mutation::Weight(i, by));
        }
        for i in 0..f.degrees.len() {
            out.push(Mutation::Degree(i, by));
        }
    }
    out
}

fn ac9() -> Outcome {
    let shipped = Catalog::shipped();
    let baseline = shipped.verify_all(32).map_err(|e| e.to_string())?;
    ensure!(baseline.passed(), "unmutated catalog fails: {:?}", baseline.failures().collect::<Vec<_>>());
    let mut applied = 0;
    for f in &shipped.families {
        for m in mutations(&shipped, &f.name) {
            let mut cat = shipped.clone();
            let Some(what) = apply(&mut cat, &f.name, &m) else { continue };
            let report = cat.verify_all(32).map_err(|e| e.to_string())?;
            let failed: Vec<_> = report.failures().filter(|(_, c)| !c.name.is_empty()).collect();
            ensure!(!failed.is_empty(), "{}: mutation {what} passes verify_all", f.name);
            applied += 1;
        }
    }
    Ok(format!("{applied} single-field mutations across {} families all caught", shipped.families.len()))
}

fn arb_basket() -> impl Strategy<Value = Vec<(u32, u64, u64)>> {
    prop::collection::vec((1u32..=4, 2u64..=13, 1u64..=6), 0..6).prop_map(|raw| {
        raw.into_iter()
            .map(|(m, r, b)| (m, (b - 1) % (r / 2) + 1, r))
            .filter(|&(_, b, r)| num_integer::gcd(b, r) == 1)
            .collect()
    })
}

fn basket_of(raw: &[(u32, u64, u64)]) -> Basket {
    normalize_basket(raw.iter().copied()).unwrap()
}

fn bin_output(args: &[&str]) -> Result<(i32, Vec<u8>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_threefold"))
        .args(args)
        .output()
        .map_err(|e| format!("spawn: {e}"))?;
    Ok((out.status.code().unwrap_or(-1), out.stdout))
}

const CLI_RUNS: &[&[&str]] = &[
    &["hilbert", "--weights", "1,1,2,3,8", "--degree", "16"],
    &["hilbert", "--weights", "1,1,1,1,2,5", "--degree", "2,10", "--json"],
    &["rr", "--k3", "1/3", "--chi", "-1", "--pg", "2", "--basket", "2x1/2,1x1/3"],
    &["rr", "--k3", "2", "--chi", "-3", "--pg", "4", "--json"],
    &["solve", "--preset", "pg2"],
    &["solve", "--preset", "pg4", "--json"],
    &["solve", "--k3", "1", "--pg", "3", "--shape", "1/2:0-10", "--chi-range", "-10:10", "--constraints", "P2<=7;P3>=P2+6"],
    &["moduli", "--weights", "1,1,1,2,6", "--degree", "12"],
    &["moduli", "--weights", "1,1,1,1,5", "--degree", "10", "--json"],
    &["noether", "--pg", "5"],
    &["noether", "--table", "5:10", "--json"],
    &["noether", "--table", "5:10", "--tsv", "--diagnostics"],
    &["check", "--family", "x16"],
    &["check", "--family", "x2_10", "--json"],
    &["catalog", "verify"],
    &["catalog", "verify", "--json"],
    &["catalog", "show"],
    &["catalog", "show", "--json"],
];

fn ac10() -> Outcome {
    let mut cases = 0;
    runner(256)
        .run(&(arb_basket(), arb_basket(), 1u32..=40), |(a, b, m)| {
            let (a, b) = (basket_of(&a), basket_of(&b));
            let la: Rational = l_term(&a, m);
            let lb: Rational = l_term(&b, m);
            let lab: Rational = l_term(&a.union(&b), m);
            prop_assert!(la >= Rational::from_int(0), "l({m}) = {la} for {a}");
            prop_assert_eq!(lab, la + lb);
            Ok(())
        })
        .map_err(|e| format!("l_term: {e}"))?;
    cases += 256;

    let shuffled = arb_basket().prop_flat_map(|v| (Just(v.clone()), Just(v).prop_shuffle()));
    runner(256)
        .run(&shuffled, |(raw, perm)| {
            let once = basket_of(&raw);
            prop_assert_eq!(&basket_of(&perm), &once);
            let again: Vec<_> = once.iter().map(|(e, m)| (m, e.b(), e.r())).collect();
            prop_assert_eq!(&basket_of(&again), &once);
            Ok(())
        })
        .map_err(|e| format!("normalize_basket: {e}"))?;
    cases += 256;

    for n in 0..=12u64 {
        let ones = ws(&vec![1; n as usize + 1]);
        let got = aut_dimension(&ones);
        ensure!(got == BigUint::from((n + 1) * (n + 1) - 1), "aut of {n}+1 ones = {got}");
    }

    for args in CLI_RUNS {
        let (code1, first) = bin_output(args)?;
        let (code2, second) = bin_output(args)?;
        ensure!(code1 == 0, "{args:?} exited {code1}");
        ensure!(code1 == code2 && first == second, "{args:?} differs between runs");
        ensure!(!first.is_empty(), "{args:?} printed nothing");
        if args.contains(&"--json") {
            let text = String::from_utf8(first).map_err(|e| e.to_string())?;
            let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| format!("{args:?}: {e}"))?;
            let again = serde_json::to_string_pretty(&value).unwrap() + "\n";
            ensure!(again == text, "{args:?} JSON does not re-render identically");
        }
    }
    Ok(format!(
        "{cases} property cases, aut of ones n <= 12, {} CLI invocations byte-identical",
        CLI_RUNS.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("monomial counts", ac1),
        ("Hilbert prefixes", ac2),
        ("Riemann–Roch agreement", ac3),
        ("basket solver presets", ac4),
        ("moduli dimensions", ac5),
        ("Noether bounds", ac6),
        ("codimension-2 identity", ac7),
        ("degree/volume identity", ac8),
        ("mutation sensitivity", ac9),
        ("property suite", ac10),
    ];
    let total = Instant::now();
    let mut failed = 0;
    for (i, (title, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed();
        match outcome {
            Ok(detail) => println!("[PASS] AC{:<2} {title}: {detail} ({secs:.2?})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] AC{:<2} {title}: {detail} ({secs:.2?})", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.2?}",
        criteria.len() - failed,
        criteria.len(),
        total.elapsed()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
