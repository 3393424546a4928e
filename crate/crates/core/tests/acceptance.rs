//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p hallsod --test acceptance`.

mod support;

use std::time::{Duration, Instant};

use hallsod::index_sets::{self, Truncation, Verdict};
use hallsod::partition::PartitionA;
use hallsod::pbw;
use hallsod::polytope::WPolytope;
use hallsod::rational::{frac, half, q};
use hallsod::shuffle::poly::{D, K};
use hallsod::shuffle::{self, parse_poly, KernelMode, Point, Poly, ShuffleElement, ShuffleExpr};
use hallsod::standard_form::{self, decompose};
use hallsod::weights::{self, Weight};
use hallsod::{DimVector, Quiver, Q};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = fn() -> Check;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed <= limit, || format!("took {elapsed:?}, limit {limit:?}"))
}

fn ac1() -> Check {
    let start = Instant::now();
    // zeta(z1/z2) with both sides multiplied through by z2^2
    let num = parse_poly("(z2 - q1*z1)*(z2 - q2*z1)").unwrap();
    let den = parse_poly("(z2 - z1)*(z2 - q1*q2*z1)").unwrap();
    let d_sub = parse_poly("(1 - q1)*(1 - q2)").unwrap();
    let k_sub = parse_poly("q1*q2").unwrap();
    let sub = |p: &Poly| p.substitute(D, &d_sub).substitute(K, &k_sub);
    let formal = shuffle::zeta(KernelMode::Formal, 0, 1);
    let f_num = sub(formal.numerator());
    let f_den = formal
        .denominator()
        .fold(Poly::one(), |acc, (f, k)| acc.mul(&sub(&f.to_poly()).pow(k as u32)));
    let lhs = f_num.mul(&den);
    let rhs = num.mul(&f_den);
    ensure(lhs == rhs, || format!("cross products differ: {lhs} vs {rhs}"))?;
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok("formal kernel matches (1-q1x)(1-q2x)/((1-x)(1-q1q2x))".into())
}

fn ac2() -> Check {
    let start = Instant::now();
    let mode = KernelMode::A2;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for t in 0..20 {
        let [f, g, h] = [(); 3].map(|_| {
            let n = rng.gen_range(1..=2);
            shuffle::random_element(&mut rng, n, mode)
        });
        let e = |x: &ShuffleElement| ShuffleExpr::elem(x.clone());
        let left = e(&f).times(e(&g)).times(e(&h));
        let right = e(&f).times(e(&g).times(e(&h)));
        let ok = shuffle::probably_equal(&left, &right, mode, &mut rng, 5, 200).map_err(|e| format!("triple {t}: {e}"))?;
        ensure(ok, || format!("triple {t} not associative: f={f}, g={g}, h={h}"))?;
    }
    let one = ShuffleElement::one_in(1);
    let z = ShuffleElement::from_poly(1, parse_poly("q1*z1 + 2").unwrap()).unwrap();
    let w = ShuffleElement::from_poly(1, parse_poly("z1^2").unwrap()).unwrap();
    let left = one.mul(&z, mode).mul(&w, mode);
    let right = one.mul(&z.mul(&w, mode), mode);
    ensure(left.equals_exact(&right), || "exact (1,1,1) instance differs".into())?;
    within(start.elapsed(), Duration::from_secs(30))?;
    Ok("20 seeded triples x 5 points, plus exact (1,1,1)".into())
}

fn ac3() -> Check {
    let one = ShuffleElement::one_in(1);
    let p = one.mul(&one, KernelMode::A2);
    let pt = Point::a2(q(2), q(3), vec![q(5), q(1)]);
    let v = p.eval(&pt).map_err(|e| e.to_string())?;
    ensure(v == frac(-12, 29), || format!("1*1 at (5,1) = {v}"))?;
    // oracle: the two-term coset sum by hand
    let zeta = |x: Q| (q(1) - q(2) * &x) * (q(1) - q(3) * &x) / ((q(1) - &x) * (q(1) - q(6) * &x));
    let by_hand = zeta(frac(5, 1)) + zeta(frac(1, 5));
    ensure(v == by_hand, || format!("hand coset sum gives {by_hand}"))?;
    let params = Point::a2(q(2), q(3), vec![]);
    let z5 = shuffle::zeta_value(KernelMode::A2, &q(5), &params).map_err(|e| e.to_string())?;
    let z15 = shuffle::zeta_value(KernelMode::A2, &frac(1, 5), &params).map_err(|e| e.to_string())?;
    ensure(z5 == frac(63, 58), || format!("zeta(5) = {z5}"))?;
    ensure(z15 == frac(-3, 2), || format!("zeta(1/5) = {z15}"))?;
    Ok("-12/29, 63/58, -3/2".into())
}

/// Window membership for `d = 2` written out: `chi + rho` lies in `1/2 W`
/// iff the root coordinate `(a - b + 1)/2` is at most `3/2` in absolute value.
fn m2_oracle(w: i64) -> usize {
    (-20..=20i64)
        .filter(|&b| {
            let a = w - b;
            a >= b && (a - b + 1).abs() <= 3
        })
        .count()
}

fn ac4() -> Check {
    for w in -8..=8 {
        let m1 = pbw::window_count(1, w).map_err(|e| e.to_string())?;
        ensure(m1 == 1, || format!("m(1,{w}) = {m1}"))?;
        let m2 = pbw::window_count(2, w).map_err(|e| e.to_string())?;
        let expect = if w % 2 == 0 { 2 } else { 1 };
        ensure(m2 == expect && m2 == m2_oracle(w), || format!("m(2,{w}) = {m2}"))?;
    }
    for d in 1..=4u32 {
        for w in -8..=8 {
            let a = pbw::window_count(d, w).map_err(|e| e.to_string())?;
            let b = pbw::window_count(d, w + d as i64).map_err(|e| e.to_string())?;
            ensure(a == b, || format!("m({d},{w}) = {a} but m({d},{}) = {b}", w + d as i64))?;
        }
    }
    Ok("m(1,w)=1, m(2,w)=2/1, periodic on d<=4, |w|<=8".into())
}

/// Non-increasing integer vectors of length `n` with entries in `[lo, hi]`.
fn dominant_vectors(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (lo..=hi).rev() {
        for mut rest in dominant_vectors(n - 1, lo, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn ac5() -> Check {
    let start = Instant::now();
    let quiver = Quiver::tripled_jordan();
    let mut checked = 0;
    for n in 1..=4u32 {
        let d = DimVector::single(n);
        let poly = WPolytope::new(&quiver, &d).map_err(|e| e.to_string())?;
        let zero = Weight::zero(n as usize);
        let rho = weights::rho(&d);
        for chi in dominant_vectors(n as usize, -6, 6) {
            let chi = Weight::from_ints(&chi);
            let form = decompose(&quiver, &d, &chi, &zero).map_err(|e| format!("{chi}: {e}"))?;
            ensure(form.reconstruct() == chi.add(&rho), || format!("{chi}: reconstruction"))?;
            let psi_ok = poly.contains(form.residual(), &half()).map_err(|e| e.to_string())?;
            ensure(psi_ok, || format!("{chi}: psi {} outside 1/2 W", form.residual()))?;
            for node in form.nodes() {
                ensure(node.r > half(), || format!("{chi}: r = {} <= 1/2", node.r))?;
                if let Some(p) = node.parent {
                    ensure(form.nodes()[p].r > node.r, || format!("{chi}: r not decreasing"))?;
                }
            }
            let again = decompose(&quiver, &d, &chi, &zero).map_err(|e| e.to_string())?;
            ensure(again == form, || format!("{chi}: not deterministic"))?;
            checked += 1;
        }
    }
    within(start.elapsed(), Duration::from_secs(120))?;
    Ok(format!("{checked} weights, zero violations"))
}

fn ac6() -> Check {
    let start = Instant::now();
    let quiver = Quiver::tripled_jordan();
    let mut images = 0;
    for d in 1..=3u32 {
        for w in -4..=4 {
            let report = pbw::verify_bijection(d, w, 8).map_err(|e| e.to_string())?;
            ensure(report.holds(), || format!("d={d}, w={w}: {:?}", report.violations))?;
            for a in report.images.keys() {
                let v = standard_form::omega_shift(a, &quiver).map_err(|e| e.to_string())?;
                ensure(v.has_decreasing_slopes(), || format!("{a} shifts to {v}"))?;
                images += 1;
            }
        }
    }
    within(start.elapsed(), Duration::from_secs(120))?;
    Ok(format!("d<=3, |w|<=4, bound 8; {images} partitions land in V"))
}

fn ac7() -> Check {
    let start = Instant::now();
    let table = pbw::primitive_dims(4, 8).map_err(|e| e.to_string())?;
    ensure(!table.has_negative(), || "negative p".into())?;
    let mismatches = table.reconstruction_mismatches();
    ensure(mismatches.is_empty(), || format!("reconstruction mismatches at {mismatches:?}"))?;
    within(start.elapsed(), Duration::from_secs(60))?;
    let off: Vec<String> = table
        .cells()
        .filter(|&(_, _, _, p)| p != 1)
        .map(|(d, w, m, p)| format!("p({d},{w})={p} [m={m}]"))
        .collect();
    ensure(off.is_empty(), || {
        format!(
            "{} cells with p != 1 (reconstruction exact, no negatives): {}",
            off.len(),
            off.iter().take(6).cloned().collect::<Vec<_>>().join(", ")
        )
    })?;
    Ok("p = 1 on d<=4, |w|<=8".into())
}

fn ac8() -> Check {
    let quiver = Quiver::tripled_jordan();
    let d = DimVector::single(2);
    let trunc = Truncation::new(q(5), usize::MAX).map_err(|e| e.to_string())?;
    let s = index_sets::enum_s(&quiver, &d, 0, &Weight::zero(2), &trunc).map_err(|e| e.to_string())?;
    let parts: Vec<PartitionA> = s.items.iter().map(|e| e.partition.clone()).collect();
    ensure(parts.len() >= 2, || format!("enum_S too small: {parts:?}"))?;
    for a in &parts {
        for b in &parts {
            let v = index_sets::compare(a, b, &quiver).map_err(|e| e.to_string())?;
            if a == b {
                ensure(v == Verdict::Equal, || format!("{a} vs itself: {v:?}"))?;
            } else {
                ensure(v != Verdict::Equal, || format!("{a} vs {b}: no direction"))?;
            }
        }
    }
    let big = PartitionA::from_pairs(&[(1, 5), (1, -5)]).unwrap();
    let small = PartitionA::from_pairs(&[(1, 1), (1, -1)]).unwrap();
    ensure(parts.contains(&big), || format!("{big} missing from S"))?;
    // leading r of the S member, against the LP through its realizing weight
    let entry = s.items.iter().find(|e| e.partition == big).unwrap();
    let chi = entry.realizing_chi.clone().unwrap();
    let poly = WPolytope::new(&quiver, &d).unwrap();
    let r_lp = poly.r_invariant(&chi.add(&weights::rho(&d))).unwrap();
    ensure(entry.r_sequence[0] == r_lp && r_lp == frac(11, 6), || {
        format!("leading r of {big} is {}, LP gives {r_lp}", entry.r_sequence[0])
    })?;
    // ((1,1),(1,-1)) is not realized in S; compared as slope-decreasing partitions
    ensure(!parts.contains(&small), || format!("{small} unexpectedly in S"))?;
    let v = index_sets::compare_v(&big, &small).map_err(|e| e.to_string())?;
    let rb = standard_form::slope_to_tree(&big).unwrap().r_sequence();
    let rs = standard_form::slope_to_tree(&small).unwrap().r_sequence();
    ensure(v == Verdict::ABeforeB && rb[0] > rs[0], || format!("{big} vs {small}: {v:?}, r {rb:?} vs {rs:?}"))?;
    Ok(format!(
        "{} members; {big} (r={}) before {small} (r={})",
        parts.len(),
        hallsod::rational::fmt_q(&rb[0]),
        hallsod::rational::fmt_q(&rs[0])
    ))
}

fn ac9() -> Check {
    let start = Instant::now();
    let trunc = Truncation::slopes(4);
    let mut checked = 0;
    for n in 1..=4u32 {
        let d = DimVector::single(n);
        for w in -8..=8 {
            for a in index_sets::enum_v(&d, w, &trunc).items {
                let tree = standard_form::slope_to_tree(&a).map_err(|e| format!("{a}: {e}"))?;
                let back = tree.read_slopes().map_err(|e| format!("{a}: {e}"))?;
                ensure(back == a, || format!("{a} reads back as {back}"))?;
                ensure(tree.r_sequence().iter().all(|r| r > &half()), || format!("{a}: r <= 1/2"))?;
                checked += 1;
            }
        }
    }
    within(start.elapsed(), Duration::from_secs(60))?;
    Ok(format!("{checked} partitions round-trip"))
}

fn ac10() -> Check {
    use support::{hallsod, schema_errors};
    let examples: [(&str, &[&str]); 3] = [
        ("windows", &["windows", "--quiver", "tripled-jordan", "--d", "2", "--w", "4"]),
        ("r-invariant", &["r-invariant", "--quiver", "tripled-jordan", "--d", "2", "--weight", "5,-5"]),
        ("pbw-table", &["pbw-table", "--dmax", "1", "--wmax", "3"]),
    ];
    for (name, args) in examples {
        let first = hallsod(args);
        let second = hallsod(args);
        ensure(first.code == 0, || format!("{name}: exit {} ({})", first.code, first.stderr))?;
        ensure(first.stdout == second.stdout, || format!("{name}: output not byte-stable"))?;
    }
    let windows = hallsod(examples[0].1);
    ensure(windows.stdout == "{\"chi\":[2,2]}\n{\"chi\":[3,1]}\n", || format!("windows: {}", windows.stdout))?;
    let errs = schema_errors("windows", &windows.stdout);
    ensure(errs.is_empty(), || format!("windows schema: {errs:?}"))?;

    // r is checked against the subset formula max_S sum_S(chi - mean) / (3|S|(d-|S|))
    let r_inv = hallsod(examples[1].1);
    ensure(r_inv.stdout == "{\"r\":\"5/3\",\"lambda\":[-1,1]}\n", || format!("r-invariant: {}", r_inv.stdout))?;
    let errs = schema_errors("r-invariant", &r_inv.stdout);
    ensure(errs.is_empty(), || format!("r-invariant schema: {errs:?}"))?;

    let table = hallsod(examples[2].1);
    let lines: Vec<&str> = table.stdout.lines().collect();
    let expected: Vec<String> = std::iter::once("d\tw\tm\tp".to_string())
        .chain((-3..=3).map(|w| format!("1\t{w}\t1\t1")))
        .chain(std::iter::once("OK".to_string()))
        .collect();
    ensure(lines == expected, || format!("pbw-table: {:?}", lines))?;
    let as_json = hallsod(&["pbw-table", "--dmax", "1", "--wmax", "3", "--format", "json"]);
    let errs = schema_errors("pbw-table", &as_json.stdout);
    ensure(as_json.code == 0 && errs.is_empty(), || format!("pbw-table json: {errs:?}"))?;

    for bad in [
        &["r-invariant", "--quiver", "no-such-quiver", "--d", "2", "--weight", "1,1"][..],
        &["r-invariant", "--d", "2", "--weight", "1,x"],
        &["r-invariant", "--d", "2", "--weight", "1"],
        &["shuffle", "eval", "[1] 1", "[1] 1", "--z", "1,1", "--q1", "2", "--q2", "3"],
        &["frobnicate"],
    ] {
        let run = hallsod(bad);
        ensure(run.code == 1 && run.stdout.is_empty() && !run.stderr.is_empty(), || {
            format!("{bad:?}: exit {}, stdout {:?}", run.code, run.stdout)
        })?;
    }
    let ok = hallsod(&["verify-bijection", "--d", "2", "--w", "0"]);
    ensure(ok.code == 0, || format!("verify-bijection exit {}", ok.code))?;
    ensure(schema_errors("verify-bijection", &ok.stdout).is_empty(), || "verify-bijection schema".into())?;
    Ok("three examples schema-valid and byte-stable; domain errors exit 1".into())
}

fn main() {
    let criteria: [(&str, Criterion); 10] = [
        ("AC-1", ac1),
        ("AC-2", ac2),
        ("AC-3", ac3),
        ("AC-4", ac4),
        ("AC-5", ac5),
        ("AC-6", ac6),
        ("AC-7", ac7),
        ("AC-8", ac8),
        ("AC-9", ac9),
        ("AC-10", ac10),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        let start = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(msg) => println!("{name} PASS ({secs:.2}s) {msg}"),
            Err(msg) => {
                println!("{name} FAIL ({secs:.2}s) {msg}");
                failed.push(name);
            }
        }
    }
    if !failed.is_empty() {
        println!("failed: {}", failed.join(" "));
        std::process::exit(1);
    }
    println!("all criteria pass");
}
