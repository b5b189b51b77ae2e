//! One PASS/FAIL line per acceptance criterion.
//!
//! Run with `cargo test -p disto --test acceptance`. The process exits
//! nonzero if any criterion fails.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use disto::annulus::{build_orbit, lambda_growth_check, make_admissible};
use disto::distortion::{a_bound_from_lambda, avila_bound, avila_enumerate, build_sigma, criterion_nlogn, criterion_sublinear, criterion_wn, GrowthModel, Profile, Verdict};
use disto::exact::{int, ratio, Q};
use disto::suites;
use disto::torus_grid::{grid_distance, GridFootprint};
use disto::{Ball, Letter, Presentation, Rewriter, Word};
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_240_601;
const DEHN_TIME_LIMIT: Duration = Duration::from_secs(300);
const SCHEDULE_TIME_LIMIT: Duration = Duration::from_secs(120);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

/// `w` is trivial iff its two halves reach the same face of the ball.
fn trivial_by_ball(ball: &Ball, w: &Word) -> bool {
    let mid = w.len().div_ceil(2);
    let (u, v) = (w.slice(0, mid), w.slice(mid, w.len()));
    let face = |x: &Word| ball.trace(ball.root(), x).expect("half-words lie in the ball");
    face(&u) == face(&v.inverse())
}

fn reduced_words(p: &Presentation, max_len: usize, visit: &mut impl FnMut(&Word)) {
    fn go(p: &Presentation, w: &mut Vec<Letter>, max_len: usize, visit: &mut impl FnMut(&Word)) {
        visit(&Word::from_letters(w.clone()));
        if w.len() == max_len {
            return;
        }
        for x in p.letters() {
            if w.last() == Some(&x.inverse()) {
                continue;
            }
            w.push(x);
            go(p, w, max_len, visit);
            w.pop();
        }
    }
    go(p, &mut Vec::new(), max_len, visit);
}

fn random_reduced<R: Rng>(p: &Presentation, rng: &mut R, len: usize) -> Word {
    let mut w = Word::empty();
    while w.len() < len {
        w = w.push_reduced(Letter::from_code(rng.gen_range(0..p.num_letters())));
    }
    w
}

fn dehn_vs_bfs() -> Outcome {
    let start = Instant::now();
    let p = Presentation::closed_surface(2).unwrap();
    let rw = Rewriter::new(&p).unwrap();
    let ball4 = Ball::enumerate(&p, 4).unwrap();
    let (mut words, mut trivial, mut disagreements) = (0u64, 0u64, Vec::new());
    reduced_words(&p, 8, &mut |w| {
        words += 1;
        let by_ball = trivial_by_ball(&ball4, w);
        trivial += by_ball as u64;
        if rw.is_trivial(w) != by_ball && disagreements.len() < 3 {
            disagreements.push(p.format_word(w));
        }
    });
    let ball7 = Ball::enumerate(&p, 7).unwrap();
    let relator = p.relator().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut random, mut random_trivial) = (0u64, 0u64);
    for k in 0..20_000 {
        // Half uniform words, half conjugated relator rotations cut to length 14.
        let w = if k % 2 == 0 {
            let len = rng.gen_range(0..=14);
            random_reduced(&p, &mut rng, len)
        } else {
            let rot = rng.gen_range(0..8);
            let r = relator.slice(rot, 8).concat(&relator.slice(0, rot));
            let r = if rng.gen_bool(0.5) { r } else { r.inverse() };
            let len = rng.gen_range(0..=3);
            let u = random_reduced(&p, &mut rng, len);
            let w = u.concat(&r).concat(&u.inverse()).free_reduce();
            if w.len() > 14 {
                w.slice(0, 14)
            } else {
                w
            }
        };
        random += 1;
        let by_ball = trivial_by_ball(&ball7, &w);
        random_trivial += by_ball as u64;
        if rw.is_trivial(&w) != by_ball && disagreements.len() < 3 {
            disagreements.push(p.format_word(&w));
        }
    }
    let elapsed = start.elapsed();
    outcome(
        disagreements.is_empty() && elapsed <= DEHN_TIME_LIMIT,
        format!("{words} reduced words of length <= 8 ({trivial} trivial), {random} random words of length <= 14 ({random_trivial} trivial), disagreements {disagreements:?}, {:.1}s (limit 300s)", elapsed.as_secs_f64()),
    )
}

fn report_line(r: &suites::CheckReport) -> String {
    format!("{} {} ({} cases{})", r.id, if r.passed { "ok" } else { "FAILED" }, r.cases, r.counterexample.as_ref().map(|c| format!(": {c}")).unwrap_or_default())
}

fn geodesic_suite(ball: &Ball) -> Outcome {
    let r = suites::exceptional_geodesics(ball).unwrap();
    let faces = &r.details["exceptional_faces"];
    outcome(r.passed && r.cases > 0, format!("{faces} exceptional faces within radius 6: {}", report_line(&r)))
}

fn ring_suites(ball: &Ball) -> Outcome {
    let reports = [suites::ring_neighbor_types(ball).unwrap(), suites::vertex_rings(ball).unwrap(), suites::base_vertex_count(ball).unwrap()];
    let lines: Vec<String> = reports.iter().map(report_line).collect();
    outcome(reports.iter().all(|r| r.passed), lines.join("; "))
}

fn lambda_facts() -> Outcome {
    let mut lines = Vec::new();
    let mut passed = true;
    for g in [2, 3] {
        for r in suites::lambda_facts(&Presentation::closed_surface(g).unwrap()) {
            passed &= r.passed && r.cases > 0;
            lines.push(format!("g={g} {}", report_line(&r)));
        }
    }
    outcome(passed, lines.join("; "))
}

fn figure() -> Outcome {
    let r = suites::figure_schedule().unwrap();
    outcome(r.passed, format!("{}; delays {}, L_0 {}", report_line(&r), r.details["delays"], r.details["L_0"]))
}

fn schedule_robustness() -> Outcome {
    let start = Instant::now();
    let r = suites::random_schedules(100, 50, SEED).unwrap();
    let elapsed = start.elapsed();
    outcome(r.passed && elapsed <= SCHEDULE_TIME_LIMIT, format!("{}, {:.1}s (limit 120s)", report_line(&r), elapsed.as_secs_f64()))
}

fn lambda_chain() -> Outcome {
    let raw: Vec<Q> = (1..=60i64).map(|n| int((4.0 * (n as f64).sqrt()).ceil() as i64)).collect();
    let v = make_admissible(&raw).unwrap();
    let model = build_orbit(&v, v.len()).unwrap();
    let report = lambda_growth_check(&v, &model, 50).unwrap();
    let bound_failures: Vec<u64> = report.rows.iter().filter(|r| !r.holds).map(|r| r.l).collect();
    let cert_mismatch: Vec<u64> = report.rows.iter().filter(|r| a_bound_from_lambda(r.lambda).unwrap() != r.a_bound).map(|r| r.l).collect();
    let last = report.rows.last().unwrap();
    outcome(
        report.rows.len() == 50 && bound_failures.is_empty() && cert_mismatch.is_empty(),
        format!("l = 1..={}: ceiling exceeded at {bound_failures:?}, certificate mismatches at {cert_mismatch:?}; lambda_50 = {}", report.rows.len(), last.lambda),
    )
}

fn avila() -> Outcome {
    let top = 1u64 << 20;
    let mut seen = HashSet::new();
    let mut bad = Vec::new();
    for n in 1..=top {
        let w = avila_enumerate(n).unwrap();
        let log = u64::from(n.ilog2());
        if w.len() as u64 != log || avila_bound(n).unwrap() != 14 * log + 14 || !seen.insert(w) {
            bad.push(n);
        }
    }
    // Every word of length < 20 appears, plus the single length-20 word.
    let onto = seen.len() as u64 == top && (0..20).all(|k| seen.contains(&"b".repeat(k)) && seen.contains(&"a".repeat(k)));
    let sigma = build_sigma(&Profile::constant(1, 1), 10_000_000, None).unwrap();
    let witnesses_ok = !sigma.witnesses.is_empty() && sigma.witnesses.iter().all(|w| w.holds());
    outcome(
        bad.is_empty() && onto && witnesses_ok && sigma.verify(),
        format!("n = 1..=2^20: {} failures, onto {onto}; sigma on the constant profile has {} terms, witnesses re-verified {witnesses_ok}", bad.len(), sigma.sigma.len()),
    )
}

fn random_footprint<R: Rng>(rng: &mut R) -> GridFootprint {
    let points: Vec<(Rational64, Rational64)> =
        (0..rng.gen_range(1..=6)).map(|_| (Rational64::new(rng.gen_range(-16..=16), 4), Rational64::new(rng.gen_range(-16..=16), 4))).collect();
    GridFootprint::from_polyline(&points).unwrap()
}

/// Fewest squares met on a path inside a `side × side` block, minus one.
fn squares_met(side: i64, from: (i64, i64), to: (i64, i64)) -> u64 {
    let mut dist = std::collections::HashMap::from([(from, 0u64)]);
    let mut heap = std::collections::BinaryHeap::from([std::cmp::Reverse((0u64, from))]);
    while let Some(std::cmp::Reverse((d, (i, j)))) = heap.pop() {
        if (i, j) == to {
            return d;
        }
        for (di, dj) in [(-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1)] {
            let n = (i + di, j + dj);
            if !(0..side).contains(&n.0) || !(0..side).contains(&n.1) {
                continue;
            }
            let cost = if di != 0 && dj != 0 { 3 } else { 1 };
            if dist.get(&n).is_none_or(|&old| d + cost < old) {
                dist.insert(n, d + cost);
                heap.push(std::cmp::Reverse((d + cost, n)));
            }
        }
    }
    unreachable!("the block is connected")
}

fn torus_grid() -> Outcome {
    let d0 = GridFootprint::base_square();
    let d0_ok = (d0.length(), d0.height()) == (3, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut violations, mut worst, mut example) = (0, 0i64, None);
    for _ in 0..1000 {
        let f = random_footprint(&mut rng);
        assert!(f.is_connected());
        let excess = f.length() as i64 - 2 * f.diam() as i64;
        if excess > 0 {
            violations += 1;
            example.get_or_insert_with(|| format!("faces {:?}, length {}, diam {}", f.faces, f.length(), f.diam()));
        }
        worst = worst.max(excess);
    }
    let mut oracle_mismatches = 0;
    for a in 0..25 {
        for b in 0..25 {
            let (u, v) = ((a / 5, a % 5), (b / 5, b % 5));
            oracle_mismatches += (grid_distance(u, v) != squares_met(5, u, v)) as u32;
        }
    }
    outcome(
        d0_ok && violations == 0 && oracle_mismatches == 0,
        format!("D0 (length, height) = ({}, {}); length <= 2 diam fails on {violations}/1000 footprints (max length - 2 diam = {worst}{}); 5x5 oracle mismatches {oracle_mismatches}/625", d0.length(), d0.height(), example.map(|e| format!(", e.g. {e}")).unwrap_or_default()),
    )
}

fn verdict(b: bool) -> Verdict {
    if b {
        Verdict::True
    } else {
        Verdict::False
    }
}

fn symbolic_criteria() -> Outcome {
    let half = ratio(1, 2);
    let mut cases: Vec<(String, GrowthModel)> = Vec::new();
    for a in [half.clone(), int(1)] {
        for b in [-2, -1, 0] {
            cases.push((format!("n^{a} log^{b}"), GrowthModel::monomial(a.clone(), int(b))));
        }
    }
    cases.push(("bounded".into(), GrowthModel::parse("5").unwrap()));
    // Expected verdicts for d/n, d log d / n, and d log d / w with w = n log n and w = sqrt n.
    let expected: [(bool, bool, bool, bool); 7] = [
        (true, true, true, true),
        (true, true, true, false),
        (true, true, true, false),
        (true, true, true, false),
        (true, false, true, false),
        (false, false, false, false),
        (true, true, true, true),
    ];
    let w_nlogn = GrowthModel::parse("n*log(n)").unwrap();
    let w_sqrt = GrowthModel::parse("sqrt(n)").unwrap();
    let mut mismatches = Vec::new();
    for ((name, d), (s, nl, wa, wb)) in cases.iter().zip(expected) {
        let got = [criterion_sublinear(d).verdict, criterion_nlogn(d).verdict, criterion_wn(d, &w_nlogn).verdict, criterion_wn(d, &w_sqrt).verdict];
        if got != [verdict(s), verdict(nl), verdict(wa), verdict(wb)] {
            mismatches.push(format!("{name}: {got:?}"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut implication_failures = 0;
    for _ in 0..1000 {
        let a = ratio(rng.gen_range(0..=40), rng.gen_range(1..=12));
        let b = ratio(rng.gen_range(-30..=30), rng.gen_range(1..=6));
        let d = GrowthModel::monomial(a, b);
        if criterion_nlogn(&d).verdict == Verdict::True && criterion_sublinear(&d).verdict != Verdict::True {
            implication_failures += 1;
        }
    }
    outcome(
        mismatches.is_empty() && implication_failures == 0,
        format!("{} canonical cases, mismatches {mismatches:?}; nlogn without sublinear on {implication_failures}/1000 random (a, b)", cases.len()),
    )
}

fn main() {
    let p = Presentation::closed_surface(2).unwrap();
    let ball6 = Ball::enumerate(&p, 6).unwrap();
    type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);
    let criteria: Vec<Criterion> = vec![
        ("Dehn reduction agrees with ball identity", Box::new(dehn_vs_bfs)),
        ("geodesics to exceptional faces", Box::new(|| geodesic_suite(&ball6))),
        ("rings around exceptional faces and vertex rings", Box::new(|| ring_suites(&ball6))),
        ("letter-pair facts for g = 2, 3", Box::new(lambda_facts)),
        ("worked crossing example", Box::new(figure)),
        ("schedule robustness", Box::new(schedule_robustness)),
        ("lambda growth chain", Box::new(lambda_chain)),
        ("semigroup enumeration and sigma", Box::new(avila)),
        ("torus grid", Box::new(torus_grid)),
        ("symbolic criteria", Box::new(symbolic_criteria)),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        failed += !o.passed as u32;
        println!("{} {:>2} {name}: {} [{:.1}s]", if o.passed { "PASS" } else { "FAIL" }, k + 1, o.detail, start.elapsed().as_secs_f64());
    }
    println!("{} of {} criteria passed", criteria.len() as u32 - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
