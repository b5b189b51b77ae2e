//! Exhaustive and randomized checks of the combinatorial statements about Λ,
//! geodesics to exceptional faces, vertex rings, and the ball metric.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::annulus::{self, AnnulusSchedule};
use crate::cayley::{Ball, FaceId};
use crate::error::Result;
use crate::exact::{self, Q};
use crate::presentation::{self, Presentation, Word};

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub id: &'static str,
    pub statement: &'static str,
    pub passed: bool,
    pub cases: u64,
    pub counterexample: Option<String>,
    pub details: BTreeMap<&'static str, Value>,
}

impl CheckReport {
    fn new(id: &'static str, statement: &'static str) -> CheckReport {
        CheckReport { id, statement, passed: true, cases: 0, counterexample: None, details: BTreeMap::new() }
    }

    fn fail(&mut self, what: String) {
        if self.passed {
            self.passed = false;
            self.counterexample = Some(what);
        }
    }

    fn detail(mut self, key: &'static str, value: Value) -> CheckReport {
        self.details.insert(key, value);
        self
    }
}

fn from_fact(id: &'static str, statement: &'static str, r: std::result::Result<usize, presentation::FactViolation>) -> CheckReport {
    let mut c = CheckReport::new(id, statement);
    match r {
        Ok(n) => c.cases = n as u64,
        Err(v) => c.fail(v.detail),
    }
    c
}

/// The three facts about pairs of letters in Λ words.
pub fn lambda_facts(p: &Presentation) -> Vec<CheckReport> {
    vec![
        from_fact(
            "lambda-pair-extension",
            "at most one Λ word starts with a given letter pair; other Λ words containing the pair are its rotations",
            presentation::check_unique_pair_extension(p),
        ),
        from_fact(
            "lambda-letter-pairs",
            "exactly two Λ words end (start) with each letter and their penultimate (second) letters b, c make b⁻¹c a non-Λ subword",
            presentation::check_two_words_per_letter(p),
        ),
        from_fact(
            "lambda-junctions",
            "for each Λ-subword pair ab, the letters l1, l2 of the flanking Λ words give a non-Λ subword l2⁻¹l1⁻¹",
            presentation::check_junction_pairs(p),
        ),
    ]
}

fn genus(ball: &Ball) -> usize {
    ball.presentation().genus().expect("suites run on closed surfaces")
}

fn fmt(ball: &Ball, w: &Word) -> String {
    ball.presentation().format_word(w)
}

fn suffix(w: &Word, n: usize) -> Word {
    w.slice(w.len() - n, w.len())
}

/// Exceptional faces of the ball, in id order.
pub fn exceptional_faces(ball: &Ball) -> Vec<FaceId> {
    ball.faces().skip(1).filter(|&f| ball.down_degree(f) >= 2).collect()
}

pub const GEODESIC_CAP: usize = 100_000;

/// Shape of geodesic words to exceptional faces: every geodesic ends with
/// half a Λ word, or with a `2g + (2g-1)` split of Λ subwords meeting at a
/// non-Λ pair; some geodesic ends with half a Λ word; and all such endings are
/// the two halves `l1…l2g`, `l4g⁻¹…l2g+1⁻¹` of a single Λ word.
pub fn exceptional_geodesics(ball: &Ball) -> Result<CheckReport> {
    let p = ball.presentation();
    let g = genus(ball);
    let mut c = CheckReport::new(
        "exceptional-geodesic-shape",
        "geodesics to exceptional faces end with half a Λ word or a non-extendable 2g+(2g-1) split; the half-Λ endings come from one Λ word",
    );
    let (mut geodesics, mut half, mut split, mut faces) = (0u64, 0u64, 0u64, 0u64);
    for d in exceptional_faces(ball) {
        faces += 1;
        let words = ball.geodesics_to(d, GEODESIC_CAP)?;
        let mut endings: BTreeSet<Word> = BTreeSet::new();
        for w in &words {
            geodesics += 1;
            let prop1 = w.len() >= 2 * g && p.in_lambda_subword(&suffix(w, 2 * g));
            let prop2 = w.len() >= 4 * g - 1 && {
                let tail = suffix(w, 4 * g - 1);
                let (u, v) = (tail.slice(0, 2 * g), tail.slice(2 * g, 4 * g - 1));
                let junction = Word::from_letters(vec![u.last().unwrap(), v.first().unwrap()]);
                p.in_lambda_subword(&u) && p.in_lambda_subword(&v) && !p.in_lambda_subword(&junction)
            };
            if prop1 {
                half += 1;
                endings.insert(suffix(w, 2 * g));
            }
            if prop2 {
                split += 1;
            }
            if !prop1 && !prop2 {
                c.fail(format!("geodesic {} to face {} has neither shape", fmt(ball, w), fmt(ball, &ball.canonical(d))));
            }
        }
        if endings.is_empty() {
            c.fail(format!("no geodesic to {} ends with half a Λ word", fmt(ball, &ball.canonical(d))));
            continue;
        }
        let paired = endings.iter().any(|e| {
            p.lambda_with_prefix(e).any(|l| {
                let second = l.slice(2 * g, 4 * g).inverse();
                endings.iter().all(|x| *x == l.slice(0, 2 * g) || *x == second)
            })
        });
        if !paired {
            let list: Vec<String> = endings.iter().map(|e| fmt(ball, e)).collect();
            c.fail(format!("half-Λ endings {:?} of {} do not come from a single Λ word", list, fmt(ball, &ball.canonical(d))));
        }
    }
    c.cases = geodesics;
    Ok(c.detail("exceptional_faces", json!(faces)).detail("half_lambda_geodesics", json!(half)).detail("split_geodesics", json!(split)))
}

/// Around an exceptional face `D` reached by `γ'l1…l2g`, let `D_i¹ = γ'l1…l2g-i`
/// and `D_i² = γ'l4g⁻¹…l2g+i+1⁻¹`. For `1 ≤ i ≤ 2g-2`, every neighbor of
/// `D_i^j` other than `D_{i±1}^j` is of type `(i-1, d(D))`.
pub fn ring_neighbor_types(ball: &Ball) -> Result<CheckReport> {
    let p = ball.presentation();
    let g = genus(ball);
    let mut c = CheckReport::new("ring-neighbor-types", "off-path neighbors of the faces D_i^j around an exceptional face D are of type (i-1, d(D))");
    let mut tables: BTreeMap<usize, Vec<bool>> = BTreeMap::new();
    let mut configurations = 0u64;
    for d in exceptional_faces(ball) {
        let m = ball.distance_from_root(d);
        if let std::collections::btree_map::Entry::Vacant(e) = tables.entry(m) {
            e.insert(ball.type_table(m)?);
        }
        let table = &tables[&m];
        for w in ball.geodesics_to(d, GEODESIC_CAP)? {
            let end = suffix(&w, 2 * g);
            let Some(l) = p.lambda_with_prefix(&end).next() else { continue };
            configurations += 1;
            let start = ball.trace(ball.root(), &w.slice(0, w.len() - 2 * g)).expect("geodesic prefixes lie in the ball");
            let side = |j: usize, i: usize| -> FaceId {
                let path = if j == 1 { l.slice(0, 2 * g - i) } else { l.slice(2 * g + i, 4 * g).inverse() };
                ball.trace(start, &path).expect("faces around an exceptional face lie in the ball")
            };
            if side(1, 0) != d || side(2, 0) != d || side(1, 2 * g) != side(2, 2 * g) {
                c.fail(format!("paths around {} do not close up", fmt(ball, &ball.canonical(d))));
            }
            for j in [1, 2] {
                for i in 1..=2 * g - 2 {
                    let (here, prev, next) = (side(j, i), side(j, i - 1), side(j, i + 1));
                    for x in p.letters() {
                        let n = ball.neighbor(here, x).expect("neighbors below distance d(D) are enumerated");
                        if n == prev || n == next {
                            continue;
                        }
                        c.cases += 1;
                        let ok = ball.distance_from_root(n) + i - 1 == m && table[n as usize];
                        if !ok {
                            c.fail(format!(
                                "neighbor {} of D_{i}^{j} for {} (geodesic {}) is not of type ({}, {m})",
                                fmt(ball, &ball.canonical(n)),
                                fmt(ball, &ball.canonical(d)),
                                fmt(ball, &w),
                                i - 1
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(c.detail("configurations", json!(configurations)))
}

/// Every ring around a face has 4g distinct faces and closes up. Checked for
/// every face whose rings fit in the ball.
pub fn vertex_rings(ball: &Ball) -> Result<CheckReport> {
    let g = genus(ball);
    let mut c = CheckReport::new("vertex-rings", "each Λ word traces a closed ring of 4g distinct faces, consecutive faces adjacent, with cyclic distances along the ring");
    let reach = ball.radius().saturating_sub(2 * g);
    for f in ball.faces().take_while(|&f| ball.distance_from_root(f) <= reach) {
        for ring in ball.vertex_rings(f)? {
            c.cases += 1;
            if ring.distinct_faces() != 4 * g || !ring.closes() {
                c.fail(format!("ring {} at {} has {} distinct faces (closes: {})", ring.relator, fmt(ball, &ball.canonical(f)), ring.distinct_faces(), ring.closes()));
            }
            let mut prev = f;
            for &x in &ring.faces {
                if !ball.presentation().letters().any(|l| ball.neighbor(prev, l) == Some(x)) {
                    c.fail(format!("ring {} at {} has non-adjacent consecutive faces", ring.relator, fmt(ball, &ball.canonical(f))));
                }
                prev = x;
            }
        }
    }
    // Distances along the rings of the base face follow the cycle.
    for ring in ball.vertex_rings(ball.root())? {
        let n = ring.faces.len();
        for i in 0..n {
            for j in 0..n {
                let k = i.abs_diff(j);
                if ball.distance(ring.faces[i], ring.faces[j])? != k.min(n - k) {
                    c.fail(format!("ring {} of the base face: faces {i} and {j} are not at cyclic distance", ring.relator));
                }
            }
        }
    }
    Ok(c.detail("faces_checked", json!(ball.faces().take_while(|&f| ball.distance_from_root(f) <= reach).count())))
}

/// The number of distinct vertex rings of the base face equals 2g.
pub fn base_vertex_count(ball: &Ball) -> Result<CheckReport> {
    let g = genus(ball);
    let mut c = CheckReport::new("base-vertex-count", "the rings of the base face collapse to exactly 2g distinct vertex rings");
    let rings = ball.vertex_rings(ball.root())?;
    let distinct = ball.distinct_vertex_rings(ball.root())?;
    c.cases = rings.len() as u64;
    if distinct != 2 * g {
        c.fail(format!("{} Λ words give {distinct} distinct vertex rings at the base face, expected {}", rings.len(), 2 * g));
    }
    Ok(c.detail("rings", json!(rings.len())).detail("distinct_rings", json!(distinct)).detail("expected", json!(2 * g)))
}

/// Viewed from another face `D1`, the base face is exceptional iff geodesics
/// to `D1` start with two different letters; then some geodesic starts with
/// half a Λ word `λ` whose ring at the base face contains every `a(D0)` with
/// `a` a first letter.
pub fn rebased_exceptional(ball: &Ball) -> Result<CheckReport> {
    let p = ball.presentation();
    let g = genus(ball);
    let root = ball.root();
    let mut c = CheckReport::new(
        "rebased-exceptional",
        "D0 is exceptional seen from D1 iff geodesics to D1 have two first letters, and then their first faces lie on one vertex ring of D0",
    );
    let mut rebased = 0u64;
    for d1 in ball.faces().skip(1) {
        c.cases += 1;
        let d = ball.distance_from_root(d1);
        let word = ball.canonical(d1);
        let mirrored = ball.trace(root, &word.inverse()).expect("inverse of a geodesic has the same length");
        let exceptional = ball.down_degree(mirrored) >= 2;
        let first: BTreeSet<_> = p
            .letters()
            .filter(|&x| {
                let w = Word::from_letters(vec![x.inverse()]).concat(&word);
                ball.try_locate(&w).map(|f| ball.distance_from_root(f) + 1 == d).unwrap_or(false)
            })
            .collect();
        if exceptional != (first.len() >= 2) {
            c.fail(format!("face {}: exceptional from D1 = {exceptional}, first letters = {}", fmt(ball, &word), first.len()));
            continue;
        }
        if !exceptional {
            continue;
        }
        rebased += 1;
        let geodesics = ball.geodesics_to(d1, GEODESIC_CAP)?;
        let from_geodesics: BTreeSet<_> = geodesics.iter().filter_map(|w| w.first()).collect();
        if from_geodesics != first {
            c.fail(format!("face {}: first letters of enumerated geodesics differ from the metric ones", fmt(ball, &word)));
        }
        let ok = geodesics.iter().filter(|w| w.len() >= 2 * g).any(|w| {
            p.lambda_with_prefix(&w.slice(0, 2 * g)).any(|l| {
                let mut ring = BTreeSet::from([root]);
                let mut cur = root;
                for &x in l.letters() {
                    cur = ball.neighbor(cur, x).expect("rings of the base face lie in the ball");
                    ring.insert(cur);
                }
                first.iter().all(|&a| ring.contains(&ball.neighbor(root, a).expect("neighbors of the root exist")))
            })
        });
        if !ok {
            c.fail(format!("face {}: no geodesic starting with half a Λ word has all first faces on its ring", fmt(ball, &word)));
        }
    }
    Ok(c.detail("rebased_exceptional_faces", json!(rebased)))
}

/// `el ≤ diam ≤ 2·el` for random face sets containing the base face.
pub fn eloignement_vs_diameter(ball: &Ball, trials: usize, seed: u64) -> Result<CheckReport> {
    let mut c = CheckReport::new("eloignement-diameter", "el_B(A) <= diam(A) <= 2 el_B(A) when the base B belongs to A");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool: Vec<FaceId> = ball.faces().take_while(|&f| ball.distance_from_root(f) <= ball.radius() / 2).collect();
    for _ in 0..trials {
        let size = rng.gen_range(1..=8);
        let set: Vec<FaceId> = (0..size).map(|_| *pool.choose(&mut rng).expect("pool is non-empty")).collect();
        let base = *set.choose(&mut rng).expect("set is non-empty");
        let el = ball.eloignement(base, &set)?;
        let diam = ball.diam_discrete(&set)?;
        c.cases += 1;
        if el > diam || diam > 2 * el {
            c.fail(format!("set {:?} with base {base}: el = {el}, diam = {diam}", set));
        }
    }
    Ok(c)
}

/// Adjacent faces differ in distance by exactly one, and every adjacency of
/// the table is a true group relation.
pub fn parity(ball: &Ball) -> CheckReport {
    let p = ball.presentation();
    let rw = ball.rewriter();
    let mut c = CheckReport::new("parity", "adjacent faces have distances of opposite parity (differing by exactly one)");
    for f in ball.faces() {
        let word = ball.canonical(f);
        for x in p.letters() {
            let Some(n) = ball.neighbor(f, x) else { continue };
            c.cases += 1;
            if ball.distance_from_root(f).abs_diff(ball.distance_from_root(n)) != 1 {
                c.fail(format!(
                    "{} and its neighbor {} have distances {} and {}",
                    fmt(ball, &word),
                    fmt(ball, &ball.canonical(n)),
                    ball.distance_from_root(f),
                    ball.distance_from_root(n)
                ));
            }
            if f < n && !rw.equal_elements(&word.push_reduced(x), &ball.canonical(n)) {
                c.fail(format!("adjacency {} -{}-> {} is not a group relation", fmt(ball, &word), p.symbol(x), fmt(ball, &ball.canonical(n))));
            }
        }
    }
    c
}

/// The inductive and extension-based definitions of type `(k, l)` agree.
pub fn type_definitions(ball: &Ball) -> Result<CheckReport> {
    let mut c = CheckReport::new("type-definitions-agree", "the inductive and the extension definitions of faces of type (k,l) agree");
    let mut positive = 0u64;
    for l in 0..=ball.radius() {
        let table = ball.type_table(l)?;
        for f in ball.faces().take_while(|&f| ball.distance_from_root(f) <= l) {
            let k = l - ball.distance_from_root(f);
            let recursive = ball.face_type_recursive(f, k, l)?;
            let extension = ball.face_type_extension(f, k, l)?;
            c.cases += 1;
            positive += recursive as u64;
            if recursive != extension || recursive != table[f as usize] {
                c.fail(format!("face {} type ({k},{l}): inductive {recursive}, extension {extension}", fmt(ball, &ball.canonical(f))));
            }
        }
    }
    Ok(c.detail("positive", json!(positive)))
}

/// Symmetry, identity of indiscernibles and the triangle inequality on the
/// faces of the half-radius ball (all triples when there are at most 100
/// faces, otherwise a seeded sample).
pub fn metric_axioms(ball: &Ball, seed: u64) -> Result<CheckReport> {
    let mut c = CheckReport::new("metric-axioms", "the face distance is symmetric, separates faces and satisfies the triangle inequality");
    let faces: Vec<FaceId> = ball.faces().take_while(|&f| ball.distance_from_root(f) <= ball.radius() / 2).collect();
    let n = faces.len();
    let mut dist = vec![0usize; n * n];
    for i in 0..n {
        for j in 0..n {
            dist[i * n + j] = ball.distance(faces[i], faces[j])?;
        }
    }
    for i in 0..n {
        for j in 0..n {
            c.cases += 1;
            if dist[i * n + j] != dist[j * n + i] || (dist[i * n + j] == 0) != (i == j) {
                c.fail(format!("faces {} and {}: d = {}, reverse d = {}", faces[i], faces[j], dist[i * n + j], dist[j * n + i]));
            }
        }
    }
    let triangle = |i: usize, j: usize, k: usize, c: &mut CheckReport| {
        c.cases += 1;
        if dist[i * n + k] > dist[i * n + j] + dist[j * n + k] {
            c.fail(format!("triangle inequality fails for faces {}, {}, {}", faces[i], faces[j], faces[k]));
        }
    };
    let exhaustive = n <= 100;
    if exhaustive {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    triangle(i, j, k, &mut c);
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..200_000 {
            triangle(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n), &mut c);
        }
    }
    Ok(c.detail("faces", json!(n)).detail("exhaustive_triangles", json!(exhaustive)))
}

/// How many exceptional faces have each number of down-neighbors.
pub fn exceptional_degree_report(ball: &Ball) -> CheckReport {
    let mut c = CheckReport::new("exceptional-degrees", "exceptional faces have at least two neighbors closer to the base face (distribution recorded)");
    let hist = ball.down_degree_histogram();
    c.cases = hist.values().sum::<usize>() as u64;
    let hist: BTreeMap<String, usize> = hist.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
    c.detail("down_degree_histogram", json!(hist))
}

/// Every geometric suite on one ball.
pub fn ball_suites(ball: &Ball, seed: u64) -> Result<Vec<CheckReport>> {
    Ok(vec![
        vertex_rings(ball)?,
        base_vertex_count(ball)?,
        exceptional_geodesics(ball)?,
        ring_neighbor_types(ball)?,
        rebased_exceptional(ball)?,
        eloignement_vs_diameter(ball, 300, seed)?,
        parity(ball),
        type_definitions(ball)?,
        metric_axioms(ball, seed)?,
        exceptional_degree_report(ball),
    ])
}

/// A random positive sequence whose admissible hull grows slowly enough for
/// schedules up to `l = 50` to close within its length: either steps decaying
/// geometrically or a power `c·n^p` with `p < 1/2`. Values are multiples of 1/64.
pub fn random_target<R: Rng>(rng: &mut R) -> Vec<Q> {
    let grid = |x: f64| Q::new(((x * 64.0).round().max(1.0) as i64).into(), 64.into());
    if rng.gen_bool(0.6) {
        let len = 160;
        let mut step = rng.gen_range(0.5..3.0);
        let mut v = 0.0;
        (0..len)
            .map(|_| {
                v += step * rng.gen_range(0.7..1.0);
                step *= 1.0 - rng.gen_range(0.03..0.25);
                grid(v)
            })
            .collect()
    } else {
        let c: f64 = rng.gen_range(0.5..1.0);
        let p = rng.gen_range(0.3..0.45);
        let len = (50.0 * c * p).powf(1.0 / (1.0 - p)).ceil() as usize + 150;
        (1..=len).map(|n| grid(c * (n as f64).powf(p))).collect()
    }
}

/// The worked example: reach `0,1 ↦ 3` and `2,3,4 ↦ 4`.
pub fn figure_schedule() -> Result<CheckReport> {
    let mut c = CheckReport::new("figure-schedule", "the reach map 0,1->3 and 2,3,4->4 gives lambda 4, N 4, delays (1,1,1,2,4), L_0 = (4,3,2,1), and a final crossing number of 1");
    let s = annulus::schedule_from_reach(&[3, 3, 4, 4, 4], None)?;
    let trajectory = annulus::crossing_trajectory(&s);
    let row = |j: usize| trajectory[j].iter().map(|v| v.unwrap_or(0)).collect::<Vec<u64>>();
    c.cases = 1;
    if (s.lambda, s.n_max) != (4, 4) {
        c.fail(format!("lambda = {}, N = {}", s.lambda, s.n_max));
    }
    if s.delays != [1, 1, 1, 2, 4] {
        c.fail(format!("delays {:?}", s.delays));
    }
    if row(0) != [4, 3, 2, 1] {
        c.fail(format!("L_0 = {:?}", row(0)));
    }
    let fin = annulus::verify_final(&s);
    if !fin.ok {
        c.fail(format!("final check failed at {:?}", fin.violation));
    }
    Ok(c.detail("delays", json!(s.delays)).detail("L_0", json!(row(0))).detail("L_2", json!(row(2))))
}

fn schedule_problems(s: &AnnulusSchedule) -> Option<String> {
    let violations = s.invariant_violations();
    if !violations.is_empty() {
        return Some(violations.join("; "));
    }
    let fin = annulus::verify_final(s);
    fin.violation.map(|(j, r, why)| format!("arc {j}, round {r}: {why}"))
}

/// Schedule invariants for `count` random admissible targets and every `l ≤ lmax`.
pub fn random_schedules(count: usize, lmax: u64, seed: u64) -> Result<CheckReport> {
    let mut c = CheckReport::new(
        "schedule-invariants",
        "delays are positive, partial sums stay below lambda, the sets A_i partition [0,N] in order, and every arc ends with crossing number 1",
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perturbations = 0;
    for k in 0..count {
        let v = annulus::make_admissible(&random_target(&mut rng))?;
        let model = match annulus::build_orbit(&v, v.len()) {
            Ok(m) => m,
            Err(e) => {
                c.fail(format!("sequence {k}: {e}"));
                continue;
            }
        };
        perturbations += model.perturbations().len();
        for l in 1..=lmax {
            c.cases += 1;
            match annulus::compute_schedule(&model, l) {
                Ok(s) => {
                    if let Some(p) = schedule_problems(&s) {
                        c.fail(format!("sequence {k}, l = {l}: {p}"));
                    }
                }
                Err(e) => c.fail(format!("sequence {k}, l = {l}: {e}")),
            }
        }
    }
    Ok(c.detail("sequences", json!(count)).detail("perturbations", json!(perturbations)))
}

/// `λ_l ≤ v_l + 2^-l + 1` for a square-root-like target.
pub fn lambda_growth(lmax: u64) -> Result<CheckReport> {
    let mut c = CheckReport::new("lambda-growth", "lambda_l <= v_l + 2^-l + 1 for a square-root-like target, with lambda_l / l reported");
    let raw: Vec<Q> = (1..=lmax as i64 + 10).map(|n| Q::new(((4.0 * (n as f64).sqrt()).ceil() as i64).into(), 1.into())).collect();
    let v = annulus::make_admissible(&raw)?;
    let model = annulus::build_orbit(&v, v.len())?;
    let report = annulus::lambda_growth_check(&v, &model, lmax)?;
    c.cases = report.rows.len() as u64;
    for row in report.rows.iter().filter(|r| !r.holds) {
        c.fail(format!("l = {}: lambda = {} exceeds {}", row.l, row.lambda, exact::render(&row.ceiling.0)));
    }
    let last = report.rows.last().map(|r| exact::to_f64(&r.lambda_over_l.0));
    Ok(c.detail("lambda_over_l_at_lmax", json!(last)).detail("non_decaying", json!(report.non_decaying)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schedule_suites() {
        assert!(figure_schedule().unwrap().passed);
        let r = random_schedules(4, 50, 7).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(lambda_growth(50).unwrap().passed);
    }

    #[test]
    fn suites_on_radius_five() {
        let p = Presentation::closed_surface(2).unwrap();
        let ball = Ball::enumerate(&p, 5).unwrap();
        for r in lambda_facts(&p) {
            assert!(r.passed, "{r:?}");
        }
        for r in ball_suites(&ball, 1).unwrap() {
            if r.id == "base-vertex-count" {
                assert_eq!(r.details["distinct_rings"], json!(8));
                continue;
            }
            assert!(r.passed, "{} failed: {:?}", r.id, r.counterexample);
            assert!(r.cases > 0 || r.id == "exceptional-degrees", "{} checked nothing", r.id);
        }
    }
}
