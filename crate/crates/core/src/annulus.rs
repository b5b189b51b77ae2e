//! Pushing arcs back across an annulus: target sequences, the orbit model of
//! the line map `h`, and the delay schedule that brings the image of the
//! marked arc back to crossing number one.

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::distortion::{a_bound_from_lambda, ABound};
use crate::error::{Error, Result};
use crate::exact::{self, int, inv_pow2, Exact, Q};

/// Lift coefficients tried, in order, when the hull alone is not admissible.
const LIFTS: [i64; 3] = [0, 1, 6];

/// A target growth sequence `v_1, v_2, …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetSequence {
    values: Vec<Q>,
    admissible: bool,
    /// The `c` of the added `c·(1 − 2^-n)`, when produced by `make_admissible`.
    lift: Option<i64>,
}

fn strictly_increasing_concave(values: &[Q]) -> bool {
    values.windows(2).all(|w| w[0] < w[1]) && values.windows(3).all(|w| &w[2] - &w[1] <= &w[1] - &w[0])
}

impl TargetSequence {
    /// `values[n - 1]` is `v_n`.
    pub fn new(values: Vec<Q>) -> Result<TargetSequence> {
        if values.is_empty() {
            return Err(Error::InvalidParameter("the target sequence is empty".into()));
        }
        if values.iter().any(|v| !v.is_positive()) {
            return Err(Error::InvalidParameter("target values must be positive".into()));
        }
        let admissible = strictly_increasing_concave(&values);
        Ok(TargetSequence { values, admissible, lift: None })
    }

    pub fn values(&self) -> &[Q] {
        &self.values
    }

    /// `v_n`, for `1 ≤ n ≤ len`.
    pub fn v(&self, n: usize) -> &Q {
        &self.values[n - 1]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Strictly increasing with nonincreasing differences.
    pub fn is_admissible(&self) -> bool {
        self.admissible
    }

    pub fn lift(&self) -> Option<i64> {
        self.lift
    }
}

/// The orbit values `v_n + ε_n/2^n`, with `t_0 = 0`.
fn orbit_targets(values: &[Q]) -> (Vec<Q>, Vec<bool>) {
    let mut t = vec![Q::zero()];
    let mut eps = vec![false];
    for (i, v) in values.iter().enumerate() {
        let n = i as u32 + 1;
        let e = exact::is_integer(v);
        t.push(if e { v + inv_pow2(n) } else { v.clone() });
        eps.push(e);
    }
    (t, eps)
}

fn displacements_nonincreasing(t: &[Q]) -> bool {
    t.windows(3).all(|w| &w[2] - &w[1] <= &w[1] - &w[0])
}

/// With equal steps `h` would be a translation on a stretch, and an integer
/// step there sends integers to integers beyond repair by perturbation.
fn displacements_decreasing(t: &[Q]) -> bool {
    t.windows(3).all(|w| &w[2] - &w[1] < &w[1] - &w[0])
}

/// Least concave majorant at the integers `0..=len` of the points `(0, 0)`
/// and `(n, values[n-1])`.
fn concave_majorant(values: &[Q]) -> Vec<Q> {
    let points: Vec<(Q, Q)> = std::iter::once((Q::zero(), Q::zero())).chain(values.iter().enumerate().map(|(i, v)| (int(i as i64 + 1), v.clone()))).collect();
    let mut hull: Vec<(Q, Q)> = Vec::new();
    for p in points {
        while hull.len() >= 2 {
            let (a, b) = (&hull[hull.len() - 2], &hull[hull.len() - 1]);
            // Drop b if it lies on or below the chord from a to p.
            let cross = (&b.0 - &a.0) * (&p.1 - &a.1) - (&b.1 - &a.1) * (&p.0 - &a.0);
            if cross.is_negative() {
                break;
            }
            hull.pop();
        }
        hull.push(p);
    }
    let mut out = Vec::with_capacity(values.len());
    let mut seg = 0;
    for n in 1..=values.len() {
        let x = int(n as i64);
        while hull[seg + 1].0 < x {
            seg += 1;
        }
        let ((x0, y0), (x1, y1)) = (&hull[seg], &hull[seg + 1]);
        out.push(y0 + (&x - x0) * (y1 - y0) / (x1 - x0));
    }
    out
}

/// Running maximum, then the concave majorant through the origin, then a lift
/// `c·(1 − 2^-n)` with the least `c ∈ {0, 1, 6}` for which the sequence is
/// admissible and its orbit targets have strictly decreasing steps.
pub fn make_admissible(raw: &[Q]) -> Result<TargetSequence> {
    if raw.is_empty() {
        return Err(Error::InvalidParameter("the target sequence is empty".into()));
    }
    if raw.iter().any(|v| !v.is_positive()) {
        return Err(Error::InvalidParameter("target values must be positive".into()));
    }
    let mut running = Vec::with_capacity(raw.len());
    for v in raw {
        let m = running.last().map_or(v.clone(), |prev: &Q| prev.max(v).clone());
        running.push(m);
    }
    let hull = concave_majorant(&running);
    for c in LIFTS {
        let values: Vec<Q> = hull.iter().enumerate().map(|(i, w)| w + int(c) * (Q::one() - inv_pow2(i as u32 + 1))).collect();
        if strictly_increasing_concave(&values) && displacements_decreasing(&orbit_targets(&values).0) {
            return Ok(TargetSequence { values, admissible: true, lift: Some(c) });
        }
    }
    unreachable!("the lift by 6·(1 − 2^-n) always leaves room for the ε adjustments")
}

/// A recorded change to `h` that keeps an integer orbit off the integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Perturbation {
    pub start: u64,
    pub step: u64,
    pub at: Exact,
    pub shift: Exact,
}

/// The piecewise-linear map `h` through `t_n ↦ t_{n+1}`, the identity left of
/// `−1`, defined up to `t_{K-1}` where `K` is the horizon.
#[derive(Clone, Debug)]
pub struct OrbitModel {
    t: Vec<Q>,
    epsilon: Vec<bool>,
    knots: Vec<(Q, Q)>,
    perturbations: Vec<Perturbation>,
}

impl OrbitModel {
    pub fn horizon(&self) -> usize {
        self.t.len() - 1
    }

    /// `t_n = h^n(0)`.
    pub fn t(&self, n: usize) -> &Q {
        &self.t[n]
    }

    pub fn epsilon(&self, n: usize) -> bool {
        self.epsilon[n]
    }

    pub fn perturbations(&self) -> &[Perturbation] {
        &self.perturbations
    }

    /// Right end of the domain where `h` is known.
    pub fn domain_end(&self) -> &Q {
        &self.knots.last().expect("knots are non-empty").0
    }

    pub fn eval(&self, x: &Q) -> Result<Q> {
        if x <= &self.knots[0].0 {
            return Ok(x.clone());
        }
        if x > self.domain_end() {
            return Err(Error::Horizon(format!("h is only modeled up to {}", exact::render(self.domain_end()))));
        }
        let k = self.knots.partition_point(|(kx, _)| kx < x);
        let (x1, y1) = &self.knots[k];
        if x1 == x {
            return Ok(y1.clone());
        }
        let (x0, y0) = &self.knots[k - 1];
        Ok(y0 + (x - x0) * (y1 - y0) / (x1 - x0))
    }

    pub fn iterate(&self, x: &Q, n: u64) -> Result<Q> {
        let mut y = x.clone();
        for _ in 0..n {
            y = self.eval(&y)?;
        }
        Ok(y)
    }

    /// Violations of the four defining properties on the modeled range.
    pub fn property_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let disp: Vec<(Q, Q)> = self.knots.iter().filter(|(x, _)| !x.is_negative()).map(|(x, y)| (x.clone(), y - x)).collect();
        for w in disp.windows(2) {
            if w[1].1 > w[0].1 {
                out.push(format!("displacement increases between {} and {}", exact::render(&w[0].0), exact::render(&w[1].0)));
            }
        }
        if self.knots[0] != (int(-1), int(-1)) {
            out.push("h is not the identity at -1".into());
        }
        if self.knots.windows(2).any(|w| w[1].0 <= w[0].0 || w[1].1 <= w[0].1) {
            out.push("h is not increasing".into());
        }
        if let Some((i, n)) = self.integer_hit() {
            out.push(format!("h^{n}({i}) is an integer"));
        }
        let mut x = Q::zero();
        for n in 1..=self.horizon() {
            match self.eval(&x) {
                Ok(y) => x = y,
                Err(e) => {
                    out.push(e.to_string());
                    break;
                }
            }
            if x != self.t[n] {
                out.push(format!("h^{n}(0) differs from t_{n}"));
            }
            let v = &self.t[n] - if self.epsilon[n] { inv_pow2(n as u32) } else { Q::zero() };
            if exact::is_integer(&v) != self.epsilon[n] {
                out.push(format!("ε_{n} does not match the integrality of v_{n}"));
            }
        }
        out
    }

    /// The first `(i, n)` with `i ≥ 1` and `h^n(i) ∈ ℤ` on the modeled range.
    fn integer_hit(&self) -> Option<(u64, u64)> {
        self.integer_hit_with_previous().map(|(i, n, _)| (i, n))
    }

    fn integer_hit_with_previous(&self) -> Option<(u64, u64, Q)> {
        let end = self.domain_end().clone();
        let mut i = 1u64;
        while int(i as i64) <= end {
            let mut x = int(i as i64);
            let mut n = 0;
            while x <= end {
                let y = self.eval(&x).expect("inside the modeled range");
                n += 1;
                if exact::is_integer(&y) {
                    return Some((i, n, x));
                }
                x = y;
            }
            i += 1;
        }
        None
    }

    fn insert_knot(&mut self, p: Q, start: u64, step: u64) -> Result<()> {
        let y = self.eval(&p)?;
        let k = self.knots.partition_point(|(kx, _)| kx < &p);
        if self.knots[k].0 == p {
            return Err(Error::Violation(format!("h^{step}({start}) is an integer and its preimage is a breakpoint")));
        }
        let (xl, yl) = &self.knots[k - 1];
        let (xr, yr) = &self.knots[k];
        let (dl, dr, d) = (yl - xl, yr - xr, &y - &p);
        let two = int(2);
        let room = [inv_pow2((self.horizon() as u64 + step) as u32), (dl - &d) / &two, (&d - dr) / &two, (yr - &y) / &two];
        let shift = room.iter().min().expect("non-empty").clone();
        if !shift.is_positive() {
            return Err(Error::Violation(format!("h^{step}({start}) is an integer on a segment where h is a translation")));
        }
        self.perturbations.push(Perturbation { start, step, at: Exact(p.clone()), shift: Exact(shift.clone()) });
        self.knots.insert(k, (p, y + shift));
        Ok(())
    }
}

/// The orbit model for the first `horizon` values of an admissible sequence.
pub fn build_orbit(v: &TargetSequence, horizon: usize) -> Result<OrbitModel> {
    if !v.is_admissible() {
        return Err(Error::InvalidParameter("the target sequence is not admissible".into()));
    }
    if horizon == 0 || horizon > v.len() {
        return Err(Error::InvalidParameter(format!("horizon must lie in 1..={}", v.len())));
    }
    if horizon > 4096 {
        return Err(Error::BudgetExceeded { limit: 4096 });
    }
    let (t, epsilon) = orbit_targets(&v.values[..horizon]);
    if !displacements_nonincreasing(&t) {
        return Err(Error::Violation("the ε adjustments make the orbit steps increase; use make_admissible".into()));
    }
    let mut knots = vec![(int(-1), int(-1))];
    knots.extend(t.windows(2).map(|w| (w[0].clone(), w[1].clone())));
    let mut model = OrbitModel { t, epsilon, knots, perturbations: Vec::new() };
    // Each insertion removes one integer hit; a generous cap guards against cycling.
    for _ in 0..10_000 {
        match model.integer_hit_with_previous() {
            None => break,
            Some((i, n, prev)) => model.insert_knot(prev, i, n)?,
        }
    }
    let violations = model.property_violations();
    if !violations.is_empty() {
        return Err(Error::Violation(violations.join("; ")));
    }
    Ok(model)
}

/// Delays and crossing data for one power `g = f^l`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnnulusSchedule {
    pub l: Option<u64>,
    pub lambda: u64,
    #[serde(rename = "N")]
    pub n_max: u64,
    /// `reach[j] = i(j)`, the last vertical line met by the image of arc `j`.
    pub reach: Vec<u64>,
    /// `partition[i] = A_i`.
    pub partition: Vec<Vec<u64>>,
    pub i0: u64,
    /// `delays[i] = n_i`.
    pub delays: Vec<u64>,
}

impl AnnulusSchedule {
    /// `min A_i`, with `j(N+1) = N+1`.
    fn j_start(&self, i: u64) -> u64 {
        if i > self.n_max {
            return self.n_max + 1;
        }
        self.partition[i as usize].first().copied().unwrap_or(self.n_max + 1)
    }

    fn delay_sum(&self, from: u64, to: u64) -> u64 {
        if from > to {
            return 0;
        }
        self.delays[from as usize..=to as usize].iter().sum()
    }

    /// Crossing number `i(j) − j + 1` of the image of arc `j`.
    pub fn crossing(&self, j: u64) -> u64 {
        self.reach[j as usize] - j + 1
    }

    /// Every violated schedule invariant, described.
    pub fn invariant_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.lambda != self.reach[0] + 1 {
            out.push(format!("λ = {} but i(0) + 1 = {}", self.lambda, self.reach[0] + 1));
        }
        if self.i0 + 1 != self.lambda {
            out.push(format!("i0 = {} is not λ − 1", self.i0));
        }
        let flat: Vec<u64> = self.partition.iter().flatten().copied().collect();
        if flat != (0..=self.n_max).collect::<Vec<_>>() {
            out.push("the sets A_i do not partition [0, N] in order".into());
        }
        for i in 0..=self.n_max {
            let nonempty = !self.partition[i as usize].is_empty();
            if nonempty != (i >= self.i0) {
                out.push(format!("A_{i} is {}", if nonempty { "nonempty below i0" } else { "empty" }));
            }
        }
        for (i, &n) in self.delays.iter().enumerate() {
            if n == 0 {
                out.push(format!("n_{i} = 0"));
            }
        }
        for i in self.i0..=self.n_max {
            let s = if i == 0 { 0 } else { self.delay_sum(self.j_start(i), i - 1) };
            if s >= self.lambda {
                out.push(format!("Σ n_k over [j({i}), {}] = {s} ≥ λ", i as i64 - 1));
            }
        }
        for j in 1..=self.n_max {
            if self.crossing(j) > self.crossing(j - 1) {
                out.push(format!("crossing number increases at j = {j}"));
            }
        }
        out
    }
}

/// Schedule from a reach map `j ↦ i(j)` on `[0, N]`.
pub fn schedule_from_reach(reach: &[u64], l: Option<u64>) -> Result<AnnulusSchedule> {
    let n_max = reach.len().checked_sub(1).ok_or_else(|| Error::InvalidParameter("the reach map is empty".into()))? as u64;
    for (j, &r) in reach.iter().enumerate() {
        let j = j as u64;
        if r < j || (r == j) != (j == n_max) {
            return Err(Error::InvalidParameter(format!("N must be the least j with i(j) = j, and i(j) ≥ j; fails at j = {j}")));
        }
    }
    if reach.windows(2).any(|w| w[1] < w[0] || w[1] > w[0] + 1) {
        return Err(Error::InvalidParameter("i(j) must be nondecreasing with crossing numbers nonincreasing".into()));
    }
    let lambda = reach[0] + 1;
    let i0 = lambda - 1;
    let mut partition = vec![Vec::new(); n_max as usize + 1];
    for (j, &r) in reach.iter().enumerate() {
        partition[r as usize].push(j as u64);
    }
    let mut s = AnnulusSchedule { l, lambda, n_max, reach: reach.to_vec(), partition, i0, delays: Vec::new() };
    for i in 0..=n_max {
        let n = if i < i0 {
            1
        } else {
            let from = s.j_start(i + 1) - 1;
            let used = if from < i { s.delays[from as usize..i as usize].iter().sum() } else { 0 };
            lambda.checked_sub(used).filter(|&n| n > 0).ok_or_else(|| Error::Violation(format!("n_{i} would not be positive")))?
        };
        s.delays.push(n);
    }
    let violations = s.invariant_violations();
    if !violations.is_empty() {
        return Err(Error::Violation(violations.join("; ")));
    }
    Ok(s)
}

/// Schedule for `g = f^l`: `i(j) = ⌊h^l(j)⌋` up to the least `N` with `i(N) = N`.
pub fn compute_schedule(model: &OrbitModel, l: u64) -> Result<AnnulusSchedule> {
    if l == 0 {
        return Err(Error::InvalidParameter("l must be positive".into()));
    }
    let mut reach = Vec::new();
    for j in 0u64.. {
        let y = model.iterate(&int(j as i64), l)?;
        let r = exact::floor(&y).to_u64().ok_or_else(|| Error::Violation("negative reach".into()))?;
        reach.push(r);
        if r == j {
            break;
        }
    }
    schedule_from_reach(&reach, Some(l))
}

/// `trajectory[j][r] = L_j(r)`, the crossing number of arc `j` after `r`
/// rounds; `None` where no window contains `r`.
pub fn crossing_trajectory(s: &AnnulusSchedule) -> Vec<Vec<Option<u64>>> {
    let lambda = s.lambda as i64;
    (0..=s.n_max)
        .map(|j| {
            let i = s.reach[j as usize] as i64;
            let start = s.crossing(j) as i64;
            let partial = |upto: i64| -> i64 {
                if upto < j as i64 {
                    0
                } else {
                    s.delay_sum(j, upto as u64) as i64
                }
            };
            (0..lambda)
                .map(|r| {
                    (j as i64 - 1..=i - 1).find_map(|jp| {
                        let lo = (lambda - partial(jp + 1)).max(0);
                        let hi = lambda - partial(jp);
                        (lo <= r && r < hi).then(|| (start - (i - jp - 1)) as u64)
                    })
                })
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FinalCheck {
    pub ok: bool,
    /// First failure as `(j, r, reason)`.
    pub violation: Option<(u64, u64, String)>,
}

/// Whether every arc ends crossing one line after `λ − 1` rounds, starting at
/// `i(j) − j + 1` and dropping by at most one per round.
pub fn verify_final(s: &AnnulusSchedule) -> FinalCheck {
    let fail = |j: u64, r: u64, why: String| FinalCheck { ok: false, violation: Some((j, r, why)) };
    for (j, row) in crossing_trajectory(s).into_iter().enumerate() {
        let j = j as u64;
        let mut prev = None;
        for (r, value) in row.iter().enumerate() {
            let r = r as u64;
            let Some(v) = *value else { return fail(j, r, "no window contains this round".into()) };
            if r == 0 && v != s.crossing(j) {
                return fail(j, r, format!("starts at {v}, expected {}", s.crossing(j)));
            }
            if let Some(p) = prev {
                if v > p || p - v > 1 {
                    return fail(j, r, format!("moves from {p} to {v}"));
                }
            }
            prev = Some(v);
        }
        if prev != Some(1) {
            return fail(j, s.lambda - 1, format!("ends at {prev:?}, expected 1"));
        }
    }
    FinalCheck { ok: true, violation: None }
}

/// Trajectory as CSV: one row per round `r`, one column per arc `j`.
pub fn trajectory_csv(s: &AnnulusSchedule) -> String {
    let table = crossing_trajectory(s);
    let mut out = String::from("r");
    for j in 0..table.len() {
        out.push_str(&format!(",L{j}"));
    }
    out.push('\n');
    for r in 0..s.lambda as usize {
        out.push_str(&r.to_string());
        for row in &table {
            out.push(',');
            if let Some(v) = row[r] {
                out.push_str(&v.to_string());
            }
        }
        out.push('\n');
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct LambdaRow {
    pub l: u64,
    pub lambda: u64,
    /// `v_l + 2^-l + 1`.
    pub ceiling: Exact,
    pub holds: bool,
    pub lambda_over_l: Exact,
    pub a_bound: ABound,
}

#[derive(Clone, Debug, Serialize)]
pub struct LambdaReport {
    pub rows: Vec<LambdaRow>,
    pub all_hold: bool,
    /// The growth rate of `λ_l` over `[L/2, L]` is at least 0.85 times its rate
    /// over `[L/4, L/2]`, where `L = lmax ≥ 4`: `λ_l/l` shows no sign of decay.
    pub non_decaying: bool,
}

/// `λ_l = ⌊h^l(0)⌋ + 1` against `v_l + 2^-l + 1`, for `l ≤ lmax`.
pub fn lambda_growth_check(v: &TargetSequence, model: &OrbitModel, lmax: u64) -> Result<LambdaReport> {
    if lmax == 0 || lmax as usize > model.horizon() || lmax as usize > v.len() {
        return Err(Error::Horizon(format!("lmax must lie in 1..={}", model.horizon().min(v.len()))));
    }
    let mut rows = Vec::new();
    for l in 1..=lmax {
        let x = model.iterate(&Q::zero(), l)?;
        let lambda = (exact::floor(&x) + 1u32).to_u64().ok_or_else(|| Error::Violation("negative orbit".into()))?;
        let ceiling = v.v(l as usize) + inv_pow2(l as u32) + Q::one();
        rows.push(LambdaRow {
            l,
            lambda,
            holds: int(lambda as i64) <= ceiling,
            ceiling: Exact(ceiling),
            lambda_over_l: Exact(exact::ratio(lambda as i64, l as i64)),
            a_bound: a_bound_from_lambda(lambda)?,
        });
    }
    let lam = |l: u64| rows[l as usize - 1].lambda as f64;
    let (quarter, half) = (lmax.div_ceil(4), lmax.div_ceil(2));
    let non_decaying = lmax >= 4 && {
        let late = (lam(lmax) - lam(half)) / (lmax - half) as f64;
        let early = (lam(half) - lam(quarter)) / (half - quarter) as f64;
        late > 0.0 && late >= 0.85 * early
    };
    Ok(LambdaReport { all_hold: rows.iter().all(|r| r.holds), rows, non_decaying })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    fn figure() -> AnnulusSchedule {
        schedule_from_reach(&[3, 3, 4, 4, 4], None).unwrap()
    }

    #[test]
    fn figure_schedule() {
        let s = figure();
        assert_eq!((s.lambda, s.n_max, s.i0), (4, 4, 3));
        assert_eq!(s.delays, vec![1, 1, 1, 2, 4]);
        assert_eq!(s.partition[3], vec![0, 1]);
        assert_eq!(s.partition[4], vec![2, 3, 4]);
    }

    #[test]
    fn figure_trajectory() {
        let t = crossing_trajectory(&figure());
        let row = |j: usize| t[j].iter().map(|v| v.unwrap()).collect::<Vec<_>>();
        assert_eq!(row(0), vec![4, 3, 2, 1]);
        assert_eq!(row(2), vec![3, 2, 2, 1]);
        assert_eq!(row(4), vec![1, 1, 1, 1]);
        assert!(verify_final(&figure()).ok);
    }

    #[test]
    fn tampered_delay_is_caught() {
        let mut s = figure();
        s.delays[3] = 5;
        let check = verify_final(&s);
        assert!(!check.ok);
        assert_eq!(check.violation.unwrap().0, 2);
        assert!(!s.invariant_violations().is_empty());
    }

    #[test]
    fn trivial_schedule() {
        let s = schedule_from_reach(&[0], None).unwrap();
        assert_eq!((s.lambda, s.delays.clone()), (1, vec![1]));
        assert!(verify_final(&s).ok);
    }

    #[test]
    fn bad_reach_maps() {
        assert!(schedule_from_reach(&[], None).is_err());
        assert!(schedule_from_reach(&[2, 1, 2], None).is_err());
        assert!(schedule_from_reach(&[1, 1, 2], None).is_err());
        assert!(schedule_from_reach(&[1, 3, 3, 3], None).is_err());
        assert!(schedule_from_reach(&[3, 3, 3, 3], None).is_ok());
    }

    #[test]
    fn constant_input_gets_the_unit_lift() {
        let v = make_admissible(&vec![int(1); 6]).unwrap();
        assert_eq!(v.lift(), Some(1));
        for n in 1..=6 {
            assert_eq!(v.v(n), &(int(2) - inv_pow2(n as u32)));
        }
    }

    #[test]
    fn concave_input_unchanged() {
        let raw: Vec<Q> = (1..=8).map(|n| ratio(10 * n - n * (n - 1) / 2, 3)).collect();
        let v = make_admissible(&raw).unwrap();
        assert_eq!(v.lift(), Some(0));
        assert_eq!(v.values(), raw.as_slice());
    }

    #[test]
    fn majorant_dominates() {
        let raw: Vec<Q> = [3, 1, 4, 1, 5, 9, 2, 6].iter().map(|&x| int(x)).collect();
        let v = make_admissible(&raw).unwrap();
        assert!(v.is_admissible());
        assert!(v.values().iter().zip(&raw).all(|(w, r)| w >= r));
    }

    #[test]
    fn orbit_of_integer_targets() {
        let raw: Vec<Q> = (1..=40).map(|n| int((4.0 * (n as f64).sqrt()).ceil() as i64)).collect();
        let v = make_admissible(&raw).unwrap();
        let m = build_orbit(&v, v.len()).unwrap();
        assert!(m.property_violations().is_empty());
        for n in 1..=m.horizon() {
            assert_eq!(m.iterate(&Q::zero(), n as u64).unwrap(), *m.t(n));
        }
    }

    #[test]
    fn half_translation_needs_lift() {
        let raw: Vec<Q> = (1..=60).map(|n| ratio(n, 2)).collect();
        let v = make_admissible(&raw).unwrap();
        assert_eq!(v.lift(), Some(6));
        let m = build_orbit(&v, v.len()).unwrap();
        let report = lambda_growth_check(&v, &m, 50).unwrap();
        assert!(report.all_hold);
        assert!(report.non_decaying);
    }

    #[test]
    fn square_root_ratio_decays() {
        let raw: Vec<Q> = (1..=60).map(|n| int((4.0 * (n as f64).sqrt()).ceil() as i64)).collect();
        let v = make_admissible(&raw).unwrap();
        let m = build_orbit(&v, v.len()).unwrap();
        let report = lambda_growth_check(&v, &m, 50).unwrap();
        assert!(report.all_hold);
        assert!(!report.non_decaying);
        assert_eq!(report.rows[0].lambda, (exact::floor(m.t(1)) + 1u32).to_u64().unwrap());
    }

    #[test]
    fn schedules_from_orbit() {
        let raw: Vec<Q> = (1..=200).map(|n| ratio((100.0 * (n as f64).sqrt()) as i64, 100)).collect();
        let v = make_admissible(&raw).unwrap();
        let m = build_orbit(&v, v.len()).unwrap();
        for l in 1..=10 {
            let s = compute_schedule(&m, l).unwrap();
            assert!(s.invariant_violations().is_empty());
            assert!(verify_final(&s).ok);
        }
    }
}
