//! Enumeration of the free semigroup on `{a, b}`, block indexing, and the
//! subsequence `σ` that makes decomposition costs summable.

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::log2_scaled_le;

fn check_positive(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter("indices start at 1".into()));
    }
    Ok(())
}

/// The `n`-th word over `{a, b}` in length-then-lexicographic order, with
/// `m_1` empty: the binary digits of `n` after the leading one, `0 ↦ a`, `1 ↦ b`.
pub fn avila_enumerate(n: u64) -> Result<String> {
    check_positive(n)?;
    let len = 63 - n.leading_zeros();
    Ok((0..len).rev().map(|bit| if n >> bit & 1 == 0 { 'a' } else { 'b' }).collect())
}

/// `14·|m_n| + 14`, where `|m_n| = ⌊log2 n⌋`.
pub fn avila_bound(n: u64) -> Result<u64> {
    check_positive(n)?;
    Ok(14 * u64::from(63 - n.leading_zeros()) + 14)
}

/// `i + Σ_{j' < j} blocks[j' - 1]`, for `1 ≤ i ≤ blocks[j - 1]`.
pub fn psi_index(i: u64, j: usize, blocks: &[u64]) -> Result<u64> {
    if j == 0 || j > blocks.len() {
        return Err(Error::InvalidParameter(format!("block {j} is outside 1..={}", blocks.len())));
    }
    if i == 0 || i > blocks[j - 1] {
        return Err(Error::InvalidParameter(format!("index {i} is outside block {j} of size {}", blocks[j - 1])));
    }
    Ok(i + blocks[..j - 1].iter().sum::<u64>())
}

/// The `(i, j)` with `psi_index(i, j, blocks) = index`.
pub fn psi_inverse(index: u64, blocks: &[u64]) -> Result<(u64, usize)> {
    let mut rest = index;
    if rest == 0 {
        return Err(Error::InvalidParameter("indices start at 1".into()));
    }
    for (j, &size) in blocks.iter().enumerate() {
        if rest <= size {
            return Ok((rest, j + 1));
        }
        rest -= size;
    }
    Err(Error::InvalidParameter(format!("index {index} exceeds the total block size")))
}

/// An integer sequence indexed from 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Sequence {
    Const {
        value: u64,
    },
    Identity,
    CeilSqrt,
    /// `values[i]` is the term at `n = i + 1`; undefined past the end.
    Table {
        values: Vec<u64>,
    },
}

impl Sequence {
    pub fn at(&self, n: u64) -> Option<u64> {
        match self {
            Sequence::Const { value } => Some(*value),
            Sequence::Identity => Some(n),
            Sequence::CeilSqrt => {
                let r = n.isqrt();
                Some(if r * r == n { r } else { r + 1 })
            }
            Sequence::Table { values } => values.get(n.checked_sub(1)? as usize).copied(),
        }
    }
}

/// Factor counts `l_n` and distinct-factor counts `k_n` of decompositions of `f^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Profile {
    pub l: Sequence,
    pub k: Sequence,
}

impl Profile {
    pub fn constant(l: u64, k: u64) -> Profile {
        Profile { l: Sequence::Const { value: l }, k: Sequence::Const { value: k } }
    }

    /// `(l_n, min(k_n, l_n))`, and whether `k_n` had to be lowered: a
    /// decomposition into `l` factors has at most `l` distinct ones.
    fn at(&self, n: u64) -> Result<Option<(u64, u64, bool)>> {
        let (Some(l), Some(k)) = (self.l.at(n), self.k.at(n)) else { return Ok(None) };
        if k == 0 || l == 0 {
            return Err(Error::InvalidParameter(format!("profile at n = {n} needs l, k ≥ 1, got l = {l}, k = {k}")));
        }
        Ok(Some((l, k.min(l), k > l)))
    }
}

/// `l·(14·log2(K) + 14)/s ≤ 1/m`, equivalently `K^(14·l·m) ≤ 2^(s − 14·l·m)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SigmaWitness {
    pub m: u64,
    /// `σ(m + 1)`.
    pub s: u64,
    /// `l_{σ(m+1)}`.
    pub l: u64,
    /// `Σ_{i ≤ m+1} k_{σ(i)}`.
    pub k_total: u64,
    pub log2_exponent: u64,
    pub power_of_two: i64,
    /// Left side `l·(14·log2(K)+14)/s`, a float for display.
    pub lhs_approx: f64,
    pub rhs_approx: f64,
}

impl SigmaWitness {
    fn new(m: u64, s: u64, l: u64, k_total: u64) -> SigmaWitness {
        let a = 14 * l * m;
        SigmaWitness {
            m,
            s,
            l,
            k_total,
            log2_exponent: a,
            power_of_two: s as i64 - a as i64,
            lhs_approx: l as f64 * (14.0 * (k_total as f64).log2() + 14.0) / s as f64,
            rhs_approx: 1.0 / m as f64,
        }
    }

    /// Exact re-check of the recorded inequality.
    pub fn holds(&self) -> bool {
        let a = 14 * self.l * self.m;
        a == self.log2_exponent && self.power_of_two == self.s as i64 - a as i64 && log2_scaled_le(a, &BigUint::from(self.k_total), &BigInt::from(self.power_of_two))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SigmaSchedule {
    pub sigma: Vec<u64>,
    /// `k_{σ(1)}, k_{σ(2)}, …`, the block sizes fed to `psi_index`.
    pub blocks: Vec<u64>,
    pub witnesses: Vec<SigmaWitness>,
    pub horizon: u64,
    /// The first `m` whose `σ(m + 1)` lies beyond the horizon, if the search stopped there.
    pub blocking_m: Option<u64>,
    /// Values `σ(m)` at which `k` exceeded `l` and was lowered to `l`.
    pub clamped: Vec<u64>,
    pub log_base: &'static str,
}

impl SigmaSchedule {
    pub fn verify(&self) -> bool {
        self.sigma.windows(2).all(|w| w[0] < w[1]) && self.witnesses.iter().all(SigmaWitness::holds)
    }
}

fn candidate_ok(m: u64, s: u64, l: u64, k_total: u64) -> bool {
    let lhs = l as f64 * m as f64 * (14.0 * (k_total as f64).log2() + 14.0);
    let s_f = s as f64;
    if lhs > s_f * (1.0 + 1e-9) {
        return false;
    }
    if lhs < s_f * (1.0 - 1e-9) {
        return true;
    }
    SigmaWitness::new(m, s, l, k_total).holds()
}

/// Greedy `σ` with `σ(1) = 1`: each `σ(m+1)` is the least index above `σ(m)`
/// meeting its witness inequality. Stops after `terms` values if given,
/// otherwise at the horizon.
pub fn build_sigma(profile: &Profile, horizon: u64, terms: Option<usize>) -> Result<SigmaSchedule> {
    check_positive(horizon)?;
    let (_, k1, c1) = profile.at(1)?.ok_or_else(|| Error::Horizon("the profile has no value at n = 1".into()))?;
    let clamped = if c1 { vec![1] } else { Vec::new() };
    let mut schedule = SigmaSchedule { sigma: vec![1], blocks: vec![k1], witnesses: Vec::new(), horizon, blocking_m: None, clamped, log_base: "2" };
    let mut k_sum = k1;
    loop {
        if terms.is_some_and(|t| schedule.sigma.len() >= t) {
            return Ok(schedule);
        }
        let m = schedule.sigma.len() as u64;
        let mut found = None;
        for s in schedule.sigma[schedule.sigma.len() - 1] + 1..=horizon {
            let Some((l, k, c)) = profile.at(s)? else { break };
            if candidate_ok(m, s, l, k_sum + k) {
                found = Some((s, l, k, c));
                break;
            }
        }
        match found {
            Some((s, l, k, c)) => {
                if c {
                    schedule.clamped.push(s);
                }
                k_sum += k;
                schedule.sigma.push(s);
                schedule.blocks.push(k);
                schedule.witnesses.push(SigmaWitness::new(m, s, l, k_sum));
            }
            None if terms.is_none() && m > 1 => {
                schedule.blocking_m = Some(m);
                return Ok(schedule);
            }
            None => return Err(Error::Horizon(format!("no admissible σ({}) up to the horizon {horizon}; blocked at m = {m}", m + 1))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration() {
        assert_eq!(avila_enumerate(1).unwrap(), "");
        assert_eq!(avila_enumerate(2).unwrap(), "a");
        assert_eq!(avila_enumerate(3).unwrap(), "b");
        assert_eq!(avila_enumerate(12).unwrap(), "baa");
        assert!(avila_enumerate(0).is_err());
    }

    #[test]
    fn bounds() {
        assert_eq!(avila_bound(1).unwrap(), 14);
        assert_eq!(avila_bound(8).unwrap(), 56);
        assert_eq!(avila_bound(1 << 20).unwrap(), 294);
    }

    #[test]
    fn psi() {
        assert_eq!(psi_index(1, 1, &[3]).unwrap(), 1);
        assert_eq!(psi_index(2, 2, &[3, 4]).unwrap(), 5);
        assert!(psi_index(4, 1, &[3]).is_err());
        assert!(psi_index(1, 2, &[3]).is_err());
        assert_eq!(psi_inverse(5, &[3, 4]).unwrap(), (2, 2));
        assert!(psi_inverse(8, &[3, 4]).is_err());
    }

    #[test]
    fn sequences() {
        assert_eq!(Sequence::CeilSqrt.at(16), Some(4));
        assert_eq!(Sequence::CeilSqrt.at(17), Some(5));
        assert_eq!(Sequence::Table { values: vec![2, 3] }.at(3), None);
        let p: Profile = serde_json::from_str(r#"{"l":{"kind":"ceil-sqrt"},"k":{"kind":"const","value":2}}"#).unwrap();
        assert_eq!(p.l, Sequence::CeilSqrt);
    }

    #[test]
    fn constant_profile_schedule() {
        let s = build_sigma(&Profile::constant(1, 1), 100_000, Some(6)).unwrap();
        assert!(s.verify());
        // σ(2): least s > 1 with 1·(14·log2(2) + 14)·1 = 28 ≤ s.
        assert_eq!(s.sigma[1], 28);
    }

    #[test]
    fn linear_profile_fails() {
        let p = Profile { l: Sequence::Identity, k: Sequence::Const { value: 1 } };
        match build_sigma(&p, 10_000, None) {
            Err(Error::Horizon(msg)) => assert!(msg.contains("m = 1")),
            other => panic!("expected a horizon failure, got {other:?}"),
        }
    }

    #[test]
    fn excess_distinct_factors_are_clamped() {
        let s = build_sigma(&Profile::constant(1, 2), 100_000, Some(3)).unwrap();
        assert_eq!(s.clamped, s.sigma);
        assert_eq!(s.blocks, vec![1, 1, 1]);
        assert!(build_sigma(&Profile::constant(0, 1), 100, None).is_err());
    }

    #[test]
    fn square_root_profile() {
        let p = Profile { l: Sequence::CeilSqrt, k: Sequence::Const { value: 2 } };
        let s = build_sigma(&p, 1_000_000, None).unwrap();
        assert!(s.verify());
        assert_eq!(s.clamped, vec![1]);
        assert!(s.sigma.len() >= 5, "{:?}", s.sigma);
    }
}
