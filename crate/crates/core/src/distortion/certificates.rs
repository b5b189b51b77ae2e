//! Explicit word-length and fragmentation bounds.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{int, ln18_interval, Exact, Interval, SymExpr, Symbol, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "surface", rename_all = "kebab-case")]
pub enum SurfaceKind {
    /// A compact surface with nonempty boundary.
    Boundary,
    Torus,
    Closed {
        genus: u32,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateSet {
    pub surface: SurfaceKind,
    /// `"diam"` or `"el"`: which quantity the input measures.
    pub input_kind: &'static str,
    pub input: u64,
    pub upper: SymExpr,
    /// `(diam − 2)/C`; absent when the input is an éloignement.
    pub lower: Option<SymExpr>,
    /// `lower ≤ upper` at `C = 1`, when both sides are then numeric.
    pub consistent_at_unit_constant: Option<bool>,
}

/// Bounds on the fragmentation length of a homeomorphism in terms of the
/// discrete diameter of the image of `D0` (boundary, torus) or its
/// éloignement from `D0` (closed surfaces of genus ≥ 2).
pub fn frag_certificates(surface: SurfaceKind, value: u64) -> Result<CertificateSet> {
    let v = value as i64;
    let (input_kind, upper) = match surface {
        SurfaceKind::Boundary => ("diam", SymExpr::constant(int(3 * v + 3))),
        SurfaceKind::Torus => ("diam", SymExpr::constant(int(0)).with(Symbol::C, int(4 * v)).with(Symbol::CPrime, int(1))),
        SurfaceKind::Closed { genus } => {
            if genus < 2 {
                return Err(Error::InvalidParameter("closed surfaces here have genus at least 2".into()));
            }
            let g = i64::from(genus);
            let excess = (v - 4 * g).max(0);
            ("el", SymExpr::constant(int((8 * g - 2) * excess)).with(Symbol::CPrime, int(1)))
        }
    };
    let lower = (input_kind == "diam").then(|| SymExpr::constant(int(0)).with(Symbol::InvC, int(v - 2)));
    let consistent_at_unit_constant = lower.as_ref().and_then(|lo| {
        let lo = lo.instantiate_c(&int(1));
        let up = upper.instantiate_c(&int(1));
        (lo.is_numeric() && up.is_numeric()).then(|| lo.constant <= up.constant)
    });
    Ok(CertificateSet { surface, input_kind, input: value, upper, lower, consistent_at_unit_constant })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "group", rename_all = "kebab-case")]
pub enum ClassicalKind {
    /// `⟨a, b | b a b⁻¹ = a^p⟩`.
    Baumslag { p: i64 },
    /// The integer Heisenberg group, `c = [a, b]` central.
    Heisenberg,
}

#[derive(Clone, Debug, Serialize)]
pub struct Classical {
    pub kind: ClassicalKind,
    pub n: u64,
    /// `a^power` (Baumslag) or `c^power` (Heisenberg).
    pub power: String,
    pub bound: u64,
    /// A word of length `bound` equal to the power, uppercase for inverses.
    pub witness: String,
}

fn repeat(letter: &str, n: u64) -> impl Iterator<Item = &str> {
    std::iter::repeat_n(letter, n as usize)
}

/// Word-length bounds exhibiting `a` (resp. `c`) as a distortion element.
pub fn classical_certificates(kind: ClassicalKind, n: u64) -> Result<Classical> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let (power, letters): (BigInt, Vec<&str>) = match kind {
        ClassicalKind::Baumslag { p } => {
            if p.abs() <= 1 {
                return Err(Error::InvalidParameter(format!("|p| must be at least 2, got {p}")));
            }
            let power = num_traits::pow::pow(BigInt::from(p), n as usize);
            (power, repeat("b", n).chain(["a"]).chain(repeat("B", n)).collect())
        }
        ClassicalKind::Heisenberg => {
            let power = BigInt::from(n) * BigInt::from(n);
            (power, repeat("a", n).chain(repeat("b", n)).chain(repeat("A", n)).chain(repeat("B", n)).collect())
        }
    };
    Ok(Classical { kind, n, power: power.to_string(), bound: letters.len() as u64, witness: letters.join(" ") })
}

/// `(12λ − 6)·ln 18`, with a rational enclosure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ABound {
    pub lambda: u64,
    pub coefficient: Exact,
    pub log: &'static str,
    pub interval: Interval,
}

pub fn a_bound_from_lambda(lambda: u64) -> Result<ABound> {
    if lambda == 0 {
        return Err(Error::InvalidParameter("λ must be at least 1".into()));
    }
    let coefficient = int(12 * lambda as i64 - 6);
    Ok(ABound { lambda, interval: ln18_interval().scale(&coefficient), coefficient: Exact(coefficient), log: "ln 18" })
}

/// `2·l·μ + δ`: a diameter bound for the image of a domain of diameter `δ`
/// under a word of length `l` whose letters move points by at most `μ`.
pub fn diameter_upper_from_word_length(l: &Q, mu: &Q, delta: &Q) -> Result<Q> {
    if l.is_negative() || mu.is_negative() || delta.is_negative() {
        return Err(Error::InvalidParameter("word length, displacement and diameter are nonnegative".into()));
    }
    Ok(int(2) * l * mu + delta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn fragmentation() {
        let b = frag_certificates(SurfaceKind::Boundary, 10).unwrap();
        assert_eq!(b.upper, SymExpr::constant(int(33)));
        assert_eq!(b.consistent_at_unit_constant, Some(true));
        let c = frag_certificates(SurfaceKind::Closed { genus: 2 }, 3).unwrap();
        assert_eq!(c.upper.to_string(), "C'");
        let c = frag_certificates(SurfaceKind::Closed { genus: 2 }, 20).unwrap();
        assert_eq!(c.upper.to_string(), "168 + C'");
        assert!(c.lower.is_none());
        let t = frag_certificates(SurfaceKind::Torus, 5).unwrap();
        assert_eq!(t.upper.to_string(), "20·C + C'");
        assert_eq!(t.lower.unwrap().to_string(), "3/C");
        assert!(frag_certificates(SurfaceKind::Closed { genus: 1 }, 3).is_err());
    }

    #[test]
    fn classical() {
        let bs = classical_certificates(ClassicalKind::Baumslag { p: 2 }, 3).unwrap();
        assert_eq!((bs.bound, bs.power.as_str()), (7, "8"));
        let h = classical_certificates(ClassicalKind::Heisenberg, 5).unwrap();
        assert_eq!((h.bound, h.power.as_str()), (20, "25"));
        assert_eq!(classical_certificates(ClassicalKind::Heisenberg, 1).unwrap().bound, 4);
        assert!(classical_certificates(ClassicalKind::Baumslag { p: -1 }, 3).is_err());
    }

    #[test]
    fn a_bound() {
        let a1 = a_bound_from_lambda(1).unwrap();
        assert_eq!(a1.coefficient.0, int(6));
        let a4 = a_bound_from_lambda(4).unwrap();
        assert_eq!(a4.coefficient.0, int(42));
        assert!(a4.interval.lo > a1.interval.hi);
        assert!(a_bound_from_lambda(0).is_err());
    }

    #[test]
    fn diameter_bound() {
        assert_eq!(diameter_upper_from_word_length(&int(3), &int(2), &int(1)).unwrap(), int(13));
        assert!(diameter_upper_from_word_length(&int(-1), &int(2), &int(1)).is_err());
        assert!(Q::zero() <= diameter_upper_from_word_length(&int(0), &int(0), &int(0)).unwrap());
    }
}
