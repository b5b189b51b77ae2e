//! Exact rationals, symbolic constants and rigorous logarithm intervals.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Q {
    Q::new(BigInt::from(p), BigInt::from(q))
}

/// `2^-n`.
pub fn inv_pow2(n: u32) -> Q {
    Q::new(BigInt::one(), BigInt::one() << n as usize)
}

pub fn floor(x: &Q) -> BigInt {
    x.numer().div_floor(x.denom())
}

pub fn is_integer(x: &Q) -> bool {
    x.denom().is_one()
}

pub fn to_f64(x: &Q) -> f64 {
    match (x.numer().to_f64(), x.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Scale both down to the same bit length first.
            let shift = x.numer().bits().max(x.denom().bits()).saturating_sub(1000) as usize;
            let n = (x.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (x.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

pub fn render(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p/q`, an integer, or a finite decimal such as `-1.25`, exactly.
pub fn parse(text: &str) -> Result<Q> {
    let t = text.trim();
    let bad = || Error::Parse(format!("not a rational number: `{text}`"));
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Q::new(p, q));
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() || !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{whole}{frac}").parse().map_err(|_| bad())?;
    let value = Q::new(digits, BigInt::from(10u32).pow(frac.len() as u32));
    Ok(if neg { -value } else { value })
}

/// JSON rendering of an exact value: `{"exact": "p/q", "approx": f64}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exact(pub Q);

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Exact", 2)?;
        st.serialize_field("exact", &render(&self.0))?;
        st.serialize_field("approx", &to_f64(&self.0))?;
        st.end()
    }
}

impl From<Q> for Exact {
    fn from(q: Q) -> Exact {
        Exact(q)
    }
}

/// Constants that the arguments leave unspecified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    /// The multiplicative constant `C`.
    C,
    /// The additive constant `C'`.
    CPrime,
    /// `1/C`.
    InvC,
}

impl Symbol {
    fn name(self) -> &'static str {
        match self {
            Symbol::C => "C",
            Symbol::CPrime => "C'",
            Symbol::InvC => "1/C",
        }
    }
}

/// `constant + Σ coefficient·symbol`, with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymExpr {
    pub constant: Q,
    pub terms: BTreeMap<Symbol, Q>,
}

impl SymExpr {
    pub fn constant(c: Q) -> SymExpr {
        SymExpr { constant: c, terms: BTreeMap::new() }
    }

    pub fn with(mut self, symbol: Symbol, coefficient: Q) -> SymExpr {
        if !coefficient.is_zero() {
            *self.terms.entry(symbol).or_insert_with(Q::zero) += coefficient;
        }
        self
    }

    pub fn is_numeric(&self) -> bool {
        self.terms.is_empty()
    }

    /// Substitutes values for `C` and `C'`; `C` must be non-zero.
    pub fn instantiate(&self, c: &Q, c_prime: &Q) -> Q {
        let mut v = self.constant.clone();
        for (s, k) in &self.terms {
            v += k * match s {
                Symbol::C => c.clone(),
                Symbol::CPrime => c_prime.clone(),
                Symbol::InvC => c.recip(),
            };
        }
        v
    }

    /// Substitutes only `C`, leaving `C'` symbolic.
    pub fn instantiate_c(&self, c: &Q) -> SymExpr {
        let mut out = SymExpr::constant(self.constant.clone());
        for (s, k) in &self.terms {
            match s {
                Symbol::C => out.constant += k * c,
                Symbol::InvC => out.constant += k / c,
                Symbol::CPrime => out = out.with(Symbol::CPrime, k.clone()),
            }
        }
        out
    }
}

impl fmt::Display for SymExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if !self.constant.is_zero() || self.terms.is_empty() {
            parts.push(render(&self.constant));
        }
        for (s, k) in &self.terms {
            let term = match (s, k.is_one()) {
                (Symbol::InvC, true) => "1/C".to_string(),
                (Symbol::InvC, false) if is_integer(k) => format!("{}/C", render(k)),
                (Symbol::InvC, false) => format!("({})/C", render(k)),
                (_, true) => s.name().to_string(),
                (_, false) => format!("{}·{}", render(k), s.name()),
            };
            parts.push(term);
        }
        let text = parts.join(" + ").replace("+ -", "- ");
        f.write_str(&text)
    }
}

impl Serialize for SymExpr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("SymExpr", 3)?;
        st.serialize_field("symbolic", &self.to_string())?;
        st.serialize_field("constant", &Exact(self.constant.clone()))?;
        let terms: BTreeMap<&str, Exact> = self.terms.iter().map(|(k, v)| (k.name(), Exact(v.clone()))).collect();
        st.serialize_field("coefficients", &terms)?;
        st.end()
    }
}

/// A closed rational interval.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Interval {
    #[serde(serialize_with = "ser_q")]
    pub lo: Q,
    #[serde(serialize_with = "ser_q")]
    pub hi: Q,
}

fn ser_q<S: Serializer>(q: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    Exact(q.clone()).serialize(s)
}

impl Interval {
    pub fn contains(&self, x: &Q) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn scale(&self, k: &Q) -> Interval {
        if k.is_negative() {
            Interval { lo: &self.hi * k, hi: &self.lo * k }
        } else {
            Interval { lo: &self.lo * k, hi: &self.hi * k }
        }
    }

    pub fn width(&self) -> Q {
        &self.hi - &self.lo
    }
}

/// `atanh(x)` for rational `0 < x < 1`, from `terms` series terms plus a tail bound.
fn atanh_interval(x: &Q, terms: u32) -> Interval {
    let x2 = x * x;
    let mut power = x.clone();
    let mut sum = Q::zero();
    for k in 0..terms {
        sum += &power / int(2 * k as i64 + 1);
        power *= &x2;
    }
    // Remaining terms are at most x^(2K+1)/(2K+1) · 1/(1-x²).
    let tail = &power / int(2 * terms as i64 + 1) / (Q::one() - &x2);
    Interval { lo: sum.clone(), hi: sum + tail }
}

/// A rigorous enclosure of `ln 18 = 6·atanh(1/3) + 4·atanh(1/5)`.
pub fn ln18_interval() -> Interval {
    let a = atanh_interval(&ratio(1, 3), 40).scale(&int(6));
    let b = atanh_interval(&ratio(1, 5), 40).scale(&int(4));
    Interval { lo: a.lo + b.lo, hi: a.hi + b.hi }
}

/// `mantissa · 2^exponent`.
struct Scaled {
    mantissa: BigUint,
    exponent: u64,
}

impl Scaled {
    /// Keeps the top `precision` bits, rounding down or up.
    fn truncate(mut self, precision: u64, up: bool) -> Scaled {
        let bits = self.mantissa.bits();
        if bits > precision {
            let shift = bits - precision;
            let dropped = self.mantissa.trailing_zeros().is_some_and(|z| z < shift);
            self.mantissa >>= shift as usize;
            if up && dropped {
                self.mantissa += 1u8;
            }
            self.exponent += shift;
        }
        self
    }

    fn mul(&self, other: &Scaled, precision: u64, up: bool) -> Scaled {
        Scaled { mantissa: &self.mantissa * &other.mantissa, exponent: self.exponent + other.exponent }.truncate(precision, up)
    }

    fn at_most_pow2(&self, b: u64) -> bool {
        let Some(k) = b.checked_sub(self.exponent) else { return self.mantissa.is_zero() };
        let bits = self.mantissa.bits();
        bits <= k || (bits == k + 1 && self.mantissa.trailing_zeros() == Some(k))
    }
}

/// Lower and upper bounds on `x^a` carrying `precision` significant bits.
fn power_bounds(x: &BigUint, a: u64, precision: u64) -> (Scaled, Scaled) {
    let one = || Scaled { mantissa: BigUint::one(), exponent: 0 };
    let (mut lo, mut hi) = (one(), one());
    let mut base_lo = Scaled { mantissa: x.clone(), exponent: 0 }.truncate(precision, false);
    let mut base_hi = Scaled { mantissa: x.clone(), exponent: 0 }.truncate(precision, true);
    let mut e = a;
    while e > 0 {
        if e & 1 == 1 {
            lo = lo.mul(&base_lo, precision, false);
            hi = hi.mul(&base_hi, precision, true);
        }
        e >>= 1;
        if e > 0 {
            base_lo = base_lo.mul(&base_lo, precision, false);
            base_hi = base_hi.mul(&base_hi, precision, true);
        }
    }
    (lo, hi)
}

/// Exact decision of `a·log2(x) ≤ b` for integers `a ≥ 0`, `x ≥ 1`: it holds
/// iff `x^a ≤ 2^b`.
pub fn log2_scaled_le(a: u64, x: &BigUint, b: &BigInt) -> bool {
    if b.is_negative() {
        return false;
    }
    if a == 0 || x.is_one() {
        return true;
    }
    let b = b.to_u64().expect("exponent fits in u64");
    // Cheap bit-length bounds first: 2^(bits-1) <= x < 2^bits.
    let bits = x.bits();
    if a.saturating_mul(bits) <= b {
        return true;
    }
    if a.saturating_mul(bits - 1) > b {
        return false;
    }
    // Float estimate, trusted only far from the boundary; the margin dwarfs
    // the rounding error of log2 and of the product.
    if let Some(xf) = x.to_f64().filter(|v| v.is_finite()) {
        let estimate = a as f64 * xf.log2();
        let margin = 1e-12 * estimate.max(1.0);
        if estimate + margin < b as f64 {
            return true;
        }
        if estimate - margin > b as f64 {
            return false;
        }
    }
    let (lo, hi) = power_bounds(x, a, 256);
    if hi.at_most_pow2(b) {
        return true;
    }
    if !lo.at_most_pow2(b) {
        return false;
    }
    let lhs = num_traits::pow::pow(x.clone(), a as usize);
    lhs <= (BigUint::one() << b as usize)
}
