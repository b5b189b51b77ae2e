//! Growth models `c·n^a·(log n)^b` and the limit criteria built on them.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{self, Exact, Q};

/// The symbolic part of a growth model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerLog {
    pub c: Q,
    pub a: Q,
    pub b: Q,
}

/// A growth sequence: a power-log expression, a finite table of values, or both.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthModel {
    pub power_log: Option<PowerLog>,
    /// `prefix[i]` is the value at `n = i + 1`.
    pub prefix: Vec<Q>,
}

impl GrowthModel {
    pub fn power_log(c: Q, a: Q, b: Q) -> Result<GrowthModel> {
        if !c.is_positive() {
            return Err(Error::InvalidParameter("the coefficient must be positive".into()));
        }
        if a.is_negative() {
            return Err(Error::InvalidParameter("the power of n must be nonnegative".into()));
        }
        Ok(GrowthModel { power_log: Some(PowerLog { c, a, b }), prefix: Vec::new() })
    }

    /// `n^a·(log n)^b` with coefficient 1.
    pub fn monomial(a: Q, b: Q) -> GrowthModel {
        GrowthModel::power_log(Q::one(), a, b).expect("coefficient 1 is positive")
    }

    pub fn table(prefix: Vec<Q>) -> Result<GrowthModel> {
        if prefix.is_empty() || prefix.iter().any(|v| !v.is_positive()) {
            return Err(Error::InvalidParameter("table values must be positive and non-empty".into()));
        }
        Ok(GrowthModel { power_log: None, prefix })
    }

    pub fn with_prefix(mut self, prefix: Vec<Q>) -> Result<GrowthModel> {
        if prefix.iter().any(|v| !v.is_positive()) {
            return Err(Error::InvalidParameter("table values must be positive".into()));
        }
        self.prefix = prefix;
        Ok(self)
    }

    /// Parses expressions like `n^0.5`, `2*n*log(n)^-2`, `sqrt(n)`, `n/log(n)`,
    /// `n^(1/3)`, `1`, or a table `table:1,2,5/2`.
    pub fn parse(text: &str) -> Result<GrowthModel> {
        if let Some(rest) = text.trim().strip_prefix("table:") {
            let values = rest.split(',').map(exact::parse).collect::<Result<Vec<_>>>()?;
            return GrowthModel::table(values);
        }
        let (c, a, b) = Parser::new(text).expression()?;
        GrowthModel::power_log(c, a, b)
    }

    /// The value at `n`, from the table if present there, else from the expression.
    pub fn value_f64(&self, n: u64) -> Option<f64> {
        if n >= 1 {
            if let Some(v) = self.prefix.get(n as usize - 1) {
                return Some(exact::to_f64(v));
            }
        }
        self.power_log.as_ref().map(|p| {
            let n = n as f64;
            exact::to_f64(&p.c) * n.powf(exact::to_f64(&p.a)) * n.ln().powf(exact::to_f64(&p.b))
        })
    }

    pub fn class(&self) -> Option<GrowthClass> {
        self.power_log.as_ref().map(|p| GrowthClass { a: p.a.clone(), b: p.b.clone(), e: 0 })
    }
}

impl fmt::Display for GrowthModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.power_log {
            Some(p) => write!(f, "{}·n^{}·log(n)^{}", exact::render(&p.c), exact::render(&p.a), exact::render(&p.b))?,
            None => write!(f, "table")?,
        }
        if !self.prefix.is_empty() {
            write!(f, " [{} tabulated values]", self.prefix.len())?;
        }
        Ok(())
    }
}

impl Serialize for GrowthModel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("GrowthModel", 5)?;
        st.serialize_field("display", &self.to_string())?;
        st.serialize_field("c", &self.power_log.as_ref().map(|p| Exact(p.c.clone())))?;
        st.serialize_field("a", &self.power_log.as_ref().map(|p| Exact(p.a.clone())))?;
        st.serialize_field("b", &self.power_log.as_ref().map(|p| Exact(p.b.clone())))?;
        st.serialize_field("prefix_len", &self.prefix.len())?;
        st.end()
    }
}

/// The asymptotic class `n^a·(log n)^b·(log log n)^e`, ordered by growth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthClass {
    pub a: Q,
    pub b: Q,
    pub e: i64,
}

impl GrowthClass {
    pub fn linear() -> GrowthClass {
        GrowthClass { a: Q::one(), b: Q::zero(), e: 0 }
    }

    /// The class of `d·log d` for `d` in this class (with `e = 0`).
    pub fn times_log_self(&self) -> GrowthClass {
        if self.a.is_positive() {
            GrowthClass { a: self.a.clone(), b: &self.b + Q::one(), e: self.e }
        } else if !self.b.is_zero() {
            GrowthClass { a: Q::zero(), b: self.b.clone(), e: self.e + 1 }
        } else {
            GrowthClass { a: Q::zero(), b: Q::zero(), e: 0 }
        }
    }

    /// Whether `self / other → 0`.
    pub fn negligible_against(&self, other: &GrowthClass) -> bool {
        self < other
    }
}

impl PartialOrd for GrowthClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GrowthClass {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.a, &self.b, self.e).cmp(&(&other.a, &other.b, other.e))
    }
}

impl Serialize for GrowthClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("GrowthClass", 3)?;
        st.serialize_field("n_power", &Exact(self.a.clone()))?;
        st.serialize_field("log_power", &Exact(self.b.clone()))?;
        st.serialize_field("loglog_power", &self.e)?;
        st.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    True,
    False,
    Indeterminate,
}

/// Behavior of a ratio over the tabulated range; floats, natural logarithms.
#[derive(Clone, Debug, Serialize)]
pub struct Trend {
    pub samples: Vec<(u64, f64)>,
    pub nonincreasing_tail: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerdictReport {
    pub verdict: Verdict,
    pub numerator: Option<GrowthClass>,
    pub denominator: Option<GrowthClass>,
    pub reason: String,
    pub trend: Option<Trend>,
}

fn trend(len: usize, ratio: impl Fn(u64) -> Option<f64>) -> Option<Trend> {
    if len == 0 {
        return None;
    }
    let n = len as u64;
    let mut points: Vec<u64> = (0..=8).map(|k| 1 + (n - 1) * k / 8).collect();
    points.dedup();
    let samples: Vec<(u64, f64)> = points.iter().filter_map(|&i| ratio(i).map(|r| (i, r))).collect();
    let tail: Vec<f64> = (n.div_ceil(2)..=n).filter_map(&ratio).collect();
    let nonincreasing_tail = tail.windows(2).all(|w| w[1] <= w[0] + 1e-12);
    Some(Trend { samples, nonincreasing_tail })
}

fn decide(numerator: Option<GrowthClass>, denominator: Option<GrowthClass>, table_len: usize, ratio: impl Fn(u64) -> Option<f64>, what: &str) -> VerdictReport {
    let trend = trend(table_len, ratio);
    match (&numerator, &denominator) {
        (Some(num), Some(den)) => {
            let holds = num.negligible_against(den);
            let verdict = if holds { Verdict::True } else { Verdict::False };
            let reason = format!("{what} {} 0", if holds { "tends to" } else { "does not tend to" });
            VerdictReport { verdict, numerator, denominator, reason, trend }
        }
        _ => VerdictReport { verdict: Verdict::Indeterminate, numerator, denominator, reason: "a limit cannot be decided from finitely many values".into(), trend },
    }
}

/// Whether `d_n / n → 0`.
pub fn criterion_sublinear(d: &GrowthModel) -> VerdictReport {
    let ratio = |n: u64| d.value_f64(n).map(|v| v / n as f64);
    decide(d.class(), Some(GrowthClass::linear()), d.prefix.len(), ratio, "d_n / n")
}

/// Whether `d_n·log(d_n) / n → 0`.
pub fn criterion_nlogn(d: &GrowthModel) -> VerdictReport {
    let ratio = |n: u64| d.value_f64(n).map(|v| v * v.ln() / n as f64);
    decide(d.class().map(|c| c.times_log_self()), Some(GrowthClass::linear()), d.prefix.len(), ratio, "d_n·log(d_n) / n")
}

/// Whether `d_n·log(d_n) / w_n → 0`. For power-log models the lower limit is a limit.
pub fn criterion_wn(d: &GrowthModel, w: &GrowthModel) -> VerdictReport {
    let ratio = |n: u64| Some(d.value_f64(n)? * d.value_f64(n)?.ln() / w.value_f64(n)?);
    let range = |g: &GrowthModel| if g.power_log.is_some() { None } else { Some(g.prefix.len()) };
    let len = match (range(d), range(w)) {
        (Some(x), Some(y)) => x.min(y),
        (Some(x), None) | (None, Some(x)) => x,
        (None, None) => d.prefix.len().max(w.prefix.len()),
    };
    decide(d.class().map(|c| c.times_log_self()), w.class(), len, ratio, "d_n·log(d_n) / w_n")
}

struct Parser<'a> {
    text: &'a str,
    rest: &'a str,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Parser<'a> {
        Parser { text, rest: text }
    }

    fn error(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at `{}` in growth expression `{}`", self.rest, self.text))
    }

    fn skip_ws(&mut self) {
        self.rest = self.rest.trim_start();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        match self.rest.strip_prefix(token) {
            Some(r) => {
                self.rest = r;
                true
            }
            None => false,
        }
    }

    fn number(&mut self) -> Result<Q> {
        self.skip_ws();
        let end = self.rest.find(|c: char| !(c.is_ascii_digit() || c == '.' || c == '-' || c == '+')).unwrap_or(self.rest.len());
        let (token, rest) = self.rest.split_at(end);
        let value = exact::parse(token).map_err(|_| self.error("expected a number"))?;
        self.rest = rest;
        Ok(value)
    }

    fn exponent(&mut self) -> Result<Q> {
        if self.eat("(") {
            let sign = if self.eat("-") { -Q::one() } else { Q::one() };
            let mut value = self.number()?;
            if self.eat("/") {
                let d = self.number()?;
                if d.is_zero() {
                    return Err(self.error("division by zero"));
                }
                value /= d;
            }
            if !self.eat(")") {
                return Err(self.error("expected `)`"));
            }
            Ok(sign * value)
        } else {
            self.number()
        }
    }

    /// Returns `(c, a, b)` contributed by one factor.
    fn factor(&mut self) -> Result<(Q, Q, Q)> {
        self.skip_ws();
        let (c, a, b) = if self.eat("sqrt(n)") {
            (Q::one(), exact::ratio(1, 2), Q::zero())
        } else if self.eat("log(n)") || self.eat("ln(n)") {
            (Q::one(), Q::zero(), Q::one())
        } else if self.eat("n") {
            (Q::one(), Q::one(), Q::zero())
        } else {
            let v = self.number()?;
            if !v.is_positive() {
                return Err(self.error("constants must be positive"));
            }
            (v, Q::zero(), Q::zero())
        };
        if self.eat("^") {
            let e = self.exponent()?;
            if !c.is_one() {
                if !exact::is_integer(&e) {
                    return Err(self.error("constants take integer exponents only"));
                }
                let k: i32 = e.to_integer().try_into().map_err(|_| self.error("exponent too large"))?;
                return Ok((num_traits::pow::Pow::pow(c, k), a, b));
            }
            return Ok((c, a * &e, b * e));
        }
        Ok((c, a, b))
    }

    fn expression(&mut self) -> Result<(Q, Q, Q)> {
        let (mut c, mut a, mut b) = self.factor()?;
        loop {
            if self.eat("*") {
                let (c2, a2, b2) = self.factor()?;
                c *= c2;
                a += a2;
                b += b2;
            } else if self.eat("/") {
                let (c2, a2, b2) = self.factor()?;
                c /= c2;
                a -= a2;
                b -= b2;
            } else {
                break;
            }
        }
        self.skip_ws();
        if !self.rest.is_empty() {
            return Err(self.error("unexpected input"));
        }
        if c.is_zero() {
            return Err(self.error("zero coefficient"));
        }
        Ok((c, a, b))
    }
}
