//! The square tiling of the plane covering the torus.
//!
//! Faces are unit squares `[i,i+1]×[j,j+1]` named by `(i, j)`, with the base
//! face `D0 = [0,1]²`. Crossed lines are stored in half units: the value `k`
//! stands for the line `x = k/2` (resp. `y = k/2`).

use std::collections::BTreeSet;

use num_rational::Rational64;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{int, SymExpr, Symbol};

pub type Square = (i64, i64);

/// Distance between squares: the fewest squares a path meets, minus one.
pub fn grid_distance(u: Square, v: Square) -> u64 {
    u.0.abs_diff(v.0) + u.1.abs_diff(v.1)
}

/// The squares and grid lines met by a compact set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GridFootprint {
    pub faces: BTreeSet<Square>,
    /// Vertical lines `x = k/2`, by `k`.
    pub vertical: BTreeSet<i64>,
    /// Horizontal lines `y = k/2`, by `k`.
    pub horizontal: BTreeSet<i64>,
}

fn span(coords: impl Iterator<Item = i64>) -> (i64, i64) {
    coords.fold((i64::MAX, i64::MIN), |(lo, hi), c| (lo.min(c), hi.max(c)))
}

impl GridFootprint {
    /// A footprint whose lines lie within the closed span of its faces.
    pub fn new(faces: BTreeSet<Square>, vertical: BTreeSet<i64>, horizontal: BTreeSet<i64>) -> Result<GridFootprint> {
        if faces.is_empty() {
            return Err(Error::InvalidParameter("a footprint needs at least one face".into()));
        }
        let f = GridFootprint { faces, vertical, horizontal };
        let (x0, x1) = span(f.faces.iter().map(|s| s.0));
        let (y0, y1) = span(f.faces.iter().map(|s| s.1));
        let inside = |lines: &BTreeSet<i64>, lo: i64, hi: i64| lines.iter().all(|&k| 2 * lo <= k && k <= 2 * (hi + 1));
        if !inside(&f.vertical, x0, x1) || !inside(&f.horizontal, y0, y1) {
            return Err(Error::InvalidParameter("crossed lines must lie within the span of the faces".into()));
        }
        Ok(f)
    }

    /// The footprint of the closed base square `[0,1]²`.
    pub fn base_square() -> GridFootprint {
        let faces = (-1..=1).flat_map(|i| (-1..=1).map(move |j| (i, j))).collect();
        GridFootprint { faces, vertical: BTreeSet::from([0, 1, 2]), horizontal: BTreeSet::from([0, 1, 2]) }
    }

    /// The footprint of the polygonal path through `points`.
    pub fn from_polyline(points: &[(Rational64, Rational64)]) -> Result<GridFootprint> {
        if points.is_empty() {
            return Err(Error::InvalidParameter("a polyline needs at least one point".into()));
        }
        let mut faces = BTreeSet::new();
        let segments: Vec<_> = if points.len() == 1 { vec![(points[0], points[0])] } else { points.windows(2).map(|w| (w[0], w[1])).collect() };
        for (p, q) in segments {
            let (i0, i1) = (p.0.min(q.0).floor().to_integer() - 1, p.0.max(q.0).floor().to_integer());
            let (j0, j1) = (p.1.min(q.1).floor().to_integer() - 1, p.1.max(q.1).floor().to_integer());
            for i in i0..=i1 {
                for j in j0..=j1 {
                    if segment_meets_square(p, q, (i, j)) {
                        faces.insert((i, j));
                    }
                }
            }
        }
        let lines = |coords: Vec<Rational64>| -> BTreeSet<i64> {
            let lo = coords.iter().min().copied().expect("non-empty");
            let hi = coords.iter().max().copied().expect("non-empty");
            let two = Rational64::from_integer(2);
            ((lo * two).ceil().to_integer()..=(hi * two).floor().to_integer()).collect()
        };
        let vertical = lines(points.iter().map(|p| p.0).collect());
        let horizontal = lines(points.iter().map(|p| p.1).collect());
        Ok(GridFootprint { faces, vertical, horizontal })
    }

    pub fn length(&self) -> usize {
        self.vertical.len()
    }

    pub fn height(&self) -> usize {
        self.horizontal.len()
    }

    pub fn diam(&self) -> u64 {
        let faces: Vec<Square> = self.faces.iter().copied().collect();
        let mut best = 0;
        for (i, &u) in faces.iter().enumerate() {
            for &v in &faces[i + 1..] {
                best = best.max(grid_distance(u, v));
            }
        }
        best
    }

    /// Faces connected through shared edges.
    pub fn is_connected(&self) -> bool {
        let start = *self.faces.iter().next().expect("footprints are non-empty");
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some((i, j)) = stack.pop() {
            for n in [(i + 1, j), (i - 1, j), (i, j + 1), (i, j - 1)] {
                if self.faces.contains(&n) && seen.insert(n) {
                    stack.push(n);
                }
            }
        }
        seen.len() == self.faces.len()
    }

    /// A set meeting `x = i` meets both columns `i - 1` and `i`; a set meeting
    /// `x = i + 1/2` meets column `i`; likewise for rows.
    pub fn lines_supported_by_faces(&self) -> bool {
        let cols: BTreeSet<i64> = self.faces.iter().map(|s| s.0).collect();
        let rows: BTreeSet<i64> = self.faces.iter().map(|s| s.1).collect();
        let ok = |lines: &BTreeSet<i64>, used: &BTreeSet<i64>| {
            lines.iter().all(|&k| if k % 2 == 0 { used.contains(&(k / 2 - 1)) && used.contains(&(k / 2)) } else { used.contains(&k.div_euclid(2)) })
        };
        ok(&self.vertical, &cols) && ok(&self.horizontal, &rows)
    }
}

fn segment_meets_square(p: (Rational64, Rational64), q: (Rational64, Rational64), sq: Square) -> bool {
    // Liang-Barsky clipping of the closed segment against the closed square.
    let (dx, dy) = (q.0 - p.0, q.1 - p.1);
    let (x0, x1) = (Rational64::from_integer(sq.0), Rational64::from_integer(sq.0 + 1));
    let (y0, y1) = (Rational64::from_integer(sq.1), Rational64::from_integer(sq.1 + 1));
    let mut t0 = Rational64::zero();
    let mut t1 = Rational64::from_integer(1);
    for (pk, qk) in [(-dx, p.0 - x0), (dx, x1 - p.0), (-dy, p.1 - y0), (dy, y1 - p.1)] {
        if pk.is_zero() {
            if qk.is_negative() {
                return false;
            }
        } else {
            let t = qk / pk;
            if pk.is_negative() {
                t0 = t0.max(t);
            } else {
                t1 = t1.min(t);
            }
        }
    }
    t0 <= t1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PlanStep {
    /// Lowers the length by one.
    ReduceLength,
    /// Lowers the height by one.
    ReduceHeight,
    /// Length and height are both at most 3; finishes with boundedly many factors.
    FinishSmall,
}

#[derive(Clone, Debug, Serialize)]
pub struct Plan {
    pub steps: Vec<PlanStep>,
    pub reduction_steps: usize,
    /// Upper bound on the fragmentation length: `4·C·diam + C'`.
    pub fragmentation_bound: SymExpr,
}

/// One step per unit of length above 3 and per unit of height above 3, then a
/// final bounded step.
pub fn reduction_plan(length: usize, height: usize, diam: u64) -> Plan {
    let mut steps = vec![PlanStep::ReduceLength; length.saturating_sub(3)];
    steps.extend(std::iter::repeat_n(PlanStep::ReduceHeight, height.saturating_sub(3)));
    let reduction_steps = steps.len();
    steps.push(PlanStep::FinishSmall);
    let bound = SymExpr::constant(int(0)).with(Symbol::C, int(4 * diam as i64)).with(Symbol::CPrime, int(1));
    Plan { steps, reduction_steps, fragmentation_bound: bound }
}

pub fn footprint_plan(f: &GridFootprint) -> Plan {
    reduction_plan(f.length(), f.height(), f.diam())
}

/// Parses `"0,0;1,0"` into squares.
pub fn parse_squares(text: &str) -> Result<BTreeSet<Square>> {
    text.split(';')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let (a, b) = t.split_once(',').ok_or_else(|| Error::Parse(format!("expected `i,j`, got `{t}`")))?;
            let p = |s: &str| s.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad coordinate `{s}`")));
            Ok((p(a)?, p(b)?))
        })
        .collect()
}

/// Parses `"0;0.5;1"` into half units.
pub fn parse_lines(text: &str) -> Result<BTreeSet<i64>> {
    text.split(';')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let v = crate::exact::parse(t)? * int(2);
            if !crate::exact::is_integer(&v) {
                return Err(Error::Parse(format!("line `{t}` is not a multiple of 1/2")));
            }
            v.to_integer().to_i64().ok_or_else(|| Error::Parse(format!("line `{t}` out of range")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn distances() {
        assert_eq!(grid_distance((0, 0), (0, 0)), 0);
        assert_eq!(grid_distance((0, 0), (1, 1)), 2);
        assert_eq!(grid_distance((0, 0), (3, 0)), 3);
    }

    #[test]
    fn base_square_counts() {
        let d0 = GridFootprint::base_square();
        assert_eq!((d0.length(), d0.height()), (3, 3));
        let from_path = GridFootprint::from_polyline(&[(r(0, 1), r(0, 1)), (r(1, 1), r(0, 1)), (r(1, 1), r(1, 1)), (r(0, 1), r(1, 1)), (r(0, 1), r(0, 1))]).unwrap();
        assert_eq!(from_path, d0);
    }

    #[test]
    fn interior_point() {
        let f = GridFootprint::from_polyline(&[(r(1, 3), r(1, 5))]).unwrap();
        assert_eq!((f.length(), f.height()), (0, 0));
        assert_eq!(f.faces, BTreeSet::from([(0, 0)]));
    }

    #[test]
    fn corner_point_meets_four_squares() {
        let f = GridFootprint::from_polyline(&[(r(1, 1), r(1, 1))]).unwrap();
        assert_eq!(f.faces.len(), 4);
        assert!(f.lines_supported_by_faces());
    }

    #[test]
    fn validation() {
        let faces = BTreeSet::from([(0, 0)]);
        assert!(GridFootprint::new(faces.clone(), BTreeSet::from([0, 1, 2]), BTreeSet::new()).is_ok());
        assert!(GridFootprint::new(faces, BTreeSet::from([3]), BTreeSet::new()).is_err());
        assert!(GridFootprint::new(BTreeSet::new(), BTreeSet::new(), BTreeSet::new()).is_err());
    }

    #[test]
    fn plans() {
        assert_eq!(reduction_plan(3, 3, 0).reduction_steps, 0);
        assert_eq!(reduction_plan(3, 3, 0).steps, vec![PlanStep::FinishSmall]);
        assert_eq!(reduction_plan(7, 3, 0).reduction_steps, 4);
        assert_eq!(reduction_plan(5, 6, 0).reduction_steps, 5);
        assert_eq!(reduction_plan(1, 1, 5).fragmentation_bound.to_string(), "20·C + C'");
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_squares("0,0;1,0").unwrap(), BTreeSet::from([(0, 0), (1, 0)]));
        assert_eq!(parse_lines("0;0.5;1").unwrap(), BTreeSet::from([0, 1, 2]));
        assert!(parse_lines("0.25").is_err());
        assert!(parse_squares("0").is_err());
    }
}
