//! Balls in the Cayley graph, seen as the dual tiling by fundamental domains.
//!
//! Faces are enumerated breadth first. Spheres are processed in increasing
//! shortlex order of their canonical words and letters in increasing order, so
//! the first path reaching a face spells its shortlex-least geodesic. Neighbors
//! of a face at distance `d` lie at `d - 1` or `d + 1` (relators have even
//! length), so a candidate `canonical(f)·x` only has to be compared with faces
//! of the next sphere that share its fingerprint.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::presentation::{GroupKind, Letter, Presentation, Word};
use crate::rewriter::Rewriter;

pub type FaceId = u32;

const NONE: u32 = u32::MAX;
const ROOT: FaceId = 0;

pub const DEFAULT_BUDGET: usize = 5_000_000;
pub const BUDGET_ENV: &str = "DISTO_BALL_BUDGET";

/// The face budget from the environment, or [`DEFAULT_BUDGET`].
pub fn default_budget() -> usize {
    std::env::var(BUDGET_ENV).ok().and_then(|v| v.trim().parse().ok()).filter(|&b| b > 0).unwrap_or(DEFAULT_BUDGET)
}

/// Hash of the images of a word under homomorphisms onto free groups. Equal
/// elements always share a key; distinct elements rarely do.
#[derive(Clone, Debug)]
struct Fingerprint {
    // maps[h][letter code] = image word, letters encoded as free-group codes.
    maps: Vec<Vec<Vec<u8>>>,
}

fn free_letter(generator: usize, inverse: bool) -> u8 {
    (2 * generator + inverse as usize) as u8
}

fn image_word(word: &[u8], inverse: bool) -> Vec<u8> {
    if inverse {
        word.iter().rev().map(|c| c ^ 1).collect()
    } else {
        word.to_vec()
    }
}

impl Fingerprint {
    fn new(p: &Presentation) -> Fingerprint {
        let n = p.num_generators();
        // Per homomorphism, the image of each positive generator.
        let mut gens: Vec<Vec<Vec<u8>>> = Vec::new();
        match p.kind() {
            GroupKind::ClosedSurface { genus } => {
                let x = |i: usize| vec![free_letter(i, false)];
                let kill_b = (0..n).map(|k| if k % 2 == 0 { x(k / 2) } else { vec![] }).collect();
                let kill_a = (0..n).map(|k| if k % 2 == 1 { x(k / 2) } else { vec![] }).collect();
                let diagonal = (0..n).map(|k| x(k / 2)).collect();
                gens.extend([kill_b, kill_a, diagonal]);
                // Pair handles (p, q): a_p -> x, b_p -> y, a_q -> y x^t, b_q -> x.
                // Then [a_p,b_p][a_q,b_q] = [x,y][y,x] = 1.
                for offset in [0usize, 1] {
                    for twist in 0..3usize {
                        let mut images = vec![Vec::new(); n];
                        let mut handle = 0;
                        for h in 0..offset.min(genus) {
                            images[2 * h] = x(h);
                            handle = h + 1;
                        }
                        while handle + 1 < genus {
                            let (xg, yg) = (2 * handle, 2 * handle + 1);
                            images[2 * handle] = x(xg);
                            images[2 * handle + 1] = x(yg);
                            let mut aq = x(yg);
                            aq.extend(std::iter::repeat_n(free_letter(xg, false), twist));
                            images[2 * (handle + 1)] = aq;
                            images[2 * (handle + 1) + 1] = x(xg);
                            handle += 2;
                        }
                        if handle < genus {
                            images[2 * handle] = x(2 * handle);
                        }
                        gens.push(images);
                    }
                }
            }
            _ => gens.push((0..n).map(|k| vec![free_letter(k, false)]).collect()),
        }
        let maps = gens.into_iter().map(|g| (0..2 * n).map(|code| image_word(&g[code / 2], code % 2 == 1)).collect()).collect();
        Fingerprint { maps }
    }

    fn key(&self, letters: &[Letter]) -> u64 {
        let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
        let mut buf: Vec<u8> = Vec::with_capacity(4 * letters.len() + 4);
        for map in &self.maps {
            buf.clear();
            for l in letters {
                for &c in &map[l.code()] {
                    if buf.last() == Some(&(c ^ 1)) {
                        buf.pop();
                    } else {
                        buf.push(c);
                    }
                }
            }
            for &c in &buf {
                hash = (hash ^ (c as u64 + 1)).wrapping_mul(0x0100_0000_01b3);
            }
            hash = (hash ^ 0xff).wrapping_mul(0x0100_0000_01b3);
        }
        hash
    }

    #[cfg(test)]
    fn kills(&self, letters: &[Letter]) -> bool {
        self.key(letters) == self.key(&[])
    }
}

/// A face with its canonical word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Face {
    pub id: FaceId,
    #[serde(skip)]
    pub canonical: Word,
    pub distance: usize,
}

/// The faces of a vertex: `f·λ1…λi` for `i = 1..4g` and a Λ word `λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexRing {
    pub base: FaceId,
    pub relator: usize,
    pub faces: Vec<FaceId>,
}

impl VertexRing {
    pub fn distinct_faces(&self) -> usize {
        self.faces.iter().collect::<BTreeSet<_>>().len()
    }

    pub fn closes(&self) -> bool {
        self.faces.last() == Some(&self.base)
    }

    pub fn face_set(&self) -> BTreeSet<FaceId> {
        self.faces.iter().copied().collect()
    }
}

/// All faces within a given distance of the base face `D0`.
#[derive(Clone, Debug)]
pub struct Ball {
    presentation: Presentation,
    rewriter: Rewriter,
    fingerprint: Fingerprint,
    radius: usize,
    letters: usize,
    parent: Vec<u32>,
    last: Vec<u8>,
    dist: Vec<u16>,
    neighbors: Vec<u32>,
    sphere_start: Vec<usize>,
    bucket_head: HashMap<u64, u32>,
    bucket_next: Vec<u32>,
}

impl Ball {
    pub fn enumerate(p: &Presentation, radius: usize) -> Result<Ball> {
        Ball::enumerate_with_budget(p, radius, default_budget())
    }

    pub fn enumerate_with_budget(p: &Presentation, radius: usize, budget: usize) -> Result<Ball> {
        if p.is_grid() {
            return Err(Error::InvalidParameter("ball enumeration needs a closed-surface or free presentation".into()));
        }
        if radius > u16::MAX as usize {
            return Err(Error::InvalidParameter(format!("radius {radius} is too large")));
        }
        let letters = p.num_letters();
        let fingerprint = Fingerprint::new(p);
        let mut ball = Ball {
            presentation: p.clone(),
            rewriter: Rewriter::new(p)?,
            radius,
            letters,
            parent: vec![NONE],
            last: vec![u8::MAX],
            dist: vec![0],
            neighbors: vec![NONE; letters],
            sphere_start: vec![0, 1],
            bucket_head: HashMap::new(),
            bucket_next: vec![NONE],
            fingerprint,
        };
        ball.bucket_head.insert(ball.fingerprint.key(&[]), ROOT);
        let mut cand: Vec<Letter> = Vec::new();
        let mut probe: Vec<Letter> = Vec::new();
        for d in 0..radius {
            let (lo, hi) = (ball.sphere_start[d], ball.sphere_start[d + 1]);
            for f in lo..hi {
                let canon = ball.word_letters(f as FaceId);
                for x in 0..letters {
                    if ball.neighbors[f * letters + x] != NONE {
                        continue;
                    }
                    cand.clear();
                    cand.extend_from_slice(&canon);
                    cand.push(Letter::from_code(x));
                    let key = ball.fingerprint.key(&cand);
                    let mut found = NONE;
                    let mut g = ball.bucket_head.get(&key).copied().unwrap_or(NONE);
                    while g != NONE {
                        if ball.dist[g as usize] as usize == d + 1 {
                            probe.clear();
                            probe.extend_from_slice(&cand);
                            probe.extend(ball.word_letters(g).iter().rev().map(|l| l.inverse()));
                            if ball.rewriter.is_trivial_letters(&probe) {
                                found = g;
                                break;
                            }
                        }
                        g = ball.bucket_next[g as usize];
                    }
                    if found == NONE {
                        if ball.dist.len() >= budget {
                            return Err(Error::BudgetExceeded { limit: budget });
                        }
                        found = ball.dist.len() as u32;
                        ball.parent.push(f as u32);
                        ball.last.push(x as u8);
                        ball.dist.push((d + 1) as u16);
                        ball.neighbors.extend(std::iter::repeat_n(NONE, letters));
                        let head = ball.bucket_head.insert(key, found).unwrap_or(NONE);
                        ball.bucket_next.push(head);
                    }
                    ball.neighbors[f * letters + x] = found;
                    ball.neighbors[found as usize * letters + (x ^ 1)] = f as u32;
                }
            }
            ball.sphere_start.push(ball.dist.len());
        }
        Ok(ball)
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn rewriter(&self) -> &Rewriter {
        &self.rewriter
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.dist.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn root(&self) -> FaceId {
        ROOT
    }

    pub fn sphere_sizes(&self) -> Vec<usize> {
        self.sphere_start.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// Ids of the faces at distance `d`, in shortlex order of canonical words.
    pub fn sphere(&self, d: usize) -> std::ops::Range<FaceId> {
        self.sphere_start[d] as FaceId..self.sphere_start[d + 1] as FaceId
    }

    pub fn faces(&self) -> std::ops::Range<FaceId> {
        0..self.len() as FaceId
    }

    pub fn distance_from_root(&self, f: FaceId) -> usize {
        self.dist[f as usize] as usize
    }

    fn word_letters(&self, f: FaceId) -> Vec<Letter> {
        let mut out = Vec::with_capacity(self.dist[f as usize] as usize);
        let mut cur = f as usize;
        while cur != ROOT as usize {
            out.push(Letter::from_code(self.last[cur] as usize));
            cur = self.parent[cur] as usize;
        }
        out.reverse();
        out
    }

    /// The shortlex-least geodesic word of a face.
    pub fn canonical(&self, f: FaceId) -> Word {
        Word::from_letters(self.word_letters(f))
    }

    pub fn face(&self, f: FaceId) -> Face {
        Face { id: f, canonical: self.canonical(f), distance: self.distance_from_root(f) }
    }

    pub fn parent(&self, f: FaceId) -> Option<FaceId> {
        let p = self.parent[f as usize];
        (p != NONE).then_some(p)
    }

    /// The face `f·x`, or `None` when it lies outside the ball.
    pub fn neighbor(&self, f: FaceId, x: Letter) -> Option<FaceId> {
        let n = self.neighbors[f as usize * self.letters + x.code()];
        (n != NONE).then_some(n)
    }

    /// Neighbors one step closer to the root, with the connecting letter.
    pub fn down_neighbors(&self, f: FaceId) -> Vec<(Letter, FaceId)> {
        let d = self.dist[f as usize];
        self.presentation.letters().filter_map(|x| self.neighbor(f, x).map(|n| (x, n))).filter(|&(_, n)| d > 0 && self.dist[n as usize] + 1 == d).collect()
    }

    pub fn down_degree(&self, f: FaceId) -> usize {
        self.down_neighbors(f).len()
    }

    /// Follows the letters of `w` from `from`; `None` if the path leaves the ball.
    pub fn trace(&self, from: FaceId, w: &Word) -> Option<FaceId> {
        let mut cur = from;
        for &x in w.letters() {
            cur = self.neighbor(cur, x)?;
        }
        Some(cur)
    }

    /// The face `w(D0)`, if it lies in the ball.
    pub fn try_locate(&self, w: &Word) -> Option<FaceId> {
        let w = w.free_reduce();
        if w.len() <= self.radius {
            return self.trace(ROOT, &w);
        }
        let w = self.rewriter.dehn_reduce(&w);
        if w.len() <= self.radius {
            return self.trace(ROOT, &w);
        }
        let key = self.fingerprint.key(w.letters());
        let mut g = self.bucket_head.get(&key).copied().unwrap_or(NONE);
        while g != NONE {
            if self.rewriter.equal_elements(&w, &self.canonical(g)) {
                return Some(g);
            }
            g = self.bucket_next[g as usize];
        }
        None
    }

    pub fn locate(&self, w: &Word) -> Result<FaceId> {
        self.try_locate(w).ok_or(Error::OutsideBall { radius: self.radius })
    }

    /// `d(u, v) = l(u⁻¹v)`, computed by locating `u⁻¹v` in the ball.
    pub fn distance(&self, u: FaceId, v: FaceId) -> Result<usize> {
        let w = self.canonical(u).inverse().concat(&self.canonical(v));
        Ok(self.distance_from_root(self.locate(&w)?))
    }

    /// Largest pairwise distance in a non-empty face set.
    pub fn diam_discrete(&self, set: &[FaceId]) -> Result<usize> {
        if set.is_empty() {
            return Err(Error::InvalidParameter("diameter of an empty face set".into()));
        }
        let mut best = 0;
        for (i, &u) in set.iter().enumerate() {
            for &v in &set[i + 1..] {
                best = best.max(self.distance(u, v)?);
            }
        }
        Ok(best)
    }

    /// Largest distance from `base` to a face of the set.
    pub fn eloignement(&self, base: FaceId, set: &[FaceId]) -> Result<usize> {
        if set.is_empty() {
            return Err(Error::InvalidParameter("éloignement of an empty face set".into()));
        }
        set.iter().map(|&v| self.distance(base, v)).try_fold(0, |acc, d| Ok(acc.max(d?)))
    }

    /// At least two neighbors are one step closer to the root. Undefined at the root.
    pub fn is_exceptional(&self, f: FaceId) -> Result<bool> {
        if f == ROOT {
            return Err(Error::InvalidParameter("exceptionality is not defined for the base face".into()));
        }
        Ok(self.down_degree(f) >= 2)
    }

    /// How many faces (other than the root) have each number of down-neighbors.
    pub fn down_degree_histogram(&self) -> BTreeMap<usize, usize> {
        let mut hist = BTreeMap::new();
        for f in self.faces().skip(1) {
            *hist.entry(self.down_degree(f)).or_insert(0) += 1;
        }
        hist
    }

    /// Number of geodesic words from the root to each face.
    pub fn geodesic_counts(&self) -> Vec<u128> {
        let mut count = vec![0u128; self.len()];
        count[0] = 1;
        for f in self.faces().skip(1) {
            count[f as usize] = self.down_neighbors(f).iter().map(|&(_, n)| count[n as usize]).sum();
        }
        count
    }

    fn geodesic_count(&self, f: FaceId, memo: &mut HashMap<FaceId, u128>) -> u128 {
        if f == ROOT {
            return 1;
        }
        if let Some(&c) = memo.get(&f) {
            return c;
        }
        let c = self.down_neighbors(f).iter().map(|&(_, n)| self.geodesic_count(n, memo)).sum();
        memo.insert(f, c);
        c
    }

    /// Every geodesic word from the root to `f`, in shortlex order.
    pub fn geodesics_to(&self, f: FaceId, cap: usize) -> Result<Vec<Word>> {
        let total = self.geodesic_count(f, &mut HashMap::new());
        if total > cap as u128 {
            return Err(Error::CapExceeded { cap });
        }
        let mut out = Vec::with_capacity(total as usize);
        let mut suffix = Vec::new();
        self.collect_geodesics(f, &mut suffix, &mut out);
        out.sort();
        Ok(out)
    }

    fn collect_geodesics(&self, f: FaceId, suffix: &mut Vec<Letter>, out: &mut Vec<Word>) {
        if f == ROOT {
            out.push(Word::from_letters(suffix.iter().rev().copied().collect()));
            return;
        }
        for (x, n) in self.down_neighbors(f) {
            suffix.push(x.inverse());
            self.collect_geodesics(n, suffix, out);
            suffix.pop();
        }
    }

    /// The ring of faces around the vertex of `f` described by a Λ word.
    pub fn vertex_ring(&self, f: FaceId, relator: usize) -> Result<VertexRing> {
        let word = &self.presentation.lambda()[relator];
        let mut faces = Vec::with_capacity(word.len());
        let mut cur = f;
        for &x in word.letters() {
            cur = self.neighbor(cur, x).ok_or(Error::OutsideBall { radius: self.radius })?;
            faces.push(cur);
        }
        Ok(VertexRing { base: f, relator, faces })
    }

    /// One ring per Λ word.
    pub fn vertex_rings(&self, f: FaceId) -> Result<Vec<VertexRing>> {
        (0..self.presentation.lambda().len()).map(|r| self.vertex_ring(f, r)).collect()
    }

    /// Number of distinct face sets among the rings of `f`.
    pub fn distinct_vertex_rings(&self, f: FaceId) -> Result<usize> {
        let sets: BTreeSet<BTreeSet<FaceId>> = self.vertex_rings(f)?.iter().map(|r| r.face_set()).collect();
        Ok(sets.len())
    }

    fn unique_parent(&self, f: FaceId) -> bool {
        self.down_degree(f) == 1
    }

    fn check_type_args(&self, f: FaceId, k: usize, l: usize) -> Result<bool> {
        if k > l {
            return Err(Error::InvalidParameter(format!("type ({k},{l}) needs k <= l")));
        }
        if l > self.radius {
            return Err(Error::OutsideBall { radius: self.radius });
        }
        Ok(self.distance_from_root(f) + k == l)
    }

    /// Type `(k, l)` by the inductive definition: at distance `l - k`, and all
    /// neighbors but exactly one are of type `(k - 1, l)`; type `(0, l)` means a
    /// unique neighbor one step closer to the root.
    pub fn face_type_recursive(&self, f: FaceId, k: usize, l: usize) -> Result<bool> {
        if !self.check_type_args(f, k, l)? {
            return Ok(false);
        }
        let mut memo = HashMap::new();
        Ok(self.type_rec(f, k, l, &mut memo))
    }

    fn type_rec(&self, f: FaceId, k: usize, l: usize, memo: &mut HashMap<(FaceId, usize), bool>) -> bool {
        if self.distance_from_root(f) + k != l {
            return false;
        }
        if k == 0 {
            return self.unique_parent(f);
        }
        if let Some(&t) = memo.get(&(f, k)) {
            return t;
        }
        let mut failing = 0;
        for x in self.presentation.letters() {
            let n = self.neighbor(f, x).expect("neighbors of faces below the radius are enumerated");
            if !self.type_rec(n, k - 1, l, memo) {
                failing += 1;
                if failing > 1 {
                    break;
                }
            }
        }
        let t = failing == 1;
        memo.insert((f, k), t);
        t
    }

    /// Type `(k, l)` by extensions: with `γ'` a geodesic to `f` of length
    /// `l - k`, no face `γ'm(D0)` is exceptional (or the root) for reduced `m`
    /// of length at most `k` with `γ'm` reduced.
    pub fn face_type_extension(&self, f: FaceId, k: usize, l: usize) -> Result<bool> {
        if !self.check_type_args(f, k, l)? {
            return Ok(false);
        }
        let last = self.canonical(f).last();
        Ok(self.extensions_regular(f, last, k))
    }

    fn extensions_regular(&self, f: FaceId, last: Option<Letter>, depth: usize) -> bool {
        if !self.unique_parent(f) {
            return false;
        }
        if depth == 0 {
            return true;
        }
        self.presentation.letters().filter(|&y| Some(y.inverse()) != last).all(|y| {
            let n = self.neighbor(f, y).expect("extensions stay inside the ball");
            self.extensions_regular(n, Some(y), depth - 1)
        })
    }

    /// All faces of type `(l - d(f), l)`, for every face at distance at most `l`.
    pub fn type_table(&self, l: usize) -> Result<Vec<bool>> {
        if l > self.radius {
            return Err(Error::OutsideBall { radius: self.radius });
        }
        let mut table = vec![false; self.sphere_start[l + 1]];
        for d in (0..=l).rev() {
            for f in self.sphere(d) {
                let t = if d == l {
                    self.unique_parent(f)
                } else {
                    self.unique_parent(f)
                        && self.presentation.letters().filter_map(|x| self.neighbor(f, x)).filter(|&n| self.dist[n as usize] as usize == d + 1).all(|n| table[n as usize])
                };
                table[f as usize] = t;
            }
        }
        Ok(table)
    }

    pub fn report(&self) -> BallReport {
        let faces = self
            .faces()
            .map(|f| FaceReport {
                word: self.presentation.format_word(&self.canonical(f)),
                dist: self.distance_from_root(f),
                exceptional: self.is_exceptional(f).ok(),
                down_degree: self.down_degree(f),
            })
            .collect();
        BallReport { group: self.presentation.kind(), genus: self.presentation.genus(), radius: self.radius, spheres: self.sphere_sizes(), faces }
    }

    /// Graphviz rendering: one node per face, one edge per adjacency.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph ball {\n  node [shape=box, fontname=\"monospace\"];\n");
        for f in self.faces() {
            let label = self.presentation.format_word(&self.canonical(f));
            let label = if label.is_empty() { "D0".to_string() } else { label };
            let style = if f != ROOT && self.down_degree(f) >= 2 { ", style=filled, fillcolor=\"#f4c7c3\"" } else { "" };
            let _ = writeln!(out, "  f{f} [label=\"{label}\\nd={}\"{style}];", self.distance_from_root(f));
        }
        for f in self.faces() {
            for x in self.presentation.letters().filter(|x| !x.is_inverse()) {
                if let Some(n) = self.neighbor(f, x) {
                    let _ = writeln!(out, "  f{f} -- f{n} [label=\"{}\"];", self.presentation.symbol(x));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FaceReport {
    pub word: String,
    pub dist: usize,
    pub exceptional: Option<bool>,
    pub down_degree: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct BallReport {
    pub group: GroupKind,
    pub genus: Option<usize>,
    pub radius: usize,
    pub spheres: Vec<usize>,
    pub faces: Vec<FaceReport>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g2() -> Presentation {
        Presentation::closed_surface(2).unwrap()
    }

    #[test]
    fn fingerprint_maps_kill_the_relator() {
        for g in 2..=5 {
            let p = Presentation::closed_surface(g).unwrap();
            let fp = Fingerprint::new(&p);
            assert!(fp.kills(p.relator().unwrap().letters()));
            for l in p.lambda() {
                assert!(fp.kills(l.letters()));
            }
            assert!(!fp.kills(p.word("a1").letters()));
        }
    }

    #[test]
    fn small_spheres() {
        let p = g2();
        assert_eq!(Ball::enumerate(&p, 1).unwrap().sphere_sizes(), vec![1, 8]);
        let f = Presentation::free(2).unwrap();
        assert_eq!(Ball::enumerate(&f, 2).unwrap().sphere_sizes(), vec![1, 4, 12]);
    }

    #[test]
    fn budget_is_enforced() {
        let err = Ball::enumerate_with_budget(&g2(), 3, 100).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { limit: 100 }));
    }

    #[test]
    fn canonical_forms_are_shortlex_sorted() {
        let ball = Ball::enumerate(&g2(), 3).unwrap();
        let words: Vec<Word> = ball.faces().map(|f| ball.canonical(f)).collect();
        assert!(words.windows(2).all(|w| w[0] < w[1]));
        for f in ball.faces() {
            assert_eq!(ball.canonical(f).len(), ball.distance_from_root(f));
        }
    }

    #[test]
    fn distances() {
        let p = g2();
        let ball = Ball::enumerate(&p, 4).unwrap();
        let a1 = ball.locate(&p.word("a1")).unwrap();
        let c = ball.locate(&p.word("a1 b1 A1 B1")).unwrap();
        assert_eq!(ball.distance(0, 0).unwrap(), 0);
        assert_eq!(ball.distance(0, a1).unwrap(), 1);
        assert_eq!(ball.distance(0, c).unwrap(), 4);
        assert_eq!(ball.distance(a1, c).unwrap(), 3);
    }

    #[test]
    fn diameter_and_eloignement() {
        let p = g2();
        let ball = Ball::enumerate(&p, 5).unwrap();
        assert_eq!(ball.diam_discrete(&[0]).unwrap(), 0);
        let far = ball.locate(&p.word("a1 a1 b1 b1 a2")).unwrap();
        assert_eq!(ball.eloignement(0, &[far]).unwrap(), 5);
        assert_eq!(ball.diam_discrete(&[far]).unwrap(), 0);
        let small = Ball::enumerate(&p, 4).unwrap();
        let two: Vec<FaceId> = (0..small.sphere(2).end).collect();
        assert_eq!(small.diam_discrete(&two).unwrap(), 4);
    }

    #[test]
    fn exceptional_faces() {
        let p = g2();
        let ball = Ball::enumerate(&p, 4).unwrap();
        let c = ball.locate(&p.word("a1 b1 A1 B1")).unwrap();
        assert!(ball.is_exceptional(c).unwrap());
        assert!(!ball.is_exceptional(ball.locate(&p.word("a1")).unwrap()).unwrap());
        assert!(!ball.is_exceptional(ball.locate(&p.word("a1 b1")).unwrap()).unwrap());
        assert!(ball.is_exceptional(0).is_err());
        let geos: Vec<String> = ball.geodesics_to(c, 10).unwrap().iter().map(|w| p.format_word(w)).collect();
        assert_eq!(geos, ["a1 b1 A1 B1", "b2 a2 B2 A2"]);
        assert!(matches!(ball.geodesics_to(c, 1), Err(Error::CapExceeded { cap: 1 })));
        assert_eq!(ball.geodesics_to(ball.locate(&p.word("a1")).unwrap(), 5).unwrap(), vec![p.word("a1")]);
    }

    #[test]
    fn types_agree_on_small_ball() {
        let p = g2();
        let ball = Ball::enumerate(&p, 5).unwrap();
        let c = ball.locate(&p.word("a1 b1 A1 B1")).unwrap();
        assert!(!ball.face_type_recursive(c, 0, 4).unwrap());
        assert!(ball.face_type_recursive(ball.locate(&p.word("a1")).unwrap(), 0, 1).unwrap());
        for l in 0..=5 {
            let table = ball.type_table(l).unwrap();
            for f in ball.faces().take_while(|&f| ball.distance_from_root(f) <= l) {
                let k = l - ball.distance_from_root(f);
                let r = ball.face_type_recursive(f, k, l).unwrap();
                assert_eq!(r, ball.face_type_extension(f, k, l).unwrap(), "face {f} k={k} l={l}");
                assert_eq!(r, table[f as usize]);
            }
        }
    }

    #[test]
    fn rings_of_the_base_face() {
        let p = g2();
        let ball = Ball::enumerate(&p, 4).unwrap();
        let rings = ball.vertex_rings(0).unwrap();
        assert_eq!(rings.len(), 16);
        for r in &rings {
            assert_eq!(r.distinct_faces(), 8);
            assert!(r.closes());
        }
        assert_eq!(ball.distinct_vertex_rings(0).unwrap(), 8);
    }

    #[test]
    fn dot_export_mentions_every_face() {
        let ball = Ball::enumerate(&g2(), 1).unwrap();
        let dot = ball.to_dot();
        assert_eq!(dot.matches("[label=\"").count(), 9 + 8);
    }
}
