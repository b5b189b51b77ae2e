//! Presentations, letters and words.
//!
//! A closed surface of genus `g` uses the generators `a1, b1, ..., ag, bg`
//! subject to the single relation `[a1,b1]...[ag,bg] = 1`. Free groups use
//! `a1..ak` and the torus uses `e1, e2` (the torus itself is modelled by the
//! square grid in [`crate::torus_grid`]).

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A signed generator. The code is `2 * generator + inverse`, which gives the
/// letter order `a1 < A1 < b1 < B1 < a2 < ...` used for shortlex forms.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Letter(u8);

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Letter {
        Letter((2 * generator + inverse as usize) as u8)
    }

    pub fn from_code(code: usize) -> Letter {
        Letter(code as u8)
    }

    pub fn code(self) -> usize {
        self.0 as usize
    }

    pub fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn inverse(self) -> Letter {
        Letter(self.0 ^ 1)
    }
}

/// A finite sequence of letters. The `reduced` flag records whether no letter
/// is adjacent to its inverse; it is always derived from the letters.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word {
    letters: Vec<Letter>,
    reduced: bool,
}

fn freely_reduced(letters: &[Letter]) -> bool {
    letters.windows(2).all(|p| p[0] != p[1].inverse())
}

impl Word {
    pub fn empty() -> Word {
        Word { letters: Vec::new(), reduced: true }
    }

    pub fn from_letters(letters: Vec<Letter>) -> Word {
        let reduced = freely_reduced(&letters);
        Word { letters, reduced }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    /// The subword `[start, end)`.
    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word::from_letters(self.letters[start..end].to_vec())
    }

    /// Cancels adjacent inverse pairs until none remain.
    pub fn free_reduce(&self) -> Word {
        if self.reduced {
            return self.clone();
        }
        Word { letters: reduce_letters(self.letters.iter().copied()), reduced: true }
    }

    pub fn inverse(&self) -> Word {
        let letters = self.letters.iter().rev().map(|l| l.inverse()).collect();
        Word { letters, reduced: self.reduced }
    }

    /// Concatenation followed by free reduction.
    pub fn concat(&self, other: &Word) -> Word {
        let letters = reduce_letters(self.letters.iter().chain(other.letters.iter()).copied());
        Word { letters, reduced: true }
    }

    /// Appends one letter, cancelling against the last letter if needed.
    pub fn push_reduced(&self, letter: Letter) -> Word {
        let mut letters = self.letters.clone();
        if letters.last() == Some(&letter.inverse()) {
            letters.pop();
        } else {
            letters.push(letter);
        }
        Word::from_letters(letters)
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.reduced
            && match (self.first(), self.last()) {
                (Some(f), Some(l)) => self.len() == 1 || f != l.inverse(),
                _ => true,
            }
    }

    /// All rotations of the word, deduplicated.
    pub fn cyclic_permutations(&self) -> BTreeSet<Word> {
        let n = self.len();
        if n == 0 {
            return BTreeSet::from([Word::empty()]);
        }
        (0..n)
            .map(|k| {
                let mut letters = self.letters[k..].to_vec();
                letters.extend_from_slice(&self.letters[..k]);
                Word::from_letters(letters)
            })
            .collect()
    }

    /// Whether `self` occurs as a contiguous subword of `other`.
    pub fn is_subword_of(&self, other: &Word) -> bool {
        self.is_empty() || other.letters.windows(self.len()).any(|w| w == self.letters.as_slice())
    }
}

fn reduce_letters(letters: impl Iterator<Item = Letter>) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::new();
    for l in letters {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Shortlex: shorter words first, then lexicographic in the letter order.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum GroupKind {
    ClosedSurface { genus: usize },
    Free { rank: usize },
    Torus,
}

/// Generators with formal inverses, plus the relator orbit Λ for closed surfaces.
#[derive(Clone, Debug)]
pub struct Presentation {
    kind: GroupKind,
    generators: usize,
    lambda: Vec<Word>,
}

impl Presentation {
    pub fn new(kind: GroupKind) -> Result<Presentation> {
        match kind {
            GroupKind::ClosedSurface { genus } if genus < 2 => Err(Error::InvalidParameter(format!("closed surface genus must be at least 2, got {genus}"))),
            GroupKind::Free { rank: 0 } => Err(Error::InvalidParameter("free group rank must be at least 1".into())),
            GroupKind::ClosedSurface { genus } => {
                let mut p = Presentation { kind, generators: 2 * genus, lambda: Vec::new() };
                let relator = p.relator().expect("closed surface has a relator");
                let mut words = relator.cyclic_permutations();
                words.extend(relator.inverse().cyclic_permutations());
                p.lambda = words.into_iter().collect();
                Ok(p)
            }
            GroupKind::Free { rank } => Ok(Presentation { kind, generators: rank, lambda: Vec::new() }),
            GroupKind::Torus => Ok(Presentation { kind, generators: 2, lambda: Vec::new() }),
        }
    }

    pub fn closed_surface(genus: usize) -> Result<Presentation> {
        Presentation::new(GroupKind::ClosedSurface { genus })
    }

    pub fn free(rank: usize) -> Result<Presentation> {
        Presentation::new(GroupKind::Free { rank })
    }

    pub fn torus() -> Presentation {
        Presentation::new(GroupKind::Torus).expect("torus presentation is always valid")
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn genus(&self) -> Option<usize> {
        match self.kind {
            GroupKind::ClosedSurface { genus } => Some(genus),
            _ => None,
        }
    }

    /// Whether the group is modelled by the square grid rather than by words.
    pub fn is_grid(&self) -> bool {
        self.kind == GroupKind::Torus
    }

    pub fn num_generators(&self) -> usize {
        self.generators
    }

    /// Number of letters counting inverses.
    pub fn num_letters(&self) -> usize {
        2 * self.generators
    }

    /// Letters in increasing order.
    pub fn letters(&self) -> impl Iterator<Item = Letter> + Clone {
        (0..self.num_letters()).map(Letter::from_code)
    }

    pub fn a(&self, i: usize) -> Letter {
        match self.kind {
            GroupKind::ClosedSurface { .. } => Letter::new(2 * (i - 1), false),
            _ => Letter::new(i - 1, false),
        }
    }

    pub fn b(&self, i: usize) -> Letter {
        assert!(self.genus().is_some(), "b-generators exist only for closed surfaces");
        Letter::new(2 * (i - 1) + 1, false)
    }

    /// `[a1,b1]...[ag,bg]` for closed surfaces.
    pub fn relator(&self) -> Option<Word> {
        let g = self.genus()?;
        let mut letters = Vec::with_capacity(4 * g);
        for i in 1..=g {
            let (a, b) = (self.a(i), self.b(i));
            letters.extend([a, b, a.inverse(), b.inverse()]);
        }
        Some(Word::from_letters(letters))
    }

    /// The relator orbit Λ: all cyclic permutations of the relator and of its
    /// inverse, in shortlex order. Empty for free groups and the torus.
    pub fn lambda(&self) -> &[Word] {
        &self.lambda
    }

    pub fn symbol(&self, letter: Letter) -> String {
        let g = letter.generator();
        let (base, index) = match self.kind {
            GroupKind::ClosedSurface { .. } => (if g.is_multiple_of(2) { 'a' } else { 'b' }, g / 2 + 1),
            GroupKind::Free { .. } => ('a', g + 1),
            GroupKind::Torus => ('e', g + 1),
        };
        let base = if letter.is_inverse() { base.to_ascii_uppercase() } else { base };
        format!("{base}{index}")
    }

    pub fn format_word(&self, w: &Word) -> String {
        w.letters().iter().map(|&l| self.symbol(l)).collect::<Vec<_>>().join(" ")
    }

    pub fn parse_letter(&self, token: &str) -> Result<Letter> {
        let bad = || Error::Parse(format!("unknown letter `{token}`"));
        let mut chars = token.chars();
        let head = chars.next().ok_or_else(bad)?;
        let index: usize = chars.as_str().parse().map_err(|_| bad())?;
        let inverse = head.is_ascii_uppercase();
        let generator = match (self.kind, head.to_ascii_lowercase()) {
            (GroupKind::ClosedSurface { genus }, 'a') if (1..=genus).contains(&index) => 2 * (index - 1),
            (GroupKind::ClosedSurface { genus }, 'b') if (1..=genus).contains(&index) => 2 * (index - 1) + 1,
            (GroupKind::Free { rank }, 'a') if (1..=rank).contains(&index) => index - 1,
            (GroupKind::Torus, 'e') if (1..=2).contains(&index) => index - 1,
            _ => return Err(bad()),
        };
        Ok(Letter::new(generator, inverse))
    }

    /// Parses whitespace-separated letters such as `a1 b1 A1 B1`.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let letters = text.split_whitespace().map(|t| self.parse_letter(t)).collect::<Result<Vec<_>>>()?;
        Ok(Word::from_letters(letters))
    }

    pub fn word(&self, text: &str) -> Word {
        self.parse_word(text).unwrap_or_else(|e| panic!("{e}"))
    }

    /// Whether `w` is a contiguous subword of some Λ word.
    pub fn in_lambda_subword(&self, w: &Word) -> bool {
        self.lambda.iter().any(|l| w.is_subword_of(l))
    }

    /// Whether `w` is a prefix of some Λ word.
    pub fn is_lambda_prefix(&self, w: &Word) -> bool {
        self.lambda.iter().any(|l| l.letters().starts_with(w.letters()))
    }

    /// Λ words starting with `w`.
    pub fn lambda_with_prefix<'a>(&'a self, w: &'a Word) -> impl Iterator<Item = &'a Word> + 'a {
        self.lambda.iter().filter(move |l| l.letters().starts_with(w.letters()))
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::ClosedSurface { genus } => write!(f, "closed surface of genus {genus}"),
            GroupKind::Free { rank } => write!(f, "free group of rank {rank}"),
            GroupKind::Torus => write!(f, "torus"),
        }
    }
}

/// A failed instance of one of the combinatorial facts about Λ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactViolation {
    pub fact: &'static str,
    pub detail: String,
}

fn violation(fact: &'static str, detail: String) -> FactViolation {
    FactViolation { fact, detail }
}

/// At most one Λ word starts with any given pair of letters, and every other
/// Λ word containing the pair is a rotation of it.
pub fn check_unique_pair_extension(p: &Presentation) -> std::result::Result<usize, FactViolation> {
    let mut checked = 0;
    for a in p.letters() {
        for b in p.letters() {
            let pair = Word::from_letters(vec![a, b]);
            let starting: Vec<&Word> = p.lambda_with_prefix(&pair).collect();
            if starting.len() > 1 {
                return Err(violation("unique-pair-extension", format!("{} Λ words start with {}", starting.len(), p.format_word(&pair))));
            }
            for l in p.lambda() {
                let cyclic = Word::from_letters([l.letters(), &l.letters()[..1]].concat());
                if pair.is_subword_of(&cyclic) {
                    let rotations = l.cyclic_permutations();
                    if !starting.iter().any(|s| rotations.contains(*s)) {
                        return Err(violation(
                            "unique-pair-extension",
                            format!("{} contains {} but is not a rotation of the word starting with it", p.format_word(l), p.format_word(&pair)),
                        ));
                    }
                }
            }
            checked += 1;
        }
    }
    Ok(checked)
}

/// Exactly two Λ words end (resp. start) with each letter, and if `b`, `c` are
/// their penultimate (resp. second) letters then `b⁻¹c` lies in no Λ word.
pub fn check_two_words_per_letter(p: &Presentation) -> std::result::Result<usize, FactViolation> {
    let mut checked = 0;
    for a in p.letters() {
        for from_end in [true, false] {
            let words: Vec<&Word> = p.lambda().iter().filter(|l| if from_end { l.last() == Some(a) } else { l.first() == Some(a) }).collect();
            if words.len() != 2 {
                return Err(violation("two-words-per-letter", format!("{} Λ words with {} letter {}", words.len(), if from_end { "last" } else { "first" }, p.symbol(a))));
            }
            let next = |w: &Word| if from_end { w.letters()[w.len() - 2] } else { w.letters()[1] };
            let (b, c) = (next(words[0]), next(words[1]));
            for (x, y) in [(b, c), (c, b)] {
                let probe = Word::from_letters(vec![x.inverse(), y]);
                if p.in_lambda_subword(&probe) {
                    return Err(violation("two-words-per-letter", format!("{} lies in a Λ word", p.format_word(&probe))));
                }
            }
            checked += 1;
        }
    }
    Ok(checked)
}

/// For every pair `ab` inside a Λ word: with `m1` the Λ word starting with `b`
/// whose last letter `l1` is not `a`, and `m2` the Λ word ending with `a` whose
/// first letter `l2` is not `b`, the word `l2⁻¹l1⁻¹` lies in no Λ word.
pub fn check_junction_pairs(p: &Presentation) -> std::result::Result<usize, FactViolation> {
    let mut checked = 0;
    for a in p.letters() {
        for b in p.letters() {
            let pair = Word::from_letters(vec![a, b]);
            if !p.in_lambda_subword(&pair) {
                continue;
            }
            let m1: Vec<&Word> = p.lambda().iter().filter(|l| l.first() == Some(b) && l.last() != Some(a)).collect();
            let m2: Vec<&Word> = p.lambda().iter().filter(|l| l.last() == Some(a) && l.first() != Some(b)).collect();
            if m1.len() != 1 || m2.len() != 1 {
                return Err(violation("junction-pairs", format!("pair {}: {} candidates for m1, {} for m2", p.format_word(&pair), m1.len(), m2.len())));
            }
            let l1 = m1[0].last().expect("Λ words are non-empty");
            let l2 = m2[0].first().expect("Λ words are non-empty");
            let probe = Word::from_letters(vec![l2.inverse(), l1.inverse()]);
            if p.in_lambda_subword(&probe) {
                return Err(violation("junction-pairs", format!("pair {}: {} lies in a Λ word", p.format_word(&pair), p.format_word(&probe))));
            }
            checked += 1;
        }
    }
    Ok(checked)
}
