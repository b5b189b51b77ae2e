//! Dehn's algorithm for closed-surface groups.
//!
//! A subword is simplifiable when it has length greater than `2g` and is a
//! prefix of some word of Λ. Replacing it by the inverse of the rest of that
//! Λ word strictly shortens the word, and a freely reduced word is trivial iff
//! repeating this reaches the empty word.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::presentation::{Letter, Presentation, Word};

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplifiableMatch {
    pub start: usize,
    pub length: usize,
    /// Index into [`Presentation::lambda`].
    pub relator: usize,
}

/// Prefix trie over Λ. Two letters already determine the Λ word, so every
/// walk is short and deterministic.
#[derive(Clone, Debug)]
pub struct Rewriter {
    presentation: Presentation,
    letters: usize,
    threshold: usize,
    children: Vec<u32>,
    // The Λ word reached through each node (any one, for depth < 2).
    relator: Vec<u32>,
}

impl Rewriter {
    pub fn new(presentation: &Presentation) -> Result<Rewriter> {
        if presentation.is_grid() {
            return Err(Error::InvalidParameter("the torus is handled by the grid model, not by rewriting".into()));
        }
        let letters = presentation.num_letters();
        let mut rw = Rewriter { presentation: presentation.clone(), letters, threshold: 2 * presentation.genus().unwrap_or(0), children: vec![NONE; letters], relator: vec![NONE] };
        for (index, word) in presentation.lambda().iter().enumerate() {
            let mut node = 0usize;
            for &l in word.letters() {
                let slot = node * letters + l.code();
                if rw.children[slot] == NONE {
                    let next = rw.relator.len();
                    rw.children[slot] = next as u32;
                    rw.children.extend(std::iter::repeat_n(NONE, letters));
                    rw.relator.push(index as u32);
                }
                node = rw.children[slot] as usize;
            }
        }
        Ok(rw)
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    // Longest Λ prefix starting at `letters[start..]`, as (length, relator).
    fn longest_prefix(&self, letters: &[Letter], start: usize) -> (usize, usize) {
        let mut node = 0usize;
        let mut depth = 0;
        for &l in &letters[start..] {
            let next = self.children[node * self.letters + l.code()];
            if next == NONE {
                break;
            }
            node = next as usize;
            depth += 1;
        }
        (depth, self.relator[node] as usize)
    }

    fn best_match(&self, letters: &[Letter]) -> Option<SimplifiableMatch> {
        if self.presentation.lambda().is_empty() {
            return None;
        }
        let mut best: Option<SimplifiableMatch> = None;
        for start in 0..letters.len() {
            if letters.len() - start <= self.threshold {
                break;
            }
            let (length, relator) = self.longest_prefix(letters, start);
            if length > self.threshold && best.as_ref().is_none_or(|b| length > b.length) {
                best = Some(SimplifiableMatch { start, length, relator });
            }
        }
        best
    }

    /// Every start position's longest simplifiable subword, sorted by length
    /// (descending) and then start (ascending). Empty iff `w` is Dehn-reduced.
    pub fn find_simplifiable(&self, w: &Word) -> Vec<SimplifiableMatch> {
        let letters = w.letters();
        let mut out = Vec::new();
        if self.presentation.lambda().is_empty() {
            return out;
        }
        for start in 0..letters.len() {
            let (length, relator) = self.longest_prefix(letters, start);
            if length > self.threshold {
                out.push(SimplifiableMatch { start, length, relator });
            }
        }
        out.sort_by(|x, y| y.length.cmp(&x.length).then(x.start.cmp(&y.start)));
        out
    }

    /// The complementary word of a match: the rest of its Λ word.
    pub fn complementary(&self, m: &SimplifiableMatch) -> Word {
        let l = &self.presentation.lambda()[m.relator];
        l.slice(m.length, l.len())
    }

    fn apply(&self, letters: &[Letter], m: &SimplifiableMatch) -> Vec<Letter> {
        let l = self.presentation.lambda()[m.relator].letters();
        let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
        let push = |out: &mut Vec<Letter>, x: Letter| {
            if out.last() == Some(&x.inverse()) {
                out.pop();
            } else {
                out.push(x);
            }
        };
        for &x in &letters[..m.start] {
            out.push(x);
        }
        for &x in l[m.length..].iter().rev() {
            push(&mut out, x.inverse());
        }
        for &x in &letters[m.start + m.length..] {
            push(&mut out, x);
        }
        out
    }

    /// One step: replace the longest simplifiable subword (leftmost on ties) by
    /// the inverse of its complementary word, then free-reduce. `None` when the
    /// word is irreducible.
    pub fn dehn_step(&self, w: &Word) -> Option<Word> {
        let w = w.free_reduce();
        let m = self.best_match(w.letters())?;
        Some(Word::from_letters(self.apply(w.letters(), &m)))
    }

    /// Applies Dehn steps until none applies; returns every intermediate word
    /// starting with the free reduction of the input.
    pub fn reduction_trace(&self, w: &Word) -> Vec<Word> {
        let mut trace = vec![w.free_reduce()];
        while let Some(next) = self.dehn_step(trace.last().expect("trace is non-empty")) {
            trace.push(next);
        }
        trace
    }

    /// The Dehn-irreducible word reached from `w`.
    pub fn dehn_reduce(&self, w: &Word) -> Word {
        Word::from_letters(self.reduce_letters(w.letters()))
    }

    fn reduce_letters(&self, letters: &[Letter]) -> Vec<Letter> {
        let mut cur = Word::from_letters(letters.to_vec()).free_reduce().into_letters();
        while let Some(m) = self.best_match(&cur) {
            cur = self.apply(&cur, &m);
        }
        cur
    }

    pub fn is_trivial(&self, w: &Word) -> bool {
        self.is_trivial_letters(w.letters())
    }

    pub(crate) fn is_trivial_letters(&self, letters: &[Letter]) -> bool {
        self.reduce_letters(letters).is_empty()
    }

    /// Group-element equality, via triviality of `u·v⁻¹`.
    pub fn equal_elements(&self, u: &Word, v: &Word) -> bool {
        self.is_trivial(&u.concat(&v.inverse()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (Presentation, Rewriter) {
        let p = Presentation::closed_surface(2).unwrap();
        let rw = Rewriter::new(&p).unwrap();
        (p, rw)
    }

    #[test]
    fn relator_is_one_match() {
        let (p, rw) = setup();
        let w = p.relator().unwrap();
        let matches = rw.find_simplifiable(&w);
        assert_eq!((matches[0].start, matches[0].length), (0, 8));
        assert_eq!(matches.iter().filter(|m| m.length == 8).count(), 1);
        assert!(rw.complementary(&matches[0]).is_empty());
    }

    #[test]
    fn short_words_have_no_match() {
        let (p, rw) = setup();
        assert!(rw.find_simplifiable(&p.word("a1")).is_empty());
        assert!(rw.dehn_step(&p.word("a1 b1")).is_none());
        // A geodesic of length 7: nothing longer than 4 is simplifiable.
        assert!(rw.find_simplifiable(&p.word("A2 B2 a1 b1 b1 A1 B1")).is_empty());
    }

    #[test]
    fn length_exactly_half_is_not_rewritten() {
        let (p, rw) = setup();
        assert!(rw.find_simplifiable(&p.word("a1 b1 A1 B1")).is_empty());
        let five = rw.find_simplifiable(&p.word("a1 b1 A1 B1 a2"));
        assert_eq!(five.len(), 1);
        assert_eq!(five[0].length, 5);
        assert_eq!(p.format_word(&rw.complementary(&five[0])), "b2 A2 B2");
    }

    #[test]
    fn dehn_steps() {
        let (p, rw) = setup();
        assert_eq!(rw.dehn_step(&p.relator().unwrap()), Some(Word::empty()));
        let w = p.word("a1").concat(&p.relator().unwrap());
        assert_eq!(rw.dehn_step(&w), Some(p.word("a1")));
        assert_eq!(rw.dehn_step(&p.word("a1 b1 A1 B1 a2")), Some(p.word("b2 a2 B2")));
    }

    #[test]
    fn triviality() {
        let (p, rw) = setup();
        assert!(rw.is_trivial(&Word::empty()));
        assert!(!rw.is_trivial(&p.word("a1")));
        let g1 = p.word("a1 b1 A1 B1");
        let g2 = p.word("b2 a2 B2 A2");
        assert!(rw.is_trivial(&g1.concat(&g2.inverse())));
        assert!(rw.is_trivial(&p.word("b2 a2 B2 A2 b1 a1 B1 A1")));
    }

    #[test]
    fn element_equality() {
        let (p, rw) = setup();
        assert!(rw.equal_elements(&p.word("a1"), &p.word("a1")));
        assert!(!rw.equal_elements(&p.word("a1"), &p.word("b1")));
        let u = p.word("A2 B2 a1 b1 b1 A1 B1");
        let v = p.word("B2 A2 b1 b2 a2 B2 A2");
        assert!(rw.equal_elements(&u, &v));
    }

    #[test]
    fn free_group_rewriting_is_free_reduction() {
        let p = Presentation::free(2).unwrap();
        let rw = Rewriter::new(&p).unwrap();
        assert!(rw.is_trivial(&p.word("a1 a2 A2 A1")));
        assert!(!rw.is_trivial(&p.word("a1 a2 A1 A2")));
        assert!(Rewriter::new(&Presentation::torus()).is_err());
    }

    #[test]
    fn trace_is_strictly_decreasing() {
        let (p, rw) = setup();
        let w = p.word("a1 a1 b1 A1 B1 a2 b2 A2 B2 B2 a2 b2");
        let trace = rw.reduction_trace(&w);
        assert!(trace.windows(2).all(|t| t[1].len() < t[0].len()));
    }
}
