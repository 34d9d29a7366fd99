//! Freely reduced words over an indexed generating set.

use std::fmt;

/// A single signed generator occurrence.
///
/// Encoded as `2*gen` for the generator itself and `2*gen + 1` for its
/// inverse, which is exactly the column layout of a coset table.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u32);

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Letter {
        Letter(((generator as u32) << 1) | inverse as u32)
    }

    /// Positive occurrence of `generator`.
    pub fn gen(generator: usize) -> Letter {
        Letter::new(generator, false)
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

    /// Column index in a coset table laid out `g1 g1' g2 g2' ...`.
    pub fn column(self) -> usize {
        self.0 as usize
    }

    pub fn from_column(column: usize) -> Letter {
        Letter(column as u32)
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "g{}{}",
            self.generator(),
            if self.is_inverse() { "'" } else { "" }
        )
    }
}

/// A freely reduced word in the free group on indexed generators.
///
/// Every constructor reduces its input, so adjacent cancelling pairs never
/// survive in a `Word` value. Words do not know their ambient presentation;
/// range checks happen where a presentation is available.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Word {
        Word::default()
    }

    /// Builds a word from raw letters, performing free reduction.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Word {
        let mut reduced = Vec::new();
        for l in letters {
            push_reduced(&mut reduced, l);
        }
        Word { letters: reduced }
    }

    pub fn letter(l: Letter) -> Word {
        Word { letters: vec![l] }
    }

    pub fn generator(generator: usize) -> Word {
        Word::letter(Letter::gen(generator))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut letters, l);
        }
        Word { letters }
    }

    /// `n`-th power; negative exponents invert, zero yields the empty word.
    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::new();
        for _ in 0..n.unsigned_abs() {
            for &l in &base.letters {
                push_reduced(&mut letters, l);
            }
        }
        Word { letters }
    }

    /// Strips matching first/last letters; used on relators before
    /// enumeration. The subgroup they generate as normal closure is
    /// unchanged.
    pub fn cyclically_reduced(&self) -> Word {
        let mut letters = self.letters.clone();
        while letters.len() >= 2 && *letters.first().unwrap() == letters.last().unwrap().inverse() {
            letters.remove(0);
            letters.pop();
        }
        Word { letters }
    }

    /// Largest generator index used, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.generator()).max()
    }

    /// Renders the word using `names` for the generators; the empty word
    /// renders as `1` (display only, not part of the file grammar).
    pub fn display<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

fn push_reduced(letters: &mut Vec<Letter>, l: Letter) {
    if letters.last() == Some(&l.inverse()) {
        letters.pop();
    } else {
        letters.push(l);
    }
}

/// Free reduction of a raw letter sequence.
pub fn free_reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Word {
    Word::from_letters(letters)
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        let mut i = 0;
        let letters = self.word.letters();
        while i < letters.len() {
            let l = letters[i];
            let mut run = 1;
            while i + run < letters.len() && letters[i + run] == l {
                run += 1;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let name = self
                .names
                .get(l.generator())
                .map(|s| s.as_str())
                .unwrap_or("?");
            let exp = if l.is_inverse() {
                -(run as i64)
            } else {
                run as i64
            };
            if exp == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{exp}")?;
            }
            i += run;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word[")?;
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l:?}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(spec: &[(usize, bool)]) -> Word {
        Word::from_letters(spec.iter().map(|&(g, inv)| Letter::new(g, inv)))
    }

    #[test]
    fn cancelling_pair_reduces_to_empty() {
        assert!(w(&[(1, false), (1, true)]).is_empty());
        assert!(w(&[(1, true), (1, false)]).is_empty());
    }

    #[test]
    fn nested_cancellation() {
        // z b b^-1 z^-1 -> empty
        let word = w(&[(0, false), (1, false), (1, true), (0, true)]);
        assert!(word.is_empty());
    }

    #[test]
    fn invert_reverses_and_flips() {
        // (z b)^-1 = b^-1 z^-1
        let zb = w(&[(0, false), (1, false)]);
        assert_eq!(zb.inverse(), w(&[(1, true), (0, true)]));
    }

    #[test]
    fn pow_zero_is_empty() {
        let word = w(&[(0, false), (1, true)]);
        assert!(word.pow(0).is_empty());
    }

    #[test]
    fn pow_expands_with_seam_reduction() {
        // (b^2 z^-1)^3 has length 9
        let base = w(&[(1, false), (1, false), (0, true)]);
        assert_eq!(base.pow(3).len(), 9);
        // (z b z^-1)^3 collapses interior seams: z b^3 z^-1, length 5
        let conj = w(&[(0, false), (1, false), (0, true)]);
        assert_eq!(conj.pow(3).len(), 5);
    }

    #[test]
    fn g5_g1_inverse_expansion() {
        // (z b^-1 z^-2 b)(b^-3) = z b^-1 z^-2 b^-2
        let g5 = w(&[(0, false), (1, true), (0, true), (0, true), (1, false)]);
        let g1 = w(&[(1, false), (1, false), (1, false)]);
        let product = g5.concat(&g1.inverse());
        assert_eq!(
            product,
            w(&[(0, false), (1, true), (0, true), (0, true), (1, true), (1, true)])
        );
    }

    #[test]
    fn cyclic_reduction_strips_conjugation() {
        // a b a^-1 -> b
        let word = w(&[(0, false), (1, false), (0, true)]);
        assert_eq!(word.cyclically_reduced(), w(&[(1, false)]));
        assert_eq!(word.cyclically_reduced().len(), 1);
    }

    fn arb_word() -> impl Strategy<Value = Word> {
        proptest::collection::vec((0usize..3, any::<bool>()), 0..24)
            .prop_map(|ls| Word::from_letters(ls.into_iter().map(|(g, i)| Letter::new(g, i))))
    }

    proptest! {
        #[test]
        fn reduction_is_idempotent(word in arb_word()) {
            let again = Word::from_letters(word.letters().iter().copied());
            prop_assert_eq!(again, word);
        }

        #[test]
        fn word_times_inverse_is_trivial(word in arb_word()) {
            prop_assert!(word.concat(&word.inverse()).is_empty());
            prop_assert!(word.inverse().concat(&word).is_empty());
        }

        #[test]
        fn powers_add(word in arb_word(), m in -8i64..=8, n in -8i64..=8) {
            let lhs = word.pow(m + n);
            let rhs = word.pow(m).concat(&word.pow(n));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
