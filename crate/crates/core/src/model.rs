//! Letters, atomic operations, keys, configurations and keyboards.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// A single letter of a keyboard alphabet.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Letter(char);

impl Letter {
    /// Builds a letter, rejecting characters that clash with operation glyphs
    /// or with the text format (whitespace, `#`).
    pub fn new(c: char) -> Result<Letter, Error> {
        if is_reserved_char(c) {
            return Err(Error::ReservedLetter(c));
        }
        Ok(Letter(c))
    }

    pub fn as_char(self) -> char {
        self.0
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub(crate) fn is_reserved_char(c: char) -> bool {
    c.is_whitespace() || c.is_control() || matches!(c, '#' | '←' | '◄' | '►' | '■' | 'ε')
}

/// An atomic operation over a symbol type `S`.
///
/// Plain keys use `S = Letter`; the tracking module instantiates the same
/// operations over marked symbols so both folds share one implementation.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Op<S> {
    Write(S),
    Backspace,
    Left,
    Right,
}

pub type AtomicOp = Op<Letter>;

impl<S> Op<S> {
    pub fn letter(&self) -> Option<&S> {
        match self {
            Op::Write(s) => Some(s),
            _ => None,
        }
    }

    pub fn map<T>(&self, f: impl FnOnce(&S) -> T) -> Op<T> {
        match self {
            Op::Write(s) => Op::Write(f(s)),
            Op::Backspace => Op::Backspace,
            Op::Left => Op::Left,
            Op::Right => Op::Right,
        }
    }
}

impl fmt::Display for Op<Letter> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Op::Write(a) => write!(f, "{a}"),
            Op::Backspace => f.write_str("←"),
            Op::Left => f.write_str("◄"),
            Op::Right => f.write_str("►"),
        }
    }
}

/// A key: a finite, possibly empty, sequence of atomic operations.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Key {
    ops: Vec<AtomicOp>,
}

impl Key {
    pub fn new(ops: Vec<AtomicOp>) -> Key {
        Key { ops }
    }

    pub fn empty() -> Key {
        Key::default()
    }

    pub fn ops(&self) -> &[AtomicOp] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// Number of occurrences of `op` in the key.
    pub fn count(&self, op: &AtomicOp) -> usize {
        self.ops.iter().filter(|o| *o == op).count()
    }

    /// Number of letters written by the key (all letters together).
    pub fn letter_count(&self) -> usize {
        self.ops.iter().filter(|o| o.letter().is_some()).count()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.ops.iter().filter_map(|o| o.letter().copied())
    }

    pub fn contains(&self, op: &AtomicOp) -> bool {
        self.ops.contains(op)
    }

    pub fn has_arrow(&self) -> bool {
        self.ops.iter().any(|o| matches!(o, Op::Left | Op::Right))
    }

    /// Concatenation of two keys.
    pub fn then(&self, other: &Key) -> Key {
        let mut ops = self.ops.clone();
        ops.extend_from_slice(&other.ops);
        Key { ops }
    }
}

impl FromStr for Key {
    type Err = Error;

    /// Compact glyph syntax: letters stand for themselves, `←`, `◄` and `►`
    /// for the three special operations, `ε` (or the empty string) for the
    /// empty key.
    fn from_str(s: &str) -> Result<Key, Error> {
        let mut ops = Vec::new();
        for c in s.chars() {
            match c {
                '←' => ops.push(Op::Backspace),
                '◄' => ops.push(Op::Left),
                '►' => ops.push(Op::Right),
                'ε' => {}
                c => ops.push(Op::Write(Letter::new(c)?)),
            }
        }
        Ok(Key { ops })
    }
}

impl fmt::Display for Key {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ops.is_empty() {
            return f.write_str("ε");
        }
        for op in &self.ops {
            write!(f, "{op}")?;
        }
        Ok(())
    }
}

/// Parses a word of plain letters.
pub fn word(s: &str) -> Result<Vec<Letter>, Error> {
    s.chars().map(Letter::new).collect()
}

pub fn word_string(w: &[Letter]) -> String {
    w.iter().map(|l| l.as_char()).collect()
}

/// A configuration `⟨u|v⟩`: the text left of the cursor and the text right of it.
///
/// The right part is stored reversed so that the symbol adjacent to the
/// cursor sits at the end of both vectors.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Config<S> {
    pub(crate) left: Vec<S>,
    pub(crate) right_rev: Vec<S>,
}

pub type Configuration = Config<Letter>;

impl<S: Clone> Config<S> {
    pub fn new(left: Vec<S>, right: Vec<S>) -> Config<S> {
        let mut right_rev = right;
        right_rev.reverse();
        Config { left, right_rev }
    }

    pub fn left(&self) -> &[S] {
        &self.left
    }

    pub fn right(&self) -> Vec<S> {
        self.right_rev.iter().rev().cloned().collect()
    }

    pub fn left_len(&self) -> usize {
        self.left.len()
    }

    pub fn right_len(&self) -> usize {
        self.right_rev.len()
    }

    /// `|u| + |v|`.
    pub fn size(&self) -> usize {
        self.left.len() + self.right_rev.len()
    }

    /// The word `uv`.
    pub fn word(&self) -> Vec<S> {
        let mut w = self.left.clone();
        w.extend(self.right_rev.iter().rev().cloned());
        w
    }

    /// Cursor-relative access: `-1` is the last letter of `u`, `+1` the
    /// first letter of `v`. Index 0 and out-of-range indices give `None`.
    pub fn at(&self, i: isize) -> Option<&S> {
        if i < 0 {
            let k = (-i) as usize;
            self.left.len().checked_sub(k).map(|j| &self.left[j])
        } else if i > 0 {
            let k = i as usize;
            self.right_rev.len().checked_sub(k).map(|j| &self.right_rev[j])
        } else {
            None
        }
    }

    /// All valid cursor-relative indices in left-to-right order.
    pub fn indices(&self) -> impl Iterator<Item = isize> {
        let l = self.left.len() as isize;
        let r = self.right_rev.len() as isize;
        (-l..0).chain(1..=r)
    }
}

impl<S> Config<S> {
    pub fn empty() -> Config<S> {
        Config {
            left: Vec::new(),
            right_rev: Vec::new(),
        }
    }
}

impl Configuration {
    pub fn from_strs(left: &str, right: &str) -> Result<Configuration, Error> {
        Ok(Config::new(word(left)?, word(right)?))
    }

    pub fn word_string(&self) -> String {
        word_string(&self.word())
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{}|{}⟩", word_string(&self.left), word_string(&self.right()))
    }
}

/// A keyboard `(T, F)` over a declared alphabet.
///
/// An automatic keyboard is represented as `(K, K)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Keyboard {
    alphabet: BTreeSet<Letter>,
    transient: BTreeSet<Key>,
    final_keys: BTreeSet<Key>,
}

impl Keyboard {
    pub fn new(
        alphabet: BTreeSet<Letter>,
        transient: BTreeSet<Key>,
        final_keys: BTreeSet<Key>,
    ) -> Result<Keyboard, Error> {
        for key in transient.iter().chain(final_keys.iter()) {
            for l in key.letters() {
                if !alphabet.contains(&l) {
                    return Err(Error::LetterNotInAlphabet {
                        letter: l.as_char(),
                        key: key.to_string(),
                    });
                }
            }
        }
        Ok(Keyboard {
            alphabet,
            transient,
            final_keys,
        })
    }

    pub fn automatic(alphabet: BTreeSet<Letter>, keys: BTreeSet<Key>) -> Result<Keyboard, Error> {
        Keyboard::new(alphabet, keys.clone(), keys)
    }

    /// Convenience constructor from compact key strings. The alphabet is the
    /// set of letters used by the keys plus `extra_letters`. `final_keys =
    /// None` builds an automatic keyboard.
    pub fn from_strs(transient: &[&str], final_keys: Option<&[&str]>, extra_letters: &str) -> Result<Keyboard, Error> {
        let parse = |ks: &[&str]| -> Result<BTreeSet<Key>, Error> { ks.iter().map(|s| s.parse()).collect() };
        let t = parse(transient)?;
        let f = match final_keys {
            Some(f) => parse(f)?,
            None => t.clone(),
        };
        let mut alphabet: BTreeSet<Letter> = word(extra_letters)?.into_iter().collect();
        for k in t.iter().chain(f.iter()) {
            alphabet.extend(k.letters());
        }
        Keyboard::new(alphabet, t, f)
    }

    pub fn alphabet(&self) -> &BTreeSet<Letter> {
        &self.alphabet
    }

    pub fn transient(&self) -> &BTreeSet<Key> {
        &self.transient
    }

    pub fn final_keys(&self) -> &BTreeSet<Key> {
        &self.final_keys
    }

    pub fn is_automatic(&self) -> bool {
        self.transient == self.final_keys
    }

    /// Every key of `T ∪ F`, each once.
    pub fn all_keys(&self) -> BTreeSet<&Key> {
        self.transient.iter().chain(self.final_keys.iter()).collect()
    }

    /// `‖K‖∞`, the maximal key length (0 for a keyboard without keys).
    pub fn norm_inf(&self) -> usize {
        self.all_keys().iter().map(|k| k.len()).max().unwrap_or(0)
    }

    /// `|K| = Σ (|t| + 1)` over `T ∪ F`.
    pub fn size_sum(&self) -> usize {
        self.all_keys().iter().map(|k| k.len() + 1).sum()
    }

    pub fn contains_op(&self, op: &AtomicOp) -> bool {
        self.all_keys().iter().any(|k| k.contains(op))
    }

    /// Same keys, different (larger) alphabet.
    pub fn with_alphabet(&self, alphabet: BTreeSet<Letter>) -> Result<Keyboard, Error> {
        Keyboard::new(alphabet, self.transient.clone(), self.final_keys.clone())
    }

    /// Applies `f` to every key of `T` and `F`, keeping automaticity.
    pub fn map_keys(&self, alphabet: BTreeSet<Letter>, mut f: impl FnMut(&Key) -> Key) -> Result<Keyboard, Error> {
        let t = self.transient.iter().map(&mut f).collect();
        let fk = self.final_keys.iter().map(&mut f).collect();
        Keyboard::new(alphabet, t, fk)
    }
}

impl fmt::Display for Keyboard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |s: &BTreeSet<Key>| s.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(", ");
        if self.is_automatic() {
            write!(f, "{{{}}}", list(&self.transient))
        } else {
            write!(f, "({{{}}}, {{{}}})", list(&self.transient), list(&self.final_keys))
        }
    }
}
