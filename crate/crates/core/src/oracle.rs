//! Brute-force exploration of a keyboard's configurations and language.
//!
//! Everything else in the crate is checked against this module. Configurations
//! larger than a size cap are discarded, so results are exact only when the
//! cap is certified (see [`LanguageSample::complete`]).

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::model::{Configuration, Key, Keyboard, Op};

/// A finite slice of a keyboard language.
#[derive(Clone, Debug)]
pub struct LanguageSample {
    words: BTreeMap<String, Vec<Key>>,
    pub max_len: usize,
    pub size_cap: usize,
    /// No execution through a configuration larger than `size_cap` can
    /// produce a word of length at most `max_len` that is missing here.
    pub complete: bool,
}

impl LanguageSample {
    pub fn contains(&self, w: &str) -> bool {
        self.words.contains_key(w)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> BTreeSet<String> {
        self.words.keys().cloned().collect()
    }

    /// Words ordered by length, then lexicographically.
    pub fn sorted_words(&self) -> Vec<String> {
        let mut v: Vec<String> = self.words.keys().cloned().collect();
        v.sort_by(|a, b| shortlex(a, b));
        v
    }

    /// A shortest (in key presses before the final key) accepting execution.
    pub fn witness(&self, w: &str) -> Option<&[Key]> {
        self.words.get(w).map(|v| v.as_slice())
    }
}

pub fn shortlex(a: &str, b: &str) -> std::cmp::Ordering {
    a.chars().count().cmp(&b.chars().count()).then_with(|| a.cmp(b))
}

/// Every key writes at least as many letters as it has backspaces, so sizes
/// never decrease along an execution.
pub fn sizes_nondecreasing(keyboard: &Keyboard) -> bool {
    keyboard
        .all_keys()
        .iter()
        .all(|k| k.letter_count() >= k.count(&Op::Backspace))
}

pub fn backspace_free(keyboard: &Keyboard) -> bool {
    !keyboard.contains_op(&Op::Backspace)
}

/// `max_len + 2‖K‖∞`.
pub fn default_cap(keyboard: &Keyboard, max_len: usize) -> usize {
    max_len + 2 * keyboard.norm_inf()
}

/// Breadth-first exploration of the configurations reachable with transient
/// keys, with parent links for witness reconstruction.
struct Exploration {
    nodes: Vec<Configuration>,
    parent: Vec<Option<(usize, usize)>>,
}

impl Exploration {
    fn path(&self, mut idx: usize, keys: &[&Key]) -> Vec<Key> {
        let mut out = Vec::new();
        while let Some((p, k)) = self.parent[idx] {
            out.push(keys[k].clone());
            idx = p;
        }
        out.reverse();
        out
    }
}

/// Runs the BFS, calling `visit` on every node in order. `visit` returns
/// `true` to stop early. `keep` filters successors.
fn explore(
    transient: &[&Key],
    cap: usize,
    keep: impl Fn(&Configuration) -> bool,
    mut visit: impl FnMut(usize, &Exploration) -> bool,
) -> Exploration {
    let mut ex = Exploration {
        nodes: vec![Configuration::empty()],
        parent: vec![None],
    };
    let mut seen: HashMap<Configuration, usize> = HashMap::new();
    seen.insert(Configuration::empty(), 0);
    let mut head = 0;
    while head < ex.nodes.len() {
        if visit(head, &ex) {
            break;
        }
        let current = ex.nodes[head].clone();
        for (ki, key) in transient.iter().enumerate() {
            let next = current.press(key);
            if next.size() > cap || !keep(&next) || seen.contains_key(&next) {
                continue;
            }
            seen.insert(next.clone(), ex.nodes.len());
            ex.nodes.push(next);
            ex.parent.push(Some((head, ki)));
        }
        head += 1;
    }
    ex
}

/// Configurations reachable from `⟨ε|ε⟩` with transient keys, never going
/// through a configuration of size above `size_cap`.
pub fn reachable_configs(keyboard: &Keyboard, size_cap: usize) -> BTreeSet<Configuration> {
    let transient: Vec<&Key> = keyboard.transient().iter().collect();
    explore(&transient, size_cap, |_| true, |_, _| false)
        .nodes
        .into_iter()
        .collect()
}

/// Words of length at most `max_len` recognised through configurations of
/// size at most `size_cap`. Marked complete when sizes cannot decrease along
/// an execution (no backspace, or never more backspaces than letters in a
/// key) and `size_cap ≥ max_len`.
pub fn enumerate(keyboard: &Keyboard, max_len: usize, size_cap: usize) -> LanguageSample {
    let complete = sizes_nondecreasing(keyboard) && size_cap >= max_len;
    enumerate_inner(keyboard, max_len, size_cap, complete)
}

/// Same as [`enumerate`], for callers that know `size_cap` is large enough.
pub fn enumerate_certified(keyboard: &Keyboard, max_len: usize, size_cap: usize) -> LanguageSample {
    enumerate_inner(keyboard, max_len, size_cap, true)
}

fn enumerate_inner(keyboard: &Keyboard, max_len: usize, size_cap: usize, complete: bool) -> LanguageSample {
    let transient: Vec<&Key> = keyboard.transient().iter().collect();
    let finals: Vec<&Key> = keyboard.final_keys().iter().collect();
    let mut words: BTreeMap<String, Vec<Key>> = BTreeMap::new();
    explore(
        &transient,
        size_cap,
        |_| true,
        |idx, ex| {
            let c = &ex.nodes[idx];
            for f in &finals {
                let out = c.press(f);
                if out.size() > max_len || out.size() > size_cap {
                    continue;
                }
                let w = out.word_string();
                words.entry(w).or_insert_with(|| {
                    let mut path = ex.path(idx, &transient);
                    path.push((*f).clone());
                    path
                });
            }
            false
        },
    );
    LanguageSample {
        words,
        max_len,
        size_cap,
        complete,
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SemiDecision {
    /// An accepting execution producing the word.
    Yes(Vec<Key>),
    /// Not a refutation unless the cap is certified.
    NotFoundWithinCap,
}

fn is_subword(small: &[char], big: &[char]) -> bool {
    let mut it = big.iter();
    small.iter().all(|c| it.any(|b| b == c))
}

/// Searches for an accepting execution producing `word`, never going
/// through configurations larger than `size_cap`.
///
/// The search runs with growing caps so that short witnesses are found
/// without exploring the whole capped space. When sizes cannot decrease
/// along an execution, configurations larger than the word are pruned, and
/// for backspace-free keyboards so are those whose word is not a subword of
/// the target.
pub fn member_semidecide(keyboard: &Keyboard, word: &str, size_cap: usize) -> SemiDecision {
    let target: Vec<char> = word.chars().collect();
    let monotone = sizes_nondecreasing(keyboard);
    let no_backspace = backspace_free(keyboard);
    let hard_cap = if monotone { size_cap.min(target.len()) } else { size_cap };
    let transient: Vec<&Key> = keyboard.transient().iter().collect();
    let finals: Vec<&Key> = keyboard.final_keys().iter().collect();

    let mut cap = (target.len() + keyboard.norm_inf()).min(hard_cap);
    loop {
        let mut found = None;
        explore(
            &transient,
            cap,
            |c| {
                !no_backspace || {
                    let w: Vec<char> = c.word().iter().map(|l| l.as_char()).collect();
                    is_subword(&w, &target)
                }
            },
            |idx, ex| {
                for f in &finals {
                    let out = ex.nodes[idx].press(f);
                    if out.size() <= cap && out.word_string() == word {
                        let mut path = ex.path(idx, &transient);
                        path.push((*f).clone());
                        found = Some(path);
                        return true;
                    }
                }
                false
            },
        );
        if let Some(path) = found {
            return SemiDecision::Yes(path);
        }
        if cap >= hard_cap {
            return SemiDecision::NotFoundWithinCap;
        }
        cap = (cap * 2).max(1).min(hard_cap);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::replay;

    fn kb(t: &[&str], f: Option<&[&str]>) -> Keyboard {
        Keyboard::from_strs(t, f, "").unwrap()
    }

    fn cfgs(list: &[(&str, &str)]) -> BTreeSet<Configuration> {
        list.iter()
            .map(|(u, v)| Configuration::from_strs(u, v).unwrap())
            .collect()
    }

    #[test]
    fn reachable_examples() {
        assert_eq!(
            reachable_configs(&kb(&["aa"], None), 4),
            cfgs(&[("", ""), ("aa", ""), ("aaaa", "")])
        );
        assert_eq!(
            reachable_configs(&kb(&["aa◄"], None), 4),
            cfgs(&[("", ""), ("a", "a"), ("aa", "aa")])
        );
        assert_eq!(reachable_configs(&kb(&["a←", "b"], None), 0), cfgs(&[("", "")]));
    }

    #[test]
    fn odd_blocks() {
        let s = enumerate(&kb(&["aa"], Some(&["a"])), 7, 9);
        assert_eq!(s.sorted_words(), vec!["a", "aaa", "aaaaa", "aaaaaaa"]);
        assert!(s.complete);
    }

    #[test]
    fn even_palindromes() {
        let s = enumerate(&kb(&["aa◄", "bb◄"], None), 4, 6);
        assert_eq!(s.sorted_words(), vec!["aa", "bb", "aaaa", "abba", "baab", "bbbb"]);
    }

    #[test]
    fn decomposition_keyboard_short_words() {
        let s = enumerate(&kb(&["←a◊♦", "←←b◊♦$"], None), 4, 8);
        assert_eq!(s.sorted_words(), vec!["a◊♦", "b◊♦$"]);
        assert!(s.complete);
    }

    #[test]
    fn witnesses_replay() {
        let k = kb(&["←abc", "←←←←bb"], None);
        let s = enumerate(&k, 8, 12);
        assert!(!s.complete);
        for w in s.words() {
            assert_eq!(replay(&k, s.witness(&w).unwrap()).as_deref(), Some(w.as_str()));
        }
    }

    #[test]
    fn semidecide() {
        let k = kb(&["aa"], Some(&["a"]));
        let aa: Key = "aa".parse().unwrap();
        let a: Key = "a".parse().unwrap();
        assert_eq!(member_semidecide(&k, "aaa", 5), SemiDecision::Yes(vec![aa, a]));
        assert_eq!(member_semidecide(&k, "aa", 8), SemiDecision::NotFoundWithinCap);
        let t: Key = "a◄◄►b".parse().unwrap();
        assert_eq!(
            member_semidecide(&kb(&["a◄◄►b"], None), "abba", 8),
            SemiDecision::Yes(vec![t.clone(), t])
        );
        let fig = kb(&["←abc", "←←←←bb"], None);
        match member_semidecide(&fig, "babababb", 14) {
            SemiDecision::Yes(w) => assert_eq!(replay(&fig, &w).as_deref(), Some("babababb")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn cap_monotonicity() {
        let k = kb(&["←abc", "←←←←bb"], None);
        let mut prev = BTreeSet::new();
        for cap in 6..14 {
            let s = enumerate(&k, 6, cap).words();
            assert!(prev.is_subset(&s));
            prev = s;
        }
    }
}
