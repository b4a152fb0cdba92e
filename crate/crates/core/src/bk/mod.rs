//! Arrow-free keyboards as finite automata.
//!
//! A BK key in normal form `←^m w` only changes the length of the text far
//! from the edges, so its effect on a length is `n · ←^m w = max(0, n - m) + |w|`.
//! The automaton tracks how many letters at the end of the text are still to
//! be erased by later keys.

pub mod nfa;

use std::collections::{BTreeSet, VecDeque};

use crate::class::classify;
use crate::error::Error;
use crate::model::{Key, Keyboard, Letter};
use crate::normalform::{normalize_key, NatKey};

pub use nfa::{Nfa, StateId, StateSet};

/// `n · ←^m w`.
pub fn nat_action(n: usize, key: &NatKey) -> usize {
    n.saturating_sub(key.erase) + key.write.len()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Reachability in the graph over `[0, bound]` whose edges are the effective
/// applications of a key.
fn graph_reachable(keys: &[NatKey], bound: usize, x: usize, target: usize) -> bool {
    if x > bound || target > bound {
        return false;
    }
    let mut seen = vec![false; bound + 1];
    seen[x] = true;
    let mut queue = VecDeque::from([x]);
    while let Some(s) = queue.pop_front() {
        if s == target {
            return true;
        }
        for k in keys {
            if k.erase <= s {
                let next = s - k.erase + k.write.len();
                if next <= bound && !seen[next] {
                    seen[next] = true;
                    queue.push_back(next);
                }
            }
        }
    }
    false
}

/// Whether a (possibly empty) sequence of keys leads from length `x` to
/// length `target` without ever erasing at the left edge.
///
/// `x` and `target` are expected in `[0, ‖K‖∞]`.
pub fn effective_reachable(keys: &[NatKey], x: usize, target: usize) -> bool {
    if x == target {
        return true;
    }
    let bound = keys.iter().map(NatKey::len).max().unwrap_or(0).max(x).max(target);
    let negative: Vec<&NatKey> = keys.iter().filter(|k| k.write.len() < k.erase).collect();
    let positive: Vec<&NatKey> = keys.iter().filter(|k| k.write.len() > k.erase).collect();

    if negative.iter().all(|k| k.write.len() > target) || positive.iter().all(|k| k.erase > x) {
        return graph_reachable(keys, bound, x, target);
    }
    let p = keys.iter().fold(0, |g, k| gcd(g, k.delta().unsigned_abs()));
    let diff = (target as isize - x as isize).unsigned_abs();
    p != 0 && diff.is_multiple_of(p)
}

fn arrow_free_keys(keys: &BTreeSet<Key>) -> Result<Vec<NatKey>, Error> {
    let set: BTreeSet<NatKey> = keys.iter().map(normalize_key).collect::<Result<_, _>>()?;
    Ok(set.into_iter().collect())
}

fn nfa_from_keys(keys: &[NatKey]) -> Nfa {
    let bound = keys.iter().map(NatKey::len).max().unwrap_or(0);
    let mut nfa = Nfa::new();
    let init = nfa.add_state("Init");
    let nums: Vec<StateId> = (0..=bound).map(|n| nfa.add_state(n.to_string())).collect();
    nfa.set_initial(init);
    nfa.set_accepting(nums[0]);
    for k in keys {
        for split in 0..=k.write.len() {
            let (v, w) = k.write.split_at(split);
            nfa.add_word_edge(init, v, nums[w.len()]);
            nfa.add_word_edge(nums[k.erase], v, nums[w.len()]);
        }
    }
    for a in 0..=bound {
        for b in 0..=bound {
            if a != b && effective_reachable(keys, a, b) {
                nfa.add_edge(nums[a], None, nums[b]);
            }
        }
    }
    nfa
}

/// Automaton for an automatic arrow-free keyboard. Keys are normalised first.
pub fn build_nfa_bk(keyboard: &Keyboard) -> Result<Nfa, Error> {
    let class = classify(keyboard);
    if class.has_left || class.has_right || class.has_entry {
        return Err(Error::UnsupportedClass {
            operation: "build_nfa_bk",
            found: class.name,
        });
    }
    Ok(nfa_from_keys(&arrow_free_keys(keyboard.transient())?))
}

/// Automaton for an arrow-free keyboard `(T, F)`: the union over final keys
/// `←^k u` of `(L_T / A^k)·u` and `{u}`, where `L_T` is the language of the
/// automatic keyboard `T`.
pub fn build_nfa_bek(keyboard: &Keyboard) -> Result<Nfa, Error> {
    let class = classify(keyboard);
    if class.has_left || class.has_right {
        return Err(Error::UnsupportedClass {
            operation: "build_nfa_bek",
            found: class.name,
        });
    }
    let base = nfa_from_keys(&arrow_free_keys(keyboard.transient())?);
    let mut parts = Vec::new();
    for f in arrow_free_keys(keyboard.final_keys())? {
        parts.push(base.quotient(f.erase).concat_word(&f.write));
        parts.push(Nfa::single_word(&f.write));
    }
    Ok(Nfa::union(&parts))
}

/// Universality of an automatic arrow-free keyboard: every word of length at
/// most `‖K‖∞ + 1` is checked. Returns the shortest rejected word otherwise.
pub fn bk_universal(keyboard: &Keyboard) -> Result<Result<(), String>, Error> {
    let nfa = build_nfa_bk(keyboard)?;
    let alphabet: Vec<Letter> = keyboard.alphabet().iter().copied().collect();
    let bound = keyboard.norm_inf() + 1;
    let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
    for len in 0..=bound {
        for w in &layer {
            if !nfa.accepts(w) {
                return Ok(Err(crate::model::word_string(w)));
            }
        }
        if len < bound {
            layer = layer
                .iter()
                .flat_map(|w| {
                    alphabet.iter().map(move |&a| {
                        let mut w2 = w.clone();
                        w2.push(a);
                        w2
                    })
                })
                .collect();
        }
    }
    Ok(Ok(()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::word;
    use crate::oracle::{enumerate, enumerate_certified};
    use rand::{Rng, SeedableRng};

    fn nk(m: usize, w: &str) -> NatKey {
        NatKey::new(m, word(w).unwrap())
    }

    fn kb(t: &[&str], f: Option<&[&str]>, extra: &str) -> Keyboard {
        Keyboard::from_strs(t, f, extra).unwrap()
    }

    /// Breadth-first search over lengths up to `cap`.
    fn value_oracle(keys: &[NatKey], x: usize, target: usize, cap: usize) -> bool {
        graph_reachable(keys, cap, x, target)
    }

    #[test]
    fn nat_actions() {
        assert_eq!(nat_action(5, &nk(2, "abc")), 6);
        assert_eq!(nat_action(1, &nk(3, "b")), 1);
        assert_eq!(nat_action(0, &nk(0, "ab")), 2);
    }

    #[test]
    fn figure_reachability() {
        let keys = [nk(1, "abc"), nk(4, "bb")];
        assert!(effective_reachable(&keys, 2, 4));
        assert!(effective_reachable(&keys, 4, 2));
        assert!(!effective_reachable(&keys, 0, 1));
        for x in 0..=4 {
            assert!(effective_reachable(&keys, x, x));
        }
    }

    #[test]
    fn reachability_matches_value_search() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let n = rng.gen_range(1..=3);
            let keys: Vec<NatKey> = (0..n)
                .map(|_| {
                    let len = rng.gen_range(0..=4);
                    let m = rng.gen_range(0..=len);
                    nk(m, &"a".repeat(len - m))
                })
                .collect();
            let bound = keys.iter().map(NatKey::len).max().unwrap();
            for x in 0..=bound {
                for y in 0..=bound {
                    assert_eq!(
                        effective_reachable(&keys, x, y),
                        value_oracle(&keys, x, y, 5000),
                        "{keys:?} {x} {y}"
                    );
                }
            }
        }
    }

    #[test]
    fn figure_keyboard_language() {
        let k = kb(&["←abc", "←←←←bb"], None, "");
        let nfa = build_nfa_bk(&k).unwrap();
        assert!(nfa.accepts_str("babababb"));
        assert!(nfa.accepts_str("abc"));
        assert!(!nfa.accepts_str("ab"));
        let oracle = enumerate_certified(&k, 10, 14);
        assert_eq!(nfa.words_up_to(k.alphabet(), 10), oracle.words());
    }

    #[test]
    fn small_languages() {
        let aa = kb(&["aa"], None, "");
        let nfa = build_nfa_bk(&aa).unwrap();
        let expected: BTreeSet<String> = (1..=5).map(|i| "aa".repeat(i)).collect();
        assert_eq!(nfa.words_up_to(aa.alphabet(), 10), expected);

        let eps = Keyboard::automatic(BTreeSet::new(), BTreeSet::from([Key::empty()])).unwrap();
        let nfa = build_nfa_bk(&eps).unwrap();
        assert!(nfa.accepts(&[]));

        assert!(build_nfa_bk(&kb(&["aa"], Some(&["a"]), "")).is_err());
        assert!(build_nfa_bk(&kb(&["a◄"], None, "")).is_err());
    }

    #[test]
    fn bek_languages() {
        for (t, f, max) in [
            (&["aa"][..], &["b", "bb"][..], 9),
            (&["aa"], &["a"], 9),
            (&["b"], &["a"], 6),
            (&["←abc", "b"], &["←←c", "a"], 7),
            (&[], &["ab", "←c"], 4),
        ] {
            let k = kb(t, Some(f), "");
            let nfa = build_nfa_bek(&k).unwrap();
            let oracle = enumerate_certified(&k, max, max + 8);
            assert_eq!(nfa.words_up_to(k.alphabet(), max), oracle.words(), "{k}");
        }
        let odd = build_nfa_bek(&kb(&["aa"], Some(&["a"]), "")).unwrap();
        assert_eq!(odd.universal(&word("a").unwrap().into_iter().collect()), Err("".into()));
    }

    #[test]
    fn universality() {
        assert_eq!(bk_universal(&kb(&["a", "b", ""], None, "")).unwrap(), Ok(()));
        assert_eq!(bk_universal(&kb(&["aa"], None, "")).unwrap(), Err("".into()));
        assert_eq!(bk_universal(&kb(&["aa", ""], None, "")).unwrap(), Err("a".into()));
        assert_eq!(bk_universal(&kb(&["←a", "←b"], None, "")).unwrap(), Err("".into()));
    }

    #[test]
    fn random_bk_against_oracle() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let ops = ['a', 'b', '←'];
        for _ in 0..40 {
            let n = rng.gen_range(1..=3);
            let keys: Vec<String> = (0..n)
                .map(|_| {
                    let len = rng.gen_range(0..=4);
                    (0..len).map(|_| ops[rng.gen_range(0..3)]).collect()
                })
                .collect();
            let refs: Vec<&str> = keys.iter().map(String::as_str).collect();
            let k = kb(&refs, None, "ab");
            let nfa = build_nfa_bk(&k).unwrap();
            let sample = enumerate(&k, 6, 6 + 2 * k.norm_inf());
            let accepted = nfa.words_up_to(k.alphabet(), 6);
            assert!(sample.words().is_subset(&accepted), "{k}");
            for w in accepted {
                assert!(
                    matches!(
                        crate::oracle::member_semidecide(&k, &w, 64),
                        crate::oracle::SemiDecision::Yes(_)
                    ),
                    "{k} {w}"
                );
            }
        }
    }
}
