//! `►`-free keyboards as pushdown automata.
//!
//! The automaton keeps the left part of the configuration on its stack, top
//! at the cursor, and simulates keys symbol by symbol. A `◄` moves the top
//! letter to the right part, which never changes again, so the letter is read
//! right away; once a final key completes, the left part is popped and read.
//! The automaton thus reads the mirror of the recognised word.

mod grammar;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde_json::{json, Value};

use crate::class::classify;
use crate::error::Error;
use crate::model::{AtomicOp, Key, Keyboard, Letter, Op};

pub use grammar::{Derivation, Recognizer};

pub type StateId = usize;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum StackSym {
    Bottom,
    Letter(Letter),
}

impl fmt::Display for StackSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StackSym::Bottom => f.write_str("⊥"),
            StackSym::Letter(a) => write!(f, "{a}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum PdaState {
    /// A prefix of some key.
    Prefix(Vec<AtomicOp>),
    Fin,
}

impl fmt::Display for PdaState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PdaState::Prefix(p) => Key::new(p.clone()).fmt(f),
            PdaState::Fin => f.write_str("Fin"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Transition {
    pub from: StateId,
    pub read: Option<Letter>,
    pub pop: Option<StackSym>,
    pub push: Option<StackSym>,
    pub to: StateId,
    /// Set on the ε-moves leaving a complete key: the key just pressed.
    pub completes: Option<Key>,
}

/// Pushdown automaton accepting in a final state with an empty stack,
/// starting with `⊥` on the stack.
#[derive(Clone, Debug)]
pub struct Pda {
    states: Vec<PdaState>,
    initial: StateId,
    accepting: BTreeSet<StateId>,
    alphabet: BTreeSet<Letter>,
    transitions: Vec<Transition>,
}

impl Pda {
    pub fn states(&self) -> &[PdaState] {
        &self.states
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn accepting(&self) -> &BTreeSet<StateId> {
        &self.accepting
    }

    pub fn alphabet(&self) -> &BTreeSet<Letter> {
        &self.alphabet
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    /// Stack symbols: `⊥` then the letters.
    pub fn stack_alphabet(&self) -> Vec<StackSym> {
        std::iter::once(StackSym::Bottom)
            .chain(self.alphabet.iter().map(|&a| StackSym::Letter(a)))
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let name = |s: StateId| self.states[s].to_string();
        let sym = |s: Option<StackSym>| s.map(|s| s.to_string());
        let transitions: Vec<Value> = self
            .transitions
            .iter()
            .map(|t| {
                json!({
                    "from": name(t.from),
                    "read": t.read.map(|a| a.to_string()),
                    "pop": sym(t.pop),
                    "push": sym(t.push),
                    "to": name(t.to),
                })
            })
            .collect();
        json!({
            "states": (0..self.states.len()).map(name).collect::<Vec<_>>(),
            "initial": name(self.initial),
            "accepting": self.accepting.iter().map(|&s| name(s)).collect::<Vec<_>>(),
            "bottom": "⊥",
            "transitions": transitions,
        })
    }
}

/// Builds the mirror automaton of a `►`-free keyboard.
pub fn build_pda_blek(keyboard: &Keyboard) -> Result<Pda, Error> {
    let class = classify(keyboard);
    if class.has_right {
        return Err(Error::UnsupportedClass {
            operation: "build_pda_blek",
            found: class.name,
        });
    }
    let mut prefixes: BTreeSet<Vec<AtomicOp>> = BTreeSet::new();
    for k in keyboard.all_keys() {
        for i in 0..=k.len() {
            prefixes.insert(k.ops()[..i].to_vec());
        }
    }
    let mut states: Vec<PdaState> = prefixes.iter().cloned().map(PdaState::Prefix).collect();
    let ids: BTreeMap<Vec<AtomicOp>, StateId> = prefixes.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let fin = states.len();
    states.push(PdaState::Fin);
    let initial = ids[&Vec::new()];

    let letters: Vec<Letter> = keyboard.alphabet().iter().copied().collect();
    let mut transitions = Vec::new();
    let mut add = |from, read, pop, push, to, completes| {
        let t = Transition {
            from,
            read,
            pop,
            push,
            to,
            completes,
        };
        if !transitions.contains(&t) {
            transitions.push(t);
        }
    };

    for (p, &from) in &ids {
        let successors: BTreeSet<AtomicOp> = keyboard
            .all_keys()
            .iter()
            .filter(|k| k.len() > p.len() && k.ops().starts_with(p))
            .map(|k| k.ops()[p.len()])
            .collect();
        for op in successors {
            let mut next = p.clone();
            next.push(op);
            let to = ids[&next];
            match op {
                Op::Write(a) => add(from, None, None, Some(StackSym::Letter(a)), to, None),
                Op::Left | Op::Backspace => {
                    for &a in &letters {
                        let read = (op == Op::Left).then_some(a);
                        add(from, read, Some(StackSym::Letter(a)), None, to, None);
                    }
                    add(from, None, Some(StackSym::Bottom), Some(StackSym::Bottom), to, None);
                }
                Op::Right => unreachable!("rejected above"),
            }
        }
        let key = Key::new(p.clone());
        if keyboard.transient().contains(&key) {
            add(from, None, None, None, initial, Some(key.clone()));
        }
        if keyboard.final_keys().contains(&key) {
            add(from, None, None, None, fin, Some(key));
        }
    }
    for &a in &letters {
        add(fin, Some(a), Some(StackSym::Letter(a)), None, fin, None);
    }
    add(fin, None, Some(StackSym::Bottom), None, fin, None);

    Ok(Pda {
        states,
        initial,
        accepting: BTreeSet::from([fin]),
        alphabet: keyboard.alphabet().clone(),
        transitions,
    })
}

/// Whether the automaton accepts `word`.
pub fn pda_member(pda: &Pda, word: &[Letter]) -> bool {
    Recognizer::new(pda).derive(word).is_some()
}

/// The transitions of an accepting run on `word`, in order.
pub fn pda_run(pda: &Pda, word: &[Letter]) -> Option<Vec<usize>> {
    Recognizer::new(pda).derive(word).map(|d| d.transitions())
}

/// Membership for one `►`-free keyboard, reusable across words.
pub struct BlekMembership {
    alphabet: BTreeSet<Letter>,
    pda: Pda,
    recognizer: Recognizer,
}

impl BlekMembership {
    pub fn new(keyboard: &Keyboard) -> Result<BlekMembership, Error> {
        let pda = build_pda_blek(keyboard)?;
        let recognizer = Recognizer::new(&pda);
        Ok(BlekMembership {
            alphabet: keyboard.alphabet().clone(),
            pda,
            recognizer,
        })
    }

    pub fn pda(&self) -> &Pda {
        &self.pda
    }

    /// An accepting execution producing `word`, read off an accepting run
    /// of the mirror automaton on the reversed word.
    pub fn witness(&self, word: &str) -> Option<Vec<Key>> {
        let w = crate::model::word(word).ok()?;
        if w.iter().any(|l| !self.alphabet.contains(l)) {
            return None;
        }
        let rev: Vec<Letter> = w.into_iter().rev().collect();
        let run = self.recognizer.derive(&rev)?.transitions();
        Some(
            run.into_iter()
                .filter_map(|t| self.pda.transitions[t].completes.clone())
                .collect(),
        )
    }

    pub fn member(&self, word: &str) -> bool {
        self.witness(word).is_some()
    }
}

/// Membership in a `►`-free keyboard language.
pub fn blek_member(keyboard: &Keyboard, word: &str) -> Result<bool, Error> {
    Ok(BlekMembership::new(keyboard)?.member(word))
}

pub fn blek_witness(keyboard: &Keyboard, word: &str) -> Result<Option<Vec<Key>>, Error> {
    Ok(BlekMembership::new(keyboard)?.witness(word))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::word;
    use crate::oracle::enumerate_certified;
    use crate::semantics::replay;

    fn kb(t: &[&str], f: Option<&[&str]>) -> Keyboard {
        Keyboard::from_strs(t, f, "").unwrap()
    }

    fn all_words(alphabet: &BTreeSet<Letter>, max: usize) -> Vec<String> {
        let mut out = vec![String::new()];
        let mut layer = vec![String::new()];
        for _ in 0..max {
            layer = layer
                .iter()
                .flat_map(|w| alphabet.iter().map(move |a| format!("{w}{a}")))
                .collect();
            out.extend(layer.iter().cloned());
        }
        out
    }

    #[test]
    fn palindromes_with_centre() {
        let k = kb(&["aa◄", "bb◄"], Some(&["c", "cc"]));
        assert!(blek_member(&k, "abcba").unwrap());
        assert!(blek_member(&k, "abccba").unwrap());
        assert!(blek_member(&k, "c").unwrap());
        assert!(!blek_member(&k, "abba").unwrap());
        assert!(!blek_member(&k, "ab").unwrap());
        assert!(!blek_member(&k, "xyz").unwrap());
        let w = blek_witness(&k, "abcba").unwrap().unwrap();
        assert_eq!(replay(&k, &w).as_deref(), Some("abcba"));
    }

    #[test]
    fn state_count_and_export() {
        let k = kb(&["aa◄", "bb◄"], Some(&["c", "cc"]));
        let pda = build_pda_blek(&k).unwrap();
        // ε, a, aa, aa◄, b, bb, bb◄, c, cc, plus Fin.
        assert_eq!(pda.states().len(), 10);
        let j = pda.to_json();
        assert_eq!(j["bottom"], "⊥");
        assert_eq!(j["initial"], "ε");
        assert_eq!(j["accepting"], json!(["Fin"]));
        assert!(build_pda_blek(&kb(&["a►"], None)).is_err());
    }

    #[test]
    fn unary_stack_machine() {
        let k = kb(&["aa"], Some(&["a"]));
        let pda = build_pda_blek(&k).unwrap();
        for n in 0..8 {
            let w = word(&"a".repeat(n)).unwrap();
            assert_eq!(pda_member(&pda, &w), n % 2 == 1, "{n}");
        }
    }

    #[test]
    fn empty_word() {
        let k = kb(&["a"], Some(&["←"]));
        assert!(blek_member(&k, "").unwrap());
        assert!(blek_member(&k, "a").unwrap());
        assert!(!blek_member(&kb(&["a"], Some(&["a"])), "").unwrap());
        let dyck = kb(&["()◄", "◄"], None);
        assert!(blek_member(&dyck, "").unwrap());
    }

    #[test]
    fn agrees_with_oracle() {
        for k in [
            kb(&["aa◄", "bb◄"], Some(&["c", "cc"])),
            kb(&["()◄", "◄"], None),
            kb(&["←c", "←aca◄"], None),
            kb(&["a◄←b", "c"], Some(&["◄◄c"])),
        ] {
            let oracle = enumerate_certified(&k, 6, 12);
            let m = BlekMembership::new(&k).unwrap();
            for w in all_words(k.alphabet(), 6) {
                let got = m.witness(&w);
                assert_eq!(got.is_some(), oracle.contains(&w), "{k} {w:?}");
                if let Some(keys) = got {
                    assert_eq!(replay(&k, &keys).as_deref(), Some(w.as_str()));
                }
            }
        }
    }
}
