//! Membership and universality, dispatched on the keyboard class.

use serde_json::{json, Value};

use crate::bk::{bk_universal, build_nfa_bek, build_nfa_bk, Nfa, StateId};
use crate::blek::BlekMembership;
use crate::class::{classify, ClassName};
use crate::eak::{eak_member, EakAnswer};
use crate::error::Error;
use crate::model::{word, Key, Keyboard, Letter};
use crate::oracle::{default_cap, member_semidecide, SemiDecision};
use crate::semantics::replay;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Verdict {
    Yes,
    No,
    Unknown(String),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Witness {
    /// An accepting execution.
    Execution(Vec<Key>),
    /// An accepting run of the keyboard's automaton.
    NfaPath { states: Vec<StateId>, names: Vec<String> },
    /// A word outside the language.
    Counterexample(String),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Decision {
    pub verdict: Verdict,
    pub procedure: &'static str,
    pub witness: Option<Witness>,
}

impl Decision {
    fn new(verdict: Verdict, procedure: &'static str, witness: Option<Witness>) -> Decision {
        Decision {
            verdict,
            procedure,
            witness,
        }
    }

    pub fn is_yes(&self) -> bool {
        self.verdict == Verdict::Yes
    }

    pub fn is_no(&self) -> bool {
        self.verdict == Verdict::No
    }

    pub fn to_json(&self) -> Value {
        let (verdict, reason) = match &self.verdict {
            Verdict::Yes => ("yes", None),
            Verdict::No => ("no", None),
            Verdict::Unknown(r) => ("unknown", Some(r.clone())),
        };
        let witness = match &self.witness {
            None => Value::Null,
            Some(Witness::Execution(keys)) => json!({
                "execution": keys.iter().map(|k| k.to_string()).collect::<Vec<_>>(),
            }),
            Some(Witness::NfaPath { names, .. }) => json!({ "nfa_path": names }),
            Some(Witness::Counterexample(w)) => json!({ "counterexample": w }),
        };
        json!({
            "verdict": verdict,
            "reason": reason,
            "procedure": self.procedure,
            "witness": witness,
        })
    }
}

enum Engine {
    Split,
    Nfa(Nfa),
    Pda(Box<BlekMembership>),
    Search,
    Oracle,
}

/// Membership decisions for one keyboard; automata are built once.
pub struct Decider<'a> {
    keyboard: &'a Keyboard,
    class: ClassName,
    engine: Engine,
}

impl<'a> Decider<'a> {
    pub fn new(keyboard: &'a Keyboard) -> Result<Decider<'a>, Error> {
        use ClassName::*;
        let class = classify(keyboard).name;
        let engine = match class {
            MK | EK => Engine::Split,
            BK => Engine::Nfa(build_nfa_bk(keyboard)?),
            BEK => Engine::Nfa(build_nfa_bek(keyboard)?),
            LK | BLK | LEK | BLEK => Engine::Pda(Box::new(BlekMembership::new(keyboard)?)),
            AK | EAK => Engine::Search,
            BAK | BEAK => Engine::Oracle,
        };
        Ok(Decider {
            keyboard,
            class,
            engine,
        })
    }

    pub fn class(&self) -> ClassName {
        self.class
    }

    pub fn procedure(&self) -> &'static str {
        match self.engine {
            Engine::Split => "letter-key split",
            Engine::Nfa(_) => "nfa",
            Engine::Pda(_) => "mirror pda",
            Engine::Search => "subword search",
            Engine::Oracle => "bounded oracle",
        }
    }

    pub fn member(&self, w: &str) -> Decision {
        let procedure = self.procedure();
        let letters = match word(w) {
            Ok(l) if l.iter().all(|a| self.keyboard.alphabet().contains(a)) => l,
            _ => return Decision::new(Verdict::No, procedure, None),
        };
        let from_keys = |keys: Option<Vec<Key>>| match keys {
            Some(k) => Decision::new(Verdict::Yes, procedure, Some(Witness::Execution(k))),
            None => Decision::new(Verdict::No, procedure, None),
        };
        match &self.engine {
            Engine::Split => from_keys(split_member(self.keyboard, &letters)),
            Engine::Nfa(nfa) => match nfa.accepting_path(&letters) {
                Some(states) => {
                    let names = states.iter().map(|&s| nfa.name(s).to_string()).collect();
                    Decision::new(Verdict::Yes, procedure, Some(Witness::NfaPath { states, names }))
                }
                None => Decision::new(Verdict::No, procedure, None),
            },
            Engine::Pda(m) => from_keys(m.witness(w)),
            Engine::Search => match eak_member(self.keyboard, w).expect("class checked") {
                EakAnswer::Yes(keys) => from_keys(Some(keys)),
                EakAnswer::No => from_keys(None),
            },
            Engine::Oracle => {
                let cap = default_cap(self.keyboard, letters.len());
                match member_semidecide(self.keyboard, w, cap) {
                    SemiDecision::Yes(keys) => from_keys(Some(keys)),
                    SemiDecision::NotFoundWithinCap => Decision::new(
                        Verdict::Unknown(format!("no execution through configurations of size ≤ {cap}")),
                        procedure,
                        None,
                    ),
                }
            }
        }
    }

    /// Re-checks the witness of a positive decision for `w`.
    pub fn validate(&self, decision: &Decision, w: &str) -> bool {
        match (&decision.witness, &self.engine) {
            (Some(Witness::Execution(keys)), _) => replay(self.keyboard, keys).as_deref() == Some(w),
            (Some(Witness::NfaPath { states, .. }), Engine::Nfa(nfa)) => match word(w) {
                Ok(l) => nfa.check_path(states, &l),
                Err(_) => false,
            },
            _ => false,
        }
    }
}

/// Membership for keys made of letters only: `w = x·f` with `x ∈ T*`.
fn split_member(keyboard: &Keyboard, w: &[Letter]) -> Option<Vec<Key>> {
    let as_word = |k: &Key| -> Vec<Letter> { k.letters().collect() };
    let transient: Vec<(&Key, Vec<Letter>)> = keyboard.transient().iter().map(|k| (k, as_word(k))).collect();
    let n = w.len();
    let mut reach: Vec<Option<Option<(usize, usize)>>> = vec![None; n + 1];
    reach[0] = Some(None);
    for i in 0..=n {
        if reach[i].is_none() {
            continue;
        }
        for (ti, (_, tw)) in transient.iter().enumerate() {
            let j = i + tw.len();
            if j <= n && j > i && reach[j].is_none() && w[i..j] == tw[..] {
                reach[j] = Some(Some((i, ti)));
            }
        }
    }
    for f in keyboard.final_keys() {
        let fw = as_word(f);
        if fw.len() > n || w[n - fw.len()..] != fw[..] {
            continue;
        }
        let mut i = n - fw.len();
        if reach[i].is_none() {
            continue;
        }
        let mut keys = vec![f.clone()];
        while let Some(Some((p, ti))) = reach[i] {
            keys.push(transient[ti].0.clone());
            i = p;
        }
        keys.reverse();
        return Some(keys);
    }
    None
}

pub fn member(keyboard: &Keyboard, w: &str) -> Result<Decision, Error> {
    Ok(Decider::new(keyboard)?.member(w))
}

pub fn universal(keyboard: &Keyboard) -> Result<Decision, Error> {
    use ClassName::*;
    let class = classify(keyboard).name;
    let counter = |w: String, procedure| Decision::new(Verdict::No, procedure, Some(Witness::Counterexample(w)));
    let yes = |procedure| Decision::new(Verdict::Yes, procedure, None);
    Ok(match class {
        MK => {
            let procedure = "letters and ε among the keys";
            if !keyboard.transient().contains(&Key::empty()) {
                counter(String::new(), procedure)
            } else if let Some(a) = keyboard
                .alphabet()
                .iter()
                .find(|a| !keyboard.transient().contains(&Key::new(vec![crate::Op::Write(**a)])))
            {
                counter(a.to_string(), procedure)
            } else {
                yes(procedure)
            }
        }
        BK => {
            let procedure = "bounded word check";
            match bk_universal(keyboard)? {
                Ok(()) => yes(procedure),
                Err(w) => counter(w, procedure),
            }
        }
        EK | BEK => {
            let procedure = "nfa subset search";
            match build_nfa_bek(keyboard)?.universal(keyboard.alphabet()) {
                Ok(()) => yes(procedure),
                Err(w) => counter(w, procedure),
            }
        }
        _ => Decision::new(
            Verdict::Unknown(format!("no universality procedure for {class}")),
            "none",
            None,
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::enumerate;

    fn kb(t: &[&str], f: Option<&[&str]>, extra: &str) -> Keyboard {
        Keyboard::from_strs(t, f, extra).unwrap()
    }

    #[test]
    fn member_dispatch() {
        let odd = kb(&["aa"], Some(&["a"]), "");
        let d = member(&odd, "aaaaa").unwrap();
        assert!(d.is_yes());
        assert_eq!(d.procedure, "letter-key split");
        assert_eq!(
            d.witness,
            Some(Witness::Execution(vec![
                "aa".parse().unwrap(),
                "aa".parse().unwrap(),
                "a".parse().unwrap()
            ]))
        );
        assert!(member(&odd, "aaaa").unwrap().is_no());

        let pal = kb(&["aa◄", "bb◄"], Some(&["c", "cc"]), "");
        let d = member(&pal, "abcba").unwrap();
        assert!(d.is_yes());
        assert_eq!(d.procedure, "mirror pda");

        let fig = kb(&["←abc", "←←←←bb"], None, "");
        let decider = Decider::new(&fig).unwrap();
        let d = decider.member("babababb");
        assert!(d.is_yes());
        assert!(decider.validate(&d, "babababb"));
        assert!(!decider.validate(&d, "abc"));

        let aak = kb(&["a◄◄►b"], None, "");
        assert_eq!(member(&aak, "abba").unwrap().procedure, "subword search");
        assert!(member(&aak, "x").unwrap().is_no());
    }

    #[test]
    fn beak_never_answers_no() {
        let k = kb(&["a◄►←b", "←"], Some(&["b►"]), "");
        let sample = enumerate(&k, 4, 10);
        let decider = Decider::new(&k).unwrap();
        assert_eq!(decider.class(), ClassName::BEAK);
        for w in ["", "b", "ab", "bb", "aab", "ba"] {
            let d = decider.member(w);
            assert!(!d.is_no());
            if d.is_yes() {
                assert!(decider.validate(&d, w));
            }
            if sample.contains(w) {
                assert!(d.is_yes());
            }
        }
    }

    #[test]
    fn split_agrees_with_oracle() {
        for k in [
            kb(&["aa"], Some(&["b", "bb"]), ""),
            kb(&["ab", "bc"], None, ""),
            kb(&["", "a"], Some(&["", "b"]), ""),
        ] {
            let sample = enumerate(&k, 7, 7);
            let d = Decider::new(&k).unwrap();
            let mut layer = vec![String::new()];
            for _ in 0..=7 {
                for w in &layer {
                    let dec = d.member(w);
                    assert_eq!(dec.is_yes(), sample.contains(w), "{k} {w}");
                    if dec.is_yes() {
                        assert!(d.validate(&dec, w));
                    }
                }
                layer = layer
                    .iter()
                    .flat_map(|w| k.alphabet().iter().map(move |a| format!("{w}{a}")))
                    .collect();
            }
        }
    }

    #[test]
    fn universality() {
        assert!(universal(&kb(&["a", "b", ""], None, "")).unwrap().is_yes());
        let d = universal(&kb(&["a", "b"], None, "")).unwrap();
        assert_eq!(d.witness, Some(Witness::Counterexample(String::new())));
        let d = universal(&kb(&["a", ""], None, "b")).unwrap();
        assert_eq!(d.witness, Some(Witness::Counterexample("b".into())));
        assert!(matches!(
            universal(&kb(&["aa◄"], None, "")).unwrap().verdict,
            Verdict::Unknown(_)
        ));
        let d = universal(&kb(&["aa"], Some(&["a", ""]), "")).unwrap();
        assert!(d.is_yes());
        let d = universal(&kb(&["aa"], Some(&["a"]), "")).unwrap();
        assert_eq!(d.witness, Some(Witness::Counterexample(String::new())));
        assert!(universal(&kb(&["←a", "a", "b", ""], None, "")).unwrap().is_yes());
    }
}
