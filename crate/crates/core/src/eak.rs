//! Membership for keyboards without backspace.
//!
//! Without `←` no letter is ever erased, so along an execution every
//! configuration's word is a subword of the final word. A breadth-first
//! search restricted to such configurations is finite and exact.

use std::collections::{HashMap, VecDeque};

use crate::class::classify;
use crate::error::Error;
use crate::model::{Configuration, Key, Keyboard, Letter, Op};
use crate::semantics::replay;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum EakAnswer {
    /// A shortest accepting execution.
    Yes(Vec<Key>),
    No,
}

fn check_class(keyboard: &Keyboard, operation: &'static str) -> Result<(), Error> {
    let class = classify(keyboard);
    if class.has_backspace {
        return Err(Error::UnsupportedClass {
            operation,
            found: class.name,
        });
    }
    Ok(())
}

pub fn is_subword(small: &[Letter], big: &[Letter]) -> bool {
    let mut it = big.iter();
    small.iter().all(|c| it.any(|b| b == c))
}

pub fn eak_member(keyboard: &Keyboard, word: &str) -> Result<EakAnswer, Error> {
    check_class(keyboard, "eak_member")?;
    let Ok(target) = crate::model::word(word) else {
        return Ok(EakAnswer::No);
    };
    let transient: Vec<&Key> = keyboard.transient().iter().collect();
    let finals: Vec<&Key> = keyboard.final_keys().iter().collect();

    let mut nodes = vec![Configuration::empty()];
    let mut parent: Vec<Option<(usize, usize)>> = vec![None];
    let mut seen = HashMap::from([(Configuration::empty(), 0)]);
    let mut queue = VecDeque::from([0]);
    while let Some(idx) = queue.pop_front() {
        let config = nodes[idx].clone();
        if let Some(f) = finals.iter().find(|f| config.press(f).word() == target) {
            let mut keys = vec![(*f).clone()];
            let mut cur = idx;
            while let Some((p, k)) = parent[cur] {
                keys.push(transient[k].clone());
                cur = p;
            }
            keys.reverse();
            return Ok(EakAnswer::Yes(keys));
        }
        for (ki, key) in transient.iter().enumerate() {
            let next = config.press(key);
            if seen.contains_key(&next) || !is_subword(&next.word(), &target) {
                continue;
            }
            seen.insert(next.clone(), nodes.len());
            queue.push_back(nodes.len());
            nodes.push(next);
            parent.push(Some((idx, ki)));
        }
    }
    Ok(EakAnswer::No)
}

/// A word of the language with at least `n` occurrences of `a`, obtained by
/// repeating a transient key that writes `a` before one final key. `None`
/// when no transient key writes `a` or there is no final key: then every
/// word has at most `‖K‖∞` occurrences of `a`.
pub fn letter_iteration_check(keyboard: &Keyboard, a: Letter, n: usize) -> Result<Option<String>, Error> {
    check_class(keyboard, "letter_iteration_check")?;
    let count = |k: &Key| k.count(&Op::Write(a));
    let mut best: Option<(usize, String)> = None;
    for t in keyboard.transient().iter().filter(|t| count(t) > 0) {
        for f in keyboard.final_keys() {
            let k = n.saturating_sub(count(f)).div_ceil(count(t));
            let mut keys = vec![t.clone(); k];
            keys.push(f.clone());
            let w = replay(keyboard, &keys).expect("accepting shape");
            let better = match &best {
                None => true,
                Some((bk, bw)) => (k, w.chars().count(), &w) < (*bk, bw.chars().count(), bw),
            };
            if better {
                best = Some((k, w));
            }
        }
    }
    Ok(best.map(|(_, w)| w))
}
