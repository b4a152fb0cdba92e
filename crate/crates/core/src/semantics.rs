//! Standard and effective semantics of atomic operations, keys and executions.
//!
//! Under the standard semantics `←` and `◄` on an empty left part, and `►` on
//! an empty right part, leave the configuration unchanged (edge effects).
//! The effective semantics forbids those steps instead.

use crate::error::Error;
use crate::model::{AtomicOp, Config, Configuration, Key, Keyboard, Op};

/// The step at which an effective execution got stuck.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Blocked(pub usize);

impl<S: Clone> Config<S> {
    /// Standard semantics of one operation. Returns whether the step had an effect.
    pub fn step(&mut self, op: &Op<S>) -> bool {
        match op {
            Op::Write(s) => {
                self.left.push(s.clone());
                true
            }
            Op::Backspace => self.left.pop().is_some(),
            Op::Left => match self.left.pop() {
                Some(s) => {
                    self.right_rev.push(s);
                    true
                }
                None => false,
            },
            Op::Right => match self.right_rev.pop() {
                Some(s) => {
                    self.left.push(s);
                    true
                }
                None => false,
            },
        }
    }

    /// `self · ops` under the standard semantics.
    pub fn apply_ops<'a>(&self, ops: impl IntoIterator<Item = &'a Op<S>>) -> Config<S>
    where
        S: 'a,
    {
        let mut c = self.clone();
        for op in ops {
            c.step(op);
        }
        c
    }

    /// `self ⊙ ops`, or the index of the first step without an applicable rule.
    pub fn apply_ops_effective<'a>(&self, ops: impl IntoIterator<Item = &'a Op<S>>) -> Result<Config<S>, Blocked>
    where
        S: 'a,
    {
        let mut c = self.clone();
        for (i, op) in ops.into_iter().enumerate() {
            if !c.step(op) {
                return Err(Blocked(i));
            }
        }
        Ok(c)
    }
}

pub fn apply(config: &Configuration, ops: &[AtomicOp]) -> Configuration {
    config.apply_ops(ops)
}

pub fn apply_effective(config: &Configuration, ops: &[AtomicOp]) -> Result<Configuration, Blocked> {
    config.apply_ops_effective(ops)
}

impl Configuration {
    pub fn press(&self, key: &Key) -> Configuration {
        self.apply_ops(key.ops())
    }
}

/// Runs a sequence of keys of `keyboard` from `start`. The accepting shape
/// `T*F` is not enforced here; see [`is_accepting_run`].
pub fn run(keyboard: &Keyboard, keys: &[Key], start: &Configuration) -> Result<Configuration, Error> {
    if keys.is_empty() {
        return Err(Error::EmptyExecution);
    }
    let mut c = start.clone();
    for k in keys {
        if !keyboard.transient().contains(k) && !keyboard.final_keys().contains(k) {
            return Err(Error::KeyNotInKeyboard(k.to_string()));
        }
        c = c.press(k);
    }
    Ok(c)
}

/// True iff the sequence is in `T*F`.
pub fn is_accepting_run(keyboard: &Keyboard, keys: &[Key]) -> bool {
    match keys.split_last() {
        None => false,
        Some((last, init)) => {
            keyboard.final_keys().contains(last) && init.iter().all(|k| keyboard.transient().contains(k))
        }
    }
}

/// Replays an accepting execution from `⟨ε|ε⟩` and returns the recognised word.
pub fn replay(keyboard: &Keyboard, keys: &[Key]) -> Option<String> {
    if !is_accepting_run(keyboard, keys) {
        return None;
    }
    run(keyboard, keys, &Configuration::empty())
        .ok()
        .map(|c| c.word_string())
}
