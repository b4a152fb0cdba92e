//! Text format for keyboards.
//!
//! ```text
//! alphabet: a b c
//! [transient]
//! a a LA        # one key per line, space-separated tokens
//! EPS           # the empty key
//! [final]
//! BS c
//! ```
//!
//! A token is a single alphabet character or one of `BS` (`←`), `LA` (`◄`),
//! `RA` (`►`); `EPS` alone on a line is the empty key. `#` starts a comment.
//! A file without a `[final]` section describes an automatic keyboard.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::Error;
use crate::model::{AtomicOp, Key, Keyboard, Letter, Op};

const ENTRY_TOKENS: [&str; 3] = ["ENTER", "ENT", "■"];

#[derive(PartialEq)]
enum Section {
    Header,
    Transient,
    Final,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse(text: &str) -> Result<Keyboard, Error> {
    let mut alphabet: Option<BTreeSet<Letter>> = None;
    let mut transient = BTreeSet::new();
    let mut final_keys = BTreeSet::new();
    let mut seen_final = false;
    let mut section = Section::Header;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("alphabet:") {
            if alphabet.is_some() {
                return Err(parse_err(line_no, "duplicate alphabet line"));
            }
            if section != Section::Header {
                return Err(parse_err(line_no, "alphabet must come before the key sections"));
            }
            let mut set = BTreeSet::new();
            for tok in rest.split_whitespace() {
                let mut chars = tok.chars();
                let (Some(c), None) = (chars.next(), chars.next()) else {
                    return Err(parse_err(line_no, format!("letter {tok:?} is not a single character")));
                };
                let letter = Letter::new(c).map_err(|e| parse_err(line_no, e.to_string()))?;
                set.insert(letter);
            }
            alphabet = Some(set);
            continue;
        }
        match line {
            "[transient]" => {
                if section != Section::Header {
                    return Err(parse_err(line_no, "[transient] must be the first section"));
                }
                section = Section::Transient;
                continue;
            }
            "[final]" => {
                if section == Section::Final {
                    return Err(parse_err(line_no, "duplicate [final] section"));
                }
                section = Section::Final;
                seen_final = true;
                continue;
            }
            _ => {}
        }
        let Some(alphabet) = alphabet.as_ref() else {
            return Err(parse_err(line_no, "the first line must declare the alphabet"));
        };
        let key = parse_key(line, alphabet).map_err(|m| parse_err(line_no, m))?;
        match section {
            Section::Header => return Err(parse_err(line_no, "key outside of a section")),
            Section::Transient => {
                transient.insert(key);
            }
            Section::Final => {
                final_keys.insert(key);
            }
        }
    }

    let alphabet = alphabet.ok_or_else(|| parse_err(1, "missing alphabet line"))?;
    if !seen_final {
        final_keys = transient.clone();
    }
    Keyboard::new(alphabet, transient, final_keys)
}

fn parse_key(line: &str, alphabet: &BTreeSet<Letter>) -> Result<Key, String> {
    let tokens: Vec<&str> = line.split_whitespace().collect();
    if tokens == ["EPS"] {
        return Ok(Key::empty());
    }
    let mut ops = Vec::with_capacity(tokens.len());
    for tok in tokens {
        let op: AtomicOp = match tok {
            "BS" => Op::Backspace,
            "LA" => Op::Left,
            "RA" => Op::Right,
            "EPS" => return Err("EPS must be alone on its line".into()),
            t if ENTRY_TOKENS.contains(&t) => {
                return Err("the entry is not an operation: put the key in [final]".into())
            }
            t => {
                let mut chars = t.chars();
                match (chars.next(), chars.next()) {
                    (Some(c), None) => {
                        let l = Letter::new(c).map_err(|e| e.to_string())?;
                        if !alphabet.contains(&l) {
                            return Err(format!("letter {c:?} is not in the alphabet"));
                        }
                        Op::Write(l)
                    }
                    _ => return Err(format!("unknown token {t:?}")),
                }
            }
        };
        ops.push(op);
    }
    Ok(Key::new(ops))
}

fn key_line(key: &Key) -> String {
    if key.is_empty() {
        return "EPS".into();
    }
    key.ops()
        .iter()
        .map(|op| match op {
            Op::Write(l) => l.to_string(),
            Op::Backspace => "BS".into(),
            Op::Left => "LA".into(),
            Op::Right => "RA".into(),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Canonical text form; keys are written in their set order. Automatic
/// keyboards get no `[final]` section.
pub fn serialize(keyboard: &Keyboard) -> String {
    let mut out = String::new();
    let letters: Vec<String> = keyboard.alphabet().iter().map(|l| l.to_string()).collect();
    let _ = writeln!(out, "alphabet: {}", letters.join(" "));
    out.push_str("[transient]\n");
    for k in keyboard.transient() {
        out.push_str(&key_line(k));
        out.push('\n');
    }
    if keyboard.is_automatic() {
        return out;
    }
    out.push_str("[final]\n");
    for k in keyboard.final_keys() {
        out.push_str(&key_line(k));
        out.push('\n');
    }
    out
}
