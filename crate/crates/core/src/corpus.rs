//! Example keyboards with executable descriptions of their languages.

use std::sync::OnceLock;

use regex::Regex;
use serde::Serialize;

use crate::class::{classify, ClassName};
use crate::decide::Decider;
use crate::dsl;
use crate::model::Keyboard;
use crate::oracle::{default_cap, enumerate, enumerate_certified, LanguageSample};

pub struct CorpusEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub dsl: &'static str,
    pub class: ClassName,
    pub predicate: fn(&str) -> bool,
    pub max_len: usize,
    /// Size cap known to make the enumeration complete, when the oracle
    /// cannot certify one by itself.
    pub certified_cap: Option<usize>,
}

impl CorpusEntry {
    pub fn keyboard(&self) -> Keyboard {
        dsl::parse(self.dsl).expect("corpus keyboards parse")
    }

    pub fn cap(&self) -> usize {
        self.certified_cap
            .unwrap_or_else(|| default_cap(&self.keyboard(), self.max_len))
    }

    pub fn sample(&self) -> LanguageSample {
        self.sample_up_to(self.max_len)
    }

    pub fn sample_up_to(&self, max_len: usize) -> LanguageSample {
        let k = self.keyboard();
        match self.certified_cap {
            Some(cap) => enumerate_certified(&k, max_len, cap.max(max_len)),
            None => enumerate(&k, max_len, default_cap(&k, max_len)),
        }
    }
}

fn only(w: &str, letters: &str) -> bool {
    w.chars().all(|c| letters.contains(c))
}

fn is_palindrome(w: &str) -> bool {
    w.chars().eq(w.chars().rev())
}

fn a2_plus(w: &str) -> bool {
    !w.is_empty() && only(w, "a") && w.len().is_multiple_of(2)
}

fn odd_a(w: &str) -> bool {
    only(w, "a") && w.len() % 2 == 1
}

fn even_palindrome(w: &str) -> bool {
    !w.is_empty() && only(w, "ab") && w.len().is_multiple_of(2) && is_palindrome(w)
}

fn palindrome_with_centre(w: &str) -> bool {
    let Some(i) = w.find('c') else { return false };
    let (left, rest) = w.split_at(i);
    let right = rest.strip_prefix("cc").or_else(|| rest.strip_prefix('c')).unwrap_or("");
    only(left, "ab") && right.chars().eq(left.chars().rev())
}

fn dyck(w: &str) -> bool {
    let mut depth = 0i32;
    for c in w.chars() {
        depth += match c {
            '(' => 1,
            ')' => -1,
            _ => return false,
        };
        if depth < 0 {
            return false;
        }
    }
    depth == 0
}

fn ab_n_a(w: &str) -> bool {
    let Some(rest) = w.strip_prefix('a') else { return false };
    let b = rest.chars().take_while(|&c| c == 'b').count();
    let tail = &rest[b..];
    b >= 1 && only(tail, "a") && tail.len() == b - 1
}

fn figure(w: &str) -> bool {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new("^(abc|bb|abb|(ab|b)(ab)*ab(b|c))$").expect("valid"))
        .is_match(w)
}

fn a2_star_b(w: &str) -> bool {
    let body = w.strip_suffix("bb").or_else(|| w.strip_suffix('b'));
    matches!(body, Some(x) if only(x, "a") && x.len() % 2 == 0)
}

fn a_n_c_a_n(w: &str) -> bool {
    match w.split_once('c') {
        Some((l, r)) => only(l, "a") && only(r, "a") && l.len() == r.len(),
        None => false,
    }
}

/// Words `x1 w_{x1x2} x2 ⋯ xn v_{xn}` with `w_aa = w_bb = ◊`, `w_ab = ε`,
/// `w_ba = ◊♦`, `v_a = ◊♦`, `v_b = ◊♦$`.
fn decomposition_shape(w: &str) -> bool {
    let x: Vec<char> = w.chars().filter(|&c| c == 'a' || c == 'b').collect();
    if x.is_empty() {
        return false;
    }
    let mut expected = String::new();
    for (i, &c) in x.iter().enumerate() {
        expected.push(c);
        match x.get(i + 1) {
            Some(&d) if d == c => expected.push('◊'),
            Some('b') => {}
            Some(_) => expected.push_str("◊♦"),
            None if c == 'a' => expected.push_str("◊♦"),
            None => expected.push_str("◊♦$"),
        }
    }
    expected == w
}

fn ab_bc_plus(w: &str) -> bool {
    !w.is_empty() && {
        let mut ok = vec![false; w.len() + 1];
        ok[0] = true;
        for i in 0..w.len() {
            if ok[i] && (w[i..].starts_with("ab") || w[i..].starts_with("bc")) {
                ok[i + 2] = true;
            }
        }
        ok[w.len()]
    }
}

pub fn corpus() -> Vec<CorpusEntry> {
    use ClassName::*;
    let mut entries = vec![
        CorpusEntry {
            name: "a2-plus",
            description: "{aa} recognises (aa)+",
            dsl: "alphabet: a\n[transient]\na a\n",
            class: MK,
            predicate: a2_plus,
            max_len: 10,
            certified_cap: None,
        },
        CorpusEntry {
            name: "odd-a",
            description: "({aa}, {a}) recognises the odd blocks of a",
            dsl: "alphabet: a\n[transient]\na a\n[final]\na\n",
            class: EK,
            predicate: odd_a,
            max_len: 9,
            certified_cap: None,
        },
        CorpusEntry {
            name: "even-palindromes",
            description: "{aa◄, bb◄} recognises the nonempty even palindromes",
            dsl: "alphabet: a b\n[transient]\na a LA\nb b LA\n",
            class: LK,
            predicate: even_palindrome,
            max_len: 8,
            certified_cap: None,
        },
        CorpusEntry {
            name: "palindromes-centre",
            description: "({aa◄, bb◄}, {c, cc}) recognises wcw̃ + wccw̃",
            dsl: "alphabet: a b c\n[transient]\na a LA\nb b LA\n[final]\nc\nc c\n",
            class: LEK,
            predicate: palindrome_with_centre,
            max_len: 8,
            certified_cap: None,
        },
        CorpusEntry {
            name: "dyck",
            description: "{()◄, ◄} recognises the Dyck words",
            dsl: "alphabet: ( )\n[transient]\n( ) LA\nLA\n",
            class: LK,
            predicate: dyck,
            max_len: 8,
            certified_cap: None,
        },
        CorpusEntry {
            name: "ab-n-a",
            description: "{a◄◄►b} recognises ab^(n+1)a^n",
            dsl: "alphabet: a b\n[transient]\na LA LA RA b\n",
            class: AK,
            predicate: ab_n_a,
            max_len: 13,
            certified_cap: None,
        },
        CorpusEntry {
            name: "figure",
            description: "{←abc, ←⁴bb} recognises abc + bb + abb + (ab + b)(ab)*(abc + abb)",
            dsl: "alphabet: a b c\n[transient]\nBS a b c\nBS BS BS BS b b\n",
            class: BK,
            predicate: figure,
            max_len: 10,
            certified_cap: Some(14),
        },
        CorpusEntry {
            name: "a2-star-b",
            description: "({aa}, {b, bb}) recognises (aa)*(b + bb)",
            dsl: "alphabet: a b\n[transient]\na a\n[final]\nb\nb b\n",
            class: EK,
            predicate: a2_star_b,
            max_len: 9,
            certified_cap: None,
        },
        CorpusEntry {
            name: "a-n-c-a-n",
            description: "{←c, ←aca◄} recognises a^n c a^n",
            dsl: "alphabet: a c\n[transient]\nBS c\nBS a c a LA\n",
            class: BLK,
            predicate: a_n_c_a_n,
            max_len: 9,
            certified_cap: None,
        },
        CorpusEntry {
            name: "decomposition",
            description: "{←a◊♦, ←←b◊♦$} recognises x1 w x2 ⋯ xn v for x in {a, b}+",
            dsl: "alphabet: a b ◊ ♦ $\n[transient]\nBS a ◊ ♦\nBS BS b ◊ ♦ $\n",
            class: BK,
            predicate: decomposition_shape,
            max_len: 7,
            certified_cap: None,
        },
        CorpusEntry {
            name: "ab-bc-plus",
            description: "{ab, bc} recognises (ab + bc)+",
            dsl: "alphabet: a b c\n[transient]\na b\nb c\n",
            class: MK,
            predicate: ab_bc_plus,
            max_len: 8,
            certified_cap: None,
        },
    ];
    entries.sort_by_key(|e| e.name);
    entries
}

pub fn entry(name: &str) -> Option<CorpusEntry> {
    corpus().into_iter().find(|e| e.name == name)
}

/// Every word over the keyboard alphabet of length at most `max_len`.
pub fn all_words(keyboard: &Keyboard, max_len: usize) -> Vec<String> {
    let letters: Vec<char> = keyboard.alphabet().iter().map(|l| l.as_char()).collect();
    let mut out = vec![String::new()];
    let mut layer = vec![String::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| letters.iter().map(move |a| format!("{w}{a}")))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryReport {
    pub name: String,
    pub class: ClassName,
    pub class_matches: bool,
    pub max_len: usize,
    pub cap: usize,
    pub complete: bool,
    pub words: usize,
    /// Words satisfying the description that the oracle did not produce.
    pub missing: Vec<String>,
    /// Words produced by the oracle outside the description.
    pub unexpected: Vec<String>,
    pub procedure: String,
    /// Words on which the class procedure disagrees with the oracle, or
    /// whose witness does not re-validate.
    pub procedure_mismatches: Vec<String>,
}

impl EntryReport {
    pub fn passed(&self) -> bool {
        self.class_matches
            && self.complete
            && self.missing.is_empty()
            && self.unexpected.is_empty()
            && self.procedure_mismatches.is_empty()
    }
}

pub fn check_entry(entry: &CorpusEntry) -> EntryReport {
    let k = entry.keyboard();
    let sample = entry.sample();
    let decider = Decider::new(&k).expect("corpus classes are supported");
    let mut missing = Vec::new();
    let mut unexpected = Vec::new();
    let mut procedure_mismatches = Vec::new();
    for w in all_words(&k, entry.max_len) {
        let expected = (entry.predicate)(&w);
        let got = sample.contains(&w);
        if expected && !got {
            missing.push(w.clone());
        }
        if got && !expected {
            unexpected.push(w.clone());
        }
        let d = decider.member(&w);
        if d.is_yes() != got || (d.is_yes() && !decider.validate(&d, &w)) {
            procedure_mismatches.push(w);
        }
    }
    EntryReport {
        name: entry.name.to_string(),
        class: entry.class,
        class_matches: classify(&k).name == entry.class,
        max_len: entry.max_len,
        cap: entry.cap(),
        complete: sample.complete,
        words: sample.len(),
        missing,
        unexpected,
        procedure: decider.procedure().to_string(),
        procedure_mismatches,
    }
}

/// Checks every entry, in name order.
pub fn run_corpus() -> Vec<EntryReport> {
    corpus().iter().map(check_entry).collect()
}
