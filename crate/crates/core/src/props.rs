//! Seeded random checks of the general behaviour of keys, run as a suite.
//!
//! Each property draws its own stream from the seed, so adding or removing a
//! property does not change the cases drawn by the others.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::eak::is_subword;
use crate::model::{AtomicOp, Configuration, Key, Keyboard, Letter, Op};
use crate::oracle::{default_cap, enumerate, sizes_nondecreasing};
use crate::semantics::{apply, apply_effective};
use crate::tracking::{ensures_far_from_edges, marked_fold, writes_letter, writes_symbol_at, MarkedSymbol};

#[derive(Clone, Debug)]
pub struct PropsConfig {
    pub seed: u64,
    pub cases: usize,
    pub alphabet: Vec<Letter>,
    pub max_key_len: usize,
    pub max_side: usize,
}

impl Default for PropsConfig {
    fn default() -> PropsConfig {
        PropsConfig {
            seed: 0,
            cases: 1000,
            alphabet: vec![Letter::new('a').unwrap(), Letter::new('b').unwrap()],
            max_key_len: 6,
            max_side: 10,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyReport {
    pub name: &'static str,
    pub cases: usize,
    /// Cases where the hypothesis did not hold and nothing was checked.
    pub vacuous: usize,
    pub violations: usize,
    pub first_violation: Option<String>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// Outcome of one case.
enum Case {
    Held,
    Vacuous,
    Violated(String),
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Case {
    if ok {
        Case::Held
    } else {
        Case::Violated(msg())
    }
}

struct Gen<'a> {
    rng: ChaCha8Rng,
    cfg: &'a PropsConfig,
}

impl Gen<'_> {
    fn letter(&mut self) -> Letter {
        *self.cfg.alphabet.choose(&mut self.rng).unwrap()
    }

    fn word(&mut self, min: usize, max: usize) -> Vec<Letter> {
        let n = self.rng.gen_range(min..=max.max(min));
        (0..n).map(|_| self.letter()).collect()
    }

    fn config(&mut self) -> Configuration {
        let m = self.cfg.max_side;
        let (u, v) = (self.word(0, m), self.word(0, m));
        Configuration::new(u, v)
    }

    /// A configuration with the same component sizes as `c`.
    fn same_sizes(&mut self, c: &Configuration) -> Configuration {
        let (l, r) = (c.left_len(), c.right_len());
        Configuration::new(self.word(l, l), self.word(r, r))
    }

    fn op(&mut self, ops: &[Option<AtomicOp>]) -> AtomicOp {
        match ops.choose(&mut self.rng).unwrap() {
            Some(op) => *op,
            None => Op::Write(self.letter()),
        }
    }

    /// A key drawn from `ops`, where `None` stands for a random letter.
    fn key_from(&mut self, ops: &[Option<AtomicOp>], max_len: usize) -> Key {
        let n = self.rng.gen_range(0..=max_len);
        Key::new((0..n).map(|_| self.op(ops)).collect())
    }

    fn key(&mut self) -> Key {
        self.key_from(ALL_OPS, self.cfg.max_key_len)
    }
}

const ALL_OPS: &[Option<AtomicOp>] = &[None, None, Some(Op::Backspace), Some(Op::Left), Some(Op::Right)];
const NO_RIGHT: &[Option<AtomicOp>] = &[None, None, Some(Op::Backspace), Some(Op::Left)];
const NO_BACKSPACE: &[Option<AtomicOp>] = &[None, None, Some(Op::Left), Some(Op::Right)];

fn is_prefix<T: PartialEq>(p: &[T], w: &[T]) -> bool {
    w.starts_with(p)
}

fn is_suffix<T: PartialEq>(s: &[T], w: &[T]) -> bool {
    w.ends_with(s)
}

fn letters_written(t: &Key) -> usize {
    t.letter_count()
}

fn show(t: &Key, c: &Configuration) -> String {
    format!("t = {t}, config = {c}")
}

fn locality(g: &mut Gen) -> Case {
    let (t, c) = (g.key(), g.config());
    let n = t.len();
    let d = apply(&c, t.ops());
    let (u, v, u2, v2) = (c.left(), c.right(), d.left(), d.right());
    let ok = is_prefix(&u[..u.len().saturating_sub(n)], u2)
        && is_suffix(&v[n.min(v.len())..], &v2)
        && is_prefix(&u2[..u2.len().saturating_sub(n)], u)
        && is_suffix(&v2[n.min(v2.len())..], &v);
    check(ok, || show(&t, &c))
}

fn length_bounds(g: &mut Gen) -> Case {
    let (t, c) = (g.key(), g.config());
    let n = t.len() as isize;
    let d = apply(&c, t.ops());
    let (before, after) = (c.size() as isize, d.size() as isize);
    let back = t.count(&Op::Backspace) as isize;
    let written = letters_written(&t) as isize;
    let ok = before - back + written <= after
        && after <= before + written
        && (d.left_len() as isize - c.left_len() as isize).abs() <= n
        && (d.right_len() as isize - c.right_len() as isize).abs() <= n;
    check(ok, || show(&t, &c))
}

fn left_edge_length(g: &mut Gen) -> Case {
    let t = g.key();
    let n = t.len();
    let u = g.word(n, g.cfg.max_side.max(n));
    let v = g.word(0, g.cfg.max_side);
    let c = Configuration::new(u, v);
    let d = apply(&c, t.ops());
    let expected = c.size() + letters_written(&t) - t.count(&Op::Backspace);
    check(d.size() == expected, || show(&t, &c))
}

fn monotonicity(g: &mut Gen) -> Case {
    let t = g.key();
    let c1 = g.config();
    let (l, r) = (c1.left_len(), c1.right_len());
    let m = g.cfg.max_side;
    let c2 = Configuration::new(g.word(l, m.max(l)), g.word(r, m.max(r)));
    let (d1, d2) = (apply(&c1, t.ops()), apply(&c2, t.ops()));
    let ok = d1.left_len() <= d2.left_len() && d1.right_len() <= d2.right_len();
    check(ok, || format!("{} and {c2}", show(&t, &c1)))
}

fn effective_extension(g: &mut Gen) -> Case {
    let t = g.key();
    let c = Configuration::new(g.word(0, 4), g.word(0, 4));
    let Ok(d) = apply_effective(&c, t.ops()) else {
        return Case::Vacuous;
    };
    let (x, y) = (g.word(0, 4), g.word(0, 4));
    let cat = |a: &[Letter], b: &[Letter]| [a, b].concat();
    let big = Configuration::new(cat(&x, c.left()), cat(&c.right(), &y));
    let expected = Configuration::new(cat(&x, d.left()), cat(&d.right(), &y));
    check(apply_effective(&big, t.ops()) == Ok(expected), || {
        format!("{}, x = {:?}, y = {:?}", show(&t, &c), x, y)
    })
}

fn effective_by_size(g: &mut Gen) -> Case {
    let t = g.key();
    let c1 = Configuration::new(g.word(0, 5), g.word(0, 5));
    let c2 = g.same_sizes(&c1);
    let ok = apply_effective(&c1, t.ops()).is_ok() == apply_effective(&c2, t.ops()).is_ok();
    check(ok, || format!("{} and {c2}", show(&t, &c1)))
}

fn effective_is_standard(g: &mut Gen) -> Case {
    let t = g.key();
    let c = Configuration::new(g.word(0, 5), g.word(0, 5));
    match apply_effective(&c, t.ops()) {
        Ok(d) => check(d == apply(&c, t.ops()), || show(&t, &c)),
        Err(_) => Case::Vacuous,
    }
}

/// The letter a marked symbol stands for, given the source key and configuration.
fn resolve(sym: &MarkedSymbol, t: &Key, c: &Configuration) -> Option<Letter> {
    match sym {
        MarkedSymbol::KeyMark(k) => t.ops()[k - 1].letter().copied(),
        MarkedSymbol::ConfigMark(k) => c.at(*k).copied(),
        MarkedSymbol::Plain(a) => Some(*a),
    }
}

fn tracking_coherence(g: &mut Gen) -> Case {
    let (t, c) = (g.key(), g.config());
    let d = apply(&c, t.ops());
    let f = marked_fold(&t, &c);
    let sizes = f.left_len() == d.left_len()
        && f.right_len() == d.right_len()
        && f.size() == d.size()
        && f.word().len() == d.word().len();
    let ok = sizes
        && d.indices()
            .all(|j| d.at(j).copied() == f.at(j).and_then(|s| resolve(s, &t, &c)));
    check(ok, || show(&t, &c))
}

fn write_positions_by_size(g: &mut Gen) -> Case {
    let t = g.key();
    let c1 = g.config();
    let c2 = g.same_sizes(&c1);
    let ok = (1..=t.len())
        .filter(|&k| t.ops()[k - 1].letter().is_some())
        .all(|k| writes_symbol_at(&t, &c1, k).unwrap() == writes_symbol_at(&t, &c2, k).unwrap());
    check(ok, || format!("{} and {c2}", show(&t, &c1)))
}

fn write_positions_effective(g: &mut Gen) -> Case {
    let t = g.key();
    let (c1, c2) = (g.config(), g.config());
    if apply_effective(&c1, t.ops()).is_err() || apply_effective(&c2, t.ops()).is_err() {
        return Case::Vacuous;
    }
    let ok = (1..=t.len())
        .filter(|&k| t.ops()[k - 1].letter().is_some())
        .all(|k| writes_symbol_at(&t, &c1, k).unwrap() == writes_symbol_at(&t, &c2, k).unwrap());
    check(ok, || format!("{} and {c2}", show(&t, &c1)))
}

fn far_from_edges_contains(g: &mut Gen) -> Case {
    let t = g.key();
    let a = g.letter();
    if !ensures_far_from_edges(&t, a) {
        return Case::Vacuous;
    }
    let n = t.len();
    let m = g.cfg.max_side.max(n);
    let c = Configuration::new(g.word(n, m), g.word(n, m));
    let d = apply(&c, t.ops());
    check(d.word().contains(&a), || format!("{}, letter {a}", show(&t, &c)))
}

fn blek_suffix(g: &mut Gen) -> Case {
    let t = g.key_from(NO_RIGHT, g.cfg.max_key_len);
    let c = g.config();
    let d = apply(&c, t.ops());
    check(is_suffix(&c.right(), &d.right()), || show(&t, &c))
}

fn blek_fundamental(g: &mut Gen) -> Case {
    let t = g.key_from(NO_RIGHT, g.cfg.max_key_len);
    let c = g.config();
    let e = Configuration::empty().apply_ops(t.ops());
    let d = apply(&c, t.ops());
    let (xn, yn) = (e.left(), e.right());
    let (left, right, v) = (d.left(), d.right(), c.right());
    let ok = is_suffix(xn, left) && is_suffix(&v, &right) && {
        let un = &left[..left.len() - xn.len()];
        let vn = &right[..right.len() - v.len()];
        is_prefix(un, c.left()) && is_subword(&yn, vn)
    };
    check(ok, || show(&t, &c))
}

fn blek_position(g: &mut Gen) -> Case {
    let t = g.key_from(NO_RIGHT, g.cfg.max_key_len);
    let c = g.config();
    let a = g.letter();
    if writes_letter(&t, &c, a).is_empty() {
        return Case::Vacuous;
    }
    for _ in 0..50 {
        let other = g.config();
        if writes_letter(&t, &other, a).is_empty() {
            return Case::Violated(format!("{}, letter {a}, other = {other}", show(&t, &c)));
        }
    }
    Case::Held
}

fn eak_subword(g: &mut Gen) -> Case {
    let keys: Vec<Key> = (0..g.rng.gen_range(1..=3))
        .map(|_| g.key_from(NO_BACKSPACE, g.cfg.max_key_len))
        .collect();
    let mut c = g.config();
    let presses = g.rng.gen_range(1..=5);
    for _ in 0..presses {
        let t = keys.choose(&mut g.rng).unwrap();
        let d = c.press(t);
        let additive = g.cfg.alphabet.iter().all(|a| {
            let count = |w: &[Letter]| w.iter().filter(|l| *l == a).count();
            count(&d.word()) == count(&c.word()) + t.count(&Op::Write(*a))
        });
        if !additive || !is_subword(&c.word(), &d.word()) {
            return Case::Violated(show(t, &c));
        }
        c = d;
    }
    Case::Held
}

const GROWTH_MAX_LEN: usize = 10;
const GROWTH_KEY_LEN: usize = 2;

fn growth_gap(g: &mut Gen) -> Case {
    let n = g.rng.gen_range(1..=3);
    let keys: Vec<Key> = (0..n).map(|_| g.key_from(ALL_OPS, GROWTH_KEY_LEN)).collect();
    let alphabet = g.cfg.alphabet.iter().copied().collect();
    let k = Keyboard::automatic(alphabet, keys.into_iter().collect()).unwrap();
    if !sizes_nondecreasing(&k) {
        return Case::Vacuous;
    }
    let sample = enumerate(&k, GROWTH_MAX_LEN, default_cap(&k, GROWTH_MAX_LEN));
    if !sample.complete {
        return Case::Vacuous;
    }
    let mut lengths: Vec<usize> = sample.words().iter().map(|w| w.chars().count()).collect();
    lengths.sort_unstable();
    lengths.dedup();
    let bound = 3 * k.norm_inf();
    check(lengths.windows(2).all(|w| w[1] - w[0] <= bound), || {
        format!("keyboard {k}, lengths {lengths:?}")
    })
}

type Property = fn(&mut Gen) -> Case;

const PROPERTIES: &[(&str, Property)] = &[
    ("locality", locality),
    ("length-bounds", length_bounds),
    ("left-edge-length-equality", left_edge_length),
    ("monotonicity", monotonicity),
    ("effective-context-extension", effective_extension),
    ("effective-by-size", effective_by_size),
    ("effective-equals-standard", effective_is_standard),
    ("tracking-coherence", tracking_coherence),
    ("write-positions-by-size", write_positions_by_size),
    ("write-positions-effective", write_positions_effective),
    ("far-from-edges-contains", far_from_edges_contains),
    ("blek-suffix", blek_suffix),
    ("blek-fundamental", blek_fundamental),
    ("blek-position-independence", blek_position),
    ("eak-subword-additivity", eak_subword),
    ("growth-gap", growth_gap),
];

pub fn property_names() -> Vec<&'static str> {
    PROPERTIES.iter().map(|(n, _)| *n).collect()
}

fn run_one(cfg: &PropsConfig, stream: u64, name: &'static str, prop: Property) -> PropertyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(stream);
    let mut g = Gen { rng, cfg };
    let mut report = PropertyReport {
        name,
        cases: cfg.cases,
        vacuous: 0,
        violations: 0,
        first_violation: None,
    };
    for _ in 0..cfg.cases {
        match prop(&mut g) {
            Case::Held => {}
            Case::Vacuous => report.vacuous += 1,
            Case::Violated(msg) => {
                report.violations += 1;
                report.first_violation.get_or_insert(msg);
            }
        }
    }
    report
}

pub fn run_property(cfg: &PropsConfig, name: &str) -> Option<PropertyReport> {
    PROPERTIES
        .iter()
        .enumerate()
        .find(|(_, (n, _))| *n == name)
        .map(|(i, (n, p))| run_one(cfg, i as u64, n, *p))
}

pub fn run_all(cfg: &PropsConfig) -> Vec<PropertyReport> {
    PROPERTIES
        .iter()
        .enumerate()
        .map(|(i, (n, p))| run_one(cfg, i as u64, n, *p))
        .collect()
}
