//! Mirror and letter-to-letter morphism constructions, and the reduction
//! from Post's correspondence problem to intersection of `◄`-keyboards.

use std::collections::{BTreeMap, BTreeSet};

use crate::class::classify;
use crate::decide::{Decider, Decision};
use crate::error::Error;
use crate::model::{word, word_string, Key, Keyboard, Letter, Op};
use crate::oracle::enumerate;

/// Letter inserted after every letter of the pair words.
pub const DIAMOND: char = '♦';

fn unsupported(operation: &'static str, keyboard: &Keyboard) -> Error {
    Error::UnsupportedClass {
        operation,
        found: classify(keyboard).name,
    }
}

/// Mirror of an automatic keyboard whose keys only write letters.
pub fn mirror_mk(keyboard: &Keyboard) -> Result<Keyboard, Error> {
    let class = classify(keyboard);
    if class.has_backspace || class.has_left || class.has_right || class.has_entry {
        return Err(unsupported("mirror_mk", keyboard));
    }
    keyboard.map_keys(keyboard.alphabet().clone(), |k| {
        Key::new(k.ops().iter().rev().copied().collect())
    })
}

/// Image of a key under `► ↦ ◄`, `◄ ↦ ►`, `a ↦ a◄`.
pub fn mirror_key(key: &Key) -> Key {
    let mut ops = Vec::new();
    for op in key.ops() {
        match op {
            Op::Write(a) => ops.extend([Op::Write(*a), Op::Left]),
            Op::Left => ops.push(Op::Right),
            Op::Right => ops.push(Op::Left),
            Op::Backspace => unreachable!("checked by caller"),
        }
    }
    Key::new(ops)
}

/// Mirror of a keyboard without backspace.
pub fn mirror_ak(keyboard: &Keyboard) -> Result<Keyboard, Error> {
    if classify(keyboard).has_backspace {
        return Err(unsupported("mirror_ak", keyboard));
    }
    keyboard.map_keys(keyboard.alphabet().clone(), mirror_key)
}

/// Applies a letter-to-letter morphism inside every key.
pub fn apply_morphism(keyboard: &Keyboard, g: &BTreeMap<Letter, Letter>) -> Result<Keyboard, Error> {
    if let Some(a) = keyboard.alphabet().iter().find(|a| !g.contains_key(a)) {
        return Err(Error::PartialMorphism(a.as_char()));
    }
    let alphabet = keyboard.alphabet().iter().map(|a| g[a]).collect();
    keyboard.map_keys(alphabet, |k| {
        Key::new(k.ops().iter().map(|op| op.map(|a| g[a])).collect())
    })
}

/// Parses `a=b,c=d` into a morphism.
pub fn parse_morphism(text: &str) -> Result<BTreeMap<Letter, Letter>, Error> {
    let mut g = BTreeMap::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let bad = || Error::Parse {
            line: 1,
            message: format!("expected letter=letter, got {part:?}"),
        };
        let (from, to) = part.split_once('=').ok_or_else(bad)?;
        let single = |s: &str| -> Result<Letter, Error> {
            let mut cs = s.trim().chars();
            match (cs.next(), cs.next()) {
                (Some(c), None) => Letter::new(c),
                _ => Err(bad()),
            }
        };
        g.insert(single(from)?, single(to)?);
    }
    Ok(g)
}

/// A PCP instance: a nonempty list of pairs of nonempty words.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PcpInstance {
    pairs: Vec<(Vec<Letter>, Vec<Letter>)>,
}

impl PcpInstance {
    pub fn new(pairs: &[(&str, &str)]) -> Result<PcpInstance, Error> {
        if pairs.is_empty() {
            return Err(Error::InvalidInstance("no pairs".into()));
        }
        let mut out = Vec::new();
        for (u, v) in pairs {
            if u.is_empty() || v.is_empty() {
                return Err(Error::InvalidInstance("empty word in a pair".into()));
            }
            let (u, v) = (word(u)?, word(v)?);
            if u.iter().chain(&v).any(|l| l.as_char() == DIAMOND) {
                return Err(Error::InvalidInstance(format!("{DIAMOND} is reserved")));
            }
            out.push((u, v));
        }
        Ok(PcpInstance { pairs: out })
    }

    /// One `u v` pair per line; blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<PcpInstance, Error> {
        let mut pairs = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [u, v] = parts[..] else {
                return Err(Error::Parse {
                    line: i + 1,
                    message: "expected two words".into(),
                });
            };
            pairs.push((u, v));
        }
        PcpInstance::new(&pairs)
    }

    pub fn pairs(&self) -> &[(Vec<Letter>, Vec<Letter>)] {
        &self.pairs
    }

    /// Concatenations `(u_{i1}⋯u_{ik}, v_{i1}⋯v_{ik})` for 1-based indices.
    pub fn concat(&self, indices: &[usize]) -> (String, String) {
        let mut u = Vec::new();
        let mut v = Vec::new();
        for &i in indices {
            u.extend(&self.pairs[i - 1].0);
            v.extend(&self.pairs[i - 1].1);
        }
        (word_string(&u), word_string(&v))
    }

    pub fn is_solution(&self, indices: &[usize]) -> bool {
        if indices.is_empty() || indices.iter().any(|&i| i == 0 || i > self.pairs.len()) {
            return false;
        }
        let (u, v) = self.concat(indices);
        u == v
    }

    fn alphabet(&self) -> BTreeSet<Letter> {
        let mut a: BTreeSet<Letter> = self
            .pairs
            .iter()
            .flat_map(|(u, v)| u.iter().chain(v))
            .copied()
            .collect();
        a.insert(diamond());
        a
    }
}

fn diamond() -> Letter {
    Letter::new(DIAMOND).expect("not reserved")
}

/// `x1♦x2♦⋯xn♦`.
fn with_diamonds(w: &[Letter]) -> Vec<Op<Letter>> {
    w.iter().flat_map(|&a| [Op::Write(a), Op::Write(diamond())]).collect()
}

/// The key `u♦ · mirror(v♦) · ◄^{2|v|}` of a pair.
pub fn pcp_key(u: &[Letter], v: &[Letter]) -> Key {
    let mut ops = with_diamonds(u);
    let mut rv = with_diamonds(v);
    rv.reverse();
    ops.extend(rv);
    ops.extend(std::iter::repeat_n(Op::Left, 2 * v.len()));
    Key::new(ops)
}

/// `(K1, K2)` with `L(K1) ∩ L(K2)` nonempty iff the instance has a solution.
/// `K2` recognises the even palindromes.
pub fn pcp_to_lk(instance: &PcpInstance) -> Result<(Keyboard, Keyboard), Error> {
    let alphabet = instance.alphabet();
    let k1_keys: BTreeSet<Key> = instance.pairs.iter().map(|(u, v)| pcp_key(u, v)).collect();
    let mut k2_keys: BTreeSet<Key> = alphabet
        .iter()
        .map(|&a| Key::new(vec![Op::Write(a), Op::Write(a), Op::Left]))
        .collect();
    k2_keys.insert(Key::empty());
    Ok((
        Keyboard::automatic(alphabet.clone(), k1_keys)?,
        Keyboard::automatic(alphabet, k2_keys)?,
    ))
}

#[derive(Clone, Debug)]
pub struct IntersectionWitness {
    pub word: String,
    /// Execution of the first keyboard producing the word.
    pub first: Vec<Key>,
    /// Membership decision for the second keyboard.
    pub second: Decision,
}

/// Searches the words of `k1` up to `max_len` (configurations capped at
/// `cap`) for one that `k2` accepts. The second keyboard is queried with the
/// procedure of its class, so only `k1` is enumerated.
pub fn intersection_nonempty_bounded(
    k1: &Keyboard,
    k2: &Keyboard,
    max_len: usize,
    cap: usize,
) -> Result<Option<IntersectionWitness>, Error> {
    let sample = enumerate(k1, max_len, cap);
    let decider = Decider::new(k2)?;
    for w in sample.sorted_words() {
        let d = decider.member(&w);
        if d.is_yes() {
            return Ok(Some(IntersectionWitness {
                first: sample.witness(&w).expect("enumerated").to_vec(),
                word: w,
                second: d,
            }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::enumerate;
    use crate::semantics::replay;

    fn kb(t: &[&str], f: Option<&[&str]>) -> Keyboard {
        Keyboard::from_strs(t, f, "").unwrap()
    }

    fn mirror_words(s: &BTreeSet<String>) -> BTreeSet<String> {
        s.iter().map(|w| w.chars().rev().collect()).collect()
    }

    #[test]
    fn mirror_mk_examples() {
        assert_eq!(mirror_mk(&kb(&["ab", "bc"], None)).unwrap(), kb(&["ba", "cb"], None));
        assert_eq!(mirror_mk(&kb(&["aa"], None)).unwrap(), kb(&["aa"], None));
        let k = kb(&["ab", "bc", "c"], None);
        assert_eq!(
            enumerate(&mirror_mk(&k).unwrap(), 6, 6).words(),
            mirror_words(&enumerate(&k, 6, 6).words())
        );
        assert!(mirror_mk(&kb(&["a◄"], None)).is_err());
    }

    #[test]
    fn mirror_ak_examples() {
        assert_eq!(mirror_ak(&kb(&["aa◄"], None)).unwrap(), kb(&["a◄a◄►"], None));
        for k in [
            kb(&["()◄", "◄"], None),
            kb(&["a◄◄►b"], None),
            kb(&["aa◄", "bb◄"], Some(&["c", "cc"])),
        ] {
            let m = mirror_ak(&k).unwrap();
            assert_eq!(m.is_automatic(), k.is_automatic());
            assert_eq!(
                enumerate(&m, 6, 6).words(),
                mirror_words(&enumerate(&k, 6, 6).words()),
                "{k}"
            );
            let mm = mirror_ak(&m).unwrap();
            assert_eq!(enumerate(&mm, 6, 6).words(), enumerate(&k, 6, 6).words());
        }
        assert!(mirror_ak(&kb(&["←a"], None)).is_err());
    }

    #[test]
    fn morphisms() {
        let pal = kb(&["aa◄", "bb◄"], None);
        let id = parse_morphism("a=a,b=b").unwrap();
        assert_eq!(apply_morphism(&pal, &id).unwrap(), pal);
        let collapse = parse_morphism("a=a, b=a").unwrap();
        let img = apply_morphism(&pal, &collapse).unwrap();
        assert_eq!(img, kb(&["aa◄"], None));
        let expected: BTreeSet<String> = ["aa", "aaaa", "aaaaaa"].iter().map(|s| s.to_string()).collect();
        assert_eq!(enumerate(&img, 6, 6).words(), expected);
        let odd = apply_morphism(&kb(&["aa"], Some(&["a"])), &parse_morphism("a=b").unwrap()).unwrap();
        assert_eq!(odd, kb(&["bb"], Some(&["b"])));
        assert_eq!(
            apply_morphism(&pal, &parse_morphism("a=b").unwrap()),
            Err(Error::PartialMorphism('b'))
        );
        assert!(parse_morphism("a=bc").is_err());
    }

    #[test]
    fn pcp_key_shape() {
        let k = pcp_key(&word("a").unwrap(), &word("ba").unwrap());
        assert_eq!(k, "a♦♦a♦b◄◄◄◄".parse().unwrap());
    }

    #[test]
    fn pcp_solution_by_hand() {
        let inst = PcpInstance::new(&[("a", "baa"), ("ab", "aa"), ("bba", "bb")]).unwrap();
        assert_eq!(inst.concat(&[3, 2, 3, 1]), ("bbaabbbaa".into(), "bbaabbbaa".into()));
        assert!(inst.is_solution(&[3, 2, 3, 1]));
        assert!(!inst.is_solution(&[1]));
        let (k1, k2) = pcp_to_lk(&inst).unwrap();
        assert_eq!(classify(&k1).name, crate::ClassName::LK);
        assert_eq!(classify(&k2).name, crate::ClassName::LK);
        let keys: Vec<Key> = [3, 2, 3, 1]
            .iter()
            .map(|&i| pcp_key(&inst.pairs()[i - 1].0, &inst.pairs()[i - 1].1))
            .collect();
        let w = replay(&k1, &keys).unwrap();
        assert_eq!(w.chars().count(), 36);
        assert_eq!(w, w.chars().rev().collect::<String>());
    }

    #[test]
    fn bounded_intersections() {
        let aa = kb(&["aa"], None);
        let odd = kb(&["aa"], Some(&["a"]));
        assert!(intersection_nonempty_bounded(&aa, &odd, 10, 10).unwrap().is_none());
        let pal = kb(&["aa◄", "bb◄"], None);
        let hit = intersection_nonempty_bounded(&pal, &aa, 2, 4).unwrap().unwrap();
        assert_eq!(hit.word, "aa");
        assert_eq!(replay(&pal, &hit.first).as_deref(), Some("aa"));

        let none = PcpInstance::new(&[("a", "b")]).unwrap();
        let (k1, k2) = pcp_to_lk(&none).unwrap();
        assert!(intersection_nonempty_bounded(&k1, &k2, 12, 16).unwrap().is_none());
    }

    #[test]
    fn instance_parsing() {
        let inst = PcpInstance::parse("a baa\n# comment\nab aa\n\nbba bb\n").unwrap();
        assert_eq!(inst.pairs().len(), 3);
        assert!(PcpInstance::parse("a\n").is_err());
        assert!(PcpInstance::parse("").is_err());
        assert!(PcpInstance::new(&[("a♦", "b")]).is_err());
    }
}
