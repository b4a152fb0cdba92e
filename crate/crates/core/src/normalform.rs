//! Normal form `←^m w` of arrow-free keys.

use std::fmt;

use crate::error::Error;
use crate::model::{Key, Keyboard, Letter, Op};

/// The key `←^erase · write`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct NatKey {
    pub erase: usize,
    pub write: Vec<Letter>,
}

impl NatKey {
    pub fn new(erase: usize, write: Vec<Letter>) -> NatKey {
        NatKey { erase, write }
    }

    pub fn to_key(&self) -> Key {
        let mut ops = vec![Op::Backspace; self.erase];
        ops.extend(self.write.iter().map(|&l| Op::Write(l)));
        Key::new(ops)
    }

    /// `|←^m w| = m + |w|`.
    pub fn len(&self) -> usize {
        self.erase + self.write.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Net effect on the length far from the left edge.
    pub fn delta(&self) -> isize {
        self.write.len() as isize - self.erase as isize
    }
}

impl fmt::Display for NatKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_key().fmt(f)
    }
}

/// Rewrites `t` by deleting the first letter immediately followed by `←`
/// until no such pair remains.
pub fn normalize_key(t: &Key) -> Result<NatKey, Error> {
    if t.has_arrow() {
        return Err(Error::ArrowInKey(t.to_string()));
    }
    let mut ops = t.ops().to_vec();
    while let Some(i) = ops.windows(2).position(|w| matches!(w, [Op::Write(_), Op::Backspace])) {
        ops.drain(i..i + 2);
    }
    let erase = ops.iter().take_while(|o| **o == Op::Backspace).count();
    let write = ops[erase..]
        .iter()
        .map(|o| *o.letter().expect("no backspace after a letter"))
        .collect();
    Ok(NatKey { erase, write })
}

/// Replaces every key by its normal form. Fails on keys containing arrows.
pub fn normalize_keyboard(keyboard: &Keyboard) -> Result<Keyboard, Error> {
    for k in keyboard.all_keys() {
        if k.has_arrow() {
            return Err(Error::ArrowInKey(k.to_string()));
        }
    }
    keyboard.map_keys(keyboard.alphabet().clone(), |k| {
        normalize_key(k).expect("arrow-free").to_key()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::word;
    use crate::oracle::enumerate_certified;
    use crate::tracking::keys_equivalent;
    use rand::{Rng, SeedableRng};

    fn key(s: &str) -> Key {
        s.parse().unwrap()
    }

    fn nat(m: usize, w: &str) -> NatKey {
        NatKey::new(m, word(w).unwrap())
    }

    #[test]
    fn examples() {
        assert_eq!(normalize_key(&key("a←")).unwrap(), nat(0, ""));
        assert_eq!(normalize_key(&key("←←ab←c")).unwrap(), nat(2, "ac"));
        assert_eq!(normalize_key(&key("←←←bb")).unwrap(), nat(3, "bb"));
        assert_eq!(normalize_key(&key("ab←←←c")).unwrap(), nat(1, "c"));
        assert_eq!(normalize_key(&Key::empty()).unwrap(), nat(0, ""));
        assert!(matches!(normalize_key(&key("a◄")), Err(Error::ArrowInKey(_))));
    }

    #[test]
    fn keyboards() {
        let ek = Keyboard::from_strs(&["aa"], Some(&["b", "bb"]), "").unwrap();
        assert_eq!(normalize_keyboard(&ek).unwrap(), ek);

        let k = Keyboard::from_strs(&["aa←"], Some(&["b"]), "").unwrap();
        let n = normalize_keyboard(&k).unwrap();
        assert_eq!(n, Keyboard::from_strs(&["a"], Some(&["b"]), "").unwrap());
        assert_eq!(
            enumerate_certified(&k, 6, 10).words(),
            enumerate_certified(&n, 6, 10).words()
        );

        let fig = Keyboard::from_strs(&["←abc", "←←←←bb"], None, "").unwrap();
        assert_eq!(normalize_keyboard(&fig).unwrap(), fig);
        assert!(normalize_keyboard(&Keyboard::from_strs(&["a◄"], None, "").unwrap()).is_err());
    }

    #[test]
    fn random_keys_equivalent_and_idempotent() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let ops = [
            Op::Write(Letter::new('a').unwrap()),
            Op::Write(Letter::new('b').unwrap()),
            Op::Backspace,
        ];
        for _ in 0..200 {
            let n = rng.gen_range(0..=8);
            let t = Key::new((0..n).map(|_| ops[rng.gen_range(0..3)]).collect());
            let nf = normalize_key(&t).unwrap();
            assert!(keys_equivalent(&t, &nf.to_key()), "{t}");
            assert_eq!(normalize_key(&nf.to_key()).unwrap(), nf);
        }
    }
}
