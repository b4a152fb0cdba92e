//! Keyboard classes, named after the special operations a keyboard uses.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::model::{Keyboard, Op};

/// The twelve keyboard classes. `B` stands for `←`, `L` for `◄`, `A` for
/// `◄` and `►` together, `E` for a distinguished set of final keys.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub enum ClassName {
    MK,
    EK,
    BK,
    LK,
    AK,
    BEK,
    BLK,
    LEK,
    BAK,
    EAK,
    BLEK,
    BEAK,
}

impl ClassName {
    pub const ALL: [ClassName; 12] = [
        ClassName::MK,
        ClassName::EK,
        ClassName::BK,
        ClassName::LK,
        ClassName::AK,
        ClassName::BEK,
        ClassName::BLK,
        ClassName::LEK,
        ClassName::BAK,
        ClassName::EAK,
        ClassName::BLEK,
        ClassName::BEAK,
    ];

    /// Builds the class from its operator flags. `right` implies `left`.
    pub fn from_flags(backspace: bool, left: bool, right: bool, entry: bool) -> ClassName {
        use ClassName::*;
        let arrows = if right {
            2
        } else if left {
            1
        } else {
            0
        };
        match (backspace, arrows, entry) {
            (false, 0, false) => MK,
            (false, 0, true) => EK,
            (true, 0, false) => BK,
            (true, 0, true) => BEK,
            (false, 1, false) => LK,
            (false, 1, true) => LEK,
            (true, 1, false) => BLK,
            (true, 1, true) => BLEK,
            (false, _, false) => AK,
            (false, _, true) => EAK,
            (true, _, false) => BAK,
            (true, _, true) => BEAK,
        }
    }

    pub fn has_backspace(self) -> bool {
        self.to_string().starts_with('B')
    }

    pub fn has_left(self) -> bool {
        let s = self.to_string();
        s.contains('L') || s.contains('A')
    }

    pub fn has_right(self) -> bool {
        self.to_string().contains('A')
    }

    pub fn has_entry(self) -> bool {
        self.to_string().contains('E')
    }

    /// Operator-set inclusion.
    pub fn is_within(self, other: ClassName) -> bool {
        (!self.has_backspace() || other.has_backspace())
            && (!self.has_left() || other.has_left())
            && (!self.has_right() || other.has_right())
            && (!self.has_entry() || other.has_entry())
    }
}

impl fmt::Display for ClassName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for ClassName {
    type Err = String;

    fn from_str(s: &str) -> Result<ClassName, String> {
        ClassName::ALL
            .iter()
            .copied()
            .find(|c| c.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown class {s}"))
    }
}

/// Result of [`classify`].
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ClassLabel {
    pub has_backspace: bool,
    pub has_left: bool,
    pub has_right: bool,
    pub has_entry: bool,
    pub name: ClassName,
    pub warning: Option<String>,
}

/// Minimal class containing every operator used by the keyboard.
///
/// A `►` without any `◄` is inert from the empty configuration; such a
/// keyboard is still labelled with an `A` class and carries a warning.
pub fn classify(keyboard: &Keyboard) -> ClassLabel {
    let has_backspace = keyboard.contains_op(&Op::Backspace);
    let has_left = keyboard.contains_op(&Op::Left);
    let has_right = keyboard.contains_op(&Op::Right);
    let has_entry = !keyboard.is_automatic();
    let warning =
        (has_right && !has_left).then(|| "► occurs without ◄: it never has any effect from ⟨ε|ε⟩".to_string());
    ClassLabel {
        has_backspace,
        has_left,
        has_right,
        has_entry,
        name: ClassName::from_flags(has_backspace, has_left, has_right, has_entry),
        warning,
    }
}
