use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

/// An element `(n, eps)` of the infinite dihedral group `Z ⋊ Z/2`, where the
/// generator of `Z/2` acts by inversion.
///
/// `(n, false)` is the translation by `n`; `(n, true)` is a reflection.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Dihedral {
    pub shift: i64,
    pub flip: bool,
}

impl Dihedral {
    pub const IDENTITY: Dihedral = Dihedral { shift: 0, flip: false };

    pub const fn new(shift: i64, flip: bool) -> Self {
        Dihedral { shift, flip }
    }

    pub const fn translation(shift: i64) -> Self {
        Dihedral { shift, flip: false }
    }

    pub const fn reflection(shift: i64) -> Self {
        Dihedral { shift, flip: true }
    }

    pub fn is_identity(self) -> bool {
        self == Self::IDENTITY
    }

    /// True for translations by a nonzero amount, the only elements of
    /// infinite order.
    pub fn has_infinite_order(self) -> bool {
        !self.flip && self.shift != 0
    }

    pub fn inv(self) -> Self {
        if self.flip {
            self
        } else {
            Dihedral::translation(-self.shift)
        }
    }

    pub fn pow(self, n: i64) -> Self {
        if self.flip {
            if n.rem_euclid(2) == 0 {
                Self::IDENTITY
            } else {
                self
            }
        } else {
            Dihedral::translation(self.shift * n)
        }
    }

    /// Reduced alternating word in the two reflections `a = (0,1)` and
    /// `b = (1,1)` representing this element, as `(first letter, length)`.
    pub(crate) fn word(self) -> AltWord {
        let n = self.shift;
        match (self.flip, n) {
            (_, _) if self.is_identity() => AltWord { first: Letter::A, len: 0 },
            (false, n) if n > 0 => AltWord { first: Letter::B, len: 2 * n as u64 },
            (false, n) => AltWord { first: Letter::A, len: 2 * n.unsigned_abs() },
            (true, n) if n >= 1 => AltWord { first: Letter::B, len: 2 * n as u64 - 1 },
            (true, n) => AltWord { first: Letter::A, len: 2 * n.unsigned_abs() + 1 },
        }
    }
}

impl Mul for Dihedral {
    type Output = Dihedral;

    fn mul(self, rhs: Dihedral) -> Dihedral {
        let moved = if self.flip { -rhs.shift } else { rhs.shift };
        Dihedral { shift: self.shift + moved, flip: self.flip ^ rhs.flip }
    }
}

impl fmt::Debug for Dihedral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.shift, u8::from(self.flip))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Letter {
    A,
    B,
}

impl Letter {
    pub(crate) fn other(self) -> Letter {
        match self {
            Letter::A => Letter::B,
            Letter::B => Letter::A,
        }
    }
}

/// Alternating word `first, other, first, ...` of the given length.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct AltWord {
    pub first: Letter,
    pub len: u64,
}

impl AltWord {
    pub(crate) fn last(self) -> Option<Letter> {
        match self.len {
            0 => None,
            n if n % 2 == 1 => Some(self.first),
            _ => Some(self.first.other()),
        }
    }

    pub(crate) fn drop_last(self) -> AltWord {
        AltWord { first: self.first, len: self.len - 1 }
    }

    pub(crate) fn drop_first(self) -> AltWord {
        AltWord { first: self.first.other(), len: self.len - 1 }
    }

    #[cfg(test)]
    pub(crate) fn to_dihedral(self) -> Dihedral {
        let j = (self.len / 2) as i64;
        match (self.first, self.len % 2) {
            _ if self.len == 0 => Dihedral::IDENTITY,
            (Letter::B, 0) => Dihedral::translation(j),
            (Letter::B, _) => Dihedral::reflection(j + 1),
            (Letter::A, 0) => Dihedral::translation(-j),
            (Letter::A, _) => Dihedral::reflection(-j),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn letter(l: Letter) -> Dihedral {
        match l {
            Letter::A => Dihedral::reflection(0),
            Letter::B => Dihedral::reflection(1),
        }
    }

    fn spell(w: AltWord) -> Dihedral {
        let mut acc = Dihedral::IDENTITY;
        let mut l = w.first;
        for _ in 0..w.len {
            acc = acc * letter(l);
            l = l.other();
        }
        acc
    }

    #[test]
    fn reflections_are_involutions() {
        for n in -5..=5 {
            let r = Dihedral::reflection(n);
            assert_eq!(r * r, Dihedral::IDENTITY);
            assert_eq!(r.inv(), r);
        }
        assert!(Dihedral::translation(1).has_infinite_order());
        assert_eq!(Dihedral::translation(1).pow(7), Dihedral::translation(7));
    }

    #[test]
    fn words_spell_their_element() {
        for n in -6..=6 {
            for flip in [false, true] {
                let d = Dihedral::new(n, flip);
                let w = d.word();
                assert_eq!(spell(w), d, "{d:?}");
                assert_eq!(w.to_dihedral(), d);
            }
        }
    }

    #[test]
    fn translation_is_b_then_a() {
        assert_eq!(letter(Letter::B) * letter(Letter::A), Dihedral::translation(1));
    }
}
