use std::fmt;

use super::FiniteGroup;

/// Cayley table of Q₈ on the labels `1, -1, i, -i, j, -j, k, -k`, derived
/// from `i² = j² = k² = ijk = -1`.
const CAYLEY: [[u8; 8]; 8] = [
    [0, 1, 2, 3, 4, 5, 6, 7],
    [1, 0, 3, 2, 5, 4, 7, 6],
    [2, 3, 1, 0, 6, 7, 5, 4],
    [3, 2, 0, 1, 7, 6, 4, 5],
    [4, 5, 7, 6, 1, 0, 2, 3],
    [5, 4, 6, 7, 0, 1, 3, 2],
    [6, 7, 4, 5, 3, 2, 1, 0],
    [7, 6, 5, 4, 2, 3, 0, 1],
];

const NAMES: [&str; 8] = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"];

/// An element of the quaternion group, indexed `0..8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Q8Element(u8);

impl Q8Element {
    pub const ONE: Q8Element = Q8Element(0);
    /// The unique central involution.
    pub const MINUS_ONE: Q8Element = Q8Element(1);
    pub const I: Q8Element = Q8Element(2);
    pub const MINUS_I: Q8Element = Q8Element(3);
    pub const J: Q8Element = Q8Element(4);
    pub const MINUS_J: Q8Element = Q8Element(5);
    pub const K: Q8Element = Q8Element(6);
    pub const MINUS_K: Q8Element = Q8Element(7);

    pub fn new(index: usize) -> Option<Self> {
        (index < 8).then_some(Q8Element(index as u8))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn all() -> impl Iterator<Item = Q8Element> {
        (0..8).map(Q8Element)
    }

    pub fn inverse(self) -> Q8Element {
        let row = &CAYLEY[self.index()];
        Q8Element(row.iter().position(|&v| v == 0).unwrap() as u8)
    }

    pub fn order(self) -> u32 {
        match self.0 {
            0 => 1,
            1 => 2,
            _ => 4,
        }
    }
}

impl std::ops::Mul for Q8Element {
    type Output = Q8Element;

    fn mul(self, rhs: Q8Element) -> Q8Element {
        Q8Element(CAYLEY[self.index()][rhs.index()])
    }
}

impl fmt::Display for Q8Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(NAMES[self.index()])
    }
}

/// Q₈ as a [`FiniteGroup`] with the labelling of [`Q8Element`].
pub fn q8_group() -> FiniteGroup {
    FiniteGroup::from_fn(8, |a, b| CAYLEY[a][b] as usize).expect("Q8 Cayley table is a group")
}
