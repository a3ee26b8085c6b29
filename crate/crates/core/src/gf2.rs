//! Linear algebra over GF(2) in dimension 4.
//!
//! Vectors are packed into the low four bits of a `u8`; coordinate `i` is bit
//! `i`. A matrix is four such rows, and entry `(i, j)` is bit `j` of row `i`.
//! Lexicographic order on bit patterns is plain numeric order of the packed
//! value, and matrices are ordered by the 16-bit row concatenation
//! `row0 << 12 | row1 << 8 | row2 << 4 | row3`.

use std::fmt;

use thiserror::Error;

pub const DIM: usize = 4;
/// Number of vectors in F₂⁴.
pub const SPACE_SIZE: usize = 1 << DIM;
/// |GL₄(2)|.
pub const GL4_ORDER: usize = 20160;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("matrix {0} is singular over GF(2)")]
    Singular(Gf2Matrix),
    #[error("value {0} does not fit in 4 bits")]
    OutOfRange(u32),
}

/// An element of F₂⁴, written additively.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Gf2Vector(u8);

impl Gf2Vector {
    pub const ZERO: Gf2Vector = Gf2Vector(0);

    pub fn new(bits: u8) -> Result<Self, Gf2Error> {
        if bits as usize >= SPACE_SIZE {
            return Err(Gf2Error::OutOfRange(bits as u32));
        }
        Ok(Gf2Vector(bits))
    }

    /// Unit vector along coordinate `i`.
    pub fn basis(i: usize) -> Self {
        assert!(i < DIM, "basis index {i} out of range");
        Gf2Vector(1 << i)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn coord(self, i: usize) -> u8 {
        (self.0 >> i) & 1
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Standard dot product, valued in {0, 1}.
    pub fn dot(self, other: Gf2Vector) -> u8 {
        ((self.0 & other.0).count_ones() & 1) as u8
    }

    /// All 16 vectors in increasing bit order.
    pub fn all() -> impl Iterator<Item = Gf2Vector> {
        (0..SPACE_SIZE as u8).map(Gf2Vector)
    }
}

impl std::ops::Add for Gf2Vector {
    type Output = Gf2Vector;

    #[allow(clippy::suspicious_arithmetic_impl)] // addition in characteristic 2
    fn add(self, rhs: Gf2Vector) -> Gf2Vector {
        Gf2Vector(self.0 ^ rhs.0)
    }
}

impl std::ops::AddAssign for Gf2Vector {
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: Gf2Vector) {
        self.0 ^= rhs.0;
    }
}

impl fmt::Display for Gf2Vector {
    /// Coordinates in index order, e.g. `1010` for e₀ + e₂.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..DIM {
            write!(f, "{}", self.coord(i))?;
        }
        Ok(())
    }
}

/// A 4×4 matrix over GF(2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    rows: [u8; DIM],
}

impl Gf2Matrix {
    pub const IDENTITY: Gf2Matrix = Gf2Matrix { rows: [1, 2, 4, 8] };
    pub const ZERO: Gf2Matrix = Gf2Matrix { rows: [0; DIM] };

    pub fn from_rows(rows: [Gf2Vector; DIM]) -> Self {
        Gf2Matrix {
            rows: rows.map(Gf2Vector::bits),
        }
    }

    /// Inverse of [`Gf2Matrix::key`].
    pub fn from_key(key: u16) -> Self {
        Gf2Matrix {
            rows: [
                (key >> 12) as u8 & 0xf,
                (key >> 8) as u8 & 0xf,
                (key >> 4) as u8 & 0xf,
                key as u8 & 0xf,
            ],
        }
    }

    /// Row-concatenation value; the canonical ordering key.
    pub fn key(&self) -> u16 {
        (self.rows[0] as u16) << 12 | (self.rows[1] as u16) << 8 | (self.rows[2] as u16) << 4 | self.rows[3] as u16
    }

    pub fn row(&self, i: usize) -> Gf2Vector {
        Gf2Vector(self.rows[i])
    }

    pub fn rows(&self) -> [Gf2Vector; DIM] {
        self.rows.map(Gf2Vector)
    }

    pub fn entry(&self, i: usize, j: usize) -> u8 {
        (self.rows[i] >> j) & 1
    }

    /// Permutation matrix sending basis vector `e_j` to `e_{perm[j]}`.
    pub fn permutation(perm: [usize; DIM]) -> Self {
        let mut rows = [0u8; DIM];
        for (j, &i) in perm.iter().enumerate() {
            rows[i] |= 1 << j;
        }
        Gf2Matrix { rows }
    }

    pub fn apply(&self, v: Gf2Vector) -> Gf2Vector {
        let mut out = 0u8;
        for (i, &row) in self.rows.iter().enumerate() {
            out |= (((row & v.0).count_ones() & 1) as u8) << i;
        }
        Gf2Vector(out)
    }

    pub fn mul(&self, other: &Gf2Matrix) -> Gf2Matrix {
        let mut rows = [0u8; DIM];
        for (i, out) in rows.iter_mut().enumerate() {
            let a = self.rows[i];
            for (j, &b) in other.rows.iter().enumerate() {
                if (a >> j) & 1 == 1 {
                    *out ^= b;
                }
            }
        }
        Gf2Matrix { rows }
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let mut rows = [0u8; DIM];
        for (i, row) in rows.iter_mut().enumerate() {
            for j in 0..DIM {
                *row |= self.entry(j, i) << j;
            }
        }
        Gf2Matrix { rows }
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut rows = self.rows;
        let mut rank = 0;
        for col in 0..DIM {
            let Some(pivot) = (rank..DIM).find(|&r| (rows[r] >> col) & 1 == 1) else {
                continue;
            };
            rows.swap(rank, pivot);
            for r in 0..DIM {
                if r != rank && (rows[r] >> col) & 1 == 1 {
                    rows[r] ^= rows[rank];
                }
            }
            rank += 1;
        }
        rank
    }

    /// Determinant over F₂; 1 exactly when the matrix is invertible.
    pub fn determinant(&self) -> u8 {
        u8::from(self.rank() == DIM)
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == DIM
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<Gf2Matrix, Gf2Error> {
        let mut left = self.rows;
        let mut right = Self::IDENTITY.rows;
        for col in 0..DIM {
            let pivot = (col..DIM)
                .find(|&r| (left[r] >> col) & 1 == 1)
                .ok_or(Gf2Error::Singular(*self))?;
            left.swap(col, pivot);
            right.swap(col, pivot);
            for r in 0..DIM {
                if r != col && (left[r] >> col) & 1 == 1 {
                    left[r] ^= left[col];
                    right[r] ^= right[col];
                }
            }
        }
        Ok(Gf2Matrix { rows: right })
    }

    pub fn pow(&self, mut exp: u32) -> Gf2Matrix {
        let mut base = *self;
        let mut acc = Self::IDENTITY;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative order in GL₄(2).
    pub fn order(&self) -> Result<u32, Gf2Error> {
        if !self.is_invertible() {
            return Err(Gf2Error::Singular(*self));
        }
        let mut k = 1;
        let mut power = *self;
        while power != Self::IDENTITY {
            power = power.mul(self);
            k += 1;
        }
        Ok(k)
    }
}

impl PartialOrd for Gf2Matrix {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Gf2Matrix {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for Gf2Matrix {
    /// Rows separated by `/`, e.g. `1000/0100/0010/0001`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows().iter().enumerate() {
            if i > 0 {
                f.write_str("/")?;
            }
            write!(f, "{row}")?;
        }
        Ok(())
    }
}

/// Multiplicative order of a matrix; rejects singular input.
pub fn mat_order(a: &Gf2Matrix) -> Result<u32, Gf2Error> {
    a.order()
}

pub fn mat_mul(a: &Gf2Matrix, b: &Gf2Matrix) -> Gf2Matrix {
    a.mul(b)
}

/// A linear functional F₂⁴ → F₂, `v ↦ covector · v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Functional {
    covector: Gf2Vector,
}

impl Functional {
    pub fn new(covector: Gf2Vector) -> Self {
        Functional { covector }
    }

    pub fn covector(&self) -> Gf2Vector {
        self.covector
    }

    pub fn eval(&self, v: Gf2Vector) -> u8 {
        self.covector.dot(v)
    }

    /// Value of the associated character `(-1)^{covector · v}`.
    pub fn sign(&self, v: Gf2Vector) -> i8 {
        if self.eval(v) == 0 {
            1
        } else {
            -1
        }
    }

    pub fn kernel(&self) -> Vec<Gf2Vector> {
        Gf2Vector::all().filter(|&v| self.eval(v) == 0).collect()
    }
}

/// The 15 nonzero functionals in increasing covector order.
pub fn enumerate_functionals() -> Vec<Functional> {
    Gf2Vector::all().filter(|v| !v.is_zero()).map(Functional::new).collect()
}

/// Vectors fixed by `a`, in increasing order.
pub fn fixed_space(a: &Gf2Matrix) -> Vec<Gf2Vector> {
    Gf2Vector::all().filter(|&v| a.apply(v) == v).collect()
}

/// GL₄(2) in increasing key order.
pub fn general_linear_group() -> Vec<Gf2Matrix> {
    (0..=u16::MAX)
        .map(Gf2Matrix::from_key)
        .filter(Gf2Matrix::is_invertible)
        .collect()
}
