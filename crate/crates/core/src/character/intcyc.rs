//! Integer-coefficient cyclotomic sums on machine words.
//!
//! Character values are algebraic integers, so in the power basis their
//! coefficients are integers. Bulk sums (orthogonality checks, fusion
//! coefficients) accumulate unreduced products in `i128` and reduce once.

use std::sync::Arc;

use crate::cyclotomic::{cyclotomic_polynomial, Cyclotomic};

use super::CharacterError;

pub(crate) struct IntField {
    n: u32,
    phi: Arc<Vec<i64>>,
    dim: usize,
}

pub(crate) type IntValue = Vec<i64>;

impl IntField {
    pub(crate) fn new(n: u32) -> Self {
        let phi = cyclotomic_polynomial(n);
        let dim = phi.len() - 1;
        IntField { n, phi, dim }
    }

    pub(crate) fn convert(&self, v: &Cyclotomic) -> Result<IntValue, CharacterError> {
        if v.order() != self.n {
            return Err(CharacterError::Mismatch(format!(
                "value in Q(zeta_{}) where Q(zeta_{}) was expected",
                v.order(),
                self.n
            )));
        }
        v.to_int_coeffs()
            .ok_or_else(|| CharacterError::Mismatch(format!("{v} is not an algebraic integer")))
    }

    pub(crate) fn accumulator(&self) -> Vec<i128> {
        vec![0; 2 * self.dim - 1]
    }

    /// `acc += weight · a · b`, unreduced.
    pub(crate) fn mul_add(&self, acc: &mut [i128], a: &[i64], b: &[i64], weight: i64) {
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let xw = x as i128 * weight as i128;
            for (j, &y) in b.iter().enumerate() {
                if y != 0 {
                    acc[i + j] += xw * y as i128;
                }
            }
        }
    }

    pub(crate) fn product(&self, a: &[i64], b: &[i64]) -> IntValue {
        let mut acc = self.accumulator();
        self.mul_add(&mut acc, a, b, 1);
        self.reduce(acc)
            .into_iter()
            .map(|c| i64::try_from(c).expect("character value products fit in i64"))
            .collect()
    }

    /// Reduces modulo `Φ_n` to `φ(n)` coefficients.
    pub(crate) fn reduce(&self, mut acc: Vec<i128>) -> Vec<i128> {
        let d = self.dim;
        for k in (d..acc.len()).rev() {
            let lead = acc[k];
            if lead == 0 {
                continue;
            }
            acc[k] = 0;
            for (i, &p) in self.phi[..d].iter().enumerate() {
                acc[k - d + i] -= lead * p as i128;
            }
        }
        acc.truncate(d);
        acc
    }

    /// The rational integer value of a reduced sum, if it is rational.
    pub(crate) fn as_integer(reduced: &[i128]) -> Option<i128> {
        reduced[1..].iter().all(|&c| c == 0).then_some(reduced[0])
    }
}
