use crate::gf2::{Gf2Matrix, Gf2Vector, SPACE_SIZE};

use super::{FiniteGroup, GroupError, Subgroup};

/// An element `(h, q)` of `F₂⁴ ⋊ Q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pub h: Gf2Vector,
    pub q: usize,
}

/// `F₂⁴ ⋊ Q` for a group `Q` acting through 4×4 matrices.
///
/// Multiplication is `(h₁, q₁)(h₂, q₂) = (h₁ + ρ(q₁)h₂, q₁q₂)` and the
/// element `(h, q)` has index `|Q|·h + q`, so the identity is index 0 and
/// `F₂⁴` occupies the indices divisible by `|Q|`.
#[derive(Debug, Clone)]
pub struct SemidirectProduct {
    acting: FiniteGroup,
    action: Vec<Gf2Matrix>,
    group: FiniteGroup,
}

impl SemidirectProduct {
    pub fn new(acting: FiniteGroup, action: Vec<Gf2Matrix>) -> Result<Self, GroupError> {
        let m = acting.order();
        if action.len() != m {
            return Err(GroupError::TableSize {
                expected: m,
                actual: action.len(),
            });
        }
        if action.iter().any(|a| !a.is_invertible()) {
            return Err(GroupError::NotSubgroup("action contains a singular matrix".into()));
        }
        for a in 0..m {
            for b in 0..m {
                if action[a].mul(&action[b]) != action[acting.mul(a, b)] {
                    return Err(GroupError::NotHomomorphism(a, b));
                }
            }
        }
        let order = SPACE_SIZE * m;
        let group = FiniteGroup::from_fn(order, |x, y| {
            let (h1, q1) = (x / m, x % m);
            let (h2, q2) = (y / m, y % m);
            let h2 = Gf2Vector::new(h2 as u8).unwrap();
            let h = h1 as u8 ^ action[q1].apply(h2).bits();
            m * h as usize + acting.mul(q1, q2)
        })?;
        Ok(SemidirectProduct { acting, action, group })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn into_group(self) -> FiniteGroup {
        self.group
    }

    pub fn acting_group(&self) -> &FiniteGroup {
        &self.acting
    }

    pub fn action(&self, q: usize) -> Gf2Matrix {
        self.action[q]
    }

    pub fn index(&self, el: GroupElement) -> usize {
        self.acting.order() * el.h.bits() as usize + el.q
    }

    pub fn element(&self, index: usize) -> GroupElement {
        let m = self.acting.order();
        GroupElement {
            h: Gf2Vector::new((index / m) as u8).expect("index in range"),
            q: index % m,
        }
    }

    /// Index of `(h, 1)`.
    pub fn embed_vector(&self, h: Gf2Vector) -> usize {
        self.index(GroupElement { h, q: 0 })
    }

    /// Index of `(0, q)`.
    pub fn lift(&self, q: usize) -> usize {
        q
    }

    /// The normal subgroup `F₂⁴ × {1}`.
    pub fn vector_subgroup(&self) -> Subgroup {
        self.group
            .subgroup(Gf2Vector::all().map(|h| self.embed_vector(h)))
            .expect("vector part is a subgroup")
    }

    /// The complement `{0} × Q`.
    pub fn complement(&self) -> Subgroup {
        self.group
            .subgroup(0..self.acting.order())
            .expect("complement is a subgroup")
    }

    /// Acting elements whose matrix is the identity, other than 1.
    pub fn kernel_of_action(&self) -> Vec<usize> {
        (1..self.acting.order())
            .filter(|&q| self.action[q] == Gf2Matrix::IDENTITY)
            .collect()
    }

    pub fn check_faithful(&self) -> Result<(), GroupError> {
        match self.kernel_of_action().first() {
            Some(&q) => Err(GroupError::NotFaithful(q)),
            None => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn swap_action() -> SemidirectProduct {
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let swap = Gf2Matrix::permutation([1, 0, 3, 2]);
        SemidirectProduct::new(c2, vec![Gf2Matrix::IDENTITY, swap]).unwrap()
    }

    #[test]
    fn multiplication_convention() {
        let sd = swap_action();
        let g = sd.group();
        assert_eq!(g.order(), 32);
        g.check_axioms_exhaustive().unwrap();
        let x = GroupElement {
            h: Gf2Vector::new(0b0001).unwrap(),
            q: 1,
        };
        let y = GroupElement {
            h: Gf2Vector::new(0b0100).unwrap(),
            q: 1,
        };
        let xy = sd.element(g.mul(sd.index(x), sd.index(y)));
        // h₁ + ρ(q₁)h₂ = e₀ + swap(e₂) = e₀ + e₃
        assert_eq!(
            xy,
            GroupElement {
                h: Gf2Vector::new(0b1001).unwrap(),
                q: 0
            }
        );
    }

    #[test]
    fn subgroups_and_faithfulness() {
        let sd = swap_action();
        assert_eq!(sd.vector_subgroup().len(), 16);
        assert!(sd.group().is_normal(&sd.vector_subgroup()));
        assert_eq!(sd.complement().len(), 2);
        assert!(sd.check_faithful().is_ok());

        let trivial = SemidirectProduct::new(FiniteGroup::cyclic(2).unwrap(), vec![Gf2Matrix::IDENTITY; 2]).unwrap();
        assert_eq!(trivial.check_faithful(), Err(GroupError::NotFaithful(1)));
    }

    #[test]
    fn rejects_non_homomorphism() {
        let c3 = FiniteGroup::cyclic(3).unwrap();
        let swap = Gf2Matrix::permutation([1, 0, 2, 3]);
        let err = SemidirectProduct::new(c3, vec![Gf2Matrix::IDENTITY, swap, swap]).unwrap_err();
        assert!(matches!(err, GroupError::NotHomomorphism(..)));
    }
}
