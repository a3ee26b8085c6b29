//! Finite groups given by a multiplication table over indices `0..n`.
//!
//! Index 0 is always the identity. Everything here is brute force: the groups
//! of interest have at most a thousand or so elements, so `O(n²)` orbit and
//! closure computations are cheap.

mod description;
mod q8;
mod semidirect;

pub use description::{parse_group_description, GroupDescription, ParseError, Relation, Word};
pub use q8::{q8_group, Q8Element};
pub use semidirect::{GroupElement, SemidirectProduct};

use std::collections::VecDeque;

use num_integer::Integer;
use thiserror::Error;

/// Default refusal threshold for the generic machinery.
pub const DEFAULT_MAX_ORDER: usize = 1024;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("a group must have at least one element")]
    Empty,
    #[error("multiplication table has {actual} entries, expected {expected}")]
    TableSize { expected: usize, actual: usize },
    #[error("table entry {row}*{col} = {value} is out of range")]
    OutOfRange { row: usize, col: usize, value: usize },
    #[error("element 0 is not a two-sided identity (fails at element {0})")]
    IdentityNotFirst(usize),
    #[error("row or column {0} is not a permutation; inverses are not unique")]
    NotLatin(usize),
    #[error("associativity fails: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("element index {0} is out of range")]
    NoSuchElement(usize),
    #[error("element set is not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("subgroup is not normal: conjugating {element} by {by} leaves it")]
    NotNormal { element: usize, by: usize },
    #[error("group order {order} exceeds the size cap {cap}")]
    TooLarge { order: usize, cap: usize },
    #[error("action is not a homomorphism at ({0}, {1})")]
    NotHomomorphism(usize, usize),
    #[error("action is not faithful: element {0} acts trivially")]
    NotFaithful(usize),
}

/// A finite group over the index set `0..order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Validates the table (identity at 0, Latin square, associativity) and
    /// builds the group.
    pub fn from_table(order: usize, table: Vec<usize>) -> Result<Self, GroupError> {
        if order == 0 {
            return Err(GroupError::Empty);
        }
        if table.len() != order * order {
            return Err(GroupError::TableSize {
                expected: order * order,
                actual: table.len(),
            });
        }
        if let Some(pos) = table.iter().position(|&v| v >= order) {
            return Err(GroupError::OutOfRange {
                row: pos / order,
                col: pos % order,
                value: table[pos],
            });
        }
        let table: Vec<u32> = table.into_iter().map(|v| v as u32).collect();
        for a in 0..order {
            if table[a] as usize != a || table[a * order] as usize != a {
                return Err(GroupError::IdentityNotFirst(a));
            }
        }
        let mut seen = vec![usize::MAX; order];
        for r in 0..order {
            for c in 0..order {
                let v = table[r * order + c] as usize;
                if seen[v] == 2 * r {
                    return Err(GroupError::NotLatin(r));
                }
                seen[v] = 2 * r;
            }
        }
        for c in 0..order {
            for r in 0..order {
                let v = table[r * order + c] as usize;
                if seen[v] == 2 * c + 1 {
                    return Err(GroupError::NotLatin(c));
                }
                seen[v] = 2 * c + 1;
            }
        }
        let mut inverses = vec![0; order];
        for (a, inv) in inverses.iter_mut().enumerate() {
            *inv = (0..order)
                .find(|&b| table[a * order + b] == 0)
                .ok_or(GroupError::NotLatin(a))?;
        }
        let group = FiniteGroup { order, table, inverses };
        group.check_associativity()?;
        Ok(group)
    }

    pub fn from_fn(order: usize, mul: impl Fn(usize, usize) -> usize) -> Result<Self, GroupError> {
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                table.push(mul(a, b));
            }
        }
        Self::from_table(order, table)
    }

    pub fn trivial() -> Self {
        FiniteGroup {
            order: 1,
            table: vec![0],
            inverses: vec![0],
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn pow(&self, a: usize, exp: i64) -> usize {
        let base = if exp < 0 { self.inv(a) } else { a };
        let mut acc = 0;
        for _ in 0..exp.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    /// `t⁻¹ g t`.
    pub fn conjugate(&self, g: usize, t: usize) -> usize {
        self.mul(self.mul(self.inv(t), g), t)
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Least common multiple of all element orders.
    pub fn exponent(&self) -> usize {
        self.exponent_of(self.elements())
    }

    pub fn exponent_of(&self, elements: impl IntoIterator<Item = usize>) -> usize {
        elements.into_iter().fold(1, |acc, g| acc.lcm(&self.element_order(g)))
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| (a..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    fn check_element(&self, g: usize) -> Result<(), GroupError> {
        if g < self.order {
            Ok(())
        } else {
            Err(GroupError::NoSuchElement(g))
        }
    }

    /// Light's associativity test against a generating set.
    ///
    /// The elements `c` with `(ab)c = a(bc)` for all `a, b` are closed under
    /// products, so checking every generator suffices once the left-bracketed
    /// products of the generators reach the whole table.
    fn check_associativity(&self) -> Result<(), GroupError> {
        let n = self.order;
        let mut gens: Vec<usize> = Vec::new();
        let mut reached = vec![false; n];
        reached[0] = true;
        while let Some(g) = reached.iter().position(|r| !r) {
            gens.push(g);
            let mut queue: VecDeque<usize> = (0..n).filter(|&x| reached[x]).collect();
            while let Some(x) = queue.pop_front() {
                for &s in &gens {
                    let y = self.mul(x, s);
                    if !reached[y] {
                        reached[y] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        for &c in &gens {
            for a in 0..n {
                for b in 0..n {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(())
    }

    /// Closure, identity, inverses and associativity checked over every
    /// element, pair and triple. `O(n³)`; meant for tests.
    pub fn check_axioms_exhaustive(&self) -> Result<(), GroupError> {
        let n = self.order;
        for a in 0..n {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                return Err(GroupError::IdentityNotFirst(a));
            }
            let inv = self.inv(a);
            if self.mul(a, inv) != 0 || self.mul(inv, a) != 0 {
                return Err(GroupError::NotLatin(a));
            }
            for b in 0..n {
                let ab = self.mul(a, b);
                if ab >= n {
                    return Err(GroupError::OutOfRange {
                        row: a,
                        col: b,
                        value: ab,
                    });
                }
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(())
    }

    /// Conjugacy classes by brute-force orbits, ordered by least member.
    pub fn conjugacy_classes(&self) -> ClassPartition {
        let n = self.order;
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for g in 0..n {
            if class_of[g] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut class = Vec::new();
            for t in 0..n {
                let c = self.conjugate(g, t);
                if class_of[c] == usize::MAX {
                    class_of[c] = id;
                    class.push(c);
                }
            }
            class.sort_unstable();
            classes.push(class);
        }
        ClassPartition { classes, class_of }
    }

    pub fn centralizer(&self, g: usize) -> Subgroup {
        let members = self.elements().filter(|&x| self.mul(x, g) == self.mul(g, x)).collect();
        Subgroup::from_sorted_unchecked(self.order, members)
    }

    /// Elements commuting with every element of `sub`.
    pub fn centralizer_of(&self, sub: &Subgroup) -> Subgroup {
        let members = self
            .elements()
            .filter(|&x| sub.iter().all(|g| self.mul(x, g) == self.mul(g, x)))
            .collect();
        Subgroup::from_sorted_unchecked(self.order, members)
    }

    pub fn center(&self) -> Subgroup {
        self.centralizer_of(&self.whole())
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_sorted_unchecked(self.order, self.elements().collect())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_sorted_unchecked(self.order, vec![0])
    }

    /// Least subgroup containing `gens`, by closure under multiplication.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Subgroup {
        let mut inside = vec![false; self.order];
        inside[0] = true;
        let mut members = vec![0];
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = self.mul(x, s);
                if !inside[y] {
                    inside[y] = true;
                    members.push(y);
                    queue.push_back(y);
                }
            }
        }
        members.sort_unstable();
        Subgroup::from_sorted_unchecked(self.order, members)
    }

    /// The set `{[h, x] : h ∈ sub}` without closing it up.
    pub fn commutator_image(&self, sub: &Subgroup, x: usize) -> Vec<usize> {
        let mut image: Vec<usize> = sub.iter().map(|h| self.commutator(h, x)).collect();
        image.sort_unstable();
        image.dedup();
        image
    }

    /// `[sub, x] = ⟨[h, x] : h ∈ sub⟩`.
    pub fn commutator_span(&self, sub: &Subgroup, x: usize) -> Subgroup {
        self.subgroup_generated(&self.commutator_image(sub, x))
    }

    /// All `g` with `g² ∈ sub`, increasing.
    pub fn squares_in(&self, sub: &Subgroup) -> Vec<usize> {
        self.elements().filter(|&g| sub.contains(self.mul(g, g))).collect()
    }

    pub fn normalizes(&self, sub: &Subgroup, x: usize) -> bool {
        sub.iter().all(|h| sub.contains(self.conjugate(h, x)))
    }

    pub fn check_normal(&self, sub: &Subgroup) -> Result<(), GroupError> {
        self.check_subgroup(sub)?;
        for by in self.elements() {
            if let Some(element) = sub.iter().find(|&h| !sub.contains(self.conjugate(h, by))) {
                return Err(GroupError::NotNormal { element, by });
            }
        }
        Ok(())
    }

    pub fn is_normal(&self, sub: &Subgroup) -> bool {
        self.check_normal(sub).is_ok()
    }

    /// Verifies that `sub` belongs to this group and is closed.
    pub fn check_subgroup(&self, sub: &Subgroup) -> Result<(), GroupError> {
        if sub.ambient_order != self.order {
            return Err(GroupError::NotSubgroup(format!(
                "belongs to a group of order {}",
                sub.ambient_order
            )));
        }
        if !sub.contains(0) {
            return Err(GroupError::NotSubgroup("missing the identity".into()));
        }
        for a in sub.iter() {
            if !sub.contains(self.inv(a)) {
                return Err(GroupError::NotSubgroup(format!("inverse of {a} missing")));
            }
            for b in sub.iter() {
                if !sub.contains(self.mul(a, b)) {
                    return Err(GroupError::NotSubgroup(format!("{a}*{b} missing")));
                }
            }
        }
        Ok(())
    }

    /// Builds a validated subgroup from arbitrary member indices.
    pub fn subgroup(&self, members: impl IntoIterator<Item = usize>) -> Result<Subgroup, GroupError> {
        let mut members: Vec<usize> = members.into_iter().collect();
        for &m in &members {
            self.check_element(m)?;
        }
        members.sort_unstable();
        members.dedup();
        let sub = Subgroup::from_sorted_unchecked(self.order, members);
        self.check_subgroup(&sub)?;
        Ok(sub)
    }

    /// Quotient by a normal subgroup; cosets are ordered by least member.
    pub fn quotient(&self, normal: &Subgroup) -> Result<Quotient, GroupError> {
        self.check_normal(normal)?;
        let mut projection = vec![usize::MAX; self.order];
        let mut representatives = Vec::new();
        for g in self.elements() {
            if projection[g] != usize::MAX {
                continue;
            }
            let id = representatives.len();
            representatives.push(g);
            for h in normal.iter() {
                projection[self.mul(g, h)] = id;
            }
        }
        let m = representatives.len();
        let mut table = Vec::with_capacity(m * m);
        for &a in &representatives {
            for &b in &representatives {
                table.push(projection[self.mul(a, b)]);
            }
        }
        let group = FiniteGroup::from_table(m, table)?;
        Ok(Quotient {
            group,
            projection,
            representatives,
        })
    }

    /// `sub` as a group in its own right; element `i` of the result is
    /// `embedding[i]` here.
    pub fn restrict(&self, sub: &Subgroup) -> Result<(FiniteGroup, Vec<usize>), GroupError> {
        self.check_subgroup(sub)?;
        let embedding = sub.members().to_vec();
        let mut local = vec![usize::MAX; self.order];
        for (i, &g) in embedding.iter().enumerate() {
            local[g] = i;
        }
        let group = FiniteGroup::from_fn(embedding.len(), |a, b| local[self.mul(embedding[a], embedding[b])])?;
        Ok((group, embedding))
    }

    pub fn check_order_cap(&self, cap: usize) -> Result<(), GroupError> {
        if self.order > cap {
            Err(GroupError::TooLarge { order: self.order, cap })
        } else {
            Ok(())
        }
    }

    /// Number of solutions of `g² = 1`.
    pub fn involution_count(&self) -> usize {
        self.elements().filter(|&g| self.mul(g, g) == 0).count()
    }

    /// Elementary abelian group of order `2^rank`, multiplication is XOR.
    pub fn elementary_abelian(rank: u32) -> Self {
        let n = 1usize << rank;
        FiniteGroup::from_fn(n, |a, b| a ^ b).expect("XOR table is a group")
    }

    pub fn cyclic(n: usize) -> Result<Self, GroupError> {
        FiniteGroup::from_fn(n, |a, b| (a + b) % n)
    }
}

/// A subset of a group's indices, sorted, with a membership mask.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    ambient_order: usize,
    members: Vec<usize>,
    mask: Vec<bool>,
}

impl Subgroup {
    fn from_sorted_unchecked(ambient_order: usize, members: Vec<usize>) -> Self {
        let mut mask = vec![false; ambient_order];
        for &m in &members {
            mask[m] = true;
        }
        Subgroup {
            ambient_order,
            members,
            mask,
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.members == [0]
    }

    pub fn contains(&self, g: usize) -> bool {
        self.mask.get(g).copied().unwrap_or(false)
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.iter().all(|g| other.contains(g))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let members = self.iter().filter(|&g| other.contains(g)).collect();
        Subgroup::from_sorted_unchecked(self.ambient_order, members)
    }
}

/// Conjugacy classes of a group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassPartition {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl ClassPartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class(&self, c: usize) -> &[usize] {
        &self.classes[c]
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    /// Least member of class `c`.
    pub fn representative(&self, c: usize) -> usize {
        self.classes[c][0]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }
}

/// `G/N` with its projection map.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: FiniteGroup,
    /// Coset index of each element of the ambient group.
    pub projection: Vec<usize>,
    /// Least member of each coset.
    pub representatives: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_group() {
        let g = FiniteGroup::trivial();
        assert_eq!(g.conjugacy_classes().len(), 1);
        assert_eq!(g.exponent(), 1);
        g.check_axioms_exhaustive().unwrap();
    }

    #[test]
    fn q8_classes_and_center() {
        let q8 = q8_group();
        let classes = q8.conjugacy_classes();
        let mut sizes = classes.sizes();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
        assert_eq!(classes.class(0), &[0]);
        assert_eq!(q8.center().members(), &[0, 1]);
        assert_eq!(q8.exponent(), 4);
        assert_eq!(q8.squares_in(&q8.trivial_subgroup()), vec![0, 1]);
    }

    #[test]
    fn centralizer_of_identity_is_everything() {
        let q8 = q8_group();
        assert_eq!(q8.centralizer(0), q8.whole());
    }

    #[test]
    fn generation() {
        let h16 = FiniteGroup::elementary_abelian(4);
        assert!(h16.subgroup_generated(&[]).is_trivial());
        assert_eq!(h16.subgroup_generated(&[1, 2, 4, 8]).len(), 16);
        assert_eq!(h16.exponent(), 2);
        assert_eq!(h16.subgroup_generated(&[3, 5]).members(), &[0, 3, 5, 6]);
    }

    #[test]
    fn rejects_bad_tables() {
        assert_eq!(FiniteGroup::from_table(0, vec![]), Err(GroupError::Empty));
        assert!(matches!(
            FiniteGroup::from_table(2, vec![0, 1, 1]),
            Err(GroupError::TableSize { .. })
        ));
        assert!(matches!(
            FiniteGroup::from_table(2, vec![0, 1, 1, 2]),
            Err(GroupError::OutOfRange { .. })
        ));
        assert!(matches!(
            FiniteGroup::from_table(2, vec![1, 0, 0, 1]),
            Err(GroupError::IdentityNotFirst(_))
        ));
        assert!(matches!(
            FiniteGroup::from_table(3, vec![0, 1, 2, 1, 1, 0, 2, 0, 1]),
            Err(GroupError::NotLatin(_))
        ));
    }

    #[test]
    fn rejects_non_associative_loop() {
        // The smallest non-associative loop has order 5.
        let table = vec![
            0, 1, 2, 3, 4, //
            1, 0, 3, 4, 2, //
            2, 4, 0, 1, 3, //
            3, 2, 4, 0, 1, //
            4, 3, 1, 2, 0,
        ];
        assert!(matches!(
            FiniteGroup::from_table(5, table),
            Err(GroupError::NotAssociative(..))
        ));
    }

    #[test]
    fn quotient_of_q8_by_center() {
        let q8 = q8_group();
        let quotient = q8.quotient(&q8.center()).unwrap();
        assert_eq!(quotient.group.order(), 4);
        assert_eq!(quotient.group.exponent(), 2);
        assert_eq!(quotient.representatives, vec![0, 2, 4, 6]);
    }

    #[test]
    fn non_normal_subgroup_rejected() {
        let s3 = FiniteGroup::from_fn(6, |a, b| {
            // (r^i s^e): r^i s^e r^j s^f = r^(i + (-1)^e j) s^(e+f)
            let (i, e) = (a % 3, a / 3);
            let (j, f) = (b % 3, b / 3);
            let k = if e == 0 { i + j } else { i + 3 - j } % 3;
            k % 3 + 3 * ((e + f) % 2)
        })
        .unwrap();
        let reflection = s3.subgroup([0, 3]).unwrap();
        assert!(matches!(s3.quotient(&reflection), Err(GroupError::NotNormal { .. })));
        assert!(s3.subgroup([0, 1]).is_err());
    }

    #[test]
    fn restriction_round_trip() {
        let q8 = q8_group();
        let sub = q8.subgroup_generated(&[2]);
        let (local, embedding) = q8.restrict(&sub).unwrap();
        assert_eq!(local.order(), 4);
        for a in local.elements() {
            for b in local.elements() {
                assert_eq!(embedding[local.mul(a, b)], q8.mul(embedding[a], embedding[b]));
            }
        }
    }

    #[test]
    fn order_cap() {
        let g = FiniteGroup::elementary_abelian(4);
        assert!(g.check_order_cap(16).is_ok());
        assert_eq!(g.check_order_cap(8), Err(GroupError::TooLarge { order: 16, cap: 8 }));
    }
}
