//! Class functions and characters over exact cyclotomic values.
//!
//! A [`ClassStructure`] bundles a group with its conjugacy classes and power
//! maps; every [`ClassFunction`] holds a shared handle to one, and binary
//! operations refuse to mix functions on different groups.

mod constructive;
mod dixon;
mod fusion;
mod intcyc;
mod json;
mod table;

pub use constructive::{
    constructive_characters, elementary_abelian_characters, q8_irreducibles, ConstructiveCharacter,
};
pub use dixon::{dixon_prime, dixon_table};
pub use fusion::{fusion_tensor, FusionTensor};
pub use json::{CharacterJson, CharacterTableJson, ClassJson, FusionEntryJson, FusionJson, SCHEMA_VERSION};
pub use table::CharacterTable;

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::construction::LambdaChoice;
use crate::cyclotomic::Cyclotomic;
use crate::group::{ClassPartition, FiniteGroup, GroupError, Quotient, Subgroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharacterError {
    #[error("class functions belong to different groups")]
    DifferentGroups,
    #[error("expected {expected} class values, got {actual}")]
    WrongLength { expected: usize, actual: usize },
    #[error("values are not constant on the conjugacy class of element {0}")]
    NotClassFunction(usize),
    #[error("value {0} is not rational")]
    Irrational(String),
    #[error("quotient does not match the class function's group")]
    QuotientMismatch,
    #[error("Dixon algorithm failed: {0}")]
    Dixon(String),
    #[error("invalid character table: {0}")]
    InvalidTable(String),
    #[error("consistency check failed: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A group together with its classes and the class-level power maps.
#[derive(Debug)]
pub struct ClassStructure {
    group: FiniteGroup,
    classes: ClassPartition,
    exponent: u32,
    rep_orders: Vec<usize>,
    inverse_class: Vec<usize>,
    /// `power_map[c][j]` is the class of `g^j` for `g` in class `c`, `0 ≤ j < exponent`.
    power_map: Vec<Vec<usize>>,
}

impl ClassStructure {
    pub fn new(group: FiniteGroup) -> Arc<Self> {
        let classes = group.conjugacy_classes();
        let exponent = group.exponent() as u32;
        let k = classes.len();
        let mut rep_orders = Vec::with_capacity(k);
        let mut inverse_class = Vec::with_capacity(k);
        let mut power_map = Vec::with_capacity(k);
        for c in 0..k {
            let g = classes.representative(c);
            rep_orders.push(group.element_order(g));
            inverse_class.push(classes.class_of(group.inv(g)));
            let mut powers = Vec::with_capacity(exponent as usize);
            let mut x = 0;
            for _ in 0..exponent {
                powers.push(classes.class_of(x));
                x = group.mul(x, g);
            }
            power_map.push(powers);
        }
        Arc::new(ClassStructure {
            group,
            classes,
            exponent,
            rep_orders,
            inverse_class,
            power_map,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn classes(&self) -> &ClassPartition {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// Group exponent; character values live in `Q(ζ_exponent)`.
    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn class_size(&self, c: usize) -> usize {
        self.classes.class(c).len()
    }

    pub fn representative(&self, c: usize) -> usize {
        self.classes.representative(c)
    }

    pub fn representative_order(&self, c: usize) -> usize {
        self.rep_orders[c]
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.classes.class_of(g)
    }

    pub fn inverse_class(&self, c: usize) -> usize {
        self.inverse_class[c]
    }

    /// Class of `g^j` for `g` in class `c`.
    pub fn power_class(&self, c: usize, j: i64) -> usize {
        self.power_map[c][j.rem_euclid(self.exponent as i64) as usize]
    }

    pub fn square_class(&self, c: usize) -> usize {
        self.power_class(c, 2)
    }
}

/// A function on a group that is constant on conjugacy classes.
#[derive(Debug, Clone)]
pub struct ClassFunction {
    ctx: Arc<ClassStructure>,
    values: Vec<Cyclotomic>,
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ctx, &other.ctx) && self.values == other.values
    }
}

impl ClassFunction {
    /// One value per class; values are brought into `Q(ζ_exponent)`.
    pub fn new(ctx: &Arc<ClassStructure>, values: Vec<Cyclotomic>) -> Result<Self, CharacterError> {
        if values.len() != ctx.class_count() {
            return Err(CharacterError::WrongLength {
                expected: ctx.class_count(),
                actual: values.len(),
            });
        }
        let zero = Cyclotomic::zero(ctx.exponent());
        let values = values
            .into_iter()
            .map(|v| zero.try_add(&v))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| CharacterError::Mismatch(e.to_string()))?;
        Ok(ClassFunction {
            ctx: Arc::clone(ctx),
            values,
        })
    }

    /// Builds from per-element values, checking constancy on classes.
    pub fn from_element_fn(ctx: &Arc<ClassStructure>, f: impl Fn(usize) -> Cyclotomic) -> Result<Self, CharacterError> {
        let mut values: Vec<Option<Cyclotomic>> = vec![None; ctx.class_count()];
        for g in ctx.group().elements() {
            let v = f(g);
            let slot = &mut values[ctx.class_of(g)];
            match slot {
                Some(existing) if *existing != v => return Err(CharacterError::NotClassFunction(g)),
                Some(_) => {}
                None => *slot = Some(v),
            }
        }
        Self::new(ctx, values.into_iter().map(Option::unwrap).collect())
    }

    fn from_rationals(ctx: &Arc<ClassStructure>, values: impl IntoIterator<Item = i64>) -> Self {
        let n = ctx.exponent();
        ClassFunction {
            ctx: Arc::clone(ctx),
            values: values.into_iter().map(|v| Cyclotomic::from_integer(n, v)).collect(),
        }
    }

    pub fn trivial(ctx: &Arc<ClassStructure>) -> Self {
        Self::from_rationals(ctx, std::iter::repeat_n(1, ctx.class_count()))
    }

    /// Character of the regular representation.
    pub fn regular(ctx: &Arc<ClassStructure>) -> Self {
        let order = ctx.order() as i64;
        Self::from_rationals(ctx, (0..ctx.class_count()).map(|c| if c == 0 { order } else { 0 }))
    }

    pub fn context(&self) -> &Arc<ClassStructure> {
        &self.ctx
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value_at_class(&self, c: usize) -> &Cyclotomic {
        &self.values[c]
    }

    pub fn value_at(&self, g: usize) -> &Cyclotomic {
        &self.values[self.ctx.class_of(g)]
    }

    /// Value at the identity, when it is an integer.
    pub fn degree(&self) -> Option<BigInt> {
        self.values[0].as_integer()
    }

    pub fn is_real(&self) -> bool {
        self.values.iter().all(|v| v.conj() == *v)
    }

    fn same_group(&self, other: &Self) -> Result<(), CharacterError> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(CharacterError::DifferentGroups)
        }
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(&Cyclotomic, &Cyclotomic) -> Cyclotomic,
    ) -> Result<Self, CharacterError> {
        self.same_group(other)?;
        Ok(ClassFunction {
            ctx: Arc::clone(&self.ctx),
            values: self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self, CharacterError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, CharacterError> {
        self.zip_with(other, |a, b| a - b)
    }

    /// The tensor-product character.
    pub fn pointwise_product(&self, other: &Self) -> Result<Self, CharacterError> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        ClassFunction {
            ctx: Arc::clone(&self.ctx),
            values: self.values.iter().map(|v| v.scale(factor)).collect(),
        }
    }

    /// Classwise complex conjugate: the character of the dual.
    pub fn dual(&self) -> Self {
        ClassFunction {
            ctx: Arc::clone(&self.ctx),
            values: self.values.iter().map(Cyclotomic::conj).collect(),
        }
    }

    /// Applies `ζ ↦ ζ^k` to every value.
    pub fn galois(&self, k: i64) -> Self {
        ClassFunction {
            ctx: Arc::clone(&self.ctx),
            values: self.values.iter().map(|v| v.galois(k)).collect(),
        }
    }

    /// `|G|⁻¹ Σ_g a(g) conj(b(g))`, summed classwise.
    pub fn inner_product(&self, other: &Self) -> Result<Cyclotomic, CharacterError> {
        self.same_group(other)?;
        let n = self.ctx.exponent();
        let mut acc = Cyclotomic::zero(n);
        for (c, (a, b)) in self.values.iter().zip(&other.values).enumerate() {
            let size = Cyclotomic::from_integer(n, self.ctx.class_size(c) as i64);
            acc = &acc + &(&(a * &b.conj()) * &size);
        }
        Ok(acc.scale(&BigRational::new(BigInt::one(), self.ctx.order().into())))
    }

    /// Inner product that must come out rational.
    pub fn rational_inner_product(&self, other: &Self) -> Result<BigRational, CharacterError> {
        let ip = self.inner_product(other)?;
        ip.as_rational()
            .ok_or_else(|| CharacterError::Irrational(ip.to_string()))
    }

    /// `ν₂ = |G|⁻¹ Σ_g χ(g²)`.
    pub fn fs_indicator(&self) -> Result<BigRational, CharacterError> {
        let n = self.ctx.exponent();
        let mut acc = Cyclotomic::zero(n);
        for c in 0..self.ctx.class_count() {
            let size = Cyclotomic::from_integer(n, self.ctx.class_size(c) as i64);
            acc = &acc + &(&self.values[self.ctx.square_class(c)] * &size);
        }
        let acc = acc.scale(&BigRational::new(BigInt::one(), self.ctx.order().into()));
        acc.as_rational()
            .ok_or_else(|| CharacterError::Irrational(acc.to_string()))
    }

    /// Restriction to a subgroup; `sub_ctx` must be the subgroup as a group
    /// with `embedding[i]` the ambient index of its element `i`.
    pub fn restrict(
        &self,
        sub_ctx: &Arc<ClassStructure>,
        embedding: &[usize],
    ) -> Result<ClassFunction, CharacterError> {
        ClassFunction::from_element_fn(sub_ctx, |i| self.value_at(embedding[i]).clone())
    }

    /// Composition with `G → G/N`; `self` must live on `quotient.group`.
    pub fn lift_from_quotient(
        &self,
        ctx: &Arc<ClassStructure>,
        quotient: &Quotient,
    ) -> Result<ClassFunction, CharacterError> {
        if *self.ctx.group() != quotient.group || quotient.projection.len() != ctx.order() {
            return Err(CharacterError::QuotientMismatch);
        }
        ClassFunction::from_element_fn(ctx, |g| self.value_at(quotient.projection[g]).clone())
    }
}

/// `χ(g) = |N|⁻¹ Σ_{t ∈ G} f°(t⁻¹gt)` with `f°` zero off `N`.
///
/// `f` is only called on members of `normal`.
pub fn induce_from_normal(
    ctx: &Arc<ClassStructure>,
    normal: &Subgroup,
    f: impl Fn(usize) -> Cyclotomic,
) -> Result<ClassFunction, CharacterError> {
    let group = ctx.group();
    group.check_normal(normal)?;
    let n = ctx.exponent();
    let scale = BigRational::new(BigInt::one(), normal.len().into());
    let values = (0..ctx.class_count())
        .map(|c| {
            let g = ctx.representative(c);
            if !normal.contains(g) {
                return Cyclotomic::zero(n);
            }
            group
                .elements()
                .map(|t| f(group.conjugate(g, t)))
                .fold(Cyclotomic::zero(n), |acc, v| {
                    acc.try_add(&v).expect("compatible orders")
                })
                .scale(&scale)
        })
        .collect();
    ClassFunction::new(ctx, values)
}

/// `χ = Ind_H^G λ`.
pub fn induce(lambda: &LambdaChoice, ctx: &Arc<ClassStructure>) -> Result<ClassFunction, CharacterError> {
    let n = ctx.exponent();
    induce_from_normal(ctx, lambda.domain(), |h| {
        Cyclotomic::from_integer(n, lambda.value(h).expect("argument lies in H") as i64)
    })
}

/// True iff `ˣλ ≠ λ` for every `x ∉ H`, where `ˣλ(h) = λ(x⁻¹hx)`.
pub fn conjugate_stabilizer_check(lambda: &LambdaChoice, ctx: &Arc<ClassStructure>) -> bool {
    let group = ctx.group();
    let h = lambda.domain();
    group
        .elements()
        .filter(|&x| !h.contains(x))
        .all(|x| h.iter().any(|g| lambda.value(group.conjugate(g, x)) != lambda.value(g)))
}

/// `(λ²)↑G`, checked against the lifted regular character of `G/H`.
pub fn induced_square_constituent(
    lambda: &LambdaChoice,
    ctx: &Arc<ClassStructure>,
) -> Result<ClassFunction, CharacterError> {
    let n = ctx.exponent();
    let h = lambda.domain();
    if let Some(g) = h.iter().find(|&g| lambda.value(g).unwrap().pow(2) != 1) {
        return Err(CharacterError::Mismatch(format!("lambda^2 is not trivial at {g}")));
    }
    let induced = induce_from_normal(ctx, h, |g| {
        let v = lambda.value(g).expect("argument lies in H") as i64;
        Cyclotomic::from_integer(n, v * v)
    })?;
    let quotient = ctx.group().quotient(h)?;
    let qctx = ClassStructure::new(quotient.group.clone());
    let regular = ClassFunction::regular(&qctx).lift_from_quotient(ctx, &quotient)?;
    if induced != regular {
        return Err(CharacterError::Mismatch(
            "(lambda^2)^G differs from the regular character of G/H".into(),
        ));
    }
    Ok(induced)
}

pub(crate) fn rational_to_i64(r: &BigRational) -> Option<i64> {
    use num_traits::ToPrimitive;
    if r.is_integer() {
        r.to_integer().to_i64()
    } else {
        None
    }
}

pub(crate) fn is_zero_or_unit(r: &BigRational) -> bool {
    r.is_zero() || r.is_one() || *r == -BigRational::one()
}
