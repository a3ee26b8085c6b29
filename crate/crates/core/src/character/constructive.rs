//! Characters built directly from the group structure, independent of the
//! Dixon computation.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::construction::{Counterexample, LambdaChoice};
use crate::cyclotomic::Cyclotomic;
use crate::group::q8_group;

use super::{induce, CharacterError, ClassFunction, ClassStructure};

/// A named character.
#[derive(Debug, Clone)]
pub struct ConstructiveCharacter {
    pub name: String,
    pub character: ClassFunction,
}

/// The five irreducibles of Q₈ on the labelling of [`crate::group::Q8Element`]:
/// four linear characters through `Q₈/⟨-1⟩` and the degree-2 character
/// `φ = (ρ_reg − Σ linear) / 2`.
pub fn q8_irreducibles(ctx: &Arc<ClassStructure>) -> Result<Vec<ConstructiveCharacter>, CharacterError> {
    if *ctx.group() != q8_group() {
        return Err(CharacterError::Mismatch("group is not the labelled Q8".into()));
    }
    let n = ctx.exponent();
    let signs = [
        ("trivial", 1, 1),
        ("ker<i>", 1, -1),
        ("ker<j>", -1, 1),
        ("ker<k>", -1, -1),
    ];
    let mut out = Vec::new();
    let mut linear_sum = ClassFunction::new(ctx, vec![Cyclotomic::zero(n); ctx.class_count()])?;
    for (name, a, b) in signs {
        // units 1, i, j, k sit at indices 0, 2, 4, 6 with their negatives after
        let character = ClassFunction::from_element_fn(ctx, |g| {
            let v = match g / 2 {
                0 => 1,
                1 => a,
                2 => b,
                _ => a * b,
            };
            Cyclotomic::from_integer(n, v)
        })?;
        linear_sum = linear_sum.add(&character)?;
        out.push(ConstructiveCharacter {
            name: name.to_string(),
            character,
        });
    }
    let phi = ClassFunction::regular(ctx)
        .sub(&linear_sum)?
        .scale(&BigRational::new(BigInt::from(1), BigInt::from(2)));
    out.push(ConstructiveCharacter {
        name: "phi".into(),
        character: phi,
    });
    Ok(out)
}

/// The characters `λ_v(h) = (-1)^{v·h}` of an XOR group on `0..2^r`.
pub fn elementary_abelian_characters(ctx: &Arc<ClassStructure>) -> Result<Vec<ConstructiveCharacter>, CharacterError> {
    let order = ctx.order();
    let group = ctx.group();
    if !order.is_power_of_two() || group.elements().any(|a| (0..order).any(|b| group.mul(a, b) != a ^ b)) {
        return Err(CharacterError::Mismatch(
            "group is not an XOR-labelled elementary abelian 2-group".into(),
        ));
    }
    let n = ctx.exponent();
    let bits = order.trailing_zeros() as usize;
    (0..order)
        .map(|v| {
            let character = ClassFunction::from_element_fn(ctx, |h| {
                Cyclotomic::from_integer(n, if (v & h).count_ones() % 2 == 0 { 1 } else { -1 })
            })?;
            Ok(ConstructiveCharacter {
                name: format!("lambda_{v:0bits$b}"),
                character,
            })
        })
        .collect()
}

/// `χ = Ind_H^G λ` followed by the five Q₈ characters lifted through `G/H`.
pub fn constructive_characters(
    cx: &Counterexample,
    ctx: &Arc<ClassStructure>,
    lambda: &LambdaChoice,
) -> Result<Vec<ConstructiveCharacter>, CharacterError> {
    let mut out = vec![ConstructiveCharacter {
        name: "chi".into(),
        character: induce(lambda, ctx)?,
    }];
    let quotient = ctx.group().quotient(cx.h())?;
    let qctx = ClassStructure::new(quotient.group.clone());
    for c in q8_irreducibles(&qctx)? {
        out.push(ConstructiveCharacter {
            name: format!("lift({})", c.name),
            character: c.character.lift_from_quotient(ctx, &quotient)?,
        });
    }
    Ok(out)
}
