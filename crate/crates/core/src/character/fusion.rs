use serde::Serialize;

use super::intcyc::IntField;
use super::{CharacterError, CharacterTable};

/// Fusion coefficients `N[p][q][r] = ⟨χ_p χ_q, χ_r⟩` of a character table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FusionTensor {
    rank: usize,
    entries: Vec<u32>,
}

impl FusionTensor {
    /// Number of irreducibles.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn get(&self, p: usize, q: usize, r: usize) -> u32 {
        self.entries[(p * self.rank + q) * self.rank + r]
    }

    /// Nonzero `(p, q, r, N)` in lexicographic order.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, usize, u32)> + '_ {
        let k = self.rank;
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(move |(i, &v)| (i / (k * k), (i / k) % k, i % k, v))
    }
}

/// Computes every fusion coefficient exactly; a non-integral or negative
/// coefficient means the table is not a character table.
pub fn fusion_tensor(table: &CharacterTable) -> Result<FusionTensor, CharacterError> {
    let ctx = table.context();
    let k = table.len();
    let classes = ctx.class_count();
    let field = IntField::new(ctx.exponent());
    let convert = |f: &dyn Fn(usize, usize) -> crate::cyclotomic::Cyclotomic| {
        (0..k)
            .map(|i| {
                (0..classes)
                    .map(|c| field.convert(&f(i, c)))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()
    };
    let values = convert(&|i, c| table.row(i).value_at_class(c).clone())?;
    let conj = convert(&|i, c| table.row(i).value_at_class(c).conj())?;
    let order = ctx.order() as i128;
    let sizes: Vec<i64> = (0..classes).map(|c| ctx.class_size(c) as i64).collect();

    let mut entries = vec![0u32; k * k * k];
    for p in 0..k {
        for q in 0..k {
            let product: Vec<Vec<i64>> = (0..classes)
                .map(|c| field.product(&values[p][c], &values[q][c]))
                .collect();
            for r in 0..k {
                let mut acc = field.accumulator();
                for c in 0..classes {
                    field.mul_add(&mut acc, &product[c], &conj[r][c], sizes[c]);
                }
                let total = IntField::as_integer(&field.reduce(acc))
                    .ok_or_else(|| CharacterError::InvalidTable(format!("N[{p}][{q}][{r}] is irrational")))?;
                if total < 0 || total % order != 0 {
                    return Err(CharacterError::InvalidTable(format!(
                        "N[{p}][{q}][{r}] = {total}/{order} is not a nonnegative integer"
                    )));
                }
                let n = (total / order) as u32;
                entries[(p * k + q) * k + r] = n;
            }
        }
    }
    Ok(FusionTensor { rank: k, entries })
}
