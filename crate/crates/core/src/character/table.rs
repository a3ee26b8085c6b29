use std::sync::Arc;

use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::intcyc::IntField;
use super::{is_zero_or_unit, rational_to_i64, CharacterError, ClassFunction, ClassStructure};

/// A complete list of irreducible characters.
///
/// Construction verifies exact row and column orthogonality, that there is
/// one row per class, and that the squared degrees sum to `|G|`.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    ctx: Arc<ClassStructure>,
    irreducibles: Vec<ClassFunction>,
    degrees: Vec<u64>,
}

/// `rows[i][class]` as `IntField` coefficient vectors.
type IntRows = Vec<Vec<Vec<i64>>>;

impl CharacterTable {
    /// Validates `rows` and stores them in the given order.
    pub fn new(ctx: &Arc<ClassStructure>, rows: Vec<ClassFunction>) -> Result<Self, CharacterError> {
        let invalid = |msg: String| CharacterError::InvalidTable(msg);
        let k = ctx.class_count();
        if rows.len() != k {
            return Err(invalid(format!("{} characters for {k} classes", rows.len())));
        }
        if rows.iter().any(|r| !Arc::ptr_eq(r.context(), ctx)) {
            return Err(CharacterError::DifferentGroups);
        }
        let mut degrees = Vec::with_capacity(k);
        for (i, row) in rows.iter().enumerate() {
            let d = row
                .degree()
                .and_then(|d| d.to_u64())
                .filter(|&d| d > 0)
                .ok_or_else(|| invalid(format!("row {i} has no positive integer degree")))?;
            degrees.push(d);
        }
        let sum_sq: u64 = degrees.iter().map(|d| d * d).sum();
        if sum_sq != ctx.order() as u64 {
            return Err(invalid(format!(
                "sum of squared degrees is {sum_sq}, not {}",
                ctx.order()
            )));
        }
        let table = CharacterTable {
            ctx: Arc::clone(ctx),
            irreducibles: rows,
            degrees,
        };
        table.check_row_orthogonality()?;
        table.check_column_orthogonality()?;
        Ok(table)
    }

    /// Puts the trivial character first, sorts the rest by degree and then
    /// lexicographically by rendered values, and validates.
    pub fn canonical(ctx: &Arc<ClassStructure>, mut rows: Vec<ClassFunction>) -> Result<Self, CharacterError> {
        let trivial = ClassFunction::trivial(ctx);
        rows.sort_by_cached_key(|r| {
            let rendered: Vec<String> = r.values().iter().map(ToString::to_string).collect();
            (*r != trivial, r.degree(), rendered)
        });
        Self::new(ctx, rows)
    }

    /// The rows and their conjugates in `field` coordinates.
    fn int_rows(&self) -> Result<(IntField, IntRows, IntRows), CharacterError> {
        let field = IntField::new(self.ctx.exponent());
        let mut rows = Vec::with_capacity(self.len());
        let mut conj = Vec::with_capacity(self.len());
        for r in &self.irreducibles {
            rows.push(
                r.values()
                    .iter()
                    .map(|v| field.convert(v))
                    .collect::<Result<Vec<_>, _>>()?,
            );
            conj.push(
                r.values()
                    .iter()
                    .map(|v| field.convert(&v.conj()))
                    .collect::<Result<Vec<_>, _>>()?,
            );
        }
        Ok((field, rows, conj))
    }

    /// `⟨χ_i, χ_j⟩ = δ_ij`, exactly.
    pub fn check_row_orthogonality(&self) -> Result<(), CharacterError> {
        let (field, rows, conj) = self.int_rows()?;
        let order = self.ctx.order() as i128;
        for i in 0..rows.len() {
            for j in i..rows.len() {
                let mut acc = field.accumulator();
                for c in 0..self.ctx.class_count() {
                    field.mul_add(&mut acc, &rows[i][c], &conj[j][c], self.ctx.class_size(c) as i64);
                }
                let expected = if i == j { order } else { 0 };
                if IntField::as_integer(&field.reduce(acc)) != Some(expected) {
                    return Err(CharacterError::InvalidTable(format!(
                        "rows {i} and {j} are not orthonormal"
                    )));
                }
            }
        }
        Ok(())
    }

    /// `Σ_χ χ(c) conj χ(c') = δ_cc' |C_G(g_c)|`, exactly.
    pub fn check_column_orthogonality(&self) -> Result<(), CharacterError> {
        let (field, rows, conj) = self.int_rows()?;
        let k = self.ctx.class_count();
        for c in 0..k {
            for d in c..k {
                let mut acc = field.accumulator();
                for (row, crow) in rows.iter().zip(&conj) {
                    field.mul_add(&mut acc, &row[c], &crow[d], 1);
                }
                let expected = if c == d {
                    (self.ctx.order() / self.ctx.class_size(c)) as i128
                } else {
                    0
                };
                if IntField::as_integer(&field.reduce(acc)) != Some(expected) {
                    return Err(CharacterError::InvalidTable(format!(
                        "columns {c} and {d} fail orthogonality"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn context(&self) -> &Arc<ClassStructure> {
        &self.ctx
    }

    pub fn irreducibles(&self) -> &[ClassFunction] {
        &self.irreducibles
    }

    pub fn row(&self, i: usize) -> &ClassFunction {
        &self.irreducibles[i]
    }

    pub fn len(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreducibles.is_empty()
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn find_row(&self, f: &ClassFunction) -> Option<usize> {
        self.irreducibles.iter().position(|r| r == f)
    }

    pub fn trivial_index(&self) -> usize {
        self.find_row(&ClassFunction::trivial(&self.ctx))
            .expect("a validated table contains the trivial character")
    }

    /// Row index of the dual of row `p`.
    pub fn dual_index(&self, p: usize) -> usize {
        self.find_row(&self.irreducibles[p].dual())
            .expect("duals of irreducibles are irreducible")
    }

    /// Frobenius-Schur indicators; each must be -1, 0 or +1.
    pub fn indicators(&self) -> Result<Vec<i8>, CharacterError> {
        self.irreducibles
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let nu = r.fs_indicator()?;
                if !is_zero_or_unit(&nu) {
                    return Err(CharacterError::InvalidTable(format!("row {i} has indicator {nu}")));
                }
                Ok(rational_to_i64(&nu).unwrap() as i8)
            })
            .collect()
    }

    /// Multiplicity of each irreducible in `f`.
    pub fn decompose(&self, f: &ClassFunction) -> Result<Vec<BigRational>, CharacterError> {
        self.irreducibles.iter().map(|r| f.rational_inner_product(r)).collect()
    }
}
