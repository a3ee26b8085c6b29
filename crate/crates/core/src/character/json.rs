//! Serialized forms of character tables and fusion tensors.
//!
//! Values are cyclotomic coefficient strings in `z = ζ_n` with
//! `n = cyclotomic_order`; nothing is ever written as a float. Each class
//! records its square and inverse classes so that indicators and duals can
//! be recomputed from the file alone.

use serde::{Deserialize, Serialize};

use crate::cyclotomic::{Cyclotomic, CyclotomicError};

use super::{CharacterError, CharacterTable, FusionTensor};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassJson {
    pub index: usize,
    pub representative: usize,
    pub size: usize,
    pub element_order: usize,
    pub square_class: usize,
    pub inverse_class: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterJson {
    pub index: usize,
    pub degree: u64,
    pub indicator: i8,
    pub values: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterTableJson {
    pub schema: u32,
    pub group_order: usize,
    pub cyclotomic_order: u32,
    pub classes: Vec<ClassJson>,
    pub characters: Vec<CharacterJson>,
}

impl CharacterTableJson {
    pub fn from_table(table: &CharacterTable) -> Result<Self, CharacterError> {
        let ctx = table.context();
        let indicators = table.indicators()?;
        let classes = (0..ctx.class_count())
            .map(|c| ClassJson {
                index: c,
                representative: ctx.representative(c),
                size: ctx.class_size(c),
                element_order: ctx.representative_order(c),
                square_class: ctx.square_class(c),
                inverse_class: ctx.inverse_class(c),
            })
            .collect();
        let characters = table
            .irreducibles()
            .iter()
            .enumerate()
            .map(|(i, row)| CharacterJson {
                index: i,
                degree: table.degrees()[i],
                indicator: indicators[i],
                values: row.values().iter().map(ToString::to_string).collect(),
            })
            .collect();
        Ok(CharacterTableJson {
            schema: SCHEMA_VERSION,
            group_order: ctx.order(),
            cyclotomic_order: ctx.exponent(),
            classes,
            characters,
        })
    }

    /// Parses every character value back into exact form.
    pub fn parse_values(&self) -> Result<Vec<Vec<Cyclotomic>>, CyclotomicError> {
        self.characters
            .iter()
            .map(|c| {
                c.values
                    .iter()
                    .map(|v| Cyclotomic::parse(v, self.cyclotomic_order))
                    .collect()
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionEntryJson {
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub multiplicity: u32,
}

/// Nonzero fusion coefficients; omitted triples are zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionJson {
    pub schema: u32,
    pub rank: usize,
    pub entries: Vec<FusionEntryJson>,
}

impl FusionJson {
    pub fn from_tensor(tensor: &FusionTensor) -> Self {
        FusionJson {
            schema: SCHEMA_VERSION,
            rank: tensor.rank(),
            entries: tensor
                .nonzero()
                .map(|(p, q, r, multiplicity)| FusionEntryJson { p, q, r, multiplicity })
                .collect(),
        }
    }

    pub fn get(&self, p: usize, q: usize, r: usize) -> u32 {
        self.entries
            .iter()
            .find(|e| (e.p, e.q, e.r) == (p, q, r))
            .map_or(0, |e| e.multiplicity)
    }
}
