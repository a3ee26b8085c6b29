use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::character::{CharacterTable, CharacterTableJson, FusionTensor};
use crate::cyclotomic::Cyclotomic;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Conjecture {
    /// `N_pq^r ν_p ν_q ν_r ≥ 0`.
    Positivity,
    /// `N_{p,p∨}^r > 0 ⇒ ν_r = 1`.
    Wang,
    /// Positivity restricted to odd `N_pq^r`.
    OddRule,
}

impl Conjecture {
    pub fn name(self) -> &'static str {
        match self {
            Conjecture::Positivity => "positivity",
            Conjecture::Wang => "wang",
            Conjecture::OddRule => "odd_rule",
        }
    }
}

/// A triple of irreducibles (row indices) breaking a conjecture.
///
/// For Wang's conjecture `q` is the dual of `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub conjecture: Conjecture,
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub multiplicity: u32,
    pub nu_p: i8,
    pub nu_q: i8,
    pub nu_r: i8,
}

impl Violation {
    fn new(conjecture: Conjecture, (p, q, r): (usize, usize, usize), n: u32, nu: &[i8]) -> Self {
        Violation {
            conjecture,
            p,
            q,
            r,
            multiplicity: n,
            nu_p: nu[p],
            nu_q: nu[q],
            nu_r: nu[r],
        }
    }

    /// Whether the recorded numbers break the tagged conjecture.
    pub fn is_violation(&self) -> bool {
        let sign = i32::from(self.nu_p) * i32::from(self.nu_q) * i32::from(self.nu_r);
        match self.conjecture {
            Conjecture::Positivity => self.multiplicity > 0 && sign < 0,
            Conjecture::OddRule => self.multiplicity % 2 == 1 && sign < 0,
            Conjecture::Wang => self.multiplicity > 0 && self.nu_r != 1,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanResults {
    pub positivity: Vec<Violation>,
    pub wang: Vec<Violation>,
    pub odd_rule: Vec<Violation>,
}

impl ScanResults {
    /// The odd rule is a theorem; any hit is a pipeline bug.
    pub fn passed(&self) -> bool {
        self.odd_rule.is_empty()
    }

    pub fn all(&self) -> impl Iterator<Item = &Violation> {
        self.positivity.iter().chain(&self.wang).chain(&self.odd_rule)
    }
}

fn triples(k: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..k).flat_map(move |p| (0..k).flat_map(move |q| (0..k).map(move |r| (p, q, r))))
}

/// Every ordered triple with `N > 0` and `ν_p ν_q ν_r < 0`.
pub fn positivity_scan(fusion: &FusionTensor, indicators: &[i8]) -> Vec<Violation> {
    scan(Conjecture::Positivity, fusion, indicators)
}

/// Every triple with `N` odd and `ν_p ν_q ν_r < 0`.
pub fn odd_rule_scan(fusion: &FusionTensor, indicators: &[i8]) -> Vec<Violation> {
    scan(Conjecture::OddRule, fusion, indicators)
}

fn scan(conjecture: Conjecture, fusion: &FusionTensor, indicators: &[i8]) -> Vec<Violation> {
    triples(fusion.rank())
        .map(|t| Violation::new(conjecture, t, fusion.get(t.0, t.1, t.2), indicators))
        .filter(Violation::is_violation)
        .collect()
}

/// Every `(p, r)` with `N_{p,p∨}^r > 0` and `ν_r ≠ 1`.
pub fn wang_scan(table: &CharacterTable, fusion: &FusionTensor, indicators: &[i8]) -> Vec<Violation> {
    let k = fusion.rank();
    (0..k)
        .flat_map(|p| {
            let q = table.dual_index(p);
            (0..k).map(move |r| (p, q, r))
        })
        .map(|t| Violation::new(Conjecture::Wang, t, fusion.get(t.0, t.1, t.2), indicators))
        .filter(Violation::is_violation)
        .collect()
}

pub fn run_scans(table: &CharacterTable, fusion: &FusionTensor, indicators: &[i8]) -> ScanResults {
    ScanResults {
        positivity: positivity_scan(fusion, indicators),
        wang: wang_scan(table, fusion, indicators),
        odd_rule: odd_rule_scan(fusion, indicators),
    }
}

/// Recomputes a violation from serialized table data alone.
///
/// Fusion coefficients and indicators are rederived from the value strings
/// with generic cyclotomic arithmetic; none of the table machinery is used.
pub fn recheck_violation(v: &Violation, table: &CharacterTableJson) -> Result<(), String> {
    let values = table.parse_values().map_err(|e| e.to_string())?;
    let k = values.len();
    if [v.p, v.q, v.r].iter().any(|&i| i >= k) {
        return Err(format!("row index out of range in {v:?}"));
    }
    let n = table.cyclotomic_order;
    let order = BigRational::from_integer(BigInt::from(table.group_order));
    let class_sum = |f: &dyn Fn(usize) -> Cyclotomic| -> Result<BigRational, String> {
        let total = table.classes.iter().fold(Cyclotomic::zero(n), |acc, c| {
            acc + f(c.index).scale(&BigRational::from_integer(BigInt::from(c.size)))
        });
        (total.scale(&order.recip()))
            .as_rational()
            .ok_or_else(|| "class sum is irrational".to_string())
    };
    let indicator = |i: usize| -> Result<i8, String> {
        let nu = class_sum(&|c| values[i][table.classes[c].square_class].clone())?;
        if !nu.is_integer() {
            return Err(format!("indicator of row {i} is {nu}"));
        }
        i8::try_from(nu.to_integer()).map_err(|e| e.to_string())
    };
    let multiplicity = class_sum(&|c| values[v.p][c].clone() * values[v.q][c].clone() * values[v.r][c].conj())?;
    if !multiplicity.is_integer() {
        return Err(format!(
            "N[{}][{}][{}] = {multiplicity} is not an integer",
            v.p, v.q, v.r
        ));
    }
    let recomputed = Violation {
        conjecture: v.conjecture,
        p: v.p,
        q: v.q,
        r: v.r,
        multiplicity: u32::try_from(multiplicity.to_integer()).map_err(|e| e.to_string())?,
        nu_p: indicator(v.p)?,
        nu_q: indicator(v.q)?,
        nu_r: indicator(v.r)?,
    };
    if recomputed != *v {
        return Err(format!("recorded {v:?}, recomputed {recomputed:?}"));
    }
    if v.conjecture == Conjecture::Wang && values[v.q] != values[v.p].iter().map(Cyclotomic::conj).collect::<Vec<_>>() {
        return Err(format!("row {} is not the dual of row {}", v.q, v.p));
    }
    if !recomputed.is_violation() {
        return Err(format!("{v:?} does not violate {}", v.conjecture.name()));
    }
    Ok(())
}
