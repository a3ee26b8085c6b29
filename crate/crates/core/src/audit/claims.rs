//! The six-claim verification pipeline for `G = F₂⁴ ⋊ Q₈`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::character::{
    conjugate_stabilizer_check, constructive_characters, induce, induced_square_constituent, CharacterTable,
    ClassFunction, ClassStructure,
};
use crate::construction::{cycle_type, is_even, q8_regular_embedding, Counterexample, LambdaChoice};
use crate::gf2::enumerate_functionals;
use crate::group::Q8Element;

use super::{AuditError, TableMethod};

#[derive(Debug, Clone, Copy, Default)]
pub struct VerifyOptions {
    pub all_lambdas: bool,
    pub method: TableMethod,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClaimResult {
    pub claim: u8,
    pub statement: String,
    pub passed: bool,
    /// Failed sub-checks, empty when `passed`.
    pub failures: Vec<String>,
    pub witness: Value,
}

/// One row of the indicator sum `Σ_g χ(g²)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim6Subset {
    pub subset: String,
    pub count: usize,
    /// The common value of `χ(g²)` on the subset, if it is constant.
    pub value: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim6Breakdown {
    /// `g ∈ H`, `g ∈ Hz` with `g² = 1`, `g ∈ Hz` with `g² ≠ 1`, `g ∉ H⟨z⟩`.
    pub subsets: Vec<Claim6Subset>,
    pub total: i64,
    pub group_order: usize,
    pub indicator: String,
}

impl Claim6Breakdown {
    /// `16*8 + 8*8 + 8*(-8) = 128`, over the subsets where `χ(g²) ≠ 0`.
    pub fn ledger(&self) -> String {
        let terms: Vec<String> = self
            .subsets
            .iter()
            .filter(|s| s.value != Some(0))
            .map(|s| match s.value {
                Some(v) if v < 0 => format!("{}*({v})", s.count),
                Some(v) => format!("{}*{v}", s.count),
                None => format!("{}*?", s.count),
            })
            .collect();
        format!("{} = {}", terms.join(" + "), self.total)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Headline {
    pub nu2_chi: String,
    /// Table row of the chosen constituent, when a table was computed.
    pub phi_row: Option<usize>,
    pub phi_degree: u64,
    pub phi_indicator: String,
    /// `⟨χ², φ⟩`.
    pub multiplicity: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LambdaRun {
    /// The covector `v` of `λ_v`, coordinate 0 first.
    pub covector: String,
    pub chi_row: Option<usize>,
    pub claims: Vec<ClaimResult>,
    pub claim6: Claim6Breakdown,
    pub headline: Headline,
    pub passed: bool,
}

struct Checks {
    failures: Vec<String>,
}

impl Checks {
    fn new() -> Self {
        Checks { failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) -> bool {
        if !ok {
            self.failures.push(what.into());
        }
        ok
    }

    fn finish(self, claim: u8, statement: &str, witness: Value) -> ClaimResult {
        ClaimResult {
            claim,
            statement: statement.to_string(),
            passed: self.failures.is_empty(),
            failures: self.failures,
            witness,
        }
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn bits(v: crate::gf2::Gf2Vector) -> String {
    v.to_string()
}

/// Claim 3: the group exists with the required structure.
fn claim3(cx: &Counterexample) -> ClaimResult {
    let mut c = Checks::new();
    let group = cx.group();
    let (a, b) = cx.embedding().generators();
    let regular = q8_regular_embedding();
    let all_even = regular.iter().all(is_even);
    c.check(all_even, "left regular image of Q8 lies in A8");
    let order4_types_ok = Q8Element::all()
        .filter(|q| q.order() == 4)
        .all(|q| cycle_type(&regular[q.index()]) == vec![4, 4]);
    c.check(order4_types_ok, "order-4 elements act as two 4-cycles");
    c.check(group.order() == 128, format!("|G| = {}, expected 128", group.order()));
    c.check(cx.h().len() == 16, "|H| = 16");
    let centralizer = group.centralizer_of(cx.h());
    c.check(
        centralizer == *cx.h(),
        format!("|C_G(H)| = {}, expected C_G(H) = H", centralizer.len()),
    );
    let quotient_ok = group.elements().all(|x| {
        group
            .elements()
            .all(|y| cx.coset_of(group.mul(x, y)) == cx.coset_of(x) * cx.coset_of(y))
    });
    c.check(quotient_ok, "g -> gH is a homomorphism onto Q8");
    c.finish(
        3,
        "G = F2^4 x| Q8 exists with C_G(H) = H",
        json!({
            "generator_i": a.to_string(),
            "generator_j": b.to_string(),
            "generator_keys": [format!("{:04x}", a.key()), format!("{:04x}", b.key())],
            "group_order": group.order(),
            "centralizer_of_h_order": centralizer.len(),
            "regular_embedding_even": all_even,
        }),
    )
}

/// Claim 4: `|[H, z]| = 2`, equivalently `|C_H(z)| = 8`.
fn claim4(cx: &Counterexample) -> Result<ClaimResult, AuditError> {
    let mut c = Checks::new();
    let group = cx.group();
    let z = cx.z();
    let h0 = group.commutator_span(cx.h(), z);
    let c_hz = cx.centralizer_in_h(z);
    c.check(h0.len() == 2, format!("|H0| = {}, expected 2", h0.len()));
    c.check(c_hz.len() == 8, format!("|C_H(z)| = {}, expected 8", c_hz.len()));
    let center = group.center();
    c.check(h0.is_subset_of(&center), "H0 lies in Z(G)");
    let h0_vector = h0.iter().find(|&g| g != 0).and_then(|g| cx.vector_of(g));
    Ok(c.finish(
        4,
        "H0 = [H, z] has order 2",
        json!({
            "z": z,
            "h0": h0.members(),
            "h0_vector": h0_vector.map(bits),
            "centralizer_of_z_in_h_order": c_hz.len(),
            "center_order": center.len(),
        }),
    ))
}

/// Claim 5: the kernel intersection identity and the existence of `λ`.
fn claim5(cx: &Counterexample, lambda: &LambdaChoice) -> Result<ClaimResult, AuditError> {
    let mut c = Checks::new();
    let h0 = cx.compute_h0()?;
    let h0_element = h0.members()[1];
    let intersection = cx.intersect_commutators();
    c.check(intersection == h0, "intersection of [H, x] over 1 != x in Q equals H0");
    let order4 = cx.intersect_over(Q8Element::all().filter(|q| q.order() == 4));
    c.check(h0.is_subset_of(&order4), "H0 lies in [H, x] for every x of order 4");
    let valid: Vec<String> = enumerate_functionals()
        .into_iter()
        .filter(|&f| cx.is_valid_lambda(f).unwrap_or(false))
        .map(|f| bits(f.covector()))
        .collect();
    c.check(
        valid.len() == 8,
        format!("{} of 15 functionals are valid, expected 8", valid.len()),
    );
    c.check(lambda.value(h0_element) == Some(-1), "lambda(h0) = -1");
    c.check(
        cx.satisfies_coset_condition(lambda),
        "ker lambda omits [H, x] for every coset xH != H",
    );
    c.check(lambda.kernel().len() == 8, "ker lambda is a hyperplane of H");
    Ok(c.finish(
        5,
        "lambda exists: H0 = intersection of [H, x], and ker lambda omits H0",
        json!({
            "intersection": intersection.members(),
            "valid_covectors": valid,
            "covector": bits(lambda.covector()),
            "kernel": lambda.kernel().members(),
        }),
    ))
}

/// For every functional, `⟨χ, χ⟩ = 1` iff the stabilizer criterion holds.
fn stabilizer_agreement(cx: &Counterexample, ctx: &Arc<ClassStructure>) -> Result<(usize, bool), AuditError> {
    let mut irreducible = 0;
    let mut agree = true;
    for f in enumerate_functionals() {
        let lambda = cx.lambda(f);
        let chi = induce(&lambda, ctx)?;
        let by_norm = chi.rational_inner_product(&chi)?.is_one();
        irreducible += usize::from(by_norm);
        agree &= by_norm == conjugate_stabilizer_check(&lambda, ctx);
    }
    Ok((irreducible, agree))
}

fn claim6(cx: &Counterexample, chi: &ClassFunction) -> Result<(ClaimResult, Claim6Breakdown), AuditError> {
    let group = cx.group();
    let mut buckets: [(usize, Vec<i64>); 4] = Default::default();
    let mut total = 0i64;
    for g in group.elements() {
        let square = group.mul(g, g);
        let value = chi
            .value_at(square)
            .as_integer()
            .and_then(|v| i64::try_from(v).ok())
            .ok_or_else(|| AuditError::Unsupported(format!("chi({square}) is not an integer")))?;
        let bucket = if cx.h().contains(g) {
            0
        } else if cx.coset_of(g) == Q8Element::MINUS_ONE {
            if square == group.identity() {
                1
            } else {
                2
            }
        } else {
            3
        };
        buckets[bucket].0 += 1;
        if !buckets[bucket].1.contains(&value) {
            buckets[bucket].1.push(value);
        }
        total += value;
    }
    let names = ["g in H", "g in Hz, g^2 = 1", "g in Hz, g^2 != 1", "g outside H<z>"];
    let subsets: Vec<Claim6Subset> = names
        .iter()
        .zip(&buckets)
        .map(|(name, (count, values))| Claim6Subset {
            subset: name.to_string(),
            count: *count,
            value: (values.len() == 1).then(|| values[0]),
        })
        .collect();
    let nu = chi.fs_indicator()?;
    let breakdown = Claim6Breakdown {
        subsets,
        total,
        group_order: group.order(),
        indicator: nu.to_string(),
    };

    let mut c = Checks::new();
    let expected = [(16, Some(8)), (8, Some(8)), (8, Some(-8)), (96, Some(0))];
    for (s, (count, value)) in breakdown.subsets.iter().zip(expected) {
        c.check(
            s.count == count && s.value == value,
            format!(
                "{}: {} elements with value {:?}, expected {count} with {:?}",
                s.subset, s.count, s.value, value
            ),
        );
    }
    c.check(
        total == group.order() as i64,
        format!("sum of chi(g^2) is {total}, expected |G|"),
    );
    c.check(nu == rat(1), format!("nu2(chi) = {nu}, expected 1"));
    c.check(
        nu == rat(total) / rat(group.order() as i64),
        "indicator agrees with the ledger sum",
    );
    let witness = json!({ "ledger": breakdown.ledger(), "indicator": breakdown.indicator });
    Ok((c.finish(6, "nu2(chi) = +1", witness), breakdown))
}

struct Shared<'a> {
    cx: &'a Counterexample,
    ctx: &'a Arc<ClassStructure>,
    table: Option<&'a CharacterTable>,
    indicators: Option<Vec<i8>>,
    method: TableMethod,
    claim3: ClaimResult,
    claim4: ClaimResult,
    irreducible_count: usize,
    stabilizer_agrees: bool,
}

fn run_lambda(s: &Shared<'_>, lambda: &LambdaChoice) -> Result<LambdaRun, AuditError> {
    let named = constructive_characters(s.cx, s.ctx, lambda)?;
    let chi = named[0].character.clone();
    let chi_row = s.table.and_then(|t| t.find_row(&chi));

    // Claim 1
    let mut c = Checks::new();
    let norm = chi.rational_inner_product(&chi)?;
    c.check(norm.is_one(), format!("<chi, chi> = {norm}, expected 1"));
    let stabilizer = conjugate_stabilizer_check(lambda, s.ctx);
    c.check(stabilizer, "some x outside H fixes lambda");
    c.check(
        s.cx.satisfies_coset_condition(lambda),
        "[H, x] lies in ker lambda for some x",
    );
    c.check(
        s.stabilizer_agrees,
        "stabilizer criterion disagrees with <chi, chi> = 1 for some functional",
    );
    c.check(
        s.irreducible_count == 8,
        format!("{} of 15 inductions are irreducible", s.irreducible_count),
    );
    c.check(chi.degree() == Some(BigInt::from(8)), "chi(1) = 8");
    if s.table.is_some() {
        c.check(chi_row.is_some(), "chi is not a row of the Dixon table");
    }
    let claim1 = c.finish(
        1,
        "chi = Ind_H^G lambda is irreducible",
        json!({
            "covector": bits(lambda.covector()),
            "inner_product": norm.to_string(),
            "stabilizer_criterion": stabilizer,
            "irreducible_inductions": s.irreducible_count,
            "chi_row": chi_row,
        }),
    );

    // Claim 2
    let mut c = Checks::new();
    let square = chi.pointwise_product(&chi)?;
    let lifted_phi = named
        .iter()
        .find(|n| n.name == "lift(phi)")
        .map(|n| n.character.clone())
        .expect("constructive characters include lift(phi)");
    // (λ²)^G, the Mackey constituent of χ²; must be the lifted regular
    // character of G/H
    let induced = match induced_square_constituent(lambda, s.ctx) {
        Ok(f) => Some(f),
        Err(e) => {
            c.check(false, e.to_string());
            None
        }
    };
    let mut constituents = Vec::new();
    let mut phi_row = None;
    if let (Some(table), Some(nus)) = (s.table, &s.indicators) {
        let mults = table.decompose(&square)?;
        let mut symplectic = Vec::new();
        for (row, m) in mults.iter().enumerate() {
            if m.is_zero() {
                continue;
            }
            let in_induced = match &induced {
                Some(f) => f.rational_inner_product(table.row(row))?,
                None => BigRational::zero(),
            };
            constituents.push(json!({
                "row": row,
                "multiplicity": m.to_string(),
                "degree": table.degrees()[row],
                "indicator": nus[row],
                "multiplicity_in_induced_square": in_induced.to_string(),
            }));
            if nus[row] == -1 {
                symplectic.push((row, in_induced.is_positive()));
            }
        }
        c.check(!symplectic.is_empty(), "no constituent of chi^2 has indicator -1");
        phi_row = if s.method.uses_constructive() {
            let row = table.find_row(&lifted_phi);
            c.check(row.is_some(), "lift(phi) is not a row of the Dixon table");
            c.check(
                row.is_some_and(|r| symplectic.iter().any(|&(x, _)| x == r)),
                "lift(phi) is not a symplectic constituent of chi^2",
            );
            row
        } else {
            // Other symplectic constituents may exist; the claim concerns
            // the one inside (λ²)^G.
            symplectic
                .iter()
                .find(|&&(r, inside)| inside && table.degrees()[r] == 2)
                .map(|&(r, _)| r)
        };
    }
    let phi = match (s.method.uses_constructive(), phi_row, s.table) {
        (false, Some(r), Some(t)) => t.row(r).clone(),
        _ => lifted_phi.clone(),
    };
    let multiplicity = square.rational_inner_product(&phi)?;
    let phi_nu = phi.fs_indicator()?;
    let phi_degree = phi.degree().and_then(|d| u64::try_from(d).ok()).unwrap_or(0);
    c.check(multiplicity.is_positive(), "phi is not a constituent of chi^2");
    c.check(phi_nu == rat(-1), format!("nu2(phi) = {phi_nu}, expected -1"));
    c.check(phi_degree == 2, format!("deg phi = {phi_degree}, expected 2"));
    let regular_check = match &induced {
        Some(f) => {
            let m = f.rational_inner_product(&phi)?;
            c.check(m == rat(2), format!("<(lambda^2)^G, phi> = {m}, expected 2"));
            m.to_string()
        }
        None => "-".into(),
    };
    c.check(
        multiplicity >= rat(2),
        format!("<chi^2, phi> = {multiplicity}, expected at least <(lambda^2)^G, phi> = 2"),
    );
    let claim2 = c.finish(
        2,
        "chi^2 has an irreducible constituent phi with nu2(phi) = -1",
        json!({
            "phi_row": phi_row,
            "multiplicity": multiplicity.to_string(),
            "induced_square_multiplicity": regular_check,
            "phi_degree": phi_degree,
            "phi_indicator": phi_nu.to_string(),
            "constituents": constituents,
        }),
    );

    let claim5 = claim5(s.cx, lambda)?;
    let (claim6, breakdown) = claim6(s.cx, &chi)?;
    let nu_chi = chi.fs_indicator()?;
    let headline = Headline {
        nu2_chi: nu_chi.to_string(),
        phi_row,
        phi_degree,
        phi_indicator: phi_nu.to_string(),
        multiplicity: multiplicity.to_string(),
        passed: nu_chi == rat(1) && phi_degree == 2 && phi_nu == rat(-1) && multiplicity.is_positive(),
    };
    let claims = vec![claim1, claim2, s.claim3.clone(), s.claim4.clone(), claim5, claim6];
    let passed = headline.passed && claims.iter().all(|c| c.passed);
    Ok(LambdaRun {
        covector: bits(lambda.covector()),
        chi_row,
        claims,
        claim6: breakdown,
        headline,
        passed,
    })
}

/// Runs the pipeline for the least valid `λ`, or for all of them.
///
/// `table` is the Dixon table of `cx.group()` on `ctx`, required unless the
/// method is constructive.
pub fn verify_claims(
    cx: &Counterexample,
    ctx: &Arc<ClassStructure>,
    table: Option<&CharacterTable>,
    options: VerifyOptions,
) -> Result<Vec<LambdaRun>, AuditError> {
    if options.method.uses_dixon() && table.is_none() {
        return Err(AuditError::Unsupported(
            "the Dixon table is required for this method".into(),
        ));
    }
    let table = table.filter(|_| options.method.uses_dixon());
    let (irreducible_count, stabilizer_agrees) = stabilizer_agreement(cx, ctx)?;
    let shared = Shared {
        cx,
        ctx,
        table,
        indicators: table.map(CharacterTable::indicators).transpose()?,
        method: options.method,
        claim3: claim3(cx),
        claim4: claim4(cx)?,
        irreducible_count,
        stabilizer_agrees,
    };
    let lambdas = if options.all_lambdas {
        cx.valid_lambdas()?
    } else {
        vec![cx.choose_lambda()?]
    };
    lambdas.iter().map(|l| run_lambda(&shared, l)).collect()
}
