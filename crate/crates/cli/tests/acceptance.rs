//! End-to-end acceptance checks against the built binary.
//!
//! Prints one PASS/FAIL line per criterion and exits nonzero if any fail.
//! Quantities read from reports are recomputed here from the serialized
//! character values wherever possible.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use posaudit_core::audit::{recheck_violation, AuditReport, BuiltinGroup, GroupSource};
use posaudit_core::character::{dixon_table, induce_from_normal, CharacterTableJson, ClassStructure};
use posaudit_core::construction::Counterexample;
use posaudit_core::cyclotomic::Cyclotomic;
use posaudit_core::group::DEFAULT_MAX_ORDER;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn corpus() -> Vec<String> {
    let mut groups: Vec<String> = BuiltinGroup::ALL
        .iter()
        .map(|b| format!("builtin:{}", b.name()))
        .collect();
    for name in ["trivial", "z3", "d8", "s4", "sl23", "g128"] {
        groups.push(format!("file:{}", fixtures().join(format!("{name}.group")).display()));
    }
    groups
}

struct Run {
    code: i32,
    elapsed: Duration,
    report: Option<AuditReport>,
    stderr: String,
}

fn posaudit(args: &[&str]) -> Run {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_posaudit"))
        .args(args)
        .args(["--report", "json"])
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        elapsed: start.elapsed(),
        report: serde_json::from_slice(&out.stdout).ok(),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn passing_report(args: &[&str]) -> Result<(AuditReport, Duration), String> {
    let run = posaudit(args);
    ensure(run.code == 0, || {
        format!("{args:?} exited {}: {}", run.code, run.stderr.trim())
    })?;
    let report = run.report.ok_or_else(|| format!("{args:?} produced no JSON report"))?;
    ensure(report.schema == 1, || format!("schema {}", report.schema))?;
    ensure(report.passed, || format!("{args:?}: {:?}", report.failures))?;
    Ok((report, run.elapsed))
}

fn rational(s: &str) -> Result<BigRational, String> {
    s.parse::<BigRational>().map_err(|e| format!("{s}: {e}"))
}

/// `|G|⁻¹ Σ_c |C_c| f(c)`, which must be rational.
fn class_average(t: &CharacterTableJson, f: impl Fn(usize) -> Cyclotomic) -> Result<BigRational, String> {
    let n = t.cyclotomic_order;
    let sum = t.classes.iter().fold(Cyclotomic::zero(n), |acc, c| {
        acc + f(c.index).scale(&BigRational::from_integer(BigInt::from(c.size)))
    });
    sum.scale(&BigRational::new(BigInt::one(), BigInt::from(t.group_order)))
        .as_rational()
        .ok_or_else(|| "class average is irrational".to_string())
}

fn indicators_from_values(t: &CharacterTableJson) -> Result<Vec<BigRational>, String> {
    let values = t.parse_values().map_err(|e| e.to_string())?;
    (0..values.len())
        .map(|i| class_average(t, |c| values[i][t.classes[c].square_class].clone()))
        .collect()
}

fn criterion_headline() -> Outcome {
    let (report, elapsed) = passing_report(&["verify", "--group", "builtin:g128"])?;
    ensure(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"))?;
    let run = &report.runs.as_ref().ok_or("no runs")?[0];
    let table = report.character_table.as_ref().ok_or("no table")?;
    let values = table.parse_values().map_err(|e| e.to_string())?;
    let chi = run.chi_row.ok_or("chi not located in the table")?;
    let phi = run.headline.phi_row.ok_or("phi not located in the table")?;
    let nus = indicators_from_values(table)?;
    ensure(nus[chi] == BigRational::one(), || format!("nu2(chi) = {}", nus[chi]))?;
    ensure(nus[phi] == -BigRational::one(), || format!("nu2(phi) = {}", nus[phi]))?;
    let degree = values[phi][0].as_integer().ok_or("irrational degree")?;
    ensure(degree == BigInt::from(2), || format!("deg phi = {degree}"))?;
    let m = class_average(table, |c| {
        values[chi][c].clone() * values[chi][c].clone() * values[phi][c].conj()
    })?;
    ensure(m > BigRational::zero(), || format!("<chi^2, phi> = {m}"))?;
    ensure(
        run.headline.nu2_chi == "1" && run.headline.phi_indicator == "-1",
        || "headline fields".into(),
    )?;
    Ok(format!(
        "nu2(chi) = +1, phi = row {phi} of degree 2 with nu2 = -1 and <chi^2, phi> = {m}, {} ms",
        elapsed.as_millis()
    ))
}

fn criterion_ledger() -> Outcome {
    let (report, _) = passing_report(&["verify", "--group", "builtin:g128"])?;
    let c6 = &report.runs.as_ref().ok_or("no runs")?[0].claim6;
    let got: Vec<(usize, Option<i64>)> = c6.subsets.iter().map(|s| (s.count, s.value)).collect();
    let want = vec![(16, Some(8)), (8, Some(8)), (8, Some(-8)), (96, Some(0))];
    ensure(got == want, || format!("subsets {got:?}"))?;
    let total: i64 = got.iter().map(|(n, v)| *n as i64 * v.unwrap()).sum();
    ensure(total == 128 && c6.total == 128, || format!("total {total}"))?;
    ensure(c6.indicator == "1", || format!("indicator {}", c6.indicator))?;
    Ok(c6.ledger())
}

fn criterion_structure() -> Outcome {
    let (report, _) = passing_report(&["verify", "--group", "builtin:g128"])?;
    let run = &report.runs.as_ref().ok_or("no runs")?[0];
    let w = |i: usize| &run.claims[i - 1].witness;
    ensure(w(3)["group_order"] == 128, || "|G| != 128".into())?;
    ensure(w(3)["centralizer_of_h_order"] == 16, || "C_G(H) != H".into())?;
    let h0 = w(4)["h0"].as_array().ok_or("no h0")?;
    ensure(h0.len() == 2, || format!("|H0| = {}", h0.len()))?;
    ensure(w(4)["centralizer_of_z_in_h_order"] == 8, || "|C_H(z)| != 8".into())?;
    ensure(w(5)["intersection"] == w(4)["h0"], || {
        "intersection of the lambda kernels differs from H0".into()
    })?;
    let valid = w(5)["valid_covectors"].as_array().ok_or("no covectors")?;
    ensure(valid.len() == 8, || format!("{} valid functionals", valid.len()))?;

    let (all, _) = passing_report(&["verify", "--group", "builtin:g128", "--all-lambdas"])?;
    let runs = all.runs.ok_or("no runs")?;
    ensure(runs.len() == 8 && runs.iter().all(|r| r.passed), || {
        format!("{} runs", runs.len())
    })?;
    let mut covectors: Vec<&str> = runs.iter().map(|r| r.covector.as_str()).collect();
    covectors.sort_unstable();
    covectors.dedup();
    ensure(covectors.len() == 8, || "repeated covectors".into())?;
    Ok("|G| = 128, |H0| = 2, |C_H(z)| = 8, C_G(H) = H, kernel intersection = H0, 8/15 valid, --all-lambdas 8/8".into())
}

fn criterion_table() -> Outcome {
    let (report, _) = passing_report(&["verify", "--group", "builtin:g128", "--table-method", "both"])?;
    let t = report.character_table.as_ref().ok_or("no table")?;
    let check = report.table_check.as_ref().ok_or("no table check")?;
    let values = t.parse_values().map_err(|e| e.to_string())?;
    let k = values.len();
    ensure(k == t.classes.len(), || {
        format!("{k} rows for {} classes", t.classes.len())
    })?;
    let degrees: Vec<BigInt> = values.iter().map(|r| r[0].as_integer().unwrap_or_default()).collect();
    let sum_sq: BigInt = degrees.iter().map(|d| d * d).sum();
    ensure(sum_sq == BigInt::from(128), || format!("sum d^2 = {sum_sq}"))?;
    for i in 0..k {
        for j in 0..k {
            let ip = class_average(t, |c| values[i][c].clone() * values[j][c].conj())?;
            let want = if i == j {
                BigRational::one()
            } else {
                BigRational::zero()
            };
            ensure(ip == want, || format!("<X{i}, X{j}> = {ip}"))?;
        }
    }
    for a in 0..k {
        for b in 0..k {
            let sum = (0..k).fold(Cyclotomic::zero(t.cyclotomic_order), |acc, r| {
                acc + values[r][a].clone() * values[r][b].conj()
            });
            let want = if a == b {
                (t.group_order / t.classes[a].size) as i64
            } else {
                0
            };
            ensure(sum == Cyclotomic::from_integer(t.cyclotomic_order, want), || {
                format!("columns {a}, {b} give {sum}")
            })?;
        }
    }
    let names: Vec<&str> = check.matches.iter().map(|m| m.name.as_str()).collect();
    ensure(
        names.len() == 6 && names[0] == "chi" && names[1..].iter().all(|n| n.starts_with("lift(")),
        || format!("constructive characters {names:?}"),
    )?;
    ensure(check.matches.iter().all(|m| m.row.is_some()), || {
        format!("{:?}", check.matches)
    })?;
    Ok(format!(
        "{k} rows, exact orthogonality, sum d^2 = 128, chi and 5 lifts matched"
    ))
}

fn criterion_indicator_identity() -> Outcome {
    let mut parts = Vec::new();
    for b in BuiltinGroup::ALL {
        let (report, _) = passing_report(&["table", "--group", &format!("builtin:{}", b.name())])?;
        let t = report.character_table.as_ref().ok_or("no table")?;
        let nus = indicators_from_values(t)?;
        let values = t.parse_values().map_err(|e| e.to_string())?;
        let sum = nus.iter().zip(&values).fold(BigRational::zero(), |acc, (nu, row)| {
            acc + nu * row[0].as_rational().unwrap()
        });
        let group = GroupSource::Builtin(b)
            .load(DEFAULT_MAX_ORDER)
            .map_err(|e| e.to_string())?;
        let g = group.group();
        let roots = g.elements().filter(|&x| g.mul(x, x) == g.identity()).count();
        ensure(sum == BigRational::from_integer(BigInt::from(roots)), || {
            format!("{}: sum {sum}, #{{g^2 = 1}} = {roots}", b.name())
        })?;
        parts.push(format!("{} {roots}", b.name()));
    }
    Ok(format!(
        "sum nu2(theta) deg(theta) = #{{g : g^2 = 1}} for {}",
        parts.join(", ")
    ))
}

fn criterion_scans() -> Outcome {
    let (verify, _) = passing_report(&["verify", "--group", "builtin:g128"])?;
    let run = &verify.runs.as_ref().ok_or("no runs")?[0];
    let chi = run.chi_row.ok_or("no chi row")?;
    let phi = run.headline.phi_row.ok_or("no phi row")?;

    let (report, _) = passing_report(&["scan", "--group", "builtin:g128"])?;
    let table = report.character_table.as_ref().ok_or("no table")?;
    let scans = report.scans.as_ref().ok_or("no scans")?;
    for v in scans.all() {
        recheck_violation(v, table)?;
    }
    let hit = scans
        .positivity
        .iter()
        .find(|v| (v.p, v.q, v.r) == (chi, chi, phi))
        .ok_or("positivity scan misses (chi, chi, phi)")?;
    ensure(hit.multiplicity % 2 == 0, || format!("N = {} is odd", hit.multiplicity))?;
    ensure(!scans.wang.is_empty(), || "wang scan is empty".into())?;
    let values = table.parse_values().map_err(|e| e.to_string())?;
    let self_dual = |p: usize| values[p].iter().all(|v| v.conj() == *v);
    let wang = scans
        .wang
        .iter()
        .find(|v| v.p == chi && v.r == phi)
        .ok_or("wang scan misses (chi, phi)")?;
    ensure(wang.q == wang.p && self_dual(wang.p), || "chi is not self-dual".into())?;

    let mut checked = 0;
    for group in corpus() {
        let run = posaudit(&["scan", "--group", &group, "--table-method", "dixon"]);
        let report = run
            .report
            .ok_or_else(|| format!("{group}: no report ({})", run.stderr.trim()))?;
        let scans = report.scans.ok_or("no scans")?;
        ensure(scans.odd_rule.is_empty(), || {
            format!("{group}: odd rule violated {:?}", scans.odd_rule)
        })?;
        ensure(run.code == 0, || format!("{group}: exit {}", run.code))?;
        checked += 1;
    }
    Ok(format!(
        "{} positivity and {} wang violations, (chi, chi, phi) with N = {}, odd rule empty on {checked} groups",
        scans.positivity.len(),
        scans.wang.len(),
        hit.multiplicity
    ))
}

fn cyclotomic(n: u32) -> impl Strategy<Value = Cyclotomic> {
    prop::collection::vec((-50i64..=50, 1i64..=6), n as usize).prop_map(move |terms| {
        let coeffs = terms
            .into_iter()
            .map(|(a, b)| BigRational::new(a.into(), b.into()))
            .collect();
        Cyclotomic::from_coeffs(n, coeffs)
    })
}

fn criterion_properties() -> Outcome {
    for b in BuiltinGroup::ALL {
        let loaded = GroupSource::Builtin(b)
            .load(DEFAULT_MAX_ORDER)
            .map_err(|e| e.to_string())?;
        loaded
            .group()
            .check_axioms_exhaustive()
            .map_err(|e| format!("{}: {e}", b.name()))?;
    }

    // Frobenius reciprocity for every irreducible of H against every one of G.
    let cx = Counterexample::canonical();
    let ctx = ClassStructure::new(cx.group().clone());
    let table = dixon_table(&ctx).map_err(|e| e.to_string())?;
    let (h_group, embedding) = cx.group().restrict(cx.h()).map_err(|e| e.to_string())?;
    let hctx = ClassStructure::new(h_group);
    let h_table = dixon_table(&hctx).map_err(|e| e.to_string())?;
    let mut local = vec![usize::MAX; ctx.order()];
    for (i, &g) in embedding.iter().enumerate() {
        local[g] = i;
    }
    let mut pairs = 0;
    for lambda in h_table.irreducibles() {
        let induced = induce_from_normal(&ctx, cx.h(), |g| {
            lambda
                .value_at(local[g])
                .promote(ctx.exponent())
                .expect("exponent of H divides that of G")
        })
        .map_err(|e| e.to_string())?;
        for theta in table.irreducibles() {
            let lhs = induced.rational_inner_product(theta).map_err(|e| e.to_string())?;
            let res = theta.restrict(&hctx, &embedding).map_err(|e| e.to_string())?;
            let rhs = lambda.rational_inner_product(&res).map_err(|e| e.to_string())?;
            ensure(lhs == rhs, || format!("reciprocity fails: {lhs} != {rhs}"))?;
            pairs += 1;
        }
    }

    let cases = 10_000;
    let mut runner = TestRunner::new_with_rng(
        Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    );
    let triples = prop::sample::select(vec![1u32, 2, 3, 4, 5, 8, 12, 16])
        .prop_flat_map(|n| (cyclotomic(n), cyclotomic(n), cyclotomic(n)));
    runner
        .run(&triples, |(a, b, c)| {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            prop_assert_eq!(&a + &(-&a), Cyclotomic::zero(a.order()));
            Ok(())
        })
        .map_err(|e| format!("ring axioms: {e}"))?;

    let mut indicators = 0;
    for group in corpus() {
        let (report, _) = passing_report(&["table", "--group", &group, "--table-method", "dixon"])?;
        let t = report.character_table.ok_or("no table")?;
        for (nu, ch) in indicators_from_values(&t)?.iter().zip(&t.characters) {
            let ok = [-1, 0, 1]
                .iter()
                .any(|&x| *nu == BigRational::from_integer(BigInt::from(x)));
            ensure(ok && rational(&ch.indicator.to_string())? == *nu, || {
                format!("{group}: indicator {nu} recorded as {}", ch.indicator)
            })?;
            indicators += 1;
        }
    }
    Ok(format!(
        "axioms on 3 built-ins, reciprocity on {pairs} pairs, ring axioms on {cases} triples, {indicators} indicators in {{-1, 0, 1}}"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("headline reproduction", criterion_headline),
        ("claim 6 ledger", criterion_ledger),
        ("structural checks", criterion_structure),
        ("table integrity", criterion_table),
        ("global indicator identity", criterion_indicator_identity),
        ("conjecture scans", criterion_scans),
        ("property suites", criterion_properties),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS  {}. {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL  {}. {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
