use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::character::{
    dixon_table, fusion_tensor, CharacterTable, CharacterTableJson, ConstructiveCharacter, FusionJson, SCHEMA_VERSION,
};

use super::claims::{verify_claims, LambdaRun, VerifyOptions};
use super::scans::{run_scans, ScanResults, Violation};
use super::{AuditError, LoadedGroup, TableMethod};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub descriptor: String,
    pub order: usize,
    pub classes: usize,
    pub exponent: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableMatch {
    pub name: String,
    pub row: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableCheck {
    pub method: TableMethod,
    pub rows: usize,
    pub classes: usize,
    pub sum_of_squared_degrees: u64,
    pub row_orthogonality: bool,
    pub column_orthogonality: bool,
    pub indicators_in_range: bool,
    /// `Σ ν₂(θ) deg θ`.
    pub indicator_sum: i64,
    /// `#{g : g² = 1}`.
    pub square_roots_of_identity: usize,
    /// Constructive characters located among the table rows.
    pub matches: Vec<TableMatch>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructiveRow {
    pub name: String,
    pub degree: String,
    pub indicator: String,
    pub values: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub schema: u32,
    pub command: String,
    pub group: GroupSummary,
    pub table_method: TableMethod,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub runs: Option<Vec<LambdaRun>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table_check: Option<TableCheck>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scans: Option<ScanResults>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constructive: Option<Vec<ConstructiveRow>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub character_table: Option<CharacterTableJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fusion: Option<FusionJson>,
    /// Wall-clock milliseconds per phase; only filled in on request.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, u64>>,
    pub failures: Vec<String>,
    pub passed: bool,
}

impl AuditReport {
    fn new(command: &str, loaded: &LoadedGroup, method: TableMethod) -> Self {
        AuditReport {
            schema: SCHEMA_VERSION,
            command: command.to_string(),
            group: GroupSummary {
                descriptor: loaded.descriptor.clone(),
                order: loaded.ctx.order(),
                classes: loaded.ctx.class_count(),
                exponent: loaded.ctx.exponent(),
            },
            table_method: method,
            runs: None,
            table_check: None,
            scans: None,
            constructive: None,
            character_table: None,
            fusion: None,
            timings_ms: None,
            failures: Vec::new(),
            passed: false,
        }
    }

    fn finish(mut self) -> Self {
        if let Some(runs) = &self.runs {
            for run in runs {
                for claim in run.claims.iter().filter(|c| !c.passed) {
                    self.failures.push(format!(
                        "lambda {}: claim {} failed: {}",
                        run.covector,
                        claim.claim,
                        claim.failures.join("; ")
                    ));
                }
                if !run.headline.passed {
                    self.failures
                        .push(format!("lambda {}: headline not reproduced", run.covector));
                }
            }
        }
        if let Some(check) = &self.table_check {
            if !check.passed {
                self.failures.push("character table check failed".into());
            }
        }
        if let Some(scans) = &self.scans {
            if !scans.passed() {
                self.failures.push(format!(
                    "odd-rule scan found {} violations; the pipeline is inconsistent",
                    scans.odd_rule.len()
                ));
            }
        }
        self.passed = self.failures.is_empty();
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let g = &self.group;
        let _ = writeln!(out, "posaudit {} on {}", self.command, g.descriptor);
        let _ = writeln!(
            out,
            "group: order {}, {} classes, exponent {}; table method {}",
            g.order,
            g.classes,
            g.exponent,
            self.table_method.name()
        );
        if let Some(runs) = &self.runs {
            for run in runs {
                render_run(&mut out, run);
            }
        }
        if let Some(check) = &self.table_check {
            render_check(&mut out, check);
        }
        if let Some(rows) = &self.constructive {
            let _ = writeln!(out, "\nconstructive characters:");
            for row in rows {
                let _ = writeln!(
                    out,
                    "  {:<14} deg {:>2}  nu2 {:>2}  [{}]",
                    row.name,
                    row.degree,
                    row.indicator,
                    row.values.join(", ")
                );
            }
        }
        // verify and scan embed the table for rechecking; only `table` prints it
        if let Some(table) = self.character_table.as_ref().filter(|_| self.command == "table") {
            render_table(&mut out, table);
        }
        if let Some(fusion) = &self.fusion {
            let _ = writeln!(
                out,
                "\nfusion: {} nonzero coefficients N[p][q][r]",
                fusion.entries.len()
            );
        }
        if let Some(scans) = &self.scans {
            render_scans(&mut out, scans);
        }
        if let Some(timings) = &self.timings_ms {
            let parts: Vec<String> = timings.iter().map(|(k, v)| format!("{k} {v} ms")).collect();
            let _ = writeln!(out, "\ntimings: {}", parts.join(", "));
        }
        let _ = writeln!(out);
        if self.passed {
            let _ = writeln!(out, "RESULT: PASS");
        } else {
            for f in &self.failures {
                let _ = writeln!(out, "failure: {f}");
            }
            let _ = writeln!(out, "RESULT: FAIL");
        }
        out
    }
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn render_run(out: &mut String, run: &LambdaRun) {
    let _ = writeln!(out, "\nlambda with covector {}", run.covector);
    for claim in &run.claims {
        let _ = writeln!(
            out,
            "  [{}] claim {}: {}",
            mark(claim.passed),
            claim.claim,
            claim.statement
        );
        for f in &claim.failures {
            let _ = writeln!(out, "         {f}");
        }
    }
    let _ = writeln!(out, "  claim 6 ledger: {}", run.claim6.ledger());
    for s in &run.claim6.subsets {
        let value = s.value.map_or("mixed".to_string(), |v| v.to_string());
        let _ = writeln!(out, "    {:<20} {:>3} elements, chi(g^2) = {value}", s.subset, s.count);
    }
    let h = &run.headline;
    let row = h.phi_row.map_or(String::new(), |r| format!(" (row {r})"));
    let _ = writeln!(
        out,
        "  headline [{}]: nu2(chi) = {}; phi{row} has degree {}, nu2(phi) = {}, <chi^2, phi> = {}",
        mark(h.passed),
        h.nu2_chi,
        h.phi_degree,
        h.phi_indicator,
        h.multiplicity
    );
}

fn render_check(out: &mut String, c: &TableCheck) {
    let _ = writeln!(out, "\ntable check [{}] ({})", mark(c.passed), c.method.name());
    let _ = writeln!(out, "  {} irreducibles for {} classes", c.rows, c.classes);
    let _ = writeln!(out, "  sum of squared degrees: {}", c.sum_of_squared_degrees);
    let _ = writeln!(
        out,
        "  row orthogonality: {}; column orthogonality: {}; indicators in {{-1, 0, 1}}: {}",
        mark(c.row_orthogonality),
        mark(c.column_orthogonality),
        mark(c.indicators_in_range)
    );
    let _ = writeln!(
        out,
        "  sum nu2(theta) deg(theta) = {}, #{{g : g^2 = 1}} = {}",
        c.indicator_sum, c.square_roots_of_identity
    );
    for m in &c.matches {
        let row = m.row.map_or("missing".to_string(), |r| format!("row {r}"));
        let _ = writeln!(out, "  {} -> {row}", m.name);
    }
}

fn render_table(out: &mut String, t: &CharacterTableJson) {
    let _ = writeln!(out, "\ncharacter table (z = zeta_{}):", t.cyclotomic_order);
    let header: Vec<String> = t
        .classes
        .iter()
        .map(|c| format!("{}:{}/{}", c.index, c.size, c.element_order))
        .collect();
    let _ = writeln!(out, "  classes (index:size/order): {}", header.join(" "));
    for ch in &t.characters {
        let _ = writeln!(
            out,
            "  X{:<3} deg {:>2}  nu2 {:>2}  [{}]",
            ch.index,
            ch.degree,
            ch.indicator,
            ch.values.join(", ")
        );
    }
}

fn render_violations(out: &mut String, name: &str, list: &[Violation]) {
    let _ = writeln!(out, "  {name}: {} violations", list.len());
    for v in list {
        let _ = writeln!(
            out,
            "    (p, q, r) = ({}, {}, {})  N = {}  nu = ({}, {}, {})",
            v.p, v.q, v.r, v.multiplicity, v.nu_p, v.nu_q, v.nu_r
        );
    }
}

fn render_scans(out: &mut String, s: &ScanResults) {
    let _ = writeln!(out, "\nconjecture scans:");
    render_violations(out, "positivity", &s.positivity);
    render_violations(out, "wang", &s.wang);
    render_violations(out, "odd_rule", &s.odd_rule);
}

fn constructive_rows(chars: &[ConstructiveCharacter]) -> Result<Vec<ConstructiveRow>, AuditError> {
    chars
        .iter()
        .map(|c| {
            Ok(ConstructiveRow {
                name: c.name.clone(),
                degree: c.character.degree().map_or("?".into(), |d| d.to_string()),
                indicator: c.character.fs_indicator()?.to_string(),
                values: c.character.values().iter().map(ToString::to_string).collect(),
            })
        })
        .collect()
}

fn check_table(
    table: &CharacterTable,
    method: TableMethod,
    constructive: Option<&[ConstructiveCharacter]>,
) -> TableCheck {
    let ctx = table.context();
    let group = ctx.group();
    let indicators = table.indicators();
    let indicator_sum = indicators.as_ref().map_or(i64::MIN, |nus| {
        nus.iter()
            .zip(table.degrees())
            .map(|(&n, &d)| i64::from(n) * d as i64)
            .sum()
    });
    let square_roots = group
        .elements()
        .filter(|&g| group.mul(g, g) == group.identity())
        .count();
    let matches: Vec<TableMatch> = constructive
        .unwrap_or_default()
        .iter()
        .map(|c| TableMatch {
            name: c.name.clone(),
            row: table.find_row(&c.character),
        })
        .collect();
    let mut check = TableCheck {
        method,
        rows: table.len(),
        classes: ctx.class_count(),
        sum_of_squared_degrees: table.degrees().iter().map(|d| d * d).sum(),
        row_orthogonality: table.check_row_orthogonality().is_ok(),
        column_orthogonality: table.check_column_orthogonality().is_ok(),
        indicators_in_range: indicators.is_ok(),
        indicator_sum,
        square_roots_of_identity: square_roots,
        matches,
        passed: false,
    };
    check.passed = check.rows == check.classes
        && check.sum_of_squared_degrees == ctx.order() as u64
        && check.row_orthogonality
        && check.column_orthogonality
        && check.indicators_in_range
        && check.indicator_sum == square_roots as i64
        && check.matches.iter().all(|m| m.row.is_some());
    check
}

/// The table a command works with, according to `method`.
struct Tables {
    table: Option<CharacterTable>,
    constructive: Option<Vec<ConstructiveCharacter>>,
}

fn tables(loaded: &LoadedGroup, method: TableMethod, need_full: bool) -> Result<Tables, AuditError> {
    // `both` on a group with no constructive route is just `dixon`.
    let cross_check = method.uses_constructive() && (method != TableMethod::Both || loaded.has_constructive());
    let constructive = if cross_check {
        Some(loaded.constructive_characters()?)
    } else {
        None
    };
    let table = if method.uses_dixon() {
        Some(dixon_table(&loaded.ctx)?)
    } else {
        match &constructive {
            Some((chars, true)) => Some(CharacterTable::canonical(
                &loaded.ctx,
                chars.iter().map(|c| c.character.clone()).collect(),
            )?),
            _ if need_full => {
                return Err(AuditError::Unsupported(format!(
                    "the constructive characters of {} do not form a full table; use --table-method dixon or both",
                    loaded.descriptor
                )))
            }
            _ => None,
        }
    };
    Ok(Tables {
        table,
        constructive: constructive.map(|(c, _)| c),
    })
}

fn attach_table(report: &mut AuditReport, table: &CharacterTable, scans: bool) -> Result<(), AuditError> {
    report.character_table = Some(CharacterTableJson::from_table(table)?);
    if scans {
        let fusion = fusion_tensor(table)?;
        let indicators = table.indicators()?;
        report.scans = Some(run_scans(table, &fusion, &indicators));
    }
    Ok(())
}

/// `verify`: the claims pipeline, the table cross-check and the odd-rule
/// consistency scan.
pub fn verify_report(loaded: &LoadedGroup, options: VerifyOptions) -> Result<AuditReport, AuditError> {
    let cx = loaded.counterexample().ok_or_else(|| {
        AuditError::Unsupported(format!(
            "{} is not F2^4 x| Q8 with a faithful action; verify needs builtin:g128 or a semidirect-gf2 file realising Q8",
            loaded.descriptor
        ))
    })?;
    let mut report = AuditReport::new("verify", loaded, options.method);
    let t = tables(loaded, options.method, false)?;
    report.runs = Some(verify_claims(cx, &loaded.ctx, t.table.as_ref(), options)?);
    if let Some(table) = &t.table {
        report.table_check = Some(check_table(table, options.method, t.constructive.as_deref()));
        attach_table(&mut report, table, true)?;
    }
    Ok(report.finish())
}

/// `scan`: fusion data and the three conjecture scans.
pub fn scan_report(loaded: &LoadedGroup, method: TableMethod) -> Result<AuditReport, AuditError> {
    let mut report = AuditReport::new("scan", loaded, method);
    let t = tables(loaded, method, true)?;
    let table = t.table.expect("full table");
    report.table_check = Some(check_table(&table, method, t.constructive.as_deref()));
    attach_table(&mut report, &table, true)?;
    Ok(report.finish())
}

/// `table`: the character table with its fusion coefficients, or the
/// constructive characters on their own.
pub fn character_table_report(loaded: &LoadedGroup, method: TableMethod) -> Result<AuditReport, AuditError> {
    let mut report = AuditReport::new("table", loaded, method);
    let t = tables(loaded, method, false)?;
    if let Some(chars) = &t.constructive {
        report.constructive = Some(constructive_rows(chars)?);
    }
    if let Some(table) = &t.table {
        report.table_check = Some(check_table(table, method, t.constructive.as_deref()));
        attach_table(&mut report, table, false)?;
        report.fusion = Some(FusionJson::from_tensor(&fusion_tensor(table)?));
    }
    Ok(report.finish())
}
