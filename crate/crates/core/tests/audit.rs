use posaudit_core::audit::{
    recheck_violation, scan_report, verify_report, AuditError, AuditReport, BuiltinGroup, Conjecture, GroupSource,
    LoadedGroup, TableMethod, VerifyOptions,
};
use posaudit_core::group::DEFAULT_MAX_ORDER;

fn load(b: BuiltinGroup) -> LoadedGroup {
    GroupSource::Builtin(b).load(DEFAULT_MAX_ORDER).unwrap()
}

fn verify(method: TableMethod, all_lambdas: bool) -> AuditReport {
    verify_report(&load(BuiltinGroup::G128), VerifyOptions { all_lambdas, method }).unwrap()
}

#[test]
fn headline_and_claims() {
    let report = verify(TableMethod::Both, false);
    assert!(report.passed, "{:?}", report.failures);
    let runs = report.runs.as_ref().unwrap();
    assert_eq!(runs.len(), 1);
    let run = &runs[0];
    let ids: Vec<u8> = run.claims.iter().map(|c| c.claim).collect();
    assert_eq!(ids, [1, 2, 3, 4, 5, 6]);
    assert!(run.claims.iter().all(|c| c.passed && c.failures.is_empty()));
    assert_eq!(run.headline.nu2_chi, "1");
    assert_eq!(run.headline.phi_indicator, "-1");
    assert_eq!(run.headline.phi_degree, 2);
    assert_eq!(run.claim6.ledger(), "16*8 + 8*8 + 8*(-8) = 128");
    let counts: Vec<usize> = run.claim6.subsets.iter().map(|s| s.count).collect();
    assert_eq!(counts, [16, 8, 8, 96]);
}

#[test]
fn structural_witnesses() {
    let report = verify(TableMethod::Both, false);
    let run = &report.runs.as_ref().unwrap()[0];
    let claim = |i: usize| &run.claims[i - 1].witness;
    assert_eq!(claim(3)["group_order"], 128);
    assert_eq!(claim(3)["centralizer_of_h_order"], 16);
    assert_eq!(claim(4)["h0"].as_array().unwrap().len(), 2);
    assert_eq!(claim(4)["centralizer_of_z_in_h_order"], 8);
    assert_eq!(claim(5)["valid_covectors"].as_array().unwrap().len(), 8);
    assert_eq!(claim(5)["intersection"], claim(4)["h0"]);
}

#[test]
fn every_valid_lambda_passes() {
    let report = verify(TableMethod::Both, true);
    assert!(report.passed, "{:?}", report.failures);
    let runs = report.runs.unwrap();
    assert_eq!(runs.len(), 8);
    let mut covectors: Vec<&str> = runs.iter().map(|r| r.covector.as_str()).collect();
    covectors.dedup();
    assert_eq!(covectors.len(), 8);
    assert!(runs.iter().all(|r| r.passed));
}

#[test]
fn single_path_methods_pass() {
    for method in [TableMethod::Dixon, TableMethod::Constructive] {
        let report = verify(method, false);
        assert!(report.passed, "{method:?}: {:?}", report.failures);
        assert_eq!(report.table_check.is_some(), method == TableMethod::Dixon);
    }
}

#[test]
fn table_cross_check() {
    let report = verify(TableMethod::Both, false);
    let check = report.table_check.unwrap();
    assert!(check.passed);
    assert_eq!((check.rows, check.classes), (23, 23));
    assert_eq!(check.sum_of_squared_degrees, 128);
    assert_eq!(check.matches.len(), 6);
    assert!(check.matches.iter().all(|m| m.row.is_some()));
    assert_eq!(check.indicator_sum, check.square_roots_of_identity as i64);
}

#[test]
fn counterexample_triple_is_reported() {
    let report = verify(TableMethod::Both, false);
    let run = &report.runs.as_ref().unwrap()[0];
    let chi = run.chi_row.unwrap();
    let phi = run.headline.phi_row.unwrap();
    let scans = report.scans.as_ref().unwrap();

    let hit = scans
        .positivity
        .iter()
        .find(|v| (v.p, v.q, v.r) == (chi, chi, phi))
        .expect("(chi, chi, phi) violates positivity");
    assert_eq!(hit.multiplicity % 2, 0);
    assert!(hit.multiplicity >= 2);
    assert_eq!((hit.nu_p, hit.nu_q, hit.nu_r), (1, 1, -1));

    let wang = scans.wang.iter().find(|v| v.p == chi && v.r == phi).unwrap();
    assert_eq!(wang.q, chi, "chi is self-dual");
    assert!(scans.odd_rule.is_empty());
}

#[test]
fn violations_recheck_from_json() {
    let report = verify(TableMethod::Both, false);
    let text = report.to_json();
    let back: AuditReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back, report);
    let table = back.character_table.as_ref().unwrap();
    let scans = back.scans.as_ref().unwrap();
    assert!(scans.all().count() > 0);
    for v in scans.all() {
        recheck_violation(v, table).unwrap();
    }
    let mut forged = scans.positivity[0].clone();
    forged.multiplicity += 1;
    assert!(recheck_violation(&forged, table).is_err());
    let mut forged = scans.positivity[0].clone();
    forged.conjecture = Conjecture::OddRule;
    assert!(recheck_violation(&forged, table).is_err());
}

#[test]
fn reports_are_deterministic() {
    assert_eq!(
        verify(TableMethod::Both, false).to_json(),
        verify(TableMethod::Both, false).to_json()
    );
    assert_eq!(
        verify(TableMethod::Both, false).to_text(),
        verify(TableMethod::Both, false).to_text()
    );
}

#[test]
fn controls_have_no_violations() {
    for b in [BuiltinGroup::Q8, BuiltinGroup::H16] {
        for method in [TableMethod::Dixon, TableMethod::Constructive, TableMethod::Both] {
            let report = scan_report(&load(b), method).unwrap();
            assert!(report.passed, "{b:?} {method:?}");
            let scans = report.scans.unwrap();
            assert!(scans.positivity.is_empty() && scans.odd_rule.is_empty(), "{b:?}");
        }
    }
}

#[test]
fn builtins_satisfy_group_axioms() {
    for b in BuiltinGroup::ALL {
        let loaded = load(b);
        assert_eq!(loaded.group().order(), b.order());
        loaded.group().check_axioms_exhaustive().unwrap();
    }
}

#[test]
fn verify_needs_the_semidirect_product() {
    let err = verify_report(&load(BuiltinGroup::Q8), VerifyOptions::default())
        .err()
        .unwrap();
    assert!(matches!(err, AuditError::Unsupported(_)));
    let err = scan_report(&load(BuiltinGroup::G128), TableMethod::Constructive)
        .err()
        .unwrap();
    assert!(matches!(err, AuditError::Unsupported(_)));
}
