//! Acceptance gate: every criterion below runs at its stated bound and
//! prints one pass/fail line (visible with `cargo test -- --nocapture`).
//! All tolerances are exact equality over GF(p).

use resolvent_core::report::SuiteCheck;
use resolvent_core::suites;

fn gate(criterion: &str, checks: &[SuiteCheck]) {
    let ok = checks.iter().all(|c| c.passed);
    println!(
        "acceptance {}: {}",
        criterion,
        if ok { "PASS" } else { "FAIL" }
    );
    for c in checks {
        if !c.passed {
            println!("    {}: {}", c.name, c.detail);
        }
    }
    assert!(ok, "criterion failed: {}", criterion);
}

#[test]
fn criterion_1_dimension_certificates() {
    // dim R = p^2 for p in {3,5,7}; dim R#kG = p^2 q for (3,3), (3,9), (5,5);
    // dim H = 27 for all 18 tuples; tip sets exact
    gate(
        "1 (dimension certificates)",
        &suites::dimension_suite().unwrap(),
    );
}

#[test]
fn criterion_2_closed_form_differentials() {
    // recursive differential = totalized tensor differential on truncated
    // rings through degree 8: diagonal exponents {2,3,4} x p in {3,5,7}
    // plus all permutations of (2,3,4)
    gate(
        "2 (closed-form differentials)",
        &suites::closed_form_suite(8).unwrap(),
    );
}

#[test]
fn criterion_3_complex_axioms() {
    // d o d = 0 through degree 10 on all four preset resolutions and both
    // twisted complexes; homotopy contract on 100 seeded samples per
    // degree <= 6
    gate(
        "3 (complex axioms)",
        &suites::complex_axioms_suite(10, 6, 100).unwrap(),
    );
}

#[test]
fn criterion_4_lifting_differential_tables() {
    let checks = suites::lifting_suite().unwrap();
    let tables: Vec<SuiteCheck> = checks
        .iter()
        .filter(|c| c.name.contains("table"))
        .cloned()
        .collect();
    gate("4 (degree-2/3 differential tables)", &tables);
}

#[test]
fn criterion_5_permanent_cocycles() {
    let checks = suites::lifting_suite().unwrap();
    let cocycles: Vec<SuiteCheck> = checks
        .iter()
        .filter(|c| c.name.contains("cocycle"))
        .cloned()
        .collect();
    gate("5 (permanent cocycles)", &cocycles);
}

#[test]
fn criterion_6_twisted_tensor_identities() {
    let mut checks = Vec::new();
    for (p, q) in [(3u64, 3u64), (5, 5), (3, 9)] {
        for mut c in suites::ttp_identity_suite(p, q).unwrap() {
            c.name = format!("({},{})-{}", p, q, c.name);
            checks.push(c);
        }
    }
    gate("6 (twisted-tensor identity suite)", &checks);
}

#[test]
fn criterion_7_betti_numbers() {
    // 1,2,5,7,12 from the twisted complex, equal to the recursive engine
    // through degree 6; n+1 over the Jordan plane; triangular numbers over
    // the truncated ring
    gate("7 (Betti numbers)", &suites::betti_suite(6).unwrap());
}

#[test]
fn criterion_8_chain_maps_and_products() {
    gate(
        "8 (index-shift chain maps and even cup products)",
        &suites::chain_map_suite(10, 8).unwrap(),
    );
}

#[test]
fn criterion_9_chain_isomorphism() {
    gate(
        "9 (chain isomorphism with the tensor complex)",
        &suites::chain_iso_suite(8).unwrap(),
    );
}
