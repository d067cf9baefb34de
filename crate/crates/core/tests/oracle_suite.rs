use asai_core::charlattice::FiniteSetting;
use asai_core::oracle::{self, OracleConfig};

#[test]
fn default_suite_passes() {
    let cfg = OracleConfig {
        parallel: true,
        ..OracleConfig::default()
    };
    let r = oracle::run_suite(&cfg);
    assert!(r.passed(), "{:?}", &r.failures[..r.failures.len().min(5)]);
    assert!(r.checked > 1_000_000);
    // GaloisPair(5, 5), (7, 5), (9, 5) exceed 2^22
    assert_eq!(r.skipped, 3);
}

#[test]
fn parallel_and_sequential_reports_agree() {
    let s = FiniteSetting::galois_pair(5u32, 3).unwrap();
    let seq = OracleConfig::default();
    let par = OracleConfig { parallel: true, ..seq.clone() };
    for ell in [2, 7, 31] {
        assert_eq!(
            oracle::verify_lift_counts(&s, ell, &seq).unwrap(),
            oracle::verify_lift_counts(&s, ell, &par).unwrap()
        );
    }
    assert_eq!(oracle::verify_parity(&s, &seq).unwrap(), oracle::verify_parity(&s, &par).unwrap());
}

#[test]
fn small_bound_skips_everything() {
    let cfg = OracleConfig {
        max_modulus: 100,
        euler_bound: 4,
        ..OracleConfig::default()
    };
    let r = oracle::run_suite(&cfg);
    assert!(r.passed());
    assert!(r.skipped > 0);
}

#[test]
fn injected_fault_fails_the_suite() {
    let cfg = OracleConfig {
        max_modulus: 1000,
        euler_bound: 4,
        inject_fault: true,
        ..OracleConfig::default()
    };
    assert!(!oracle::run_suite(&cfg).passed());
}

#[test]
fn subgroup_lattice_examples() {
    let s = FiniteSetting::galois_pair(3u32, 3).unwrap();
    let cfg = OracleConfig::default();
    for ell in [7, 13] {
        let r = oracle::verify_subgroup_lattice(&s, ell, &cfg).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
    }
}

#[test]
fn euler_examples() {
    let r = oracle::verify_euler_arithmetic(6, &[3], false);
    assert!(r.passed());
}
