//! The stored recurrence and certificate for the vanishing sum: recomputed
//! output must match it byte for byte, and the stored data must verify.

use serde_json::Value;

use wzcert::beukers::{assess_proof, summand};
use wzcert::potential::identity_potential;
use wzcert::summation::{certificate_from_json, certificate_json, verify_certificate, zeil_potential};

fn golden() -> Value {
    serde_json::from_str(include_str!("golden/identity_recurrence.json")).unwrap()
}

#[test]
fn recomputed_certificate_matches_golden() {
    let (rec, cert) = zeil_potential(&summand(), &identity_potential(), 3).unwrap();
    assert_eq!(certificate_json(&rec, &cert, true), golden());
}

#[test]
fn golden_certificate_verifies_and_proves() {
    let (rec, cert) = certificate_from_json(&golden()).unwrap();
    let (t, c) = (summand(), identity_potential());
    assert!(verify_certificate(&t, Some(&c), &rec, &cert));
    let report = assess_proof(&t, &c, rec, cert).unwrap();
    assert!(report.conclusion);
    assert_eq!(report.base_cases.len(), 3);
}

#[test]
fn tampered_golden_is_rejected() {
    let mut doc = golden();
    doc["coeffs"][0] = Value::String("-6*n^6".into());
    let (rec, cert) = certificate_from_json(&doc).unwrap();
    assert!(!verify_certificate(
        &summand(),
        Some(&identity_potential()),
        &rec,
        &cert
    ));
}
