use qgraph_core::registry::{
    find, list_identities, registry, select, verify, verify_all, verify_records, RegistryError,
    Status,
};

#[test]
fn ids_are_unique() {
    let mut ids: Vec<&str> = registry().iter().map(|r| r.id).collect();
    let n = ids.len();
    ids.sort_unstable();
    ids.dedup();
    assert_eq!(ids.len(), n);
    assert!(n >= 45);
}

#[test]
fn toolkit_tag_selects_eight() {
    let reports = verify_all(&["toolkit".into()], None, false);
    let ids: Vec<&str> = reports.iter().map(|r| r.id.as_str()).collect();
    assert_eq!(ids, ["EULER", "AF", "GUPTA", "TAIL", "AGL", "FINE-1", "FINE-2", "LERCH"]);
    assert!(reports.iter().all(|r| r.status == Status::Pass));
}

#[test]
fn tags_ignore_case() {
    let recs = registry();
    assert_eq!(select(&recs, &["D-SERIES".into()]).len(), select(&recs, &["d-series".into()]).len());
    assert!(select(&recs, &["no-such-tag".into()]).is_empty());
}

#[test]
fn a2_and_tail() {
    assert_eq!(verify("A2", None).unwrap().status, Status::Pass);
    let tail = verify("tail", Some(30)).unwrap();
    assert_eq!((tail.status, tail.order), (Status::Pass, 30));
}

#[test]
fn c5_prefers_the_derived_prefactor() {
    let r = verify("C5", None).unwrap();
    let Status::ResolvedVariant { selected, rejected } = r.status else {
        panic!("C5 did not resolve: {:?}", r.status);
    };
    assert!(selected.contains("^-2"));
    let m = rejected[0].failure.mismatch.as_ref().unwrap();
    assert_eq!((m.exponent.as_str(), m.lhs.as_str(), m.rhs.as_str()), ("1", "5", "4"));
}

#[test]
fn unknown_identity() {
    assert!(matches!(find("NOPE"), Err(RegistryError::UnknownIdentity(_))));
    assert!(verify_records(&[], None, false).is_empty());
}

#[test]
fn reports_are_deterministic_and_serialize() {
    let recs = select(&registry(), &["divisor".into()]);
    let a = verify_records(&recs, Some(20), false);
    let b = verify_records(&recs, Some(20), false);
    assert_eq!(a, b);
    let json = serde_json::to_value(&a).unwrap();
    let first = &json[0];
    assert!(first.get("wall_ms").is_none());
    assert!(["pass", "resolved-variant"].contains(&first["status"].as_str().unwrap()));
    let timed = verify_records(&recs[..1], Some(10), true);
    assert!(timed[0].wall_ms.is_some());
}

#[test]
fn low_order_still_resolves_variants() {
    // q^1 already separates the two C5 prefactors
    let r = verify("C5", Some(2)).unwrap();
    assert!(matches!(r.status, Status::ResolvedVariant { .. }));
    let r = verify("C5", Some(0)).unwrap();
    assert!(matches!(r.status, Status::Fail { ref matching_candidates, .. } if matching_candidates.len() == 2));
}

#[test]
fn listing_matches_registry() {
    let list = list_identities();
    assert_eq!(list.len(), registry().len());
    let c5 = list.iter().find(|e| e.id == "C5").unwrap();
    assert_eq!(c5.variants.len(), 2);
    assert_eq!(c5.default_order, 50);
}
