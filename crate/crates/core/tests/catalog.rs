use qhecke::catalog::{conjecture_residual, list, verify, verify_all};
use qhecke::{Error, Series, VerificationReport};

#[test]
fn documented_examples() {
    for name in ["newid-3", "newid-5", "prop-f111-zero", "zwegers-chi0", "lemma-a1"] {
        let r = verify(name, 60).unwrap();
        assert!(r.passed, "{name}: {:?}", r.first_mismatch);
        assert_eq!(r.order_checked, 60);
    }
}

#[test]
fn whole_registry_is_deterministic() {
    let strip = |v: Vec<qhecke::Result<VerificationReport>>| {
        v.into_iter()
            .map(|r| {
                let r = r.unwrap();
                (r.name, r.passed, r.cases, r.first_mismatch)
            })
            .collect::<Vec<_>>()
    };
    let a = strip(verify_all(30, 1));
    let b = strip(verify_all(30, 4));
    assert_eq!(a, b);
    assert!(a.iter().all(|r| r.1), "{:?}", a.iter().find(|r| !r.1));
    let names: Vec<_> = list().into_iter().map(|(n, _)| n.to_string()).collect();
    assert_eq!(a.iter().map(|r| r.0.clone()).collect::<Vec<_>>(), names);
}

#[test]
fn unknown_identity() {
    assert!(matches!(verify("lemma-z9", 10), Err(Error::UnknownIdentity(_))));
}

#[test]
fn report_json_line() {
    let r = verify("newid-1", 20).unwrap();
    let back: VerificationReport = serde_json::from_str(&r.to_json_line()).unwrap();
    assert_eq!(back, r);
}

#[test]
fn residual_is_stable() {
    let a = conjecture_residual(40).unwrap();
    let b = conjecture_residual(60).unwrap();
    assert!(a.equal_to_order(&b, 40).unwrap());
    let back = Series::from_json(&b.to_json()).unwrap();
    assert_eq!(back, b);
}
