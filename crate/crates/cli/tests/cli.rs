use std::process::{Command, Output};

use num_bigint::BigInt;
use proptest::prelude::*;
use qhecke::theta::PochLength;
use qhecke::{QMonomial, Series};
use qhecke_cli::syntax::BinOp;
use qhecke_cli::{eval, parse, Expr, ExprKind, Primitive};

fn qhecke(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qhecke"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn text(bytes: &[u8]) -> String {
    String::from_utf8(bytes.to_vec()).unwrap()
}

fn mono() -> impl Strategy<Value = QMonomial> {
    (prop::bool::ANY, -5i64..6).prop_map(|(neg, e)| QMonomial::new(if neg { -1 } else { 1 }, e))
}

fn primitive() -> impl Strategy<Value = Primitive> {
    prop_oneof![
        (1i64..8).prop_map(|m| Primitive::Eta { m }),
        (-4i64..5, 1i64..8).prop_map(|(a, m)| Primitive::J { a, m }),
        (-4i64..5, 1i64..8).prop_map(|(a, m)| Primitive::JBar { a, m }),
        (mono(), 1i64..5).prop_map(|(x, m)| Primitive::Theta { x, m }),
        (mono(), 1i64..16, mono()).prop_map(|(x, m, z)| Primitive::Appell { x, m, z }),
        (prop::array::uniform3(1i64..5), mono(), mono()).prop_map(|(abc, x, y)| Primitive::F { abc, x, y }),
        (prop::array::uniform6(1i64..4), mono(), mono(), mono())
            .prop_map(|(coeffs, x, y, z)| Primitive::G { coeffs, x, y, z }),
        Just(Primitive::Chi0),
        Just(Primitive::Chi1),
        Just(Primitive::KlA),
        Just(Primitive::KlB),
        (1i64..7, -5i64..6, prop::option::of(-3i64..4)).prop_map(|(a, b, c)| Primitive::PartialTheta { a, b, c }),
        (mono(), prop::option::of(0u64..6)).prop_map(|(x, n)| Primitive::Poch {
            x,
            len: n.map_or(PochLength::Infinite, PochLength::Finite),
        }),
    ]
}

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0i64..1000).prop_map(|n| Expr::new(ExprKind::Num(BigInt::from(n)))),
        Just(Expr::new(ExprKind::Q)),
        primitive().prop_map(|p| Expr::new(ExprKind::Call(p))),
    ];
    leaf.prop_recursive(5, 40, 2, |inner| {
        let op = prop_oneof![Just(BinOp::Add), Just(BinOp::Sub), Just(BinOp::Mul), Just(BinOp::Div)];
        prop_oneof![
            inner.clone().prop_map(|e| Expr::new(ExprKind::Neg(Box::new(e)))),
            (inner.clone(), -4i64..5).prop_map(|(e, k)| Expr::new(ExprKind::Pow(Box::new(e), k))),
            (op, inner.clone(), inner).prop_map(|(op, l, r)| Expr::new(ExprKind::Binary(op, Box::new(l), Box::new(r)))),
        ]
    })
}

proptest! {
    #[test]
    fn print_then_parse_is_identity(e in expr()) {
        let printed = e.to_string();
        let parsed = parse(&printed).map_err(|err| TestCaseError::fail(format!("{printed}: {err}")))?;
        prop_assert_eq!(&parsed, &e);
        prop_assert_eq!(parsed.to_string(), printed);
    }

    #[test]
    fn parse_print_parse_is_stable(e in expr(), pad in "[ ]{0,2}") {
        // respace the canonical text to exercise the lexer
        let spaced = e.to_string().replace(' ', &pad);
        let once = parse(&spaced).map_err(|err| TestCaseError::fail(format!("{spaced}: {err}")))?;
        let twice = parse(&once.to_string()).unwrap();
        prop_assert_eq!(once, twice);
    }
}

#[test]
fn unclosed_call_reports_end_of_input() {
    let src = "m(q^7, 15, q^9";
    let err = parse(src).unwrap_err();
    assert_eq!(err.offset, src.len());
    assert!(err.expected.contains(")"), "{err}");
    assert_eq!(err.found, "end of input");
}

#[test]
fn documented_evaluations() {
    let ev = |s: &str, n: i64| eval(&parse(s).unwrap(), n).unwrap();
    assert_eq!(ev("f(1,2,1; q, q)", 50), ev("J(1)^2", 50));
    assert_eq!(ev("2 - g(1,2,1,2,2,1; q,q,q) / J(1)^2", 30), ev("chi0()", 30));
    assert_eq!(ev("q^-1", 10).valuation(), -1);
    assert!(ev("jt(q,1)", 10).is_zero());
    assert_eq!(ev("klA() * J(1)", 30), ev("ptheta(3,3)", 30));
    assert_eq!(ev("poch(q, inf)", 30), ev("J(1)", 30));
    assert_eq!(ev("poch(q, 2)", 30), ev("(1 - q) * (1 - q^2)", 30));
    assert_eq!(ev("poch(q, 0)", 30), ev("1", 30));
    let s = ev("J(1)^2 * chi0()", 20);
    assert!(!s.is_zero());
}

#[test]
fn evaluation_is_order_monotone() {
    let ev = |n: i64| eval(&parse("q^-3 * m(q^2, 5, -q) / J(1,3) + f(1,3,1; -q, q^2)").unwrap(), n).unwrap();
    let (low, high) = (ev(25), ev(45));
    assert_eq!(low, high.truncate(25));
}

#[test]
fn expand_prints_twenty_terms() {
    let out = qhecke(&["expand", "1/(1-q)", "--order", "30"]);
    assert_eq!(out.status.code(), Some(0));
    let s = text(&out.stdout);
    assert!(s.contains("… (+11 more)"), "{s}");
    assert!(s.trim_end().ends_with("+ O(q^31)"), "{s}");
    let json = qhecke(&["expand", "1/(1-q)", "--order", "30", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(Series::from_json(&v).unwrap().terms().count(), 31);
}

#[test]
fn exit_codes() {
    let parse_error = qhecke(&["expand", "m(q^7, 15, q^9"]);
    assert_eq!(parse_error.status.code(), Some(2));
    assert!(text(&parse_error.stderr).contains("byte 14"));
    let pole = qhecke(&["expand", "m(q, 2, q)"]);
    assert_eq!(pole.status.code(), Some(3));
    assert!(text(&pole.stderr).contains("vanishing denominator"));
    assert_eq!(qhecke(&["verify", "no-such-identity"]).status.code(), Some(2));
    assert_eq!(qhecke(&["verify"]).status.code(), Some(2));
    assert_eq!(qhecke(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(qhecke(&["expand", "q", "--order", "-1"]).status.code(), Some(2));
    assert_eq!(qhecke(&["--help"]).status.code(), Some(0));
    assert_eq!(qhecke(&["verify", "newid-1", "--order", "50"]).status.code(), Some(0));
}

#[test]
fn list_names_every_identity() {
    let out = qhecke(&["list", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let lines: Vec<serde_json::Value> =
        text(&out.stdout).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), qhecke::catalog::list().len());
    assert!(lines.iter().any(|v| v["name"] == "newid-4"));
    let human = text(&qhecke(&["list"]).stdout);
    assert!(human.lines().any(|l| l.starts_with("zwegers-chi0")));
}

#[test]
fn verify_all_jobs_agree() {
    let names = |jobs: &str| -> Vec<String> {
        let out = qhecke(&["verify", "--all", "--order", "20", "--json", "--jobs", jobs]);
        assert_eq!(out.status.code(), Some(0));
        text(&out.stdout)
            .lines()
            .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap()["name"].as_str().unwrap().to_string())
            .collect()
    };
    assert_eq!(names("1"), names("3"));
}
