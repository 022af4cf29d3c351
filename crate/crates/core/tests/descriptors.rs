mod common;

use cp2genus::error::Error;
use cp2genus::iso;
use cp2genus::lattice::Faithfulness;
use cp2genus::parse;

use common::{c43_ctx, ctx};

#[test]
fn normal_form_sorts_summands() {
    let c = ctx(5);
    let a = parse("E(0,0;0) + Z + c(0)", &c, false).unwrap();
    let b = parse("c(0) + Z + E(0,0;0)", &c, false).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.render(), b.render());
    assert_eq!(parse("2*Z + c(0)", &c, false).unwrap().rank(), 2 + 20);
}

#[test]
fn ranks_of_indecomposables() {
    let c = ctx(3);
    let rank = |s: &str| parse(s, &c, false).unwrap().rank();
    assert_eq!(rank("Z"), 1);
    assert_eq!(rank("b(0)"), 2);
    assert_eq!(rank("c(0)"), 6);
    assert_eq!(rank("Eb(0)"), 3);
    assert_eq!(rank("Ec(0)"), 7);
    assert_eq!(rank("B(0,0;1)"), 9);
    assert_eq!(rank("C(0,0;1)"), 10);
    assert_eq!(rank("E(0,0;0)"), 8);
    assert_eq!(rank("F(0,0;0)"), 9);
}

#[test]
fn faithfulness() {
    let c = ctx(3);
    let f = |s: &str| parse(s, &c, false).unwrap().faithfulness();
    assert_eq!(f("Z + Z"), Faithfulness::TrivialAction);
    assert_eq!(f("b(0) + Eb(0)"), Faithfulness::OrderP);
    assert_eq!(f("c(0)"), Faithfulness::Faithful);
    assert_eq!(f("B(0,0;0)"), Faithfulness::Faithful);
}

#[test]
fn rejects_bad_input() {
    let c = ctx(3);
    assert!(matches!(parse("D(0,0;1)", &c, false), Err(Error::InvalidDescriptor(_))));
    assert!(matches!(parse("C(0,0;5)", &c, false), Err(Error::InvalidDescriptor(_))));
    assert!(matches!(parse("Z +", &c, false), Err(Error::Syntax { .. })));
    assert!(parse("B(0,0;1,3l)", &c, false).is_err());
    let s = c43_ctx();
    assert!(matches!(parse("c(43)", &s, false), Err(Error::InvalidDescriptor(_))));
    assert!(parse("c(42)", &s, false).is_ok());
}

#[test]
fn lenient_units_are_canonicalized() {
    let c = ctx(5);
    let d = parse("B(0,0;0,2+3l)", &c, true).unwrap();
    let back = parse(&d.render(), &c, false).unwrap();
    assert_eq!(d, back);
}

#[test]
fn class_sums_are_invariants() {
    let s = c43_ctx();
    let a = parse("c(3) + c(4)", &s, false).unwrap();
    let b = parse("c(0) + c(7)", &s, false).unwrap();
    let d = parse("c(1) + c(7)", &s, false).unwrap();
    assert!(iso::isomorphic(&a, &b).unwrap());
    assert!(!iso::isomorphic(&a, &d).unwrap());
    assert!(iso::same_genus(&a, &d).unwrap());
}

#[test]
fn type_d_needs_quadratic_character() {
    let c = ctx(5);
    let cc = parse("C(0,0;1)", &c, false).unwrap();
    let dd = parse("D(0,0;1)", &c, false).unwrap();
    assert!(iso::same_genus(&cc, &dd).unwrap());
    assert!(!iso::isomorphic(&cc, &dd).unwrap());
    let two_d = parse("D(0,0;1) + D(0,0;2)", &c, false).unwrap();
    let two_c = parse("C(0,0;1) + C(0,0;2)", &c, false).unwrap();
    assert!(iso::isomorphic(&two_c, &two_d).unwrap());
    // A Z summand absorbs the sign.
    let zc = parse("Z + C(0,0;1)", &c, false).unwrap();
    let zd = parse("Z + D(0,0;1)", &c, false).unwrap();
    assert!(iso::isomorphic(&zc, &zd).unwrap());
}
