//! JSON round trips: every emitted document re-ingests to a
//! structurally equal object.

use floer_upsilon::cfk::builtin;
use floer_upsilon::exact::{rat, rint, PLFunction};
use floer_upsilon::links::builtin_link;
use floer_upsilon::upsilon::upsilon;
use floer_upsilon_cli::{ComplexDoc, LinkDoc, PLFunctionDoc, UpsilonDoc};

#[test]
fn complex_roundtrip() {
    for name in ["trefoil", "figure8", "torus:4,5", "wd_trefoil", "hom_counterexample"] {
        let c = builtin(name).unwrap();
        let doc = ComplexDoc::from_complex(&c);
        let text = serde_json::to_string(&doc).unwrap();
        let back: ComplexDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(back, doc, "{name}");
        assert_eq!(back.to_complex().unwrap(), c, "{name}");
    }
}

#[test]
fn link_roundtrip() {
    let l = builtin_link("unlink:3").unwrap();
    let doc = LinkDoc::from_link(&l);
    let text = serde_json::to_string(&doc).unwrap();
    let back: LinkDoc = serde_json::from_str(&text).unwrap();
    assert_eq!(back, doc);
    assert_eq!(back.to_link().unwrap(), l);
}

#[test]
fn function_roundtrip() {
    let f = PLFunction::from_points(&[
        (rint(0), rint(0)),
        (rat(2, 3), rint(-2)),
        (rat(4, 3), rint(-2)),
        (rint(2), rint(0)),
    ])
    .unwrap();
    let doc = PLFunctionDoc::from_function(&f);
    let text = serde_json::to_string(&doc).unwrap();
    let back: PLFunctionDoc = serde_json::from_str(&text).unwrap();
    assert_eq!(back.to_function().unwrap(), f);
}

#[test]
fn upsilon_document_carries_tau_and_jumps() {
    let r = upsilon(&builtin("torus:3,4").unwrap()).unwrap();
    let doc = UpsilonDoc::from_result(&r);
    let value: serde_json::Value =
        serde_json::from_str(&serde_json::to_string(&doc).unwrap()).unwrap();
    assert_eq!(value["tau"], 3);
    assert_eq!(value["jumps"][0]["delta"], 3);
    assert_eq!(value["breakpoints"][1][0], "2");
    assert_eq!(value["breakpoints"][1][1], "3");
    let function: PLFunctionDoc = serde_json::from_value(value.clone()).unwrap();
    assert_eq!(function.to_function().unwrap(), r.upsilon);
}
