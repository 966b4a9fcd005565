use std::path::PathBuf;

use mta::cli::{run, EXIT_FALSE, EXIT_INAPPLICABLE, EXIT_TRUE, EXIT_USAGE};
use mta::format::{parse_automaton, serialize_automaton};
use mta::zoo::CATALOG;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn mta(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(std::iter::once("mta").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn accepts() {
    let f = fixture("L_n2n.mta");
    assert_eq!(mta(&["accepts", &f, "--", "aa", "aaaa"]).0, EXIT_TRUE);
    assert_eq!(mta(&["accepts", &f, "--", "aa", "aaa"]).0, EXIT_FALSE);
    assert_eq!(mta(&["accepts", &f, "--", "", ""]).0, EXIT_TRUE);
    let (code, out, _) = mta(&["run", &f, "--", "a", "aa"]);
    assert_eq!(code, EXIT_TRUE);
    assert!(out.contains("accept"), "{out}");
}

#[test]
fn usage_errors() {
    assert_eq!(mta(&["accepts", &fixture("nope.mta"), "--", "a", "a"]).0, EXIT_USAGE);
    assert_eq!(mta(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(mta(&["accepts", &fixture("L_n2n.mta"), "--", "a"]).0, EXIT_USAGE);
    assert_eq!(mta(&["accepts", &fixture("L_n2n.mta"), "--", "b", ""]).0, EXIT_USAGE);
    assert_eq!(mta(&["zoo", "emit", "nope"]).0, EXIT_USAGE);
}

#[test]
fn convolution() {
    let (code, out, _) = mta(&["convolve", "--", "ab", "a"]);
    assert_eq!(code, EXIT_TRUE);
    assert_eq!(out.trim(), "aa b_");
    let (code, out, _) = mta(&["deconvolve", "--tapes", "2", "aa", "b_"]);
    assert_eq!(code, EXIT_TRUE);
    assert!(out.contains("ab") && out.contains('a'), "{out}");
    assert_eq!(mta(&["deconvolve", "--tapes", "2", "_a", "ba"]).0, EXIT_USAGE);
}

#[test]
fn decisions() {
    let lxx = fixture("L_xx.mta");
    let uni = fixture("universe.mta");
    let empty = fixture("empty.mta");
    assert_eq!(mta(&["decide", "empty", &empty]).0, EXIT_TRUE);
    assert_eq!(mta(&["decide", "empty", &lxx]).0, EXIT_FALSE);
    assert_eq!(mta(&["decide", "universal", &uni]).0, EXIT_TRUE);
    assert_eq!(mta(&["decide", "subset", &lxx, &uni]).0, EXIT_TRUE);
    assert_eq!(mta(&["decide", "subset", &uni, &lxx]).0, EXIT_FALSE);
    assert_eq!(mta(&["decide", "finite", &lxx]).0, EXIT_FALSE);
    // one-way asynchronous machines still get emptiness and finiteness
    assert_eq!(mta(&["decide", "empty", &fixture("L_m.mta")]).0, EXIT_FALSE);
    assert_eq!(mta(&["decide", "finite", &fixture("L_n2n.mta")]).0, EXIT_FALSE);
}

#[test]
fn refuses_undecidable() {
    for e in CATALOG.iter().filter(|e| !e.synchronous) {
        let f = fixture(&format!("{}.mta", e.name));
        let (code, _, err) = mta(&["decide", "equiv", &f, &f]);
        assert_eq!(code, EXIT_INAPPLICABLE, "{}", e.name);
        assert!(err.contains("undecidable"), "{err}");
        assert_eq!(mta(&["decide", "universal", &f]).0, EXIT_INAPPLICABLE);
    }
    let rho = fixture("L_rho.mta");
    assert_eq!(mta(&["decide", "empty", &rho]).0, EXIT_INAPPLICABLE);
    assert_eq!(mta(&["synchronize", &rho, "--s", "1"]).0, EXIT_INAPPLICABLE);
    assert_eq!(mta(&["synchronize", &fixture("L_n2n.mta"), "--s", "2"]).0, EXIT_INAPPLICABLE);
}

#[test]
fn synchrony() {
    assert_eq!(mta(&["check-sync", &fixture("L_xx.mta"), "--s", "0"]).0, EXIT_TRUE);
    assert_eq!(mta(&["check-sync", &fixture("L_n2n.mta"), "--s", "3"]).0, EXIT_FALSE);
    assert_eq!(mta(&["check-sync", &fixture("lag2_xx.mta"), "--s", "1"]).0, EXIT_FALSE);
    let (code, out, _) = mta(&["synchronize", &fixture("lag1_xx.mta"), "--s", "1"]);
    assert_eq!(code, EXIT_TRUE);
    assert!(parse_automaton(&out).is_ok());
}

#[test]
fn operations_emit_documents() {
    let lxx = fixture("L_xx.mta");
    let uni = fixture("universe.mta");
    for args in [
        vec!["op", "complement", &lxx],
        vec!["op", "union", &lxx, &uni],
        vec!["op", "concat", &lxx, &lxx],
        vec!["op", "project", &lxx, "--k", "1"],
        vec!["op", "generalize", &uni, "--k", "2"],
        vec!["op", "determinize", &lxx],
    ] {
        let (code, out, err) = mta(&args);
        assert_eq!(code, EXIT_TRUE, "{args:?}: {err}");
        parse_automaton(&out).unwrap();
    }
    assert_eq!(mta(&["op", "union", &lxx]).0, EXIT_USAGE);
}

#[test]
fn intersect_and_pcp() {
    let (code, out, err) = mta(&[
        "intersect-async",
        &fixture("L_m.taped.mta"),
        &fixture("L_xx.taped.mta"),
        "--max-states",
        "200",
    ]);
    assert_eq!(code, EXIT_TRUE, "{err}");
    assert!(err.contains("status: truncated_states"), "{err}");
    parse_automaton(&out).unwrap();
    let (code, out, _) = mta(&["pcp", "a/a"]);
    assert_eq!(code, EXIT_TRUE);
    assert!(out.contains('1'), "{out}");
    assert_eq!(mta(&["pcp", "a/b", "--max-states", "500"]).0, EXIT_FALSE);
}

#[test]
fn fixtures_round_trip() {
    for entry in std::fs::read_dir(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        let m = parse_automaton(&text).unwrap();
        let again = serialize_automaton(&m);
        assert_eq!(parse_automaton(&again).unwrap(), m, "{}", path.display());
        assert_eq!(mta(&["validate", &path.to_string_lossy()]).0, EXIT_TRUE);
    }
}

#[test]
fn zoo_emit_matches_fixtures() {
    for e in CATALOG {
        let (code, out, _) = mta(&["zoo", "emit", e.name]);
        assert_eq!(code, EXIT_TRUE);
        let text = std::fs::read_to_string(fixture(&format!("{}.mta", e.name))).unwrap();
        assert_eq!(parse_automaton(&out).unwrap(), parse_automaton(&text).unwrap(), "{}", e.name);
    }
}
