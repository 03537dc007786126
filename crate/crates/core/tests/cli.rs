//! The `korbit` binary: exit codes, JSON records, and DOT output read back
//! through an independent DOT parser.

use std::collections::BTreeSet;
use std::process::{Command, Output};

use korbit::cli::{poset_from_json, OrbitRecord};
use korbit::kgb_clans::EdgeStyle;
use petgraph::dot::dot_parser::{DotAttrList, DotNodeWeight, ParseFromDot};
use petgraph::graph::DiGraph;
use petgraph::visit::EdgeRef;
use serde_json::Value;

fn korbit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_korbit")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

#[test]
fn orbit_records_round_trip_through_json() {
    let o = korbit(&["orbits", "spr:2", "--parabolic", "2", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let records: Vec<OrbitRecord> = stdout(&o)
        .lines()
        .map(|l| OrbitRecord::from_json(&serde_json::from_str::<Value>(l).unwrap()).unwrap())
        .collect();
    assert_eq!(records.len(), 4);
    assert_eq!(records.iter().map(|r| r.members.len()).sum::<usize>(), 11);
    for r in &records {
        let text = r.to_json().to_string();
        assert_eq!(OrbitRecord::from_json(&serde_json::from_str(&text).unwrap()).as_ref(), Some(r));
        assert_eq!(r.predicted_fiber, r.geometric_fiber);
    }
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["orbits"][..],
        &["orbits", "xyz:2"],
        &["orbits", "spr:2", "--parabolic", "5"],
        &["poset", "spr:2", "--order", "sideways"],
        &["orbits", "spr:2", "--trials", "0"],
        &["frobnicate"],
    ] {
        assert_eq!(korbit(args).status.code(), Some(2), "{args:?}");
    }
}

fn unquote(s: &str) -> &str {
    s.trim_matches('"')
}

#[test]
fn dot_output_parses_back_to_the_json_poset() {
    for (pair, par) in [("spr:2", "B"), ("spr:2", "1"), ("sppq:1,1", "B"), ("cgl:3", "1")] {
        let json = korbit(&["poset", pair, "--parabolic", par, "--json"]);
        let poset = poset_from_json(&serde_json::from_str(&stdout(&json)).unwrap()).unwrap();
        let dot_out = korbit(&["poset", pair, "--parabolic", par, "--dot"]);
        assert_eq!(dot_out.status.code(), Some(0));
        let text = stdout(&dot_out);
        let g: DiGraph<DotNodeWeight, DotAttrList> = ParseFromDot::try_from(text.as_str()).expect("valid DOT");

        let label = |n: petgraph::graph::NodeIndex| -> String {
            let attrs = &g[n].attr.elems;
            unquote(attrs.iter().find(|(k, _)| *k == "label").expect("node label").1).to_string()
        };
        let nodes: BTreeSet<String> = g.node_indices().map(label).collect();
        let want_nodes: BTreeSet<String> =
            (0..poset.len()).map(|i| format!("{}:{}", poset.ids[i], poset.dims[i])).collect();
        assert_eq!(nodes, want_nodes, "{pair} {par}");

        let edges: BTreeSet<(String, String, Option<usize>, String)> = g
            .edge_references()
            .map(|e| {
                let attr = |k: &str| e.weight().elems.iter().find(|(key, _)| *key == k).map(|(_, v)| unquote(v).to_string());
                (label(e.source()), label(e.target()), attr("label").map(|l| l.parse().unwrap()), attr("style").unwrap())
            })
            .collect();
        let want_edges: BTreeSet<(String, String, Option<usize>, String)> = poset
            .edges
            .iter()
            .map(|e| {
                let style = match e.style {
                    EdgeStyle::Solid => "solid",
                    EdgeStyle::Dashed => "dashed",
                };
                (
                    format!("{}:{}", poset.ids[e.from], poset.dims[e.from]),
                    format!("{}:{}", poset.ids[e.to], poset.dims[e.to]),
                    e.label,
                    style.to_string(),
                )
            })
            .collect();
        assert_eq!(edges, want_edges, "{pair} {par}");
    }
}

#[test]
fn verify_paper_passes_every_check() {
    let o = korbit(&["verify-paper", "--json"]);
    let lines: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let failed: Vec<&Value> = lines.iter().filter(|v| v["passed"] != Value::Bool(true)).collect();
    assert!(failed.is_empty(), "{failed:?}");
    assert!(lines.len() >= 20);
    assert_eq!(o.status.code(), Some(0));
}
