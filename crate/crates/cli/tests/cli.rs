use std::path::Path;
use std::process::{Command, Output};

use multidir_core::constructions::kicked_ising_gate;
use multidir_core::io;

fn multidir(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_multidir"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn construct(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name);
    let p = path.to_str().unwrap().to_string();
    let mut all = vec!["construct"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["-o", &p]);
    let o = multidir(&all);
    assert!(
        o.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    p
}

#[test]
fn identity_square_passes() {
    let dir = tempfile::tempdir().unwrap();
    let f = construct(
        dir.path(),
        "id.json",
        &["--type", "identity", "--geometry", "square", "--n", "2"],
    );
    let o = multidir(&["verify", &f, "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["pass"], true);
    for b in report["bipartitions"].as_array().unwrap() {
        assert!((b["entropy"].as_f64().unwrap() - 4f64.ln()).abs() < 1e-12);
    }
}

#[test]
fn product_state_fails_with_three_quarters() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("p.json");
    std::fs::write(
        &f,
        r#"{"K":4,"N":2,"geometry":"square","amplitudes":[{"config":[1,1,1,1],"re":1.0,"im":0.0}]}"#,
    )
    .unwrap();
    let o = multidir(&["verify", f.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for b in report["bipartitions"].as_array().unwrap() {
        assert!((b["deviation"].as_f64().unwrap() - 0.75).abs() < 1e-12);
        assert_eq!(b["maximal"], false);
    }
}

#[test]
fn hexagon_graph_state_is_ame() {
    let dir = tempfile::tempdir().unwrap();
    let f = construct(
        dir.path(),
        "h.json",
        &[
            "--type",
            "graph",
            "--geometry",
            "hexagon",
            "--n",
            "2",
            "--params",
            "0,1,1",
        ],
    );
    let o = multidir(&["verify", &f, "--ame"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("absolutely max. entangled  yes"));
}

#[test]
fn kicked_ising_operator_file() {
    let o = multidir(&["construct", "--type", "kicked-ising"]);
    assert!(o.status.success());
    let (g, op) = io::operator_from_json(&stdout(&o)).unwrap();
    assert_eq!(g.unwrap().name(), "square");
    assert_eq!(op.matrix(), kicked_ising_gate().matrix());
}

#[test]
fn octahedron_graph_state_is_maximal() {
    let dir = tempfile::tempdir().unwrap();
    let f = construct(
        dir.path(),
        "o.json",
        &[
            "--type",
            "graph",
            "--geometry",
            "octahedron",
            "--n",
            "3",
            "--params",
            "1,0",
        ],
    );
    assert_eq!(multidir(&["verify", &f]).status.code(), Some(0));
}

#[test]
fn cube_identity_has_sixteen_terms() {
    let o = multidir(&[
        "construct",
        "--type",
        "identity",
        "--geometry",
        "cube",
        "--n",
        "2",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let amps = v["amplitudes"].as_array().unwrap();
    assert_eq!(amps.len(), 16);
    assert!(amps
        .iter()
        .all(|a| (a["re"].as_f64().unwrap() - 0.25).abs() < 1e-15));
}

#[test]
fn classify_square_four() {
    let o = multidir(&["classify", "--geometry", "square", "--n", "4"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 10);
    assert!(text.lines().next().unwrap().contains("Identity"));
    let total: usize = text
        .lines()
        .map(|l| {
            let count = l.rsplit('(').next().unwrap();
            count
                .split_whitespace()
                .next()
                .unwrap()
                .parse::<usize>()
                .unwrap()
        })
        .sum();
    assert_eq!(total, 198);
}

#[test]
fn hexagonal_map_lines() {
    let o = multidir(&[
        "classify",
        "--geometry",
        "octahedron",
        "--n",
        "3",
        "--map-hexagonal",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 6);
    assert!(text.starts_with("1:1  Identity -> Identity"));
    let wrong = multidir(&[
        "classify",
        "--geometry",
        "square",
        "--n",
        "3",
        "--map-hexagonal",
    ]);
    assert_eq!(wrong.status.code(), Some(2));
}

#[test]
fn expand_hexagon_state() {
    let o = multidir(&[
        "expand",
        "--geometry",
        "hexagon",
        "--n",
        "3",
        "[111 222],[121 323],[212 333]",
    ]);
    assert!(o.status.success());
    let (g, st) = io::state_from_json(&stdout(&o)).unwrap();
    assert_eq!(g.name(), "hexagon");
    assert_eq!(st.support(1e-12).len(), 27);
    let bad = multidir(&["expand", "--geometry", "square", "--n", "2", "[1112]"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn every_construction_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let mut cases: Vec<Vec<String>> = Vec::new();
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    for g in ["square", "hexagon", "polygon:8", "cube", "octahedron"] {
        for n in ["2", "3"] {
            cases.push(s(&["--type", "identity", "--geometry", g, "--n", n]));
        }
    }
    for n in ["2", "3", "4", "5"] {
        cases.push(s(&["--type", "hadamard-square", "--n", n]));
        cases.push(s(&["--type", "identity", "--geometry", "square", "--n", n]));
    }
    cases.push(s(&["--type", "hadamard-cube", "--n", "2"]));
    cases.push(s(&["--type", "hadamard-cube", "--n", "3"]));
    cases.push(s(&["--type", "kicked-ising"]));
    cases.push(s(&["--type", "cartan", "--params", "0.3,-1.2"]));
    cases.push(s(&[
        "--type",
        "diagonal",
        "--geometry",
        "square",
        "--n",
        "3",
        "--params",
        "0,1,2,3,4,5,6,7,8",
    ]));
    cases.push(s(&[
        "--type",
        "diagonal",
        "--geometry",
        "hexagon",
        "--n",
        "2",
        "--params",
        "0.5,0.1,0.1,0.2,0.1,0.2,0.2,-3",
    ]));
    for (g, p) in [
        ("square", "1,0"),
        ("hexagon", "1,1,0"),
        ("octahedron", "1,0"),
        ("cube", "1,0,0"),
    ] {
        cases.push(s(&[
            "--type",
            "graph",
            "--geometry",
            g,
            "--n",
            "3",
            "--params",
            p,
        ]));
    }
    cases.push(s(&[
        "--type",
        "graph",
        "--geometry",
        "square",
        "--n",
        "5",
        "--params",
        "1,2",
    ]));
    for (i, args) in cases.iter().enumerate() {
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let f = construct(dir.path(), &format!("c{i}.json"), &refs);
        let o = multidir(&["verify", &f]);
        let text = stdout(&o);
        assert!(
            text.contains("multi-directional unitary  yes"),
            "{args:?}\n{text}"
        );
        if args.contains(&"kicked-ising".to_string()) || args.contains(&"hadamard-cube".to_string())
        {
            assert_eq!(o.status.code(), Some(0), "{args:?}\n{text}");
        }
    }
}

#[test]
fn output_is_byte_stable() {
    let args = ["construct", "--type", "hadamard-square", "--n", "3"];
    assert_eq!(multidir(&args).stdout, multidir(&args).stdout);
    let a = multidir(&[
        "enumerate",
        "--geometry",
        "hexagon",
        "--n",
        "3",
        "--jobs",
        "1",
    ]);
    let b = multidir(&[
        "enumerate",
        "--geometry",
        "hexagon",
        "--n",
        "3",
        "--jobs",
        "3",
    ]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 54);
}

#[test]
fn usage_and_format_errors_exit_two() {
    assert_eq!(
        multidir(&["verify", "/nonexistent.json"]).status.code(),
        Some(2)
    );
    assert_eq!(
        multidir(&["classify", "--geometry", "pentagon", "--n", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        multidir(&["enumerate", "--geometry", "cube", "--n", "9"])
            .status
            .code(),
        Some(2)
    );
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.json");
    std::fs::write(&f, "{\"K\": 4}").unwrap();
    assert_eq!(
        multidir(&["verify", f.to_str().unwrap()]).status.code(),
        Some(2)
    );
    let id = construct(
        dir.path(),
        "id.json",
        &["--type", "identity", "--geometry", "square", "--n", "2"],
    );
    assert_eq!(
        multidir(&["verify", &id, "--geometry", "cube"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn full_enumeration_writes_states() {
    let o = multidir(&["enumerate", "--geometry", "square", "--n", "3", "--full"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let states = v.as_array().unwrap();
    assert_eq!(states.len(), 10);
    for s in states {
        let (_, st) = io::state_from_json(&s.to_string()).unwrap();
        assert!((st.norm() - 1.0).abs() < 1e-12);
    }
}
