use std::io::Write;
use std::process::{Command, Output, Stdio};

fn kshape(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_kshape"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn lines(o: &Output) -> Vec<serde_json::Value> {
    stdout(o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn pistols_k3() {
    let o = kshape(&["pistols", "--k", "3"], "");
    assert!(o.status.success());
    let recs = lines(&o);
    assert_eq!(recs.len(), 3);
    let values: Vec<_> = recs.iter().map(|r| r["values"].clone()).collect();
    assert_eq!(
        values,
        vec![
            serde_json::json!([2, 2, 4, 4]),
            serde_json::json!([2, 4, 4, 4]),
            serde_json::json!([4, 2, 4, 4]),
        ]
    );
    assert!(recs.iter().all(|r| r["k"] == 3 && r["height"] == 2));
}

#[test]
fn pistol_stats() {
    let o = kshape(&["pistols", "--k", "5", "--stats"], "");
    let recs = lines(&o);
    assert_eq!(recs.len(), 155);
    for r in &recs {
        let s = &r["stats"];
        assert_eq!(
            s["fix"],
            s["fl"].as_u64().unwrap() + s["fnl"].as_u64().unwrap()
        );
    }
}

#[test]
fn gandhi_text() {
    let o = kshape(&["poly", "--family", "gandhi", "--k", "2"], "");
    assert!(o.status.success());
    assert_eq!(stdout(&o), "2*x^3 + x^2\n");
    let o = kshape(
        &[
            "poly", "--family", "gandhi", "--k", "2", "--source", "pistols",
        ],
        "",
    );
    assert_eq!(stdout(&o), "2*x^3 + x^2\n");
}

#[test]
fn poly_sources_agree() {
    let run = |source: &str| {
        stdout(&kshape(
            &[
                "poly",
                "--family",
                "dumont-foata",
                "--k",
                "4",
                "--source",
                source,
            ],
            "",
        ))
    };
    let rec = run("recursion");
    assert!(!rec.is_empty());
    assert_eq!(rec, run("pistols"));
    assert_eq!(rec, run("shapes"));
    let o = kshape(&["poly", "--family", "genocchi", "--k", "6"], "");
    assert_eq!(stdout(&o), "2073\n");
}

#[test]
fn poly_json() {
    let o = kshape(
        &["poly", "--family", "gamma", "--k", "2", "--format", "json"],
        "",
    );
    let recs = lines(&o);
    assert_eq!(recs[0]["text"], "z*xb + x*yb + y*zb");
    assert_eq!(recs[0]["poly"]["monomials"].as_array().unwrap().len(), 3);
}

#[test]
fn shapes_round_trip_through_map() {
    let shapes = kshape(&["shapes", "--k", "4"], "");
    assert_eq!(lines(&shapes).len(), 17);
    let back = kshape(&["map", "--dir", "phi", "--k", "4"], &stdout(&shapes));
    assert!(back.status.success());
    let again = kshape(&["map", "--dir", "varphi", "--k", "4"], &stdout(&back));
    let parts: Vec<_> = lines(&again).iter().map(|r| r["parts"].clone()).collect();
    let want: Vec<_> = lines(&shapes).iter().map(|r| r["parts"].clone()).collect();
    assert_eq!(parts, want);
    for r in lines(&again) {
        assert_eq!(r["fix_vector"], r["fr_vector"]);
    }
}

#[test]
fn worked_example_map() {
    let input = r#"{"height":5,"values":[2,8,4,10,10,6,8,10,10,10]}"#;
    let o = kshape(&["map", "--dir", "varphi", "--k", "6"], input);
    let r = &lines(&o)[0];
    assert_eq!(
        r["parts"],
        serde_json::json!([12, 9, 7, 6, 5, 3, 3, 2, 1, 1, 1, 1])
    );
    assert_eq!(r["z"], serde_json::json!([3, 2, 1, 3, 2, 0, 0, 1]));
    assert_eq!(r["fr_vector"], serde_json::json!([0, 0, 1, 0]));
}

#[test]
fn bad_lines_are_reported_and_skipped() {
    let input = "{\"height\":2,\"values\":[2,4,4,4]}\nnot json\n{\"height\":2,\"values\":[4,4,4,4]}\n{\"height\":1,\"values\":[2,2]}\n{\"height\":2,\"values\":[4,2,4,4]}\n";
    let o = kshape(&["map", "--dir", "varphi", "--k", "3"], input);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(lines(&o).len(), 2);
    let err: Vec<serde_json::Value> = String::from_utf8(o.stderr)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let at: Vec<_> = err.iter().map(|e| e["line"].as_u64().unwrap()).collect();
    assert_eq!(at, vec![2, 3, 4]);
}

#[test]
fn stats_on_shapes() {
    let o = kshape(
        &["stats", "--kind", "shape", "--k", "3"],
        "{\"parts\":[2,1]}\n",
    );
    let r = &lines(&o)[0];
    assert_eq!(r["stats"]["z"], serde_json::json!([1, 1]));
    assert_eq!(r["sites"]["ful"], 1);
}

#[test]
fn render_pistol_and_shape() {
    let o = kshape(
        &["render", "--kind", "pistol"],
        "{\"height\":2,\"values\":[2,4,4,4]}\n",
    );
    assert_eq!(stdout(&o), "(2,4,4,4)\n      [ ][*]\n[*][*][*][ ]\n\n");
    let o = kshape(&["render", "--kind", "shape"], "{\"parts\":[2,1]}\n");
    assert_eq!(stdout(&o), "(2,1)\n[1]\n[3][1]\n\n");
}

#[test]
fn verify_k4_passes() {
    let o = kshape(&["verify", "--k", "4", "--suite", "all"], "");
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).lines().all(|l| !l.starts_with("FAIL")));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(
        kshape(&["pistols", "--k", "3", "--nope"], "").status.code(),
        Some(2)
    );
    assert_eq!(kshape(&["pistols"], "").status.code(), Some(2));
    assert_eq!(kshape(&["pistols", "--k", "1"], "").status.code(), Some(2));
    assert_eq!(
        kshape(
            &["poly", "--family", "gamma", "--k", "2", "--source", "shapes"],
            ""
        )
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        kshape(&["poly", "--family", "gandhi", "--k", "0"], "")
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn seed_is_ignored_and_output_is_deterministic() {
    let a = kshape(&["--seed", "1", "shapes", "--k", "5", "--stats"], "");
    let b = kshape(&["shapes", "--k", "5", "--stats", "--seed", "99"], "");
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}
