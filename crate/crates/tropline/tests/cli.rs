use std::io::Write;
use std::process::{Command, Stdio};

use clap::Parser;
use serde_json::Value;

use tropline::cli::{run, JobConfig};
use tropline_core::rational::{self, Rational};
use tropline_core::universality::{compile, LinearSystemSpec};

fn tropline(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_tropline"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn optimal_six_has_three_parallelograms() {
    let (code, tiling, _) = tropline(&["optimal", "6"], "");
    assert_eq!(code, 0);
    let (code, census, _) = tropline(&["census"], &tiling);
    assert_eq!(code, 0);
    let c = json(&census);
    assert_eq!(c["parallelograms"], 3);
    assert_eq!(c["triangles"], 6);
    assert_eq!(c["hexagons"], 4);
}

#[test]
fn optimal_eight_is_not_realizable() {
    let (_, tiling, _) = tropline(&["optimal", "8"], "");
    let (code, out, _) = tropline(&["realize"], &tiling);
    assert_eq!(code, 2);
    let r = json(&out);
    assert_eq!(r["realizable"], false);
    assert!(r["certificate"]["multipliers"]
        .as_array()
        .is_some_and(|m| !m.is_empty()));
}

#[test]
fn realize_then_reconstruct_recovers_the_arrangement() {
    let (_, tiling, _) = tropline(&["optimal", "7"], "");
    let (code, realized, _) = tropline(&["realize", "--arrangement"], &tiling);
    assert_eq!(code, 0);
    let (code, arr, _) = tropline(&["reconstruct"], &realized);
    assert_eq!(code, 0);
    assert_eq!(json(&arr), json(&realized)["arrangement"]);
    let (_, sub, _) = tropline(&["subdivide"], &arr);
    assert_eq!(json(&sub), json(&tiling));
}

const THREE_LINES: &str = r#"{"lines":[{"center":["-1","-1"]},{"center":["4","0"]},{"center":["1","3"]}]}"#;

#[test]
fn render_of_three_lines_matches_the_complex() {
    let (_, sub, _) = tropline(&["subdivide"], THREE_LINES);
    let s = json(&sub);
    assert_eq!(s["n"], 3);
    let (code, svg, _) = tropline(&["render"], &sub);
    assert_eq!(code, 0);
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    assert!(svg.contains("viewBox=\"-1 -4 5 5\""));
    assert_eq!(svg.matches("<polygon").count(), 6);
    assert_eq!(svg.matches("class=\"face triangle\"").count(), 3);
    assert_eq!(svg.matches("class=\"face parallelogram\"").count(), 3);
    assert_eq!(svg.matches("<line").count(), s["edges"].as_array().unwrap().len());
    assert_eq!(svg.matches("<circle").count(), s["vertices"].as_array().unwrap().len());
    let (_, classified, _) = tropline(&["classify"], &sub);
    let c = json(&classified);
    let interior: Vec<&Value> = s["vertices"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|v| {
            let (x, y) = (v[0].as_i64().unwrap(), v[1].as_i64().unwrap());
            x > 0 && y > 0 && x + y < 3
        })
        .collect();
    assert_eq!(interior, vec![&Value::from(vec![1, 1])]);
    assert_eq!(c["semiuniform"], true);
}

#[test]
fn arrangement_render_dashes_red_lines() {
    let coloured = r#"{"lines":[{"center":["0","0"],"colour":"red"},{"center":["2","1"],"colour":"blue"}]}"#;
    let (code, svg, _) = tropline(&["render"], coloured);
    assert_eq!(code, 0);
    assert_eq!(svg.matches("class=\"ray red\"").count(), 1);
    assert_eq!(svg.matches("class=\"ray blue\"").count(), 1);
    assert!(svg.contains(".red.edge,.red.ray{stroke-dasharray"));
}

#[test]
fn missing_witnesses_exit_with_two() {
    let collinear = r#"{"points":[["0","0"],["1","0"],["2","0"]]}"#;
    let (code, _, err) = tropline(&["ordinary"], collinear);
    assert_eq!(code, 2, "{err}");
    let alternating = r#"{"points":[["0","0"],["1","0"],["2","0"],["3","0"]],"colours":["red","blue","red","blue"]}"#;
    let (code, _, err) = tropline(&["monochromatic"], alternating);
    assert_eq!(code, 2);
    assert!(err.contains("hypothesis violated"));
}

#[test]
fn bad_input_reports_position_and_field() {
    let (code, _, err) = tropline(&["subdivide"], "{\n  \"lines\": [\n    {\"center\": [\"0\"}\n  ]\n}");
    assert_eq!(code, 1);
    assert!(err.contains("line 3"), "{err}");
    let (code, _, err) = tropline(&["subdivide"], r#"{"lines":[{"center":["0","x"]}]}"#);
    assert_eq!(code, 1);
    assert!(err.contains("lines[0].center[1]"), "{err}");
    let (code, _, err) = tropline(&["census"], r#"{"n":2,"faces":[{"cycle":[[0,0],[2,0],[0,2]]}]}"#);
    assert_eq!(code, 1);
    assert!(err.contains("semiuniform"), "{err}");
}

#[test]
fn files_and_svg_flags() {
    let dir = std::env::temp_dir().join(format!("tropline-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (input, output, svg) = (dir.join("in.json"), dir.join("out.json"), dir.join("out.svg"));
    std::fs::write(&input, THREE_LINES).unwrap();
    let p = |x: &std::path::Path| x.to_str().unwrap().to_string();
    let (code, stdout, _) = tropline(
        &[
            "subdivide",
            "--input",
            &p(&input),
            "--output",
            &p(&output),
            "--svg",
            &p(&svg),
        ],
        "",
    );
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    assert_eq!(json(&std::fs::read_to_string(&output).unwrap())["n"], 3);
    assert!(std::fs::read_to_string(&svg).unwrap().contains("<polygon"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn universality_matrices_invert_each_other() {
    let text = r#"{"m":2,"strict":[[1,-1]]}"#;
    let job = JobConfig::parse_from(["tropline", "universality"]);
    let out = json(&run(&job, text).unwrap().output);
    let sys = LinearSystemSpec {
        m: 2,
        equalities: vec![],
        strict: vec![vec![1, -1]],
    };
    let c = compile(&sys).unwrap();
    let v = [rational::int(5), rational::int(2)];
    let d = c.from_v(&v).unwrap().unwrap();
    let edges = out["interior_edges"].as_array().unwrap();
    let matrix = out["from_v"]["matrix"].as_array().unwrap();
    assert_eq!(matrix.len(), edges.len());
    assert_eq!(out["from_v"]["basis"], json(r#"[["1","0"],["0","1"]]"#));
    let to_v = out["to_v"].as_array().unwrap();
    for (k, e) in edges.iter().enumerate() {
        let key = tropline_core::Edge::new(
            tropline_core::LatticePoint::new(e[0][0].as_i64().unwrap(), e[0][1].as_i64().unwrap()),
            tropline_core::LatticePoint::new(e[1][0].as_i64().unwrap(), e[1][1].as_i64().unwrap()),
        );
        let row: Vec<Rational> = matrix[k]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| rational::parse(x.as_str().unwrap()).unwrap())
            .collect();
        let value: Rational = row.iter().zip(&v).map(|(a, b)| a * b).sum();
        assert_eq!(value, d.lengths[&key]);
        for (i, vi) in v.iter().enumerate() {
            if to_v[i][k] == 1 {
                assert_eq!(&d.lengths[&key], vi);
            }
        }
    }
}

#[test]
fn repro_is_deterministic() {
    let job = JobConfig::parse_from(["tropline", "repro", "--seed", "3", "--max-n", "5"]);
    let a = run(&job, "").unwrap();
    let b = run(&job, "").unwrap();
    assert_eq!(a, b);
    assert!(a.output.contains("# optimal tilings"));
    let ordinary: Vec<&str> = a.output.lines().filter(|l| l.starts_with("ordinary ")).collect();
    assert_eq!(ordinary, vec!["ordinary        1000   1000"]);
}
