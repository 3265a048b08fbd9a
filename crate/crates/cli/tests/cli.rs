use std::process::{Command, Output};

use serde_json::Value as Json;

fn pcoulomb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pcoulomb")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn exact_csv_has_fixed_header_and_lf_endings() {
    let o = pcoulomb(&["exact", "--n", "1", "--l", "0", "--a", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(!text.contains('\r'));
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,i,l,b,alpha,E,nu,multiplicity,exact,residual,poly"));
    assert_eq!(lines.next(), Some("1,1,0,0,0.5,-0.125,1,1,true,0,1;-0.5"));
    assert_eq!(lines.next(), Some("1,2,0,-3,2,-2,0,1,true,0,1;1"));
    assert_eq!(lines.next(), None);
}

#[test]
fn csv_round_trip_to_printed_precision() {
    let o = pcoulomb(&["rpm", "--a", "1", "--b", "-3", "--nu-max", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    let headers = r.headers().unwrap().clone();
    assert_eq!(headers.iter().collect::<Vec<_>>(), ["nu", "E", "exact", "D_used", "residual", "support", "within_bounds", "converged"]);
    let energies: Vec<f64> = r.records().map(|rec| rec.unwrap()[1].parse().unwrap()).collect();
    assert_eq!(energies[0], -2.0);
    assert!((energies[1] + 0.8399328076933763).abs() < 1e-10);
    let o = pcoulomb(&["rpm", "--a", "1", "--b", "-3", "--nu-max", "1", "--format", "json"]);
    let doc: Json = serde_json::from_slice(&o.stdout).unwrap();
    let from_json: Vec<f64> = doc["rows"].as_array().unwrap().iter().map(|r| r["E"].as_f64().unwrap()).collect();
    assert_eq!(from_json, energies);
}

#[test]
fn output_is_deterministic() {
    let args = ["rpm", "--a", "2", "--b", "-4", "--nu-max", "2", "--format", "json"];
    assert_eq!(pcoulomb(&args).stdout, pcoulomb(&args).stdout);
}

#[test]
fn json_document_shape() {
    let o = pcoulomb(&["exact", "--n", "1", "--a", "2", "--format", "json"]);
    let doc: Json = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["command"], "exact");
    assert_eq!(doc["config"]["a"], "2/1");
    assert_eq!(doc["config"]["precision_bits"], 256);
    let row = &doc["rows"][1];
    assert_eq!(row["b_exact"], "-4/1");
    assert_eq!(row["E_exact"], "-9/2");
    assert_eq!(row["E"], -4.5);
    assert!(doc["warnings"].as_array().unwrap().is_empty());
}

#[test]
fn check_defaults_to_json_and_passes_on_coulomb() {
    let o = pcoulomb(&["check", "--a", "1", "--b", "0", "--nu-max", "1", "--n-max", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: Json = serde_json::from_slice(&o.stdout).unwrap();
    let rows = doc["rows"].as_array().unwrap();
    assert!(rows.iter().all(|r| r["pass"] == true));
    assert!(rows.iter().any(|r| r["check"] == "rpm_vs_closed_form" && r["value"] == 0.0));
    assert!(rows.iter().any(|r| r["check"] == "hellmann_feynman"));
}

#[test]
fn check_exact_ground_state_delta_is_zero() {
    let o = pcoulomb(&["check", "--a", "2", "--b", "-4", "--nu-max", "0", "--n-max", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: Json = serde_json::from_slice(&o.stdout).unwrap();
    let row = doc["rows"].as_array().unwrap().iter().find(|r| r["check"] == "exact_vs_rpm").cloned().unwrap();
    assert_eq!(row["value_exact"], "0/1");
}

#[test]
fn failed_verification_exits_4() {
    // a step this coarse breaks the derivative estimate
    let o = pcoulomb(&["check", "--a", "1", "--b", "-3", "--nu-max", "0", "--db", "3"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn convergence_failure_exits_3() {
    let o = pcoulomb(&["rpm", "--a", "1", "--b", "-3", "--max-D", "3"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("did not stabilise"));
    assert!(stdout(&o).lines().skip(1).all(|l| l.ends_with(",false")));
}

#[test]
fn bad_input_exits_2() {
    for args in [
        &["exact", "--n", "1"][..],
        &["exact", "--n", "1", "--a", "x"],
        &["exact", "--n", "1", "--a", "-1"],
        &["rpm", "--a", "1", "--b", "0", "--format", "svg"],
        &["rpm", "--a", "1", "--b", "0", "--precision-bits", "32"],
        &["rpm", "--a", "1", "--b", "0", "--tol", "0"],
        &["scan", "--a", "1", "--b-lo", "0", "--b-hi", "-1"],
        &["units", "--v1", "0", "--v2", "1", "--r0", "1"],
    ] {
        assert_eq!(pcoulomb(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn errors_in_json_mode_are_json() {
    let o = pcoulomb(&["rpm", "--a", "-1", "--b", "0", "--format", "json"]);
    assert_eq!(o.status.code(), Some(2));
    let doc: Json = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["error"]["code"], 2);
}

#[test]
fn units_report_missing_case_per_row() {
    let o = pcoulomb(&["units", "--v1", "2", "--v2", "0", "--r0", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines[0], "case,a,b,coupling,r0,energy_unit,length_unit,error");
    assert_eq!(lines[1], "I,2,0,,1,1,1,");
    assert_eq!(lines[2], "II,,,0,2,4,0.5,");
    assert!(lines[3].starts_with("III,") && lines[3].contains("V2 = 0"));
}

#[test]
fn scan_writes_curves_points_and_svg() {
    let dir = std::env::temp_dir().join(format!("pcoulomb-scan-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let csv_path = dir.join("scan.csv");
    let args = ["scan", "--a", "1", "--l", "0", "--nu", "0", "--b-lo", "-4", "--b-hi", "0", "--steps", "4", "--n-max", "2"];
    let o = pcoulomb(&[&args[..], &["--output", csv_path.to_str().unwrap()]].concat());
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&csv_path).unwrap();
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines[0], "kind,l,nu,n,i,b,E");
    assert!(lines.contains(&"curve,0,0,,,-3,-2"));
    assert!(lines.contains(&"curve,0,0,,,0,-0.5"));
    assert!(lines.contains(&"point,0,0,1,2,-3,-2"));
    assert_eq!(lines.iter().filter(|l| l.starts_with("curve")).count(), 5);

    let o = pcoulomb(&[&args[..], &["--format", "svg"]].concat());
    assert_eq!(o.status.code(), Some(0));
    let svg = stdout(&o);
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    assert_eq!(svg.matches("<polyline").count(), 1);
    assert!(svg.contains("<circle"));
    std::fs::remove_dir_all(&dir).unwrap();
}
