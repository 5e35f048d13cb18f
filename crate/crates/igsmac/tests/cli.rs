use std::process::{Command, Output};

fn igsmac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_igsmac")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scenario_path(name: &str) -> String {
    format!("{}/../../scenarios/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn tmp(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("igsmac-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn canonical_swapped_order_reports_published_gains() {
    let o = igsmac(&["canonical", "--scenario", &scenario_path("preset1.json"), "--order", "swapped"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let a: Vec<f64> = serde_json::from_value(v["gains"].clone()).unwrap();
    assert!((a[0] - 0.788).abs() < 0.02 && (a[1] - 0.592).abs() < 0.02, "{a:?}");
    assert!(v["qr_residual"].as_f64().unwrap() < 1e-12);
}

#[test]
fn scenario_files_match_presets() {
    for id in 1..=3 {
        let file = igsmac(&["canonical", "--scenario", &scenario_path(&format!("preset{id}.json"))]);
        let preset = igsmac(&["canonical", "--preset", &id.to_string()]);
        assert_eq!(stdout(&file), stdout(&preset));
    }
}

#[test]
fn malformed_json_is_an_input_error_with_position() {
    let path = tmp("bad.json");
    std::fs::write(&path, "{\n  \"pu_power\": 1,\n  oops\n}").unwrap();
    let o = igsmac(&["canonical", "--scenario", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains(":3:"));
}

#[test]
fn fewer_antennas_than_users_is_rejected() {
    let text = r#"{"pu_direct":[1,0],"pu_power":10,"su_cross":[[0.1,0],[0.2,0]],
        "su_direct":[[[1,0],[0,1]]],"pu_to_bs":[[0,0]],"su_budgets":[1,1],
        "pu_noise_var":1,"bs_noise_var":1,"pu_rate_fraction":0.5}"#;
    let path = tmp("narrow.json");
    std::fs::write(&path, text).unwrap();
    let o = igsmac(&["canonical", "--scenario", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unreachable_target_exits_with_infeasible() {
    let text = std::fs::read_to_string(scenario_path("preset1.json"))
        .unwrap()
        .replace("\"pu_rate_fraction\": 0.8", "\"pu_rate_target\": 9.0");
    let path = tmp("too_high.json");
    std::fs::write(&path, text).unwrap();
    assert_eq!(igsmac(&["boundary", "--scenario", path.to_str().unwrap()]).status.code(), Some(3));
    let o = igsmac(&["single-user", "--p", "10", "--a-s", "1", "--p-s", "1", "--target", "4"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn single_user_report_contains_xi() {
    let o = igsmac(&["single-user", "--p", "100", "--a-s", "1", "--p-s", "100", "--p-i", "5", "--c-i", "0.5", "--target", "3.31"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["xi"].as_f64().unwrap() - 2.16).abs() < 0.01);
}

#[test]
fn silent_primary_link_leaves_constraint_inactive() {
    let o = igsmac(&["single-user", "--p", "100", "--a-s", "0", "--p-s", "5", "--target", "3"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["pu_constraint_inactive"], true);
    assert_eq!(v["p_star"].as_f64().unwrap(), 5.0);
}

#[test]
fn sweep_c_peak_sits_at_c_r() {
    let args = ["single-user", "--p", "100", "--a-s", "1.5", "--p-s", "1e9", "--p-i", "5", "--c-i", "0.5", "--target", "3.31"];
    let v: serde_json::Value = serde_json::from_str(&stdout(&igsmac(&args))).unwrap();
    let c_r = v["c_r"].as_f64().unwrap();
    let mut swept = args.to_vec();
    swept.extend(["--sweep-c", "201"]);
    let text = stdout(&igsmac(&swept));
    let rows: Vec<(f64, f64)> = text
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with('c'))
        .map(|l| {
            let f: Vec<f64> = l.split(',').map(|x| x.parse().unwrap()).collect();
            (f[0], f[2])
        })
        .collect();
    let peak = rows.iter().max_by(|a, b| a.1.total_cmp(&b.1)).unwrap();
    assert_eq!(peak.1, 1.0);
    assert!((peak.0 - c_r).abs() <= 1.0 / 200.0 + 1e-12, "peak {} c_R {c_r}", peak.0);
}

#[test]
fn sweep_of_two_gives_the_extreme_points() {
    let text = stdout(&igsmac(&["boundary", "--preset", "1", "--sweep", "2"]));
    let body: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(body.len(), 3);
    assert!(body[0].starts_with("alpha_1,alpha_2,r,R_1,R_2,c"));
    assert!(body[1].starts_with("0,1,") && body[2].starts_with("1,0,"));
}

#[test]
fn output_is_self_describing() {
    let text = stdout(&igsmac(&["boundary", "--preset", "2", "--alpha", "0.3,0.7", "--mode", "pgs"]));
    assert!(text.contains("# units:"));
    assert!(text.contains("# flags: boundary --preset 2 --alpha 0.3,0.7 --mode pgs"));
    let row = text.lines().last().unwrap();
    assert!(row.ends_with(",false"), "{row}");
}

#[test]
fn boundary_json_and_svg() {
    let o = igsmac(&["boundary", "--preset", "1", "--alpha", "0.5,0.5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["igs_required"], true);
    let svg = stdout(&igsmac(&["boundary", "--preset", "3", "--sweep", "9", "--hull", "--format", "svg"]));
    assert!(svg.starts_with("<svg") && svg.matches("<polyline").count() == 6);
}

#[test]
fn boundary_point_agrees_with_verify() {
    let o = igsmac(&["boundary", "--preset", "1", "--alpha", "0.5,0.5"]);
    let row = stdout(&o).lines().last().unwrap().to_string();
    let r: f64 = row.split(',').nth(2).unwrap().parse().unwrap();
    let v = igsmac(&["verify", "--preset", "1", "--alpha", "0.5,0.5", "--grid", "61"]);
    assert_eq!(v.status.code(), Some(0));
    let line = stdout(&v).lines().last().unwrap().to_string();
    let f: Vec<&str> = line.split(',').collect();
    assert_eq!(f[1].parse::<f64>().unwrap(), r);
    let rel: f64 = f[4].parse().unwrap();
    assert!((0.0..=0.02).contains(&rel), "{line}");
}

#[test]
fn verify_random_single_user_batch() {
    let o = igsmac(&["verify", "--random", "5", "--users", "1", "--cases", "10", "--grid", "201"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn verify_refuses_four_users() {
    let o = igsmac(&["verify", "--random", "5", "--users", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("refused"));
}

#[test]
fn experiment_writes_csv_and_manifest() {
    let out = tmp("fig7.csv");
    let o = igsmac(&["experiment", "fig7", "--trials", "1", "--seed", "3", "--budgets", "1,100", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(&out).unwrap();
    assert_eq!(csv.lines().filter(|l| !l.starts_with('#')).count(), 3);
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(format!("{}.manifest.json", out.display())).unwrap()).unwrap();
    assert_eq!(manifest["seed"], 3);
    assert!(manifest["git_describe"].is_string());
    let again = igsmac(&["experiment", "fig7", "--trials", "1", "--seed", "3", "--budgets", "1,100"]);
    assert_eq!(stdout(&again).lines().last(), csv.lines().last());
}

#[test]
fn fig8_gap_columns() {
    let o = igsmac(&["experiment", "fig8", "--trials", "5", "--users", "1..3"]);
    let text = stdout(&o);
    assert!(text.contains("gap_per_user_mean"));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 4);
}

#[test]
fn bad_flags_exit_with_input_error() {
    assert_eq!(igsmac(&["boundary", "--preset", "9"]).status.code(), Some(2));
    assert_eq!(igsmac(&["experiment", "fig7", "--trials", "0"]).status.code(), Some(2));
    assert_eq!(igsmac(&["nonsense"]).status.code(), Some(2));
    assert_eq!(igsmac(&["--help"]).status.code(), Some(0));
}
