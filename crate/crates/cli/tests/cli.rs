use std::process::{Command, Output};

use matpow::format::parse_grid;
use matpow::report::{BoundsJson, SearchJson};
use matpow_core::construction::closed_s_squared;

fn matpow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_matpow")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_tmp(name: &str, contents: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("matpow-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn oracle_prints_value_first() {
    let o = matpow(&["oracle", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next(), Some("54"));
}

#[test]
fn oracle_refuses_large_n() {
    let o = matpow(&["oracle", "4"]);
    assert_eq!(o.status.code(), Some(5));
    let err = String::from_utf8(o.stderr).unwrap();
    assert_eq!(err.lines().count(), 1);
    let v: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
    assert_eq!(v["error"]["code"], 5);
    assert_eq!(v["error"]["kind"], "TooLarge");
}

#[test]
fn construct_7_is_the_published_matrix() {
    let o = matpow(&["construct", "7"]);
    let expected = "7\n49 48 45 44 41 40 37\n47 36 35 32 31 28 27\n46 34 25 24 21 20 17\n\
                    43 33 23 16 15 12 11\n42 30 22 14 9 8 5\n39 29 19 13 7 4 3\n38 26 18 10 6 2 1\n";
    assert_eq!(stdout(&o), expected);
}

#[test]
fn construct_primed() {
    let o = matpow(&["construct", "3", "--primed"]);
    assert_eq!(stdout(&o), "3\n9 8 6\n7 4 3\n5 2 1\n");
}

#[test]
fn bounds_4() {
    let o = matpow(&["bounds", "4", "--json"]);
    let b: BoundsJson = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!((b.lower, b.upper_num, b.upper_den, b.known_exact), (5276, 5304, 1, None));
    let text = stdout(&matpow(&["bounds", "4"]));
    assert!(text.contains("lower 5276") && text.contains("upper 5304/1"));
}

#[test]
fn construct_json_round_trips_through_objective() {
    for n in [1, 2, 5, 8] {
        let json = stdout(&matpow(&["construct", &n.to_string(), "--format", "json"]));
        assert_eq!(parse_grid(&json).unwrap(), matpow_core::construction::build(n).unwrap());
        let path = write_tmp(&format!("a{n}.json"), &json);
        let o = matpow(&["objective", path.to_str().unwrap(), "--json"]);
        assert!(o.status.success());
        let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
        assert_eq!(v["objective"].as_i64().unwrap() as i128, closed_s_squared(n).unwrap());
    }
}

#[test]
fn objective_text_report() {
    let path = write_tmp("a2.txt", "2\n4 3\n2 1\n");
    let out = stdout(&matpow(&["objective", path.to_str().unwrap()]));
    assert_eq!(
        out,
        "objective 54\nrows 7 3\ncols 6 4\nmu_implied 0.8\ncond_a true\ncond_b -\ncond_c true\ncond_d true\n"
    );
}

#[test]
fn objective_rejects_duplicates() {
    let path = write_tmp("dup.txt", "2\n1 2\n2 3\n");
    let o = matpow(&["objective", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    let v: serde_json::Value = serde_json::from_str(String::from_utf8(o.stderr).unwrap().trim()).unwrap();
    assert_eq!(v["error"]["kind"], "DuplicateEntry");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(matpow(&["search", "3"]).status.code(), Some(2));
    assert_eq!(matpow(&["nope"]).status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_matpow"))
        .args(["search", "3", "--restarts", "2", "--seed", "1"])
        .env("MATPOW_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn overflow_exit_4() {
    let o = matpow(&["bounds", "1000000"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn table_rows_agree_for_small_n() {
    let out = stdout(&matpow(&["table", "3", "--csv"]));
    let mut lines = out.lines();
    assert_eq!(
        lines.next(),
        Some("n,trivial_lower,lower,construction_value,upper,known_exact")
    );
    for line in lines {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols[2], cols[3]);
        assert_eq!(cols[2], cols[5]);
    }
    let with_search = stdout(&matpow(&["table", "4", "--csv", "--restarts", "3"]));
    assert!(with_search.starts_with("n,trivial_lower,lower,construction_value,search_best,upper"));
    assert!(with_search.lines().nth(4).unwrap().starts_with("4,3944/1,5276,5276,"));
}

#[test]
fn search_output_layout() {
    let out = stdout(&matpow(&["search", "3", "--restarts", "4", "--seed", "9", "--policy", "first"]));
    let lines: Vec<&str> = out.lines().collect();
    for (i, l) in lines[..4].iter().enumerate() {
        let v: serde_json::Value = serde_json::from_str(l).unwrap();
        assert_eq!(v["restart"], i);
    }
    let r: SearchJson = serde_json::from_str(lines[4]).unwrap();
    assert_eq!(r.seed, 9);
    assert_eq!(r.value, 761);
    assert_eq!(parse_grid(&lines[5..].join("\n")).unwrap().n(), 3);
}

#[test]
fn search_max_iter_and_construction_seed() {
    let out = stdout(&matpow(&[
        "search", "4", "--restarts", "2", "--seed", "1", "--construction-seed", "--max-iter", "0",
    ]));
    let r: SearchJson = serde_json::from_str(out.lines().nth(2).unwrap()).unwrap();
    assert_eq!(r.total_iterations, 0);
    assert!(r.value >= 5276);
}

#[test]
fn residual_command() {
    let path = write_tmp("scalar.txt", "1\n2.5\n");
    let out = stdout(&matpow(&["residual", path.to_str().unwrap(), "--lambda", "0", "--mu", "0"]));
    assert_eq!(out.trim().parse::<f64>().unwrap(), 5.0);
    let path = write_tmp("uniform.txt", "3\n2 2 2\n2 2 2\n2 2 2\n");
    // λ = 2·c·n − 2μc with c = 2, n = 3, μ = −1
    let out = stdout(&matpow(&[
        "residual", path.to_str().unwrap(), "--lambda", "16", "--mu", "-1", "--m", "2",
    ]));
    assert!(out.trim().parse::<f64>().unwrap() < 1e-10);
    let o = matpow(&["residual", path.to_str().unwrap(), "--lambda", "0", "--mu", "0", "--m", "1"]);
    assert_eq!(o.status.code(), Some(3));
}
