use std::process::{Command, Output};

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weyl-toric"))
        .args(args)
        .env_remove("WEYL_TORIC_MEMORY_BUDGET")
        .env_remove("WEYL_TORIC_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn betti_json() {
    let v = json(&cli(&["betti", "F4", "--json"]));
    assert_eq!(v["schema"], 1);
    assert_eq!(v["spec"], "F4");
    assert_eq!(v["betti"], serde_json::json!([1, 57, 264]));
    assert_eq!(v["orbits"].as_array().unwrap().len(), 2);
    assert!(v["provenance"]["primes"].as_array().unwrap().len() >= 2);
}

#[test]
fn betti_table() {
    let out = cli(&["betti", "a3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("betti (1, 6, 5)"), "{text}");
}

#[test]
fn verify_succeeds() {
    let v = json(&cli(&["verify", "C3", "--json"]));
    assert_eq!(v["ok"], true);
    assert_eq!(v["expected_source"], "closed form");
    let out = cli(&["verify", "G2"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn invalid_spec_exit_code() {
    for bad in ["X3", "E9", "A0", "B1", "D3", "A9"] {
        let out = cli(&["betti", bad]);
        assert_eq!(out.status.code(), Some(4), "{bad}");
    }
    let out = cli(&["reduce", "B3", "--orbit-rep", "0000"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn budget_exit_code_and_flag_precedence() {
    let out = cli(&["complex", "E6", "--memory-budget", "1000"]);
    // statistics fall back to |W| when facets do not fit
    let v = {
        let out = cli(&["complex", "E6", "--json", "--memory-budget", "1000"]);
        json(&out)
    };
    assert!(out.status.success());
    assert_eq!(v["facets_materialized"], false);
    assert_eq!(v["facets"], 51840);

    let out = cli(&["betti", "E6", "--memory-budget", "1000"]);
    assert_eq!(out.status.code(), Some(3));

    let with_env = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_weyl-toric"))
            .args(args)
            .env("WEYL_TORIC_MEMORY_BUDGET", "1000")
            .output()
            .unwrap()
    };
    assert_eq!(with_env(&["complex", "B3", "--dump"]).status.code(), Some(3));
    assert_eq!(
        with_env(&["complex", "B3", "--dump", "--memory-budget", "100000000"]).status.code(),
        Some(0)
    );
}

#[test]
fn orbits_and_stats() {
    let v = json(&cli(&["orbits", "E7", "--json"]));
    assert_eq!(v["nonzero_rows"], 127);
    let sizes: Vec<u64> = v["orbits"].as_array().unwrap().iter().map(|o| o["size"].as_u64().unwrap()).collect();
    assert_eq!(sizes, vec![1, 63, 63]);

    let v = json(&cli(&["complex", "F4", "--stats", "--json"]));
    assert_eq!(v["vertices"], 240);
    assert_eq!(v["facets"], 1152);
    assert_eq!(v["facets_materialized"], true);
}

#[test]
fn dump_round_trips_header() {
    let out = cli(&["complex", "A2", "--dump"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "weyl-toric complex 1");
    assert_eq!(lines[1], "spec A2");
    assert_eq!(lines[2], "vertices 6");
    assert_eq!(lines[3], "facets 6");
    assert_eq!(lines.iter().filter(|l| l.starts_with("f ")).count(), 6);
}

#[test]
fn reduce_and_oracle() {
    let v = json(&cli(&["reduce", "F4", "--orbit-rep", "0001", "--json"]));
    assert_eq!(v["structure"]["complex_vertices"], 140);
    assert!(v["trace"]["passes"].as_array().unwrap().len() == 4);

    let v = json(&cli(&["oracle", "E8", "--json"]));
    assert_eq!(v["euler_characteristic"], 17_111_296);
    assert_eq!(v["reference"], serde_json::json!([1, 120, 103815, 6925200, 23932800]));
    assert!(v["closed_form"].is_null());
}

#[test]
fn cache_dir_resumes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().to_str().unwrap();
    let first = json(&cli(&["betti", "B3", "--json", "--cache-dir", path]));
    assert_eq!(first["provenance"]["cache_hits"], 0);
    let second = json(&cli(&["betti", "B3", "--json", "--cache-dir", path]));
    assert_eq!(second["betti"], first["betti"]);
    assert_eq!(
        second["provenance"]["cache_hits"].as_u64().unwrap() as usize,
        second["orbits"].as_array().unwrap().len()
    );
    assert!(dir.path().join("B3").is_dir());
}

#[test]
fn sequential_and_random_primes_agree() {
    let a = json(&cli(&["betti", "D4", "--json", "--sequential", "--threads", "1"]));
    let b = json(&cli(&["betti", "D4", "--json", "--random-primes"]));
    assert_eq!(a["betti"], b["betti"]);
    assert_ne!(a["provenance"]["primes"], b["provenance"]["primes"]);
}
