use std::process::{Command, Output};

fn clpart(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clpart"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn passing_suite_exits_zero() {
    let o = clpart(&["verify", "eq1", "--n-max", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("[PASS] eq1 q=2 n_max=2"));
}

#[test]
fn injected_fault_exits_one_and_names_the_check() {
    let o = clpart(&["verify", "eq1", "--n-max", "2", "--inject-fault"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("[FAIL] eq1 q=2 n_max=2"), "{out}");
    assert!(out.contains("at u^2"), "{out}");
}

#[test]
fn budget_refusal_exits_three() {
    let o = clpart(&["verify", "lemmas", "--budget", "100"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("[REFUSED]"));
    let o = clpart(&["oracle", "count-pairs", "--n", "3", "--p", "3", "--budget", "1000"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(clpart(&["verify", "eq1", "--q", "x/y"]).status.code(), Some(2));
    assert_eq!(clpart(&["verify", "eq1", "--q", "1/2"]).status.code(), Some(2));
    assert_eq!(clpart(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(
        clpart(&["oracle", "count-pairs", "--n", "2", "--p", "4"]).status.code(),
        Some(2)
    );
    assert_eq!(
        clpart(&["sample", "--u", "3/2", "--trials", "10"]).status.code(),
        Some(2)
    );
}

#[test]
fn json_reports_are_deterministic_and_follow_the_schema() {
    let args = ["verify", "all", "--json", "--trials", "20000", "--seed", "7"];
    let a = clpart(&args);
    let b = clpart(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let seq = clpart(&[&args[..], &["--sequential"]].concat());
    assert_eq!(a.stdout, seq.stdout);

    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let reports = v.as_array().unwrap();
    assert!(!reports.is_empty());
    let names: Vec<&str> = reports.iter().map(|r| r["check_name"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    let anchors = [
        "eq1",
        "eq2",
        "lemma2",
        "lemma3",
        "thm1-rows",
        "cor1-part1",
        "cor1-part2",
        "counter-nilpotent",
        "irreducible-product",
        "wellknown-identity",
    ];
    for r in reports {
        let obj = r.as_object().unwrap();
        assert!(anchors.contains(&obj["anchor"].as_str().unwrap()));
        assert!(["exact", "statistical"].contains(&obj["kind"].as_str().unwrap()));
        assert_eq!(obj["status"], "pass");
        assert!(!obj.contains_key("detail"));
        assert!(obj["parameters"].as_object().unwrap().values().all(|v| v.is_string()));
    }
    for a in anchors {
        assert!(reports.iter().any(|r| r["anchor"] == a), "no report for {a}");
    }
}

#[test]
fn json_failure_detail_uses_exact_strings() {
    let o = clpart(&["verify", "eq1", "--n-max", "2", "--inject-fault", "--json", "--q", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let failed = v.as_array().unwrap().iter().find(|r| r["status"] == "fail").unwrap();
    assert_eq!(failed["detail"]["location"], "u^2");
    assert_eq!(failed["detail"]["values"]["oracle"], "20/3");
    assert_eq!(failed["detail"]["values"]["middle"], "16/3");
}

#[test]
fn series_and_oracle_subcommands() {
    let o = clpart(&["series", "eq1-rhs", "--q", "2", "--order", "2"]);
    assert_eq!(stdout(&o).trim(), "1 + (3)u + (20/3)u^2 + O(u^3)");
    let o = clpart(&["series", "eq2-middle", "--q", "3", "--order", "2", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v, serde_json::json!(["1", "1/2", "11/16"]));

    let o = clpart(&["oracle", "count-pairs", "--n", "2", "--p", "2", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["count"], "40");
    assert_eq!(v["per_gl"], "20/3");
    let o = clpart(&["oracle", "by-type", "--n", "2", "--p", "2"]);
    assert_eq!(stdout(&o), "(1,1) 1\n(2) 3\n");
    let o = clpart(&["oracle", "count-nilpotent-pairs", "--n", "2", "--p", "3"]);
    assert!(stdout(&o).starts_with("33 "));
}

#[test]
fn sample_is_reproducible() {
    let args = [
        "sample", "--q", "2", "--u", "1/2", "--seed", "3", "--trials", "5000", "--json",
    ];
    let a = clpart(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, clpart(&args).stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["trials"], 5000);
}
