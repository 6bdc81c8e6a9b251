use hfrac::cli::{run_captured, EXIT_BUDGET, EXIT_OK, EXIT_USAGE, EXIT_VERIFY};

fn run(args: &[&str]) -> hfrac::cli::Outcome {
    run_captured(std::iter::once("hfrac").chain(args.iter().copied()))
}

#[test]
fn documented_examples() {
    let o = run(&["alpha", "--graph", "cycle:5"]);
    assert_eq!((o.code, o.stdout.as_str()), (EXIT_OK, "2\n"));
    assert_eq!(run(&["theta-lp", "--p", "2", "--n", "10"]).stdout, "15\n");
    assert_eq!(run(&["fracchrom", "--graph", "cycle:7"]).stdout, "7/2\n");
    assert_eq!(run(&["hfrac", "--graph", "cycle:5", "--p", "2", "--dmax", "2"]).stdout, "[2, 5/2]\n");
    assert_eq!(run(&["minrank", "--graph", "cycle:5", "--p", "3"]).stdout, "3\n");
    assert_eq!(run(&["cover", "--graph", "strong(cycle:5,cycle:5)"]).stdout, "8\n");
    assert_eq!(run(&["hfrac", "--graph", "empty:4"]).stdout, "4\n");
    assert!(run(&["theta-circulant", "--n", "5"]).stdout.starts_with("2.236067977499"));
    let k6 = run(&["theta-circulant", "--n", "6", "--connection", "1,2,3,4,5"]).stdout;
    let value: f64 = k6.split_whitespace().next().unwrap().parse().unwrap();
    assert!((value - 1.0).abs() < 1e-9);
}

#[test]
fn cover_with_a_target() {
    let o = run(&["cover", "--graph", "cycle:5", "--k", "2"]);
    assert_eq!(o.stdout, "3\n");
    assert!(o.stderr.contains("no partition into 2 cliques"));
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(run(&["alpha"]).code, EXIT_USAGE);
    assert_eq!(run(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(run(&["alpha", "--graph", "cycle:2"]).code, EXIT_USAGE);
    assert_eq!(run(&["alpha", "--graph", "nonsense"]).code, EXIT_USAGE);
    assert_eq!(run(&["minrank", "--graph", "cycle:5", "--p", "4"]).code, EXIT_USAGE);
    assert_eq!(run(&["theta-lp", "--p", "2", "--n", "5"]).code, EXIT_USAGE);
    assert_eq!(run(&["--max-vertices", "10", "alpha", "--graph", "cycle:11"]).code, EXIT_USAGE);
    assert_eq!(run(&["--help"]).code, EXIT_OK);
}

#[test]
fn json_output_is_deterministic() {
    let args = ["--json", "--seed", "7", "hfrac", "--graph", "cycle:7", "--p", "3"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.code, EXIT_OK);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_str(&a.stdout).unwrap();
    assert_eq!(v["lower"], "3/1");
    assert_eq!(v["upper"], "7/2");
    assert_eq!(v["witness_refs"][0], "#/witnesses/0");
    assert_eq!(v["witnesses"][0]["kind"], "drep");

    let g1 = run(&["--seed", "3", "generate", "--random", "12"]);
    let g2 = run(&["--seed", "3", "generate", "--random", "12"]);
    let g3 = run(&["--seed", "4", "generate", "--random", "12"]);
    assert_eq!(g1.stdout, g2.stdout);
    assert_ne!(g1.stdout, g3.stdout);
}

#[test]
fn budget_exhaustion_reports_an_interval() {
    let o = run(&["--budget-ms", "0", "alpha", "--graph", "strong(cycle:7,cycle:7)"]);
    assert_eq!(o.code, EXIT_BUDGET);
    assert!(o.stdout.starts_with('['), "{}", o.stdout);
    let o = run(&["--budget-ms", "0", "--json", "alpha", "--graph", "strong(cycle:7,cycle:7)"]);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["interrupted"], true);
}

#[test]
fn theta_lp_json_carries_the_program() {
    let o = run(&["--json", "theta-lp", "--p", "2", "--n", "16"]);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["upper"], "784/17");
    assert_eq!(v["details"]["lp"]["constraints"].as_array().unwrap().len(), 4);
    assert_eq!(v["details"]["solution"]["status"], "optimal");
}

#[test]
fn witnesses_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let cases: &[&[&str]] = &[
        &["alpha", "--graph", "strong(cycle:5,cycle:5)"],
        &["cover", "--graph", "cycle:7"],
        &["fracchrom", "--graph", "complement(cycle:7)"],
        &["minrank", "--graph", "cycle:5", "--p", "2"],
        &["hfrac", "--graph", "strong(cycle:5,cycle:5)", "--p", "3"],
    ];
    for (i, args) in cases.iter().enumerate() {
        let path = dir.path().join(format!("w{i}.json"));
        let mut full: Vec<&str> = vec!["--json"];
        full.extend_from_slice(args);
        full.extend_from_slice(&["--out", path.to_str().unwrap()]);
        let o = run(&full);
        assert_eq!(o.code, EXIT_OK, "{args:?}: {}", o.stderr);
        let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["witness_refs"][0], path.to_str().unwrap());
        let check = run(&["verify", "--cert", path.to_str().unwrap()]);
        assert_eq!(check.code, EXIT_OK, "{args:?}: {}", check.stdout);
        assert!(check.stdout.starts_with("PASS"));
    }
}

#[test]
fn every_certificate_kind_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let kinds: &[&[&str]] = &[
        &["--kind", "independent-set", "--graph", "cycle:7"],
        &["--kind", "clique-cover", "--graph", "cycle:7"],
        &["--kind", "fractional-cover", "--graph", "cycle:7"],
        &["--kind", "fit", "--graph", "cycle:5", "--p", "3"],
        &["--kind", "cover-fit", "--graph", "cycle:7", "--p", "5"],
        &["--kind", "drep", "--graph", "cycle:7", "--p", "2"],
        &["--kind", "pairrep", "--graph", "cycle:5", "--p", "3"],
        &["--kind", "subspace", "--graph", "cycle:5", "--p", "3"],
        &["--kind", "rankr", "--graph", "cycle:5", "--p", "2"],
        &["--kind", "johnson", "--p", "2", "--n", "8"],
        &["--kind", "alon", "--variant", "p", "--p", "2", "--q", "3", "--n", "7"],
        &["--kind", "alon", "--variant", "q", "--p", "2", "--q", "3", "--n", "7"],
        &["--kind", "alon", "--variant", "r", "--p", "2", "--q", "2", "--n", "6"],
        &["--kind", "umbrella"],
        &["--kind", "umbrella-dual"],
    ];
    for (i, k) in kinds.iter().enumerate() {
        let path = dir.path().join(format!("c{i}.json"));
        let mut args = vec!["certify"];
        args.extend_from_slice(k);
        args.extend_from_slice(&["--out", path.to_str().unwrap()]);
        let o = run(&args);
        assert_eq!(o.code, EXIT_OK, "{k:?}: {}", o.stderr);
        let v = run(&["--json", "verify", "--cert", path.to_str().unwrap()]);
        assert_eq!(v.code, EXIT_OK, "{k:?}: {}", v.stdout);
        let j: serde_json::Value = serde_json::from_str(&v.stdout).unwrap();
        assert_eq!(j["status"], "pass");
    }
}

#[test]
fn verification_failures_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    let p = path.to_str().unwrap();
    assert_eq!(run(&["certify", "--kind", "drep", "--graph", "cycle:5", "--out", p]).code, EXIT_OK);
    assert_eq!(run(&["verify", "--cert", p, "--graph", "cycle:7"]).code, EXIT_VERIFY);
    assert_eq!(run(&["verify", "--cert", p, "--graph", "complement(cycle:5)"]).code, EXIT_VERIFY);

    let mut cert: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    // move a 1 from a diagonal block onto the non-edge block (0, 2)
    cert["entries"][4] = 1.into();
    std::fs::write(&path, cert.to_string()).unwrap();
    let o = run(&["verify", "--cert", p]);
    assert_eq!(o.code, EXIT_VERIFY);
    assert!(o.stdout.contains("(0,2)"), "{}", o.stdout);

    std::fs::write(&path, "{\"kind\": \"fit\"}").unwrap();
    assert_eq!(run(&["verify", "--cert", p]).code, EXIT_VERIFY);

    let fit = dir.path().join("f.json");
    let f = fit.to_str().unwrap();
    run(&["certify", "--kind", "fit", "--graph", "cycle:5", "--out", f]);
    let mut cert: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&fit).unwrap()).unwrap();
    cert["claimed_rank"] = 2.into();
    std::fs::write(&fit, cert.to_string()).unwrap();
    assert_eq!(run(&["verify", "--cert", f]).code, EXIT_VERIFY);
}

#[test]
fn graph_files_are_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c5.txt");
    let p = path.to_str().unwrap();
    let o = run(&["generate", "--graph", "cycle:5", "--out", p]);
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "5 5\n0 1\n0 4\n1 2\n2 3\n3 4\n");
    assert_eq!(run(&["alpha", "--graph", p]).stdout, "2\n");
    let expr = format!("strong(file:{p},cycle:5)");
    assert_eq!(run(&["alpha", "--graph", &expr]).stdout, "5\n");
    std::fs::write(&path, "5 1\n0 9\n").unwrap();
    assert_eq!(run(&["alpha", "--graph", p]).code, EXIT_USAGE);
}

#[test]
fn quick_reproduction_passes() {
    let o = run(&["reproduce", "--quick"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stdout);
    assert_eq!(o.stdout.lines().count(), 14);
    assert!(o.stdout.lines().all(|l| l.starts_with("PASS")));
    assert!(o.stdout.contains("skipped by --quick"));

    let a = run(&["--json", "reproduce", "--quick"]);
    let b = run(&["--json", "reproduce", "--quick"]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_str(&a.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 14);
    assert!(v[0]["claim"].as_str().unwrap().contains("sqrt(5)"));
}
