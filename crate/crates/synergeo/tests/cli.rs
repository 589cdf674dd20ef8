use std::path::Path;

use synergeo::cli::run;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("synergeo").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn p(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

#[test]
fn maxima_of_the_unit_square() {
    let dir = tempfile::tempdir().unwrap();
    let sq = p(dir.path(), "square.txt");
    std::fs::write(&sq, "0 0\n0 1\n1 0\n1 1\n").unwrap();
    for algo in ["brute", "synergistic"] {
        assert_eq!(call(&["maxima", &sq, "--algo", algo]), (0, "1 1\n".to_string(), String::new()));
    }
}

#[test]
fn parse_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = p(dir.path(), "bad.txt");
    std::fs::write(&bad, "1 x\n").unwrap();
    let (code, _, err) = call(&["hull", &bad]);
    assert_eq!(code, 2);
    assert!(err.contains("line 1, column 3"), "{err}");
    assert_eq!(call(&["hull", &p(dir.path(), "missing.txt")]).0, 2);
    assert_eq!(call(&["frobnicate"]).0, 2);
    // a multi-sequence file whose second sequence is not a staircase
    std::fs::write(&bad, "0 1\n1 0\n\n0 0\n1 1\n").unwrap();
    assert_eq!(call(&["merge-maxima", &bad, "--cert", &p(dir.path(), "c")]).0, 2);
}

#[test]
fn emitted_certificates_verify() {
    let dir = tempfile::tempdir().unwrap();
    let inst = p(dir.path(), "inst.txt");
    assert_eq!(call(&["gen", "--family", "random-uniform", "--n", "300", "--param", "50", "--seed", "4", "--out", &inst]).0, 0);

    let mc = p(dir.path(), "m.cert");
    let (code, brute, _) = call(&["maxima", &inst, "--algo", "brute"]);
    assert_eq!(code, 0);
    assert_eq!(call(&["maxima", &inst, "--cert", &mc]).1, brute);
    assert_eq!(call(&["verify-maxima", &format!("{mc}.inst"), &mc]), (0, "VALID\n".to_string(), String::new()));

    let hc = p(dir.path(), "h.cert");
    let (_, brute, _) = call(&["hull", &inst, "--algo", "brute"]);
    assert_eq!(call(&["hull", &inst, "--algo", "levcopoulos"]).1, brute);
    assert_eq!(call(&["hull", &inst, "--cert", &hc]).1, brute);
    assert_eq!(call(&["verify-hull", &format!("{hc}.inst"), &hc]).0, 0);

    // Dropping a line of the hull certificate breaks it.
    let text = std::fs::read_to_string(&hc).unwrap();
    let cut: String = text.lines().skip(1).map(|l| format!("{l}\n")).collect();
    std::fs::write(&hc, cut).unwrap();
    let (code, _, err) = call(&["verify-hull", &format!("{hc}.inst"), &hc]);
    assert_eq!(code, 1);
    assert!(err.starts_with("INVALID"), "{err}");
}

#[test]
fn merge_commands_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let st = p(dir.path(), "st.txt");
    call(&["gen", "--family", "merge-staircases", "--n", "120", "--param", "6", "--seed", "1", "--out", &st]);
    let c = p(dir.path(), "st.cert");
    let (code, out, _) = call(&["merge-maxima", &st, "--cert", &c]);
    assert_eq!(code, 0);
    assert!(!out.is_empty());
    assert_eq!(call(&["verify-maxima", &st, &c]).0, 0);

    let hl = p(dir.path(), "hl.txt");
    call(&["gen", "--family", "merge-hulls", "--n", "120", "--param", "6", "--seed", "1", "--out", &hl]);
    let c = p(dir.path(), "hl.cert");
    assert_eq!(call(&["merge-hulls", &hl, "--cert", &c]).0, 0);
    assert_eq!(call(&["verify-hull", &hl, &c]).0, 0);
    // The hull certificate does not fit the staircase instance.
    assert_ne!(call(&["verify-hull", &hl, &p(dir.path(), "st.cert")]).0, 0);
}

#[test]
fn partition_and_bench() {
    let dir = tempfile::tempdir().unwrap();
    let f = p(dir.path(), "chain.txt");
    std::fs::write(&f, "0 0\n2 2\n2 0\n0 2\n").unwrap();
    let (code, out, _) = call(&["partition", &f, "--mode", "simple"]);
    assert_eq!(code, 0);
    assert_eq!(out, "# kappa 2 entropy 0.811278\n0 0\n2 2\n2 0\n\n0 2\n");
    let (_, out, _) = call(&["partition", &f, "--mode", "smooth"]);
    assert!(out.starts_with("# sigma "));

    let csv = p(dir.path(), "b.csv");
    let (code, out, _) = call(&["bench", "--suite", "merge-staircases", "--n", "512", "--out", &csv]);
    assert_eq!(code, 0, "{out}");
    assert!(std::fs::read_to_string(&csv).unwrap().starts_with(synergeo::bench::CSV_HEADER));
    assert_eq!(call(&["bench", "--suite", "nope", "--out", &csv]).0, 2);
}
