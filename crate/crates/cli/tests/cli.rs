use bs_cli::run_with;

fn bs(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("bs").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = bs(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    out
}

#[test]
fn normalize_and_eq() {
    assert_eq!(ok(&["normalize", "-m", "2", "-n", "3", "T a^2 t"]), "a^3\n");
    assert_eq!(ok(&["eq", "-m", "1", "-n", "2", "t^-1 a t", "a^2"]), "true\n");
    assert_eq!(ok(&["eq", "-m", "2", "-n", "4", "a", "t a t^-1"]), "false\n");
    let v: serde_json::Value = serde_json::from_str(&ok(&["normalize", "-m", "2", "-n", "-3", "t^-1 a^4 t", "--json"])).unwrap();
    assert_eq!(v["normal_form"], "a^-6");
    assert_eq!(v["t_length"], 0);
}

#[test]
fn weights_with_negative_parameters() {
    assert_eq!(ok(&["weight", "-n", "-1", "a^8"]), "4\n");
    assert_eq!(ok(&["weight", "-n", "3", "t"]), "1\n");
    assert_eq!(ok(&["weight", "-n", "2", "a"]), "omega\n");
    assert_eq!(ok(&["quot-image", "-n", "3", "-i", "2", "a^2"]), "1 (mod 2)\n");
}

#[test]
fn classify_json() {
    let v: serde_json::Value = serde_json::from_str(&ok(&["classify", "-m", "6", "-n", "6", "--json"])).unwrap();
    assert_eq!(v["rn"], false);
    assert_eq!(v["rf"], true);
    let v: serde_json::Value = serde_json::from_str(&ok(&["classify", "-m", "1", "-n", "-1", "--json"])).unwrap();
    assert_eq!(v["rtfn"], false);
    assert_eq!(v["lcs_length"], "omega");
}

#[test]
fn witnesses_and_chains() {
    assert!(ok(&["witness", "lemma2", "-m", "2", "-n", "5", "-i", "2"]).starts_with("[[a^2, t]^2, t] = a^9"));
    assert!(ok(&["witness", "member", "-m", "2", "-n", "3", "-s", "3"]).contains("verified: true"));
    assert!(ok(&["witness", "omega", "-m", "2", "-n", "4"]).contains("[a^2, t] = a^2"));
    let v: serde_json::Value = serde_json::from_str(&ok(&["chain", "-m", "4", "-n", "6", "--json"])).unwrap();
    assert_eq!(v["case"], 5);
    assert_eq!(ok(&["rgen", "-m", "2", "-n", "4", "-K", "0"]).lines().count(), 1);
}

#[test]
fn oracle_commands() {
    assert!(ok(&["oracle", "build", "-m", "1", "-n", "3", "-p", "2", "-k", "3", "-j", "1"]).contains("[16, 4, 2, 1]"));
    let v: serde_json::Value =
        serde_json::from_str(&ok(&["oracle", "certify", "-m", "1", "-n", "3", "-i", "3", "a^2", "--json"])).unwrap();
    assert_eq!(v["conclusive"], true);
    assert_eq!(v["certificate"]["quotient"], "Z_8 ⋊_3 Z_2");
    assert!(ok(&["oracle", "certify", "-m", "1", "-n", "3", "-i", "2", "a^2"]).starts_with("inconclusive"));
}

#[test]
fn sweep_csv_and_out_file() {
    let csv = ok(&["sweep", "-m", "3", "-n", "3", "--csv"]);
    assert!(csv.starts_with("m,n,canonical_m,canonical_n,ab,rf,rp_primes,rn,rtfn,lcs_length,gamma_omega,prop5_case\n"));
    assert_eq!(csv.lines().count(), 1 + 3 * 6);
    let path = std::env::temp_dir().join(format!("bs-cli-sweep-{}.csv", std::process::id()));
    assert_eq!(ok(&["sweep", "-m", "1", "-n", "1", "--out", path.to_str().unwrap()]), "");
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(written.lines().count(), 3);
}

#[test]
fn exit_codes() {
    assert_eq!(bs(&["normalize", "-m", "0", "-n", "3", "a"]).0, 1);
    assert_eq!(bs(&["witness", "member", "-m", "2", "-n", "5", "-s", "3"]).0, 1);
    assert_eq!(bs(&["normalize", "-m", "2", "-n", "3", "a^^"]).0, 2);
    assert_eq!(bs(&["bogus"]).0, 2);
    assert_eq!(bs(&["normalize", "-m", "2"]).0, 2);
    let (code, out, _) = bs(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("normalize"));
    assert_eq!(bs(&["normalize", "-m", "1", "-n", "2", "--max-bits", "4", "a^1000"]).0, 2);
}
