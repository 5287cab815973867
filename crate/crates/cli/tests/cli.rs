use std::fs;
use std::path::PathBuf;
use std::process::Command;

use formalis_cli::{run, Outcome};
use serde_json::Value;

fn cli(args: &[&str]) -> Outcome {
    let mut argv = vec!["formalis", "--no-timing"];
    argv.extend_from_slice(args);
    run(argv)
}

fn json(out: &Outcome) -> Value {
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stdout))
}

fn example(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "examples", name].iter().collect();
    p.to_string_lossy().into_owned()
}

#[test]
fn report_shape() {
    let out = cli(&["parse", "--poly", "x^2 - 1/2*y", "--vars", "x,y"]);
    assert_eq!(out.code, 0);
    let r = json(&out);
    let keys: Vec<&str> = r.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, vec!["caveats", "command", "inputs", "result", "timing_ms"]);
    assert_eq!(r["command"], "parse");
    assert_eq!(r["result"]["poly"], "x^2 - 1/2*y");
    assert_eq!(r["timing_ms"], Value::Null);
    let timed = run(["formalis", "parse", "--poly", "x", "--vars", "x"]);
    assert!(json(&timed)["timing_ms"].is_u64());
}

#[test]
fn exit_codes() {
    let bad = cli(&["parse", "--poly", "x^^2", "--vars", "x,y"]);
    assert_eq!(bad.code, 2);
    assert_eq!(json(&bad)["result"]["error"]["kind"], "parse");
    assert_eq!(json(&bad)["result"]["error"]["position"], 2);
    assert!(bad.stderr.starts_with("formalis: "));

    assert_eq!(cli(&["frobnicate"]).code, 2);
    assert_eq!(cli(&["parse", "--poly", "z", "--vars", "x"]).code, 2);

    let pre = cli(&["pfaff-check", "--jouanolou", "1"]);
    assert_eq!(pre.code, 3);
    assert_eq!(json(&pre)["result"]["error"]["kind"], "precondition");
    assert_eq!(
        cli(&["family", "--jouanolou", "3", "--direction", "1,1,1", "--N", "3"]).code,
        3
    );

    let cap = cli(&["darboux", "--jouanolou", "3", "--degree", "5"]);
    assert_eq!(cap.code, 4);
    assert_eq!(json(&cap)["result"]["error"]["kind"], "resource");

    let help = run(["formalis", "--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("reproduce"));
}

#[test]
fn gb_and_orders() {
    let out = cli(&[
        "gb",
        "--vars",
        "x,y",
        "--gen",
        "x^2 + y^2 - 1",
        "--gen",
        "x - y",
        "--order",
        "lex",
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let basis = json(&out)["result"]["basis"].clone();
    assert_eq!(basis, serde_json::json!(["y^2 - 1/2", "x - y"]));
    let elim = cli(&[
        "gb", "--vars", "t,x,y", "--gen", "x - t^2", "--gen", "y - t^3", "--order", "elim:1",
    ]);
    assert_eq!(elim.code, 0, "{}", elim.stderr);
    assert!(
        elim.stdout.contains("x^3 - y^2") || elim.stdout.contains("-x^3 + y^2"),
        "{}",
        elim.stdout
    );
    assert_eq!(cli(&["gb", "--vars", "x", "--gen", "x", "--order", "deglex"]).code, 2);
}

#[test]
fn tower_commands() {
    let chain = example("xy-chain.json");
    let adic = cli(&["adic-test", "--tower", &chain, "--candidate", "x*y", "--nmax", "2"]);
    assert_eq!(adic.code, 0, "{}", adic.stderr);
    let r = json(&adic);
    assert_eq!(r["result"]["pass"], false);
    assert_eq!(r["result"]["forward_failure"], 2);
    assert!(!r["caveats"].as_array().unwrap().is_empty());

    let parsed = cli(&["parse", "--tower", &chain]);
    assert_eq!(parsed.code, 0, "{}", parsed.stderr);

    assert_eq!(
        cli(&["adic-test", "--tower", "/nonexistent.json", "--candidate", "x"]).code,
        2
    );
}

#[test]
fn series_commands() {
    let inv = cli(&[
        "invert",
        "--f",
        "x + t",
        "--N",
        "4",
        "--vars",
        "x,t",
        "--invertible",
        "x",
        "--series",
        "t",
    ]);
    assert_eq!(inv.code, 0, "{}", inv.stderr);
    assert!(inv.stdout.contains("x^-1"), "{}", inv.stdout);

    let lc = cli(&[
        "line-closure",
        "--f",
        "x - 1 + t",
        "--N",
        "3",
        "--vars",
        "x,t",
        "--invertible",
        "x",
        "--series",
        "t",
    ]);
    assert_eq!(lc.code, 0, "{}", lc.stderr);

    let search = cli(&["search-multiple", "--rule", "factorial", "--seed", "y", "--N", "6"]);
    assert_eq!(search.code, 0, "{}", search.stderr);
    let r = json(&search);
    assert_eq!(r["result"]["outcome"], "obstruction");
    assert_eq!(r["result"]["order"], 2);

    let prof = cli(&["saturation-profile", "--rule", "factorial", "--nmax", "4", "--m", "2"]);
    assert_eq!(prof.code, 0, "{}", prof.stderr);

    let de = cli(&["de-profile", "--g", "1 + x^-5*y^3*t", "--N", "3"]);
    assert_eq!(de.code, 0, "{}", de.stderr);
    assert_eq!(json(&de)["result"]["profile"]["E"][2], 3);
    assert_eq!(json(&de)["result"]["e_violation"], serde_json::json!([1, 2]));

    let bad_rule = cli(&["counterexample", "--rule", "const:1", "--N", "4"]);
    assert_eq!(bad_rule.code, 3);
}

#[test]
fn foliation_commands() {
    let check = cli(&["pfaff-check", "--jouanolou", "3"]);
    assert_eq!(check.code, 0, "{}", check.stderr);
    assert_eq!(json(&check)["result"]["integrable"], true);

    let rot = cli(&[
        "darboux", "--m", "1", "--w", "y", "--w", "-x", "--w", "0", "--degree", "1",
    ]);
    assert_eq!(rot.code, 0, "{}", rot.stderr);
    assert_eq!(json(&rot)["result"]["solutions"].as_array().unwrap().len(), 2);

    let jou = cli(&["darboux", "--jouanolou", "3", "--degree", "2"]);
    assert_eq!(json(&jou)["result"]["solutions"], serde_json::json!([]));

    let sep = cli(&[
        "separatrix",
        "--m",
        "1",
        "--w",
        "x",
        "--w",
        "y",
        "--w",
        "z",
        "--point",
        "0,0,1",
        "--N",
        "5",
    ]);
    assert_eq!(sep.code, 0, "{}", sep.stderr);
    assert_eq!(json(&sep)["result"]["residual_zero"], true);

    let fam = cli(&["family", "--jouanolou", "3", "--direction", "1,2,3", "--N", "4"]);
    assert_eq!(fam.code, 0, "{}", fam.stderr);
    assert_eq!(json(&fam)["result"]["pole_profile"], serde_json::json!([0, 1, 2, 3]));
}

#[test]
fn reproduce_all_examples() {
    let out = cli(&["reproduce", "all"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let r = json(&out);
    for name in formalis_cli::EXAMPLES {
        assert_eq!(
            r["result"]["examples"][name]["pass"], true,
            "{name}: {}",
            r["result"]["examples"][name]
        );
    }
    assert_eq!(r["result"]["pass"], true);
    assert_eq!(cli(&["reproduce", "nope"]).code, 3);
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = [
        "--cache",
        d,
        "saturation-profile",
        "--rule",
        "factorial",
        "--nmax",
        "4",
        "--m",
        "2",
    ];
    let first = cli(&args);
    assert_eq!(first.code, 0, "{}", first.stderr);
    let files: Vec<PathBuf> = fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert!(!files.is_empty());
    let again = cli(&args);
    assert_eq!(first.stdout, again.stdout);

    for f in &files {
        fs::write(f, "garbage").unwrap();
    }
    let repaired = cli(&args);
    assert_eq!(first.stdout, repaired.stdout);
    let fresh = cli(&args[2..]);
    assert_eq!(first.stdout, fresh.stdout);
}

#[test]
fn binary_is_deterministic() {
    let bin = env!("CARGO_BIN_EXE_formalis");
    let go = |threads: &str| {
        Command::new(bin)
            .args(["--no-timing", "--threads", threads, "reproduce", "all"])
            .output()
            .unwrap()
    };
    let a = go("1");
    let b = go("4");
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let bad = Command::new(bin)
        .args(["parse", "--poly", "1/0", "--vars", "x"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("zero denominator"));
}
