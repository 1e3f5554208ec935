//! Black-box tests of the `posslog` binary: subcommands, exit codes, format
//! closure and byte stability.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_posslog"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

/// Writes `content` under a unique temp path and returns it.
fn fixture(name: &str, content: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("posslog-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, content).unwrap();
    path
}

const SIGMA1: &str = "vars a b\n!b | a : 3/10\n!a : 2/10\n";

const NET5: &str = "node a\n\
                    !a : 3/4\n\
                    node b : a c\n\
                    b | a c : 1/2\n\
                    !b | !a c : 1/4\n\
                    node c\n\
                    node d : c\n\
                    d | !c : 1/4\n\
                    node e : b d\n\
                    !e | b !d : 3/4\n\
                    e | !b d : 1/2\n";

#[test]
fn dist_lists_every_world() {
    let f = fixture("sigma1.pkb", SIGMA1);
    let out = run(&["dist", f.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 4);
    assert!(text.starts_with("00 !a !b 1 (1)"));
    assert!(text.contains("01 !a b 7/10"));
}

#[test]
fn dist_of_empty_base_is_all_ones() {
    let f = fixture("empty.pkb", "vars a b\n");
    let out = run(&["dist", f.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).lines().all(|l| l.ends_with(" 1 (1)")));
}

#[test]
fn malformed_weight_is_a_parse_error() {
    let f = fixture("bad.pkb", "vars a\na : 3/0\n");
    let out = run(&["dist", f.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(!out.stderr.is_empty());
}

#[test]
fn entail_answers_yes_and_no() {
    let f = fixture("ent.pkb", "vars x a b\nx | a : 1/2\n!x | b : 1/2\n");
    let out = run(&["entail", f.to_str().unwrap(), "a | b", "1/2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "yes\n");

    // a level above every weight cannot be reached
    let out = run(&["entail", f.to_str().unwrap(), "a | b", "3/4"]);
    assert_eq!(stdout(&out), "no\n");

    // querying an undeclared variable is a usage error
    let out = run(&["entail", f.to_str().unwrap(), "z", "1/2"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn net2base_both_modes() {
    let f = fixture("net5.pnet", NET5);
    let out = run(&["net2base", f.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let min_text = stdout(&out);
    assert_eq!(min_text.lines().filter(|l| l.contains(':')).count(), 6);

    let out = run(&["net2base", f.to_str().unwrap(), "--mode", "prod"]);
    let prod_text = stdout(&out);
    for needle in ["13/16", "29/32", "7/8", "7/16", "5/8"] {
        assert!(prod_text.contains(needle), "missing weight {needle}");
    }
}

#[test]
fn net2base_of_empty_network_is_empty_base() {
    let f = fixture("trivial.pnet", "node a\nnode b : a\n");
    let out = run(&["net2base", f.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    // only the vars header remains
    assert_eq!(stdout(&out).lines().filter(|l| l.contains(':')).count(), 0);
}

#[test]
fn base2net_with_ordering_and_trace() {
    let f = fixture("rep.pkb", "vars a b\na : 1/2\n!a | b : 1/2\n");
    let out = run(&["base2net", f.to_str().unwrap(), "--order", "a,b", "--trace"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.lines().any(|l| l.starts_with("# replace")));
    assert!(text.contains("node a"));

    // an ordering that misses a declared variable is rejected
    let out = run(&["base2net", f.to_str().unwrap(), "--order", "a"]);
    assert_ne!(code(&out), 0);
}

#[test]
fn base2net_unknown_order_variable() {
    let f = fixture("rep2.pkb", "vars a b\na : 1/2\n");
    let out = run(&["base2net", f.to_str().unwrap(), "--order", "a,z"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn query_network_and_base() {
    let net = fixture(
        "net2.pnet",
        "node a\n!a : 1/4\nnode b : a\nb | a : 1/3\nb | !a : 1/3\n",
    );
    // the incoherent entry degrades to 1 under min conditioning
    let out = run(&["query", net.to_str().unwrap(), "--target", "b", "--evidence", "!a"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "1 (1)\n");

    // product mode recovers the specified 1/3
    let out = run(&[
        "query", net.to_str().unwrap(), "--mode", "prod", "--target", "b", "--evidence", "!a",
    ]);
    assert_eq!(stdout(&out).split(' ').next(), Some("1/3"));

    // default evidence "true" asks for the marginal
    let base = fixture("sigma1b.pkb", SIGMA1);
    let out = run(&["query", base.to_str().unwrap(), "--target", "a"]);
    assert_eq!(stdout(&out), "4/5 (0.8)\n");
}

#[test]
fn query_rejects_impossible_evidence() {
    let f = fixture("hard.pkb", "vars a\na : 1\n");
    let out = run(&["query", f.to_str().unwrap(), "--target", "a", "--evidence", "!a"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("impossible"));
}

#[test]
fn verify_runs_and_rejects_unknown_checks() {
    let out = run(&["verify", "--check", "recovery-min", "--trials", "50", "--seed", "7"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("recovery-min: pass on 50 instance(s), seed 7"));

    // reproducible: the verdict line is identical up to the elapsed time
    let again = run(&["verify", "--check", "recovery-min", "--trials", "50", "--seed", "7"]);
    assert_eq!(
        stdout(&out).split(", seed 7").next(),
        stdout(&again).split(", seed 7").next()
    );

    let out = run(&["verify", "--check", "no-such-check"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_roundtrip_on_a_file() {
    let f = fixture(
        "six.pkb",
        "vars a b c d e f\na | b : 7/10\n!a | c | !d : 7/10\na | c | d : 9/10\n\
         b | c : 8/10\n!b | e : 2/10\n!d | f : 5/10\n",
    );
    let out = run(&["verify", "--check", "roundtrip", "--input", f.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("pass"));
}

#[test]
fn kappa2pi_scale() {
    let f = fixture("ranks.kap", "vars a b\n00 0\n01 2\n10 1\n11 inf\n");
    let out = run(&["kappa2pi", f.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("00 !a !b 1 (1)"));
    assert!(text.contains("01 !a b 1/4"));
    assert!(text.contains("10 a !b 1/2"));
    assert!(text.contains("11 a b 0 (0)"));
}

#[test]
fn emitted_files_are_rereadable_and_byte_stable() {
    let net = fixture("net5b.pnet", NET5);
    let dir = net.parent().unwrap().to_path_buf();

    // network -> base -> network, all through files
    let base_path = dir.join("roundtrip.pkb");
    let out = run(&["net2base", net.to_str().unwrap(), "--output", base_path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let first = fs::read(&base_path).unwrap();

    let out = run(&["net2base", net.to_str().unwrap(), "--output", base_path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(first, fs::read(&base_path).unwrap(), "emission is byte-stable");

    // the emitted base parses back and lists the same distribution as the
    // network's min-based joint
    let dist_base = run(&["dist", base_path.to_str().unwrap()]);
    assert_eq!(code(&dist_base), 0);

    let net_again = dir.join("roundtrip.pnet");
    let out = run(&[
        "base2net", base_path.to_str().unwrap(), "--output", net_again.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let out = run(&["net2base", net_again.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "re-emitted network is re-readable");
}

#[test]
fn max_vars_guard_is_enforced() {
    let f = fixture("guard.pkb", "vars a b c\na : 1/2\n");
    let out = run(&["--max-vars", "2", "dist", f.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("guard"));
}
