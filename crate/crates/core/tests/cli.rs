use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_bimodal");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn derivation(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("derivations").join(name).to_string_lossy().into_owned()
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p: PathBuf = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

const EXCLUDED_MIDDLE: &str = "worlds: w0 w1\nleqD: w0<=w1\ndom w0: a\ndom w1: a\ninterp w1 P: (a)\n";

#[test]
fn translate_examples() {
    let o = run(&["translate", "--kind", "star", "exists x P(x)"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "<>G exists x []D P(x)\n"));
    let o = run(&["translate", "--kind", "godel", "P(a)"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "[]D P(a)\n"));
    assert_eq!(code(&run(&["translate", "--kind", "ext-godel", "[]D P(a)"])), 2);
    assert_eq!(code(&run(&["translate", "--kind", "star", "exists x (P(x)"])), 1);
}

#[test]
fn translate_from_file_and_normalize() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(&dir, "f.txt", "[]D P(a)\n");
    let o = run(&["translate", "--kind", "reverse", "--anchor", "xx", "--normalize", "--file", &f]);
    assert_eq!(code(&o), 0);
    // the target's single box is written []D; the vacuous relativization drops out
    assert_eq!(stdout(&o).trim(), "[]D P(a)");
}

#[test]
fn check_examples() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(&dir, "em.txt", EXCLUDED_MIDDLE);
    let o = run(&["check", &m, "P(a) | ~P(a)", "--semantics", "forcing", "--world", "w0"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "false\n"));
    let o = run(&["check", &m, "P(a) | ~P(a)", "--semantics", "classical", "--world", "w0"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "true\n"));
    let o = run(&["check", &m, "<>D P(x)", "--assign", "x=a", "--explain"]);
    let text = stdout(&o);
    assert!(text.starts_with("true\n") && text.lines().count() > 1, "{text}");
}

#[test]
fn invalid_model_exits_three_with_listing() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(&dir, "bad.txt", "worlds: w0 w1 w2\nleqG: w0<=w1\nleqD: w0<=w2\ndom w0: a\ndom w1: a\ndom w2: a\n");
    let o = run(&["check", &bad, "P(a)"]);
    assert_eq!(code(&o), 3);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line "), "{err}");
    assert_eq!(code(&run(&["validate", &bad])), 3);
    let good = write(&dir, "good.txt", EXCLUDED_MIDDLE);
    assert_eq!(code(&run(&["validate", &good])), 0);
    let garbled = write(&dir, "garbled.txt", "worlds: w0\nleqD: w0<=w7\n");
    assert_eq!(code(&run(&["validate", &garbled])), 1);
}

#[test]
fn prove_examples() {
    let o = run(&["prove", &derivation("subsump_4g_chain.der"), "--system", "BM-FOL"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "accepted\n"));
    let o = run(&["prove", &derivation("neg_brouwer.der")]);
    assert_eq!(code(&o), 4);
    assert!(stdout(&o).starts_with("rejected at line 2"), "{}", stdout(&o));
    assert_eq!(code(&run(&["prove", &derivation("rs_collapse.der")])), 0);
    assert_eq!(code(&run(&["prove", &derivation("neg_rs_without_toggle.der")])), 4);
    assert_eq!(code(&run(&["prove", &derivation("neg_rs_without_toggle.der"), "--with-reverse-subsumption"])), 0);
    assert_eq!(code(&run(&["prove", &derivation("subsump_4g_chain.der"), "--system", "Peano"])), 1);
}

#[test]
fn countermodel_examples_replay() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["countermodel", "P(a) -> []D <>D P(a)", "--max-worlds", "2", "--max-domain", "1"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let world = text
        .lines()
        .find_map(|l| l.strip_prefix("# replay: check --semantics classical --world "))
        .expect("replay line")
        .to_string();
    let m = write(&dir, "cm.txt", &text);
    let o = run(&["check", &m, "P(a) -> []D <>D P(a)", "--world", &world]);
    assert_eq!(stdout(&o), "false\n");

    let o = run(&["countermodel", "<>G []D P(a) -> []D <>G P(a)", "--max-worlds", "3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("exhausted-bounds"), "{}", stdout(&o));
}

#[test]
fn intuitionistic_countermodel_replays() {
    let dir = tempfile::tempdir().unwrap();
    let f = "forall x P(x) -> []G forall x P(x)";
    let o = run(&["countermodel", f, "--semantics", "intuitionistic", "--max-worlds", "2", "--max-domain", "2"]);
    let text = stdout(&o);
    let world = text
        .lines()
        .find_map(|l| l.strip_prefix("# replay: check --semantics intuitionistic --world "))
        .expect("replay line")
        .to_string();
    let m = write(&dir, "bi.txt", &text);
    let o = run(&["check", &m, f, "--semantics", "intuitionistic", "--world", &world]);
    assert_eq!(stdout(&o), "false\n");
}

#[test]
fn properties_link_summary_and_results_file() {
    let dir = tempfile::tempdir().unwrap();
    let results = dir.path().join("results.jsonl");
    let r = results.to_string_lossy();
    let o = run(&["properties", "--suite", "link", "--max-worlds", "2", "--max-domain", "2", "--depth", "2", "--results", &r]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let summary = text.lines().find(|l| l.ends_with(" checks")).expect("summary line");
    let n: u64 = summary
        .strip_prefix("0 mismatches / ")
        .and_then(|s| s.strip_suffix(" checks"))
        .and_then(|s| s.parse().ok())
        .unwrap_or_else(|| panic!("{summary}"));
    assert!(n > 0);
    let records = std::fs::read_to_string(&results).unwrap();
    for line in records.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["suite"], "link");
        assert_eq!(v["verdict"], "pass");
        assert!(v["instance"].is_string());
    }
    assert!(records.lines().count() > 0);
    assert_eq!(code(&run(&["properties", "--suite", "nonsense"])), 1);
}

#[test]
fn identical_invocations_are_identical() {
    let args = ["properties", "--suite", "exhibits", "--max-worlds", "3", "--max-domain", "2"];
    let a = run(&args);
    let b = run(&args);
    let c = run(&["--jobs", "3", "properties", "--suite", "exhibits", "--max-worlds", "3", "--max-domain", "2"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn config_file_sets_default_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(&dir, "bounds.conf", "# small\nmax-worlds = 2\nmax-domain = 1\n");
    let o = run(&["--config", &cfg, "countermodel", "<>D []D P(a) -> []D <>D P(a)"]);
    assert!(stdout(&o).starts_with("exhausted-bounds"), "{}", stdout(&o));
    let o = run(&["--config", &cfg, "countermodel", "<>D []D P(a) -> []D <>D P(a)", "--max-worlds", "3"]);
    assert!(stdout(&o).contains("# countermodel"), "{}", stdout(&o));
    let broken = write(&dir, "broken.conf", "max-worlds: 2\n");
    assert_eq!(code(&run(&["--config", &broken, "inventory"])), 1);
}

#[test]
fn inventory_lists_every_system() {
    let o = run(&["inventory"]);
    let text = stdout(&o);
    for s in ["I-FOL", "S4-FOL", "S4.2-I-FOL", "BM-FOL", "I-BPL", "S4-BPL", "S4.2-I-BPL", "BM-TPL"] {
        assert!(text.contains(s), "{s}");
    }
}
