use std::process::{Command, Output};

use pi1_cli::report::{Report, Status};

fn pi1(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pi1")).args(args).env_remove("PI1_MAX_G").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn reports(o: &Output) -> Vec<Report> {
    stdout(o).lines().map(|l| serde_json::from_str(l).expect("report line")).collect()
}

#[test]
fn lenard_latex_lists_four_polynomials() {
    let o = pi1(&["generate", "lenard", "--lmax", "3", "--format", "latex"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[0], "R_{1} = \\frac{1}{2} u");
    assert!(lines[3].starts_with("R_{7} = \\frac{1}{128} u_{xxxxxx}"));
    assert!(lines[3].contains("\\frac{35}{128} u^{4}"));
}

#[test]
fn u3_reference_form() {
    let o = pi1(&["generate", "U", "--n", "1", "--format", "latex"]);
    assert_eq!(
        stdout(&o).trim(),
        "\\mathcal{U}_{3} = \\begin{pmatrix} -\\frac{1}{4} u_{x} & \\lambda + \\frac{1}{2} u \\\\ \
         \\lambda^{2} - \\frac{1}{2} u \\lambda - \\frac{1}{4} u_{xx} - \\frac{1}{2} u^{2} & \\frac{1}{4} u_{x} \\end{pmatrix}"
    );
}

#[test]
fn genus_one_hamiltonian() {
    let o = pi1(&["generate", "hamiltonians", "--g", "1", "--format", "latex"]);
    assert_eq!(stdout(&o).trim(), "\\mathrm{Ham}^{(e_{1})} = (p_{1})^{2} - (q_{1})^{3} - t_{\\infty,1} q_{1}");
    let o = pi1(&["generate", "hamiltonians", "--g", "2", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["coordinates"], "symmetric");
    assert_eq!(doc["items"].as_array().unwrap().len(), 2);
}

#[test]
fn every_target_generates() {
    for t in ["lenard", "U", "Ag", "oper-L", "hatL", "hamiltonians", "dictionary"] {
        for f in ["text", "json"] {
            let o = pi1(&["generate", t, "--g", "2", "--format", f]);
            assert_eq!(o.status.code(), Some(0), "{t} {f}");
            assert!(!stdout(&o).trim().is_empty());
        }
    }
    let o = pi1(&["generate", "dictionary", "--g", "3", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["r_inf"], 6);
    assert_eq!(doc["times"][1]["minimal_model"], "3 s_3");
}

#[test]
fn single_check_passes_without_witnesses() {
    let o = pi1(&["verify", "lax-identity", "--g", "1", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let r = reports(&o);
    assert_eq!(r.len(), 1);
    assert_eq!((r[0].check.as_str(), r[0].g, r[0].seed, r[0].status), ("lax-identity", 1, 1, Status::Pass));
    assert!(r[0].failures.is_empty());
    assert_eq!(r[0].elapsed_ms, None);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(pi1(&["verify", "all", "--g", "0"]).status.code(), Some(2));
    assert_eq!(pi1(&["verify", "all", "--g", "5"]).status.code(), Some(2));
    assert_eq!(pi1(&["verify", "no-such-check"]).status.code(), Some(2));
    assert_eq!(pi1(&["verify"]).status.code(), Some(2));
    assert_eq!(pi1(&["generate", "nothing"]).status.code(), Some(2));
    assert_eq!(pi1(&["verify", "invariants", "--format", "latex"]).status.code(), Some(2));
    assert_eq!(pi1(&["verify", "--bogus-flag"]).status.code(), Some(2));
}

#[test]
fn genus_ceiling_from_the_environment() {
    let run = |max: &str, g: &str| {
        Command::new(env!("CARGO_BIN_EXE_pi1"))
            .args(["verify", "invariants", "--g", g, "--trials", "2"])
            .env("PI1_MAX_G", max)
            .output()
            .unwrap()
            .status
            .code()
    };
    assert_eq!(run("1", "2"), Some(2));
    assert_eq!(run("2", "2"), Some(0));
    assert_eq!(run("x", "1"), Some(2));
    // point checks go up to 6 by default
    assert_eq!(pi1(&["verify", "residue-lemma", "--g", "6", "--trials", "2"]).status.code(), Some(0));
}

#[test]
fn failures_replay_to_the_same_witnesses() {
    let dir = std::env::temp_dir().join(format!("pi1-replay-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("reports.jsonl");
    let f = file.to_str().unwrap();
    let o = pi1(&["verify", "ad-flow-constant", "--g", "2", "--seed", "3", "--trials", "4", "--out", f]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
    let recorded: Vec<Report> =
        std::fs::read_to_string(&file).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(recorded[0].status, Status::Fail);
    assert!(!recorded[0].failures.is_empty());
    let again = pi1(&["verify", "--replay", f]);
    assert_eq!(again.status.code(), Some(1));
    let replayed = reports(&again);
    assert_eq!(replayed.len(), 1);
    assert_eq!(replayed[0].failures, recorded[0].failures);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn text_format_and_timing() {
    let o = pi1(&["verify", "g2-ode", "string-operator", "--g", "2", "--format", "text"]);
    assert_eq!(stdout(&o), "g2-ode g=2 seed=0 trials=0: pass\nstring-operator g=2 seed=0 trials=0: pass\n");
    let o = pi1(&["verify", "casimir", "--g", "2", "--trials", "2", "--timing"]);
    assert!(reports(&o)[0].elapsed_ms.is_some());
}

#[test]
fn all_expands_in_suite_order() {
    let o = pi1(&["verify", "all", "--g", "1", "--trials", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let names: Vec<String> = reports(&o).into_iter().map(|r| r.check).collect();
    let want: Vec<&str> = pi1_cli::checks::all().map(|c| c.name).collect();
    assert_eq!(names, want);
    assert!(!names.iter().any(|n| n == "ad-flow-constant"));
}
