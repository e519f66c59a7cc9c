use std::path::PathBuf;
use std::process::Command;

use irr_core::corpus::{Tap, FILES};
use irr_core::frontend::syntax::print_commands;
use irr_core::frontend::{parse, parse_term, print_closed, run_source, Elaborator, Flags, Status};
use irr_core::reduce::Mode;
use irr_core::signature::DeclKind;
use irr_core::term::{alpha_eq, Context};
use irr_core::typecheck::TypeChecker;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn corpus_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name)
}

fn irr(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_irr")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

#[test]
fn every_corpus_file_checks() {
    let mut tap = Tap::new();
    for (name, src) in FILES {
        let report = run_source(src, &Flags::default());
        tap.record(report.exit_code == 0 && report.declarations > 0, name, &report.summary());
    }
    print!("{}", tap.render());
    assert!(tap.all_ok(), "{}", tap.render());
}

#[test]
fn printer_is_a_fixpoint_on_the_corpus() {
    for (name, src) in FILES {
        let once = print_commands(&parse(src).unwrap());
        let twice = print_commands(&parse(&once).unwrap_or_else(|e| panic!("{name}: {e:?}")));
        assert_eq!(once, twice, "{name}");
        let report = run_source(&once, &Flags::default());
        assert_eq!(report.exit_code, 0, "{name} after printing:\n{}", report.text());
    }
}

#[test]
fn printed_definitions_elaborate_back() {
    for (name, src) in FILES {
        let report = run_source(src, &Flags::default());
        let sig = &report.signature;
        let el = Elaborator::new(TypeChecker::new(sig, Mode::base(), 100_000));
        for d in sig.decls() {
            let DeclKind::Def { body, .. } = &d.kind else { continue };
            for t in [body, &d.ty] {
                let printed = print_closed(t);
                let e = parse_term(&printed).unwrap_or_else(|e| panic!("{name}/{}: {printed}: {e:?}", d.name));
                let back = el
                    .elab(&Context::new(), &e, None)
                    .unwrap_or_else(|e| panic!("{name}/{}: {printed}: {e:?}", d.name));
                assert!(alpha_eq(&back, t), "{name}/{}: {printed}", d.name);
            }
        }
    }
}

#[test]
fn singleton_mode_accepts_the_same_files() {
    let flags = Flags {
        singleton: true,
        ..Flags::default()
    };
    for (name, src) in FILES {
        let base = run_source(src, &Flags::default());
        let single = run_source(src, &flags);
        assert_eq!(single.exit_code, 0, "{name}:\n{}", single.text());
        let statuses = |r: &irr_core::frontend::Report| r.entries.iter().map(|e| (e.name.clone(), e.status)).collect::<Vec<_>>();
        assert_eq!(statuses(&base), statuses(&single), "{name}");
    }
}

#[test]
fn eta_mode_accepts_the_corpus() {
    let flags = Flags {
        eta: true,
        ..Flags::default()
    };
    for (name, src) in FILES {
        assert_eq!(run_source(src, &flags).exit_code, 0, "{name}");
    }
}

#[test]
fn directive_outputs() {
    let src = r"
def plus (m n : nat) : nat := nat_rec (fun (k : nat) => nat) n (fun (k : nat) (r : nat) => S r) m
#normalize plus 2 3
#infer plus
#convert (plus 1 1) 2
#check 3 : nat
axiom P : Prop
axiom p : P
#extract p
";
    let text = run_source(src, &Flags::default()).text();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[1], "OK #normalize plus 2 3 ~> 5");
    assert_eq!(lines[2], "OK #infer plus : nat -> nat -> nat");
    assert_eq!(lines[3], "OK #convert (plus 1 1) 2 ~> true");
    assert_eq!(lines[4], "OK #check 3 : nat");
    assert_eq!(lines[7], "OK #extract p ~> ε");
    assert_eq!(lines[8], "SUMMARY 3 declarations checked, 5 directives evaluated, 0 errors");
}

#[test]
fn failed_conversion_is_an_error() {
    let report = run_source("#convert true false\n", &Flags::default());
    assert_eq!(report.exit_code, 1);
    assert_eq!(report.first_error().unwrap().kind, "NotConvertible");
}

#[test]
fn stops_at_first_error_unless_asked() {
    let src = "def a : nat := true\ndef b : nat := 0\n";
    let stop = run_source(src, &Flags::default());
    assert_eq!(stop.entries.len(), 1);
    let go = run_source(
        src,
        &Flags {
            keep_going: true,
            ..Flags::default()
        },
    );
    assert_eq!(go.entries.len(), 2);
    assert_eq!(go.entries[1].status, Status::Ok);
    assert_eq!(go.errors, 1);
}

#[test]
fn model_directive_values() {
    let text = run_source(irr_core::corpus::file("classical.irr").unwrap(), &Flags::default()).text();
    assert!(text.contains("OK #model eq bool true true : Prop ~> 𝕀"), "{text}");
    assert!(text.contains("OK #model eq bool true false : Prop ~> ∅"), "{text}");
}

#[test]
fn cli_accepts_corpus_files() {
    let files: Vec<String> = FILES.iter().map(|(n, _)| corpus_path(n).display().to_string()).collect();
    let args: Vec<&str> = files.iter().map(String::as_str).collect();
    let (code, out) = irr(&args);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.matches("SUMMARY").count(), FILES.len());
}

#[test]
fn cli_exit_codes() {
    let f = |n: &str| fixture(n).display().to_string();
    let (code, out) = irr(&[&f("sigma_star.irr")]);
    assert_eq!(code, 1);
    assert!(out.contains("ERROR 2:21 SigmaOnStarFirst"), "{out}");
    let (code, _) = irr(&[&f("parse_error.irr")]);
    assert_eq!(code, 2);
    let (code, out) = irr(&["--fuel", "30", &f("fuel.irr")]);
    assert_eq!(code, 3, "{out}");
    let (code, _) = irr(&[&f("propdata.irr")]);
    assert_eq!(code, 1);
    let (code, out) = irr(&["--propdata", &f("propdata.irr")]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("OK #extract zero_is_zero ~> ε"));
    let (code, _) = irr(&["/nonexistent/file.irr"]);
    assert_eq!(code, 2);
}

#[test]
fn cli_json_report() {
    let (code, out) = irr(&["--json", &fixture("sigma_star.irr").display().to_string()]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["errors"], 1);
    assert_eq!(v["exit_code"], 1);
    assert_eq!(v["entries"][1]["error"]["kind"], "SigmaOnStarFirst");
    assert_eq!(v["entries"][1]["status"], "error");
}
