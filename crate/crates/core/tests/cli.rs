//! Command-line behaviour, driven in-process through `cli::run` and, for
//! exit codes, through the built binary.

use std::process::Command;

use kparts::cli::{run, Envelope, GoldenDoc};
use kparts::exactnum::{parse_rat, rat};
use kparts::quasipoly::{delta_det, interp_constituents};
use kparts::waves::waves_from_constituents;
use proptest::prelude::*;
use serde_json::Value;

fn kparts(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("kparts").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn stdout_of(args: &[&str]) -> String {
    let (code, out, err) = kparts(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    out
}

#[test]
fn compute_examples() {
    assert_eq!(
        stdout_of(&["compute", "--which", "p", "--n", "8", "--k", "3", "--method", "thm32"]),
        "5\n"
    );
    assert_eq!(
        stdout_of(&["compute", "--which", "q", "--n", "8", "--k", "3", "--method", "dp"]),
        "2\n"
    );
    assert_eq!(
        stdout_of(&["compute", "--which", "p", "--n", "2", "--k", "3", "--method", "dp"]),
        "0\n"
    );
    assert_eq!(
        stdout_of(&["compute", "--n", "7", "--k", "2", "--method", "polypart"]),
        "13/4\n"
    );
    assert_eq!(
        stdout_of(&["compute", "--n", "8", "--k", "3", "--method", "p61", "--format", "csv"]),
        "which,n,k,method,value\np,8,3,p61,5/1\n"
    );
}

#[test]
fn compute_json_envelope() {
    let out = stdout_of(&[
        "compute", "--which", "q", "--n", "8", "--k", "3", "--method", "prop34", "--format", "json",
    ]);
    let e = Envelope::from_json(&out).unwrap();
    assert_eq!(e.command, "compute");
    assert_eq!(e.provenance, "prop34");
    assert_eq!(e.inputs["which"], Value::from("q"));
    assert_eq!(e.outputs["value"], Value::from(2));
}

#[test]
fn large_values_are_strings() {
    let out = stdout_of(&["compute", "--n", "2000", "--k", "40", "--format", "json"]);
    let e = Envelope::from_json(&out).unwrap();
    let Value::String(s) = &e.outputs["value"] else {
        panic!("expected a string: {out}")
    };
    assert!(s.len() > 16 && s.chars().all(|c| c.is_ascii_digit()));
}

#[test]
fn domain_errors_exit_2() {
    let (code, _, err) = kparts(&[
        "compute", "--which", "p", "--n", "2", "--k", "3", "--method", "thm32",
    ]);
    assert_eq!(code, 2);
    assert_eq!(err.lines().count(), 1, "{err}");
    assert_eq!(
        kparts(&["compute", "--n", "8", "--k", "4", "--method", "prop34"]).0,
        2
    );
    assert_eq!(
        kparts(&["compute", "--n", "8", "--k", "3", "--method", "nope"]).0,
        2
    );
    assert_eq!(kparts(&["delta", "--k", "5"]).0, 2);
    assert_eq!(kparts(&["density", "--mods", "1"]).0, 2);
    assert_eq!(kparts(&["density", "--kmax", "6", "--N", "10"]).0, 2);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_kparts");
    let ok = Command::new(bin)
        .args(["compute", "--n", "8", "--k", "3"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "5\n");
    let bad = Command::new(bin)
        .args(["compute", "--n", "1", "--k", "3", "--method", "waves"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let help = Command::new(bin).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(0));
}

#[test]
fn delta_examples() {
    assert_eq!(stdout_of(&["delta", "--k", "1"]), "1/2\n");
    assert_eq!(stdout_of(&["delta", "--k", "2"]), "-1/14745600\n");
    let e = Envelope::from_json(&stdout_of(&["delta", "--k", "1", "--format", "json"])).unwrap();
    assert_eq!(e.outputs["delta"], Value::from("1/2"));
}

#[test]
fn fhist_k3() {
    let out = stdout_of(&["fhist", "--k", "3"]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("n,f"));
    let f: Vec<u64> = lines
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(f.len(), 13);
    assert_eq!(f.iter().sum::<u64>(), 36);
    assert!(f.iter().eq(f.iter().rev()));
}

#[test]
fn waves_k2_n7() {
    assert_eq!(
        stdout_of(&["waves", "--k", "2", "--n", "7"]),
        "W_1 = 17/4\nW_2 = -1/4\nsum = 4\n"
    );
    let e = Envelope::from_json(&stdout_of(&[
        "waves", "--k", "2", "--n", "7", "--format", "json",
    ]))
    .unwrap();
    assert_eq!(e.outputs["waves"]["2"], Value::from("-1/4"));
    assert_eq!(e.outputs["sum"], Value::from("4/1"));
}

#[test]
fn density_csv() {
    let out = stdout_of(&["density", "--kmax", "2", "--mods", "2", "--N", "1000"]);
    assert_eq!(
        out,
        "k,m,i,density_num,density_den,period,certified,bound_holds\n\
         1,2,0,0,1,1,true,true\n1,2,1,1,1,1,true,true\n\
         2,2,0,1,2,4,true,true\n2,2,1,1,2,4,true,true\n"
    );
}

#[test]
fn verify_examples() {
    for args in [
        &["verify", "--kmax", "3", "--nmax", "100"][..],
        &["verify", "--kmax", "1"][..],
        &["verify", "--kmax", "4", "--modules", "quasipoly"][..],
    ] {
        let (code, out, err) = kparts(args);
        assert_eq!(code, 0, "{args:?}\n{out}{err}");
        assert!(out.contains("summary:") && !out.contains("FAIL"), "{out}");
    }
    let out = stdout_of(&["verify", "--kmax", "4", "--modules", "quasipoly"]);
    assert!(out.contains("delta(k) != 0"));
    assert!(out.contains("printed sign/offset convention fails"));
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "--kmax", "4", "--nmax", "80"];
    assert_eq!(stdout_of(&args), stdout_of(&args));
}

fn golden(name: &str) -> GoldenDoc {
    let path = format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    GoldenDoc::from_json(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn golden_files_match() {
    for k in 1..=4 {
        assert_eq!(
            golden(&format!("delta_k{k}.json")).to_delta().unwrap(),
            delta_det(k),
            "k={k}"
        );
    }
    for k in 2..=3 {
        let qp = golden(&format!("constituents_k{k}.json"))
            .to_quasipoly()
            .unwrap();
        assert_eq!(qp, interp_constituents(k));
        let w = golden(&format!("waves_k{k}.json")).to_waves().unwrap();
        assert_eq!(w, waves_from_constituents(k).unwrap());
    }
    assert_eq!(golden("delta_k1.json").to_delta().unwrap(), rat(1, 2));
    let out = stdout_of(&["golden", "--kind", "delta", "--k", "2"]);
    assert_eq!(GoldenDoc::from_json(&out).unwrap(), golden("delta_k2.json"));
}

fn json_leaf() -> impl Strategy<Value = Value> {
    prop_oneof![
        (-(1i64 << 53)..=(1i64 << 53)).prop_map(Value::from),
        (any::<i64>(), 1..i64::MAX).prop_map(|(n, d)| Value::from(format!("{n}/{d}"))),
        "[a-z0-9 ,/_-]{0,12}".prop_map(Value::from),
        any::<bool>().prop_map(Value::from),
    ]
}

fn envelope() -> impl Strategy<Value = Envelope> {
    (
        "[a-z]{1,10}",
        prop::collection::btree_map("[a-z_]{1,8}", json_leaf(), 0..5),
        prop::collection::btree_map("[a-z_0-9]{1,8}", json_leaf(), 0..5),
        "[a-z0-9-]{0,12}",
        any::<u64>(),
    )
        .prop_map(
            |(command, inputs, outputs, provenance, timing_ms)| Envelope {
                command,
                inputs,
                outputs,
                provenance,
                timing_ms,
            },
        )
}

proptest! {
    #[test]
    fn envelopes_round_trip(e in envelope()) {
        prop_assert_eq!(Envelope::from_json(&e.to_json()).unwrap(), e);
    }

    #[test]
    fn fraction_strings_round_trip(n in any::<i64>(), d in 1..i64::MAX) {
        let r = rat(n, d);
        let s = kparts::cli::rat_string(&r);
        prop_assert_eq!(parse_rat(&s), Some(r));
    }
}
