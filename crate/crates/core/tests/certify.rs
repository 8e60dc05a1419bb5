use std::io::Write as _;

use serde_json::Value;
use waring_syzygy::apolar::MatrixForm;
use waring_syzygy::certify::cli::run_with_args;
use waring_syzygy::certify::{
    cmd_rank14, cmd_rank15, compare_strand, rank14_certificate, CertifyOptions, FieldChoice,
    Verdict, SCHEMA,
};
use waring_syzygy::polyring::{Monomial, Poly};
use waring_syzygy::scalars::{Rational, Scalar};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("waring-syzygy").chain(args.iter().copied());
    let code = run_with_args(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn strip_timing(mut v: Value) -> Value {
    fn walk(v: &mut Value) {
        match v {
            Value::Object(m) => {
                m.remove("timing_ms");
                m.values_mut().for_each(walk);
            }
            Value::Array(a) => a.iter_mut().for_each(walk),
            _ => {}
        }
    }
    walk(&mut v);
    v
}

#[test]
fn rank14_both_forms_pass() {
    let opts = CertifyOptions::default();
    for (which, beta) in [(MatrixForm::Det, 100), (MatrixForm::Per, 116)] {
        let c = cmd_rank14(which, &opts).unwrap();
        assert_eq!(c.verdict, Verdict::Pass);
        assert_eq!(c.schema, SCHEMA);
        assert_eq!(c.step("betti").unwrap().computed["beta_5_6"], beta);
        assert_eq!(c.step("threshold").unwrap().computed["threshold"], 140);
    }
}

#[test]
fn strand_at_or_above_threshold_is_inconclusive() {
    assert_eq!(compare_strand(139, 140), Verdict::Pass);
    assert_eq!(compare_strand(140, 140), Verdict::Inconclusive);
    assert_eq!(compare_strand(200, 140), Verdict::Inconclusive);
}

#[test]
fn non_concise_form_does_not_pass() {
    // x1^3 + … + x8^3 in 9 variables misses x9
    let mut f = Poly::<Rational>::zero(9);
    for k in 0..8 {
        let mut e = vec![0u32; 9];
        e[k] = 3;
        f.add_term(Monomial::new(&e).unwrap(), Rational::one());
    }
    let c = rank14_certificate("sum of 8 cubes", &f, &CertifyOptions::default()).unwrap();
    assert_ne!(c.verdict, Verdict::Pass);
    assert_eq!(c.step("concise").unwrap().verdict, Verdict::Fail);
}

#[test]
fn rank15_passes_and_every_step_matters() {
    let opts = CertifyOptions::default();
    let c = cmd_rank15(&opts).unwrap();
    assert_eq!(c.verdict, Verdict::Pass, "{}", c.render_text());
    assert_eq!(c.label.as_deref(), Some("complete"));
    for s in [
        "case-zero",
        "case-rank1",
        "case-rank2",
        "case-rank3-generic",
    ] {
        assert_eq!(c.step(s).unwrap().computed["beta_5_6"], 100, "{s}");
    }
    for step in &c.steps {
        let forced = c
            .clone()
            .finish(Some(&step.name), std::time::Duration::ZERO);
        assert_eq!(forced.verdict, Verdict::Fail, "{}", step.name);
    }
    let injected = cmd_rank15(&CertifyOptions {
        inject_failure: Some("case-rank3-samples".into()),
        ..opts
    })
    .unwrap();
    assert_eq!(injected.verdict, Verdict::Fail);
    assert_eq!(injected.verdict.exit_code(), 1);
}

#[test]
fn rank15_over_prime_field_agrees() {
    let opts = CertifyOptions {
        field: FieldChoice::Prime(32003),
        ..Default::default()
    };
    let c = cmd_rank15(&opts).unwrap();
    assert_eq!(c.verdict, Verdict::Pass);
    assert_eq!(c.step("case-rank1").unwrap().computed["beta_5_6"], 100);
}

#[test]
fn reports_are_reproducible() {
    for args in [
        &["--format", "json", "rank15"][..],
        &["--format", "json", "points", "13", "--seed", "4"],
    ] {
        let (c1, a, _) = run(args);
        let (c2, b, _) = run(args);
        assert_eq!((c1, c2), (0, 0));
        let a: Value = serde_json::from_str(&a).unwrap();
        let b: Value = serde_json::from_str(&b).unwrap();
        assert_eq!(
            serde_json::to_string(&strip_timing(a)).unwrap(),
            serde_json::to_string(&strip_timing(b)).unwrap()
        );
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["rank14", "det3"]).0, 0);
    assert_eq!(run(&["rank14", "per3", "--inject-failure", "betti"]).0, 1);
    assert_eq!(run(&["no-such-command"]).0, 3);
    assert_eq!(run(&["--field", "fp:6", "rank14", "det3"]).0, 3);
    assert_eq!(run(&["--field", "fp:2", "rank14", "det3"]).0, 3);
    assert_eq!(run(&["verify", "/nonexistent/witness.json"]).0, 3);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn betti_command_outputs() {
    let (code, out, _) = run(&["betti", "per3", "--strand", "5", "6"]);
    assert_eq!(code, 0);
    assert!(out.contains("= 116"), "{out}");
    let (_, out, _) = run(&["--format", "json", "betti", "xyz"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    let entries = v["entries"].as_array().unwrap();
    let mut totals = [0u64; 4];
    for e in entries {
        totals[e["i"].as_u64().unwrap() as usize] += e["value"].as_u64().unwrap();
    }
    assert_eq!(totals, [1, 3, 3, 1]);
    let (_, out, _) = run(&[
        "betti",
        "det3",
        "--field",
        "cyclotomic6",
        "--strand",
        "5",
        "6",
    ]);
    assert!(out.contains("= 100"), "{out}");
    let (code, out, _) = run(&["betti", "det3"]);
    assert_eq!(code, 0);
    assert!(
        out.contains("total: 1 36 160 315 388 388 315 160 36 1"),
        "{out}"
    );
}

#[test]
fn threshold_command() {
    let (_, out, _) = run(&["--format", "json", "threshold", "9", "13", "5"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["threshold"], 140);
    assert_eq!(v["argmin_h"], serde_json::json!([1, 8, 4]));
    assert_eq!(v["hvectors"].as_array().unwrap().len(), 5);
    let (_, out, _) = run(&["--format", "json", "threshold", "9", "14", "5"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["threshold"], 70);
    assert_eq!(run(&["threshold", "9", "5", "5"]).0, 3);
}

#[test]
fn verify_command_detects_corruption() {
    let (code, out, _) = run(&["verify", "builtin:det3_18"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("rank <= 18"));
    let (code, out, _) = run(&["verify", "builtin:glynn_per3"]);
    assert_eq!(code, 0);
    assert!(out.contains("rank <= 16"));

    let json =
        waring_syzygy::witness::DET3_18_JSON.replacen("\"coeff\": \"1\"", "\"coeff\": \"-1\"", 1);
    let dir = std::env::temp_dir().join(format!("waring-syzygy-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("corrupt.json");
    std::fs::File::create(&path)
        .unwrap()
        .write_all(json.as_bytes())
        .unwrap();
    let (code, out, _) = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL") && out.contains("residual"), "{out}");

    let (code, out, _) = run(&["upper-bounds"]);
    assert_eq!(code, 0);
    for b in ["<= 24", "<= 20", "<= 18", "<= 16"] {
        assert!(out.contains(b), "{out}");
    }
}

#[test]
fn config_jobs() {
    let dir = std::env::temp_dir().join(format!("waring-syzygy-cfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let toml_path = dir.join("jobs.toml");
    std::fs::write(
        &toml_path,
        "[jobs]\nquick = [[\"threshold\", \"9\", \"13\", \"5\"], [\"rank14\", \"per3\"]]\n",
    )
    .unwrap();
    let cfg = toml_path.to_str().unwrap();
    let (code, out, _) = run(&["run", "quick", "--config", cfg]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("threshold 140") && out.contains("verdict: PASS"));
    let json_path = dir.join("jobs.json");
    std::fs::write(
        &json_path,
        r#"{"jobs": {"one": [["verify", "builtin:xyz"]]}}"#,
    )
    .unwrap();
    assert_eq!(
        run(&["run", "one", "--config", json_path.to_str().unwrap()]).0,
        0
    );
    assert_eq!(run(&["run", "missing", "--config", cfg]).0, 3);
}

#[test]
fn job_steps_keep_their_own_flags() {
    let dir = std::env::temp_dir().join(format!("waring-syzygy-flags-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("jobs.toml");
    std::fs::write(
        &path,
        "[jobs]\nbroken = [[\"rank14\", \"per3\", \"--inject-failure\", \"concise\"]]\n",
    )
    .unwrap();
    assert_eq!(
        run(&["run", "broken", "--config", path.to_str().unwrap()]).0,
        1
    );
    let (code, out, _) = run(&[
        "--field",
        "fp:101",
        "run",
        "broken",
        "--config",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 1);
    assert!(out.contains("field fp:101"), "{out}");
}
