use std::process::Command;

use cupkernel_cli::rings::{evaluate, CoeffName, RingName};
use cupkernel_cli::{run, Outcome};
use proptest::prelude::*;
use serde_json::Value;

fn cli(args: &[&str]) -> Outcome {
    run(std::iter::once("cupkernel").chain(args.iter().copied()))
}

fn json(out: &Outcome) -> Value {
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("not JSON ({e}): {}", out.stdout))
}

fn normal_form(args: &[&str]) -> String {
    let out = cli(args);
    assert_eq!(out.code, 0, "{}", out.stderr);
    json(&out)["results"]["normal_form"].as_str().unwrap().to_string()
}

#[test]
fn eval_examples() {
    assert_eq!(normal_form(&["eval", "--ring", "ps5", "c1^2*c2*h^16"]), "c1^4*c2*h^14");
    assert_eq!(normal_form(&["eval", "--ring", "gr35", "c1*c2^2"]), "0");
    assert_eq!(normal_form(&["eval", "--ring", "gr35", "c1^4 + c1^2*c2 + c2^2"]), "0");
    assert_eq!(normal_form(&["eval", "--ring", "gr35", "c3 + c1^3"]), "0");
    assert_eq!(normal_form(&["eval", "--ring", "schubert", "--coeff", "z", "s[1]^6"]), "5*s[2,2,2]");
    assert_eq!(normal_form(&["eval", "--ring", "schubert", "s[1]^6"]), "s[2,2,2]");
    assert_eq!(normal_form(&["eval", "--ring", "schubert", "--coeff", "z", "s[1]*s[1] - s[2]"]), "s[1,1]");
    assert_eq!(normal_form(&["eval", "--ring", "schubert", "s[3]"]), "0");
}

#[test]
fn integer_presentation_keeps_signs() {
    // Over Z the first relation of Gr(3,5) is c1^3 - 2 c1 c2 + c3 = 0 in degree 3.
    let z = normal_form(&["eval", "--ring", "gr35", "--coeff", "z", "c1^3 - 2*c1*c2 + c3"]);
    assert_eq!(z, "0");
    let top = normal_form(&["eval", "--ring", "gr35", "--coeff", "z", "c1^6"]);
    assert_ne!(top, "0");
}

#[test]
fn bound_examples() {
    let out = cli(&["bound", "--n", "2", "--q", "5"]);
    assert_eq!(out.code, 0);
    let v = json(&out);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "bound");
    assert_eq!(v["results"]["kernel"]["total_bound"], 14);
    assert_eq!(v["results"]["kernel"]["b2_lower"], 31);
    assert_eq!(v["results"]["pi1"]["rho_minus_gamma_lower"], 21);
    assert_eq!(v["results"]["pi1"]["stated_rho_minus_gamma"], 31);
    assert_eq!(v["results"]["pi1"]["discrepancy"], true);
    assert!(v.get("timing_ms").is_none());

    let v = json(&cli(&["bound", "--n", "2", "--q", "4"]));
    assert_eq!(v["results"]["kernel"]["total_bound"], 7);
    assert_eq!(v["results"]["pi1"]["rho_minus_gamma_lower"], 13);
    assert_eq!(v["results"]["pi1"]["c2_lower"], 7);

    let v = json(&cli(&["bound", "--n", "3", "--q", "5"]));
    assert_eq!(v["results"]["kernel"]["total_bound"], 0);
    assert_eq!(v["results"]["kernel"]["applicable_case"], "injective");
}

#[test]
fn dtable_examples() {
    let v = json(&cli(&["dtable", "--q", "3", "--m", "4"]));
    assert_eq!((v["results"]["lower"].clone(), v["results"]["upper"].clone()), (0.into(), 0.into()));
    let v = json(&cli(&["dtable", "--q", "4", "--m", "4"]));
    assert_eq!(v["results"]["upper"], 5);
    assert_eq!(v["results"]["provenance"], "adams-formula");
    let v = json(&cli(&["dtable", "--q", "5", "--m", "4"]));
    assert_eq!((v["results"]["lower"].clone(), v["results"]["upper"].clone()), (7.into(), 8.into()));
    let cited = v["provenance"].as_array().unwrap().iter().all(|s| s["evidence"] == "cited");
    assert!(cited, "nothing was verified in this run");
}

#[test]
fn dtable_verify_upgrades_evidence() {
    let v = json(&cli(&["dtable", "--q", "5", "--m", "4", "--verify"]));
    let sources = v["provenance"].as_array().unwrap();
    assert!(!sources.is_empty());
    assert!(sources.iter().all(|s| s["evidence"] == "verified"), "{sources:?}");
}

#[test]
fn surface_examples() {
    let v = json(&cli(&["surface", "--q", "4", "--pg", "5", "--k2min", "16", "--c2min", "7"]));
    assert_eq!(v["results"]["surface"]["k2_window"], serde_json::json!([16, 17]));
    assert_eq!(v["results"]["surface"]["miyaoka_bound"], 18);
    let v = json(&cli(&["surface", "--q", "4", "--pg", "5", "--k2min", "16", "--c2min", "8"]));
    assert_eq!(v["results"]["surface"]["k2_window"], serde_json::json!([16, 16]));
    let v = json(&cli(&["surface", "--q", "4", "--pg", "5", "--k2min", "0", "--c2min", "0"]));
    assert_eq!(v["results"]["surface"]["k2_window"], serde_json::json!([0, 24]));
    // c2 defaults to the bound implied by the kernel bound (7 for q = 4).
    let v = json(&cli(&["surface", "--q", "4", "--pg", "5", "--k2min", "16"]));
    assert_eq!(v["inputs"]["c2min"], 7);
}

#[test]
fn empty_window_is_exit_one() {
    let out = cli(&["surface", "--q", "4", "--pg", "5", "--k2min", "20", "--c2min", "7"]);
    assert_eq!(out.code, 1);
    let v = json(&out);
    assert!(v["error"]["message"].as_str().unwrap().contains("window"));
    assert!(v.get("results").is_none());
    assert!(!out.stderr.is_empty());
}

#[test]
fn usage_errors_are_exit_two() {
    assert_eq!(cli(&["bound", "--n", "2"]).code, 2);
    assert_eq!(cli(&["bound", "--n", "2", "--q", "5", "--frobnicate"]).code, 2);
    assert_eq!(cli(&["eval", "--ring", "gr36", "c1"]).code, 2);
    assert_eq!(cli(&["nonsense"]).code, 2);
    assert_eq!(cli(&[]).code, 2);
    let help = cli(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("Usage"));
}

#[test]
fn parse_errors_report_positions() {
    let out = cli(&["eval", "--ring", "gr35", "c1 - c2"]);
    assert_eq!(out.code, 2);
    let v = json(&out);
    assert_eq!(v["error"]["position"], 3);
    assert!(v["error"]["message"].as_str().unwrap().contains("subtraction"));

    let v = json(&cli(&["eval", "--ring", "ps5", "c1*(h + c2"]));
    assert_eq!(v["error"]["position"], 10);
    let v = json(&cli(&["eval", "--ring", "ps5", "c1*x"]));
    assert_eq!(v["error"]["position"], 3);
    assert!(v["error"]["message"].as_str().unwrap().contains("unknown variable"));
    let v = json(&cli(&["eval", "--ring", "gr35", "s[1]"]));
    assert_eq!(v["error"]["position"], 0);
}

#[test]
fn timing_only_on_request() {
    let v = json(&cli(&["--timing", "bound", "--n", "2", "--q", "4"]));
    assert!(v["timing_ms"].is_u64());
    let v = json(&cli(&["bound", "--n", "2", "--q", "4", "--timing"]));
    assert!(v["timing_ms"].is_u64());
}

#[test]
fn clifford_and_family_commands() {
    let out = cli(&["hermitian", "clifford", "--q", "8", "--trials", "50"]);
    assert_eq!(out.code, 0);
    let v = json(&out);
    assert_eq!(v["results"]["family_size"], 7);
    assert_eq!(v["results"]["verification"]["passed"], true);
    assert_eq!(v["seed"], cupkernel_core::hermitian::DEFAULT_SEED);

    let out = cli(&["hermitian", "verify-family", "--trials", "200", "--seed", "11"]);
    assert_eq!(out.code, 0);
    let v = json(&out);
    assert_eq!(v["seed"], 11);
    assert_eq!(v["results"]["min_rank"], 4);
    assert_eq!(v["results"]["passed"], true);
}

#[test]
fn seed_from_environment() {
    let bin = env!("CARGO_BIN_EXE_cupkernel");
    let out = Command::new(bin)
        .args(["hermitian", "verify-family", "--trials", "20"])
        .env("CUPKERNEL_SEED", "99")
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["seed"], 99);
    // An explicit flag wins over the environment.
    let out = Command::new(bin)
        .args(["hermitian", "verify-family", "--trials", "20", "--seed", "5"])
        .env("CUPKERNEL_SEED", "99")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["seed"], 5);
}

#[test]
fn binary_exit_codes_and_streams() {
    let bin = env!("CARGO_BIN_EXE_cupkernel");
    let out = Command::new(bin).args(["eval", "--ring", "gr35", "c1 -"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(serde_json::from_slice::<Value>(&out.stdout).is_ok());
    assert!(!out.stderr.is_empty());
    let out = Command::new(bin).args(["--bogus"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn report_fields() {
    let out = cli(&["report", "section3", "--trials", "300"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v = json(&out);
    let r = &v["results"];
    assert_eq!(r["euler_parity"], "odd");
    assert_eq!(r["degree_V53"]["degree"], 50);
    assert_eq!(r["e4"], "h^4 + c1*h^3 + c2*h^2 + c1^2*h^2 + c1*c2*h + c1^3*h + c1^4");
    assert_eq!(r["d54_lower"], 7);
    assert_eq!(r["d54_upper"], 8);
    assert_eq!(v["inputs"]["trials"], 300);
}

fn monomial(ring: RingName) -> impl Strategy<Value = String> {
    let vars: &'static [&'static str] = match ring {
        RingName::Gr35 => &["c1", "c2", "c3"],
        _ => &["c1", "c2", "c3", "h"],
    };
    prop::collection::vec((prop::sample::select(vars), 1u32..5), 1..4).prop_map(|factors| {
        factors
            .iter()
            .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect::<Vec<_>>()
            .join("*")
    })
}

fn expression(ring: RingName) -> impl Strategy<Value = String> {
    prop::collection::vec(monomial(ring), 1..5).prop_map(|ms| ms.join(" + "))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gr35_output_reparses_to_itself(src in expression(RingName::Gr35)) {
        for coeff in [CoeffName::Z2, CoeffName::Z] {
            let nf = evaluate(RingName::Gr35, coeff, &src).unwrap();
            prop_assert_eq!(evaluate(RingName::Gr35, coeff, &nf).unwrap(), nf);
        }
    }

    #[test]
    fn ps5_output_reparses_to_itself(src in expression(RingName::Ps5)) {
        let nf = evaluate(RingName::Ps5, CoeffName::Z2, &src).unwrap();
        prop_assert_eq!(evaluate(RingName::Ps5, CoeffName::Z2, &nf).unwrap(), nf);
    }

    #[test]
    fn schubert_output_reparses_to_itself(parts in prop::collection::vec(prop::collection::vec(0u32..3, 0..3), 1..4)) {
        let src = parts
            .iter()
            .map(|p| {
                let mut p = p.clone();
                p.sort_unstable_by(|a, b| b.cmp(a));
                p.retain(|&x| x > 0);
                format!("s[{}]", p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            })
            .collect::<Vec<_>>()
            .join("*");
        for coeff in [CoeffName::Z2, CoeffName::Z] {
            let nf = evaluate(RingName::Schubert, coeff, &src).unwrap();
            let again = evaluate(RingName::Schubert, coeff, &nf).unwrap();
            prop_assert_eq!(again, nf);
        }
    }

    #[test]
    fn addition_commutes(a in expression(RingName::Ps5), b in expression(RingName::Ps5)) {
        let ab = evaluate(RingName::Ps5, CoeffName::Z2, &format!("{a} + {b}")).unwrap();
        let ba = evaluate(RingName::Ps5, CoeffName::Z2, &format!("({b}) + ({a})")).unwrap();
        prop_assert_eq!(ab, ba);
    }
}
