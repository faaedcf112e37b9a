use std::process::{Command, Output};

fn knotmf(args: &[&str], seed: Option<&str>) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_knotmf"));
    c.args(args).env_remove("KNOTMF_SEED");
    if let Some(s) = seed {
        c.env("KNOTMF_SEED", s);
    }
    c.output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(code(&knotmf(&["homfly", "1 1 1"], None)), 0);
    assert_eq!(code(&knotmf(&["homfly", "0"], None)), 2);
    assert_eq!(code(&knotmf(&["homfly", "1 2 3 4 5 6 7"], None)), 3);
    assert_eq!(code(&knotmf(&["homfly", "1 2 3 4 5 6", "--force"], None)), 0);
    assert_eq!(code(&knotmf(&["nonsense"], None)), 2);
    assert_eq!(code(&knotmf(&["superpoly", "--jm", "1,1,1,1,1", "--mode", "residue"], None)), 3);
    assert_eq!(code(&knotmf(&["hecke", "--relations", "9"], None)), 3);
    assert_eq!(code(&knotmf(&["verify", "markov", "--samples", "3"], Some("x"))), 2);
}

#[test]
fn unknot_text() {
    let o = knotmf(&["homfly", "", "--strands", "1"], None);
    assert_eq!(String::from_utf8(o.stdout).unwrap().trim(), "(a - a^-1) / (q - q^-1)");
}

#[test]
fn seed_from_env_is_deterministic() {
    let a = knotmf(&["verify", "markov", "--samples", "5"], Some("11"));
    let b = knotmf(&["verify", "markov", "--samples", "5", "--seed", "11"], None);
    let c = knotmf(&["verify", "markov", "--samples", "5"], None);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    let r: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(r["seed"], 11);
    assert_eq!(r["passed"], true);
}

#[test]
fn homfly_json_round_trips() {
    let o = knotmf(&["homfly", "1 -2 1 -2", "--format", "json"], None);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let terms: Vec<knotmf::hecke::InvariantTerm> = serde_json::from_value(v["homflypt"].clone()).unwrap();
    let back = knotmf::hecke::InvariantValue::from_json(&terms).unwrap();
    let b = knotmf::braid::BraidWord::parse("1 -2 1 -2", None).unwrap();
    assert_eq!(back, knotmf::hecke::homflypt(&b));
}
