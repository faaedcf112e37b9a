//! CLI output against golden/*.txt. Set KNOTMF_BLESS=1 to rewrite them.

use std::path::PathBuf;

use clap::Parser;
use knotmf::cli::{run, Cli};

const CASES: &[(&str, &[&str])] = &[
    ("homfly_unknot", &["homfly", "", "--strands", "1"]),
    ("homfly_unlink2", &["homfly", "", "--strands", "2"]),
    ("homfly_hopf", &["homfly", "1 1"]),
    ("homfly_trefoil", &["homfly", "1 1 1"]),
    ("homfly_trefoil_json", &["homfly", "1 1 1", "--format", "json"]),
    ("homfly_figure_eight", &["homfly", "1 -2 1 -2"]),
    ("homfly_mirror_trefoil", &["homfly", "-1 -1 -1"]),
    ("hecke_s1s2s1", &["hecke", "1 2 1"]),
    ("superpoly_unknot", &["superpoly", "--jm", "", "--order", "6"]),
    ("superpoly_hopf_residue", &["superpoly", "--jm", "1", "--mode", "residue", "--order", "6"]),
    ("superpoly_hopf_json", &["superpoly", "--jm", "1", "--order", "4", "--format", "json"]),
    ("tableaux_n4", &["tableaux", "--n", "4"]),
    ("verify_mf_suite", &["verify", "mf-suite"]),
];

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("golden")
}

#[test]
fn golden_outputs() {
    let bless = std::env::var("KNOTMF_BLESS").is_ok_and(|v| v == "1");
    let mut bad = Vec::new();
    for (name, args) in CASES {
        let mut argv = vec!["knotmf"];
        argv.extend_from_slice(args);
        let o = run(&Cli::try_parse_from(argv).unwrap());
        let text = format!("$ knotmf {}\nexit {}\n{}", args.iter().map(|a| format!("{a:?}")).collect::<Vec<_>>().join(" "), o.code, o.stdout);
        let path = golden_dir().join(format!("{name}.txt"));
        if bless {
            std::fs::write(&path, &text).unwrap();
            continue;
        }
        match std::fs::read_to_string(&path) {
            Ok(g) if g == text => {}
            Ok(_) => bad.push(format!("{name}: output differs")),
            Err(_) => bad.push(format!("{name}: missing {}", path.display())),
        }
    }
    assert!(bad.is_empty(), "{}", bad.join("\n"));
}
