//! One line per acceptance criterion; exits nonzero if any fails.

use so3tqft::checks::{self, Scope};

const CRITERIA: [(u32, &str); 10] = [
    (1, "dims"),
    (2, "index-identity"),
    (3, "recoupling-oracle"),
    (4, "skein-lemmas"),
    (5, "lattice-duality"),
    (6, "lollipop-suite"),
    (7, "mapping-torus"),
    (8, "surgery-calibration"),
    (9, "fkb-l9a12"),
    (10, "torsion"),
];

fn main() {
    let scope = Scope { seed: 2024, samples: 100, ..Scope::default() };
    println!("acceptance seed={}", scope.seed);
    let mut failed = 0;
    for (n, key) in CRITERIA {
        let check = checks::find(key).expect("registered check");
        let o = checks::run(check, &scope);
        println!("criterion {n:>2} [{}] {key}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("{} of {} criteria pass", CRITERIA.len() - failed, CRITERIA.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
