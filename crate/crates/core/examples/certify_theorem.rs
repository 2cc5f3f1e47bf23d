//! Runs the chain construction for n = 1, 2, 3 and prints each check.

use racolour::pipeline::{certify, Policy};
use racolour::search::SearchBudget;

fn main() {
    let budget = SearchBudget::default();
    for n in 1..=3 {
        let run = certify(n, Policy::MaxSymmetry, &budget).unwrap();
        let c = &run.certificate;
        println!(
            "n = {n}: P has {} faces, Q has {} facets",
            c.evaluation.p.facets, c.evaluation.q.facets
        );
        for check in &c.evaluation.checks {
            println!(
                "  [{}] {} {}",
                if check.passed { "ok" } else { "FAIL" },
                check.name,
                check.detail
            );
        }
        for claim in &c.claims {
            println!("  claimed: {}\n  computed: {}", claim.claim, claim.computed);
        }
    }
}
