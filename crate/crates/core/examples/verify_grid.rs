//! Sweep identities over parameter grids, in parallel, and catch a planted error.
//!
//! cargo run --example verify_grid

use trisum::identities::{
    default_grid, first_counterexample, parse_grid_file, verify_with, IdentityId, RhsMutation,
    VerifyOptions,
};

const GRID: &str = r#"[
  {"identity": "AP", "t": {"from": 1, "to": 6}, "r": {"from": -4, "to": 4},
   "x": ["1", "-1", "1/2", "2/3"], "k": {"from": 0, "to": 8}},
  {"identity": "D2", "r": {"from": -6, "to": 6, "exclude": [-4, -1, 0]},
   "m": {"from": 0, "to": 4}, "k": {"from": 0, "to": 4}}
]"#;

fn main() -> trisum::Result<()> {
    let opts = VerifyOptions {
        jobs: 4,
        ..VerifyOptions::default()
    };
    for entry in parse_grid_file(GRID)? {
        let report = verify_with(entry.identity, &entry.grid, &opts)?;
        println!(
            "{}: {} checked, {} skipped, {} counterexamples in {:.1?}",
            report.identity,
            report.instances_checked,
            report.skipped.len(),
            report.counterexamples.len(),
            report.elapsed
        );
        if let Some(s) = report.skipped.first() {
            println!("  first skip: {} ({})", s.reason, s.status.as_str());
        }
    }

    let id = IdentityId::J1;
    let planted = RhsMutation {
        identity: id,
        term: 1,
    };
    match first_counterexample(id, default_grid(id), Some(planted))? {
        Some(c) => println!(
            "planted sign flip found at {:?}: {} vs {}",
            c.params.to_strings(),
            c.lhs,
            c.rhs
        ),
        None => println!("planted sign flip missed"),
    }
    Ok(())
}
