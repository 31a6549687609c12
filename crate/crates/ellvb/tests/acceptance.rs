//! Acceptance suite: runs every criterion of the bundled manifest and prints
//! one line per criterion. A criterion passes when all of its checks match
//! their pinned values exactly and it finishes within its time budget.
//!
//! Runs without the libtest harness so the lines always show up.

use ellvb::manifest::{self, Manifest};

fn main() {
    let m = Manifest::bundled("acceptance").expect("bundled manifest");
    let results = manifest::run(&m, None).expect("manifest runs");
    let mut failed = 0;
    for r in &results {
        let ok = r.passed && r.within_budget();
        if !ok {
            failed += 1;
        }
        let checks = r.checks.iter().filter(|c| c.passed).count();
        println!(
            "{} criterion {}: {} [{}/{} checks exact; {:.2} s of {} s]",
            if ok { "PASS" } else { "FAIL" },
            r.id,
            r.title,
            checks,
            r.checks.len(),
            r.seconds,
            r.budget_seconds
        );
        for c in r.checks.iter().filter(|c| !c.passed) {
            let what = c.error.clone().unwrap_or_else(|| format!("expected {} got {}", c.expected, c.actual));
            let tag = if c.informational { "flag" } else { "fail" };
            println!("    {tag} {}: {what}", c.name);
        }
    }
    assert_eq!(results.len(), 9, "the manifest must cover criteria 1-9");
    if failed > 0 {
        eprintln!("{failed} criterion/criteria failed");
        std::process::exit(1);
    }
}
