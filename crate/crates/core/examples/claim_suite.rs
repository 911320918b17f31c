//! Runs the full claim suite for a prime `p` (default 5) and prints one line
//! per verdict followed by the exploratory homology table.
//!
//! ```bash
//! cargo run --release --example claim_suite -- 7
//! ```

use trisp_homology::verify::{run_paper_suite, SuiteOptions};

fn main() -> trisp_homology::Result<()> {
    let p = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("p must be an integer"))
        .unwrap_or(5);
    let started = std::time::Instant::now();
    let report = run_paper_suite(&SuiteOptions::new(p))?;
    for v in &report.verdicts {
        println!("{v}");
    }
    println!();
    for e in &report.exploratory {
        println!("{}  f = {:?}", e.subject, e.f_vector);
        println!("    {}", e.homology);
    }
    println!(
        "\n{} in {:.2?}",
        if report.passed() {
            "all claims pass"
        } else {
            "some claims FAIL"
        },
        started.elapsed()
    );
    Ok(())
}
