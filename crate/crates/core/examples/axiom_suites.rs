// Numerical spot checks of the wave and particle criteria at d = 3.
//
// ```bash
// cargo run --release --example axiom_suites
// ```

use qduality::measures::Measure;
use qduality::verify::{axiom_suite_predictability, axiom_suite_wave};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for m in Measure::WAVE {
        for r in axiom_suite_wave(m, 3, 100, 5)? {
            println!("{:>7} {} violations {} worst slack {:+.2e}", m, r.axiom, r.violations, r.worst_slack);
        }
    }
    for m in Measure::PARTICLE {
        for r in axiom_suite_predictability(m, 3, 100, 5)? {
            println!("{:>7} {} violations {} worst slack {:+.2e}", m, r.axiom, r.violations, r.worst_slack);
        }
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
