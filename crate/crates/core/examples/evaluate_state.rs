// Every measure and bound for one hand-written qutrit state.
//
// ```bash
// cargo run --example evaluate_state
// ```

use qduality::cli::parse_matrix;
use qduality::states::validate;
use qduality::verify::evaluate;

const STATE: &str = "
0.5  0.2,0.1  0.1
0.2,-0.1  0.3  0
0.1  0  0.2
";

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let rho = validate(&parse_matrix(STATE)?)?;
    let rec = evaluate(&rho)?;
    for m in rec.measures() {
        println!("{:>13} = {:.10}", m.name, m.value);
    }
    for v in &rec.verdicts {
        println!("{:>8}: slack {:+.3e} {}", v.inequality, v.slack, if v.pass() { "ok" } else { "violated" });
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
