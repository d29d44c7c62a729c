// Complementarity sums along the Werner ququart family.
//
// ```bash
// cargo run --example werner_sweep
// ```

use qduality::verify::{a_grid, werner_sweep};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let rows = werner_sweep(&[0.0, 0.5, 1.0], &a_grid(11)?)?;
    println!("{:>4} {:>4} {:>10} {:>10} {:>10}", "w", "a", "C+P_l", "C+P_vn", "Cl1+Pl1");
    for row in &rows {
        let r = &row.record;
        println!(
            "{:>4.1} {:>4.1} {:>10.6} {:>10.6} {:>10.6}",
            row.w,
            row.a,
            r.chs_plus_phs_l(),
            r.chs_plus_phs_vn(),
            r.cl1_plus_pl1()
        );
    }
    println!("bounds: 3/4, ln 4 = {:.6}, 3", 4f64.ln());
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
