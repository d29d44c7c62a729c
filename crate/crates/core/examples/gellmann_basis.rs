// Builds the generalized Gell-Mann basis, expands a qutrit state in it and
// recovers the populations from the diagonal Bloch components.
//
// ```bash
// cargo run --example gellmann_basis
// ```

use qduality::gellmann::{bloch_from_populations, decompose, populations_from_bloch, reconstruct, GellMannBasis};
use qduality::rng::PortableRng;
use qduality::states::random_state;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let basis = GellMannBasis::new(3)?;
    println!("d = 3: {} generators", basis.len());
    for (kind, g) in basis.generators() {
        println!("{kind:?}: Tr(G^2) = {:.3}", qduality::linalg::hs_inner(g, g)?.re);
    }

    let mut rng = PortableRng::new(2024);
    let rho = random_state(3, 3, &mut rng)?;
    let c = decompose(rho.matrix(), &basis)?;
    println!("diagonal components {:?}", c.diag_coeffs);
    println!("off-diagonal weight {:.12} (equals C_hs)", c.off_diagonal_weight());

    let back = reconstruct(&c, &basis)?;
    println!("reconstruction error {:.2e}", back.max_abs_diff(rho.matrix()));

    let pops = rho.populations();
    let bloch = bloch_from_populations(&pops)?;
    let again = populations_from_bloch(&bloch)?;
    let err = pops.iter().zip(&again).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    println!("populations -> Bloch -> populations error {err:.2e}");
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
