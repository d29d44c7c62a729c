// Eigendecomposition, matrix square root and entropies of a random ququart.
//
// ```bash
// cargo run --example spectral_functions
// ```

use qduality::linalg::{hermitian_eig, spectral_apply};
use qduality::measures::{linear_entropy, von_neumann_entropy};
use qduality::rng::PortableRng;
use qduality::states::random_state;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = PortableRng::new(7);
    let rho = random_state(4, 3, &mut rng)?;
    let eig = hermitian_eig(rho.matrix())?;
    println!("eigenvalues {:?}", eig.eigenvalues);
    println!("rank {}", rho.numerical_rank());

    let root = rho.sqrt();
    let square = &root * &root;
    println!("|sqrt(rho)^2 - rho| = {:.2e}", square.max_abs_diff(rho.matrix()));

    let diag = root.diagonal();
    for (j, (s, p)) in diag.iter().zip(rho.populations()).enumerate() {
        println!("sqrt(rho)_{j}{j} = {s:.6} >= rho_{j}{j} = {p:.6}");
    }

    let log = spectral_apply(rho.matrix(), |x| if x > 0.0 { -x * x.ln() } else { 0.0 })?;
    println!("S_vn = {:.10} (trace of -rho ln rho = {:.10})", von_neumann_entropy(rho.matrix())?, log.trace().re);
    println!("S_l  = {:.10}", linear_entropy(rho.matrix())?);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
