//! Cochains, the Matsushima-Nijenhuis bracket, coboundaries and cohomology.

use prelie::cochain::{cohomology_dims, delta, mn_bracket, Cochain};
use prelie::corpus_algebras::{a2, a3h};
use prelie::{Bimodule, Matrix, Result};

fn main() -> Result<()> {
    let g = a2();
    let mu = Cochain::from_tensor(g.products());
    // A product is pre-Lie exactly when it squares to zero.
    println!("[μ, μ] = 0: {}", mn_bracket(&mu, &mu)?.is_zero());

    let n = Cochain::from_matrix(&Matrix::from_ints(&[&[3, 4], &[0, 3]]));
    let b = Bimodule::regular(&g);
    let d = delta(&b, &n)?;
    println!("δN = [μ, N]: {}", d == mn_bracket(&mu, &n)?);
    println!("δδN = 0: {}", delta(&b, &d)?.is_zero());

    for (name, b) in [("A2", Bimodule::regular(&g)), ("A3h", Bimodule::regular(&a3h()))] {
        for row in cohomology_dims(&b, 3) {
            println!("{name}: dim H^{} = {}", row.n, row.dim);
        }
    }
    Ok(())
}
