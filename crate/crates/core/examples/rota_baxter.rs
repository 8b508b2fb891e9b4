//! Rota-Baxter operators and O-operators with their induced pre-Lie products.

use prelie::corpus_algebras::{a2, a3h};
use prelie::operators::{check_o_operator, check_rota_baxter, induced_pre_lie};
use prelie::{Bimodule, Matrix, Result};

fn main() -> Result<()> {
    let r = Matrix::from_ints(&[&[0, 0, 0], &[1, 2, 0], &[3, 5, 0]]);
    println!("{}", check_rota_baxter(&a3h(), &r)?);
    let induced = induced_pre_lie(&Bimodule::regular(&a3h()), &r)?;
    println!("u ·^R v is pre-Lie: {}", induced.is_pre_lie());

    // r: g* → g on the coregular bimodule.
    let dual = Bimodule::regular(&a2()).dual()?;
    let t = Matrix::from_ints(&[&[-2, 1], &[1, 0]]);
    println!("{}", check_o_operator(&dual, &t)?);
    Ok(())
}
