//! Strong Maurer-Cartan elements on the twilled algebra of a Rota-Baxter
//! operator, and the ON-structures they produce.

use prelie::corpus_algebras::a3h;
use prelie::twilled::{
    check_rb_strong_mc, check_strong_mc, hierarchy_from_mc, omega_twist, on_from_mc, twilled_from_o_operator,
};
use prelie::{Bimodule, Matrix, Result};

fn main() -> Result<()> {
    let g = a3h();
    let b = Bimodule::regular(&g);
    let r = Matrix::from_ints(&[&[0, 0, 0], &[1, 2, 0], &[3, 5, 0]]);
    let omega = Matrix::from_ints(&[&[0, 0, 0], &[0, 0, 0], &[0, 7, 0]]);

    let tw = twilled_from_o_operator(&b, &r)?;
    println!("{}", check_strong_mc(&tw, &omega)?);
    println!("{}", check_rb_strong_mc(&g, &r, &omega)?);
    println!("{}", omega_twist(&b, &r, &omega)?.report);

    let (on_v, on_g) = on_from_mc(&b, &r, &omega)?;
    println!("N = RΩ\n{}", on_v.n);
    println!("S = ΩR\n{}", on_v.s);
    println!("second structure has T = Ω: {}", on_g.t == omega);
    println!("{}", hierarchy_from_mc(&b, &r, &omega, 2)?);
    Ok(())
}
