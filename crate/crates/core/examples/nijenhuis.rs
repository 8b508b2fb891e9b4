//! Nijenhuis operators on a 2-dimensional pre-Lie algebra and the tower of
//! deformed products they generate.

use prelie::corpus_algebras::a2;
use prelie::operators::{check_nijenhuis, deformed_product, nijenhuis_tower};
use prelie::{Matrix, Result};

fn main() -> Result<()> {
    let g = a2();
    let n = Matrix::from_ints(&[&[3, 4], &[0, 3]]);
    println!("{}", check_nijenhuis(&g, &n)?);

    let deformed = deformed_product(&g, &n)?;
    println!("x ·_N y is pre-Lie: {}", deformed.is_pre_lie());
    println!("{}", nijenhuis_tower(&g, &n, 3)?);

    let bad = Matrix::from_ints(&[&[0, 1], &[1, 0]]);
    println!("{}", check_nijenhuis(&g, &bad)?);
    Ok(())
}
