//! ON-structures, compatible O-operators and the hierarchies they generate.

use prelie::corpus_algebras::a2;
use prelie::operators::{check_compatible, check_on_structure, hierarchy, on_from_compatible, OnStructure};
use prelie::{Bimodule, Matrix, Result};

fn main() -> Result<()> {
    let dual = Bimodule::regular(&a2()).dual()?;
    let r = Matrix::from_ints(&[&[-2, 1], &[1, 0]]);
    let n = Matrix::from_ints(&[&[3, 4], &[0, 3]]);
    let os = OnStructure::new(dual.clone(), r.clone(), n.clone(), n.transpose())?;
    println!("{}", check_on_structure(&os)?);

    let h = hierarchy(&os, 3)?;
    println!("{}", h.report);

    let t2 = n.mul(&r);
    println!("{}", check_compatible(&dual, &t2, &r)?);
    let [first, _] = on_from_compatible(&dual, &t2, &r)?;
    println!("recovered N\n{}", first.n);
    Ok(())
}
