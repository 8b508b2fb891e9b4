//! s-matrices, pseudo-Hessian forms and the KVN, HN and KVB structures,
//! with the conversions between them.

use prelie::corpus_algebras::{a2, a3n};
use prelie::structures::{
    check_hn, check_kvb, check_kvn, check_s_matrix, hn_from_kvb, kvn_from_hn, kvn_from_kvb, r_hierarchy, SymForm2,
    SymTensor2,
};
use prelie::{Matrix, Result};

fn main() -> Result<()> {
    let g = a2();
    let b = SymForm2::new(Matrix::from_ints(&[&[0, 1], &[1, 2]]))?;
    let n = Matrix::from_ints(&[&[3, 4], &[0, 3]]);
    println!("{}", check_hn(&g, &b, &n)?);

    let (r, n) = kvn_from_hn(&g, &b, &n)?;
    println!("r = B⁻¹\n{}", r.matrix());
    println!("{}", check_s_matrix(&g, &r)?);
    println!("{}", check_kvn(&g, &r, &n)?);
    println!("{}", r_hierarchy(&g, &r, &n, 2)?.report);

    // A degenerate form still gives a KVN structure, but no HN structure.
    let h = a3n();
    let r = SymTensor2::new(Matrix::from_ints(&[&[5, 7, 11], &[7, 0, 0], &[11, 0, 0]]))?;
    let b = SymForm2::new(Matrix::from_ints(&[&[0, 0, 0], &[0, 1, 2], &[0, 2, 3]]))?;
    println!("{}", check_kvb(&h, &r, &b)?);
    let (_, n) = kvn_from_kvb(&h, &r, &b)?;
    println!("N = r♯B♮\n{n}");
    println!("HN from a degenerate form: {:?}", hn_from_kvb(&h, &r, &b).err());
    Ok(())
}
