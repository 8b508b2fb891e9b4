//! Exhaustive operator enumeration, cocycle spaces and parameter-family
//! verification by sampling.

use prelie::corpus_algebras::{a2, a3h};
use prelie::expr::Expr;
use prelie::operators::check_rota_baxter;
use prelie::search::{
    enumerate_operators, search_strong_mc, solve_cocycle_space, verify_family, Family, SearchConfig, Target,
};
use prelie::twilled::twilled_from_o_operator;
use prelie::{Bimodule, Matrix, Result};

fn main() -> Result<()> {
    let cfg = SearchConfig::default();
    let found = enumerate_operators(&Target::Nijenhuis(&a2()), &cfg)?;
    println!("{} Nijenhuis operators on A2 with entries in {{-1, 0, 1}}", found.len());

    let r = Matrix::from_ints(&[&[0, 0, 0], &[1, 2, 0], &[3, 5, 0]]);
    let tw = twilled_from_o_operator(&Bimodule::regular(&a3h()), &r)?;
    for m in solve_cocycle_space(&tw) {
        println!("cocycle basis element\n{m}");
    }
    println!("{} strong MC solutions on the coefficient grid", search_strong_mc(&tw, &cfg)?.len());

    // R = [[0,0,0],[0,0,0],[a,b,c]] is Rota-Baxter whenever c ≠ 0.
    let family = Family {
        params: vec!["a".into(), "b".into(), "c".into()],
        nonzero: vec![Expr::parse("c").expect("valid")],
        check: Box::new(|env| {
            let at = |k: &str| env[k].clone();
            let z = prelie::Scalar::zero;
            let r = Matrix::from_rows(vec![vec![z(), z(), z()], vec![z(), z(), z()], vec![at("a"), at("b"), at("c")]])?;
            Ok(check_rota_baxter(&a3h(), &r)?.holds)
        }),
    };
    println!("{}", verify_family(&family, &cfg)?.report.notes.join("; "));
    Ok(())
}
