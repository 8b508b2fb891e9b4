use super::{twilled_from_o_operator, TwilledAlgebra};
use crate::algebra::{Algebra, Bimodule};
use crate::cochain::{horizontal_lift, mn_bracket, Block, BlockMap, BlockShape, Cochain};
use crate::error::{Error, Result};
use crate::linalg::matrix::{vec_add, vec_sub};
use crate::linalg::{Matrix, Scalar};
use crate::operators::{check_rota_baxter, expect_shape, pairs};
use crate::report::Report;

fn shape(degree: usize) -> BlockShape {
    BlockShape::new(degree - 1, 0, Block::G1, Block::G2)
}

/// The horizontal lift of a `g₂`-valued cochain on `g₁`.
pub fn lift_to_big(tw: &TwilledAlgebra, f: &Cochain) -> Result<Cochain> {
    let (n1, n2) = tw.dims();
    if f.dim() != n1 || f.target() != n2 {
        return Err(Error::SpaceMismatch(format!(
            "expected a cochain on a {n1}-dimensional space with values in dimension {n2}"
        )));
    }
    let bm = BlockMap::from_fn(n1, n2, shape(f.degree()), |xs, _, last| {
        let mut key = xs.to_vec();
        key.push(last);
        f.eval_basis(&key)
    });
    Ok(horizontal_lift(&bm).cochain)
}

/// The `∧g₁ ⊗ g₁ → g₂` component of a cochain on `g₁ ⊕ g₂`.
pub fn project_from_big(tw: &TwilledAlgebra, c: &Cochain) -> Result<Cochain> {
    let (n1, n2) = tw.dims();
    let bm = BlockMap::restrict(c, n1, shape(c.degree()))?;
    Ok(Cochain::from_fn(n1, n2, c.degree(), |key| {
        let (prefix, last) = key.split_at(key.len() - 1);
        bm.eval_local(prefix, &[], last[0])
    }))
}

/// `d_{μ̂₁} f = [μ̂₁, f̂]`.
pub fn d_mu1(tw: &TwilledAlgebra, f: &Cochain) -> Result<Cochain> {
    let mu1 = Cochain::from_tensor(tw.mu1().products());
    project_from_big(tw, &mn_bracket(&mu1, &lift_to_big(tw, f)?)?)
}

/// `[f₁, f₂]_{μ̂₂} = (−1)^{m−1}[[μ̂₂, f̂₁], f̂₂]` for `f₁` of degree `m`.
pub fn bracket_mu2(tw: &TwilledAlgebra, f1: &Cochain, f2: &Cochain) -> Result<Cochain> {
    let mu2 = Cochain::from_tensor(tw.mu2().products());
    let inner = mn_bracket(&mu2, &lift_to_big(tw, f1)?)?;
    let outer = mn_bracket(&inner, &lift_to_big(tw, f2)?)?;
    Ok(project_from_big(tw, &outer)?.scale(&Scalar::sign(f1.degree() - 1)))
}

fn check_omega_shape(tw: &TwilledAlgebra, omega: &Matrix) -> Result<()> {
    let (n1, n2) = tw.dims();
    expect_shape(omega, n2, n1, "Ω").map_err(|e| Error::SpaceMismatch(e.to_string()))
}

/// `Ω(x⋄₁y) = 𝓛¹_xΩ(y) + 𝓡¹_yΩ(x)` residual at `(x, y)`.
fn cocycle_residual(tw: &TwilledAlgebra, omega: &Matrix, i: usize, j: usize) -> Vec<Scalar> {
    let lhs = omega.apply(&tw.diamond1().basis_product(i, j));
    let rhs = vec_add(&tw.l1()[i].apply(&omega.column(j)), &tw.r1()[j].apply(&omega.column(i)));
    vec_sub(&lhs, &rhs)
}

/// `Ω(x)⋄₂Ω(y) = Ω(𝓛²_{Ω(x)}y + 𝓡²_{Ω(y)}x)` residual at `(x, y)`.
fn quadratic_residual(tw: &TwilledAlgebra, omega: &Matrix, i: usize, j: usize) -> Vec<Scalar> {
    let g1 = tw.g1_over_g2().expect("validated at construction");
    let (ox, oy) = (omega.column(i), omega.column(j));
    let lhs = tw.diamond2().mul(&ox, &oy);
    let inner = vec_add(&g1.left_of(&ox).column(j), &g1.right_of(&oy).column(i));
    vec_sub(&lhs, &omega.apply(&inner))
}

/// The Maurer-Cartan equation `d Ω̂ + ½[Ω̂, Ω̂] = 0`, checked componentwise and
/// through the cochain calculus.
pub fn check_mc(tw: &TwilledAlgebra, omega: &Matrix) -> Result<Report> {
    check_omega_shape(tw, omega)?;
    let n1 = tw.dims().0;
    let r = Report::scan(
        "Maurer-Cartan",
        pairs(n1).map(|(i, j)| {
            let q = quadratic_residual(tw, omega, i, j);
            let c = cocycle_residual(tw, omega, i, j);
            // d Ω̂ carries the opposite sign of the cocycle residual.
            (vec![i, j], vec_sub(&q, &c))
        }),
    );
    let o = Cochain::from_matrix(omega);
    let half = Scalar::ratio(1, 2);
    let total = d_mu1(tw, &o)?.add(&bracket_mu2(tw, &o, &o)?.scale(&half))?;
    Ok(r.cross_check(total.is_zero()))
}

/// Strong Maurer-Cartan: the cocycle part and the quadratic part vanish
/// separately. The second route evaluates `d_{μ̂₁}Ω̂` and `[Ω̂, Ω̂]_{μ̂₂}`.
pub fn check_strong_mc(tw: &TwilledAlgebra, omega: &Matrix) -> Result<Report> {
    check_omega_shape(tw, omega)?;
    let n1 = tw.dims().0;
    let mut r = Report::pass("strong Maurer-Cartan");
    r.add(
        "cocycle part",
        &Report::scan("cocycle", pairs(n1).map(|(i, j)| (vec![i, j], cocycle_residual(tw, omega, i, j)))),
    );
    r.add(
        "quadratic part",
        &Report::scan("quadratic", pairs(n1).map(|(i, j)| (vec![i, j], quadratic_residual(tw, omega, i, j)))),
    );
    let o = Cochain::from_matrix(omega);
    let routes = d_mu1(tw, &o)?.is_zero() && bracket_mu2(tw, &o, &o)?.is_zero();
    Ok(r.cross_check(routes))
}

/// `Ω` and `ΩRΩ` are derivations of `g`, for a Rota-Baxter operator `R`.
/// The second route runs the strong Maurer-Cartan check on `g ⋈ g_R`.
pub fn check_rb_strong_mc(alg: &Algebra, r: &Matrix, omega: &Matrix) -> Result<Report> {
    if !check_rota_baxter(alg, r)?.holds {
        return Err(Error::NotRotaBaxter);
    }
    let d = alg.dim();
    expect_shape(omega, d, d, "Ω")?;
    let derivation = |name: &str, m: &Matrix| {
        Report::scan(
            name,
            pairs(d).map(|(i, j)| {
                let lhs = m.apply(&alg.basis_product(i, j));
                let rhs = vec_add(
                    &alg.mul(&m.column(i), &crate::linalg::matrix::unit_vector(d, j)),
                    &alg.mul(&crate::linalg::matrix::unit_vector(d, i), &m.column(j)),
                );
                (vec![i, j], vec_sub(&lhs, &rhs))
            }),
        )
    };
    let mut rep = Report::pass("Rota-Baxter strong Maurer-Cartan");
    rep.add("Ω derivation", &derivation("Ω", omega));
    rep.add("ΩRΩ derivation", &derivation("ΩRΩ", &omega.mul(r).mul(omega)));
    let tw = twilled_from_o_operator(&Bimodule::regular(alg), r)?;
    let other = check_strong_mc(&tw, omega)?;
    Ok(rep.cross_check(other.holds))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus_algebras::*;
    use crate::linalg::RationalSampler;

    fn case1() -> (Matrix, Matrix) {
        let r = Matrix::from_ints(&[&[0, 0, 0], &[1, 2, 0], &[3, 5, 0]]);
        let o = Matrix::from_ints(&[&[0, 0, 0], &[0, 0, 0], &[0, 7, 0]]);
        (r, o)
    }

    fn tw1() -> TwilledAlgebra {
        twilled_from_o_operator(&Bimodule::regular(&a3h()), &case1().0).unwrap()
    }

    #[test]
    fn example_case_one_is_strong_mc() {
        let (r, o) = case1();
        let tw = tw1();
        let rep = check_strong_mc(&tw, &o).unwrap();
        assert!(rep.holds, "{rep}");
        assert_eq!(rep.routes_agree, Some(true));
        let rb = check_rb_strong_mc(&a3h(), &r, &o).unwrap();
        assert!(rb.holds);
        assert_eq!(rb.routes_agree, Some(true));
        assert!(check_mc(&tw, &o).unwrap().holds);
    }

    #[test]
    fn routes_agree_on_unit_matrices() {
        let (r, _) = case1();
        let tw = tw1();
        for i in 0..3 {
            for j in 0..3 {
                let e = Matrix::from_fn(3, 3, |a, b| Scalar::from_int(((a, b) == (i, j)) as i64));
                let s = check_strong_mc(&tw, &e).unwrap();
                assert_eq!(s.routes_agree, Some(true), "E{}{}", i + 1, j + 1);
                assert_eq!(check_mc(&tw, &e).unwrap().routes_agree, Some(true));
                let rb = check_rb_strong_mc(&a3h(), &r, &e).unwrap();
                assert_eq!(rb.routes_agree, Some(true));
            }
        }
        let id = Matrix::identity(3);
        assert_eq!(check_rb_strong_mc(&a3h(), &r, &id).unwrap().routes_agree, Some(true));
    }

    #[test]
    fn cochain_route_matches_components() {
        let tw = tw1();
        let mut s = RationalSampler::new(3, 9);
        let o = Matrix::from_fn(3, 3, |_, _| s.next_scalar());
        let oc = Cochain::from_matrix(&o);
        let d = d_mu1(&tw, &oc).unwrap();
        let q = bracket_mu2(&tw, &oc, &oc).unwrap();
        for (i, j) in pairs(3) {
            let c = cocycle_residual(&tw, &o, i, j);
            assert_eq!(d.eval_basis(&[i, j]), c.iter().map(|x| -x).collect::<Vec<_>>());
            let two = Scalar::from_int(2);
            let qr: Vec<Scalar> = quadratic_residual(&tw, &o, i, j).iter().map(|x| x * &two).collect();
            assert_eq!(q.eval_basis(&[i, j]), qr);
        }
    }

    #[test]
    fn dgla_axioms() {
        let tw = tw1();
        let mut s = RationalSampler::new(11, 5);
        let f1 = Cochain::random(3, 3, 1, &mut s, 60);
        let f2 = Cochain::random(3, 3, 1, &mut s, 60);
        let g2 = Cochain::random(3, 3, 2, &mut s, 40);
        // d² = 0
        for f in [&f1, &g2] {
            assert!(d_mu1(&tw, &d_mu1(&tw, f).unwrap()).unwrap().is_zero());
        }
        // graded antisymmetry in the cochain degree
        let a = bracket_mu2(&tw, &f1, &g2).unwrap();
        let b = bracket_mu2(&tw, &g2, &f1).unwrap();
        assert_eq!(a, b.scale(&Scalar::from_int(-1)).scale(&Scalar::sign(2)));
        // Leibniz: d[f, g] = [df, g] + (−1)^{|f|}[f, dg]
        let lhs = d_mu1(&tw, &bracket_mu2(&tw, &f1, &f2).unwrap()).unwrap();
        let rhs = bracket_mu2(&tw, &d_mu1(&tw, &f1).unwrap(), &f2)
            .unwrap()
            .add(&bracket_mu2(&tw, &f1, &d_mu1(&tw, &f2).unwrap()).unwrap().scale(&Scalar::sign(1)))
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn zero_is_strong_mc() {
        let tw = tw1();
        assert!(check_strong_mc(&tw, &Matrix::zeros(3, 3)).unwrap().holds);
        let z = Cochain::zero(3, 3, 1);
        assert!(d_mu1(&tw, &z).unwrap().is_zero());
        assert!(bracket_mu2(&tw, &z, &z).unwrap().is_zero());
    }
}
