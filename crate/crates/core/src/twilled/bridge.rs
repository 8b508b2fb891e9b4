use super::mc::check_strong_mc;
use super::{assemble, frak_bimodule, make_twilled, twilled_from_o_operator, TwilledAlgebra};
use crate::algebra::Bimodule;
use crate::error::{Error, Result};
use crate::linalg::matrix::{unit_vector, vec_sub};
use crate::linalg::Matrix;
use crate::operators::{
    check_compatible, check_o_operator, check_on_structure, compare_matrices, induced_product, OnStructure,
};
use crate::report::Report;

fn require_strong_mc(b: &Bimodule, t: &Matrix, omega: &Matrix) -> Result<TwilledAlgebra> {
    let tw = twilled_from_o_operator(b, t)?;
    if !check_strong_mc(&tw, omega)?.holds {
        return Err(Error::NotStrongMc);
    }
    Ok(tw)
}

/// The twisted algebra `g_Ω ⋈ V_T` together with its three verified properties.
#[derive(Clone, Debug)]
pub struct OmegaTwist {
    pub twilled: TwilledAlgebra,
    pub report: Report,
}

/// Builds `(x+u) ∗ (y+v) = x·^Ω y + 𝔏^T_u y + 𝔎^T_v x + 𝓛^Ω_x v + 𝓡^Ω_y u + u·^T v`
/// and checks that it is a twilled pre-Lie algebra, that `T` solves the strong
/// Maurer-Cartan equation on it, and that `T` is an O-operator on `(V; 𝓛^Ω, 𝓡^Ω)`.
pub fn omega_twist(b: &Bimodule, t: &Matrix, omega: &Matrix) -> Result<OmegaTwist> {
    require_strong_mc(b, t, omega)?;
    let fb = frak_bimodule(b, t);
    let vt = fb.base();
    let (n, m) = (b.base().dim(), b.module_dim());
    let dot_omega = induced_product(&fb, omega);
    let twist = |x: usize, left: bool| {
        let ox = omega.column(x);
        let xv = unit_vector(n, x);
        let cols: Vec<_> = (0..m)
            .map(|u| {
                let uv = unit_vector(m, u);
                if left {
                    vec_sub(&vt.mul(&ox, &uv), &omega.apply(&fb.right(u).apply(&xv)))
                } else {
                    vec_sub(&vt.mul(&uv, &ox), &omega.apply(&fb.left(u).apply(&xv)))
                }
            })
            .collect();
        Matrix::from_columns(m, &cols)
    };
    let l_om: Vec<Matrix> = (0..n).map(|x| twist(x, true)).collect();
    let r_om: Vec<Matrix> = (0..n).map(|x| twist(x, false)).collect();
    let big = assemble(&dot_omega, vt, &l_om, &r_om, fb.lefts(), fb.rights());
    let mut report = Report::pass("Ω-twist");
    let twilled = match make_twilled(big, n) {
        Ok(tw) => tw,
        Err(e) => {
            report.push_bool(format!("twilled pre-Lie algebra ({e})"), false);
            return Err(Error::CheckMismatch(report.to_string()));
        }
    };
    report.push_bool("twilled pre-Lie algebra", true);
    report.add("T strong Maurer-Cartan", &check_strong_mc(&twilled.swap(), t)?);
    let twisted = Bimodule::new(dot_omega, m, l_om, r_om)?;
    report.add("T O-operator on the twisted bimodule", &check_o_operator(&twisted, t)?);
    Ok(OmegaTwist { twilled, report })
}

/// `(T, N = T∘Ω, S = Ω∘T)` on `(V; 𝓛, 𝓡)` and `(Ω, S, N)` on `(g; 𝔏^T, 𝔎^T)` over `V_T`.
pub fn on_from_mc(b: &Bimodule, t: &Matrix, omega: &Matrix) -> Result<(OnStructure, OnStructure)> {
    require_strong_mc(b, t, omega)?;
    let n = t.mul(omega);
    let s = omega.mul(t);
    let first = OnStructure::new(b.clone(), t.clone(), n.clone(), s.clone())?;
    let second = OnStructure::new(frak_bimodule(b, t), omega.clone(), s, n)?;
    Ok((first, second))
}

/// `Ω = T⁻¹∘N` for an ON-structure with invertible `T`, with the checks that
/// `T⁻¹∘N = S∘T⁻¹` and that `Ω` solves the strong Maurer-Cartan equation on `g ⋈ V_T`.
pub fn mc_from_on(os: &OnStructure) -> Result<(Matrix, Report)> {
    match check_on_structure(os) {
        Ok(r) if r.holds => {}
        Ok(_) | Err(Error::ComponentCheckFailed(_)) => return Err(Error::NotOnStructure),
        Err(e) => return Err(e),
    }
    let inv = os.t.invert()?;
    let omega = inv.mul(&os.n);
    let mut r = Report::pass("Maurer-Cartan from ON-structure");
    r.add("T⁻¹N = ST⁻¹", &compare_matrices("Ω", &omega, &os.s.mul(&inv)));
    let tw = twilled_from_o_operator(&os.bimodule, &os.t)?;
    r.add("Ω strong Maurer-Cartan", &check_strong_mc(&tw, &omega)?);
    Ok((omega, r))
}

/// `T_k = (T∘Ω)^k∘T` on `(V; 𝓛, 𝓡)` and `Ω_k = (Ω∘T)^k∘Ω` on `(g; 𝔏^T, 𝔎^T)`,
/// each an O-operator and pairwise compatible.
pub fn hierarchy_from_mc(b: &Bimodule, t: &Matrix, omega: &Matrix, kmax: usize) -> Result<Report> {
    if kmax > 4 {
        return Err(Error::Validation("kmax is capped at 4".into()));
    }
    require_strong_mc(b, t, omega)?;
    let fb = frak_bimodule(b, t);
    let (n, s) = (t.mul(omega), omega.mul(t));
    let ts: Vec<Matrix> = (0..=kmax).map(|k| n.pow(k).mul(t)).collect();
    let os: Vec<Matrix> = (0..=kmax).map(|k| s.pow(k).mul(omega)).collect();
    let mut r = Report::pass("Maurer-Cartan hierarchy");
    for (label, module, ops) in [("T", b, &ts), ("Ω", &fb, &os)] {
        for (k, op) in ops.iter().enumerate() {
            r.add(format!("{label}_{k} O-operator"), &check_o_operator(module, op)?);
        }
        for k in 0..=kmax {
            for l in k + 1..=kmax {
                match check_compatible(module, &ops[k], &ops[l]) {
                    Ok(c) => r.add(format!("{label}_{k}, {label}_{l} compatible"), &c),
                    Err(Error::NotOOperator) => r.push_bool(format!("{label}_{k}, {label}_{l} compatible"), false),
                    Err(e) => return Err(e),
                }
            }
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus_algebras::*;
    use crate::twilled::tests_support::*;

    #[test]
    fn twist_matches_the_construction_for_omega() {
        let (b, r, o) = case1();
        let tw = omega_twist(&b, &r, &o).unwrap();
        assert!(tw.report.holds, "{}", tw.report);
        // Applying the g ⋈ V_T construction to Ω on (g; 𝔏^T, 𝔎^T) gives the same algebra with blocks swapped.
        let other = twilled_from_o_operator(&frak_bimodule(&b, &r), &o).unwrap();
        assert_eq!(other.swap(), tw.twilled);
    }

    #[test]
    fn twist_case_three() {
        let (b, r, o) = case3();
        let tw = omega_twist(&b, &r, &o).unwrap();
        assert!(tw.report.holds, "{}", tw.report);
    }

    #[test]
    fn zero_twist() {
        let (b, r, _) = case1();
        let tw = omega_twist(&b, &r, &Matrix::zeros(3, 3)).unwrap();
        assert!(tw.twilled.diamond1().products().is_zero());
    }

    #[test]
    fn on_structures_from_mc() {
        for (b, r, o) in [case1(), case2(), case3()] {
            let (a, c) = on_from_mc(&b, &r, &o).unwrap();
            let ra = check_on_structure(&a).unwrap();
            let rc = check_on_structure(&c).unwrap();
            assert!(ra.holds && ra.all_clauses_hold(), "{ra}");
            assert!(rc.holds && rc.all_clauses_hold(), "{rc}");
            assert!(hierarchy_from_mc(&b, &r, &o, 3).unwrap().holds);
        }
    }

    #[test]
    fn zero_omega_gives_zero_structures() {
        let (b, r, _) = case1();
        let (a, c) = on_from_mc(&b, &r, &Matrix::zeros(3, 3)).unwrap();
        assert!(a.n.is_zero() && a.s.is_zero() && c.n.is_zero() && c.s.is_zero());
    }

    #[test]
    fn round_trip_through_on() {
        // A KVN pair on A2 seen on the dual of the regular bimodule, with invertible r♯.
        let b = Bimodule::regular(&a2()).dual().unwrap();
        let t = Matrix::from_ints(&[&[-2, 1], &[1, 0]]);
        let n = Matrix::from_ints(&[&[3, 4], &[0, 3]]);
        let os = OnStructure::new(b.clone(), t.clone(), n.clone(), n.transpose()).unwrap();
        let (omega, rep) = mc_from_on(&os).unwrap();
        assert!(rep.holds, "{rep}");
        let (back, _) = on_from_mc(&b, &t, &omega).unwrap();
        assert_eq!(back.n, n);
        assert_eq!(mc_from_on(&back).unwrap().0, omega);
        let id = OnStructure::new(b.clone(), t.clone(), Matrix::identity(2), Matrix::identity(2)).unwrap();
        assert_eq!(mc_from_on(&id).unwrap().0, t.invert().unwrap());
        let z = OnStructure::new(b, t, Matrix::zeros(2, 2), Matrix::zeros(2, 2)).unwrap();
        assert!(mc_from_on(&z).unwrap().0.is_zero());
    }
}
