use serde::Serialize;

use super::nijenhuis::{check_nijenhuis, deformed_product_unchecked};
use super::o_operator::{check_o_operator, induced_product};
use super::structure::{check_nijenhuis_structure, deformed_bimodule_unchecked, same_products};
use super::{compare_matrices, expect_shape};
use crate::algebra::{Algebra, Bimodule};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};
use crate::report::Report;

/// `(T, N, S)` on a bimodule `(V; 𝓛, 𝓡)`: `T: V → g`, `N ∈ gl(g)`, `S ∈ gl(V)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OnStructure {
    pub bimodule: Bimodule,
    pub t: Matrix,
    pub n: Matrix,
    pub s: Matrix,
}

impl OnStructure {
    pub fn new(bimodule: Bimodule, t: Matrix, n: Matrix, s: Matrix) -> Result<Self> {
        let (d, m) = (bimodule.base().dim(), bimodule.module_dim());
        expect_shape(&t, d, m, "T")?;
        expect_shape(&n, d, d, "N")?;
        expect_shape(&s, m, m, "S")?;
        Ok(OnStructure { bimodule, t, n, s })
    }

    /// `u ·^T_S v = S(u)·^T v + u·^T S(v) − S(u·^T v)`.
    pub fn s_deformed(&self) -> Algebra {
        s_deformed_product(&self.bimodule, &self.t, &self.s)
    }

    /// `u ⋆^T v = 𝓛̃_{T(u)}v + 𝓡̃_{T(v)}u`.
    pub fn star(&self) -> Algebra {
        star_product(&self.bimodule, &self.t, &self.n, &self.s)
    }

    /// `·^{N∘T}`.
    pub fn nt_product(&self) -> Algebra {
        induced_product(&self.bimodule, &self.n.mul(&self.t))
    }
}

pub fn s_deformed_product(b: &Bimodule, t: &Matrix, s: &Matrix) -> Algebra {
    deformed_product_unchecked(&induced_product(b, t), s)
}

pub fn star_product(b: &Bimodule, t: &Matrix, n: &Matrix, s: &Matrix) -> Algebra {
    induced_product(&deformed_bimodule_unchecked(b, n, s), t)
}

/// The two defining conditions decide the verdict; the consequences
/// (`·^T_S = ⋆^T`, `S` Nijenhuis on `V_T`, `T` an O-operator on the deformed
/// bimodule, `N∘T` an O-operator) are reported as derived clauses.
pub fn check_on_structure(os: &OnStructure) -> Result<Report> {
    let b = &os.bimodule;
    if !check_o_operator(b, &os.t)?.holds {
        return Err(Error::ComponentCheckFailed("T is not an O-operator".into()));
    }
    if !check_nijenhuis_structure(b, &os.n, &os.s)?.holds {
        return Err(Error::ComponentCheckFailed("(N, S) is not a Nijenhuis structure".into()));
    }
    let nt = os.n.mul(&os.t);
    let mut r = Report::pass("ON-structure");
    r.add("N∘T = T∘S", &compare_matrices("NT = TS", &nt, &os.t.mul(&os.s)));
    let ts = os.s_deformed();
    r.add("·^(N∘T) = ·^T_S", &same_products("products", &os.nt_product(), &ts));
    r.add_derived("·^T_S = ⋆^T", &same_products("products", &ts, &os.star()));
    r.add_derived("S Nijenhuis on V_T", &check_nijenhuis(&induced_product(b, &os.t), &os.s)?);
    let tb = deformed_bimodule_unchecked(b, &os.n, &os.s);
    r.add_derived("T O-operator on the deformed bimodule", &check_o_operator(&tb, &os.t)?);
    r.add_derived("N∘T O-operator", &check_o_operator(b, &nt)?);
    Ok(r)
}

/// `T₁ + T₂` is an O-operator. The defect of `k₁T₁ + k₂T₂` is
/// `k₁²D₁ + k₁k₂M + k₂²D₂` with `D₁ = D₂ = 0`, so the sum decides every
/// combination; `2T₁ − 3T₂` is checked as well.
pub fn check_compatible(b: &Bimodule, t1: &Matrix, t2: &Matrix) -> Result<Report> {
    if !check_o_operator(b, t1)?.holds || !check_o_operator(b, t2)?.holds {
        return Err(Error::NotOOperator);
    }
    let mut r = Report::pass("compatible O-operators");
    r.add("T1 + T2 O-operator", &check_o_operator(b, &t1.add(t2))?);
    let combo = t1.scale(&Scalar::from_int(2)).sub(&t2.scale(&Scalar::from_int(3)));
    r.add("2 T1 - 3 T2 O-operator", &check_o_operator(b, &combo)?);
    Ok(r)
}

/// `(T_i, N = T₁T₂⁻¹, S = T₂⁻¹T₁)` for `i = 1, 2`.
pub fn on_from_compatible(b: &Bimodule, t1: &Matrix, t2: &Matrix) -> Result<[OnStructure; 2]> {
    let inv = t2.invert()?;
    if !check_compatible(b, t1, t2)?.holds {
        return Err(Error::NotCompatible);
    }
    let n = t1.mul(&inv);
    let s = inv.mul(t1);
    Ok([
        OnStructure::new(b.clone(), t1.clone(), n.clone(), s.clone())?,
        OnStructure::new(b.clone(), t2.clone(), n, s)?,
    ])
}

#[derive(Clone, Debug, Serialize)]
pub struct Hierarchy {
    /// `T_k = N^k∘T` for `k = 0..=kmax`.
    pub operators: Vec<Matrix>,
    pub report: Report,
}

/// The O-operators `T_k = N^k∘T`, their pairwise compatibility,
/// `·^{T_k} = ·^T_{S^k}`, and for invertible `T` the ON-structures
/// `(T, N^k, S^k)` and `(T_k, N^k, S^k)`.
pub fn hierarchy(os: &OnStructure, kmax: usize) -> Result<Hierarchy> {
    if kmax > 4 {
        return Err(Error::Validation("kmax is capped at 4".into()));
    }
    if !check_on_structure(os)?.holds {
        return Err(Error::ComponentCheckFailed("not an ON-structure".into()));
    }
    let b = &os.bimodule;
    let ts: Vec<Matrix> = (0..=kmax).map(|k| os.n.pow(k).mul(&os.t)).collect();
    let mut r = Report::pass("ON hierarchy");
    for (k, tk) in ts.iter().enumerate() {
        r.add(format!("T_{k} O-operator"), &check_o_operator(b, tk)?);
        let sk = s_deformed_product(b, &os.t, &os.s.pow(k));
        r.add(format!("·^T_{k} = ·^T_S^{k}"), &same_products("products", &induced_product(b, tk), &sk));
    }
    for k in 0..=kmax {
        for l in k + 1..=kmax {
            r.add(format!("T_{k}, T_{l} compatible"), &check_compatible(b, &ts[k], &ts[l])?);
        }
    }
    let invertible = os.t.is_square() && os.t.determinant()? != Scalar::zero();
    if invertible {
        for k in 0..=kmax {
            let (nk, sk) = (os.n.pow(k), os.s.pow(k));
            for (label, t) in [("T", &os.t), ("T_k", &ts[k])] {
                let sub = OnStructure::new(b.clone(), t.clone(), nk.clone(), sk.clone())?;
                let name = format!("({label}, N^{k}, S^{k}) ON-structure");
                match check_on_structure(&sub) {
                    Ok(rep) => r.add(name, &rep),
                    Err(Error::ComponentCheckFailed(_)) => r.push_bool(name, false),
                    Err(e) => return Err(e),
                }
            }
        }
    } else {
        r = r.note("T is not invertible; the ON-structures (T, N^k, S^k) are not claimed");
    }
    Ok(Hierarchy { operators: ts, report: r })
}
