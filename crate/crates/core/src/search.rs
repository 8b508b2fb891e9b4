//! Brute-force oracles: exhaustive operator enumeration over a finite grid,
//! the linear cocycle space of a twilled algebra, grid search for strong
//! Maurer-Cartan elements, and sampled verification of parameterized families.

use std::collections::BTreeMap;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Bimodule};
use crate::error::{Error, Result};
use crate::expr::{Env, Expr};
use crate::linalg::matrix::{is_zero_vector, unit_vector, vec_add, vec_sub};
use crate::linalg::{Matrix, RationalSampler, Scalar};
use crate::report::Report;
use crate::twilled::{check_strong_mc, TwilledAlgebra};

pub const MAX_CANDIDATES: u128 = 10_000_000;
pub const MAX_NULLITY: usize = 6;

fn default_grid() -> Vec<Scalar> {
    (-1..=1).map(Scalar::from_int).collect()
}

fn default_coeff_grid() -> Vec<Scalar> {
    (-2..=2).map(Scalar::from_int).collect()
}

fn default_samples() -> usize {
    12
}

fn default_seed() -> u64 {
    42
}

fn default_bound() -> u64 {
    20
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    #[serde(default = "default_grid")]
    pub grid: Vec<Scalar>,
    #[serde(default = "default_coeff_grid")]
    pub coeff_grid: Vec<Scalar>,
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default = "default_seed")]
    pub seed: u64,
    /// Numerator and denominator bound for sampled parameters.
    #[serde(default = "default_bound")]
    pub bound: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            grid: default_grid(),
            coeff_grid: default_coeff_grid(),
            samples: default_samples(),
            seed: default_seed(),
            bound: default_bound(),
        }
    }
}

impl SearchConfig {
    pub fn with_grid(mut self, grid: &[i64]) -> Self {
        self.grid = grid.iter().map(|&v| Scalar::from_int(v)).collect();
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.grid.is_empty() || self.coeff_grid.is_empty() {
            return Err(Error::Validation("search grids must be non-empty".into()));
        }
        if self.samples < 8 {
            return Err(Error::Validation(format!("at least 8 samples are required, found {}", self.samples)));
        }
        Ok(())
    }

    /// Grid values sorted and deduplicated.
    fn sorted(values: &[Scalar]) -> Vec<Scalar> {
        values.iter().cloned().sorted().dedup().collect()
    }
}

#[derive(Clone, Debug)]
pub enum Target<'a> {
    Nijenhuis(&'a Algebra),
    OOperator(&'a Bimodule),
    RotaBaxter(&'a Algebra),
}

impl Target<'_> {
    fn shape(&self) -> (usize, usize) {
        match self {
            Target::Nijenhuis(a) | Target::RotaBaxter(a) => (a.dim(), a.dim()),
            Target::OOperator(b) => (b.base().dim(), b.module_dim()),
        }
    }

    /// Evaluates the defining identity directly, stopping at the first nonzero residual.
    fn accepts(&self, t: &Matrix) -> bool {
        match self {
            Target::Nijenhuis(a) => nijenhuis_zero(a, t),
            Target::RotaBaxter(a) => o_operator_zero(&Bimodule::regular(a), t),
            Target::OOperator(b) => o_operator_zero(b, t),
        }
    }
}

/// `N(x)·N(y) = N(N(x)·y + x·N(y) − N(x·y))` on basis pairs.
fn nijenhuis_zero(a: &Algebra, n: &Matrix) -> bool {
    let d = a.dim();
    let cols: Vec<_> = (0..d).map(|i| n.column(i)).collect();
    (0..d).cartesian_product(0..d).all(|(i, j)| {
        let lhs = a.mul(&cols[i], &cols[j]);
        let ej = unit_vector(d, j);
        let ei = unit_vector(d, i);
        let inner = vec_sub(&vec_add(&a.mul(&cols[i], &ej), &a.mul(&ei, &cols[j])), &n.apply(&a.basis_product(i, j)));
        is_zero_vector(&vec_sub(&lhs, &n.apply(&inner)))
    })
}

/// `T(u)·T(v) = T(𝓛_{T(u)}v + 𝓡_{T(v)}u)` on basis pairs.
fn o_operator_zero(b: &Bimodule, t: &Matrix) -> bool {
    let m = b.module_dim();
    let cols: Vec<_> = (0..m).map(|u| t.column(u)).collect();
    (0..m).cartesian_product(0..m).all(|(u, v)| {
        let lhs = b.base().mul(&cols[u], &cols[v]);
        let inner = vec_add(&b.left_of(&cols[u]).column(v), &b.right_of(&cols[v]).column(u));
        is_zero_vector(&vec_sub(&lhs, &t.apply(&inner)))
    })
}

fn guard(base: usize, exponent: usize) -> Result<()> {
    let size = (base as u128).checked_pow(exponent as u32).unwrap_or(u128::MAX);
    if size > MAX_CANDIDATES {
        return Err(Error::SearchSpaceTooLarge { size, limit: MAX_CANDIDATES });
    }
    Ok(())
}

/// All matrices with entries in the grid satisfying the target identity, in
/// lexicographic order of the row-major entry sequence.
pub fn enumerate_operators(target: &Target<'_>, cfg: &SearchConfig) -> Result<Vec<Matrix>> {
    if cfg.grid.is_empty() {
        return Err(Error::Validation("search grid must be non-empty".into()));
    }
    let (rows, cols) = target.shape();
    let grid = SearchConfig::sorted(&cfg.grid);
    guard(grid.len(), rows * cols)?;
    if rows * cols == 0 {
        let z = Matrix::zeros(rows, cols);
        return Ok(if target.accepts(&z) { vec![z] } else { vec![] });
    }
    let mut out = Vec::new();
    for entries in (0..rows * cols).map(|_| grid.iter()).multi_cartesian_product() {
        let m = Matrix::from_fn(rows, cols, |i, j| entries[i * cols + j].clone());
        if target.accepts(&m) {
            out.push(m);
        }
    }
    Ok(out)
}

/// Flattening of `Ω: g₁ → g₂` used by the cocycle solver (row-major).
fn omega_index(n1: usize, p: usize, q: usize) -> usize {
    p * n1 + q
}

/// The linear system `Ω(x⋄₁y) − 𝓛¹_xΩ(y) − 𝓡¹_yΩ(x) = 0` over the entries of `Ω`.
pub fn cocycle_system(tw: &TwilledAlgebra) -> Matrix {
    let (n1, n2) = tw.dims();
    let d1 = tw.diamond1();
    let mut rows = Vec::new();
    for (i, j) in (0..n1).cartesian_product(0..n1) {
        let prod = d1.basis_product(i, j);
        for p in 0..n2 {
            let mut row = vec![Scalar::zero(); n1 * n2];
            for (k, c) in prod.iter().enumerate() {
                row[omega_index(n1, p, k)] += c;
            }
            for s in 0..n2 {
                row[omega_index(n1, s, j)] -= &tw.l1()[i][(p, s)];
                row[omega_index(n1, s, i)] -= &tw.r1()[j][(p, s)];
            }
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return Matrix::zeros(0, n1 * n2);
    }
    Matrix::from_rows(rows).expect("rows share a length")
}

/// Exact basis of the solutions of the cocycle part of the strong MC equation.
pub fn solve_cocycle_space(tw: &TwilledAlgebra) -> Vec<Matrix> {
    let (n1, n2) = tw.dims();
    let sys = cocycle_system(tw);
    let kernel = if sys.rows() == 0 {
        (0..n1 * n2).map(|k| unit_vector(n1 * n2, k)).collect()
    } else {
        sys.nullspace()
    };
    kernel
        .into_iter()
        .map(|v| Matrix::from_fn(n2, n1, |p, q| v[omega_index(n1, p, q)].clone()))
        .collect()
}

/// Grid combinations `Σ cᵢ Ωᵢ` of the cocycle basis that also satisfy the
/// quadratic part, in lexicographic order of the coefficient tuple.
pub fn search_strong_mc(tw: &TwilledAlgebra, cfg: &SearchConfig) -> Result<Vec<Matrix>> {
    let basis = solve_cocycle_space(tw);
    if basis.len() > MAX_NULLITY {
        let size = (cfg.coeff_grid.len() as u128).saturating_pow(basis.len() as u32);
        return Err(Error::SearchSpaceTooLarge { size, limit: (cfg.coeff_grid.len() as u128).pow(MAX_NULLITY as u32) });
    }
    let grid = SearchConfig::sorted(&cfg.coeff_grid);
    guard(grid.len(), basis.len())?;
    let (n1, n2) = tw.dims();
    if basis.is_empty() {
        return Ok(vec![Matrix::zeros(n2, n1)]);
    }
    let mut out = Vec::new();
    for coeffs in (0..basis.len()).map(|_| grid.iter()).multi_cartesian_product() {
        let omega = basis.iter().zip(&coeffs).fold(Matrix::zeros(n2, n1), |acc, (b, c)| acc.add(&b.scale(c)));
        if check_strong_mc(tw, &omega)?.holds {
            out.push(omega);
        }
    }
    Ok(out)
}

/// A named parameter family: free names, expressions that must not vanish,
/// and a check to run at each instantiation.
pub struct Family<'a> {
    pub params: Vec<String>,
    pub nonzero: Vec<Expr>,
    pub check: Box<dyn Fn(&Env) -> Result<bool> + 'a>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Sample {
    pub values: BTreeMap<String, Scalar>,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyReport {
    pub samples: Vec<Sample>,
    pub report: Report,
}

pub const PIT_LABEL: &str = "verified (polynomial identity testing)";

const MAX_DRAWS: usize = 1000;

/// Draws `cfg.samples` instantiations honoring the constraints.
pub fn sample_parameters(params: &[String], nonzero: &[Expr], cfg: &SearchConfig) -> Result<Vec<Env>> {
    let mut sampler = RationalSampler::new(cfg.seed, cfg.bound);
    let mut out = Vec::with_capacity(cfg.samples);
    let mut draws = 0;
    while out.len() < cfg.samples {
        if draws == MAX_DRAWS {
            let names: Vec<String> = nonzero.iter().map(ToString::to_string).collect();
            return Err(Error::ConstraintUnsatisfiable(format!(
                "no instantiation with {} ≠ 0 after {MAX_DRAWS} draws",
                names.join(", ")
            )));
        }
        draws += 1;
        let env: Env = params.iter().map(|p| (p.clone(), sampler.next_scalar())).collect();
        let ok = nonzero.iter().all(|e| e.eval(&env).map(|v| !v.is_zero()).unwrap_or(false));
        if ok {
            out.push(env);
        }
    }
    Ok(out)
}

/// Runs the family's check at sampled instantiations. Any failing sample is
/// recorded as the witness.
pub fn verify_family(family: &Family<'_>, cfg: &SearchConfig) -> Result<FamilyReport> {
    cfg.validate()?;
    let mut samples = Vec::new();
    let mut report = Report::pass("family");
    for env in sample_parameters(&family.params, &family.nonzero, cfg)? {
        let holds = (family.check)(&env)?;
        if !holds && report.holds {
            let w: Vec<String> = env.iter().map(|(k, v)| format!("{k} = {v}")).collect();
            report = report.note(format!("witness: {}", w.join(", ")));
        }
        report.push_bool(format!("sample {}", samples.len() + 1), holds);
        samples.push(Sample { values: env, holds });
    }
    if report.holds {
        report = report.note(PIT_LABEL);
    }
    Ok(FamilyReport { samples, report })
}
