use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use serde::Serialize;
use serde_json::Value;

use super::{CheckSpec, Compiled, Expect, Scenario};
use crate::algebra::{Algebra, Bimodule};
use crate::cochain::{cohomology_dims, delta, mn_bracket, CochainJson, CohomologyRow};
use crate::error::{Error, Result};
use crate::expr::Env;
use crate::linalg::{Matrix, Scalar};
use crate::operators::{
    check_compatible, check_deformation_pair, check_nijenhuis, check_nijenhuis_structure, check_o_operator,
    check_on_structure, check_rota_baxter, check_trivial_deformation, compare_products, deformed_product_unchecked,
    hierarchy, homomorphism_report, nijenhuis_tower, on_from_compatible, OnStructure,
};
use crate::report::Report;
use crate::search::{
    cocycle_system, enumerate_operators, sample_parameters, search_strong_mc, solve_cocycle_space, SearchConfig,
    Target,
};
use crate::structures::{
    check_hn, check_kvb, check_kvn, check_pseudo_hessian, check_s_matrix, hn_from_kvb, kvb_from_hn, kvn_from_hn,
    kvn_from_kvb, r_hierarchy, SymForm2, SymTensor2,
};
use crate::twilled::{
    check_mc, check_rb_strong_mc, check_strong_mc, hierarchy_from_mc, mc_from_on, omega_twist, on_from_mc,
    twilled_from_o_operator,
};

/// Kind of a required check argument.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArgKind {
    Algebra,
    Bimodule,
    Map,
    Number,
    Word,
}

use ArgKind::*;

/// Every operation a scenario may invoke, with its required arguments.
pub const OPERATIONS: &[(&str, &[(&str, ArgKind)])] = &[
    ("check_pre_lie", &[("algebra", Algebra)]),
    ("check_bimodule", &[("bimodule", Bimodule)]),
    ("check_nijenhuis", &[("algebra", Algebra), ("N", Map)]),
    ("nijenhuis_tower", &[("algebra", Algebra), ("N", Map), ("kmax", Number)]),
    ("check_o_operator", &[("bimodule", Bimodule), ("T", Map)]),
    ("check_rota_baxter", &[("algebra", Algebra), ("R", Map)]),
    ("check_nijenhuis_structure", &[("bimodule", Bimodule), ("N", Map), ("S", Map)]),
    ("check_deformation_pair", &[("bimodule", Bimodule), ("N", Map), ("S", Map)]),
    ("check_trivial_deformation", &[("bimodule", Bimodule), ("N", Map), ("S", Map)]),
    ("check_on_structure", &[("bimodule", Bimodule), ("T", Map), ("N", Map), ("S", Map)]),
    ("check_compatible", &[("bimodule", Bimodule), ("T1", Map), ("T2", Map)]),
    ("on_from_compatible", &[("bimodule", Bimodule), ("T1", Map), ("T2", Map)]),
    ("hierarchy", &[("bimodule", Bimodule), ("T", Map), ("N", Map), ("S", Map), ("kmax", Number)]),
    ("check_s_matrix", &[("algebra", Algebra), ("r", Map)]),
    ("check_pseudo_hessian", &[("algebra", Algebra), ("B", Map)]),
    ("check_kvn", &[("algebra", Algebra), ("r", Map), ("N", Map)]),
    ("check_hn", &[("algebra", Algebra), ("B", Map), ("N", Map)]),
    ("kvn_from_hn", &[("algebra", Algebra), ("B", Map), ("N", Map)]),
    ("kvb_from_hn", &[("algebra", Algebra), ("B", Map), ("N", Map)]),
    ("check_kvb", &[("algebra", Algebra), ("r", Map), ("B", Map)]),
    ("kvn_from_kvb", &[("algebra", Algebra), ("r", Map), ("B", Map)]),
    ("hn_from_kvb", &[("algebra", Algebra), ("r", Map), ("B", Map)]),
    ("r_hierarchy", &[("algebra", Algebra), ("r", Map), ("N", Map), ("kmax", Number)]),
    ("check_mc", &[("bimodule", Bimodule), ("T", Map), ("omega", Map)]),
    ("check_strong_mc", &[("bimodule", Bimodule), ("T", Map), ("omega", Map)]),
    ("check_rb_strong_mc", &[("algebra", Algebra), ("R", Map), ("omega", Map)]),
    ("omega_twist", &[("bimodule", Bimodule), ("T", Map), ("omega", Map)]),
    ("on_from_mc", &[("bimodule", Bimodule), ("T", Map), ("omega", Map)]),
    ("mc_from_on", &[("bimodule", Bimodule), ("T", Map), ("N", Map), ("S", Map)]),
    ("mc_round_trip", &[("bimodule", Bimodule), ("T", Map), ("omega", Map)]),
    ("hierarchy_from_mc", &[("bimodule", Bimodule), ("T", Map), ("omega", Map), ("kmax", Number)]),
    ("enumerate_operators", &[("target", Word)]),
    ("solve_cocycle_space", &[("bimodule", Bimodule), ("T", Map)]),
    ("search_strong_mc", &[("bimodule", Bimodule), ("T", Map)]),
];

const SEARCH_OPS: &[&str] = &["enumerate_operators", "solve_cocycle_space", "search_strong_mc"];

/// Optional arguments naming printed maps that an operation's output is compared with.
const OUTPUT_ARGS: &[&str] = &["output", "output_N", "output_S", "contains"];

fn signature(op: &str) -> Option<&'static [(&'static str, ArgKind)]> {
    OPERATIONS.iter().find(|(name, _)| *name == op).map(|(_, a)| *a)
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::Validation(msg.into())
}

fn word<'a>(check: &'a CheckSpec, key: &str) -> Result<&'a str> {
    match check.args.get(key) {
        Some(Value::String(s)) => Ok(s),
        Some(other) => Err(invalid(format!("argument {key:?} must be a string, found {other}"))),
        None => Err(invalid(format!("missing argument {key:?}"))),
    }
}

fn number(check: &CheckSpec, key: &str) -> Result<usize> {
    match check.args.get(key) {
        Some(Value::Number(n)) => n.as_u64().map(|v| v as usize).ok_or_else(|| invalid(format!("{key} must be a natural number"))),
        Some(Value::String(s)) => s.parse().map_err(|_| invalid(format!("{key} must be a natural number"))),
        Some(other) => Err(invalid(format!("argument {key:?} must be a number, found {other}"))),
        None => Err(invalid(format!("missing argument {key:?}"))),
    }
}

pub(super) fn validate_check(c: &Compiled, check: &CheckSpec) -> Result<()> {
    let sig = signature(&check.op).ok_or_else(|| invalid(format!("unknown operation {:?}", check.op)))?;
    let env = c.fixed_env();
    for (key, kind) in sig {
        match kind {
            Algebra => {
                c.algebra(word(check, key)?)?;
            }
            Bimodule => {
                c.bimodule(word(check, key)?)?;
            }
            Map => {
                c.map(word(check, key)?, &env)?;
            }
            Number => {
                let k = number(check, key)?;
                if k > 4 {
                    return Err(invalid("kmax is capped at 4"));
                }
            }
            Word => {
                word(check, key)?;
            }
        }
    }
    if check.op == "enumerate_operators" {
        match word(check, "target")? {
            "nijenhuis" | "rota_baxter" => {
                c.algebra(word(check, "algebra")?)?;
            }
            "o_operator" => {
                c.bimodule(word(check, "bimodule")?)?;
            }
            t => return Err(invalid(format!("unknown enumeration target {t:?}"))),
        }
    }
    for key in OUTPUT_ARGS {
        if check.args.contains_key(*key) {
            c.map(word(check, key)?, &env)?;
        }
    }
    let known: Vec<&str> = sig.iter().map(|(k, _)| *k).chain(OUTPUT_ARGS.iter().copied()).collect();
    for key in check.args.keys() {
        let extra = matches!(key.as_str(), "algebra" | "bimodule") && check.op == "enumerate_operators";
        if !known.contains(&key.as_str()) && !extra {
            return Err(invalid(format!("unexpected argument {key:?}")));
        }
    }
    Ok(())
}

/// Computed map next to the printed one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub name: String,
    pub computed: Matrix,
    pub printed: Matrix,
    pub equal: bool,
}

impl Comparison {
    fn new(name: &str, computed: Matrix, printed: Matrix) -> Self {
        let equal = computed == printed;
        Comparison { name: name.into(), computed, printed, equal }
    }
}

struct Eval {
    report: Report,
    comparisons: Vec<Comparison>,
    found: Vec<Matrix>,
}

impl Eval {
    fn of(report: Report) -> Self {
        Eval { report, comparisons: Vec::new(), found: Vec::new() }
    }

    fn verdict(&self, expect: Expect) -> bool {
        self.report.holds && (expect == Expect::Report || self.comparisons.iter().all(|c| c.equal))
    }
}

/// Errors that mean "the structure is not there" rather than "the scenario is broken".
fn is_negative(e: &Error) -> bool {
    matches!(
        e,
        Error::ComponentCheckFailed(_)
            | Error::NotNijenhuis
            | Error::NotOOperator
            | Error::NotRotaBaxter
            | Error::NotNijenhuisStructure
            | Error::NotDeformationPair
            | Error::NotCompatible
            | Error::NotOnStructure
            | Error::NotStrongMc
            | Error::NotSymmetric(_)
            | Error::SingularMatrix
            | Error::NotPreLie(_)
            | Error::InvalidBimodule(_)
            | Error::NotSubalgebra { .. }
    )
}

struct Args<'a> {
    c: &'a Compiled,
    check: &'a CheckSpec,
    env: &'a Env,
}

impl Args<'_> {
    fn alg(&self) -> Result<&Algebra> {
        self.c.algebra(word(self.check, "algebra")?)
    }

    fn bim(&self) -> Result<&Bimodule> {
        self.c.bimodule(word(self.check, "bimodule")?)
    }

    fn map(&self, key: &str) -> Result<Matrix> {
        self.c.map(word(self.check, key)?, self.env)
    }

    fn kmax(&self) -> Result<usize> {
        number(self.check, "kmax")
    }

    fn sym(&self, key: &str) -> Result<SymTensor2> {
        SymTensor2::new(self.map(key)?)
    }

    fn form(&self, key: &str) -> Result<SymForm2> {
        SymForm2::new(self.map(key)?)
    }

    fn compare(&self, key: &str, name: &str, computed: &Matrix, out: &mut Vec<Comparison>) -> Result<()> {
        if self.check.args.contains_key(key) {
            out.push(Comparison::new(name, computed.clone(), self.map(key)?));
        }
        Ok(())
    }

    fn on(&self) -> Result<OnStructure> {
        OnStructure::new(self.bim()?.clone(), self.map("T")?, self.map("N")?, self.map("S")?)
    }
}

fn on_report(os: &OnStructure) -> Result<Report> {
    match check_on_structure(os) {
        Err(e) if matches!(e, Error::ComponentCheckFailed(_)) => {
            let mut r = Report::pass("ON-structure");
            r.push_bool(e.to_string(), false);
            Ok(r)
        }
        other => other,
    }
}

/// `·^T_S`, `⋆^T` and `·^{N∘T}` coincide.
fn three_products(os: &OnStructure) -> Report {
    let (a, b, c) = (os.s_deformed(), os.star(), os.nt_product());
    let mut r = Report::pass("·^T_S = ⋆^T = ·^(N∘T)");
    r.add("·^T_S = ⋆^T", &compare_products("products", a.products(), b.products()));
    r.add("⋆^T = ·^(N∘T)", &compare_products("products", b.products(), c.products()));
    r
}

fn evaluate(c: &Compiled, check: &CheckSpec, env: &Env, cfg: &SearchConfig) -> Result<Eval> {
    let a = Args { c, check, env };
    let mut cmp = Vec::new();
    let report = match check.op.as_str() {
        "check_pre_lie" => a.alg()?.check_pre_lie(),
        "check_bimodule" => a.bim()?.check(),
        "check_nijenhuis" => check_nijenhuis(a.alg()?, &a.map("N")?)?,
        "nijenhuis_tower" => nijenhuis_tower(a.alg()?, &a.map("N")?, a.kmax()?)?,
        "check_o_operator" => check_o_operator(a.bim()?, &a.map("T")?)?,
        "check_rota_baxter" => check_rota_baxter(a.alg()?, &a.map("R")?)?,
        "check_nijenhuis_structure" => check_nijenhuis_structure(a.bim()?, &a.map("N")?, &a.map("S")?)?,
        "check_deformation_pair" => check_deformation_pair(a.bim()?, &a.map("N")?, &a.map("S")?)?,
        "check_trivial_deformation" => check_trivial_deformation(a.bim()?, &a.map("N")?, &a.map("S")?)?,
        "check_on_structure" => {
            let os = a.on()?;
            let mut r = on_report(&os)?;
            if r.holds {
                r.add_derived("·^T_S = ⋆^T = ·^(N∘T)", &three_products(&os));
            }
            r
        }
        "check_compatible" => check_compatible(a.bim()?, &a.map("T1")?, &a.map("T2")?)?,
        "on_from_compatible" => {
            let [s1, s2] = on_from_compatible(a.bim()?, &a.map("T1")?, &a.map("T2")?)?;
            a.compare("output_N", "N = T1 T2⁻¹", &s1.n, &mut cmp)?;
            a.compare("output_S", "S = T2⁻¹ T1", &s1.s, &mut cmp)?;
            let mut r = Report::pass("ON-structures from compatible O-operators");
            r.add("(T1, N, S) ON-structure", &on_report(&s1)?);
            r.add("(T2, N, S) ON-structure", &on_report(&s2)?);
            r
        }
        "hierarchy" => hierarchy(&a.on()?, a.kmax()?)?.report,
        "check_s_matrix" => check_s_matrix(a.alg()?, &a.sym("r")?)?,
        "check_pseudo_hessian" => check_pseudo_hessian(a.alg()?, &a.form("B")?)?,
        "check_kvn" => check_kvn(a.alg()?, &a.sym("r")?, &a.map("N")?)?,
        "check_hn" => check_hn(a.alg()?, &a.form("B")?, &a.map("N")?)?,
        "kvn_from_hn" => {
            let alg = a.alg()?;
            let (r, n) = kvn_from_hn(alg, &a.form("B")?, &a.map("N")?)?;
            a.compare("output", "r", r.matrix(), &mut cmp)?;
            check_kvn(alg, &r, &n)?
        }
        "kvb_from_hn" => {
            let alg = a.alg()?;
            let b = a.form("B")?;
            let r = kvb_from_hn(alg, &b, &a.map("N")?)?;
            a.compare("output", "r", r.matrix(), &mut cmp)?;
            check_kvb(alg, &r, &b)?
        }
        "check_kvb" => check_kvb(a.alg()?, &a.sym("r")?, &a.form("B")?)?,
        "kvn_from_kvb" => {
            let alg = a.alg()?;
            let (r, n) = kvn_from_kvb(alg, &a.sym("r")?, &a.form("B")?)?;
            a.compare("output", "N = r♯ B♮", &n, &mut cmp)?;
            check_kvn(alg, &r, &n)?
        }
        "hn_from_kvb" => {
            let alg = a.alg()?;
            let (b, n) = hn_from_kvb(alg, &a.sym("r")?, &a.form("B")?)?;
            a.compare("output", "N = r♯ B♮", &n, &mut cmp)?;
            check_hn(alg, &b, &n)?
        }
        "r_hierarchy" => r_hierarchy(a.alg()?, &a.sym("r")?, &a.map("N")?, a.kmax()?)?.report,
        "check_mc" => check_mc(&twilled_from_o_operator(a.bim()?, &a.map("T")?)?, &a.map("omega")?)?,
        "check_strong_mc" => check_strong_mc(&twilled_from_o_operator(a.bim()?, &a.map("T")?)?, &a.map("omega")?)?,
        "check_rb_strong_mc" => {
            let alg = a.alg()?;
            let (r, o) = (a.map("R")?, a.map("omega")?);
            let mut rep = check_rb_strong_mc(alg, &r, &o)?;
            let agree = rep.routes_agree == Some(true);
            rep.push_bool("agrees with the strong MC check on g ⋈ g_R", agree);
            rep
        }
        "omega_twist" => omega_twist(a.bim()?, &a.map("T")?, &a.map("omega")?)?.report,
        "on_from_mc" => {
            let (s1, s2) = on_from_mc(a.bim()?, &a.map("T")?, &a.map("omega")?)?;
            a.compare("output_N", "N = T Ω", &s1.n, &mut cmp)?;
            a.compare("output_S", "S = Ω T", &s1.s, &mut cmp)?;
            let mut r = Report::pass("ON-structures from a strong MC solution");
            r.add("(T, TΩ, ΩT) ON-structure", &on_report(&s1)?);
            r.add("(Ω, ΩT, TΩ) ON-structure", &on_report(&s2)?);
            r.add("products on V", &three_products(&s1));
            r.add("products on g", &three_products(&s2));
            r
        }
        "mc_from_on" => {
            let (omega, r) = mc_from_on(&a.on()?)?;
            a.compare("output", "Ω = T⁻¹ N", &omega, &mut cmp)?;
            r
        }
        "mc_round_trip" => {
            let omega = a.map("omega")?;
            let (s1, _) = on_from_mc(a.bim()?, &a.map("T")?, &omega)?;
            let (back, _) = mc_from_on(&s1)?;
            let mut r = Report::pass("MC → ON → MC");
            r.push_bool("mc_from_on ∘ on_from_mc = id", back == omega);
            let (again, _) = on_from_mc(a.bim()?, &s1.t, &back)?;
            r.push_bool("on_from_mc ∘ mc_from_on = id", again.n == s1.n && again.s == s1.s);
            r
        }
        "hierarchy_from_mc" => hierarchy_from_mc(a.bim()?, &a.map("T")?, &a.map("omega")?, a.kmax()?)?,
        "enumerate_operators" => {
            let target = match word(check, "target")? {
                "nijenhuis" => Target::Nijenhuis(a.alg()?),
                "rota_baxter" => Target::RotaBaxter(a.alg()?),
                _ => Target::OOperator(a.bim()?),
            };
            let found = enumerate_operators(&target, cfg)?;
            let mut r = enumeration_closure(&target, cfg, &found)?;
            if check.args.contains_key("contains") {
                r.push_bool("contains the printed map", found.contains(&a.map("contains")?));
            }
            return Ok(Eval { report: r, comparisons: cmp, found });
        }
        "solve_cocycle_space" => {
            let tw = twilled_from_o_operator(a.bim()?, &a.map("T")?)?;
            let basis = solve_cocycle_space(&tw);
            let (n1, n2) = tw.dims();
            let mut r = Report::pass("cocycle space");
            let rank = if basis.is_empty() {
                0
            } else {
                Matrix::from_rows(basis.iter().map(|b| b.entries().to_vec()).collect())?.rank()
            };
            r.push_bool("basis is independent", rank == basis.len());
            r.push_bool("dimension = unknowns − rank", basis.len() == n1 * n2 - cocycle_system(&tw).rank());
            let all = basis.iter().map(|b| check_strong_mc(&tw, b)).collect::<Result<Vec<_>>>()?;
            r.push_bool("every basis element solves the cocycle part", all.iter().all(|x| x.clause("cocycle part").is_some_and(|c| c.holds)));
            if check.args.contains_key("contains") {
                r.push_bool("contains the printed map", basis.contains(&a.map("contains")?));
            }
            return Ok(Eval { report: r, comparisons: cmp, found: basis });
        }
        "search_strong_mc" => {
            let tw = twilled_from_o_operator(a.bim()?, &a.map("T")?)?;
            let found = search_strong_mc(&tw, cfg)?;
            let mut r = Report::pass("strong MC search");
            let basis = solve_cocycle_space(&tw);
            let grid: Vec<Scalar> = cfg.coeff_grid.iter().cloned().sorted().dedup().collect();
            let mut filter = Vec::new();
            for coeffs in (0..basis.len()).map(|_| grid.iter()).multi_cartesian_product() {
                let (n1, n2) = tw.dims();
                let o = basis.iter().zip(&coeffs).fold(Matrix::zeros(n2, n1), |acc, (b, k)| acc.add(&b.scale(k)));
                if check_strong_mc(&tw, &o)?.all_clauses_hold() {
                    filter.push(o);
                }
            }
            if basis.is_empty() {
                filter.push(Matrix::zeros(tw.dims().1, tw.dims().0));
            }
            r.push_bool("equals the definitional filter", found == filter);
            r.push_bool("contains Ω = 0", found.iter().any(Matrix::is_zero));
            if check.args.contains_key("contains") {
                r.push_bool("contains the printed map", found.contains(&a.map("contains")?));
            }
            return Ok(Eval { report: r, comparisons: cmp, found });
        }
        op => return Err(invalid(format!("unknown operation {op:?}"))),
    };
    Ok(Eval { report, comparisons: cmp, found: Vec::new() })
}

/// The enumeration equals the filter of every grid candidate through the
/// public checks, and Nijenhuis outputs deform to pre-Lie algebras.
fn enumeration_closure(target: &Target<'_>, cfg: &SearchConfig, found: &[Matrix]) -> Result<Report> {
    let (rows, cols) = match target {
        Target::Nijenhuis(a) | Target::RotaBaxter(a) => (a.dim(), a.dim()),
        Target::OOperator(b) => (b.base().dim(), b.module_dim()),
    };
    let grid: Vec<Scalar> = cfg.grid.iter().cloned().sorted().dedup().collect();
    let mut filter = Vec::new();
    for e in (0..rows * cols).map(|_| grid.iter()).multi_cartesian_product() {
        let m = Matrix::from_fn(rows, cols, |i, j| e[i * cols + j].clone());
        let ok = match target {
            Target::Nijenhuis(a) => check_nijenhuis(a, &m)?.holds,
            Target::RotaBaxter(a) => check_rota_baxter(a, &m)?.holds,
            Target::OOperator(b) => check_o_operator(b, &m)?.holds,
        };
        if ok {
            filter.push(m);
        }
    }
    let mut r = Report::pass("operator enumeration").note(format!("{} operators found", found.len()));
    r.push_bool("equals the definitional filter", found == filter.as_slice());
    if let Target::Nijenhuis(a) = target {
        let closed = found.iter().all(|n| {
            let d = deformed_product_unchecked(a, n);
            d.is_pre_lie() && homomorphism_report("N", n, &d, a).holds
        });
        r.push_bool("every ·_N is pre-Lie with N a homomorphism", closed);
    }
    Ok(r)
}

fn evaluate_soft(c: &Compiled, check: &CheckSpec, env: &Env, cfg: &SearchConfig) -> Result<Eval> {
    match evaluate(c, check, env, cfg) {
        Err(e) if is_negative(&e) => {
            let mut r = Report::pass(check.op.clone());
            r.push_bool(e.to_string(), false);
            Ok(Eval::of(r))
        }
        other => other,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SampleSummary {
    pub count: usize,
    pub passed: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<BTreeMap<String, Scalar>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub op: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub expected: Expect,
    pub verdict: bool,
    pub matched: bool,
    pub report: Report,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub comparisons: Vec<Comparison>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<SampleSummary>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub found: Vec<Matrix>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScenarioOutcome {
    pub id: String,
    pub passed: bool,
    pub checks: Vec<CheckOutcome>,
}

fn run_check(c: &Compiled, check: &CheckSpec, cfg: &SearchConfig) -> Result<CheckOutcome> {
    let fixed = c.fixed_env();
    let eval = evaluate_soft(c, check, &fixed, cfg)?;
    let verdict = eval.verdict(check.expect);
    let sampled = check.family && !c.scenario.parameters.is_empty() && !SEARCH_OPS.contains(&check.op.as_str());
    let mut samples = None;
    let mut sample_ok = true;
    if sampled {
        let envs = sample_parameters(&c.scenario.parameters, c.nonzero(), cfg)?;
        let mut passed = 0;
        let mut witness = None;
        for env in &envs {
            let v = evaluate_soft(c, check, env, cfg)?.verdict(check.expect);
            let wanted = check.expect != Expect::False;
            if v == wanted {
                passed += 1;
            } else if witness.is_none() {
                witness = Some(env.clone());
            }
        }
        sample_ok = match check.expect {
            Expect::False => passed > 0,
            _ => passed == envs.len(),
        };
        let label = (check.expect != Expect::False && sample_ok).then(|| crate::search::PIT_LABEL.to_string());
        samples = Some(SampleSummary { count: envs.len(), passed, witness, label });
    }
    let matched = match check.expect {
        Expect::True | Expect::Report => verdict && sample_ok,
        Expect::False => !verdict && sample_ok,
    };
    Ok(CheckOutcome {
        op: check.op.clone(),
        label: check.label.clone(),
        expected: check.expect,
        verdict,
        matched,
        report: eval.report,
        comparisons: eval.comparisons,
        samples,
        found: eval.found,
    })
}

pub(super) fn run_compiled(c: &Compiled, samples: Option<usize>) -> Result<ScenarioOutcome> {
    let mut cfg = c.search_config();
    if let Some(n) = samples {
        cfg.samples = n;
        cfg.validate()?;
    }
    let checks = c.scenario.checks.iter().map(|ch| run_check(c, ch, &cfg)).collect::<Result<Vec<_>>>()?;
    Ok(ScenarioOutcome { id: c.scenario.id.clone(), passed: checks.iter().all(|o| o.matched), checks })
}

pub fn run_scenario_str(src: &str, samples: Option<usize>) -> Result<ScenarioOutcome> {
    run_compiled(&Scenario::compile(src)?, samples)
}

fn read(path: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))
}

pub fn run_scenario(path: &std::path::Path) -> Result<ScenarioOutcome> {
    run_scenario_str(&read(path)?, None)
}

/// `dim H^n` for every declared bimodule.
pub fn run_cohomology(src: &str, nmax: usize) -> Result<Vec<(String, Vec<CohomologyRow>)>> {
    let c = Scenario::compile(src)?;
    if c.bimodules.is_empty() {
        return Err(invalid("scenario declares no bimodule"));
    }
    Ok(c.bimodules.iter().map(|(name, b)| (name.clone(), cohomology_dims(b, nmax))).collect())
}

#[derive(Serialize)]
pub struct CochainResult {
    pub label: String,
    pub cochain: CochainJson,
}

/// MN brackets and coboundaries of the declared cochains.
pub fn run_brackets(src: &str) -> Result<Vec<CochainResult>> {
    let c = Scenario::compile(src)?;
    let mut out = Vec::new();
    for [l, r] in &c.scenario.brackets {
        let v = mn_bracket(&c.cochains[l], &c.cochains[r])?;
        out.push(CochainResult { label: format!("[{l}, {r}]"), cochain: CochainJson::from_cochain(&v) });
    }
    for cb in &c.scenario.coboundaries {
        let v = delta(c.bimodule(&cb.bimodule)?, &c.cochains[&cb.cochain])?;
        out.push(CochainResult { label: format!("δ_{} {}", cb.bimodule, cb.cochain), cochain: CochainJson::from_cochain(&v) });
    }
    if out.is_empty() {
        return Err(invalid("scenario declares no brackets or coboundaries"));
    }
    Ok(out)
}

/// Runs only the search operations of a scenario.
pub fn run_search(src: &str) -> Result<ScenarioOutcome> {
    let mut c = Scenario::compile(src)?;
    c.scenario.checks.retain(|ch| SEARCH_OPS.contains(&ch.op.as_str()));
    if c.scenario.checks.is_empty() {
        return Err(invalid("scenario declares no search operation"));
    }
    run_compiled(&c, None)
}

/// Process exit code for a failed run.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::SearchSpaceTooLarge { .. } => 3,
        Error::CheckMismatch(_) => 1,
        _ => 2,
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let expected = match self.expected {
            Expect::True => "true",
            Expect::False => "false",
            Expect::Report => "report",
        };
        let name = self.label.as_deref().unwrap_or(&self.op);
        write!(
            f,
            "[{}] {name}: verdict {}, expected {expected}",
            if self.matched { "ok" } else { "MISMATCH" },
            self.verdict
        )?;
        if let Some(s) = &self.samples {
            write!(f, "; samples {}/{}", s.passed, s.count)?;
            if let Some(l) = &s.label {
                write!(f, " {l}")?;
            }
            if let Some(w) = &s.witness {
                let w: Vec<String> = w.iter().map(|(k, v)| format!("{k}={v}")).collect();
                write!(f, "; witness {}", w.join(", "))?;
            }
        }
        if !self.matched || self.expected == Expect::Report {
            for line in self.report.to_string().lines() {
                write!(f, "\n    {line}")?;
            }
        }
        for c in &self.comparisons {
            write!(f, "\n    {} {}", c.name, if c.equal { "matches the printed map" } else { "differs from the printed map" })?;
            if !c.equal {
                write!(f, "\n      computed: {:?}\n      printed:  {:?}", c.computed, c.printed)?;
            }
        }
        if !self.found.is_empty() {
            write!(f, "\n    {} maps:", self.found.len())?;
            for m in self.found.iter().take(12) {
                write!(f, "\n      {m:?}")?;
            }
            if self.found.len() > 12 {
                write!(f, "\n      …")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for ScenarioOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.id, if self.passed { "pass" } else { "FAIL" })?;
        for c in &self.checks {
            write!(f, "\n  {c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::corpus_entries;

    #[test]
    fn every_corpus_entry_passes() {
        for (id, src) in corpus_entries() {
            let out = run_scenario_str(src, Some(8)).unwrap_or_else(|e| panic!("{id}: {e}"));
            assert!(out.passed, "{out}");
        }
    }
}
