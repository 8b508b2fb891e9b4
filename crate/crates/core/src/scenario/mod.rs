//! Scenario files: UTF-8 JSON declaring algebras, bimodules, parameterized
//! maps and an ordered list of checks with expected verdicts.
//!
//! ```json
//! {
//!   "id": "a2-hn",
//!   "algebras": { "g": "A2" },
//!   "bimodules": { "dual": { "algebra": "g", "kind": "dual-regular" } },
//!   "parameters": ["a", "b"],
//!   "nonzero": ["a"],
//!   "instantiation": { "a": "1", "b": "2" },
//!   "maps": { "B": [["0", "a"], ["a", "b"]] },
//!   "checks": [ { "op": "check_pseudo_hessian", "algebra": "g", "B": "B", "expect": "true" } ]
//! }
//! ```

mod corpus;
mod run;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Deserializer, Serialize};
use serde_json::Value;

use crate::algebra::{Algebra, Bimodule};
use crate::cochain::{Cochain, CochainJson};
use crate::corpus_algebras;
use crate::error::{Error, Result};
use crate::expr::{Env, Expr};
use crate::linalg::{Matrix, Scalar};
use crate::search::SearchConfig;

pub use corpus::{corpus_entries, corpus_ids, run_corpus, CorpusOutcome, EntryOutcome};
pub use run::{
    exit_code, run_brackets, run_cohomology, run_scenario, run_scenario_str, run_search, ArgKind, CheckOutcome, CochainResult, Comparison,
    ScenarioOutcome, OPERATIONS,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraSpec {
    Builtin(String),
    Explicit(Algebra),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BimoduleKind {
    Regular,
    DualRegular,
    Trivial,
    Dual,
    Explicit,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BimoduleSpec {
    pub algebra: String,
    pub kind: BimoduleKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    /// Source bimodule for `dual`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub of: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left: Option<Vec<Matrix>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right: Option<Vec<Matrix>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymEntrySpec {
    pub i: usize,
    pub j: usize,
    pub c: String,
}

/// A map given by expression entries, a symmetric entry list, or derived from other maps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MapSpec {
    Rows(Vec<Vec<String>>),
    Sym {
        dim: usize,
        entries: Vec<SymEntrySpec>,
    },
    Product {
        product: Vec<String>,
    },
    Transpose {
        transpose: String,
    },
    Inverse {
        inverse: String,
    },
    Zero {
        zero: [usize; 2],
    },
    Identity {
        identity: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Expect {
    True,
    False,
    Report,
}

impl<'de> Deserialize<'de> for Expect {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match Value::deserialize(d)? {
            Value::Bool(true) => Ok(Expect::True),
            Value::Bool(false) => Ok(Expect::False),
            Value::String(s) if s == "true" => Ok(Expect::True),
            Value::String(s) if s == "false" => Ok(Expect::False),
            Value::String(s) if s == "report" => Ok(Expect::Report),
            other => Err(serde::de::Error::custom(format!(
                "expected verdict must be \"true\", \"false\" or \"report\", found {other}"
            ))),
        }
    }
}

fn default_true() -> bool {
    true
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckSpec {
    pub op: String,
    pub expect: Expect,
    /// Whether to repeat the check at sampled parameter values.
    #[serde(default = "default_true")]
    pub family: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    /// Operation arguments: names of declared objects, or numbers such as `kmax`.
    #[serde(flatten)]
    pub args: BTreeMap<String, Value>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainSpec {
    pub algebra: String,
    /// Dimension of the value space; defaults to the algebra's dimension.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<usize>,
    #[serde(flatten)]
    pub body: CochainJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoboundarySpec {
    pub cochain: String,
    pub bimodule: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub id: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub description: String,
    #[serde(default)]
    pub algebras: BTreeMap<String, AlgebraSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub bimodules: BTreeMap<String, BimoduleSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub parameters: Vec<String>,
    /// Expressions that must not vanish at any instantiation.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub nonzero: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub instantiation: BTreeMap<String, Scalar>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub maps: BTreeMap<String, MapSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub cochains: BTreeMap<String, CochainSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub brackets: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub coboundaries: Vec<CoboundarySpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchConfig>,
}

/// Parsed expression form of a map.
#[derive(Clone, Debug)]
enum MapExpr {
    Grid(Vec<Vec<Expr>>),
    Product(Vec<String>),
    Transpose(String),
    Inverse(String),
}

/// A validated scenario with resolved algebras, bimodules and parsed maps.
#[derive(Clone, Debug)]
pub struct Compiled {
    pub scenario: Scenario,
    pub algebras: BTreeMap<String, Algebra>,
    pub bimodules: BTreeMap<String, Bimodule>,
    pub cochains: BTreeMap<String, Cochain>,
    maps: BTreeMap<String, MapExpr>,
    nonzero: Vec<Expr>,
}

/// 1-based line and column of the first occurrence of `needle` in `src`.
fn locate(src: &str, needle: &str) -> (usize, usize) {
    match src.find(needle) {
        Some(off) => {
            let before = &src[..off];
            let line = before.matches('\n').count() + 1;
            let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
            (line, col)
        }
        None => (0, 0),
    }
}

fn parse_expr(src: &str, text: &str) -> Result<Expr> {
    Expr::parse(text).map_err(|e| {
        let (line, col) = locate(src, &format!("\"{text}\""));
        Error::Parse {
            line,
            column: if line == 0 { e.column } else { col + e.column },
            message: format!("in {text:?}: {}", e.message),
        }
    })
}

impl Scenario {
    pub fn from_json(src: &str) -> Result<Scenario> {
        serde_json::from_str(src).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }

    /// Parses and validates.
    pub fn compile(src: &str) -> Result<Compiled> {
        let sc = Scenario::from_json(src)?;
        Compiled::new(sc, src)
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::Validation(msg.into())
}

impl Compiled {
    fn new(scenario: Scenario, src: &str) -> Result<Compiled> {
        let mut algebras = BTreeMap::new();
        for (name, spec) in &scenario.algebras {
            let alg = match spec {
                AlgebraSpec::Builtin(b) => {
                    corpus_algebras::by_name(b).ok_or_else(|| invalid(format!("unknown built-in algebra {b:?}")))?
                }
                AlgebraSpec::Explicit(a) => a.clone(),
            };
            algebras.insert(name.clone(), alg);
        }
        let mut bimodules = BTreeMap::new();
        let mut pending: Vec<&String> = scenario.bimodules.keys().collect();
        // `dual` may refer to a bimodule declared under any name, so resolve in rounds.
        while !pending.is_empty() {
            let before = pending.len();
            let mut rest = Vec::new();
            for name in pending {
                let spec = &scenario.bimodules[name];
                match build_bimodule(spec, &algebras, &bimodules)? {
                    Some(b) => {
                        bimodules.insert(name.clone(), b);
                    }
                    None => rest.push(name),
                }
            }
            if rest.len() == before {
                return Err(invalid(format!("unresolvable bimodule references: {rest:?}")));
            }
            pending = rest;
        }
        let mut maps = BTreeMap::new();
        for (name, spec) in &scenario.maps {
            let parsed = match spec {
                MapSpec::Rows(rows) => {
                    let width = rows.first().map_or(0, Vec::len);
                    if rows.iter().any(|r| r.len() != width) {
                        return Err(invalid(format!("map {name:?} has ragged rows")));
                    }
                    MapExpr::Grid(
                        rows.iter()
                            .map(|r| r.iter().map(|c| parse_expr(src, c)).collect::<Result<Vec<_>>>())
                            .collect::<Result<_>>()?,
                    )
                }
                MapSpec::Sym { dim, entries } => {
                    let mut grid = vec![vec![Expr::constant(Scalar::zero()); *dim]; *dim];
                    for e in entries {
                        if e.i == 0 || e.j == 0 || e.i > *dim || e.j > *dim {
                            return Err(invalid(format!("map {name:?}: entry ({}, {}) out of range", e.i, e.j)));
                        }
                        let x = parse_expr(src, &e.c)?;
                        grid[e.i - 1][e.j - 1] = x.clone();
                        grid[e.j - 1][e.i - 1] = x;
                    }
                    MapExpr::Grid(grid)
                }
                MapSpec::Product { product } => MapExpr::Product(product.clone()),
                MapSpec::Transpose { transpose } => MapExpr::Transpose(transpose.clone()),
                MapSpec::Inverse { inverse } => MapExpr::Inverse(inverse.clone()),
                MapSpec::Zero { zero } => MapExpr::Grid(vec![vec![Expr::constant(Scalar::zero()); zero[1]]; zero[0]]),
                MapSpec::Identity { identity } => MapExpr::Grid(
                    (0..*identity)
                        .map(|i| {
                            (0..*identity)
                                .map(|j| Expr::constant(if i == j { Scalar::one() } else { Scalar::zero() }))
                                .collect()
                        })
                        .collect(),
                ),
            };
            maps.insert(name.clone(), parsed);
        }
        let mut cochains = BTreeMap::new();
        for (name, spec) in &scenario.cochains {
            let alg = algebras
                .get(&spec.algebra)
                .ok_or_else(|| invalid(format!("cochain {name:?}: unknown algebra {:?}", spec.algebra)))?;
            let target = spec.target.unwrap_or(alg.dim());
            cochains.insert(name.clone(), spec.body.clone().into_cochain(alg.dim(), target)?);
        }
        let nonzero = scenario.nonzero.iter().map(|e| parse_expr(src, e)).collect::<Result<Vec<_>>>()?;
        let c = Compiled { scenario, algebras, bimodules, cochains, maps, nonzero };
        c.validate(src)?;
        Ok(c)
    }

    fn validate(&self, src: &str) -> Result<()> {
        let sc = &self.scenario;
        let params: BTreeSet<&String> = sc.parameters.iter().collect();
        if params.len() != sc.parameters.len() {
            return Err(invalid("duplicate parameter names"));
        }
        for p in &sc.parameters {
            if !sc.instantiation.contains_key(p) {
                return Err(invalid(format!("parameter {p:?} has no fixed instantiation")));
            }
        }
        for k in sc.instantiation.keys() {
            if !params.contains(k) {
                return Err(invalid(format!("instantiation of undeclared parameter {k:?}")));
            }
        }
        let mut free = BTreeSet::new();
        for m in self.maps.values() {
            match m {
                MapExpr::Grid(rows) => rows.iter().flatten().for_each(|e| free.extend(e.vars())),
                MapExpr::Product(names) => {
                    if names.is_empty() {
                        return Err(invalid("empty product"));
                    }
                    for n in names {
                        self.require_map(n)?;
                    }
                }
                MapExpr::Transpose(n) | MapExpr::Inverse(n) => self.require_map(n)?,
            }
        }
        for e in &self.nonzero {
            free.extend(e.vars());
        }
        for v in &free {
            if !params.contains(v) {
                return Err(invalid(format!("expression uses undeclared parameter {v:?}")));
            }
        }
        let env = self.fixed_env();
        for (e, text) in self.nonzero.iter().zip(&sc.nonzero) {
            if e.eval(&env).map_err(invalid)?.is_zero() {
                return Err(invalid(format!("constraint {text} ≠ 0 fails at the fixed instantiation")));
            }
        }
        // Constant expressions such as "1/0" are rejected at load time with their location.
        for (name, spec) in &sc.maps {
            if let MapSpec::Rows(rows) = spec {
                for c in rows.iter().flatten() {
                    let e = Expr::parse(c).expect("parsed above");
                    if e.vars().is_empty() {
                        e.eval(&env).map_err(|m| {
                            let (line, column) = locate(src, &format!("\"{c}\""));
                            Error::Parse { line, column, message: format!("map {name:?}: {m}") }
                        })?;
                    }
                }
            }
            self.map(name, &env).map_err(|e| match e {
                Error::SingularMatrix => invalid(format!("map {name:?} inverts a singular matrix")),
                other => other,
            })?;
        }
        for (k, check) in sc.checks.iter().enumerate() {
            run::validate_check(self, check).map_err(|e| match e {
                Error::Validation(m) => invalid(format!("check {} ({}): {m}", k + 1, check.op)),
                other => other,
            })?;
        }
        for [a, b] in &sc.brackets {
            for n in [a, b] {
                if !self.cochains.contains_key(n) {
                    return Err(invalid(format!("bracket of undeclared cochain {n:?}")));
                }
            }
        }
        for c in &sc.coboundaries {
            if !self.cochains.contains_key(&c.cochain) {
                return Err(invalid(format!("coboundary of undeclared cochain {:?}", c.cochain)));
            }
            self.bimodule(&c.bimodule)?;
        }
        if let Some(cfg) = &sc.search {
            cfg.validate()?;
        }
        Ok(())
    }

    fn require_map(&self, name: &str) -> Result<()> {
        if self.maps.contains_key(name) {
            Ok(())
        } else {
            Err(invalid(format!("undeclared map {name:?}")))
        }
    }

    pub fn fixed_env(&self) -> Env {
        self.scenario.instantiation.clone()
    }

    pub fn nonzero(&self) -> &[Expr] {
        &self.nonzero
    }

    pub fn search_config(&self) -> SearchConfig {
        self.scenario.search.clone().unwrap_or_default()
    }

    pub fn algebra(&self, name: &str) -> Result<&Algebra> {
        self.algebras.get(name).ok_or_else(|| invalid(format!("undeclared algebra {name:?}")))
    }

    pub fn bimodule(&self, name: &str) -> Result<&Bimodule> {
        self.bimodules.get(name).ok_or_else(|| invalid(format!("undeclared bimodule {name:?}")))
    }

    /// Evaluates a declared map at a parameter instantiation.
    pub fn map(&self, name: &str, env: &Env) -> Result<Matrix> {
        self.map_depth(name, env, 0)
    }

    fn map_depth(&self, name: &str, env: &Env, depth: usize) -> Result<Matrix> {
        if depth > 32 {
            return Err(invalid(format!("map {name:?} is defined cyclically")));
        }
        let spec = self.maps.get(name).ok_or_else(|| invalid(format!("undeclared map {name:?}")))?;
        match spec {
            MapExpr::Grid(rows) => {
                let vals = rows
                    .iter()
                    .map(|r| r.iter().map(|e| e.eval(env).map_err(|m| invalid(format!("map {name:?}: {m}")))).collect())
                    .collect::<Result<Vec<Vec<Scalar>>>>()?;
                if vals.is_empty() {
                    return Ok(Matrix::zeros(0, 0));
                }
                Matrix::from_rows(vals)
            }
            MapExpr::Product(names) => {
                let mut acc = self.map_depth(&names[0], env, depth + 1)?;
                for n in &names[1..] {
                    let m = self.map_depth(n, env, depth + 1)?;
                    if acc.cols() != m.rows() {
                        return Err(Error::dims(format!("product {names:?} has incompatible shapes")));
                    }
                    acc = acc.mul(&m);
                }
                Ok(acc)
            }
            MapExpr::Transpose(n) => Ok(self.map_depth(n, env, depth + 1)?.transpose()),
            MapExpr::Inverse(n) => self.map_depth(n, env, depth + 1)?.invert(),
        }
    }
}

fn build_bimodule(
    spec: &BimoduleSpec,
    algebras: &BTreeMap<String, Algebra>,
    done: &BTreeMap<String, Bimodule>,
) -> Result<Option<Bimodule>> {
    let alg = algebras
        .get(&spec.algebra)
        .ok_or_else(|| invalid(format!("bimodule over undeclared algebra {:?}", spec.algebra)))?;
    let b = match spec.kind {
        BimoduleKind::Regular => Bimodule::regular(alg),
        BimoduleKind::DualRegular => Bimodule::regular(alg).dual()?,
        BimoduleKind::Trivial => {
            Bimodule::trivial(alg, spec.dim.ok_or_else(|| invalid("trivial bimodule needs \"dim\""))?)
        }
        BimoduleKind::Dual => {
            let of = spec.of.as_ref().ok_or_else(|| invalid("dual bimodule needs \"of\""))?;
            match done.get(of) {
                Some(src) => src.dual()?,
                None => return Ok(None),
            }
        }
        BimoduleKind::Explicit => {
            let left = spec.left.clone().ok_or_else(|| invalid("explicit bimodule needs \"left\""))?;
            let right = spec.right.clone().ok_or_else(|| invalid("explicit bimodule needs \"right\""))?;
            let m = spec.dim.or_else(|| left.first().map(Matrix::rows)).unwrap_or(0);
            Bimodule::new(alg.clone(), m, left, right)?
        }
    };
    Ok(Some(b))
}
