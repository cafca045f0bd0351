//! Modules attached to closed points: finite-dimensional matrix
//! representations and windowed infinite weight modules, together with
//! exact relation, irreducibility and Casimir checks.
//!
//! Both kinds live on a basis `u_m` indexed by integers, with
//!
//! ```text
//! f u_m = fcoef(m) u_(m+1),   e u_m = ecoef(m) u_(m-1),   h u_m = weight(m) u_m.
//! ```

mod doc;
mod finite;
mod matrix;
mod weight;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::jz::{bipoly_to_words, casimir_polynomial, FreeWord, Letter, WordSum};
use crate::qfield::{big, BaseField, RatFunc};
use crate::spectrum::{Classification, PointParams, PointType, SpectrumError};

pub use doc::{MatricesDoc, ModuleDoc};
pub use finite::{build_finite, build_finite_classified, MatrixRep};
pub use matrix::{Echelon, Matrix};
pub use weight::{build_weight_module, build_weight_module_classified, WeightKind, WeightModule};

pub const DEFAULT_WINDOW: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("point is {found}, which has no {wanted} module")]
    WrongType { wanted: String, found: String },
    #[error("beta = 2/(q - 1) makes every weight equal; no weight module is built")]
    DegenerateWeights,
    #[error("window size must be at least 1")]
    EmptyWindow,
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error("generation says irreducible = {generation}, ladder says {ladder}")]
    MethodsDisagree { generation: bool, ladder: bool },
    #[error("bad shape: {0}")]
    Shape(String),
    #[error("bad module document: {0}")]
    Document(String),
}

/// One nonzero entry of a relation evaluated on the module.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Residual {
    pub relation: String,
    /// Basis index the relation was applied to.
    pub index: i64,
    /// Basis index of the offending component.
    pub component: i64,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    pub pass: bool,
    /// Basis vectors on which every relation was evaluated.
    pub checked: usize,
    /// Boundary basis vectors whose image leaves the window.
    pub skipped: usize,
    pub residuals: Vec<Residual>,
}

/// A proper nonzero subspace closed under `e`, `f`, `h`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantSubspace {
    pub generated_by: usize,
    pub basis: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenerationWitness {
    /// Dimension of the submodule generated by each standard basis vector.
    pub closure_dims: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub invariant_subspace: Option<InvariantSubspace>,
}

/// A ladder constant named by operator and basis index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LadderSlot {
    pub op: String,
    pub index: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LadderWitness {
    /// `h` diagonal, `e` lowering and `f` raising by one step.
    pub applicable: bool,
    pub distinct_weights: bool,
    pub constants_checked: usize,
    /// Constants that must vanish at the boundary of the module, and do.
    pub boundary_zeros: Vec<LadderSlot>,
    /// Constants that vanish where they should not (or boundary ones that do not).
    pub breaks: Vec<LadderSlot>,
    /// The complete vanishing set, which rules out breaks outside the window.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub vanishing_set: Option<Vec<i64>>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrreducibilityCertificate {
    pub irreducible: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub generation: Option<GenerationWitness>,
    pub ladder: LadderWitness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CasimirReport {
    /// `2 alpha - beta + (q/2) beta^2`, the scalar on `u_0`.
    pub base: String,
    pub checked: usize,
    pub skipped: usize,
    pub mismatches: Vec<i64>,
    pub pass: bool,
}

/// `q^m (2 alpha - beta + (q/2) beta^2)`, the Casimir scalar on `u_m`.
pub fn casimir_scalar(p: &PointParams, m: i64) -> RatFunc {
    &casimir_polynomial(p.field.q()).eval(&p.alpha, &p.beta) * &p.field.q_pow(m)
}

pub(crate) type SVec = BTreeMap<i64, RatFunc>;

/// The three defining relations, each written as an element that must act as zero.
pub(crate) fn relation_words(q: &RatFunc) -> Vec<(&'static str, WordSum)> {
    let w = |c: RatFunc, s: &str| FreeWord::parse(s).expect("letters e, f, h").scaled(&c);
    let one = RatFunc::one();
    let quad = (&one - q).scale(&big(4).recip());
    vec![
        (
            "q h e - e h - 2 e",
            vec![w(q.clone(), "he"), w(-&one, "eh"), w(RatFunc::from_int(-2), "e")],
        ),
        (
            "h f - q f h + 2 f",
            vec![w(one.clone(), "hf"), w(-q, "fh"), w(RatFunc::from_int(2), "f")],
        ),
        (
            "e f - q f e - h - (1 - q)/4 h^2",
            vec![w(one.clone(), "ef"), w(-q, "fe"), w(-&one, "h"), w(-&quad, "hh")],
        ),
    ]
}

/// Shared interface for acting on basis combinations.
pub(crate) trait LadderAction {
    fn field(&self) -> &BaseField;
    fn index_range(&self) -> (i64, i64);
    /// `None` when a nonzero coefficient would leave the basis.
    fn act(&self, l: Letter, v: &SVec) -> Option<SVec>;

    fn apply_words(&self, words: &[FreeWord], m: i64) -> Option<SVec> {
        let mut acc = SVec::new();
        for w in words {
            let mut v = SVec::from([(m, RatFunc::one())]);
            for &l in w.letters().iter().rev() {
                v = self.act(l, &v)?;
            }
            for (k, c) in v {
                add_to(&mut acc, k, &(&c * w.coeff()));
            }
        }
        Some(acc)
    }

    /// The coefficient of `u_m` in `C u_m`, provided `C u_m` is a multiple of `u_m`.
    fn casimir_direct(&self, m: i64) -> Option<Result<RatFunc, SVec>> {
        let c = bipoly_to_words(&casimir_polynomial(self.field().q()));
        let v = self.apply_words(&c, m)?;
        if v.keys().all(|&k| k == m) {
            Some(Ok(v.get(&m).cloned().unwrap_or_else(RatFunc::zero)))
        } else {
            Some(Err(v))
        }
    }
}

pub(crate) fn add_to(v: &mut SVec, k: i64, c: &RatFunc) {
    if c.is_zero() {
        return;
    }
    let s = v.get(&k).map_or_else(|| c.clone(), |old| old + c);
    if s.is_zero() {
        v.remove(&k);
    } else {
        v.insert(k, s);
    }
}

pub(crate) fn casimir_report_for<A: LadderAction>(rep: &A, p: &PointParams) -> CasimirReport {
    let (lo, hi) = rep.index_range();
    let (mut checked, mut skipped, mut mismatches) = (0, 0, Vec::new());
    for m in lo..=hi {
        match rep.casimir_direct(m) {
            None => skipped += 1,
            Some(Ok(c)) if c == casimir_scalar(p, m) => checked += 1,
            Some(_) => {
                checked += 1;
                mismatches.push(m);
            }
        }
    }
    CasimirReport {
        base: casimir_scalar(p, 0).to_string(),
        checked,
        skipped,
        pass: mismatches.is_empty(),
        mismatches,
    }
}

/// A constructed module of either kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Module {
    Finite(MatrixRep),
    Weight(WeightModule),
}

impl Module {
    pub fn check_relations(&self) -> RelationReport {
        match self {
            Module::Finite(m) => m.check_relations(),
            Module::Weight(w) => w.check_relations(),
        }
    }

    pub fn check_irreducible(&self) -> Result<IrreducibilityCertificate, RepError> {
        match self {
            Module::Finite(m) => m.check_irreducible(),
            Module::Weight(w) => Ok(w.check_irreducible()),
        }
    }

    pub fn casimir_report(&self) -> Option<CasimirReport> {
        match self {
            Module::Finite(m) => m.casimir_report(),
            Module::Weight(w) => Some(w.casimir_report()),
        }
    }

    /// Direct action of `2 e f - h + (q/2) h^2` on `u_m`, if it is a multiple of `u_m`.
    pub fn casimir_action(&self, m: i64) -> Option<RatFunc> {
        let r = match self {
            Module::Finite(x) => x.casimir_direct(m),
            Module::Weight(x) => x.casimir_direct(m),
        };
        r.and_then(Result::ok)
    }
}

/// The module attached to a classified point: finite for `T11`/`T1n`, a
/// weight module on `window` steps otherwise.
pub fn build_module(p: &PointParams, class: &Classification, window: usize) -> Result<Module, RepError> {
    match class.point_type {
        PointType::T11 | PointType::T1n(_) => build_finite_classified(p, class).map(Module::Finite),
        t => match WeightKind::for_type(t) {
            Some(kind) => build_weight_module_classified(p, class, kind, window).map(Module::Weight),
            None => Err(RepError::WrongType {
                wanted: "representation".into(),
                found: t.to_string(),
            }),
        },
    }
}

pub(crate) fn refuse_degenerate(p: &PointParams) -> Result<(), RepError> {
    if p.beta == crate::spectrum::special_beta(&p.field) {
        return Err(RepError::DegenerateWeights);
    }
    Ok(())
}
