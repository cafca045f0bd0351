//! Infinite-dimensional weight modules, materialized on a finite window.
//!
//! Basis `u_m` is the class of `y^m` for `m >= 0` and of `x^(-m)` for `m < 0`:
//!
//! ```text
//! fcoef(m) = 1 (m >= 0),    theta^m(xi)(alpha, beta)     (m < 0)
//! ecoef(m) = 1 (m <= 0),    theta^(m-1)(xi)(alpha, beta) (m >= 1)
//! weight(m) = theta^m(h)(alpha, beta)
//! ```
//!
//! The highest weight module lives on `[0, N]` with `ecoef(0) = 0`, the
//! lowest on `[-N, 0]` with `fcoef(0) = theta^0(xi)(alpha, beta) = alpha = 0`,
//! the dense one on `[-N, N]`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::jz::Letter;
use crate::qfield::{BaseField, RatFunc};
use crate::spectrum::{classify, orbit_window, Classification, PointParams, PointType, DEFAULT_SCAN_BOUND};

use super::{
    add_to, casimir_report_for, refuse_degenerate, relation_words, CasimirReport, IrreducibilityCertificate,
    LadderAction, LadderSlot, LadderWitness, RelationReport, RepError, Residual, SVec,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightKind {
    Highest,
    Lowest,
    Dense,
}

impl WeightKind {
    pub fn for_type(t: PointType) -> Option<Self> {
        match t {
            PointType::T1Inf => Some(WeightKind::Highest),
            PointType::TInf1 => Some(WeightKind::Lowest),
            PointType::TInfInf => Some(WeightKind::Dense),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            WeightKind::Highest => "highest",
            WeightKind::Lowest => "lowest",
            WeightKind::Dense => "dense",
        }
    }

    pub fn window(&self, n: i64) -> (i64, i64) {
        match self {
            WeightKind::Highest => (0, n),
            WeightKind::Lowest => (-n, 0),
            WeightKind::Dense => (-n, n),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightModule {
    kind: WeightKind,
    point: PointParams,
    lo: i64,
    hi: i64,
    weights: Vec<RatFunc>,
    fcoef: Vec<RatFunc>,
    ecoef: Vec<RatFunc>,
    vanishing: Option<Vec<i64>>,
}

impl WeightModule {
    /// Assemble from explicit structure constants listed for `m = lo, ..., hi`.
    pub fn from_parts(
        kind: WeightKind,
        point: PointParams,
        lo: i64,
        weights: Vec<RatFunc>,
        fcoef: Vec<RatFunc>,
        ecoef: Vec<RatFunc>,
    ) -> Result<Self, RepError> {
        let len = weights.len();
        if len == 0 || fcoef.len() != len || ecoef.len() != len {
            return Err(RepError::Shape("weights, fcoef, ecoef must have one equal nonzero length".into()));
        }
        Ok(WeightModule {
            kind,
            point,
            lo,
            hi: lo + len as i64 - 1,
            weights,
            fcoef,
            ecoef,
            vanishing: None,
        })
    }

    pub fn kind(&self) -> WeightKind {
        self.kind
    }

    pub fn point(&self) -> &PointParams {
        &self.point
    }

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    fn slot(&self, m: i64) -> Option<usize> {
        (self.lo..=self.hi).contains(&m).then(|| (m - self.lo) as usize)
    }

    pub fn weight(&self, m: i64) -> Option<&RatFunc> {
        self.slot(m).map(|i| &self.weights[i])
    }

    pub fn fcoef(&self, m: i64) -> Option<&RatFunc> {
        self.slot(m).map(|i| &self.fcoef[i])
    }

    pub fn ecoef(&self, m: i64) -> Option<&RatFunc> {
        self.slot(m).map(|i| &self.ecoef[i])
    }

    pub fn weights(&self) -> &[RatFunc] {
        &self.weights
    }

    pub fn fcoefs(&self) -> &[RatFunc] {
        &self.fcoef
    }

    pub fn ecoefs(&self) -> &[RatFunc] {
        &self.ecoef
    }

    /// Relations on every basis vector whose image stays in the window.
    pub fn check_relations(&self) -> RelationReport {
        let relations = relation_words(self.point.field.q());
        let (mut checked, mut skipped, mut residuals) = (0, 0, Vec::new());
        for m in self.lo..=self.hi {
            let images: Option<Vec<_>> = relations
                .iter()
                .map(|(name, words)| self.apply_words(words, m).map(|v| (name, v)))
                .collect();
            let Some(images) = images else {
                skipped += 1;
                continue;
            };
            checked += 1;
            for (name, v) in images {
                for (k, c) in v {
                    residuals.push(Residual {
                        relation: name.to_string(),
                        index: m,
                        component: k,
                        value: c.to_string(),
                    });
                }
            }
        }
        RelationReport {
            pass: residuals.is_empty(),
            checked,
            skipped,
            residuals,
        }
    }

    /// Ladder criterion inside the window, with the exact vanishing set
    /// standing in for the part of the ladder outside it.
    pub fn check_irreducible(&self) -> IrreducibilityCertificate {
        let mut seen = HashSet::new();
        let distinct_weights = self.weights.iter().all(|w| seen.insert(w));
        let mut boundary_zeros = Vec::new();
        let mut breaks = Vec::new();
        let mut checked = 0;
        for m in self.lo..=self.hi {
            for (op, c) in [("f", self.fcoef(m).unwrap()), ("e", self.ecoef(m).unwrap())] {
                checked += 1;
                let boundary = matches!(
                    (self.kind, op, m),
                    (WeightKind::Highest, "e", 0) | (WeightKind::Lowest, "f", 0)
                );
                let slot = LadderSlot { op: op.into(), index: m };
                match (boundary, c.is_zero()) {
                    (true, true) => boundary_zeros.push(slot),
                    (false, false) => {}
                    _ => breaks.push(slot),
                }
            }
        }
        let global = self.vanishing.as_ref().is_none_or(|v| match self.kind {
            WeightKind::Highest => v.iter().all(|&n| n < 0),
            WeightKind::Lowest => v.iter().all(|&n| n >= 0),
            WeightKind::Dense => v.is_empty(),
        });
        let pass = distinct_weights && breaks.is_empty() && global;
        IrreducibilityCertificate {
            irreducible: pass,
            generation: None,
            ladder: LadderWitness {
                applicable: true,
                distinct_weights,
                constants_checked: checked,
                boundary_zeros,
                breaks,
                vanishing_set: self.vanishing.clone(),
                pass,
            },
        }
    }

    pub fn casimir_report(&self) -> CasimirReport {
        casimir_report_for(self, &self.point)
    }
}

impl LadderAction for WeightModule {
    fn field(&self) -> &BaseField {
        &self.point.field
    }

    fn index_range(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    fn act(&self, l: Letter, v: &SVec) -> Option<SVec> {
        let mut out = SVec::new();
        for (&m, c) in v {
            let (coef, target) = match l {
                Letter::E => (self.ecoef(m)?, m - 1),
                Letter::F => (self.fcoef(m)?, m + 1),
                Letter::H => (self.weight(m)?, m),
            };
            if coef.is_zero() {
                continue;
            }
            self.slot(target)?;
            add_to(&mut out, target, &(c * coef));
        }
        Some(out)
    }
}

pub fn build_weight_module(p: &PointParams, kind: WeightKind, window: usize) -> Result<WeightModule, RepError> {
    let class = classify(p, DEFAULT_SCAN_BOUND)?;
    build_weight_module_classified(p, &class, kind, window)
}

pub fn build_weight_module_classified(
    p: &PointParams,
    class: &Classification,
    kind: WeightKind,
    window: usize,
) -> Result<WeightModule, RepError> {
    if WeightKind::for_type(class.point_type) != Some(kind) {
        return Err(RepError::WrongType {
            wanted: format!("{} weight", kind.name()),
            found: class.point_type.to_string(),
        });
    }
    if window < 1 {
        return Err(RepError::EmptyWindow);
    }
    refuse_degenerate(p)?;
    let (lo, hi) = kind.window(window as i64);
    // theta^m(P) = (theta^m(xi), theta^m(h)) at the point; ecoef needs one step below lo.
    let orbit = orbit_window(p, lo - 1, hi);
    let at = |m: i64| &orbit[(m - lo + 1) as usize];
    let mut weights = Vec::with_capacity(orbit.len());
    let mut fcoef = Vec::with_capacity(orbit.len());
    let mut ecoef = Vec::with_capacity(orbit.len());
    for m in lo..=hi {
        weights.push(at(m).beta.clone());
        fcoef.push(match (kind, m) {
            (WeightKind::Lowest, _) => at(m).alpha.clone(),
            (_, m) if m >= 0 => RatFunc::one(),
            _ => at(m).alpha.clone(),
        });
        ecoef.push(match (kind, m) {
            (WeightKind::Highest, 0) => RatFunc::zero(),
            (_, m) if m >= 1 => at(m - 1).alpha.clone(),
            _ => RatFunc::one(),
        });
    }
    let mut module = WeightModule::from_parts(kind, p.clone(), lo, weights, fcoef, ecoef)?;
    module.vanishing = Some(class.vanishing.shifts.iter().copied().collect());
    Ok(module)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::eval_xi_shift;

    fn pt(a: &str, b: &str) -> PointParams {
        PointParams::parse(&BaseField::symbolic(), a, b).unwrap()
    }

    #[test]
    fn highest_weight_boundary() {
        let p = pt("8 - 4*q", "4");
        let w = build_weight_module(&p, WeightKind::Highest, 12).unwrap();
        assert_eq!(w.window(), (0, 12));
        assert!(w.ecoef(0).unwrap().is_zero());
        assert_eq!(w.ecoef(3).unwrap(), &eval_xi_shift(2, &p));
        let rel = w.check_relations();
        assert!(rel.pass, "{:?}", rel.residuals);
        assert_eq!(rel.skipped, 1);
        let cert = w.check_irreducible();
        assert!(cert.irreducible);
        assert_eq!(cert.ladder.boundary_zeros.len(), 1);
        assert!(w.casimir_report().pass);
    }

    #[test]
    fn lowest_weight_boundary() {
        let p = pt("0", "1");
        let w = build_weight_module(&p, WeightKind::Lowest, 10).unwrap();
        assert_eq!(w.len(), 11);
        assert!(w.fcoef(0).unwrap().is_zero());
        assert_eq!(w.fcoef(-4).unwrap(), &eval_xi_shift(-4, &p));
        assert!(w.check_relations().pass);
        assert!(w.check_irreducible().irreducible);
        assert!(w.casimir_report().pass);
    }

    #[test]
    fn dense_module() {
        let p = pt("1", "0");
        let w = build_weight_module(&p, WeightKind::Dense, 6).unwrap();
        assert_eq!(w.window(), (-6, 6));
        let rel = w.check_relations();
        assert!(rel.pass);
        assert_eq!(rel.skipped, 2);
        assert!(w.check_irreducible().irreducible);
        let c = w.casimir_report();
        assert!(c.pass && c.checked == 12);
    }

    #[test]
    fn wrong_kind_is_refused() {
        let p = pt("1", "0");
        assert!(matches!(
            build_weight_module(&p, WeightKind::Highest, 4),
            Err(RepError::WrongType { .. })
        ));
    }

    #[test]
    fn broken_ladder_is_reported() {
        let p = pt("1", "0");
        let w = build_weight_module(&p, WeightKind::Dense, 3).unwrap();
        let mut ecoef = w.ecoefs().to_vec();
        ecoef[2] = RatFunc::zero();
        let broken = WeightModule::from_parts(
            WeightKind::Dense,
            p,
            -3,
            w.weights().to_vec(),
            w.fcoefs().to_vec(),
            ecoef,
        )
        .unwrap();
        let cert = broken.check_irreducible();
        assert!(!cert.irreducible);
        assert_eq!(cert.ladder.breaks, vec![LadderSlot { op: "e".into(), index: -1 }]);
        assert!(!broken.check_relations().pass);
    }
}
