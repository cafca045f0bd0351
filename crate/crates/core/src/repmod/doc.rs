//! JSON form of a module. Field elements are canonical strings, so a
//! document can be parsed back and re-checked.

use serde::{Deserialize, Serialize};

use crate::qfield::{parse_rational, BaseField, RatFunc};
use crate::spectrum::PointParams;

use super::matrix::Matrix;
use super::{
    CasimirReport, IrreducibilityCertificate, MatrixRep, Module, RelationReport, RepError, WeightKind, WeightModule,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatricesDoc {
    pub e: Vec<Vec<String>>,
    pub f: Vec<Vec<String>>,
    pub h: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleDoc {
    /// `finite`, `highest`, `lowest` or `dense`.
    pub kind: String,
    pub q: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub alpha: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub beta: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub dim: Option<usize>,
    /// Inclusive index range of the basis.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub window: Option<[i64; 2]>,
    pub weights: Vec<String>,
    pub fcoef: Vec<String>,
    pub ecoef: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub casimir_scalar: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub matrices: Option<MatricesDoc>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub relations: Option<RelationReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub irreducibility: Option<IrreducibilityCertificate>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub casimir: Option<CasimirReport>,
}

fn strings(v: &[RatFunc]) -> Vec<String> {
    v.iter().map(RatFunc::to_string).collect()
}

fn field_from(q: &str) -> Result<BaseField, RepError> {
    if q == "symbolic" {
        return Ok(BaseField::symbolic());
    }
    let q0 = parse_rational(q).map_err(|e| RepError::Document(e.to_string()))?;
    BaseField::numeric(q0).map_err(|e| RepError::Document(e.to_string()))
}

fn parse_all(field: &BaseField, v: &[String]) -> Result<Vec<RatFunc>, RepError> {
    v.iter()
        .map(|s| field.parse(s).map_err(|e| RepError::Document(format!("{s:?}: {e}"))))
        .collect()
}

fn parse_matrix(field: &BaseField, rows: &[Vec<String>]) -> Result<Matrix, RepError> {
    let rows = rows
        .iter()
        .map(|r| parse_all(field, r))
        .collect::<Result<Vec<_>, _>>()?;
    Matrix::from_rows(rows).ok_or_else(|| RepError::Document("ragged matrix".into()))
}

impl Module {
    /// The bare module data, without any checks attached.
    pub fn to_doc(&self) -> ModuleDoc {
        match self {
            Module::Finite(m) => ModuleDoc {
                kind: "finite".into(),
                q: m.field().describe(),
                alpha: m.point().map(|p| p.alpha.to_string()),
                beta: m.point().map(|p| p.beta.to_string()),
                dim: Some(m.dim()),
                window: None,
                weights: strings(&m.weights()),
                fcoef: strings(&m.fcoefs()),
                ecoef: strings(&m.ecoefs()),
                casimir_scalar: m.point().map(|p| super::casimir_scalar(p, 0).to_string()),
                matrices: Some(MatricesDoc {
                    e: m.e().to_strings(),
                    f: m.f().to_strings(),
                    h: m.h().to_strings(),
                }),
                relations: None,
                irreducibility: None,
                casimir: None,
            },
            Module::Weight(w) => ModuleDoc {
                kind: w.kind().name().into(),
                q: w.point().field.describe(),
                alpha: Some(w.point().alpha.to_string()),
                beta: Some(w.point().beta.to_string()),
                dim: None,
                window: Some([w.window().0, w.window().1]),
                weights: strings(w.weights()),
                fcoef: strings(w.fcoefs()),
                ecoef: strings(w.ecoefs()),
                casimir_scalar: Some(super::casimir_scalar(w.point(), 0).to_string()),
                matrices: None,
                relations: None,
                irreducibility: None,
                casimir: None,
            },
        }
    }

    /// The document with relation, irreducibility and Casimir checks filled in.
    pub fn to_checked_doc(&self) -> Result<ModuleDoc, RepError> {
        let mut doc = self.to_doc();
        doc.relations = Some(self.check_relations());
        doc.irreducibility = Some(self.check_irreducible()?);
        doc.casimir = self.casimir_report();
        Ok(doc)
    }

    /// Rebuild a module from its document, ignoring any attached reports.
    pub fn from_doc(doc: &ModuleDoc) -> Result<Module, RepError> {
        let field = field_from(&doc.q)?;
        let point = match (&doc.alpha, &doc.beta) {
            (Some(a), Some(b)) => Some(
                PointParams::parse(&field, a, b).map_err(|e| RepError::Document(e.to_string()))?,
            ),
            _ => None,
        };
        if doc.kind == "finite" {
            let m = doc
                .matrices
                .as_ref()
                .ok_or_else(|| RepError::Document("finite module without matrices".into()))?;
            let rep = MatrixRep::from_matrices(
                &field,
                parse_matrix(&field, &m.e)?,
                parse_matrix(&field, &m.f)?,
                parse_matrix(&field, &m.h)?,
            )?;
            return Ok(Module::Finite(match point {
                Some(p) => rep.with_point(p),
                None => rep,
            }));
        }
        let kind = match doc.kind.as_str() {
            "highest" => WeightKind::Highest,
            "lowest" => WeightKind::Lowest,
            "dense" => WeightKind::Dense,
            other => return Err(RepError::Document(format!("unknown kind {other:?}"))),
        };
        let point = point.ok_or_else(|| RepError::Document("weight module without a point".into()))?;
        let [lo, _] = doc
            .window
            .ok_or_else(|| RepError::Document("weight module without a window".into()))?;
        WeightModule::from_parts(
            kind,
            point,
            lo,
            parse_all(&field, &doc.weights)?,
            parse_all(&field, &doc.fcoef)?,
            parse_all(&field, &doc.ecoef)?,
        )
        .map(Module::Weight)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repmod::build_module;
    use crate::spectrum::{classify, finite_family, Branch};

    fn round_trip(p: &PointParams, window: usize) {
        let class = classify(p, 16).unwrap();
        let module = build_module(p, &class, window).unwrap();
        let doc = module.to_checked_doc().unwrap();
        let text = serde_json::to_string(&doc).unwrap();
        let back: ModuleDoc = serde_json::from_str(&text).unwrap();
        let rebuilt = Module::from_doc(&back).unwrap();
        assert_eq!(rebuilt.check_relations().pass, doc.relations.unwrap().pass);
        assert_eq!(rebuilt.to_doc().weights, doc.weights);
    }

    #[test]
    fn finite_round_trip() {
        let sym = BaseField::symbolic();
        round_trip(&finite_family(&sym, 3, Branch::Plus).unwrap(), 0);
    }

    #[test]
    fn weight_round_trip() {
        let sym = BaseField::symbolic();
        round_trip(&PointParams::parse(&sym, "0", "1").unwrap(), 8);
        let num = BaseField::numeric(crate::qfield::big(3)).unwrap();
        round_trip(&PointParams::parse(&num, "1", "0").unwrap(), 8);
    }
}
