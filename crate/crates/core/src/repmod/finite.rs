//! Finite-dimensional representations on the basis `v_k = y^k`, `0 <= k <= n`.

use crate::jz::Letter;
use crate::qfield::{BaseField, RatFunc};
use crate::spectrum::{classify, orbit_window, Classification, PointParams, DEFAULT_SCAN_BOUND};

use super::matrix::{Echelon, Matrix};
use super::{
    casimir_report_for, refuse_degenerate, relation_words, CasimirReport, GenerationWitness,
    IrreducibilityCertificate, InvariantSubspace, LadderAction, LadderSlot, LadderWitness, RelationReport,
    RepError, Residual, SVec,
};

/// `e`, `f`, `h` as square matrices; entry `(i, j)` is the `v_i` coefficient of the image of `v_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixRep {
    field: BaseField,
    e: Matrix,
    f: Matrix,
    h: Matrix,
    point: Option<PointParams>,
}

impl MatrixRep {
    pub fn from_matrices(field: &BaseField, e: Matrix, f: Matrix, h: Matrix) -> Result<Self, RepError> {
        let n = e.rows();
        if [&e, &f, &h].iter().any(|m| m.rows() != n || m.cols() != n) {
            return Err(RepError::Shape("e, f, h must be square of one size".into()));
        }
        if n == 0 {
            return Err(RepError::Shape("dimension must be positive".into()));
        }
        Ok(MatrixRep {
            field: field.clone(),
            e,
            f,
            h,
            point: None,
        })
    }

    pub fn dim(&self) -> usize {
        self.e.rows()
    }

    pub fn field(&self) -> &BaseField {
        &self.field
    }

    pub fn e(&self) -> &Matrix {
        &self.e
    }

    pub fn f(&self) -> &Matrix {
        &self.f
    }

    pub fn h(&self) -> &Matrix {
        &self.h
    }

    /// The point the representation was built from, if any.
    pub fn point(&self) -> Option<&PointParams> {
        self.point.as_ref()
    }

    pub fn with_point(mut self, p: PointParams) -> Self {
        self.point = Some(p);
        self
    }

    pub fn direct_sum(&self, other: &MatrixRep) -> MatrixRep {
        MatrixRep {
            field: self.field.clone(),
            e: Matrix::block_diag(&self.e, &other.e),
            f: Matrix::block_diag(&self.f, &other.f),
            h: Matrix::block_diag(&self.h, &other.h),
            point: None,
        }
    }

    pub fn weights(&self) -> Vec<RatFunc> {
        (0..self.dim()).map(|k| self.h.get(k, k).clone()).collect()
    }

    /// `fcoef(k)`: the `v_(k+1)` coefficient of `f v_k`, zero at the top.
    pub fn fcoefs(&self) -> Vec<RatFunc> {
        let n = self.dim();
        (0..n)
            .map(|k| if k + 1 < n { self.f.get(k + 1, k).clone() } else { RatFunc::zero() })
            .collect()
    }

    /// `ecoef(k)`: the `v_(k-1)` coefficient of `e v_k`, zero at the bottom.
    pub fn ecoefs(&self) -> Vec<RatFunc> {
        (0..self.dim())
            .map(|k| if k > 0 { self.e.get(k - 1, k).clone() } else { RatFunc::zero() })
            .collect()
    }

    /// The three relations as matrices; all must be zero.
    pub fn relation_matrices(&self) -> Vec<(&'static str, Matrix)> {
        let q = self.field.q();
        let (e, f, h) = (&self.e, &self.f, &self.h);
        let two = RatFunc::from_int(2);
        let h2 = h.mul(h);
        let quad = (&RatFunc::one() - q).scale(&crate::qfield::big(4).recip());
        let names: Vec<&'static str> = relation_words(q).into_iter().map(|(n, _)| n).collect();
        vec![
            (names[0], h.mul(e).scale(q).sub(&e.mul(h)).sub(&e.scale(&two))),
            (names[1], h.mul(f).sub(&f.mul(h).scale(q)).add(&f.scale(&two))),
            (names[2], e.mul(f).sub(&f.mul(e).scale(q)).sub(h).sub(&h2.scale(&quad))),
        ]
    }

    pub fn check_relations(&self) -> RelationReport {
        let mut residuals = Vec::new();
        for (name, m) in self.relation_matrices() {
            for (i, j, v) in m.nonzero_entries() {
                residuals.push(Residual {
                    relation: name.to_string(),
                    index: j as i64,
                    component: i as i64,
                    value: v.to_string(),
                });
            }
        }
        RelationReport {
            pass: residuals.is_empty(),
            checked: self.dim(),
            skipped: 0,
            residuals,
        }
    }

    fn basis_vector(&self, j: usize) -> Vec<RatFunc> {
        (0..self.dim())
            .map(|i| if i == j { RatFunc::one() } else { RatFunc::zero() })
            .collect()
    }

    /// The submodule generated by `v_j`, as an echelon basis.
    pub fn generated_submodule(&self, j: usize) -> Echelon {
        let mut ech = Echelon::new(self.dim());
        let start = self.basis_vector(j);
        ech.insert(start.clone());
        let mut queue = vec![start];
        while let Some(v) = queue.pop() {
            for m in [&self.e, &self.f, &self.h] {
                let w = m.apply(&v);
                if ech.insert(w.clone()) {
                    queue.push(w);
                }
                if ech.is_full() {
                    return ech;
                }
            }
        }
        ech
    }

    pub fn generation_witness(&self) -> GenerationWitness {
        let mut closure_dims = Vec::new();
        let mut invariant_subspace = None;
        for j in 0..self.dim() {
            let ech = self.generated_submodule(j);
            if !ech.is_full() && invariant_subspace.is_none() {
                invariant_subspace = Some(InvariantSubspace {
                    generated_by: j,
                    basis: ech
                        .basis()
                        .iter()
                        .map(|v| v.iter().map(RatFunc::to_string).collect())
                        .collect(),
                });
            }
            closure_dims.push(ech.len());
        }
        GenerationWitness {
            closure_dims,
            invariant_subspace,
        }
    }

    pub fn ladder_witness(&self) -> LadderWitness {
        let n = self.dim();
        let applicable = self.h.is_diagonal() && self.e.is_band(1) && self.f.is_band(-1);
        let weights = self.weights();
        let distinct_weights = weights
            .iter()
            .enumerate()
            .all(|(i, a)| weights[..i].iter().all(|b| a != b));
        let mut breaks = Vec::new();
        let mut checked = 0;
        if applicable {
            for k in 1..n {
                checked += 2;
                if self.e.get(k - 1, k).is_zero() {
                    breaks.push(LadderSlot { op: "e".into(), index: k as i64 });
                }
                if self.f.get(k, k - 1).is_zero() {
                    breaks.push(LadderSlot { op: "f".into(), index: k as i64 - 1 });
                }
            }
        }
        LadderWitness {
            applicable,
            distinct_weights,
            constants_checked: checked,
            boundary_zeros: Vec::new(),
            pass: applicable && distinct_weights && breaks.is_empty(),
            breaks,
            vanishing_set: None,
        }
    }

    /// Generation by exact rank, and the ladder criterion wherever it applies.
    pub fn check_irreducible(&self) -> Result<IrreducibilityCertificate, RepError> {
        let generation = self.generation_witness();
        let gen_irreducible = generation.invariant_subspace.is_none();
        let ladder = self.ladder_witness();
        // The ladder decides only when it applies and the weights separate basis vectors.
        if ladder.applicable && ladder.distinct_weights && ladder.pass != gen_irreducible {
            return Err(RepError::MethodsDisagree {
                generation: gen_irreducible,
                ladder: ladder.pass,
            });
        }
        Ok(IrreducibilityCertificate {
            irreducible: gen_irreducible,
            generation: Some(generation),
            ladder,
        })
    }

    pub fn casimir_report(&self) -> Option<CasimirReport> {
        self.point.as_ref().map(|p| casimir_report_for(self, p))
    }
}

impl LadderAction for MatrixRep {
    fn field(&self) -> &BaseField {
        &self.field
    }

    fn index_range(&self) -> (i64, i64) {
        (0, self.dim() as i64 - 1)
    }

    fn act(&self, l: Letter, v: &SVec) -> Option<SVec> {
        let m = match l {
            Letter::E => &self.e,
            Letter::F => &self.f,
            Letter::H => &self.h,
        };
        let mut dense = vec![RatFunc::zero(); self.dim()];
        for (&k, c) in v {
            dense[k as usize] = c.clone();
        }
        Some(
            m.apply(&dense)
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i as i64, c))
                .collect(),
        )
    }
}

/// Build the representation of a `T11` or `T1n` point:
/// `f v_k = v_(k+1)`, `e v_k = theta^(k-1)(xi)(alpha, beta) v_(k-1)`,
/// `h v_k = theta^k(h)(alpha, beta) v_k`.
pub fn build_finite(p: &PointParams) -> Result<MatrixRep, RepError> {
    let class = classify(p, DEFAULT_SCAN_BOUND)?;
    build_finite_classified(p, &class)
}

pub fn build_finite_classified(p: &PointParams, class: &Classification) -> Result<MatrixRep, RepError> {
    let Some(dim) = class.point_type.finite_dim() else {
        return Err(RepError::WrongType {
            wanted: "finite-dimensional".into(),
            found: class.point_type.to_string(),
        });
    };
    refuse_degenerate(p)?;
    let n = dim as usize;
    let orbit = orbit_window(p, 0, n as i64 - 1);
    let mut e = Matrix::zeros(n, n);
    let mut f = Matrix::zeros(n, n);
    let mut h = Matrix::zeros(n, n);
    for (k, pk) in orbit.iter().enumerate() {
        h.set(k, k, pk.beta.clone());
        if k + 1 < n {
            f.set(k + 1, k, RatFunc::one());
            e.set(k, k + 1, pk.alpha.clone());
        }
    }
    Ok(MatrixRep::from_matrices(&p.field, e, f, h)?.with_point(p.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::{finite_family, Branch};

    fn sym() -> BaseField {
        BaseField::symbolic()
    }

    #[test]
    fn trivial_representation() {
        let p = PointParams::parse(&sym(), "0", "0").unwrap();
        let rep = build_finite(&p).unwrap();
        assert_eq!(rep.dim(), 1);
        assert!(rep.e().is_zero() && rep.f().is_zero() && rep.h().is_zero());
        assert!(rep.check_relations().pass);
        assert!(rep.check_irreducible().unwrap().irreducible);
        let c = rep.casimir_report().unwrap();
        assert!(c.pass);
        assert_eq!(c.base, "0");
    }

    #[test]
    fn two_dimensional_example() {
        let p = finite_family(&sym(), 1, Branch::Minus).unwrap();
        let rep = build_finite(&p).unwrap();
        assert_eq!(rep.dim(), 2);
        assert_eq!(rep.e().get(0, 1), &RatFunc::q_pow(-1));
        assert_eq!(rep.f().get(1, 0), &RatFunc::one());
        let q = RatFunc::q();
        assert_eq!(rep.h().get(1, 1), &(&(&q * &p.beta) - &RatFunc::from_int(2)));
        assert!(rep.check_relations().pass);
        let cert = rep.check_irreducible().unwrap();
        assert!(cert.irreducible && cert.ladder.pass);
    }

    #[test]
    fn corrupted_entry_leaves_residual() {
        let p = finite_family(&sym(), 2, Branch::Plus).unwrap();
        let rep = build_finite(&p).unwrap();
        let mut e = rep.e().clone();
        e.set(0, 1, &e.get(0, 1).clone() + &RatFunc::one());
        let bad = MatrixRep::from_matrices(&sym(), e, rep.f().clone(), rep.h().clone()).unwrap();
        let report = bad.check_relations();
        assert!(!report.pass);
        assert!(report.residuals.iter().all(|r| r.value != "0"));
    }

    #[test]
    fn direct_sum_is_reducible() {
        let a = build_finite(&finite_family(&sym(), 1, Branch::Minus).unwrap()).unwrap();
        let b = build_finite(&finite_family(&sym(), 2, Branch::Plus).unwrap()).unwrap();
        let sum = a.direct_sum(&b);
        assert!(sum.check_relations().pass);
        let cert = sum.check_irreducible().unwrap();
        assert!(!cert.irreducible);
        let w = cert.generation.unwrap().invariant_subspace.unwrap();
        assert_eq!(w.generated_by, 0);
        assert_eq!(w.basis.len(), 2);
    }

    #[test]
    fn refuses_infinite_points() {
        let p = PointParams::parse(&sym(), "1", "0").unwrap();
        assert!(matches!(build_finite(&p), Err(RepError::WrongType { .. })));
    }
}
