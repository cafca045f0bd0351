//! The identity suite: every relation is reduced to zero twice, once through
//! the hyperbolic-algebra engine and once through PBW rewriting.

use serde::Serialize;

use crate::gwa::apply_auto;
use crate::qfield::{big, BiPoly, RatFunc};

use super::{bipoly_to_words, words_mul, words_scale, FreeWord, Generator, JzAlgebra, WordSum};

/// A named element that should vanish.
#[derive(Debug, Clone)]
pub struct Identity {
    pub name: &'static str,
    pub statement: &'static str,
    pub expr: WordSum,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub statement: String,
    pub gwa_pass: bool,
    pub pbw_pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gwa_residual: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pbw_residual: Option<String>,
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        self.gwa_pass && self.pbw_pass
    }
}

/// Closed form against iterated substitution for one generator over a range of `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThetaPowerCheck {
    pub generator: String,
    pub n_min: i64,
    pub n_max: i64,
    pub pass: bool,
    pub failures: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub q: String,
    pub identities: Vec<IdentityCheck>,
    pub theta_powers: Vec<ThetaPowerCheck>,
    pub all_pass: bool,
}

fn w(s: &str) -> WordSum {
    vec![FreeWord::parse(s).expect("letters e, f, h")]
}

fn sum(parts: &[WordSum]) -> WordSum {
    parts.iter().flatten().cloned().collect()
}

fn neg(a: &[FreeWord]) -> WordSum {
    words_scale(a, &-RatFunc::one())
}

impl JzAlgebra {
    /// Every identity checked by [`verify_identities`].
    pub fn identities(&self) -> Vec<Identity> {
        let q = self.q().clone();
        let q_inv = q.inv().expect("q is nonzero");
        let one = RatFunc::one();
        let two = RatFunc::from_int(2);
        let quarter = big(4).recip();
        let half = big(2).recip();
        let hh = w("hh");
        let c = self.casimir_words();
        let theta = self.theta();
        let as_words = |p: &BiPoly| bipoly_to_words(p);
        let xi = BiPoly::xi();
        let h = BiPoly::h();

        let mut out = vec![
            Identity {
                name: "relation_he",
                statement: "q h e - e h - 2 e = 0",
                expr: sum(&[words_scale(&w("he"), &q), neg(&w("eh")), words_scale(&w("e"), &-two.clone())]),
            },
            Identity {
                name: "relation_hf",
                statement: "h f - q f h + 2 f = 0",
                expr: sum(&[w("hf"), words_scale(&w("fh"), &-q.clone()), words_scale(&w("f"), &two)]),
            },
            Identity {
                name: "relation_ef",
                statement: "e f - q f e - h - (1 - q)/4 h^2 = 0",
                expr: sum(&[
                    w("ef"),
                    words_scale(&w("fe"), &-q.clone()),
                    neg(&w("h")),
                    words_scale(&hh, &-(&one - &q).scale(&quarter)),
                ]),
            },
            Identity {
                name: "casimir_form_qfe",
                statement: "2 e f - h + q/2 h^2 = 2 q f e + h + 1/2 h^2",
                expr: sum(&[
                    c.clone(),
                    words_scale(&w("fe"), &-q.scale(&big(2))),
                    neg(&w("h")),
                    words_scale(&hh, &RatFunc::from_rational(-half.clone())),
                ]),
            },
            Identity {
                name: "casimir_form_symmetric",
                statement: "2 e f - h + q/2 h^2 = e f + q f e + (1 + q)/4 h^2",
                expr: sum(&[
                    c.clone(),
                    neg(&w("ef")),
                    words_scale(&w("fe"), &-q.clone()),
                    words_scale(&hh, &-(&q + &one).scale(&quarter)),
                ]),
            },
            Identity {
                name: "casimir_e",
                statement: "e C - q C e = 0",
                expr: sum(&[words_mul(&w("e"), &c), words_scale(&words_mul(&c, &w("e")), &-q.clone())]),
            },
            Identity {
                name: "casimir_f",
                statement: "f C - q^-1 C f = 0",
                expr: sum(&[words_mul(&w("f"), &c), words_scale(&words_mul(&c, &w("f")), &-q_inv.clone())]),
            },
            Identity {
                name: "casimir_h",
                statement: "h C - C h = 0",
                expr: sum(&[words_mul(&w("h"), &c), neg(&words_mul(&c, &w("h")))]),
            },
            Identity {
                name: "h_commutes_with_ef",
                statement: "h (e f) - (e f) h = 0",
                expr: sum(&[w("hef"), neg(&w("efh"))]),
            },
            Identity {
                name: "x_h",
                statement: "x h = theta(h) x",
                expr: sum(&[w("eh"), neg(&words_mul(&as_words(&theta.apply(&h)), &w("e")))]),
            },
            Identity {
                name: "x_xi",
                statement: "x xi = theta(xi) x",
                expr: sum(&[w("eef"), neg(&words_mul(&as_words(&theta.apply(&xi)), &w("e")))]),
            },
            Identity {
                name: "y_h",
                statement: "y h = theta^-1(h) y",
                expr: sum(&[w("fh"), neg(&words_mul(&as_words(&theta.apply_inverse(&h)), &w("f")))]),
            },
            Identity {
                name: "y_xi",
                statement: "y xi = theta^-1(xi) y",
                expr: sum(&[w("fef"), neg(&words_mul(&as_words(&theta.apply_inverse(&xi)), &w("f")))]),
            },
            Identity {
                name: "y_x",
                statement: "y x = theta^-1(xi)",
                expr: sum(&[w("fe"), neg(&as_words(&theta.apply_inverse(&xi)))]),
            },
        ];
        let theta_c = theta.apply(self.casimir());
        out.push(Identity {
            name: "theta_casimir",
            statement: "theta(C) = q C",
            expr: sum(&[as_words(&theta_c), words_scale(&as_words(self.casimir()), &-q)]),
        });
        out
    }

    pub fn check_identity(&self, id: &Identity) -> IdentityCheck {
        let gwa = self.from_words(&id.expr);
        let pbw = self.pbw_normal_form(&id.expr);
        IdentityCheck {
            name: id.name.to_string(),
            statement: id.statement.to_string(),
            gwa_pass: gwa.is_zero(),
            pbw_pass: pbw.is_zero(),
            gwa_residual: (!gwa.is_zero()).then(|| gwa.to_string()),
            pbw_residual: (!pbw.is_zero()).then(|| pbw.to_string()),
        }
    }

    /// Compare closed forms with iterated substitution for `n` in `[-bound, bound]`.
    pub fn check_theta_powers(&self, bound: i64) -> Vec<ThetaPowerCheck> {
        let theta = self.theta();
        [
            (Generator::H, "h", BiPoly::h()),
            (Generator::Xi, "xi", BiPoly::xi()),
            (Generator::Casimir, "C", self.casimir().clone()),
        ]
        .into_iter()
        .map(|(gen, name, start)| {
            // Walk outward from zero so each step is a single substitution.
            let mut failures = Vec::new();
            for dir in [1i64, -1] {
                let mut cur = start.clone();
                for k in 0..=bound {
                    let n = dir * k;
                    if k > 0 {
                        cur = apply_auto(theta, &cur, dir);
                    }
                    if (dir == 1 || k > 0) && cur != self.theta_n_closed(gen, n) {
                        failures.push(n);
                    }
                }
            }
            failures.sort_unstable();
            ThetaPowerCheck {
                generator: name.to_string(),
                n_min: -bound,
                n_max: bound,
                pass: failures.is_empty(),
                failures,
            }
        })
        .collect()
    }
}

/// Run the whole suite; `theta_bound` is the range for the closed-form check.
pub fn verify_identities(jz: &JzAlgebra, theta_bound: i64) -> VerifyReport {
    let identities: Vec<IdentityCheck> = jz.identities().iter().map(|id| jz.check_identity(id)).collect();
    let theta_powers = jz.check_theta_powers(theta_bound);
    let all_pass = identities.iter().all(IdentityCheck::passed) && theta_powers.iter().all(|t| t.pass);
    VerifyReport {
        q: jz.field().describe(),
        identities,
        theta_powers,
        all_pass,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes_symbolically() {
        let jz = JzAlgebra::symbolic();
        let report = verify_identities(&jz, 4);
        for id in &report.identities {
            assert!(id.passed(), "{id:?}");
        }
        assert!(report.all_pass);
    }

    #[test]
    fn unweighted_symmetric_form_is_not_the_casimir() {
        // e f + f e + (1+q)/4 h^2 differs from C by (1 - q) f e.
        let jz = JzAlgebra::symbolic();
        let q = jz.q().clone();
        let one = RatFunc::one();
        let expr = sum(&[
            w("ef"),
            w("fe"),
            words_scale(&w("hh"), &(&q + &one).scale(&big(4).recip())),
            neg(&jz.casimir_words()),
        ]);
        let residual = jz.pbw_normal_form(&expr);
        assert_eq!(residual, crate::jz::PbwForm::monomial(&one - &q, (1, 0, 1)));
        // and it does not q-commute with e
        let c1 = sum(&[w("ef"), w("fe"), words_scale(&w("hh"), &(&q + &one).scale(&big(4).recip()))]);
        let comm = sum(&[words_mul(&w("e"), &c1), words_scale(&words_mul(&c1, &w("e")), &-q)]);
        assert!(!jz.from_words(&comm).is_zero());
    }

    #[test]
    fn broken_identity_reports_residual() {
        let jz = JzAlgebra::symbolic();
        // q h e - e h (missing the -2e term)
        let id = Identity {
            name: "broken",
            statement: "q h e - e h = 0",
            expr: sum(&[words_scale(&w("he"), jz.q()), neg(&w("eh"))]),
        };
        let check = jz.check_identity(&id);
        assert!(!check.gwa_pass && !check.pbw_pass);
        assert_eq!(check.gwa_residual.as_deref(), Some("2*x"));
        assert_eq!(check.pbw_residual.as_deref(), Some("2*e"));
    }
}
