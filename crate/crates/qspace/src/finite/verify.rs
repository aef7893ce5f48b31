//! Exhaustive law checking for finite scalable monoids, with a structured
//! pass/fail report per proposition.
//!
//! Each checker visits every instance of its law and records a witness per
//! violation. The per-element sweeps are independent, so whole-model and
//! whole-suite runs are data-parallel when the `parallel` feature is on;
//! the `_seq` variants always run on the calling thread.

use std::fmt;

use super::congruence::{congruence_quotient, quotient_homomorphism_witness, CongruenceKind};
use super::orbits::{orbit_module_check, orbit_partition};
use super::FiniteScalableMonoid;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub law: &'static str,
    pub witness: String,
}

/// One verified proposition: passes when no witnesses were recorded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckItem {
    pub id: String,
    pub witnesses: Vec<String>,
}

impl CheckItem {
    pub fn passed(&self) -> bool {
        self.witnesses.is_empty()
    }
}

/// A plain-text-renderable report; one line per checked proposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub model: String,
    pub items: Vec<CheckItem>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(CheckItem::passed)
    }

    pub fn total_violations(&self) -> usize {
        self.items.iter().map(|i| i.witnesses.len()).sum()
    }

    pub fn first_violation(&self) -> Option<String> {
        self.items
            .iter()
            .find_map(|i| i.witnesses.first().map(|w| format!("{}: {}", i.id, w)))
    }

    fn from_violations(
        model: &str,
        laws: &[&'static str],
        violations: Vec<Violation>,
    ) -> CheckReport {
        let mut items: Vec<CheckItem> = laws
            .iter()
            .map(|&law| CheckItem {
                id: law.to_string(),
                witnesses: Vec::new(),
            })
            .collect();
        for v in violations {
            if let Some(item) = items.iter_mut().find(|i| i.id == v.law) {
                item.witnesses.push(v.witness);
            }
        }
        CheckReport {
            model: model.to_string(),
            items,
        }
    }

    fn merge(mut self, other: CheckReport) -> CheckReport {
        self.items.extend(other.items);
        self
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for item in &self.items {
            if item.passed() {
                writeln!(f, "{}: PASS", item.id)?;
            } else {
                let extra = item.witnesses.len() - 1;
                if extra == 0 {
                    writeln!(f, "{}: FAIL {}", item.id, item.witnesses[0])?;
                } else {
                    writeln!(f, "{}: FAIL {} (+{extra} more)", item.id, item.witnesses[0])?;
                }
            }
        }
        Ok(())
    }
}

pub(crate) mod exec {
    #[cfg(feature = "parallel")]
    pub(crate) fn map_indices<R, F>(n: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(f).collect()
    }

    #[cfg(not(feature = "parallel"))]
    pub(crate) fn map_indices<R, F>(n: usize, f: F) -> Vec<R>
    where
        F: Fn(usize) -> R,
    {
        map_indices_seq(n, f)
    }

    pub(crate) fn map_indices_seq<R, F>(n: usize, f: F) -> Vec<R>
    where
        F: Fn(usize) -> R,
    {
        (0..n).map(f).collect()
    }
}

const AXIOM_LAWS: &[&str] = &[
    "monoid-associativity",
    "monoid-identity",
    "unit-scaling",
    "scaling-composition",
    "scaling-bilinearity",
    "scaled-product",
];

/// All axiom violations in which `x` participates as the leading element.
fn axiom_violations_at(m: &FiniteScalableMonoid, x: usize) -> Vec<Violation> {
    let mut out = Vec::new();
    let c = m.carrier();
    let n = m.modulus();
    let one = m.identity();

    if m.mul(one, x) != x || m.mul(x, one) != x {
        out.push(Violation {
            law: "monoid-identity",
            witness: format!("x={x}"),
        });
    }
    for y in 0..c {
        for z in 0..c {
            if m.mul(m.mul(x, y), z) != m.mul(x, m.mul(y, z)) {
                out.push(Violation {
                    law: "monoid-associativity",
                    witness: format!("x={x} y={y} z={z}"),
                });
            }
        }
    }

    if m.scale(1, x) != x {
        out.push(Violation {
            law: "unit-scaling",
            witness: format!("x={x}"),
        });
    }
    for a in 0..n {
        for b in 0..n {
            if m.scale(a, m.scale(b, x)) != m.scale(m.ring_mul(a, b), x) {
                out.push(Violation {
                    law: "scaling-composition",
                    witness: format!("a={a} b={b} x={x}"),
                });
            }
        }
    }
    for a in 0..n {
        for y in 0..c {
            let lhs = m.scale(a, m.mul(x, y));
            if lhs != m.mul(m.scale(a, x), y) || lhs != m.mul(x, m.scale(a, y)) {
                out.push(Violation {
                    law: "scaling-bilinearity",
                    witness: format!("a={a} x={x} y={y}"),
                });
            }
            for b in 0..n {
                if m.mul(m.scale(a, x), m.scale(b, y)) != m.scale(m.ring_mul(a, b), m.mul(x, y)) {
                    out.push(Violation {
                        law: "scaled-product",
                        witness: format!("a={a} b={b} x={x} y={y}"),
                    });
                }
            }
        }
    }
    out
}

/// Exhaustively checks the scalable-monoid laws, fanning the sweep out
/// across threads when built with the `parallel` feature.
pub fn check_axioms(m: &FiniteScalableMonoid) -> CheckReport {
    let per: Vec<Vec<Violation>> = exec::map_indices(m.carrier(), |x| axiom_violations_at(m, x));
    CheckReport::from_violations("", AXIOM_LAWS, per.into_iter().flatten().collect())
}

/// Sequential fallback of [`check_axioms`]; always single-threaded.
pub fn check_axioms_seq(m: &FiniteScalableMonoid) -> CheckReport {
    let per: Vec<Vec<Violation>> =
        exec::map_indices_seq(m.carrier(), |x| axiom_violations_at(m, x));
    CheckReport::from_violations("", AXIOM_LAWS, per.into_iter().flatten().collect())
}

const STRUCTURE_LAWS: &[&str] = &[
    "orbit-in-class",
    "class-is-union-of-orbits",
    "strong-implies-commensurable",
    "zero-detects-commensurability",
    "zero-absorbs-scaling",
    "zero-propagates-through-products",
];

/// Orbit and zero-element structure checks, driven purely from the
/// definitional partition.
fn structure_violations(m: &FiniteScalableMonoid) -> Vec<Violation> {
    let mut out = Vec::new();
    let part = orbit_partition(m);
    let c = m.carrier();

    for x in 0..c {
        let class = part.class_of[x];
        let orbit = m.orbit(x);
        if orbit.iter().any(|&t| part.class_of[t] != class) {
            out.push(Violation {
                law: "orbit-in-class",
                witness: format!("x={x}"),
            });
        }
    }
    for (ci, members) in part.classes.iter().enumerate() {
        let mut union: Vec<usize> = members.iter().flat_map(|&t| m.orbit(t)).collect();
        union.sort_unstable();
        union.dedup();
        if &union != members {
            out.push(Violation {
                law: "class-is-union-of-orbits",
                witness: format!("class={ci}"),
            });
        }
    }
    for &(a, b) in &part.strong_pairs {
        if part.class_of[a] != part.class_of[b] {
            out.push(Violation {
                law: "strong-implies-commensurable",
                witness: format!("x={a} y={b}"),
            });
        }
    }
    for x in 0..c {
        for y in 0..c {
            let same_zero = m.scale(0, x) == m.scale(0, y);
            let same_class = part.class_of[x] == part.class_of[y];
            if same_zero != same_class {
                out.push(Violation {
                    law: "zero-detects-commensurability",
                    witness: format!("x={x} y={y}"),
                });
            }
        }
    }
    for (ci, &z) in part.zeros.iter().enumerate() {
        for lambda in 0..m.modulus() {
            if m.scale(lambda, z) != z {
                out.push(Violation {
                    law: "zero-absorbs-scaling",
                    witness: format!("class={ci} lambda={lambda}"),
                });
            }
        }
    }
    for x in 0..c {
        let zx = m.scale(0, x);
        for y in 0..c {
            if m.mul(zx, y) != m.scale(0, m.mul(x, y)) {
                out.push(Violation {
                    law: "zero-propagates-through-products",
                    witness: format!("x={x} y={y}"),
                });
            }
        }
    }
    out
}

const QUOTIENT_LAWS: &[&str] = &[
    "commensurability-quotient-trivially-scaled",
    "commensurability-quotient-homomorphism",
    "scaled-identity-quotient-matches-commensurability",
];

/// Quotient-level checks: the commensurability quotient collapses scaling,
/// its map is a homomorphism, and quotienting by the scaled identity orbit
/// induces the same partition.
fn quotient_violations(m: &FiniteScalableMonoid) -> Vec<Violation> {
    let mut out = Vec::new();
    match congruence_quotient(m, CongruenceKind::Commensurability) {
        Ok(q) => {
            'scaled: for lambda in 0..m.modulus() {
                for class in 0..q.model.carrier() {
                    if q.model.scale(lambda, class) != class {
                        out.push(Violation {
                            law: "commensurability-quotient-trivially-scaled",
                            witness: format!("lambda={lambda} class={class}"),
                        });
                        break 'scaled;
                    }
                }
            }
            if let Some(w) = quotient_homomorphism_witness(m, &q) {
                out.push(Violation {
                    law: "commensurability-quotient-homomorphism",
                    witness: w,
                });
            }
            let identity_orbit = m.orbit(m.identity());
            match congruence_quotient(m, CongruenceKind::ScalableSubmonoid(&identity_orbit)) {
                Ok(q2) if q2.class_of != q.class_of => {
                    out.push(Violation {
                        law: "scaled-identity-quotient-matches-commensurability",
                        witness: "partitions differ".into(),
                    });
                }
                Ok(_) => {}
                Err(e) => out.push(Violation {
                    law: "scaled-identity-quotient-matches-commensurability",
                    witness: e.to_string(),
                }),
            }
        }
        Err(e) => out.push(Violation {
            law: "commensurability-quotient-trivially-scaled",
            witness: e.to_string(),
        }),
    }
    out
}

/// Full verification of one model: axioms, orbit structure, orbit-class
/// modules and quotient behaviour, reported proposition by proposition.
pub fn verify_model(name: &str, m: &FiniteScalableMonoid) -> CheckReport {
    let mut report = check_axioms(m);
    report.model = name.to_string();
    finish_verification(report, m)
}

/// Sequential fallback of [`verify_model`].
pub fn verify_model_seq(name: &str, m: &FiniteScalableMonoid) -> CheckReport {
    let mut report = check_axioms_seq(m);
    report.model = name.to_string();
    finish_verification(report, m)
}

fn finish_verification(report: CheckReport, m: &FiniteScalableMonoid) -> CheckReport {
    let name = report.model.clone();
    let structure = CheckReport::from_violations(&name, STRUCTURE_LAWS, structure_violations(m));
    let modules = orbit_module_check(m).into_report(&name);
    let quotients = CheckReport::from_violations(&name, QUOTIENT_LAWS, quotient_violations(m));
    report.merge(structure).merge(modules).merge(quotients)
}

/// Verifies a batch of independent models, in parallel when enabled.
pub fn verify_models(models: &[(String, FiniteScalableMonoid)]) -> Vec<CheckReport> {
    exec::map_indices(models.len(), |i| {
        let (name, m) = &models[i];
        verify_model_seq(name, m)
    })
}

/// Sequential fallback of [`verify_models`].
pub fn verify_models_seq(models: &[(String, FiniteScalableMonoid)]) -> Vec<CheckReport> {
    exec::map_indices_seq(models.len(), |i| {
        let (name, m) = &models[i];
        verify_model_seq(name, m)
    })
}
