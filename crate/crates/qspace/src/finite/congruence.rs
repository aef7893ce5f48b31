//! Congruences on finite scalable monoids and their quotient models:
//! commensurability, and left-multiplication relations induced by central
//! (plain or scalable) submonoids.

use super::orbits::orbit_partition;
use super::{FiniteModelError, FiniteScalableMonoid};

/// Which congruence to quotient by.
#[derive(Debug, Clone, Copy)]
pub enum CongruenceKind<'a> {
    /// Orbit-intersection commensurability.
    Commensurability,
    /// `x ~ y` iff `m x = n y` for members of a central submonoid.
    Submonoid(&'a [usize]),
    /// Same, for a central submonoid that is also closed under scaling.
    ScalableSubmonoid(&'a [usize]),
}

/// A quotient model together with the class map of its surjection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientModel {
    pub model: FiniteScalableMonoid,
    /// Parent element -> quotient class index.
    pub class_of: Vec<usize>,
    /// Sorted members per class.
    pub classes: Vec<Vec<usize>>,
}

fn validate_submonoid(
    m: &FiniteScalableMonoid,
    members: &[usize],
    scalable: bool,
) -> Result<Vec<bool>, FiniteModelError> {
    let mut flag = vec![false; m.carrier()];
    for &s in members {
        if s >= m.carrier() {
            return Err(FiniteModelError::NotSubmonoid(format!(
                "member {s} is out of range"
            )));
        }
        flag[s] = true;
    }
    if !flag[m.identity()] {
        return Err(FiniteModelError::NotSubmonoid(
            "identity element is missing".into(),
        ));
    }
    for &a in members {
        for &b in members {
            if !flag[m.mul(a, b)] {
                return Err(FiniteModelError::NotSubmonoid(format!(
                    "product of {a} and {b} escapes the set"
                )));
            }
        }
    }
    for &s in members {
        for y in 0..m.carrier() {
            if m.mul(s, y) != m.mul(y, s) {
                return Err(FiniteModelError::NotCentral {
                    member: s,
                    witness: y,
                });
            }
        }
    }
    if scalable {
        for lambda in 0..m.modulus() {
            for &s in members {
                if !flag[m.scale(lambda, s)] {
                    return Err(FiniteModelError::NotScalableSubmonoid(format!(
                        "{lambda} * {s} escapes the set"
                    )));
                }
            }
        }
    }
    Ok(flag)
}

/// Builds the quotient of `m` by the requested congruence.
///
/// The relation is verified to be an equivalence and a congruence for both
/// operations before the quotient tables are assembled, and the resulting
/// tables are re-validated against the scalable-monoid laws.
pub fn congruence_quotient(
    m: &FiniteScalableMonoid,
    kind: CongruenceKind,
) -> Result<QuotientModel, FiniteModelError> {
    let c = m.carrier();

    // The raw relation, straight from the definition.
    let related: Vec<Vec<bool>> = match kind {
        CongruenceKind::Commensurability => {
            let orbits: Vec<Vec<usize>> = (0..c).map(|x| m.orbit(x)).collect();
            (0..c)
                .map(|a| {
                    (0..c)
                        .map(|b| orbits[a].iter().any(|t| orbits[b].binary_search(t).is_ok()))
                        .collect()
                })
                .collect()
        }
        CongruenceKind::Submonoid(members) => {
            validate_submonoid(m, members, false)?;
            relate_by_left_multiplication(m, members)
        }
        CongruenceKind::ScalableSubmonoid(members) => {
            validate_submonoid(m, members, true)?;
            relate_by_left_multiplication(m, members)
        }
    };

    for a in 0..c {
        if !related[a][a] {
            return Err(FiniteModelError::CongruenceFailure(format!(
                "not reflexive at {a}"
            )));
        }
        for b in 0..c {
            if related[a][b] != related[b][a] {
                return Err(FiniteModelError::CongruenceFailure(format!(
                    "not symmetric at ({a},{b})"
                )));
            }
            if related[a][b] {
                for d in 0..c {
                    if related[b][d] && !related[a][d] {
                        return Err(FiniteModelError::CongruenceFailure(format!(
                            "not transitive at ({a},{b},{d})"
                        )));
                    }
                }
            }
        }
    }

    // Classes in least-member order.
    let mut class_of = vec![usize::MAX; c];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for a in 0..c {
        if class_of[a] != usize::MAX {
            continue;
        }
        let idx = classes.len();
        let members: Vec<usize> = (a..c).filter(|&b| related[a][b]).collect();
        for &b in &members {
            class_of[b] = idx;
        }
        classes.push(members);
    }

    // Congruence for multiplication and scaling.
    for a in 0..c {
        for b in 0..c {
            let expected = class_of[m.mul(classes[class_of[a]][0], classes[class_of[b]][0])];
            if class_of[m.mul(a, b)] != expected {
                return Err(FiniteModelError::CongruenceFailure(format!(
                    "product classes disagree at ({a},{b})"
                )));
            }
        }
        for lambda in 0..m.modulus() {
            let expected = class_of[m.scale(lambda, classes[class_of[a]][0])];
            if class_of[m.scale(lambda, a)] != expected {
                return Err(FiniteModelError::CongruenceFailure(format!(
                    "scaling classes disagree at lambda={lambda}, x={a}"
                )));
            }
        }
    }

    let q = classes.len();
    let mut mul = vec![0usize; q * q];
    for (i, ci) in classes.iter().enumerate() {
        for (j, cj) in classes.iter().enumerate() {
            mul[i * q + j] = class_of[m.mul(ci[0], cj[0])];
        }
    }
    let mut scale = vec![0usize; m.modulus() as usize * q];
    for lambda in 0..m.modulus() {
        for (i, ci) in classes.iter().enumerate() {
            scale[lambda as usize * q + i] = class_of[m.scale(lambda, ci[0])];
        }
    }
    let model =
        FiniteScalableMonoid::from_tables(q, m.modulus(), mul, scale, class_of[m.identity()])?;
    Ok(QuotientModel {
        model,
        class_of,
        classes,
    })
}

fn relate_by_left_multiplication(m: &FiniteScalableMonoid, members: &[usize]) -> Vec<Vec<bool>> {
    let c = m.carrier();
    let cosets: Vec<Vec<usize>> = (0..c)
        .map(|x| {
            let mut coset: Vec<usize> = members.iter().map(|&s| m.mul(s, x)).collect();
            coset.sort_unstable();
            coset.dedup();
            coset
        })
        .collect();
    (0..c)
        .map(|a| {
            (0..c)
                .map(|b| cosets[a].iter().any(|t| cosets[b].binary_search(t).is_ok()))
                .collect()
        })
        .collect()
}

/// Returns a witness if the class map fails to be a homomorphism of
/// scalable monoids onto the quotient model.
pub fn quotient_homomorphism_witness(
    m: &FiniteScalableMonoid,
    q: &QuotientModel,
) -> Option<String> {
    if q.class_of[m.identity()] != q.model.identity() {
        return Some("identity is not preserved".into());
    }
    for a in 0..m.carrier() {
        for b in 0..m.carrier() {
            if q.class_of[m.mul(a, b)] != q.model.mul(q.class_of[a], q.class_of[b]) {
                return Some(format!("multiplication not preserved at ({a},{b})"));
            }
        }
        for lambda in 0..m.modulus() {
            if q.class_of[m.scale(lambda, a)] != q.model.scale(lambda, q.class_of[a]) {
                return Some(format!("scaling not preserved at lambda={lambda}, x={a}"));
            }
        }
    }
    // Surjectivity holds by construction: every class has members.
    q.classes
        .iter()
        .position(Vec::is_empty)
        .map(|i| format!("class {i} is empty"))
}

/// Convenience: the partition induced by commensurability, for comparing
/// against quotients by explicit submonoids.
pub fn commensurability_classes(m: &FiniteScalableMonoid) -> Vec<usize> {
    orbit_partition(m).class_of
}

#[cfg(test)]
mod tests {
    use super::super::{FiniteMonoid, FiniteScalableMonoid};
    use super::*;

    fn z3c2() -> FiniteScalableMonoid {
        FiniteScalableMonoid::ring_monoid(3, &FiniteMonoid::cyclic(2)).unwrap()
    }

    #[test]
    fn commensurability_quotient_is_trivially_scaled() {
        let m = z3c2();
        let q = congruence_quotient(&m, CongruenceKind::Commensurability).unwrap();
        assert_eq!(q.model.carrier(), 2);
        for lambda in 0..3 {
            for x in 0..2 {
                assert_eq!(q.model.scale(lambda, x), x);
            }
        }
        assert!(quotient_homomorphism_witness(&m, &q).is_none());
    }

    #[test]
    fn quotient_by_identity_submonoid_is_the_identity_partition() {
        let m = z3c2();
        let q = congruence_quotient(&m, CongruenceKind::Submonoid(&[m.identity()])).unwrap();
        assert_eq!(q.model.carrier(), m.carrier());
        for x in 0..m.carrier() {
            assert_eq!(q.classes[q.class_of[x]], vec![x]);
        }
        assert!(quotient_homomorphism_witness(&m, &q).is_none());
    }

    #[test]
    fn quotient_by_scaled_identity_matches_commensurability() {
        for (name, m) in super::super::standard_inventory() {
            let scaled_identity = m.orbit(m.identity());
            let q = congruence_quotient(&m, CongruenceKind::ScalableSubmonoid(&scaled_identity))
                .unwrap();
            assert_eq!(
                q.class_of,
                commensurability_classes(&m),
                "partitions differ for {name}"
            );
        }
    }

    #[test]
    fn non_central_submonoids_are_refused() {
        // A 3-element monoid with a non-central element: left-zero semigroup
        // adjoined with an identity. mul(a, b) = a for a, b in {1, 2}.
        let mul = vec![
            0, 1, 2, // identity row
            1, 1, 1, //
            2, 2, 2, //
        ];
        let monoid = FiniteMonoid::new(3, mul, 0).unwrap();
        let m = FiniteScalableMonoid::trivial(2, &monoid).unwrap();
        let err = congruence_quotient(&m, CongruenceKind::Submonoid(&[0, 1]));
        assert_eq!(
            err.err(),
            Some(FiniteModelError::NotCentral {
                member: 1,
                witness: 2
            })
        );
    }

    #[test]
    fn non_submonoids_are_refused() {
        let m = z3c2();
        // Missing identity.
        assert!(matches!(
            congruence_quotient(&m, CongruenceKind::Submonoid(&[0])),
            Err(FiniteModelError::NotSubmonoid(_))
        ));
        // Scalable kind requires closure under scaling: {identity} alone
        // is a submonoid but 0 * identity escapes it.
        assert!(matches!(
            congruence_quotient(&m, CongruenceKind::ScalableSubmonoid(&[m.identity()])),
            Err(FiniteModelError::NotScalableSubmonoid(_))
        ));
    }
}
