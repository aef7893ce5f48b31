//! Direct and tensor products of finite scalable monoids over a shared
//! modular ring.

use super::{FiniteModelError, FiniteScalableMonoid};

fn check_ring(x: &FiniteScalableMonoid, y: &FiniteScalableMonoid) -> Result<(), FiniteModelError> {
    if x.modulus() != y.modulus() {
        return Err(FiniteModelError::RingMismatch {
            left: x.modulus(),
            right: y.modulus(),
        });
    }
    Ok(())
}

/// The direct product on the full pair set, with componentwise
/// multiplication and diagonal scaling. Pair (a, b) is `a * |Y| + b`.
pub fn direct_product(
    x: &FiniteScalableMonoid,
    y: &FiniteScalableMonoid,
) -> Result<FiniteScalableMonoid, FiniteModelError> {
    check_ring(x, y)?;
    let (cx, cy) = (x.carrier(), y.carrier());
    let carrier = cx * cy;
    let idx = |a: usize, b: usize| a * cy + b;
    let mut mul = vec![0usize; carrier * carrier];
    for a in 0..cx {
        for b in 0..cy {
            for a2 in 0..cx {
                for b2 in 0..cy {
                    mul[idx(a, b) * carrier + idx(a2, b2)] = idx(x.mul(a, a2), y.mul(b, b2));
                }
            }
        }
    }
    let n = x.modulus();
    let mut scale = vec![0usize; n as usize * carrier];
    for lambda in 0..n {
        for a in 0..cx {
            for b in 0..cy {
                scale[lambda as usize * carrier + idx(a, b)] =
                    idx(x.scale(lambda, a), y.scale(lambda, b));
            }
        }
    }
    FiniteScalableMonoid::from_tables(carrier, n, mul, scale, idx(x.identity(), y.identity()))
}

/// A tensor product: the pair set modulo the balancing relation that lets
/// scalars migrate between the factors.
pub struct TensorProduct {
    pub model: FiniteScalableMonoid,
    /// Pair index `a * |Y| + b` -> class index in the tensor carrier.
    pub class_of: Vec<usize>,
}

impl TensorProduct {
    pub fn class(&self, a: usize, b: usize, cy: usize) -> usize {
        self.class_of[a * cy + b]
    }
}

/// Builds the tensor product of `x` and `y`.
///
/// Pairs are identified when scalars can be traded across the factors:
/// (a1, b1) relates to (a2, b2) iff for some scalars r, s we have
/// (r*a1, s*b1) = (s*a2, r*b2). The relation is proved transitive by the
/// theory; the construction verifies this instead of assuming it, then
/// checks that multiplication and scaling descend to the classes.
pub fn tensor_product(
    x: &FiniteScalableMonoid,
    y: &FiniteScalableMonoid,
) -> Result<TensorProduct, FiniteModelError> {
    check_ring(x, y)?;
    let n = x.modulus();
    let (cx, cy) = (x.carrier(), y.carrier());
    let pairs = cx * cy;
    let idx = |a: usize, b: usize| a * cy + b;

    let related = |p: usize, q: usize| -> bool {
        let (a1, b1) = (p / cy, p % cy);
        let (a2, b2) = (q / cy, q % cy);
        for r in 0..n {
            for s in 0..n {
                if x.scale(r, a1) == x.scale(s, a2) && y.scale(s, b1) == y.scale(r, b2) {
                    return true;
                }
            }
        }
        false
    };

    // The raw relation must already be an equivalence; verify rather than
    // closing over it silently.
    for p in 0..pairs {
        if !related(p, p) {
            return Err(FiniteModelError::CongruenceFailure(format!(
                "tensor relation not reflexive at pair {p}"
            )));
        }
    }
    let table: Vec<Vec<bool>> = (0..pairs)
        .map(|p| (0..pairs).map(|q| related(p, q)).collect())
        .collect();
    for p in 0..pairs {
        for q in 0..pairs {
            if table[p][q] != table[q][p] {
                return Err(FiniteModelError::CongruenceFailure(format!(
                    "tensor relation not symmetric at ({p},{q})"
                )));
            }
            if table[p][q] {
                for t in 0..pairs {
                    if table[q][t] && !table[p][t] {
                        return Err(FiniteModelError::CongruenceFailure(format!(
                            "tensor relation not transitive at ({p},{q},{t})"
                        )));
                    }
                }
            }
        }
    }

    let mut class_of = vec![usize::MAX; pairs];
    let mut reps: Vec<usize> = Vec::new();
    for p in 0..pairs {
        if class_of[p] != usize::MAX {
            continue;
        }
        let cls = reps.len();
        for q in p..pairs {
            if table[p][q] {
                class_of[q] = cls;
            }
        }
        reps.push(p);
    }
    let classes = reps.len();

    // Multiplication must be class-independent of representatives.
    let pair_mul =
        |p: usize, q: usize| -> usize { idx(x.mul(p / cy, q / cy), y.mul(p % cy, q % cy)) };
    for p in 0..pairs {
        for q in 0..pairs {
            let via_reps = class_of[pair_mul(reps[class_of[p]], reps[class_of[q]])];
            if class_of[pair_mul(p, q)] != via_reps {
                return Err(FiniteModelError::CongruenceFailure(format!(
                    "tensor product ill-defined at ({p},{q})"
                )));
            }
        }
    }
    // Scaling through the left factor must agree for all members, and
    // balance with scaling through the right factor.
    for p in 0..pairs {
        let (a, b) = (p / cy, p % cy);
        for lambda in 0..n {
            let left = class_of[idx(x.scale(lambda, a), b)];
            let right = class_of[idx(a, y.scale(lambda, b))];
            if left != right {
                return Err(FiniteModelError::CongruenceFailure(format!(
                    "scalar balance fails at pair {p}, lambda={lambda}"
                )));
            }
            let via_rep = {
                let r = reps[class_of[p]];
                class_of[idx(x.scale(lambda, r / cy), r % cy)]
            };
            if left != via_rep {
                return Err(FiniteModelError::CongruenceFailure(format!(
                    "tensor scaling ill-defined at pair {p}, lambda={lambda}"
                )));
            }
        }
    }

    let mut mul = vec![0usize; classes * classes];
    for i in 0..classes {
        for j in 0..classes {
            mul[i * classes + j] = class_of[pair_mul(reps[i], reps[j])];
        }
    }
    let mut scale = vec![0usize; n as usize * classes];
    for lambda in 0..n {
        for (i, &r) in reps.iter().enumerate() {
            scale[lambda as usize * classes + i] = class_of[idx(x.scale(lambda, r / cy), r % cy)];
        }
    }
    let model = FiniteScalableMonoid::from_tables(
        classes,
        n,
        mul,
        scale,
        class_of[idx(x.identity(), y.identity())],
    )?;
    Ok(TensorProduct { model, class_of })
}

/// Verifies that regrouping a triple tensor product is an isomorphism:
/// the map induced by ((a ⊗ b) ⊗ c) -> (a ⊗ (b ⊗ c)) on representatives
/// must be a bijective homomorphism.
pub fn verify_tensor_associativity(
    x: &FiniteScalableMonoid,
    y: &FiniteScalableMonoid,
    z: &FiniteScalableMonoid,
) -> Result<(), FiniteModelError> {
    let xy = tensor_product(x, y)?;
    let xy_z = tensor_product(&xy.model, z)?;
    let yz = tensor_product(y, z)?;
    let x_yz = tensor_product(x, &yz.model)?;

    let (cy, cz) = (y.carrier(), z.carrier());
    let c_yz = yz.model.carrier();

    // Image of each left-associated class under the regrouping map.
    let map: Vec<usize> = (0..xy_z.model.carrier())
        .map(|cls| {
            // Representative pair (xy-class, c) of this class.
            let pair = xy_z
                .class_of
                .iter()
                .position(|&q| q == cls)
                .expect("classes are surjective");
            let (xy_cls, c) = (pair / z.carrier(), pair % z.carrier());
            // Representative pair (a, b) of the inner class.
            let inner = xy
                .class_of
                .iter()
                .position(|&q| q == xy_cls)
                .expect("classes are surjective");
            let (a, b) = (inner / cy, inner % cy);
            x_yz.class_of[a * c_yz + yz.class_of[b * cz + c]]
        })
        .collect();

    if xy_z.model.carrier() != x_yz.model.carrier() {
        return Err(FiniteModelError::IsomorphismFailure(format!(
            "carrier sizes differ: {} vs {}",
            xy_z.model.carrier(),
            x_yz.model.carrier()
        )));
    }
    let mut seen = vec![false; x_yz.model.carrier()];
    for (src, &img) in map.iter().enumerate() {
        if seen[img] {
            return Err(FiniteModelError::IsomorphismFailure(format!(
                "map is not injective at class {src}"
            )));
        }
        seen[img] = true;
    }
    if map[xy_z.model.identity()] != x_yz.model.identity() {
        return Err(FiniteModelError::IsomorphismFailure(
            "identity is not preserved".into(),
        ));
    }
    for p in 0..xy_z.model.carrier() {
        for q in 0..xy_z.model.carrier() {
            if map[xy_z.model.mul(p, q)] != x_yz.model.mul(map[p], map[q]) {
                return Err(FiniteModelError::IsomorphismFailure(format!(
                    "multiplication not preserved at ({p},{q})"
                )));
            }
        }
        for lambda in 0..x.modulus() {
            if map[xy_z.model.scale(lambda, p)] != x_yz.model.scale(lambda, map[p]) {
                return Err(FiniteModelError::IsomorphismFailure(format!(
                    "scaling not preserved at lambda={lambda}, class {p}"
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::super::{check_axioms, FiniteMonoid, FiniteScalableMonoid};
    use super::*;

    fn model(n: u64, k: usize) -> FiniteScalableMonoid {
        FiniteScalableMonoid::ring_monoid(n, &FiniteMonoid::cyclic(k)).unwrap()
    }

    #[test]
    fn direct_product_has_product_carrier() {
        let x = model(3, 2);
        let y = model(3, 3);
        let p = direct_product(&x, &y).unwrap();
        assert_eq!(p.carrier(), x.carrier() * y.carrier());
        assert!(check_axioms(&p).passed());
    }

    #[test]
    fn ring_mismatch_is_rejected() {
        let x = model(2, 2);
        let y = model(3, 2);
        assert_eq!(
            direct_product(&x, &y).err(),
            Some(FiniteModelError::RingMismatch { left: 2, right: 3 })
        );
        assert!(tensor_product(&x, &y).is_err());
    }

    #[test]
    fn tensor_product_passes_axioms_and_balances_scalars() {
        let x = model(3, 2);
        let y = model(3, 1);
        let t = tensor_product(&x, &y).unwrap();
        assert!(check_axioms(&t.model).passed());
        let cy = y.carrier();
        for a in 0..x.carrier() {
            for b in 0..cy {
                for lambda in 0..3 {
                    assert_eq!(
                        t.class_of[x.scale(lambda, a) * cy + b],
                        t.class_of[a * cy + y.scale(lambda, b)]
                    );
                }
            }
        }
    }

    #[test]
    fn tensor_associativity_on_small_carriers() {
        let x = model(2, 2); // carrier 4
        let y = model(2, 1); // carrier 2
        let z = model(2, 2); // carrier 4
        verify_tensor_associativity(&x, &y, &z).unwrap();
    }
}
