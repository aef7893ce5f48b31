//! Natural-unit quotients: factoring a quantity space by the submonoid
//! generated by chosen constants (so each projects to the dimensionless 1),
//! plus extraction of dimensionless product groups from a set of variables.

use thiserror::Error;

use crate::dimensions::{
    lattice_quotient, unimodular_complete, DimVector, DimensionError, LatticeQuotient,
};
use crate::quantity::{Quantity, QuantityError, QuantitySpace};
use crate::registry::{change_basis, BasisChange, RegistryError, UnitRegistry};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuotientError {
    #[error("unknown unit {0:?}")]
    UnknownUnit(String),
    #[error("set units have dependent dimensions")]
    NotIndependent,
    #[error("quotient has torsion; invariant factors {0:?}")]
    TorsionQuotient(Vec<i64>),
    #[error("quantity belongs to a different space")]
    SpaceMismatch,
    #[error("a set unit must be non-zero")]
    ZeroUnit,
    #[error("dimension vectors have mismatched ranks")]
    RankMismatch,
    #[error(transparent)]
    Quantity(#[from] QuantityError),
    #[error(transparent)]
    Registry(#[from] RegistryError),
    #[error(transparent)]
    Dimension(#[from] DimensionError),
}

/// The quotient of a quantity space by a set of constants declared equal
/// to one. Built by completing the constants to a full basis and deleting
/// their coordinates; the projection is a homomorphism sending each set
/// unit to the dimensionless 1.
pub struct QuotientSpace {
    parent: QuantitySpace,
    set_units: Vec<(String, Quantity)>,
    completion: BasisChange,
    quotient_space: QuantitySpace,
    diagnostics: LatticeQuotient,
}

impl QuotientSpace {
    pub fn parent(&self) -> &QuantitySpace {
        &self.parent
    }

    pub fn set_units(&self) -> &[(String, Quantity)] {
        &self.set_units
    }

    /// The full-rank intermediate change of basis, set units first.
    pub fn completion(&self) -> &BasisChange {
        &self.completion
    }

    pub fn space(&self) -> &QuantitySpace {
        &self.quotient_space
    }

    pub fn rank(&self) -> usize {
        self.quotient_space.rank()
    }

    /// Lattice structure of the dimension-group quotient.
    pub fn diagnostics(&self) -> &LatticeQuotient {
        &self.diagnostics
    }

    /// Projects a parent quantity into the quotient: rebase into the
    /// completion basis, then delete the set-unit coordinates. The set-unit
    /// scalars are absorbed into the measure by the rebase.
    pub fn project(&self, x: &Quantity) -> Result<Quantity, QuotientError> {
        if x.space() != &self.parent {
            return Err(QuotientError::SpaceMismatch);
        }
        let rebased = self.completion.rebase(x)?;
        let kept = rebased.dims().exponents()[self.set_units.len()..].to_vec();
        Ok(self
            .quotient_space
            .quantity(rebased.measure().clone(), DimVector::new(kept))?)
    }
}

/// Builds the quotient of the registry's space by the named units.
///
/// The set units' exponent vectors must be independent and span a saturated
/// sublattice; otherwise the quotient acquires torsion and is rejected with
/// its invariant factors.
pub fn build_quotient(
    registry: &UnitRegistry,
    set_to_one: &[&str],
) -> Result<QuotientSpace, QuotientError> {
    let space = registry.space().clone();
    let n = space.rank();

    let mut set_units = Vec::with_capacity(set_to_one.len());
    for &name in set_to_one {
        let q = registry
            .resolve(name)
            .ok_or_else(|| QuotientError::UnknownUnit(name.to_string()))?;
        if q.is_zero() {
            return Err(QuotientError::ZeroUnit);
        }
        set_units.push((name.to_string(), q));
    }

    let generators: Vec<DimVector> = set_units.iter().map(|(_, q)| q.dims().clone()).collect();
    let diagnostics = lattice_quotient(&generators, n)?;
    let full = match unimodular_complete(&generators, n) {
        Ok(m) => m,
        Err(DimensionError::NotSaturated(factors)) => {
            return Err(QuotientError::TorsionQuotient(factors))
        }
        Err(DimensionError::NotIndependent) => return Err(QuotientError::NotIndependent),
        Err(e) => return Err(e.into()),
    };

    // Basis definitions: the set units themselves, then measure-one units
    // for the completion rows. Rows that are plain parent basis vectors
    // keep their symbol; synthesized rows get fresh q<i> names.
    let mut defs: Vec<(String, Quantity)> = set_units.clone();
    let taken: Vec<&str> = set_to_one.to_vec();
    let mut fresh = 0usize;
    for i in set_units.len()..n {
        let row = full.row(i);
        let name = match positive_unit_vector(row) {
            Some(j) if !taken.contains(&space.basis_symbols()[j].as_str()) => {
                space.basis_symbols()[j].clone()
            }
            _ => loop {
                let candidate = format!("q{fresh}");
                fresh += 1;
                if space.symbol_index(&candidate).is_none() && !taken.contains(&candidate.as_str())
                {
                    break candidate;
                }
            },
        };
        let unit = space.coherent_unit(&DimVector::new(row.to_vec()))?;
        defs.push((name, unit));
    }
    let completion = change_basis(&space, &defs)?;
    let quotient_space =
        QuantitySpace::new(defs[set_units.len()..].iter().map(|(name, _)| name.clone()))?;
    Ok(QuotientSpace {
        parent: space,
        set_units,
        completion,
        quotient_space,
        diagnostics,
    })
}

fn positive_unit_vector(row: &[i64]) -> Option<usize> {
    let mut hit = None;
    for (j, &e) in row.iter().enumerate() {
        match e {
            0 => {}
            1 if hit.is_none() => hit = Some(j),
            _ => return None,
        }
    }
    hit
}

/// A basis for the integer nullspace of the variables' dimension matrix:
/// each returned exponent tuple combines the variables into a product of
/// identity dimension. Tuples are normalized so their first non-zero entry
/// is positive.
pub fn pi_groups(vars: &[DimVector]) -> Result<Vec<Vec<i64>>, QuotientError> {
    let Some(first) = vars.first() else {
        return Ok(Vec::new());
    };
    let n = first.rank();
    if vars.iter().any(|v| v.rank() != n) {
        return Err(QuotientError::RankMismatch);
    }
    let m = vars.len();
    if n == 0 {
        // Every variable is dimensionless; the nullspace is all of Z^m.
        return Ok((0..m)
            .map(|i| {
                let mut e = vec![0; m];
                e[i] = 1;
                e
            })
            .collect());
    }
    let mut matrix = crate::dimensions::IntMatrix::zero(n, m);
    for (j, v) in vars.iter().enumerate() {
        for (i, &e) in v.exponents().iter().enumerate() {
            matrix[(i, j)] = e;
        }
    }
    let snf = crate::dimensions::smith_normal_form(&matrix)?;
    let rank = snf.rank();
    let mut generators = Vec::with_capacity(m - rank);
    for j in rank..m {
        let mut col: Vec<i64> = (0..m).map(|i| snf.v[(i, j)]).collect();
        if let Some(&lead) = col.iter().find(|&&e| e != 0) {
            if lead < 0 {
                for e in &mut col {
                    *e = -*e;
                }
            }
        }
        // Applied product must land in the identity dimension.
        let mut total = DimVector::zero(n);
        for (v, &e) in vars.iter().zip(&col) {
            total = total.mul(&v.pow(e)?)?;
        }
        debug_assert!(total.is_zero(), "nullspace column is not dimensionless");
        generators.push(col);
    }
    Ok(generators)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Rational;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn dv(v: &[i64]) -> DimVector {
        DimVector::new(v.to_vec())
    }

    fn si() -> UnitRegistry {
        let sp = QuantitySpace::new(["m", "s", "kg"]).unwrap();
        let c = sp.quantity(q("299792458"), dv(&[1, -1, 0])).unwrap();
        let hbar = sp
            .quantity(
                q("1054571817/10000000000000000000000000000000000000000000"),
                dv(&[2, -1, 1]),
            )
            .unwrap();
        UnitRegistry::new(sp)
            .register("c", c)
            .unwrap()
            .register("hbar", hbar)
            .unwrap()
    }

    #[test]
    fn quotient_by_light_speed_has_rank_two() {
        let qs = build_quotient(&si(), &["c"]).unwrap();
        assert_eq!(qs.rank(), 2);
        assert!(qs.diagnostics().is_free());
    }

    #[test]
    fn quotient_by_c_and_hbar_has_rank_one() {
        let qs = build_quotient(&si(), &["c", "hbar"]).unwrap();
        assert_eq!(qs.rank(), 1);
        let reg = si();
        for name in ["c", "hbar"] {
            let projected = qs.project(&reg.resolve(name).unwrap()).unwrap();
            assert_eq!(projected, qs.space().one());
        }
    }

    #[test]
    fn torsion_quotients_are_rejected_with_factors() {
        let reg = si();
        let u = reg.space().quantity(q("1"), dv(&[2, -2, 0])).unwrap();
        let reg = reg.register("u", u).unwrap();
        assert_eq!(
            build_quotient(&reg, &["u"]).err(),
            Some(QuotientError::TorsionQuotient(vec![2]))
        );
    }

    #[test]
    fn unknown_and_dependent_units_are_rejected() {
        let reg = si();
        assert_eq!(
            build_quotient(&reg, &["w"]).err(),
            Some(QuotientError::UnknownUnit("w".into()))
        );
        let c2 = reg
            .resolve("c")
            .unwrap()
            .mul(&reg.resolve("c").unwrap())
            .unwrap();
        let reg = reg.register("c2", c2).unwrap();
        assert_eq!(
            build_quotient(&reg, &["c", "c2"]).err(),
            Some(QuotientError::NotIndependent)
        );
    }

    #[test]
    fn projection_is_a_homomorphism() {
        let reg = si();
        let qs = build_quotient(&reg, &["c"]).unwrap();
        let sp = reg.space();

        let c = reg.resolve("c").unwrap();
        assert_eq!(qs.project(&c).unwrap(), qs.space().one());
        assert_eq!(
            qs.project(&c.scale(&q("2"))).unwrap(),
            qs.space().one().scale(&q("2"))
        );

        let x = sp.quantity(q("3/4"), dv(&[2, -1, 1])).unwrap();
        let y = sp.quantity(q("-5"), dv(&[0, 1, 0])).unwrap();
        assert_eq!(
            qs.project(&x.mul(&y).unwrap()).unwrap(),
            qs.project(&x)
                .unwrap()
                .mul(&qs.project(&y).unwrap())
                .unwrap()
        );
        assert_eq!(
            qs.project(&x.scale(&q("7/3"))).unwrap(),
            qs.project(&x).unwrap().scale(&q("7/3"))
        );
        assert_eq!(qs.project(&sp.one()).unwrap(), qs.space().one());
    }

    #[test]
    fn energy_projects_with_the_light_speed_scalar_absorbed() {
        // 1 kg m^2 s^-2 equals (1/c^2) * c^2 kg exactly, so its projection
        // carries the inverse square of the speed-of-light scalar.
        let reg = si();
        let qs = build_quotient(&reg, &["c"]).unwrap();
        let joule = reg.space().quantity(q("1"), dv(&[2, -2, 1])).unwrap();
        let projected = qs.project(&joule).unwrap();
        let c_scalar = q("299792458");
        let expected_measure = Rational::one()
            .checked_div(&(&c_scalar * &c_scalar))
            .unwrap();
        assert_eq!(projected.measure(), &expected_measure);
        // The remaining dimension is pure mass.
        let kg_in_quotient = qs.project(&reg.resolve("kg").unwrap()).unwrap();
        assert_eq!(projected.dims(), kg_in_quotient.dims());
    }

    #[test]
    fn remaining_basis_symbols_project_injectively() {
        let reg = si();
        let qs = build_quotient(&reg, &["c"]).unwrap();
        let projected: Vec<_> = ["m", "s", "kg"]
            .iter()
            .map(|n| qs.project(&reg.resolve(n).unwrap()).unwrap())
            .collect();
        // The two completion symbols carry distinct dimensions.
        assert_ne!(projected[1].dims(), projected[2].dims());
        assert_eq!(qs.space().rank(), 2);
    }

    #[test]
    fn iterated_quotients_match_the_joint_quotient() {
        // Quotient by c, then by the projected hbar, agrees with the joint
        // quotient by {c, hbar} at the dimension-group level.
        let reg = si();
        let joint = build_quotient(&reg, &["c", "hbar"]).unwrap();

        let by_c = build_quotient(&reg, &["c"]).unwrap();
        let hbar_projected = by_c.project(&reg.resolve("hbar").unwrap()).unwrap();
        let reg2 = UnitRegistry::new(by_c.space().clone())
            .register("hbar", hbar_projected)
            .unwrap();
        let then_hbar = build_quotient(&reg2, &["hbar"]).unwrap();

        assert_eq!(then_hbar.rank(), joint.rank());
        // Both composite kernels contain the generators: everything the
        // joint projection kills, the iterated one kills too.
        for name in ["c", "hbar"] {
            let u = reg.resolve(name).unwrap();
            let once = joint.project(&u).unwrap();
            let twice = then_hbar.project(&by_c.project(&u).unwrap()).unwrap();
            assert!(once.dims().is_zero());
            assert!(twice.dims().is_zero());
        }
        // And an element outside the kernel stays outside in both.
        let kg = reg.resolve("kg").unwrap();
        assert!(!joint.project(&kg).unwrap().dims().is_zero());
        assert!(!then_hbar
            .project(&by_c.project(&kg).unwrap())
            .unwrap()
            .dims()
            .is_zero());
    }

    #[test]
    fn pendulum_has_one_dimensionless_group() {
        // Over (L, T): l = L, g = L T^-2, t = T.
        let vars = [dv(&[1, 0]), dv(&[1, -2]), dv(&[0, 1])];
        let groups = pi_groups(&vars).unwrap();
        assert_eq!(groups.len(), 1);
        let g = &groups[0];
        // Expected generator: l g^-1 t^-2 up to sign (normalized positive lead).
        assert_eq!(g, &vec![1, -1, -2]);
    }

    #[test]
    fn single_variable_has_no_group() {
        assert!(pi_groups(&[dv(&[1, 0])]).unwrap().is_empty());
    }

    #[test]
    fn velocity_length_time_group() {
        // v = (1,-1), l = (1,0), t = (0,1) -> v t l^-1.
        let groups = pi_groups(&[dv(&[1, -1]), dv(&[1, 0]), dv(&[0, 1])]).unwrap();
        assert_eq!(groups, vec![vec![1, -1, 1]]);
    }

    #[test]
    fn rank_mismatch_in_variables() {
        assert_eq!(
            pi_groups(&[dv(&[1, 0]), dv(&[1])]).err(),
            Some(QuotientError::RankMismatch)
        );
    }
}
