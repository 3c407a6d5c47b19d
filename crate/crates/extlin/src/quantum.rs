//! Classical–quantum interaction over finite outcome sets.
//!
//! A quantum system measured against a finite set B of classical
//! outcomes lives as a bundle of state spaces over B. Measurement is the
//! counit of the base-change comonad □_B = p*p_∗ along the collapse map
//! p: B → pt — branchwise, the projection of the total state space onto
//! the outcome's own fiber. State preparation conditioned on a classical
//! parameter is the dual picture: the unit of the left base change picks
//! out the summand inclusion of the chosen outcome. Over a finite B the
//! product and sum of the fibers agree (the comparison map is invertible,
//! witnessed exactly), which is what lets both stories use the same
//! total space ⊕_b 𝒱_b.
//!
//! Everything here is exact: comonad laws, collapse identities, and the
//! worked qubit example are verified as matrix equalities over ℚ or
//! ℚ(i), never numerically.

use std::fmt;

use thiserror::Error;

use crate::fingrpd::{discrete, terminal_functor, FinGroupoid, GroupoidFunctor, GrpdError};
use crate::finvect::{FinVectError, LinearMap, VectorSpace};
use crate::locsys::{
    ambidexterity_witness, compose_loc, pullback, pullback_mor, pushforward, sections,
    sections_counit, sections_mor, sections_unit, LocError, LocMorphism, LocalSystem,
};
use crate::scalars::{Field, FieldElement, ScalarError};

#[derive(Debug, Error)]
pub enum QuantumError {
    #[error("invalid branch set: {detail}")]
    InvalidBranches { detail: String },
    #[error("invalid quantum data: {detail}")]
    InvalidState { detail: String },
    #[error(transparent)]
    Loc(#[from] LocError),
    #[error(transparent)]
    Grpd(#[from] GrpdError),
    #[error(transparent)]
    FinVect(#[from] FinVectError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

pub type Result<T> = std::result::Result<T, QuantumError>;

// ---------------------------------------------------------------------------
// Branch sets and bundles of state spaces
// ---------------------------------------------------------------------------

/// A finite, nonempty set of classical measurement outcomes together
/// with its collapse map p: B → pt.
#[derive(Clone, Debug)]
pub struct BranchSet {
    labels: Vec<String>,
    base: FinGroupoid,
    collapse: GroupoidFunctor,
}

impl BranchSet {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        if labels.is_empty() {
            return Err(QuantumError::InvalidBranches {
                detail: "a measurement scenario needs at least one outcome".into(),
            });
        }
        let base = discrete(&labels);
        let collapse = terminal_functor(&base);
        Ok(BranchSet {
            labels,
            base,
            collapse,
        })
    }

    /// The two-outcome set {0, 1} of a single projective qubit
    /// measurement.
    pub fn binary() -> Self {
        BranchSet::new(vec!["0".into(), "1".into()]).expect("two outcomes form a branch set")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, b: usize) -> &str {
        &self.labels[b]
    }

    /// The outcome set as a discrete groupoid.
    pub fn base(&self) -> &FinGroupoid {
        &self.base
    }

    /// The collapse functor p: B → pt.
    pub fn collapse(&self) -> &GroupoidFunctor {
        &self.collapse
    }

    /// The one-object base the collapse map lands in.
    pub fn point(&self) -> &FinGroupoid {
        self.collapse.target()
    }
}

/// A bundle of state spaces over a finite set of classical parameters.
/// Structurally an ordinary vector-space bundle; the alias records the
/// intent.
pub type QuantumBundle = LocalSystem;

/// The trivial line bundle over the outcome set — the bundle whose space
/// of global sections is the function space 𝕂[B].
pub fn line_bundle(branches: &BranchSet, field: Field) -> QuantumBundle {
    LocalSystem::constant(
        branches.base().clone(),
        VectorSpace::standard(field, 1, "e"),
    )
}

/// A state of the bundle: the section 1 → 𝒱 over the identity that picks
/// the given coordinate vector in every fiber.
pub fn section(v: &LocalSystem, vectors: &[Vec<FieldElement>]) -> Result<LocMorphism> {
    if vectors.len() != v.base().object_count() {
        return Err(QuantumError::InvalidState {
            detail: "one vector per base object is required".into(),
        });
    }
    let unit = LocalSystem::unit_system(v.base().clone(), v.field());
    let components = vectors
        .iter()
        .enumerate()
        .map(|(x, coords)| {
            if coords.len() != v.fiber(x).dim() {
                return Err(QuantumError::InvalidState {
                    detail: format!(
                        "vector over {} has {} coordinates, fiber has dimension {}",
                        v.base().object_name(x),
                        coords.len(),
                        v.fiber(x).dim()
                    ),
                });
            }
            Ok(LinearMap::from_fn(
                unit.fiber(x).clone(),
                v.fiber(x).clone(),
                |r, _| coords[r].clone(),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LocMorphism::new(
        GroupoidFunctor::identity(v.base()),
        unit,
        v.clone(),
        components,
    )?)
}

/// Componentwise equality of bundle morphisms, boundary data included.
pub fn loc_morphisms_agree(a: &LocMorphism, b: &LocMorphism) -> bool {
    a.map() == b.map()
        && a.source() == b.source()
        && a.target() == b.target()
        && a.components() == b.components()
}

// ---------------------------------------------------------------------------
// The measurement comonad
// ---------------------------------------------------------------------------

/// The base-change comonad □_B = p*p_∗ on bundles over the outcome set:
/// □𝒱 is the constant bundle on the total state space, its counit is the
/// branchwise projection performing measurement and state collapse, and
/// its comultiplication re-reads the recorded outcome.
#[derive(Clone, Debug)]
pub struct MeasureComonad {
    branches: BranchSet,
}

pub fn measure_comonad(branches: &BranchSet) -> MeasureComonad {
    MeasureComonad {
        branches: branches.clone(),
    }
}

impl MeasureComonad {
    pub fn branches(&self) -> &BranchSet {
        &self.branches
    }

    fn check_base(&self, v: &LocalSystem) -> Result<()> {
        if v.base() != self.branches.base() {
            return Err(QuantumError::InvalidState {
                detail: "bundle does not live over this outcome set".into(),
            });
        }
        Ok(())
    }

    fn require_identity_map(&self, phi: &LocMorphism) -> Result<()> {
        if phi.map() != &GroupoidFunctor::identity(self.branches.base()) {
            return Err(QuantumError::InvalidState {
                detail: "the comonad acts on morphisms over the identity of the outcome set"
                    .into(),
            });
        }
        Ok(())
    }

    /// □𝒱 — the constant bundle on the space of all branches' states.
    pub fn apply(&self, v: &LocalSystem) -> Result<LocalSystem> {
        self.check_base(v)?;
        let sec = sections(self.branches.collapse(), v)?;
        Ok(pullback(self.branches.collapse(), &sec.system))
    }

    /// □φ for a morphism over the identity of the outcome set.
    pub fn apply_mor(&self, phi: &LocMorphism) -> Result<LocMorphism> {
        self.check_base(phi.source())?;
        self.check_base(phi.target())?;
        self.require_identity_map(phi)?;
        let a = sections(self.branches.collapse(), phi.source())?;
        let b = sections(self.branches.collapse(), phi.target())?;
        let pushed = sections_mor(&a, &b, phi)?;
        Ok(pullback_mor(self.branches.collapse(), &pushed)?)
    }

    /// The counit ε: □𝒱 → 𝒱 — over outcome b, the projection of the
    /// total space onto that branch's own state space.
    pub fn counit(&self, v: &LocalSystem) -> Result<LocMorphism> {
        self.check_base(v)?;
        let sec = sections(self.branches.collapse(), v)?;
        Ok(sections_counit(&sec)?)
    }

    /// The comultiplication δ: □𝒱 → □□𝒱 duplicating the recorded
    /// outcome.
    pub fn comultiplication(&self, v: &LocalSystem) -> Result<LocMorphism> {
        self.check_base(v)?;
        let sec = sections(self.branches.collapse(), v)?;
        let total = sec.system;
        let boxed = pullback(self.branches.collapse(), &total);
        let sec2 = sections(self.branches.collapse(), &boxed)?;
        let eta = sections_unit(&sec2, &total)?;
        Ok(pullback_mor(self.branches.collapse(), &eta)?)
    }

    /// Checks ε∘δ = id, (□ε)∘δ = id and coassociativity for one bundle,
    /// as exact matrix identities.
    pub fn laws_hold(&self, v: &LocalSystem) -> Result<bool> {
        let boxed = self.apply(v)?;
        let eps = self.counit(v)?;
        let delta = self.comultiplication(v)?;
        let id_boxed = LocMorphism::identity(&boxed);

        let left_counit = compose_loc(&self.counit(&boxed)?, &delta)?;
        let right_counit = compose_loc(&self.apply_mor(&eps)?, &delta)?;
        let outer = compose_loc(&self.comultiplication(&boxed)?, &delta)?;
        let inner = compose_loc(&self.apply_mor(&delta)?, &delta)?;
        Ok(loc_morphisms_agree(&left_counit, &id_boxed)
            && loc_morphisms_agree(&right_counit, &id_boxed)
            && loc_morphisms_agree(&outer, &inner))
    }
}

// ---------------------------------------------------------------------------
// State preparation
// ---------------------------------------------------------------------------

/// Prepares a state space at one classical outcome: the summand
/// inclusion 𝒱 → ⊕_{b′} 𝒱 of the chosen branch, read off the unit of the
/// left base change along the collapse map.
pub fn prepare(branches: &BranchSet, b: usize, v: &LocalSystem) -> Result<LocMorphism> {
    if b >= branches.len() {
        return Err(QuantumError::InvalidBranches {
            detail: format!(
                "outcome index {} is out of range for {} outcomes",
                b,
                branches.len()
            ),
        });
    }
    if v.base() != branches.point() {
        return Err(QuantumError::InvalidState {
            detail: "state preparation expects a bundle over the point".into(),
        });
    }
    let pb = pullback(branches.collapse(), v);
    let push = pushforward(branches.collapse(), &pb)?;
    let component = push.unit.component(b).clone();
    Ok(LocMorphism::new(
        GroupoidFunctor::identity(branches.point()),
        v.clone(),
        push.system.clone(),
        vec![component],
    )?)
}

/// The full preparation diagram over the collapse map: the bundle
/// morphism from the constant bundle on 𝒱 into the total space that
/// includes each branch's copy as its own summand. Its component at b is
/// `prepare(branches, b, v)`.
pub fn preparation_diagram(branches: &BranchSet, v: &LocalSystem) -> Result<LocMorphism> {
    if v.base() != branches.point() {
        return Err(QuantumError::InvalidState {
            detail: "state preparation expects a bundle over the point".into(),
        });
    }
    let pb = pullback(branches.collapse(), v);
    let push = pushforward(branches.collapse(), &pb)?;
    Ok(push.unit)
}

/// Measurement applied to a freshly prepared state: the exact composite
///
/// ```text
///   𝒱 ──prepare(b)──▶ ⊕_{b′}𝒱 ──≅──▶ ∏_{b′}𝒱 ──ε at b′──▶ 𝒱
/// ```
///
/// one matrix per outcome b′. The b′ = b component is the identity (the
/// prepared state is read back unchanged) and every other component is
/// zero (the state collapses away from unobserved branches).
pub fn measure_prepared(
    branches: &BranchSet,
    b: usize,
    v: &LocalSystem,
) -> Result<Vec<LinearMap>> {
    let prepared = prepare(branches, b, v)?;
    let pb = pullback(branches.collapse(), v);
    let amb = ambidexterity_witness(&pb)?;
    let eps = measure_comonad(branches).counit(&pb)?;
    let into_product = LinearMap::compose(amb.forward.component(0), prepared.component(0))?;
    (0..branches.len())
        .map(|outcome| Ok(LinearMap::compose(eps.component(outcome), &into_product)?))
        .collect()
}

// ---------------------------------------------------------------------------
// The worked qubit example
// ---------------------------------------------------------------------------

/// Exact record of the two-outcome qubit story over ℚ(i): the
/// measurement and preparation morphisms with their matrices, the
/// read-out of a symbolic qubit q₀|0⟩ + q₁|1⟩, the collapse of a
/// prepared state, and the verified structural laws.
#[derive(Clone, Debug)]
pub struct QubitDemo {
    pub field: Field,
    pub q0: FieldElement,
    pub q1: FieldElement,
    /// ε = (⟨0|, ⟨1|): one row matrix per outcome.
    pub measurement_rows: Vec<Vec<FieldElement>>,
    /// |ψ_b⟩ columns of the preparation diagram, one per outcome.
    pub preparation_columns: Vec<Vec<FieldElement>>,
    /// prepare(0) as a column into the total space.
    pub prepared_column: Vec<FieldElement>,
    /// Components of ε∘ψ for the constant section ψ = (q₀, q₁).
    pub readout: Vec<FieldElement>,
    /// Measuring the state prepared at outcome 0: one scalar per
    /// outcome.
    pub collapse: Vec<FieldElement>,
    pub comonad_laws_hold: bool,
    pub readout_idempotent: bool,
    pub sum_product_comparison_invertible: bool,
    /// Which base-change unit reproduces the preparation picture.
    pub preparation_note: String,
}

/// Runs the two-outcome measurement and preparation diagrams over ℚ(i)
/// with a fixed symbolic qubit and verifies every claimed identity
/// exactly.
pub fn qubit_demo() -> Result<QubitDemo> {
    let field = Field::Gaussian;
    let q0 = FieldElement::gaussian(2, 3, 1, 2)?;
    let q1 = FieldElement::gaussian(1, 6, -1, 3)?;
    let branches = BranchSet::binary();
    let comonad = measure_comonad(&branches);

    // measurement: ε on the line bundle, branchwise ⟨b|
    let v = line_bundle(&branches, field);
    let boxed = comonad.apply(&v)?;
    let eps = comonad.counit(&v)?;
    let measurement_rows = (0..branches.len())
        .map(|b| eps.component(b).matrix()[0].clone())
        .collect();

    // read-out of the symbolic qubit: ε applied to the constant section
    let psi = section(&boxed, &[vec![q0.clone(), q1.clone()], vec![q0.clone(), q1.clone()]])?;
    let readout = (0..branches.len())
        .map(|b| {
            compose_loc(&eps, &psi).map(|after| after.component(b).matrix()[0][0].clone())
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;

    // preparation: the summand inclusions |ψ_b⟩ over the collapse map
    let state_space = LocalSystem::constant(
        branches.point().clone(),
        VectorSpace::standard(field, 1, "q"),
    );
    let diagram = preparation_diagram(&branches, &state_space)?;
    let preparation_columns = (0..branches.len())
        .map(|b| {
            diagram
                .component(b)
                .matrix()
                .iter()
                .map(|row| row[0].clone())
                .collect()
        })
        .collect();
    let prepared = prepare(&branches, 0, &state_space)?;
    let prepared_column = prepared
        .component(0)
        .matrix()
        .iter()
        .map(|row| row[0].clone())
        .collect();

    // measuring the prepared state: identity on the observed branch,
    // zero on the other
    let collapse = measure_prepared(&branches, 0, &state_space)?
        .iter()
        .map(|m| m.matrix()[0][0].clone())
        .collect();

    // structural laws, verified exactly on the line bundle
    let comonad_laws_hold = comonad.laws_hold(&v)?;
    let delta = comonad.comultiplication(&v)?;
    let eps_boxed = comonad.counit(&boxed)?;
    let twice = LinearMap::compose(
        eps.component(0),
        &LinearMap::compose(eps_boxed.component(0), delta.component(0))?,
    )?;
    let readout_idempotent = twice == *eps.component(0);
    let amb = ambidexterity_witness(&v)?;
    let sum_product_comparison_invertible = amb.forward.is_fiberwise_invertible();

    Ok(QubitDemo {
        field,
        q0,
        q1,
        measurement_rows,
        preparation_columns,
        prepared_column,
        readout,
        collapse,
        comonad_laws_hold,
        readout_idempotent,
        sum_product_comparison_invertible,
        preparation_note:
            "the unit of the left base change (summand inclusion) reproduces the preparation \
             picture; the right base-change unit is the diagonal into the product"
                .into(),
    })
}

fn join(row: &[FieldElement]) -> String {
    row.iter()
        .map(|e| e.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

impl fmt::Display for QubitDemo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "qubit demo over {}: |ψ⟩ = ({})|0⟩ + ({})|1⟩",
            self.field, self.q0, self.q1
        )?;
        for (b, row) in self.measurement_rows.iter().enumerate() {
            writeln!(f, "  measurement at outcome {}: [{}]", b, join(row))?;
        }
        writeln!(
            f,
            "  read-out of the constant qubit section: ({})",
            join(&self.readout)
        )?;
        for (b, col) in self.preparation_columns.iter().enumerate() {
            writeln!(f, "  preparation |ψ_{}⟩: ({})ᵀ", b, join(col))?;
        }
        writeln!(
            f,
            "  prepare(0) column: ({})ᵀ",
            join(&self.prepared_column)
        )?;
        writeln!(
            f,
            "  measuring the prepared state: ({})",
            join(&self.collapse)
        )?;
        writeln!(f, "  comonad laws: {}", verdict(self.comonad_laws_hold))?;
        writeln!(
            f,
            "  branch read-out idempotent: {}",
            verdict(self.readout_idempotent)
        )?;
        writeln!(
            f,
            "  sum/product comparison invertible: {}",
            verdict(self.sum_product_comparison_invertible)
        )?;
        write!(f, "  note: {}", self.preparation_note)
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::locsys::pushforward_mor;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ints(values: &[i64], field: Field) -> Vec<FieldElement> {
        values
            .iter()
            .map(|&n| FieldElement::integer(n, field))
            .collect()
    }

    #[test]
    fn branch_sets_must_be_nonempty() {
        assert!(matches!(
            BranchSet::new(vec![]),
            Err(QuantumError::InvalidBranches { .. })
        ));
        assert_eq!(BranchSet::binary().len(), 2);
    }

    #[test]
    fn counit_projects_onto_each_outcome() {
        let branches = BranchSet::binary();
        let comonad = measure_comonad(&branches);
        let v = line_bundle(&branches, Field::Rational);
        let boxed = comonad.apply(&v).unwrap();
        assert_eq!(boxed.fiber(0).dim(), 2);
        assert_eq!(boxed.fiber(0), boxed.fiber(1));
        let eps = comonad.counit(&v).unwrap();
        assert_eq!(
            eps.component(0).matrix(),
            &vec![ints(&[1, 0], Field::Rational)]
        );
        assert_eq!(
            eps.component(1).matrix(),
            &vec![ints(&[0, 1], Field::Rational)]
        );
    }

    #[test]
    fn singleton_measurement_changes_nothing() {
        let branches = BranchSet::new(vec!["only".into()]).unwrap();
        let comonad = measure_comonad(&branches);
        let v = LocalSystem::constant(
            branches.base().clone(),
            VectorSpace::standard(Field::Rational, 2, "v"),
        );
        let boxed = comonad.apply(&v).unwrap();
        assert_eq!(boxed.fiber(0).dim(), 2);
        let eps = comonad.counit(&v).unwrap();
        assert!(eps.is_fiberwise_invertible());
        assert_eq!(eps.component(0).matrix(), LinearMap::identity(v.fiber(0)).matrix());
    }

    #[test]
    fn box_of_a_bundle_is_constant_on_the_total_space() {
        let branches = BranchSet::new(vec!["a".into(), "b".into(), "c".into()]).unwrap();
        let comonad = measure_comonad(&branches);
        let fibers = vec![
            VectorSpace::standard(Field::Rational, 1, "x"),
            VectorSpace::standard(Field::Rational, 2, "y"),
            VectorSpace::standard(Field::Rational, 3, "z"),
        ];
        let transports = (0..branches.base().morphism_count())
            .map(|m| LinearMap::identity(&fibers[branches.base().src(m)]))
            .collect();
        let v = LocalSystem::new(
            branches.base().clone(),
            Field::Rational,
            fibers,
            transports,
        )
        .unwrap();
        let boxed = comonad.apply(&v).unwrap();
        for b in 0..3 {
            assert_eq!(boxed.fiber(b).dim(), 6);
            assert_eq!(boxed.fiber(b), boxed.fiber(0));
        }
    }

    #[test]
    fn comonad_laws_hold_on_random_bundles() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xc0170);
        for _ in 0..10 {
            let size = rng.gen_range(1..=4);
            let labels = (0..size).map(|b| format!("b{b}")).collect();
            let branches = BranchSet::new(labels).unwrap();
            let field = if rng.gen_bool(0.5) {
                Field::Rational
            } else {
                Field::Gaussian
            };
            let fibers: Vec<VectorSpace> = (0..size)
                .map(|x| VectorSpace::standard(field, rng.gen_range(0..=3), &format!("v{x}_")))
                .collect();
            let transports = (0..branches.base().morphism_count())
                .map(|m| LinearMap::identity(&fibers[branches.base().src(m)]))
                .collect();
            let v = LocalSystem::new(branches.base().clone(), field, fibers, transports).unwrap();
            let comonad = measure_comonad(&branches);
            assert!(comonad.laws_hold(&v).unwrap());
        }
    }

    #[test]
    fn preparation_selects_the_summand() {
        let branches = BranchSet::binary();
        let v = LocalSystem::constant(
            branches.point().clone(),
            VectorSpace::standard(Field::Rational, 1, "q"),
        );
        let p0 = prepare(&branches, 0, &v).unwrap();
        let p1 = prepare(&branches, 1, &v).unwrap();
        assert_eq!(p0.component(0).matrix(), &vec![
            ints(&[1], Field::Rational),
            ints(&[0], Field::Rational)
        ]);
        assert_eq!(p1.component(0).matrix(), &vec![
            ints(&[0], Field::Rational),
            ints(&[1], Field::Rational)
        ]);

        let single = BranchSet::new(vec!["only".into()]).unwrap();
        let w = LocalSystem::constant(
            single.point().clone(),
            VectorSpace::standard(Field::Rational, 1, "q"),
        );
        let p = prepare(&single, 0, &w).unwrap();
        assert_eq!(p.component(0).matrix(), &vec![ints(&[1], Field::Rational)]);

        assert!(matches!(
            prepare(&branches, 2, &v),
            Err(QuantumError::InvalidBranches { .. })
        ));
        let over_b = line_bundle(&branches, Field::Rational);
        assert!(matches!(
            prepare(&branches, 0, &over_b),
            Err(QuantumError::InvalidState { .. })
        ));
    }

    #[test]
    fn preparation_is_natural_in_the_state_space() {
        let branches = BranchSet::binary();
        let field = Field::Rational;
        let v = LocalSystem::constant(
            branches.point().clone(),
            VectorSpace::standard(field, 2, "v"),
        );
        let w = LocalSystem::constant(
            branches.point().clone(),
            VectorSpace::standard(field, 1, "w"),
        );
        let coeffs = ints(&[2, -3], field);
        let phi = LocMorphism::new(
            GroupoidFunctor::identity(branches.point()),
            v.clone(),
            w.clone(),
            vec![LinearMap::from_fn(
                v.fiber(0).clone(),
                w.fiber(0).clone(),
                |_, c| coeffs[c].clone(),
            )],
        )
        .unwrap();

        for b in 0..branches.len() {
            let left = compose_loc(&prepare(&branches, b, &w).unwrap(), &phi).unwrap();
            let push_v = pushforward(branches.collapse(), &pullback(branches.collapse(), &v))
                .unwrap();
            let push_w = pushforward(branches.collapse(), &pullback(branches.collapse(), &w))
                .unwrap();
            let total_phi = pushforward_mor(
                &push_v,
                &push_w,
                &pullback_mor(branches.collapse(), &phi).unwrap(),
            )
            .unwrap();
            let right = compose_loc(&total_phi, &prepare(&branches, b, &v).unwrap()).unwrap();
            assert!(loc_morphisms_agree(&left, &right));
        }
    }

    #[test]
    fn measurement_after_preparation_reads_the_branch() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x9e_a5);
        for _ in 0..10 {
            let size = rng.gen_range(1..=4);
            let labels = (0..size).map(|b| format!("b{b}")).collect();
            let branches = BranchSet::new(labels).unwrap();
            let field = if rng.gen_bool(0.5) {
                Field::Rational
            } else {
                Field::Gaussian
            };
            let dim = rng.gen_range(1..=3);
            let v = LocalSystem::constant(
                branches.point().clone(),
                VectorSpace::standard(field, dim, "s"),
            );
            let b = rng.gen_range(0..size);
            let measured = measure_prepared(&branches, b, &v).unwrap();
            for (outcome, m) in measured.iter().enumerate() {
                if outcome == b {
                    assert_eq!(m, &LinearMap::identity(v.fiber(0)));
                } else {
                    assert!(m.is_zero());
                }
            }
        }
    }

    #[test]
    fn qubit_demo_reproduces_the_figure() {
        let demo = qubit_demo().unwrap();
        let field = Field::Gaussian;
        assert_eq!(demo.q0, FieldElement::gaussian(2, 3, 1, 2).unwrap());
        assert_eq!(demo.q1, FieldElement::gaussian(1, 6, -1, 3).unwrap());
        assert_eq!(
            demo.measurement_rows,
            vec![ints(&[1, 0], field), ints(&[0, 1], field)]
        );
        assert_eq!(
            demo.preparation_columns,
            vec![ints(&[1, 0], field), ints(&[0, 1], field)]
        );
        assert_eq!(demo.prepared_column, ints(&[1, 0], field));
        assert_eq!(demo.readout, vec![demo.q0.clone(), demo.q1.clone()]);
        assert_eq!(demo.collapse, ints(&[1, 0], field));
        assert!(demo.comonad_laws_hold);
        assert!(demo.readout_idempotent);
        assert!(demo.sum_product_comparison_invertible);
        let text = demo.to_string();
        assert!(text.contains("comonad laws: ok"));
        assert!(!text.contains("FAILED"));
    }

    #[test]
    fn comonad_rejects_foreign_bundles() {
        let branches = BranchSet::binary();
        let other = BranchSet::new(vec!["x".into(), "y".into(), "z".into()]).unwrap();
        let comonad = measure_comonad(&branches);
        let v = line_bundle(&other, Field::Rational);
        assert!(matches!(
            comonad.apply(&v),
            Err(QuantumError::InvalidState { .. })
        ));
    }
}
