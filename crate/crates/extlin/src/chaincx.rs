//! Finitely supported chain complexes of exact-scalar vector spaces:
//! Koszul-signed tensor products, mapping complexes, homology with chosen
//! cycle representatives, the injective/surjective/quasi-iso class
//! predicates with their sphere/disk generators, degreewise pushouts and
//! pushout-products, a complete linear-algebra lifting solver for
//! commuting squares, and truncated simplicial chain complexes with
//! totalization.
//!
//! A complex stores only the degrees where its component is nonzero;
//! every other degree is an implicit zero space, and accessors synthesize
//! the zero data on demand. Zero differentials and zero map components
//! are normalized away, so structural equality compares canonical forms.
//! `∂∘∂ = 0` is checked exactly at construction, as is the degreewise
//! commuting condition for chain maps — any value of these types is
//! structurally sound by construction.

use std::collections::BTreeMap;

use crate::finvect::{
    cokernel, direct_sum_many, hom_transport, internal_hom, is_invertible, kernel, rank,
    solve_linear_system, tensor_map, tensor_space, Cokernel, DirectSum, FinVectError, Kernel,
    LinearMap, VectorSpace,
};
use crate::scalars::{Field, FieldElement};

/// Errors raised by the chain-complex layer.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChainError {
    #[error("invalid chain complex: {detail}")]
    InvalidComplex { detail: String },
    #[error("invalid chain map: {detail}")]
    InvalidMap { detail: String },
    #[error("invalid simplicial structure: {detail}")]
    InvalidSimplicial { detail: String },
    #[error(transparent)]
    FinVect(#[from] FinVectError),
}

pub type Result<T> = std::result::Result<T, ChainError>;

// ---------------------------------------------------------------------------
// Chain complexes
// ---------------------------------------------------------------------------

/// A chain complex with finitely many nonzero components, graded over ℤ,
/// with ∂_n: C_n → C_{n−1} and ∂∘∂ = 0 checked exactly.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChainComplex {
    field: Field,
    components: BTreeMap<i64, VectorSpace>,
    differentials: BTreeMap<i64, LinearMap>,
}

impl ChainComplex {
    /// Builds and validates a complex. Zero-dimensional components and
    /// zero differentials are normalized away; stored differentials must
    /// match the components degreewise and square to zero.
    pub fn new(
        field: Field,
        components: Vec<(i64, VectorSpace)>,
        differentials: Vec<(i64, LinearMap)>,
    ) -> Result<Self> {
        let mut comp = BTreeMap::new();
        for (n, space) in components {
            if space.field() != field {
                return Err(ChainError::InvalidComplex {
                    detail: format!("component in degree {n} lives in {}", space.field()),
                });
            }
            if space.dim() == 0 {
                continue;
            }
            if comp.insert(n, space).is_some() {
                return Err(ChainError::InvalidComplex {
                    detail: format!("degree {n} given twice"),
                });
            }
        }
        let zero = VectorSpace::zero(field);
        let mut diff = BTreeMap::new();
        for (n, d) in differentials {
            let dom = comp.get(&n).unwrap_or(&zero);
            let cod = comp.get(&(n - 1)).unwrap_or(&zero);
            if d.domain() != dom || d.codomain() != cod {
                return Err(ChainError::InvalidComplex {
                    detail: format!("differential in degree {n} does not match the components"),
                });
            }
            if d.is_zero() {
                continue; // canonical form stores only nonzero differentials
            }
            if diff.insert(n, d).is_some() {
                return Err(ChainError::InvalidComplex {
                    detail: format!("differential in degree {n} given twice"),
                });
            }
        }
        let out = ChainComplex {
            field,
            components: comp,
            differentials: diff,
        };
        for &n in out.components.keys() {
            let square = LinearMap::compose(&out.differential(n - 1), &out.differential(n))?;
            if !square.is_zero() {
                return Err(ChainError::InvalidComplex {
                    detail: format!("differential does not square to zero out of degree {n}"),
                });
            }
        }
        Ok(out)
    }

    /// The zero complex.
    pub fn zero(field: Field) -> Self {
        ChainComplex {
            field,
            components: BTreeMap::new(),
            differentials: BTreeMap::new(),
        }
    }

    /// The tensor unit: one copy of the ground line in degree 0.
    pub fn unit_cc(field: Field) -> Self {
        let line = VectorSpace::new(field, vec!["1".into()]).expect("single label");
        ChainComplex::new(field, vec![(0, line)], vec![]).expect("unit complex is valid")
    }

    /// The line concentrated in a single degree n (zero differential).
    pub fn sphere(field: Field, n: i64) -> Self {
        let line = VectorSpace::new(field, vec![format!("s{n}")]).expect("single label");
        ChainComplex::new(field, vec![(n, line)], vec![]).expect("sphere complex is valid")
    }

    /// The acyclic two-term complex: the line in degrees n and n−1 with
    /// the identity differential.
    pub fn disk(field: Field, n: i64) -> Self {
        let top = VectorSpace::new(field, vec![format!("d{n}")]).expect("single label");
        let bottom = VectorSpace::new(field, vec![format!("d{n}'")]).expect("single label");
        let d = LinearMap::from_fn(top.clone(), bottom.clone(), |_, _| FieldElement::one(field));
        ChainComplex::new(field, vec![(n, top), (n - 1, bottom)], vec![(n, d)])
            .expect("disk complex is valid")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Degrees with a nonzero component, ascending.
    pub fn support(&self) -> Vec<i64> {
        self.components.keys().copied().collect()
    }

    /// The component in degree n (the zero space off support).
    pub fn component(&self, n: i64) -> VectorSpace {
        self.components
            .get(&n)
            .cloned()
            .unwrap_or_else(|| VectorSpace::zero(self.field))
    }

    pub fn dim(&self, n: i64) -> usize {
        self.components.get(&n).map_or(0, VectorSpace::dim)
    }

    pub fn total_dim(&self) -> usize {
        self.components.values().map(VectorSpace::dim).sum()
    }

    /// ∂_n: C_n → C_{n−1} (the zero map where not stored).
    pub fn differential(&self, n: i64) -> LinearMap {
        self.differentials.get(&n).cloned().unwrap_or_else(|| {
            LinearMap::zero_map(&self.component(n), &self.component(n - 1))
                .expect("zero map between matching components")
        })
    }

    pub fn is_zero_complex(&self) -> bool {
        self.components.is_empty()
    }
}

// ---------------------------------------------------------------------------
// Chain maps
// ---------------------------------------------------------------------------

/// A degreewise linear map commuting with the differentials (checked).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChainMap {
    domain: ChainComplex,
    codomain: ChainComplex,
    maps: BTreeMap<i64, LinearMap>,
}

impl ChainMap {
    pub fn new(
        domain: ChainComplex,
        codomain: ChainComplex,
        maps: Vec<(i64, LinearMap)>,
    ) -> Result<Self> {
        let mut stored = BTreeMap::new();
        for (n, f) in maps {
            if f.domain() != &domain.component(n) || f.codomain() != &codomain.component(n) {
                return Err(ChainError::InvalidMap {
                    detail: format!("degree-{n} map does not match the components"),
                });
            }
            if f.is_zero() {
                continue; // canonical form stores only nonzero components
            }
            if stored.insert(n, f).is_some() {
                return Err(ChainError::InvalidMap {
                    detail: format!("degree {n} given twice"),
                });
            }
        }
        let out = ChainMap {
            domain,
            codomain,
            maps: stored,
        };
        let mut degrees: Vec<i64> = out.domain.support();
        degrees.extend(out.codomain.support());
        for n in degrees {
            let left = LinearMap::compose(&out.codomain.differential(n), &out.map_at(n))?;
            let right = LinearMap::compose(&out.map_at(n - 1), &out.domain.differential(n))?;
            if left != right {
                return Err(ChainError::InvalidMap {
                    detail: format!("does not commute with the differentials at degree {n}"),
                });
            }
        }
        Ok(out)
    }

    pub fn identity(complex: &ChainComplex) -> Self {
        let maps = complex
            .support()
            .into_iter()
            .map(|n| (n, LinearMap::identity(&complex.component(n))))
            .collect();
        ChainMap::new(complex.clone(), complex.clone(), maps).expect("identity is a chain map")
    }

    pub fn zero_chain_map(domain: &ChainComplex, codomain: &ChainComplex) -> Self {
        ChainMap {
            domain: domain.clone(),
            codomain: codomain.clone(),
            maps: BTreeMap::new(),
        }
    }

    pub fn domain(&self) -> &ChainComplex {
        &self.domain
    }

    pub fn codomain(&self) -> &ChainComplex {
        &self.codomain
    }

    /// The degree-n component (the zero map where not stored).
    pub fn map_at(&self, n: i64) -> LinearMap {
        self.maps.get(&n).cloned().unwrap_or_else(|| {
            LinearMap::zero_map(&self.domain.component(n), &self.codomain.component(n))
                .expect("zero map between matching components")
        })
    }

    pub fn compose(g: &ChainMap, f: &ChainMap) -> Result<ChainMap> {
        if f.codomain != g.domain {
            return Err(ChainError::InvalidMap {
                detail: "chain maps are not composable".into(),
            });
        }
        let mut degrees: Vec<i64> = f.domain.support();
        degrees.extend(g.codomain.support());
        degrees.sort();
        degrees.dedup();
        let maps = degrees
            .into_iter()
            .map(|n| Ok((n, LinearMap::compose(&g.map_at(n), &f.map_at(n))?)))
            .collect::<Result<Vec<_>>>()?;
        ChainMap::new(f.domain.clone(), g.codomain.clone(), maps)
    }

    /// Degreewise sum of parallel chain maps.
    pub fn add(f: &ChainMap, g: &ChainMap) -> Result<ChainMap> {
        if f.domain != g.domain || f.codomain != g.codomain {
            return Err(ChainError::InvalidMap {
                detail: "chain maps are not parallel".into(),
            });
        }
        let mut degrees: Vec<i64> = f.maps.keys().chain(g.maps.keys()).copied().collect();
        degrees.sort();
        degrees.dedup();
        let maps = degrees
            .into_iter()
            .map(|n| Ok((n, LinearMap::add(&f.map_at(n), &g.map_at(n))?)))
            .collect::<Result<Vec<_>>>()?;
        ChainMap::new(f.domain.clone(), f.codomain.clone(), maps)
    }

    /// Degreewise difference of parallel chain maps.
    pub fn sub(f: &ChainMap, g: &ChainMap) -> Result<ChainMap> {
        if f.domain != g.domain || f.codomain != g.codomain {
            return Err(ChainError::InvalidMap {
                detail: "chain maps are not parallel".into(),
            });
        }
        let mut degrees: Vec<i64> = f.maps.keys().chain(g.maps.keys()).copied().collect();
        degrees.sort();
        degrees.dedup();
        let maps = degrees
            .into_iter()
            .map(|n| Ok((n, LinearMap::sub(&f.map_at(n), &g.map_at(n))?)))
            .collect::<Result<Vec<_>>>()?;
        ChainMap::new(f.domain.clone(), f.codomain.clone(), maps)
    }

    pub fn is_zero(&self) -> bool {
        self.maps.is_empty()
    }
}

// ---------------------------------------------------------------------------
// Degreewise direct sums
// ---------------------------------------------------------------------------

/// A direct sum of complexes with its chain-level inclusions and
/// projections.
pub struct ChainSum {
    pub complex: ChainComplex,
    pub inclusions: Vec<ChainMap>,
    pub projections: Vec<ChainMap>,
}

/// ⊕ of finitely many complexes, degreewise, with block-diagonal
/// differential.
pub fn direct_sum_cc(field: Field, parts: &[ChainComplex]) -> Result<ChainSum> {
    for p in parts {
        if p.field() != field {
            return Err(ChainError::InvalidComplex {
                detail: "direct sum requires a common ground field".into(),
            });
        }
    }
    let mut degrees: Vec<i64> = parts.iter().flat_map(ChainComplex::support).collect();
    degrees.sort();
    degrees.dedup();
    let mut sums: BTreeMap<i64, DirectSum> = BTreeMap::new();
    for &n in &degrees {
        let summands: Vec<VectorSpace> = parts.iter().map(|p| p.component(n)).collect();
        sums.insert(n, direct_sum_many(&summands)?);
    }
    let components = degrees
        .iter()
        .map(|&n| (n, sums[&n].space.clone()))
        .collect();
    let mut differentials = Vec::new();
    for &n in &degrees {
        let Some(prev) = sums.get(&(n - 1)) else {
            continue;
        };
        let mut d = LinearMap::zero_map(&sums[&n].space, &prev.space)?;
        for (k, p) in parts.iter().enumerate() {
            d = LinearMap::add(
                &d,
                &LinearMap::compose(
                    &LinearMap::compose(&prev.injections[k], &p.differential(n))?,
                    &sums[&n].projections[k],
                )?,
            )?;
        }
        differentials.push((n, d));
    }
    let complex = ChainComplex::new(field, components, differentials)?;
    let mut inclusions = Vec::with_capacity(parts.len());
    let mut projections = Vec::with_capacity(parts.len());
    for (k, p) in parts.iter().enumerate() {
        inclusions.push(ChainMap::new(
            p.clone(),
            complex.clone(),
            degrees
                .iter()
                .map(|&n| (n, sums[&n].injections[k].clone()))
                .collect(),
        )?);
        projections.push(ChainMap::new(
            complex.clone(),
            p.clone(),
            degrees
                .iter()
                .map(|&n| (n, sums[&n].projections[k].clone()))
                .collect(),
        )?);
    }
    Ok(ChainSum {
        complex,
        inclusions,
        projections,
    })
}

// ---------------------------------------------------------------------------
// Tensor product
// ---------------------------------------------------------------------------

/// A tensor product of complexes together with its per-degree summand
/// decomposition (keys (p, q), p + q = degree, ascending in p).
#[derive(Clone, Debug)]
pub struct TensorComplex {
    pub complex: ChainComplex,
    pub keys: BTreeMap<i64, Vec<(i64, i64)>>,
    pub sums: BTreeMap<i64, DirectSum>,
}

impl TensorComplex {
    pub fn key_position(&self, n: i64, p: i64, q: i64) -> Option<usize> {
        self.keys.get(&n)?.iter().position(|&k| k == (p, q))
    }
}

/// V ⊗ W with degree-n component ⊕_{p+q=n} V_p ⊗ W_q and differential
/// ∂⊗id + (−1)^p id⊗∂ on the (p, q) summand.
pub fn tensor_cc(v: &ChainComplex, w: &ChainComplex) -> Result<TensorComplex> {
    if v.field() != w.field() {
        return Err(ChainError::InvalidComplex {
            detail: "tensor factors must share the ground field".into(),
        });
    }
    let field = v.field();
    let mut keys: BTreeMap<i64, Vec<(i64, i64)>> = BTreeMap::new();
    for &p in v.components.keys() {
        for &q in w.components.keys() {
            keys.entry(p + q).or_default().push((p, q));
        }
    }
    for list in keys.values_mut() {
        list.sort();
    }
    let mut sums = BTreeMap::new();
    let mut components = Vec::new();
    for (&n, list) in &keys {
        let summands: Vec<VectorSpace> = list
            .iter()
            .map(|&(p, q)| tensor_space(&v.component(p), &w.component(q)))
            .collect::<std::result::Result<_, _>>()?;
        let sum = direct_sum_many(&summands)?;
        components.push((n, sum.space.clone()));
        sums.insert(n, sum);
    }
    let minus_one = FieldElement::integer(-1, field);
    let mut differentials = Vec::new();
    for (&n, list) in &keys {
        let Some(target_sum) = sums.get(&(n - 1)) else {
            continue;
        };
        let source_sum = &sums[&n];
        let target_keys = &keys[&(n - 1)];
        let mut d = LinearMap::zero_map(&source_sum.space, &target_sum.space)?;
        for (pos, &(p, q)) in list.iter().enumerate() {
            // ∂_V ⊗ id into summand (p−1, q)
            if let Some(tpos) = target_keys.iter().position(|&k| k == (p - 1, q)) {
                let block = tensor_map(&v.differential(p), &LinearMap::identity(&w.component(q)))?;
                d = LinearMap::add(
                    &d,
                    &LinearMap::compose(
                        &LinearMap::compose(&target_sum.injections[tpos], &block)?,
                        &source_sum.projections[pos],
                    )?,
                )?;
            }
            // (−1)^p id ⊗ ∂_W into summand (p, q−1)
            if let Some(tpos) = target_keys.iter().position(|&k| k == (p, q - 1)) {
                let block = tensor_map(&LinearMap::identity(&v.component(p)), &w.differential(q))?;
                let signed = if p.rem_euclid(2) == 1 {
                    block.scale_by(&minus_one)?
                } else {
                    block
                };
                d = LinearMap::add(
                    &d,
                    &LinearMap::compose(
                        &LinearMap::compose(&target_sum.injections[tpos], &signed)?,
                        &source_sum.projections[pos],
                    )?,
                )?;
            }
        }
        differentials.push((n, d));
    }
    let complex = ChainComplex::new(field, components, differentials)?;
    Ok(TensorComplex {
        complex,
        keys,
        sums,
    })
}

/// f ⊗ g: blockwise f_p ⊗ g_q between the matching summands.
pub fn tensor_ccmap(f: &ChainMap, g: &ChainMap) -> Result<ChainMap> {
    let source = tensor_cc(f.domain(), g.domain())?;
    let target = tensor_cc(f.codomain(), g.codomain())?;
    let mut maps = Vec::new();
    for (&n, list) in &source.keys {
        let source_sum = &source.sums[&n];
        let mut out = LinearMap::zero_map(&source_sum.space, &target.complex.component(n))?;
        let (Some(target_sum), Some(target_keys)) = (target.sums.get(&n), target.keys.get(&n))
        else {
            maps.push((n, out));
            continue;
        };
        for (pos, &(p, q)) in list.iter().enumerate() {
            let Some(tpos) = target_keys.iter().position(|&k| k == (p, q)) else {
                continue; // the target summand is zero
            };
            let block = tensor_map(&f.map_at(p), &g.map_at(q))?;
            out = LinearMap::add(
                &out,
                &LinearMap::compose(
                    &LinearMap::compose(&target_sum.injections[tpos], &block)?,
                    &source_sum.projections[pos],
                )?,
            )?;
        }
        maps.push((n, out));
    }
    ChainMap::new(source.complex, target.complex, maps)
}

// ---------------------------------------------------------------------------
// Mapping complex
// ---------------------------------------------------------------------------

/// The mapping complex [V, W] together with its per-degree factor
/// decomposition (factor k of degree m is [V_k, W_{k+m}], ascending in k).
#[derive(Clone, Debug)]
pub struct HomComplex {
    pub complex: ChainComplex,
    pub keys: BTreeMap<i64, Vec<i64>>,
    pub sums: BTreeMap<i64, DirectSum>,
}

/// [V, W] with degree-m component ⊕_k [V_k, W_{k+m}] and differential
/// (∂F)_k = ∂_W ∘ F_k − (−1)^m F_{k−1} ∘ ∂_V, so the degree-0 cycles are
/// exactly the chain maps V → W.
pub fn hom_cc(v: &ChainComplex, w: &ChainComplex) -> Result<HomComplex> {
    if v.field() != w.field() {
        return Err(ChainError::InvalidComplex {
            detail: "mapping complex requires a common ground field".into(),
        });
    }
    let field = v.field();
    let mut keys: BTreeMap<i64, Vec<i64>> = BTreeMap::new();
    for &k in v.components.keys() {
        for &l in w.components.keys() {
            keys.entry(l - k).or_default().push(k);
        }
    }
    for list in keys.values_mut() {
        list.sort();
    }
    let mut sums = BTreeMap::new();
    let mut components = Vec::new();
    for (&m, list) in &keys {
        let factors: Vec<VectorSpace> = list
            .iter()
            .map(|&k| internal_hom(&v.component(k), &w.component(k + m)))
            .collect::<std::result::Result<_, _>>()?;
        let sum = direct_sum_many(&factors)?;
        components.push((m, sum.space.clone()));
        sums.insert(m, sum);
    }
    let minus_one = FieldElement::integer(-1, field);
    let mut differentials = Vec::new();
    for (&m, list) in &keys {
        let Some(target_sum) = sums.get(&(m - 1)) else {
            continue;
        };
        let source_sum = &sums[&m];
        let target_keys = &keys[&(m - 1)];
        let mut d = LinearMap::zero_map(&source_sum.space, &target_sum.space)?;
        for (pos, &k) in list.iter().enumerate() {
            // post-composition with ∂_W lands in factor k of degree m−1
            if let Some(tpos) = target_keys.iter().position(|&t| t == k) {
                let block = hom_transport(
                    &LinearMap::identity(&v.component(k)),
                    &w.differential(k + m),
                )?;
                d = LinearMap::add(
                    &d,
                    &LinearMap::compose(
                        &LinearMap::compose(&target_sum.injections[tpos], &block)?,
                        &source_sum.projections[pos],
                    )?,
                )?;
            }
            // −(−1)^m pre-composition with ∂_V lands in factor k+1
            if let Some(tpos) = target_keys.iter().position(|&t| t == k + 1) {
                let block = hom_transport(
                    &v.differential(k + 1),
                    &LinearMap::identity(&w.component(k + m)),
                )?;
                let signed = if m.rem_euclid(2) == 0 {
                    block.scale_by(&minus_one)?
                } else {
                    block
                };
                d = LinearMap::add(
                    &d,
                    &LinearMap::compose(
                        &LinearMap::compose(&target_sum.injections[tpos], &signed)?,
                        &source_sum.projections[pos],
                    )?,
                )?;
            }
        }
        differentials.push((m, d));
    }
    let complex = ChainComplex::new(field, components, differentials)?;
    Ok(HomComplex {
        complex,
        keys,
        sums,
    })
}

// ---------------------------------------------------------------------------
// Homology
// ---------------------------------------------------------------------------

/// Homology in one degree: cycles as a kernel, classes as a cokernel of
/// the boundary map factored through the cycles.
#[derive(Clone, Debug)]
pub struct HomologyGroup {
    pub cycles: Kernel,
    pub classes: Cokernel,
}

impl HomologyGroup {
    pub fn dim(&self) -> usize {
        self.classes.space.dim()
    }

    /// Chosen cycle representatives, one column per class, in ambient
    /// component coordinates.
    pub fn representatives(&self) -> Result<LinearMap> {
        Ok(LinearMap::compose(
            &self.cycles.inclusion,
            &self.classes.section,
        )?)
    }
}

/// All homology groups of a complex (zero off the complex's support).
#[derive(Clone, Debug)]
pub struct Homology {
    pub groups: BTreeMap<i64, HomologyGroup>,
}

impl Homology {
    pub fn dim(&self, n: i64) -> usize {
        self.groups.get(&n).map_or(0, HomologyGroup::dim)
    }

    /// The nonzero homology dimensions by degree.
    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.groups
            .iter()
            .filter(|(_, g)| g.dim() > 0)
            .map(|(&n, g)| (n, g.dim()))
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.groups.values().all(|g| g.dim() == 0)
    }
}

/// H_n = ker ∂_n / im ∂_{n+1}, from exact kernels and cokernels.
pub fn homology(v: &ChainComplex) -> Result<Homology> {
    let mut groups = BTreeMap::new();
    for &n in v.components.keys() {
        let cycles = kernel(&v.differential(n));
        // ∂_{n+1} factors through the cycles: the image lies in the
        // kernel, where inclusion ∘ retraction is the identity
        let factored = LinearMap::compose(&cycles.retraction, &v.differential(n + 1))?;
        let classes = cokernel(&factored);
        groups.insert(n, HomologyGroup { cycles, classes });
    }
    Ok(Homology { groups })
}

/// The induced map H_n(f) between the chosen presentations (None when a
/// side has no stored group in that degree, i.e. is zero).
pub fn induced_on_homology(
    f: &ChainMap,
    hv: &Homology,
    hw: &Homology,
    n: i64,
) -> Result<Option<LinearMap>> {
    match (hv.groups.get(&n), hw.groups.get(&n)) {
        (Some(a), Some(b)) => {
            let through = LinearMap::compose(
                &b.cycles.retraction,
                &LinearMap::compose(&f.map_at(n), &a.cycles.inclusion)?,
            )?;
            Ok(Some(LinearMap::compose(
                &b.classes.projection,
                &LinearMap::compose(&through, &a.classes.section)?,
            )?))
        }
        _ => Ok(None),
    }
}

/// True when the induced homology maps are invertible in every degree.
pub fn is_quasi_iso(f: &ChainMap) -> Result<bool> {
    let hv = homology(f.domain())?;
    let hw = homology(f.codomain())?;
    let mut degrees: Vec<i64> = f.domain().support();
    degrees.extend(f.codomain().support());
    degrees.sort();
    degrees.dedup();
    for n in degrees {
        let (dv, dw) = (hv.dim(n), hw.dim(n));
        if dv != dw {
            return Ok(false);
        }
        if dv == 0 {
            continue;
        }
        match induced_on_homology(f, &hv, &hw, n)? {
            Some(map) if is_invertible(&map) => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Class predicates and generators
// ---------------------------------------------------------------------------

/// Degreewise injectivity.
pub fn is_cofibration_cc(f: &ChainMap) -> bool {
    f.domain()
        .support()
        .into_iter()
        .all(|n| rank(&f.map_at(n)) == f.domain().dim(n))
}

/// Degreewise surjectivity.
pub fn is_fibration_cc(f: &ChainMap) -> bool {
    f.codomain()
        .support()
        .into_iter()
        .all(|n| rank(&f.map_at(n)) == f.codomain().dim(n))
}

pub fn is_acyclic_cofibration_cc(f: &ChainMap) -> Result<bool> {
    Ok(is_cofibration_cc(f) && is_quasi_iso(f)?)
}

pub fn is_acyclic_fibration_cc(f: &ChainMap) -> Result<bool> {
    Ok(is_fibration_cc(f) && is_quasi_iso(f)?)
}

/// Degreewise invertibility.
pub fn is_iso_cc(f: &ChainMap) -> bool {
    let mut degrees = f.domain().support();
    degrees.extend(f.codomain().support());
    degrees.sort();
    degrees.dedup();
    degrees
        .into_iter()
        .all(|n| f.domain().dim(n) == f.codomain().dim(n) && is_invertible(&f.map_at(n)))
}

/// The generating data in slot n: the sphere in degree n−1, the disk in
/// degrees n and n−1, the boundary inclusion i into the bottom of the
/// disk, and the inclusion j of the zero complex.
pub struct Generators {
    pub sphere: ChainComplex,
    pub disk: ChainComplex,
    pub i: ChainMap,
    pub j: ChainMap,
}

pub fn generators(field: Field, n: i64) -> Generators {
    let sphere = ChainComplex::sphere(field, n - 1);
    let disk = ChainComplex::disk(field, n);
    let include = LinearMap::from_fn(sphere.component(n - 1), disk.component(n - 1), |_, _| {
        FieldElement::one(field)
    });
    let i = ChainMap::new(sphere.clone(), disk.clone(), vec![(n - 1, include)])
        .expect("boundary inclusion is a chain map");
    let j = ChainMap::zero_chain_map(&ChainComplex::zero(field), &disk);
    Generators { sphere, disk, i, j }
}

// ---------------------------------------------------------------------------
// Pushouts and pushout-products
// ---------------------------------------------------------------------------

/// A degreewise pushout of f: A → B along g: A → C, with its
/// coprojections and the per-degree cokernel presentation needed for
/// universal maps.
pub struct PushoutCC {
    pub complex: ChainComplex,
    pub from_left: ChainMap,
    pub from_right: ChainMap,
    f: ChainMap,
    g: ChainMap,
    tables: BTreeMap<i64, (DirectSum, Cokernel)>,
}

pub fn pushout_cc(f: &ChainMap, g: &ChainMap) -> Result<PushoutCC> {
    if f.domain() != g.domain() {
        return Err(ChainError::InvalidMap {
            detail: "pushout legs must share their domain".into(),
        });
    }
    let field = f.domain().field();
    let mut degrees: Vec<i64> = f.codomain().support();
    degrees.extend(g.codomain().support());
    degrees.extend(f.domain().support());
    degrees.sort();
    degrees.dedup();

    let mut tables = BTreeMap::new();
    let mut components = Vec::new();
    for &n in &degrees {
        let sum = direct_sum_many(&[f.codomain().component(n), g.codomain().component(n)])?;
        let rel = LinearMap::sub(
            &LinearMap::compose(&sum.injections[0], &f.map_at(n))?,
            &LinearMap::compose(&sum.injections[1], &g.map_at(n))?,
        )?;
        let cok = cokernel(&rel);
        components.push((n, cok.space.clone()));
        tables.insert(n, (sum, cok));
    }
    let mut differentials = Vec::new();
    for &n in &degrees {
        if !tables.contains_key(&(n - 1)) {
            continue;
        }
        let (sum_n, cok_n) = &tables[&n];
        let (sum_prev, cok_prev) = &tables[&(n - 1)];
        let block = LinearMap::add(
            &LinearMap::compose(
                &LinearMap::compose(&sum_prev.injections[0], &f.codomain().differential(n))?,
                &sum_n.projections[0],
            )?,
            &LinearMap::compose(
                &LinearMap::compose(&sum_prev.injections[1], &g.codomain().differential(n))?,
                &sum_n.projections[1],
            )?,
        )?;
        differentials.push((
            n,
            LinearMap::compose(
                &cok_prev.projection,
                &LinearMap::compose(&block, &cok_n.section)?,
            )?,
        ));
    }
    let complex = ChainComplex::new(field, components, differentials)?;
    let coprojection = |idx: usize, source: &ChainComplex| -> Result<ChainMap> {
        ChainMap::new(
            source.clone(),
            complex.clone(),
            degrees
                .iter()
                .map(|&n| {
                    let (sum, cok) = &tables[&n];
                    Ok((n, LinearMap::compose(&cok.projection, &sum.injections[idx])?))
                })
                .collect::<Result<Vec<_>>>()?,
        )
    };
    let from_left = coprojection(0, f.codomain())?;
    let from_right = coprojection(1, g.codomain())?;
    Ok(PushoutCC {
        complex,
        from_left,
        from_right,
        f: f.clone(),
        g: g.clone(),
        tables,
    })
}

/// The universal map out of a pushout for a cocone (u_left, u_right);
/// non-cocones are rejected.
pub fn pushout_universal(
    po: &PushoutCC,
    u_left: &ChainMap,
    u_right: &ChainMap,
) -> Result<ChainMap> {
    if u_left.domain() != po.f.codomain()
        || u_right.domain() != po.g.codomain()
        || u_left.codomain() != u_right.codomain()
    {
        return Err(ChainError::InvalidMap {
            detail: "cocone legs do not match the pushout".into(),
        });
    }
    if ChainMap::compose(u_left, &po.f)? != ChainMap::compose(u_right, &po.g)? {
        return Err(ChainError::InvalidMap {
            detail: "cocone legs do not agree on the shared domain".into(),
        });
    }
    let maps = po
        .tables
        .iter()
        .map(|(&n, (sum, cok))| {
            let combined = LinearMap::add(
                &LinearMap::compose(&u_left.map_at(n), &sum.projections[0])?,
                &LinearMap::compose(&u_right.map_at(n), &sum.projections[1])?,
            )?;
            Ok((n, LinearMap::compose(&combined, &cok.section)?))
        })
        .collect::<Result<Vec<_>>>()?;
    ChainMap::new(po.complex.clone(), u_left.codomain().clone(), maps)
}

/// f ⊗̂ g: the universal map from the pushout of f⊗id and id⊗g into the
/// tensor of the two targets.
pub fn pushout_product_cc(f: &ChainMap, g: &ChainMap) -> Result<ChainMap> {
    let f_tensor_id = tensor_ccmap(f, &ChainMap::identity(g.domain()))?;
    let id_tensor_g = tensor_ccmap(&ChainMap::identity(f.domain()), g)?;
    let po = pushout_cc(&f_tensor_id, &id_tensor_g)?;
    let u_left = tensor_ccmap(&ChainMap::identity(f.codomain()), g)?;
    let u_right = tensor_ccmap(f, &ChainMap::identity(g.codomain()))?;
    pushout_universal(&po, &u_left, &u_right)
}

// ---------------------------------------------------------------------------
// Lifting solver
// ---------------------------------------------------------------------------

/// Finds a diagonal h: B → X for the commuting square
///
/// ```text
///        top
///     A ────→ X
///   i │  h ↗  │ p
///     ↓ ╱     ↓
///     B ────→ Y
///       bottom
/// ```
///
/// with h∘i = top and p∘h = bottom, by solving the full linear system in
/// the entries of h (including the chain-map equations). Returns None
/// when no lift exists; rejects squares that do not commute.
pub fn solve_lifting(
    i: &ChainMap,
    p: &ChainMap,
    top: &ChainMap,
    bottom: &ChainMap,
) -> Result<Option<ChainMap>> {
    if top.domain() != i.domain()
        || top.codomain() != p.domain()
        || bottom.domain() != i.codomain()
        || bottom.codomain() != p.codomain()
    {
        return Err(ChainError::InvalidMap {
            detail: "square boundaries do not match".into(),
        });
    }
    if ChainMap::compose(p, top)? != ChainMap::compose(bottom, i)? {
        return Err(ChainError::InvalidMap {
            detail: "square does not commute".into(),
        });
    }
    let field = i.domain().field();
    let b = i.codomain();
    let x = p.domain();

    let mut degrees: Vec<i64> = b.support();
    degrees.extend(x.support());
    degrees.extend(i.domain().support());
    degrees.extend(p.codomain().support());
    degrees.sort();
    degrees.dedup();

    // unknowns: entries of h_n wherever both B_n and X_n are nonzero
    let mut offsets: BTreeMap<i64, usize> = BTreeMap::new();
    let mut total = 0usize;
    for &n in &degrees {
        if b.dim(n) > 0 && x.dim(n) > 0 {
            offsets.insert(n, total);
            total += b.dim(n) * x.dim(n);
        }
    }
    let unknown = |n: i64, r: usize, c: usize| -> Option<usize> {
        offsets.get(&n).map(|&off| off + r * b.dim(n) + c)
    };

    let mut rows: Vec<(Vec<FieldElement>, FieldElement)> = Vec::new();
    let zero = FieldElement::zero(field);
    let mut push_row = |coeffs: Vec<(usize, FieldElement)>, rhs: FieldElement| {
        let mut row = vec![zero.clone(); total];
        for (idx, c) in coeffs {
            row[idx] = row[idx].add(&c).expect("uniform field");
        }
        rows.push((row, rhs));
    };

    for &n in &degrees {
        // h_n ∘ i_n = top_n
        let i_n = i.map_at(n);
        let top_n = top.map_at(n);
        for r in 0..x.dim(n) {
            for c in 0..i.domain().dim(n) {
                let mut coeffs = Vec::new();
                for k in 0..b.dim(n) {
                    if let Some(idx) = unknown(n, r, k) {
                        coeffs.push((idx, i_n.entry(k, c).clone()));
                    }
                }
                push_row(coeffs, top_n.entry(r, c).clone());
            }
        }
        // p_n ∘ h_n = bottom_n
        let p_n = p.map_at(n);
        let bottom_n = bottom.map_at(n);
        for r in 0..p.codomain().dim(n) {
            for c in 0..b.dim(n) {
                let mut coeffs = Vec::new();
                for k in 0..x.dim(n) {
                    if let Some(idx) = unknown(n, k, c) {
                        coeffs.push((idx, p_n.entry(r, k).clone()));
                    }
                }
                push_row(coeffs, bottom_n.entry(r, c).clone());
            }
        }
        // ∂_X ∘ h_n = h_{n−1} ∘ ∂_B
        let dx = x.differential(n);
        let db = b.differential(n);
        for r in 0..x.dim(n - 1) {
            for c in 0..b.dim(n) {
                let mut coeffs = Vec::new();
                for k in 0..x.dim(n) {
                    if let Some(idx) = unknown(n, k, c) {
                        coeffs.push((idx, dx.entry(r, k).clone()));
                    }
                }
                for k in 0..b.dim(n - 1) {
                    if let Some(idx) = unknown(n - 1, r, k) {
                        coeffs.push((idx, db.entry(k, c).neg()));
                    }
                }
                push_row(coeffs, zero.clone());
            }
        }
    }

    let Some(solution) = solve_linear_system(&rows, field, total) else {
        return Ok(None);
    };
    let maps = offsets
        .iter()
        .map(|(&n, &off)| {
            let h_n = LinearMap::from_fn(b.component(n), x.component(n), |r, c| {
                solution[off + r * b.dim(n) + c].clone()
            });
            (n, h_n)
        })
        .collect();
    Ok(Some(ChainMap::new(b.clone(), x.clone(), maps)?))
}

// ---------------------------------------------------------------------------
// Truncated simplicial chain complexes and totalization
// ---------------------------------------------------------------------------

/// A simplicial chain complex truncated at level N: levels 0..=N with
/// face maps d_i: level s → level s−1 (0 ≤ i ≤ s) and degeneracies
/// s_i: level s → level s+1 (0 ≤ i ≤ s), all chain maps, satisfying
/// every simplicial identity expressible within the truncation.
pub struct TruncatedSimplicialComplex {
    levels: Vec<ChainComplex>,
    /// faces[s][i] = d_i out of level s+1 (length N).
    faces: Vec<Vec<ChainMap>>,
    /// degeneracies[s][i] = s_i out of level s (length N).
    degeneracies: Vec<Vec<ChainMap>>,
}

impl TruncatedSimplicialComplex {
    pub fn new(
        levels: Vec<ChainComplex>,
        faces: Vec<Vec<ChainMap>>,
        degeneracies: Vec<Vec<ChainMap>>,
    ) -> Result<Self> {
        if levels.is_empty() {
            return Err(ChainError::InvalidSimplicial {
                detail: "at least level 0 is required".into(),
            });
        }
        let n = levels.len() - 1;
        if faces.len() != n || degeneracies.len() != n {
            return Err(ChainError::InvalidSimplicial {
                detail: "need face maps out of levels 1..=N and degeneracies out of 0..N".into(),
            });
        }
        for s in 0..n {
            if faces[s].len() != s + 2 {
                return Err(ChainError::InvalidSimplicial {
                    detail: format!("level {} needs {} face maps", s + 1, s + 2),
                });
            }
            if degeneracies[s].len() != s + 1 {
                return Err(ChainError::InvalidSimplicial {
                    detail: format!("level {s} needs {} degeneracies", s + 1),
                });
            }
            for (idx, d) in faces[s].iter().enumerate() {
                if d.domain() != &levels[s + 1] || d.codomain() != &levels[s] {
                    return Err(ChainError::InvalidSimplicial {
                        detail: format!("face {idx} out of level {} has wrong boundary", s + 1),
                    });
                }
            }
            for (idx, sd) in degeneracies[s].iter().enumerate() {
                if sd.domain() != &levels[s] || sd.codomain() != &levels[s + 1] {
                    return Err(ChainError::InvalidSimplicial {
                        detail: format!("degeneracy {idx} out of level {s} has wrong boundary"),
                    });
                }
            }
        }
        let out = TruncatedSimplicialComplex {
            levels,
            faces,
            degeneracies,
        };
        out.check_simplicial_identities()?;
        Ok(out)
    }

    pub fn truncation_level(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, s: usize) -> &ChainComplex {
        &self.levels[s]
    }

    /// d_i: level s → level s−1.
    pub fn face(&self, s: usize, i: usize) -> &ChainMap {
        &self.faces[s - 1][i]
    }

    /// s_i: level s → level s+1.
    pub fn degeneracy(&self, s: usize, i: usize) -> &ChainMap {
        &self.degeneracies[s][i]
    }

    fn check_simplicial_identities(&self) -> Result<()> {
        let n = self.truncation_level();
        let fail = |what: String| ChainError::InvalidSimplicial { detail: what };
        // d_i d_j = d_{j−1} d_i for i < j
        for s in 2..=n {
            for j in 0..=s {
                for i in 0..j {
                    let left = ChainMap::compose(self.face(s - 1, i), self.face(s, j))?;
                    let right = ChainMap::compose(self.face(s - 1, j - 1), self.face(s, i))?;
                    if left != right {
                        return Err(fail(format!(
                            "d_{i} d_{j} ≠ d_{} d_{i} at level {s}",
                            j - 1
                        )));
                    }
                }
            }
        }
        // s_i s_j = s_{j+1} s_i for i ≤ j
        for s in 0..n {
            if s + 2 > n {
                continue;
            }
            for j in 0..=s {
                for i in 0..=j {
                    let left =
                        ChainMap::compose(self.degeneracy(s + 1, i), self.degeneracy(s, j))?;
                    let right =
                        ChainMap::compose(self.degeneracy(s + 1, j + 1), self.degeneracy(s, i))?;
                    if left != right {
                        return Err(fail(format!(
                            "s_{i} s_{j} ≠ s_{} s_{i} at level {s}",
                            j + 1
                        )));
                    }
                }
            }
        }
        // the mixed identities for d_i s_j out of each level s < N
        for s in 0..n {
            for j in 0..=s {
                for i in 0..=(s + 1) {
                    let composite =
                        ChainMap::compose(self.face(s + 1, i), self.degeneracy(s, j))?;
                    if i == j || i == j + 1 {
                        if composite != ChainMap::identity(&self.levels[s]) {
                            return Err(fail(format!("d_{i} s_{j} ≠ id at level {s}")));
                        }
                    } else if i < j {
                        let expected =
                            ChainMap::compose(self.degeneracy(s - 1, j - 1), self.face(s, i))?;
                        if composite != expected {
                            return Err(fail(format!(
                                "d_{i} s_{j} ≠ s_{} d_{i} at level {s}",
                                j - 1
                            )));
                        }
                    } else {
                        // i > j + 1
                        let expected =
                            ChainMap::compose(self.degeneracy(s - 1, j), self.face(s, i - 1))?;
                        if composite != expected {
                            return Err(fail(format!(
                                "d_{i} s_{j} ≠ s_{j} d_{} at level {s}",
                                i - 1
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The constant simplicial object on a complex (all structure maps
    /// identities).
    pub fn constant(complex: ChainComplex, truncation: usize) -> Self {
        let levels = vec![complex.clone(); truncation + 1];
        let faces = (0..truncation)
            .map(|s| vec![ChainMap::identity(&complex); s + 2])
            .collect();
        let degeneracies = (0..truncation)
            .map(|s| vec![ChainMap::identity(&complex); s + 1])
            .collect();
        TruncatedSimplicialComplex::new(levels, faces, degeneracies)
            .expect("constant simplicial object is valid")
    }
}

/// A levelwise chain map commuting with all faces and degeneracies.
pub struct SimplicialChainMap {
    pub levels: Vec<ChainMap>,
}

impl SimplicialChainMap {
    pub fn new(
        source: &TruncatedSimplicialComplex,
        target: &TruncatedSimplicialComplex,
        levels: Vec<ChainMap>,
    ) -> Result<Self> {
        let n = source.truncation_level();
        if target.truncation_level() != n || levels.len() != n + 1 {
            return Err(ChainError::InvalidSimplicial {
                detail: "levelwise map must match the truncation".into(),
            });
        }
        for (s, f) in levels.iter().enumerate() {
            if f.domain() != source.level(s) || f.codomain() != target.level(s) {
                return Err(ChainError::InvalidSimplicial {
                    detail: format!("level-{s} map has wrong boundary"),
                });
            }
        }
        for s in 1..=n {
            for i in 0..=s {
                let left = ChainMap::compose(target.face(s, i), &levels[s])?;
                let right = ChainMap::compose(&levels[s - 1], source.face(s, i))?;
                if left != right {
                    return Err(ChainError::InvalidSimplicial {
                        detail: format!("does not commute with d_{i} at level {s}"),
                    });
                }
            }
        }
        for s in 0..n {
            for i in 0..=s {
                let left = ChainMap::compose(target.degeneracy(s, i), &levels[s])?;
                let right = ChainMap::compose(&levels[s + 1], source.degeneracy(s, i))?;
                if left != right {
                    return Err(ChainError::InvalidSimplicial {
                        detail: format!("does not commute with s_{i} at level {s}"),
                    });
                }
            }
        }
        Ok(SimplicialChainMap { levels })
    }
}

/// The total complex together with its per-degree summand decomposition
/// (keys are the simplicial levels s with a nonzero contribution,
/// ascending).
pub struct Totalization {
    pub complex: ChainComplex,
    pub keys: BTreeMap<i64, Vec<usize>>,
    pub sums: BTreeMap<i64, DirectSum>,
}

/// tot(𝒱): total degree n carries ⊕_s (level s)_{n−s}; the differential
/// on the (s, t) summand is Σ_i (−1)^i d_i + (−1)^s ∂ — the alternating
/// face sum drops the level, the twisted internal differential keeps it.
pub fn totalize(v: &TruncatedSimplicialComplex) -> Result<Totalization> {
    let field = v.level(0).field();
    let n_max = v.truncation_level();
    let mut keys: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for s in 0..=n_max {
        for t in v.level(s).support() {
            keys.entry(s as i64 + t).or_default().push(s);
        }
    }
    for list in keys.values_mut() {
        list.sort();
    }
    let mut sums = BTreeMap::new();
    let mut components = Vec::new();
    for (&n, list) in &keys {
        let summands: Vec<VectorSpace> = list
            .iter()
            .map(|&s| v.level(s).component(n - s as i64))
            .collect();
        let sum = direct_sum_many(&summands)?;
        components.push((n, sum.space.clone()));
        sums.insert(n, sum);
    }
    let minus_one = FieldElement::integer(-1, field);
    let mut differentials = Vec::new();
    for (&n, list) in &keys {
        let Some(target_sum) = sums.get(&(n - 1)) else {
            continue;
        };
        let source_sum = &sums[&n];
        let target_keys = &keys[&(n - 1)];
        let mut d = LinearMap::zero_map(&source_sum.space, &target_sum.space)?;
        for (pos, &s) in list.iter().enumerate() {
            let t = n - s as i64;
            // (−1)^s ∂: stays at level s, drops the internal degree
            if let Some(tpos) = target_keys.iter().position(|&k| k == s) {
                let block = v.level(s).differential(t);
                let signed = if s % 2 == 1 {
                    block.scale_by(&minus_one)?
                } else {
                    block
                };
                d = LinearMap::add(
                    &d,
                    &LinearMap::compose(
                        &LinearMap::compose(&target_sum.injections[tpos], &signed)?,
                        &source_sum.projections[pos],
                    )?,
                )?;
            }
            // Σ_i (−1)^i d_i: drops to level s−1, same internal degree
            if s > 0 {
                if let Some(tpos) = target_keys.iter().position(|&k| k == s - 1) {
                    let mut face_sum = LinearMap::zero_map(
                        &v.level(s).component(t),
                        &v.level(s - 1).component(t),
                    )?;
                    for i in 0..=s {
                        let face = v.face(s, i).map_at(t);
                        let signed = if i % 2 == 1 {
                            face.scale_by(&minus_one)?
                        } else {
                            face
                        };
                        face_sum = LinearMap::add(&face_sum, &signed)?;
                    }
                    d = LinearMap::add(
                        &d,
                        &LinearMap::compose(
                            &LinearMap::compose(&target_sum.injections[tpos], &face_sum)?,
                            &source_sum.projections[pos],
                        )?,
                    )?;
                }
            }
        }
        differentials.push((n, d));
    }
    let complex = ChainComplex::new(field, components, differentials)?;
    Ok(Totalization {
        complex,
        keys,
        sums,
    })
}

/// The total chain map of a levelwise map (blockwise on the summands).
pub fn totalize_map(
    f: &SimplicialChainMap,
    source: &TruncatedSimplicialComplex,
    target: &TruncatedSimplicialComplex,
) -> Result<ChainMap> {
    let tot_source = totalize(source)?;
    let tot_target = totalize(target)?;
    let mut maps = Vec::new();
    for (&n, list) in &tot_source.keys {
        let source_sum = &tot_source.sums[&n];
        let mut out = LinearMap::zero_map(&source_sum.space, &tot_target.complex.component(n))?;
        let (Some(target_sum), Some(target_keys)) =
            (tot_target.sums.get(&n), tot_target.keys.get(&n))
        else {
            maps.push((n, out));
            continue;
        };
        for (pos, &s) in list.iter().enumerate() {
            let Some(tpos) = target_keys.iter().position(|&k| k == s) else {
                continue;
            };
            let block = f.levels[s].map_at(n - s as i64);
            out = LinearMap::add(
                &out,
                &LinearMap::compose(
                    &LinearMap::compose(&target_sum.injections[tpos], &block)?,
                    &source_sum.projections[pos],
                )?,
            )?;
        }
        maps.push((n, out));
    }
    ChainMap::new(tot_source.complex, tot_target.complex, maps)
}

/// True when the totalized map is a quasi-isomorphism.
pub fn is_total_quasi_iso(
    f: &SimplicialChainMap,
    source: &TruncatedSimplicialComplex,
    target: &TruncatedSimplicialComplex,
) -> Result<bool> {
    is_quasi_iso(&totalize_map(f, source, target)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const F: Field = Field::Rational;

    fn qi(n: i64) -> FieldElement {
        FieldElement::integer(n, F)
    }

    fn qspace(dim: usize, prefix: &str) -> VectorSpace {
        VectorSpace::standard(F, dim, prefix)
    }

    /// A random complex assembled from line and two-term acyclic summands
    /// conjugated by random degreewise basis changes, so its homology
    /// dimensions are known by construction — independently of the
    /// homology routine under test. Per degree: at most one line summand
    /// and at most one acyclic summand starting there, with the resulting
    /// dimension capped at `max_dim`.
    fn random_complex(
        rng: &mut ChaCha8Rng,
        lo: i64,
        hi: i64,
        max_dim: usize,
    ) -> (ChainComplex, BTreeMap<i64, usize>) {
        let mut line_ct: BTreeMap<i64, usize> = BTreeMap::new();
        let mut pair_ct: BTreeMap<i64, usize> = BTreeMap::new(); // top degree
        for n in (lo..=hi).rev() {
            let bottoms = pair_ct.get(&(n + 1)).copied().unwrap_or(0);
            let mut budget = max_dim.saturating_sub(bottoms);
            if n > lo && budget > 0 && rng.gen_bool(0.5) {
                pair_ct.insert(n, 1);
                budget -= 1;
            }
            if budget > 0 && rng.gen_bool(0.5) {
                line_ct.insert(n, 1);
            }
        }
        let lines = |n: i64| line_ct.get(&n).copied().unwrap_or(0);
        let tops = |n: i64| pair_ct.get(&n).copied().unwrap_or(0);
        let dim = |n: i64| lines(n) + tops(n) + tops(n + 1);

        // coordinates per degree: [lines | tops | bottoms-from-above]
        let spaces: BTreeMap<i64, VectorSpace> = (lo..=hi)
            .filter(|&n| dim(n) > 0)
            .map(|n| (n, qspace(dim(n), &format!("c{n}_"))))
            .collect();
        let mut differentials = Vec::new();
        for (&n, space) in &spaces {
            if tops(n) == 0 {
                continue;
            }
            let prev = &spaces[&(n - 1)]; // the bottom coordinate exists there
            let top_coord = lines(n);
            let bottom_coord = lines(n - 1) + tops(n - 1);
            let d = LinearMap::from_fn(space.clone(), prev.clone(), move |r, c| {
                if r == bottom_coord && c == top_coord {
                    qi(1)
                } else {
                    qi(0)
                }
            });
            differentials.push((n, d));
        }
        let canonical = ChainComplex::new(
            F,
            spaces.iter().map(|(&n, s)| (n, s.clone())).collect(),
            differentials,
        )
        .unwrap();

        // conjugate by random invertible degreewise changes of basis
        let changes: BTreeMap<i64, LinearMap> = canonical
            .support()
            .into_iter()
            .map(|n| {
                let space = canonical.component(n);
                loop {
                    let m = LinearMap::from_fn(space.clone(), space.clone(), |_, _| {
                        qi(rng.gen_range(-2..=2))
                    });
                    if is_invertible(&m) {
                        return (n, m);
                    }
                }
            })
            .collect();
        let twisted = ChainComplex::new(
            F,
            canonical
                .support()
                .into_iter()
                .map(|n| (n, canonical.component(n)))
                .collect(),
            canonical
                .support()
                .into_iter()
                .filter(|&n| canonical.dim(n - 1) > 0)
                .map(|n| {
                    let inv = crate::finvect::invert(&changes[&n]).unwrap();
                    let d = LinearMap::compose(
                        &changes[&(n - 1)],
                        &LinearMap::compose(&canonical.differential(n), &inv).unwrap(),
                    )
                    .unwrap();
                    (n, d)
                })
                .collect(),
        )
        .unwrap();
        let expected = line_ct.into_iter().filter(|&(_, d)| d > 0).collect();
        (twisted, expected)
    }

    #[test]
    fn construction_rejects_non_squaring_differentials() {
        let a = qspace(1, "a");
        let b = qspace(1, "b");
        let c = qspace(1, "c");
        let d2 = LinearMap::from_fn(a.clone(), b.clone(), |_, _| qi(1));
        let d1 = LinearMap::from_fn(b.clone(), c.clone(), |_, _| qi(1));
        let bad = ChainComplex::new(F, vec![(2, a), (1, b), (0, c)], vec![(2, d2), (1, d1)]);
        assert!(matches!(bad, Err(ChainError::InvalidComplex { .. })));
    }

    #[test]
    fn generators_have_the_stated_shape() {
        // the slot-0 disk sits in degrees 0 and −1 with identity differential
        let g0 = generators(F, 0);
        assert_eq!(g0.disk.support(), vec![-1, 0]);
        assert_eq!(*g0.disk.differential(0).entry(0, 0), qi(1));
        assert_eq!(g0.sphere.support(), vec![-1]);

        for n in -2..=2 {
            let g = generators(F, n);
            assert!(is_cofibration_cc(&g.i));
            assert!(!is_fibration_cc(&g.i));
            assert!(is_quasi_iso(&g.j).unwrap());
            assert!(is_cofibration_cc(&g.j));
            assert!(homology(&g.disk).unwrap().is_trivial());
            let hs = homology(&g.sphere).unwrap();
            assert_eq!(hs.dims(), BTreeMap::from([(n - 1, 1)]));
        }

        let id = ChainMap::identity(&generators(F, 1).disk);
        assert!(is_cofibration_cc(&id) && is_fibration_cc(&id));
    }

    #[test]
    fn tensor_with_the_unit_keeps_dimensions_and_homology() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let (v, hv) = random_complex(&mut rng, -2, 2, 2);
        let unit = ChainComplex::unit_cc(F);
        let vu = tensor_cc(&v, &unit).unwrap();
        for n in v.support() {
            assert_eq!(vu.complex.dim(n), v.dim(n));
        }
        assert_eq!(homology(&vu.complex).unwrap().dims(), hv);
    }

    #[test]
    fn tensor_of_spheres_concentrates_in_the_sum_degree() {
        for (a, b) in [(0i64, 2i64), (1, 1), (-1, 3)] {
            let t = tensor_cc(&ChainComplex::sphere(F, a), &ChainComplex::sphere(F, b)).unwrap();
            assert_eq!(t.complex.support(), vec![a + b]);
            assert_eq!(t.complex.dim(a + b), 1);
            assert!(t.complex.differential(a + b).is_zero());
        }
    }

    #[test]
    fn tensor_with_a_disk_is_acyclic() {
        for (a, b) in [(0i64, 0i64), (1, -1), (2, 1)] {
            let t = tensor_cc(&ChainComplex::disk(F, a), &ChainComplex::sphere(F, b)).unwrap();
            assert!(homology(&t.complex).unwrap().is_trivial());
        }
    }

    #[test]
    fn koszul_sign_squares_to_zero_on_random_tensors_and_totalizations() {
        // ChainComplex::new verifies ∂∘∂ = 0 exactly, so every unwrap here
        // is a check; the dimension bookkeeping pins the summand layout
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..50 {
            let (v, _) = random_complex(&mut rng, -2, 2, 2);
            let (w, _) = random_complex(&mut rng, -1, 2, 2);
            let t = tensor_cc(&v, &w).unwrap();
            for n in t.complex.support() {
                let expected: usize = (-6..=6).map(|p: i64| v.dim(p) * w.dim(n - p)).sum();
                assert_eq!(t.complex.dim(n), expected);
            }
            let tot = totalize(&TruncatedSimplicialComplex::constant(v.clone(), 2)).unwrap();
            for n in tot.complex.support() {
                let expected: usize = (0..=2).map(|s| v.dim(n - s)).sum();
                assert_eq!(tot.complex.dim(n), expected);
            }
        }
    }

    #[test]
    fn mapping_complex_of_the_unit_recovers_the_target() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let (w, hw) = random_complex(&mut rng, -2, 2, 2);
        let h = hom_cc(&ChainComplex::unit_cc(F), &w).unwrap();
        for n in w.support() {
            assert_eq!(h.complex.dim(n), w.dim(n));
        }
        assert_eq!(homology(&h.complex).unwrap().dims(), hw);
    }

    #[test]
    fn mapping_complex_between_spheres_is_a_shifted_sphere() {
        for (a, b) in [(0i64, 2i64), (1, 1), (-1, 3), (2, 0)] {
            let h = hom_cc(&ChainComplex::sphere(F, a), &ChainComplex::sphere(F, b)).unwrap();
            assert_eq!(h.complex.support(), vec![b - a]);
            assert_eq!(h.complex.dim(b - a), 1);
        }
    }

    #[test]
    fn degree_zero_cycles_of_the_mapping_complex_are_the_chain_maps() {
        // independent oracle: count chain maps V → W by a direct linear
        // solve of the commuting equations and compare with dim Z₀([V,W])
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for _ in 0..10 {
            let (v, _) = random_complex(&mut rng, -2, 2, 2);
            let (w, _) = random_complex(&mut rng, -2, 2, 2);
            let h = hom_cc(&v, &w).unwrap();
            let z0 = kernel(&h.complex.differential(0)).space.dim();

            let mut offsets: BTreeMap<i64, usize> = BTreeMap::new();
            let mut total = 0usize;
            let mut degrees: Vec<i64> = v.support();
            degrees.extend(w.support());
            degrees.sort();
            degrees.dedup();
            for &n in &degrees {
                if v.dim(n) > 0 && w.dim(n) > 0 {
                    offsets.insert(n, total);
                    total += v.dim(n) * w.dim(n);
                }
            }
            // rows of ∂_W f_n − f_{n−1} ∂_V = 0, unknowns f_n[r][c] laid
            // out row-major per degree
            let mut rows: Vec<Vec<FieldElement>> = Vec::new();
            for &n in &degrees {
                let dv = v.differential(n);
                let dw = w.differential(n);
                for r in 0..w.dim(n - 1) {
                    for c in 0..v.dim(n) {
                        let mut row = vec![qi(0); total];
                        if let Some(&off) = offsets.get(&n) {
                            for k in 0..w.dim(n) {
                                let idx = off + k * v.dim(n) + c;
                                row[idx] = row[idx].add(dw.entry(r, k)).unwrap();
                            }
                        }
                        if let Some(&off) = offsets.get(&(n - 1)) {
                            for k in 0..v.dim(n - 1) {
                                let idx = off + r * v.dim(n - 1) + k;
                                row[idx] = row[idx].add(&dv.entry(k, c).neg()).unwrap();
                            }
                        }
                        rows.push(row);
                    }
                }
            }
            let eq_count = rows.len();
            let coefficient_matrix = LinearMap::from_fn(
                qspace(total, "u"),
                qspace(eq_count.max(1), "e"),
                |r, c| {
                    if r < eq_count {
                        rows[r][c].clone()
                    } else {
                        qi(0)
                    }
                },
            );
            let solution_dim = total - rank(&coefficient_matrix);
            assert_eq!(z0, solution_dim);
        }
    }

    #[test]
    fn quasi_iso_examples() {
        let g = generators(F, 1);
        assert!(is_quasi_iso(&g.j).unwrap());
        assert!(!is_quasi_iso(&g.i).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(59);
        let (v, hv) = random_complex(&mut rng, -1, 2, 2);
        assert!(is_quasi_iso(&ChainMap::identity(&v)).unwrap());
        assert_eq!(homology(&v).unwrap().dims(), hv);
        let s = ChainComplex::sphere(F, 0);
        let collapse = ChainMap::zero_chain_map(&s, &ChainComplex::zero(F));
        assert!(!is_quasi_iso(&collapse).unwrap());
    }

    #[test]
    fn homology_dims_match_the_construction_on_fifty_random_complexes() {
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        for _ in 0..50 {
            let (v, expected) = random_complex(&mut rng, -3, 3, 2);
            assert_eq!(homology(&v).unwrap().dims(), expected);
        }
    }

    #[test]
    fn kunneth_dimension_count_on_thirty_random_pairs() {
        // oracle: dim H_n(V⊗W) = Σ_{i+j=n} dim H_i(V) · dim H_j(W), with
        // the factor homologies known by construction
        let mut rng = ChaCha8Rng::seed_from_u64(67);
        for _ in 0..30 {
            let (v, hv) = random_complex(&mut rng, -3, 3, 3);
            let (w, hw) = random_complex(&mut rng, -3, 3, 3);
            let t = tensor_cc(&v, &w).unwrap();
            let ht = homology(&t.complex).unwrap();
            let mut expected: BTreeMap<i64, usize> = BTreeMap::new();
            for (&i, &di) in &hv {
                for (&j, &dj) in &hw {
                    *expected.entry(i + j).or_default() += di * dj;
                }
            }
            expected.retain(|_, d| *d > 0);
            assert_eq!(ht.dims(), expected);
        }
    }

    #[test]
    fn pushout_product_with_an_identity_is_invertible() {
        let g = generators(F, 1);
        let id = ChainMap::identity(&g.disk);
        let pp = pushout_product_cc(&id, &g.i).unwrap();
        for n in pp.domain().support() {
            assert!(is_invertible(&pp.map_at(n)));
        }
        for n in pp.codomain().support() {
            assert_eq!(pp.domain().dim(n), pp.codomain().dim(n));
        }
    }

    #[test]
    fn pushout_product_with_an_initial_morphism_is_the_plain_tensor() {
        let g1 = generators(F, 1);
        let g2 = generators(F, 2);
        // (0 → 𝔻¹) ⊗̂ i₂: the left coprojection out of 𝔻¹ ⊗ 𝕊¹ is
        // invertible and the universal map restricts along it to id ⊗ i₂
        let pp = pushout_product_cc(&g1.j, &g2.i).unwrap();
        let f_tensor_id = tensor_ccmap(&g1.j, &ChainMap::identity(g2.i.domain())).unwrap();
        let id_tensor_g = tensor_ccmap(&ChainMap::identity(g1.j.domain()), &g2.i).unwrap();
        let po = pushout_cc(&f_tensor_id, &id_tensor_g).unwrap();
        for n in po.from_left.domain().support() {
            assert!(is_invertible(&po.from_left.map_at(n)));
        }
        let through = ChainMap::compose(&pp, &po.from_left).unwrap();
        let direct = tensor_ccmap(&ChainMap::identity(&g1.disk), &g2.i).unwrap();
        assert_eq!(through, direct);
    }

    #[test]
    fn pushout_product_axiom_on_all_small_generator_pairs() {
        for m in -2..=2 {
            for n in -2..=2 {
                let gm = generators(F, m);
                let gn = generators(F, n);
                for (left, left_acyclic) in [(&gm.i, false), (&gm.j, true)] {
                    for (right, right_acyclic) in [(&gn.i, false), (&gn.j, true)] {
                        let pp = pushout_product_cc(left, right).unwrap();
                        assert!(
                            is_cofibration_cc(&pp),
                            "pushout-product of generators must be degreewise injective"
                        );
                        if left_acyclic || right_acyclic {
                            assert!(
                                is_quasi_iso(&pp).unwrap(),
                                "pushout-product with an acyclic input must be acyclic"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn lifting_exists_against_the_generating_corpus() {
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        for n in -1..=1 {
            let g = generators(F, n);

            // the fold of two disks is an acyclic fibration onto one disk
            let dd = direct_sum_cc(F, &[g.disk.clone(), g.disk.clone()]).unwrap();
            let fold = ChainMap::new(
                dd.complex.clone(),
                g.disk.clone(),
                dd.complex
                    .support()
                    .into_iter()
                    .map(|k| {
                        (
                            k,
                            LinearMap::from_fn(
                                dd.complex.component(k),
                                g.disk.component(k),
                                |_, _| qi(1),
                            ),
                        )
                    })
                    .collect(),
            )
            .unwrap();
            assert!(is_acyclic_fibration_cc(&fold).unwrap());

            // the zero inclusion lifts against the fold: h must be a
            // chain-level section of it
            let top = ChainMap::zero_chain_map(g.j.domain(), &dd.complex);
            let bottom = ChainMap::identity(&g.disk);
            let h = solve_lifting(&g.j, &fold, &top, &bottom)
                .unwrap()
                .expect("acyclic-cofibration lift against a fibration");
            assert_eq!(ChainMap::compose(&fold, &h).unwrap(), bottom);

            // the boundary inclusion lifts against the acyclic fold
            let top = ChainMap::compose(&dd.inclusions[0], &g.i).unwrap();
            let bottom = ChainMap::identity(&g.disk);
            assert_eq!(
                ChainMap::compose(&fold, &top).unwrap(),
                ChainMap::compose(&bottom, &g.i).unwrap()
            );
            let h = solve_lifting(&g.i, &fold, &top, &bottom)
                .unwrap()
                .expect("cofibration lift against an acyclic fibration");
            assert_eq!(ChainMap::compose(&h, &g.i).unwrap(), top);
            assert_eq!(ChainMap::compose(&fold, &h).unwrap(), bottom);

            // a wider fibration: the projection of 𝔻ⁿ ⊕ Y onto Y
            let (y, _) = random_complex(&mut rng, n - 2, n + 2, 2);
            let sum = direct_sum_cc(F, &[g.disk.clone(), y.clone()]).unwrap();
            let p = sum.projections[1].clone();
            assert!(is_fibration_cc(&p));
            let top = ChainMap::zero_chain_map(g.j.domain(), &sum.complex);
            let bottom = ChainMap::zero_chain_map(&g.disk, &y);
            let h = solve_lifting(&g.j, &p, &top, &bottom)
                .unwrap()
                .expect("acyclic-cofibration lift against a projection");
            assert_eq!(ChainMap::compose(&p, &h).unwrap(), bottom);
        }
    }

    #[test]
    fn lifting_fails_where_it_must_and_rejects_bad_squares() {
        let g = generators(F, 1);
        // the boundary inclusion admits no differential-compatible
        // retraction: against 𝕊⁰ → 0 with the identity on top, no lift
        let p = ChainMap::zero_chain_map(&g.sphere, &ChainComplex::zero(F));
        let top = ChainMap::identity(&g.sphere);
        let bottom = ChainMap::zero_chain_map(&g.disk, &ChainComplex::zero(F));
        assert!(solve_lifting(&g.i, &p, &top, &bottom).unwrap().is_none());

        // a square that does not commute is an input error
        let g0 = generators(F, 0);
        let bad = solve_lifting(
            &g0.i,
            &ChainMap::identity(&g0.disk),
            &ChainMap::zero_chain_map(&g0.sphere, &g0.disk),
            &ChainMap::identity(&g0.disk),
        );
        assert!(matches!(bad, Err(ChainError::InvalidMap { .. })));
    }

    #[test]
    fn totalization_of_the_constant_sphere_has_a_single_line_of_homology() {
        // the alternating face sums of the constant object give
        // 𝕂 ←0— 𝕂 ←id— 𝕂 in degrees 0, 1, 2
        let v = TruncatedSimplicialComplex::constant(ChainComplex::sphere(F, 0), 2);
        let tot = totalize(&v).unwrap();
        assert_eq!(tot.complex.support(), vec![0, 1, 2]);
        let h = homology(&tot.complex).unwrap();
        assert_eq!(h.dims(), BTreeMap::from([(0, 1)]));
    }

    #[test]
    fn totalization_of_the_zero_object_is_zero() {
        let v = TruncatedSimplicialComplex::constant(ChainComplex::zero(F), 2);
        let tot = totalize(&v).unwrap();
        assert!(tot.complex.is_zero_complex());
    }

    #[test]
    fn simplicial_identity_violations_are_rejected() {
        // replacing d_0 out of level 1 with zero breaks d_0 s_0 = id
        let d = ChainComplex::disk(F, 1);
        let levels = vec![d.clone(), d.clone()];
        let faces = vec![vec![
            ChainMap::zero_chain_map(&d, &d),
            ChainMap::identity(&d),
        ]];
        let degeneracies = vec![vec![ChainMap::identity(&d)]];
        let bad = TruncatedSimplicialComplex::new(levels, faces, degeneracies);
        assert!(matches!(bad, Err(ChainError::InvalidSimplicial { .. })));
    }

    #[test]
    fn levelwise_quasi_isos_totalize_to_total_quasi_isos() {
        // five seeded cases of V ↪ V ⊕ (acyclic), constant at N = 2
        let mut rng = ChaCha8Rng::seed_from_u64(83);
        for case in 0..5 {
            let (v, _) = random_complex(&mut rng, -1, 2, 2);
            let extra = ChainComplex::disk(F, case - 1);
            let sum = direct_sum_cc(F, &[v.clone(), extra]).unwrap();
            let include = sum.inclusions[0].clone();
            assert!(is_quasi_iso(&include).unwrap());

            let sv = TruncatedSimplicialComplex::constant(v.clone(), 2);
            let sw = TruncatedSimplicialComplex::constant(sum.complex.clone(), 2);
            let f = SimplicialChainMap::new(&sv, &sw, vec![include.clone(); 3]).unwrap();
            assert!(is_total_quasi_iso(&f, &sv, &sw).unwrap());
        }
    }
}
