//! Finite-dimensional vector spaces and linear maps over the exact scalars,
//! with tensor product, direct sum, internal hom, set-tensoring, and exact
//! Gaussian elimination (kernel, cokernel, rank, inverse).
//!
//! Conventions that the rest of the crate leans on:
//!
//! * Bases are ordered, labeled, and pairwise distinct; the zero space is a
//!   first-class citizen.
//! * Matrices are stored row-major with shape codomain.dim × domain.dim.
//! * Tensor bases are ordered lexicographically with the **left factor
//!   major**; `tensor_map` is the Kronecker product in that ordering. With a
//!   fixed convention, every canonical identification in later modules is an
//!   explicit permutation matrix, so "equal up to canonical iso" is a
//!   decidable matrix equation.
//! * Gaussian elimination reduces fully (reduced row echelon form) and picks
//!   the first nonzero entry in column order as pivot, so every witness the
//!   engine produces is deterministic.
//! * Kernels come with a retraction and cokernels with a section; those are
//!   what let us transport maps onto chosen subquotient bases exactly.

use std::fmt;

use crate::scalars::{Field, FieldElement, ScalarError};

/// Errors raised by vector-space constructions.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FinVectError {
    #[error("basis labels must be pairwise distinct: duplicate {label:?}")]
    DuplicateLabel { label: String },
    #[error("matrix shape {got_rows}x{got_cols} does not match codomain x domain = {want_rows}x{want_cols}")]
    ShapeMismatch {
        got_rows: usize,
        got_cols: usize,
        want_rows: usize,
        want_cols: usize,
    },
    #[error("cannot compose: inner spaces differ ({f_codomain} vs {g_domain})")]
    CompositionMismatch { f_codomain: String, g_domain: String },
    #[error("maps are not parallel ({context}): {left} vs {right}")]
    NotParallel {
        context: &'static str,
        left: String,
        right: String,
    },
    #[error("mixed ground fields: {left} vs {right}")]
    FieldMismatch { left: Field, right: Field },
    #[error("matrix entry at ({row},{col}) lies in {got}, expected {want}")]
    EntryFieldMismatch {
        row: usize,
        col: usize,
        got: Field,
        want: Field,
    },
    #[error("map is not invertible (rank {rank}, dimension {dim})")]
    NotInvertible { rank: usize, dim: usize },
    #[error("recast requires equal dimensions: {context}")]
    RecastMismatch { context: String },
    #[error("permutation of length {len} is not a bijection on {dim} basis vectors")]
    BadPermutation { len: usize, dim: usize },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

pub type Result<T> = std::result::Result<T, FinVectError>;

/// A finite-dimensional vector space over one of the two ground fields,
/// presented by an ordered, pairwise-distinct list of basis labels.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VectorSpace {
    field: Field,
    basis: Vec<String>,
}

impl VectorSpace {
    /// A space with the given basis labels; rejects duplicates.
    pub fn new(field: Field, basis: Vec<String>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for label in &basis {
            if !seen.insert(label.clone()) {
                return Err(FinVectError::DuplicateLabel {
                    label: label.clone(),
                });
            }
        }
        Ok(VectorSpace { field, basis })
    }

    /// The standard space of the given dimension with labels `prefix0..`.
    pub fn standard(field: Field, dim: usize, prefix: &str) -> Self {
        VectorSpace {
            field,
            basis: (0..dim).map(|k| format!("{prefix}{k}")).collect(),
        }
    }

    /// The zero space.
    pub fn zero(field: Field) -> Self {
        VectorSpace {
            field,
            basis: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|l| l == label)
    }

    /// The free space 𝕂[S] on a finite set of labels.
    pub fn free_on(field: Field, labels: &[String]) -> Result<Self> {
        VectorSpace::new(field, labels.to_vec())
    }
}

impl fmt::Display for VectorSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field, self.basis.join(","))
    }
}

impl fmt::Debug for VectorSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A linear map between labeled spaces, stored as a
/// codomain.dim × domain.dim matrix (row-major).
#[derive(Clone, PartialEq, Eq)]
pub struct LinearMap {
    domain: VectorSpace,
    codomain: VectorSpace,
    matrix: Vec<Vec<FieldElement>>,
}

impl LinearMap {
    /// Validates shape, field uniformity, and agreement with both spaces.
    pub fn new(
        domain: VectorSpace,
        codomain: VectorSpace,
        matrix: Vec<Vec<FieldElement>>,
    ) -> Result<Self> {
        if domain.field() != codomain.field() {
            return Err(FinVectError::FieldMismatch {
                left: domain.field(),
                right: codomain.field(),
            });
        }
        let want_rows = codomain.dim();
        let want_cols = domain.dim();
        if matrix.len() != want_rows || matrix.iter().any(|r| r.len() != want_cols) {
            let got_rows = matrix.len();
            let got_cols = matrix.first().map_or(0, |r| r.len());
            return Err(FinVectError::ShapeMismatch {
                got_rows,
                got_cols,
                want_rows,
                want_cols,
            });
        }
        for (r, row) in matrix.iter().enumerate() {
            for (c, entry) in row.iter().enumerate() {
                if entry.field() != domain.field() {
                    return Err(FinVectError::EntryFieldMismatch {
                        row: r,
                        col: c,
                        got: entry.field(),
                        want: domain.field(),
                    });
                }
            }
        }
        Ok(LinearMap {
            domain,
            codomain,
            matrix,
        })
    }

    /// Builds entry-by-entry from a closure (row = codomain index,
    /// col = domain index).
    pub fn from_fn(
        domain: VectorSpace,
        codomain: VectorSpace,
        mut f: impl FnMut(usize, usize) -> FieldElement,
    ) -> Self {
        let matrix = (0..codomain.dim())
            .map(|r| (0..domain.dim()).map(|c| f(r, c)).collect())
            .collect();
        LinearMap::new(domain, codomain, matrix).expect("from_fn produces a well-shaped matrix")
    }

    pub fn identity(space: &VectorSpace) -> Self {
        let field = space.field();
        LinearMap::from_fn(space.clone(), space.clone(), |r, c| {
            if r == c {
                FieldElement::one(field)
            } else {
                FieldElement::zero(field)
            }
        })
    }

    pub fn zero_map(domain: &VectorSpace, codomain: &VectorSpace) -> Result<Self> {
        if domain.field() != codomain.field() {
            return Err(FinVectError::FieldMismatch {
                left: domain.field(),
                right: codomain.field(),
            });
        }
        let field = domain.field();
        Ok(LinearMap::from_fn(
            domain.clone(),
            codomain.clone(),
            |_, _| FieldElement::zero(field),
        ))
    }

    pub fn domain(&self) -> &VectorSpace {
        &self.domain
    }

    pub fn codomain(&self) -> &VectorSpace {
        &self.codomain
    }

    pub fn matrix(&self) -> &Vec<Vec<FieldElement>> {
        &self.matrix
    }

    pub fn entry(&self, row: usize, col: usize) -> &FieldElement {
        &self.matrix[row][col]
    }

    pub fn field(&self) -> Field {
        self.domain.field()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(FieldElement::is_zero)
    }

    /// Exact matrix product g∘f; defined only when the inner spaces are
    /// identical (labels included).
    pub fn compose(g: &LinearMap, f: &LinearMap) -> Result<LinearMap> {
        if f.codomain != g.domain {
            return Err(FinVectError::CompositionMismatch {
                f_codomain: f.codomain.to_string(),
                g_domain: g.domain.to_string(),
            });
        }
        let field = f.field();
        let inner = f.codomain.dim();
        let matrix = (0..g.codomain.dim())
            .map(|r| {
                (0..f.domain.dim())
                    .map(|c| {
                        let mut acc = FieldElement::zero(field);
                        for k in 0..inner {
                            acc = &acc + &(&g.matrix[r][k] * &f.matrix[k][c]);
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        LinearMap::new(f.domain.clone(), g.codomain.clone(), matrix)
    }

    /// Entrywise sum of parallel maps.
    pub fn add(f: &LinearMap, g: &LinearMap) -> Result<LinearMap> {
        if f.domain != g.domain || f.codomain != g.codomain {
            return Err(FinVectError::NotParallel {
                context: "add",
                left: format!("{} -> {}", f.domain, f.codomain),
                right: format!("{} -> {}", g.domain, g.codomain),
            });
        }
        Ok(LinearMap::from_fn(
            f.domain.clone(),
            f.codomain.clone(),
            |r, c| &f.matrix[r][c] + &g.matrix[r][c],
        ))
    }

    pub fn sub(f: &LinearMap, g: &LinearMap) -> Result<LinearMap> {
        LinearMap::add(f, &g.scale_by(&FieldElement::integer(-1, g.field()))?)
    }

    /// Scalar multiple; the scalar must live in the map's field.
    pub fn scale_by(&self, c: &FieldElement) -> Result<LinearMap> {
        if c.field() != self.field() {
            return Err(FinVectError::FieldMismatch {
                left: c.field(),
                right: self.field(),
            });
        }
        Ok(LinearMap::from_fn(
            self.domain.clone(),
            self.codomain.clone(),
            |r, c_| c * &self.matrix[r][c_],
        ))
    }

    /// Applies the map to a coordinate column (length = domain dim).
    pub fn apply(&self, column: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(column.len(), self.domain.dim(), "column length mismatch");
        let field = self.field();
        (0..self.codomain.dim())
            .map(|r| {
                let mut acc = FieldElement::zero(field);
                for (c, x) in column.iter().enumerate() {
                    acc = &acc + &(&self.matrix[r][c] * x);
                }
                acc
            })
            .collect()
    }

    /// Reinterprets the same matrix between canonically identified spaces
    /// (dimensions and field must agree). Used for the explicit relabeling
    /// isomorphisms the engine's conventions make into identity matrices.
    pub fn recast(&self, domain: VectorSpace, codomain: VectorSpace) -> Result<LinearMap> {
        if domain.dim() != self.domain.dim()
            || codomain.dim() != self.codomain.dim()
            || domain.field() != self.field()
            || codomain.field() != self.field()
        {
            return Err(FinVectError::RecastMismatch {
                context: format!(
                    "{} -> {} recast to {} -> {}",
                    self.domain, self.codomain, domain, codomain
                ),
            });
        }
        LinearMap::new(domain, codomain, self.matrix.clone())
    }
}

impl fmt::Debug for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LinearMap {} -> {}", self.domain, self.codomain)?;
        for row in &self.matrix {
            let cells: Vec<String> = row.iter().map(|e| e.format()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// The map sending domain basis vector j to codomain basis vector perm[j].
pub fn permutation_map(
    domain: &VectorSpace,
    codomain: &VectorSpace,
    perm: &[usize],
) -> Result<LinearMap> {
    let dim = domain.dim();
    if perm.len() != dim || codomain.dim() != dim {
        return Err(FinVectError::BadPermutation {
            len: perm.len(),
            dim,
        });
    }
    let mut seen = vec![false; dim];
    for &p in perm {
        if p >= dim || seen[p] {
            return Err(FinVectError::BadPermutation {
                len: perm.len(),
                dim,
            });
        }
        seen[p] = true;
    }
    let field = domain.field();
    Ok(LinearMap::from_fn(
        domain.clone(),
        codomain.clone(),
        |r, c| {
            if perm[c] == r {
                FieldElement::one(field)
            } else {
                FieldElement::zero(field)
            }
        },
    ))
}

// ---------------------------------------------------------------------------
// Tensor product
// ---------------------------------------------------------------------------

fn tensor_label(v: &str, w: &str) -> String {
    format!("({v})⊗({w})")
}

/// V ⊗ W with basis ordered lexicographically, left factor major.
pub fn tensor_space(v: &VectorSpace, w: &VectorSpace) -> Result<VectorSpace> {
    if v.field() != w.field() {
        return Err(FinVectError::FieldMismatch {
            left: v.field(),
            right: w.field(),
        });
    }
    let mut basis = Vec::with_capacity(v.dim() * w.dim());
    for lv in v.basis_labels() {
        for lw in w.basis_labels() {
            basis.push(tensor_label(lv, lw));
        }
    }
    VectorSpace::new(v.field(), basis)
}

/// Kronecker product in the left-factor-major basis ordering.
pub fn tensor_map(f: &LinearMap, g: &LinearMap) -> Result<LinearMap> {
    let domain = tensor_space(f.domain(), g.domain())?;
    let codomain = tensor_space(f.codomain(), g.codomain())?;
    let (gd, gc) = (g.domain().dim(), g.codomain().dim());
    Ok(LinearMap::from_fn(domain, codomain, |r, c| {
        let (fr, gr) = (r / gc, r % gc);
        let (fc, gcol) = (c / gd, c % gd);
        &f.matrix[fr][fc] * &g.matrix[gr][gcol]
    }))
}

/// The associator (U⊗V)⊗W → U⊗(V⊗W): an explicit permutation matrix (the
/// identity pattern, since both sides flatten to the same lexicographic
/// order, but between distinct labeled spaces).
pub fn associator(u: &VectorSpace, v: &VectorSpace, w: &VectorSpace) -> Result<LinearMap> {
    let lhs = tensor_space(&tensor_space(u, v)?, w)?;
    let rhs = tensor_space(u, &tensor_space(v, w)?)?;
    let perm: Vec<usize> = (0..lhs.dim()).collect();
    permutation_map(&lhs, &rhs, &perm)
}

/// The symmetry braiding V⊗W → W⊗V as an explicit permutation matrix.
pub fn symmetry(v: &VectorSpace, w: &VectorSpace) -> Result<LinearMap> {
    let lhs = tensor_space(v, w)?;
    let rhs = tensor_space(w, v)?;
    let (dv, dw) = (v.dim(), w.dim());
    let perm: Vec<usize> = (0..dv * dw)
        .map(|idx| {
            let (i, j) = (idx / dw, idx % dw);
            j * dv + i
        })
        .collect();
    permutation_map(&lhs, &rhs, &perm)
}

// ---------------------------------------------------------------------------
// Direct sums and set-tensoring
// ---------------------------------------------------------------------------

/// A finite direct sum together with its injections and projections.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub space: VectorSpace,
    pub injections: Vec<LinearMap>,
    pub projections: Vec<LinearMap>,
}

/// ⊕ of finitely many spaces; summand k's labels get the prefix `k:`.
pub fn direct_sum_many(summands: &[VectorSpace]) -> Result<DirectSum> {
    let field = summands.first().map_or(Field::Rational, |s| s.field());
    for s in summands {
        if s.field() != field {
            return Err(FinVectError::FieldMismatch {
                left: field,
                right: s.field(),
            });
        }
    }
    let mut basis = Vec::new();
    let mut offsets = Vec::with_capacity(summands.len());
    for (k, s) in summands.iter().enumerate() {
        offsets.push(basis.len());
        for label in s.basis_labels() {
            basis.push(format!("{k}:{label}"));
        }
    }
    let total = VectorSpace::new(field, basis)?;
    let mut injections = Vec::with_capacity(summands.len());
    let mut projections = Vec::with_capacity(summands.len());
    for (k, s) in summands.iter().enumerate() {
        let off = offsets[k];
        injections.push(LinearMap::from_fn(s.clone(), total.clone(), |r, c| {
            if r == off + c {
                FieldElement::one(field)
            } else {
                FieldElement::zero(field)
            }
        }));
        projections.push(LinearMap::from_fn(total.clone(), s.clone(), |r, c| {
            if c == off + r {
                FieldElement::one(field)
            } else {
                FieldElement::zero(field)
            }
        }));
    }
    Ok(DirectSum {
        space: total,
        injections,
        projections,
    })
}

/// Binary direct sum with coprojections and projections.
pub fn direct_sum(v: &VectorSpace, w: &VectorSpace) -> Result<DirectSum> {
    direct_sum_many(&[v.clone(), w.clone()])
}

/// Block-diagonal sum of maps along matching direct-sum presentations.
pub fn direct_sum_map(sum_dom: &DirectSum, sum_cod: &DirectSum, maps: &[LinearMap]) -> Result<LinearMap> {
    let field = sum_dom.space.field();
    let mut acc = LinearMap::zero_map(&sum_dom.space, &sum_cod.space)?;
    if maps.len() != sum_dom.injections.len() || maps.len() != sum_cod.injections.len() {
        return Err(FinVectError::NotParallel {
            context: "direct_sum_map summand count",
            left: format!("{}", maps.len()),
            right: format!("{}/{}", sum_dom.injections.len(), sum_cod.injections.len()),
        });
    }
    for (k, f) in maps.iter().enumerate() {
        let piece = LinearMap::compose(
            &sum_cod.injections[k],
            &LinearMap::compose(f, &sum_dom.projections[k])?,
        )?;
        acc = LinearMap::add(&acc, &piece)?;
    }
    let _ = field;
    Ok(acc)
}

/// The set-tensoring S·V (one copy of V per element of S) together with the
/// permutation witness S·V ≅ 𝕂[S] ⊗ V.
#[derive(Clone, Debug)]
pub struct SetTensoring {
    pub space: VectorSpace,
    /// Witness S·V → 𝕂[S]⊗V (a permutation matrix).
    pub to_tensor: LinearMap,
    /// Inverse witness 𝕂[S]⊗V → S·V.
    pub from_tensor: LinearMap,
}

/// S·V with basis labels `(s,v)`, s-major.
pub fn set_tensoring(set: &[String], v: &VectorSpace) -> Result<SetTensoring> {
    let field = v.field();
    let mut basis = Vec::with_capacity(set.len() * v.dim());
    for s in set {
        for lv in v.basis_labels() {
            basis.push(format!("({s},{lv})"));
        }
    }
    let space = VectorSpace::new(field, basis)?;
    let k_s = VectorSpace::free_on(field, set)?;
    let target = tensor_space(&k_s, v)?;
    // both sides are s-major, so the witness is the identity permutation
    let perm: Vec<usize> = (0..space.dim()).collect();
    let to_tensor = permutation_map(&space, &target, &perm)?;
    let from_tensor = permutation_map(&target, &space, &perm)?;
    Ok(SetTensoring {
        space,
        to_tensor,
        from_tensor,
    })
}

// ---------------------------------------------------------------------------
// Internal hom
// ---------------------------------------------------------------------------

/// [V, W] with basis e_{ij} ordered domain-major: for each domain label v_j
/// (major), for each codomain label w_i (minor), the matrix unit v_j ↦ w_i.
/// This is the left-factor-major basis of V* ⊗ W, so a linear map's
/// coordinate column is its column-major vectorization.
pub fn internal_hom(v: &VectorSpace, w: &VectorSpace) -> Result<VectorSpace> {
    if v.field() != w.field() {
        return Err(FinVectError::FieldMismatch {
            left: v.field(),
            right: w.field(),
        });
    }
    let mut basis = Vec::with_capacity(v.dim() * w.dim());
    for lv in v.basis_labels() {
        for lw in w.basis_labels() {
            basis.push(format!("[{lv}=>{lw}]"));
        }
    }
    VectorSpace::new(v.field(), basis)
}

/// The coordinate column of a map in the `internal_hom` basis.
pub fn vectorize_map(f: &LinearMap) -> Vec<FieldElement> {
    let mut out = Vec::with_capacity(f.domain().dim() * f.codomain().dim());
    for j in 0..f.domain().dim() {
        for i in 0..f.codomain().dim() {
            out.push(f.matrix()[i][j].clone());
        }
    }
    out
}

/// Rebuilds a map from its `internal_hom` coordinate column.
pub fn devectorize_map(
    domain: &VectorSpace,
    codomain: &VectorSpace,
    column: &[FieldElement],
) -> Result<LinearMap> {
    let (dv, dw) = (domain.dim(), codomain.dim());
    if column.len() != dv * dw {
        return Err(FinVectError::ShapeMismatch {
            got_rows: column.len(),
            got_cols: 1,
            want_rows: dv * dw,
            want_cols: 1,
        });
    }
    Ok(LinearMap::from_fn(
        domain.clone(),
        codomain.clone(),
        |i, j| column[j * dw + i].clone(),
    ))
}

/// Functorial action of the internal hom: given a: V′ → V and b: W → W′,
/// the induced map [V,W] → [V′,W′], F ↦ b ∘ F ∘ a.
pub fn hom_transport(a: &LinearMap, b: &LinearMap) -> Result<LinearMap> {
    let domain = internal_hom(a.codomain(), b.domain())?;
    let codomain = internal_hom(a.domain(), b.codomain())?;
    let (dw, dwp) = (b.domain().dim(), b.codomain().dim());
    Ok(LinearMap::from_fn(domain, codomain, |r, c| {
        // row index r = (j′, i′) over V′ × W′; column c = (j, i) over V × W
        let (jp, ip) = (r / dwp, r % dwp);
        let (j, i) = (c / dw, c % dw);
        &a.matrix()[j][jp] * &b.matrix()[ip][i]
    }))
}

/// Mutually inverse currying maps Hom(T⊗V, W) ⇄ Hom(T, [V,W]), returned in
/// that order. With the fixed basis conventions both are identity-pattern
/// permutation matrices between distinct labeled spaces.
pub fn hom_adjunction_witness(
    t: &VectorSpace,
    v: &VectorSpace,
    w: &VectorSpace,
) -> Result<(LinearMap, LinearMap)> {
    let lhs = internal_hom(&tensor_space(t, v)?, w)?;
    let rhs = internal_hom(t, &internal_hom(v, w)?)?;
    // position in lhs: ((a,j), i) ↦ (a·dimV + j)·dimW + i
    // position in rhs: (a, (j,i)) ↦ a·dimV·dimW + j·dimW + i — identical
    let perm: Vec<usize> = (0..lhs.dim()).collect();
    Ok((
        permutation_map(&lhs, &rhs, &perm)?,
        permutation_map(&rhs, &lhs, &perm)?,
    ))
}

// ---------------------------------------------------------------------------
// Exact Gaussian elimination: rank, kernel, cokernel, inverse
// ---------------------------------------------------------------------------

/// Reduced row echelon form, in place. Returns the pivot (row, col) pairs.
/// Pivot choice: first nonzero entry in column order, scanning rows top to
/// bottom — deterministic, so downstream witnesses are reproducible.
fn rref(matrix: &mut [Vec<FieldElement>]) -> Vec<(usize, usize)> {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row >= rows {
            break;
        }
        let Some(pivot_row) = (row..rows).find(|&r| !matrix[r][col].is_zero()) else {
            continue;
        };
        matrix.swap(row, pivot_row);
        let pivot = matrix[row][col].clone();
        let pivot_inv = pivot.inv().expect("pivot is nonzero");
        for c in col..cols {
            matrix[row][c] = &matrix[row][c] * &pivot_inv;
        }
        for r in 0..rows {
            if r != row && !matrix[r][col].is_zero() {
                let factor = matrix[r][col].clone();
                for c in col..cols {
                    let delta = &factor * &matrix[row][c];
                    matrix[r][c] = &matrix[r][c] - &delta;
                }
            }
        }
        pivots.push((row, col));
        row += 1;
    }
    pivots
}

/// Exact rank via full reduction.
pub fn rank(f: &LinearMap) -> usize {
    let mut m = f.matrix().clone();
    rref(&mut m).len()
}

/// A kernel with its inclusion and a retraction (retraction ∘ inclusion = id).
#[derive(Clone, Debug)]
pub struct Kernel {
    pub space: VectorSpace,
    pub inclusion: LinearMap,
    pub retraction: LinearMap,
}

/// Exact kernel of f, with basis labels `ker0..`.
pub fn kernel(f: &LinearMap) -> Kernel {
    let field = f.field();
    let cols = f.domain().dim();
    let mut m = f.matrix().clone();
    let pivots = rref(&mut m);
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let free_cols: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    let space = VectorSpace::standard(field, free_cols.len(), "ker");
    let inclusion = LinearMap::from_fn(space.clone(), f.domain().clone(), |r, c| {
        let free = free_cols[c];
        if r == free {
            FieldElement::one(field)
        } else if let Some(pi) = pivots.iter().position(|&(_, pc)| pc == r) {
            m[pi][free].neg()
        } else {
            FieldElement::zero(field)
        }
    });
    let retraction = LinearMap::from_fn(f.domain().clone(), space.clone(), |r, c| {
        if free_cols[r] == c {
            FieldElement::one(field)
        } else {
            FieldElement::zero(field)
        }
    });
    Kernel {
        space,
        inclusion,
        retraction,
    }
}

/// A cokernel with its projection and a section (projection ∘ section = id).
#[derive(Clone, Debug)]
pub struct Cokernel {
    pub space: VectorSpace,
    pub projection: LinearMap,
    pub section: LinearMap,
}

/// Exact cokernel of f, with basis labels `cok0..`.
///
/// Constructed by extending a basis of the image by standard basis vectors
/// (greedy, in order — deterministic) and inverting the assembled change of
/// basis; the projection is the quotient-coordinate block of that inverse
/// and the section is the chosen complement inclusion.
pub fn cokernel(f: &LinearMap) -> Cokernel {
    let field = f.field();
    let n = f.codomain().dim();

    // image basis: the original columns of f at pivot positions
    let mut reduced = f.matrix().clone();
    let pivots = rref(&mut reduced);
    let image_cols: Vec<Vec<FieldElement>> = pivots
        .iter()
        .map(|&(_, c)| (0..n).map(|r| f.matrix()[r][c].clone()).collect())
        .collect();
    let r = image_cols.len();

    // greedily extend by standard basis vectors to a basis of the codomain
    let mut columns: Vec<Vec<FieldElement>> = image_cols;
    let mut chosen_std = Vec::new();
    for k in 0..n {
        if columns.len() == n {
            break;
        }
        let mut e: Vec<FieldElement> = vec![FieldElement::zero(field); n];
        e[k] = FieldElement::one(field);
        let mut trial: Vec<Vec<FieldElement>> = columns.clone();
        trial.push(e.clone());
        // column-rank test on the trial set
        let mut probe: Vec<Vec<FieldElement>> = (0..n)
            .map(|row| trial.iter().map(|col| col[row].clone()).collect())
            .collect();
        if rref(&mut probe).len() == trial.len() {
            columns.push(e);
            chosen_std.push(k);
        }
    }
    let q = n - r;
    debug_assert_eq!(chosen_std.len(), q, "complement completion failed");

    let space = VectorSpace::standard(field, q, "cok");

    // invert the full change-of-basis matrix M = [image | complement]
    let m_full = LinearMap::from_fn(
        VectorSpace::standard(field, n, "tmp_dom"),
        VectorSpace::standard(field, n, "tmp_cod"),
        |row, col| columns[col][row].clone(),
    );
    let m_inv = invert(&m_full).expect("basis matrix is invertible by construction");

    let projection = LinearMap::from_fn(f.codomain().clone(), space.clone(), |row, col| {
        m_inv.matrix()[r + row][col].clone()
    });
    let section = LinearMap::from_fn(space.clone(), f.codomain().clone(), |row, col| {
        if chosen_std[col] == row {
            FieldElement::one(field)
        } else {
            FieldElement::zero(field)
        }
    });
    Cokernel {
        space,
        projection,
        section,
    }
}

/// Exact inverse of a square invertible map (Gauss–Jordan on [A | I]).
pub fn invert(f: &LinearMap) -> Result<LinearMap> {
    let n = f.domain().dim();
    if f.codomain().dim() != n {
        return Err(FinVectError::NotInvertible {
            rank: rank(f),
            dim: n.max(f.codomain().dim()),
        });
    }
    let field = f.field();
    let mut aug: Vec<Vec<FieldElement>> = (0..n)
        .map(|r| {
            let mut row = f.matrix()[r].clone();
            for c in 0..n {
                row.push(if r == c {
                    FieldElement::one(field)
                } else {
                    FieldElement::zero(field)
                });
            }
            row
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() != n || pivots.iter().any(|&(r, c)| r != c) {
        return Err(FinVectError::NotInvertible {
            rank: pivots.iter().filter(|&&(_, c)| c < n).count(),
            dim: n,
        });
    }
    let matrix = (0..n)
        .map(|r| aug[r][n..].to_vec())
        .collect::<Vec<Vec<FieldElement>>>();
    LinearMap::new(f.codomain().clone(), f.domain().clone(), matrix)
}

pub fn is_invertible(f: &LinearMap) -> bool {
    f.domain().dim() == f.codomain().dim() && rank(f) == f.domain().dim()
}

/// Solves a general finite linear system over the scalars: each row is
/// (coefficients over the unknowns, right-hand side). Returns one exact
/// solution if the system is consistent. Crate plumbing for lifting
/// problems; deterministic (free unknowns are set to zero).
pub(crate) fn solve_linear_system(
    rows: &[(Vec<FieldElement>, FieldElement)],
    field: Field,
    unknowns: usize,
) -> Option<Vec<FieldElement>> {
    let mut aug: Vec<Vec<FieldElement>> = rows
        .iter()
        .map(|(coeffs, rhs)| {
            assert_eq!(coeffs.len(), unknowns, "coefficient row length mismatch");
            let mut row = coeffs.clone();
            row.push(rhs.clone());
            row
        })
        .collect();
    let pivots = rref(&mut aug);
    // inconsistent iff a pivot lands in the rhs column
    if pivots.iter().any(|&(_, c)| c == unknowns) {
        return None;
    }
    let mut solution = vec![FieldElement::zero(field); unknowns];
    for &(r, c) in &pivots {
        solution[c] = aug[r][unknowns].clone();
    }
    Some(solution)
}
