//! Finite groupoids, functors between them, and natural transformations,
//! together with the standard constructors (deloopings, pair groupoids,
//! action groupoids, products, coproducts, discrete exponentials), skeleta,
//! orbit quotients by free actions, the three morphism-class predicates
//! (equivalence / isofibration / object-injectivity), and the set-level
//! pushout product.
//!
//! Everything is validated **at construction time** by exhaustive
//! enumeration: a malformed groupoid, functor, or transformation never
//! enters the system. Sizes in scope (a handful of objects, at most a few
//! hundred morphisms) make full law tables cheap.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

/// Errors raised by groupoid-layer constructions.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GrpdError {
    #[error("invalid group: {detail}")]
    InvalidGroup { detail: String },
    #[error("invalid groupoid: {detail}")]
    InvalidGroupoid { detail: String },
    #[error("invalid action: {detail}")]
    InvalidAction { detail: String },
    #[error("not a functor: {detail}")]
    InvalidFunctor { detail: String },
    #[error("not natural: {detail}")]
    InvalidTransformation { detail: String },
    #[error("morphisms are not composable: {second} after {first}")]
    NotComposable { first: String, second: String },
    #[error("exponential requires a discrete exponent: {reason}")]
    UnsupportedExponent { reason: String },
    #[error("action is not free on objects: element {element} fixes object {object}")]
    NonFreeAction { element: String, object: String },
    #[error("{detail}")]
    BadInput { detail: String },
}

pub type Result<T> = std::result::Result<T, GrpdError>;

// ---------------------------------------------------------------------------
// Finite groups
// ---------------------------------------------------------------------------

/// A finite group presented by its full multiplication table.
/// `mul[a][b]` is the product a·b; composition order matches "apply b
/// first", so deloopings compose morphisms by plain multiplication.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FinGroup {
    elements: Vec<String>,
    mul: Vec<Vec<usize>>,
    unit: usize,
    inv: Vec<usize>,
}

impl FinGroup {
    pub fn new(elements: Vec<String>, mul: Vec<Vec<usize>>, unit: usize) -> Result<Self> {
        let n = elements.len();
        if n == 0 {
            return Err(GrpdError::InvalidGroup {
                detail: "a group needs at least the unit element".into(),
            });
        }
        let mut seen = HashSet::new();
        for e in &elements {
            if !seen.insert(e.clone()) {
                return Err(GrpdError::InvalidGroup {
                    detail: format!("duplicate element name {e:?}"),
                });
            }
        }
        if mul.len() != n || mul.iter().any(|row| row.len() != n) {
            return Err(GrpdError::InvalidGroup {
                detail: format!("multiplication table must be {n}x{n}"),
            });
        }
        if mul.iter().flatten().any(|&v| v >= n) {
            return Err(GrpdError::InvalidGroup {
                detail: "multiplication table entry out of range".into(),
            });
        }
        if unit >= n {
            return Err(GrpdError::InvalidGroup {
                detail: "unit index out of range".into(),
            });
        }
        for g in 0..n {
            if mul[unit][g] != g || mul[g][unit] != g {
                return Err(GrpdError::InvalidGroup {
                    detail: format!("unit law fails at element {}", elements[g]),
                });
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(GrpdError::InvalidGroup {
                            detail: format!(
                                "associativity fails on triple ({}, {}, {})",
                                elements[a], elements[b], elements[c]
                            ),
                        });
                    }
                }
            }
        }
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| mul[a][b] == unit && mul[b][a] == unit) {
                Some(b) => inv[a] = b,
                None => {
                    return Err(GrpdError::InvalidGroup {
                        detail: format!("element {} has no inverse", elements[a]),
                    })
                }
            }
        }
        Ok(FinGroup {
            elements,
            mul,
            unit,
            inv,
        })
    }

    pub fn trivial() -> Self {
        FinGroup::new(vec!["e".into()], vec![vec![0]], 0).expect("trivial group is valid")
    }

    /// ℤ/n with elements named `0..n-1` and addition mod n.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0, "cyclic group order must be positive");
        let elements = (0..n).map(|k| k.to_string()).collect();
        let mul = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        FinGroup::new(elements, mul, 0).expect("cyclic table is valid")
    }

    /// The symmetric group on three letters, with elements named by their
    /// one-line notation and multiplication σ·τ = "apply τ first".
    pub fn symmetric_3() -> Self {
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [1, 0, 2],
            [2, 1, 0],
            [0, 2, 1],
            [1, 2, 0],
            [2, 0, 1],
        ];
        let name = |p: &[usize; 3]| format!("{}{}{}", p[0], p[1], p[2]);
        let elements: Vec<String> = perms.iter().map(name).collect();
        let index: HashMap<String, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        let mul = perms
            .iter()
            .map(|s| {
                perms
                    .iter()
                    .map(|t| {
                        let composed = [s[t[0]], s[t[1]], s[t[2]]];
                        index[&name(&composed)]
                    })
                    .collect()
            })
            .collect();
        FinGroup::new(elements, mul, 0).expect("symmetric group table is valid")
    }

    pub fn klein_four() -> Self {
        FinGroup::product(&FinGroup::cyclic(2), &FinGroup::cyclic(2))
    }

    pub fn product(g: &FinGroup, h: &FinGroup) -> Self {
        let (n, m) = (g.order(), h.order());
        let elements = (0..n)
            .flat_map(|a| (0..m).map(move |b| (a, b)))
            .map(|(a, b)| format!("({},{})", g.elements[a], h.elements[b]))
            .collect();
        let mul = (0..n * m)
            .map(|x| {
                let (a1, b1) = (x / m, x % m);
                (0..n * m)
                    .map(|y| {
                        let (a2, b2) = (y / m, y % m);
                        g.mul[a1][a2] * m + h.mul[b1][b2]
                    })
                    .collect()
            })
            .collect();
        FinGroup::new(elements, mul, g.unit * m + h.unit).expect("product table is valid")
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn element_name(&self, a: usize) -> &str {
        &self.elements[a]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// All group homomorphisms G → H, found by brute-force enumeration of
    /// the |H|^|G| candidate maps (orders in scope are ≤ 6).
    pub fn all_homs(g: &FinGroup, h: &FinGroup) -> Vec<Vec<usize>> {
        let n = g.order();
        let m = h.order();
        let total = m.checked_pow(n as u32).expect("hom search space fits");
        let mut homs = Vec::new();
        'candidate: for code in 0..total {
            let mut map = Vec::with_capacity(n);
            let mut rest = code;
            for _ in 0..n {
                map.push(rest % m);
                rest /= m;
            }
            if map[g.unit] != h.unit {
                continue;
            }
            for a in 0..n {
                for b in 0..n {
                    if map[g.mul[a][b]] != h.mul[map[a]][map[b]] {
                        continue 'candidate;
                    }
                }
            }
            homs.push(map);
        }
        homs
    }

    /// Checks that the listed element indices form a subgroup.
    pub fn is_subgroup(&self, elems: &[usize]) -> bool {
        let set: HashSet<usize> = elems.iter().copied().collect();
        set.contains(&self.unit)
            && elems
                .iter()
                .all(|&a| set.contains(&self.inv[a]) && elems.iter().all(|&b| set.contains(&self.mul[a][b])))
    }

    /// Left cosets of a subgroup, with deterministic first-in-order
    /// representatives and the index map element → coset.
    pub fn left_cosets(&self, subgroup: &[usize]) -> Result<Cosets> {
        if !self.is_subgroup(subgroup) {
            return Err(GrpdError::BadInput {
                detail: "left_cosets requires a subgroup".into(),
            });
        }
        let n = self.order();
        let mut of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut reps = Vec::new();
        for g in 0..n {
            if of[g] != usize::MAX {
                continue;
            }
            let k = classes.len();
            let mut class: Vec<usize> = subgroup.iter().map(|&h| self.mul[g][h]).collect();
            class.sort_unstable();
            class.dedup();
            for &x in &class {
                of[x] = k;
            }
            reps.push(class[0]);
            classes.push(class);
        }
        Ok(Cosets {
            classes,
            reps,
            of,
        })
    }

    /// The left-multiplication action of the group on its left cosets.
    pub fn coset_action(&self, subgroup: &[usize]) -> Result<(GroupAction, Cosets)> {
        let cosets = self.left_cosets(subgroup)?;
        let set: Vec<String> = cosets
            .reps
            .iter()
            .map(|&r| format!("[{}]", self.elements[r]))
            .collect();
        let act = (0..self.order())
            .map(|g| {
                cosets
                    .reps
                    .iter()
                    .map(|&r| cosets.of[self.mul[g][r]])
                    .collect()
            })
            .collect();
        let action = GroupAction::new(self.clone(), set, act)?;
        Ok((action, cosets))
    }
}

/// A coset decomposition with deterministic representatives.
#[derive(Clone, Debug)]
pub struct Cosets {
    pub classes: Vec<Vec<usize>>,
    /// First-in-order representative of each coset (a section of `of`).
    pub reps: Vec<usize>,
    /// Element index → coset index.
    pub of: Vec<usize>,
}

// ---------------------------------------------------------------------------
// Finite groupoids
// ---------------------------------------------------------------------------

/// One arrow of a finite groupoid.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Morphism {
    pub name: String,
    pub src: usize,
    pub dst: usize,
}

/// A finite groupoid with a full composition table. `compose(g, f)` is
/// g∘f, i.e. "apply f first".
#[derive(Clone, PartialEq, Eq)]
pub struct FinGroupoid {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    table: Vec<Vec<Option<usize>>>,
    inverses: Vec<usize>,
}

impl fmt::Debug for FinGroupoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FinGroupoid({} objects {:?}, {} morphisms)",
            self.objects.len(),
            self.objects,
            self.morphisms.len()
        )
    }
}

impl FinGroupoid {
    /// Validates every groupoid law by exhaustive enumeration.
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        table: Vec<Vec<Option<usize>>>,
        inverses: Vec<usize>,
    ) -> Result<Self> {
        let nobj = objects.len();
        let nmor = morphisms.len();
        let mut seen = HashSet::new();
        for o in &objects {
            if !seen.insert(o.clone()) {
                return Err(GrpdError::InvalidGroupoid {
                    detail: format!("duplicate object name {o:?}"),
                });
            }
        }
        let mut seen_m = HashSet::new();
        for m in &morphisms {
            if m.src >= nobj || m.dst >= nobj {
                return Err(GrpdError::InvalidGroupoid {
                    detail: format!("morphism {} has out-of-range endpoints", m.name),
                });
            }
            if !seen_m.insert(m.name.clone()) {
                return Err(GrpdError::InvalidGroupoid {
                    detail: format!("duplicate morphism name {:?}", m.name),
                });
            }
        }
        if identities.len() != nobj {
            return Err(GrpdError::InvalidGroupoid {
                detail: "one identity per object is required".into(),
            });
        }
        for (x, &i) in identities.iter().enumerate() {
            if i >= nmor || morphisms[i].src != x || morphisms[i].dst != x {
                return Err(GrpdError::InvalidGroupoid {
                    detail: format!("identity of object {} is not an endomorphism", objects[x]),
                });
            }
        }
        if table.len() != nmor || table.iter().any(|row| row.len() != nmor) {
            return Err(GrpdError::InvalidGroupoid {
                detail: format!("composition table must be {nmor}x{nmor}"),
            });
        }
        for g in 0..nmor {
            for f in 0..nmor {
                let composable = morphisms[f].dst == morphisms[g].src;
                match table[g][f] {
                    Some(gf) => {
                        if !composable {
                            return Err(GrpdError::InvalidGroupoid {
                                detail: format!(
                                    "table defines {}∘{} though they are not composable",
                                    morphisms[g].name, morphisms[f].name
                                ),
                            });
                        }
                        if gf >= nmor
                            || morphisms[gf].src != morphisms[f].src
                            || morphisms[gf].dst != morphisms[g].dst
                        {
                            return Err(GrpdError::InvalidGroupoid {
                                detail: format!(
                                    "composite {}∘{} has wrong endpoints",
                                    morphisms[g].name, morphisms[f].name
                                ),
                            });
                        }
                    }
                    None => {
                        if composable {
                            return Err(GrpdError::InvalidGroupoid {
                                detail: format!(
                                    "missing composite {}∘{}",
                                    morphisms[g].name, morphisms[f].name
                                ),
                            });
                        }
                    }
                }
            }
        }
        // unit laws
        for f in 0..nmor {
            let (s, d) = (morphisms[f].src, morphisms[f].dst);
            if table[f][identities[s]] != Some(f) || table[identities[d]][f] != Some(f) {
                return Err(GrpdError::InvalidGroupoid {
                    detail: format!("unit law fails at morphism {}", morphisms[f].name),
                });
            }
        }
        // associativity on all composable triples
        for f in 0..nmor {
            for g in 0..nmor {
                if morphisms[f].dst != morphisms[g].src {
                    continue;
                }
                let gf = table[g][f].unwrap();
                for h in 0..nmor {
                    if morphisms[g].dst != morphisms[h].src {
                        continue;
                    }
                    let hg = table[h][g].unwrap();
                    if table[h][gf] != table[hg][f] {
                        return Err(GrpdError::InvalidGroupoid {
                            detail: format!(
                                "associativity fails on ({}, {}, {})",
                                morphisms[h].name, morphisms[g].name, morphisms[f].name
                            ),
                        });
                    }
                }
            }
        }
        // inverse laws
        if inverses.len() != nmor {
            return Err(GrpdError::InvalidGroupoid {
                detail: "one inverse per morphism is required".into(),
            });
        }
        for f in 0..nmor {
            let i = inverses[f];
            if i >= nmor
                || morphisms[i].src != morphisms[f].dst
                || morphisms[i].dst != morphisms[f].src
            {
                return Err(GrpdError::InvalidGroupoid {
                    detail: format!("inverse of {} has wrong endpoints", morphisms[f].name),
                });
            }
            if table[i][f] != Some(identities[morphisms[f].src])
                || table[f][i] != Some(identities[morphisms[f].dst])
            {
                return Err(GrpdError::InvalidGroupoid {
                    detail: format!("inverse law fails at morphism {}", morphisms[f].name),
                });
            }
        }
        Ok(FinGroupoid {
            objects,
            morphisms,
            identities,
            table,
            inverses,
        })
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_name(&self, x: usize) -> &str {
        &self.objects[x]
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn morphism(&self, m: usize) -> &Morphism {
        &self.morphisms[m]
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn src(&self, m: usize) -> usize {
        self.morphisms[m].src
    }

    pub fn dst(&self, m: usize) -> usize {
        self.morphisms[m].dst
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identities[x]
    }

    pub fn inverse(&self, m: usize) -> usize {
        self.inverses[m]
    }

    /// g∘f (apply f first); errors when the endpoints do not match.
    pub fn compose(&self, g: usize, f: usize) -> Result<usize> {
        self.table[g][f].ok_or_else(|| GrpdError::NotComposable {
            first: self.morphisms[f].name.clone(),
            second: self.morphisms[g].name.clone(),
        })
    }

    /// All morphisms x → y, in morphism order.
    pub fn hom_set(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.morphisms.len())
            .filter(|&m| self.morphisms[m].src == x && self.morphisms[m].dst == y)
            .collect()
    }

    /// Partition of the object indices into connected components, ordered
    /// by first object.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.objects.len();
        let mut comp = vec![usize::MAX; n];
        let mut parts: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let k = parts.len();
            let mut part = Vec::new();
            let mut queue = VecDeque::from([start]);
            comp[start] = k;
            while let Some(x) = queue.pop_front() {
                part.push(x);
                for m in &self.morphisms {
                    for (a, b) in [(m.src, m.dst), (m.dst, m.src)] {
                        if a == x && comp[b] == usize::MAX {
                            comp[b] = k;
                            queue.push_back(b);
                        }
                    }
                }
            }
            part.sort_unstable();
            parts.push(part);
        }
        parts
    }
}

// ---------------------------------------------------------------------------
// Functors and natural transformations
// ---------------------------------------------------------------------------

/// A functor between finite groupoids, validated on construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupoidFunctor {
    source: FinGroupoid,
    target: FinGroupoid,
    object_map: Vec<usize>,
    morphism_map: Vec<usize>,
}

impl GroupoidFunctor {
    pub fn new(
        source: FinGroupoid,
        target: FinGroupoid,
        object_map: Vec<usize>,
        morphism_map: Vec<usize>,
    ) -> Result<Self> {
        if object_map.len() != source.object_count()
            || morphism_map.len() != source.morphism_count()
        {
            return Err(GrpdError::InvalidFunctor {
                detail: "object/morphism map lengths do not match the source".into(),
            });
        }
        if object_map.iter().any(|&x| x >= target.object_count())
            || morphism_map.iter().any(|&m| m >= target.morphism_count())
        {
            return Err(GrpdError::InvalidFunctor {
                detail: "object/morphism map value out of range".into(),
            });
        }
        for (m, &fm) in morphism_map.iter().enumerate() {
            if target.src(fm) != object_map[source.src(m)]
                || target.dst(fm) != object_map[source.dst(m)]
            {
                return Err(GrpdError::InvalidFunctor {
                    detail: format!(
                        "image of {} has wrong endpoints",
                        source.morphism(m).name
                    ),
                });
            }
        }
        for (x, &fx) in object_map.iter().enumerate() {
            if morphism_map[source.identity(x)] != target.identity(fx) {
                return Err(GrpdError::InvalidFunctor {
                    detail: format!("identity of {} is not preserved", source.object_name(x)),
                });
            }
        }
        for g in 0..source.morphism_count() {
            for f in 0..source.morphism_count() {
                if source.dst(f) != source.src(g) {
                    continue;
                }
                let gf = source.compose(g, f).expect("composable by check");
                let image = target
                    .compose(morphism_map[g], morphism_map[f])
                    .expect("images composable by endpoint check");
                if morphism_map[gf] != image {
                    return Err(GrpdError::InvalidFunctor {
                        detail: format!(
                            "composition not preserved on {}∘{}",
                            source.morphism(g).name,
                            source.morphism(f).name
                        ),
                    });
                }
            }
        }
        Ok(GroupoidFunctor {
            source,
            target,
            object_map,
            morphism_map,
        })
    }

    pub fn identity(x: &FinGroupoid) -> Self {
        GroupoidFunctor {
            source: x.clone(),
            target: x.clone(),
            object_map: (0..x.object_count()).collect(),
            morphism_map: (0..x.morphism_count()).collect(),
        }
    }

    pub fn compose(g: &GroupoidFunctor, f: &GroupoidFunctor) -> Result<GroupoidFunctor> {
        if f.target != g.source {
            return Err(GrpdError::InvalidFunctor {
                detail: "functor composition requires matching middle groupoid".into(),
            });
        }
        Ok(GroupoidFunctor {
            source: f.source.clone(),
            target: g.target.clone(),
            object_map: f.object_map.iter().map(|&x| g.object_map[x]).collect(),
            morphism_map: f.morphism_map.iter().map(|&m| g.morphism_map[m]).collect(),
        })
    }

    pub fn source(&self) -> &FinGroupoid {
        &self.source
    }

    pub fn target(&self) -> &FinGroupoid {
        &self.target
    }

    pub fn on_object(&self, x: usize) -> usize {
        self.object_map[x]
    }

    pub fn on_morphism(&self, m: usize) -> usize {
        self.morphism_map[m]
    }

    pub fn object_map(&self) -> &[usize] {
        &self.object_map
    }

    pub fn morphism_map(&self) -> &[usize] {
        &self.morphism_map
    }
}

/// The unique functor to the terminal groupoid.
pub fn terminal_functor(x: &FinGroupoid) -> GroupoidFunctor {
    let pt = terminal();
    GroupoidFunctor::new(
        x.clone(),
        pt,
        vec![0; x.object_count()],
        vec![0; x.morphism_count()],
    )
    .expect("terminal functor is always valid")
}

/// The functor collapsing everything onto one object's identity.
pub fn constant_functor(x: &FinGroupoid, y: &FinGroupoid, at: usize) -> Result<GroupoidFunctor> {
    if at >= y.object_count() {
        return Err(GrpdError::BadInput {
            detail: "constant functor object out of range".into(),
        });
    }
    GroupoidFunctor::new(
        x.clone(),
        y.clone(),
        vec![at; x.object_count()],
        vec![y.identity(at); x.morphism_count()],
    )
}

/// A natural transformation between parallel functors, validated on
/// construction by enumerating every naturality square.
#[derive(Clone, Debug)]
pub struct NaturalTransformation {
    pub source: GroupoidFunctor,
    pub target: GroupoidFunctor,
    /// components[x]: source(x) → target(x) in the common target groupoid.
    pub components: Vec<usize>,
}

impl NaturalTransformation {
    pub fn new(
        source: GroupoidFunctor,
        target: GroupoidFunctor,
        components: Vec<usize>,
    ) -> Result<Self> {
        if source.source != target.source || source.target != target.target {
            return Err(GrpdError::InvalidTransformation {
                detail: "functors are not parallel".into(),
            });
        }
        let base = &source.source;
        let ambient = &source.target;
        if components.len() != base.object_count() {
            return Err(GrpdError::InvalidTransformation {
                detail: "one component per object is required".into(),
            });
        }
        for (x, &c) in components.iter().enumerate() {
            if c >= ambient.morphism_count()
                || ambient.src(c) != source.on_object(x)
                || ambient.dst(c) != target.on_object(x)
            {
                return Err(GrpdError::InvalidTransformation {
                    detail: format!("component at {} has wrong endpoints", base.object_name(x)),
                });
            }
        }
        for m in 0..base.morphism_count() {
            let (x, y) = (base.src(m), base.dst(m));
            let left = ambient.compose(components[y], source.on_morphism(m))?;
            let right = ambient.compose(target.on_morphism(m), components[x])?;
            if left != right {
                return Err(GrpdError::InvalidTransformation {
                    detail: format!(
                        "naturality square fails at morphism {}",
                        base.morphism(m).name
                    ),
                });
            }
        }
        Ok(NaturalTransformation {
            source,
            target,
            components,
        })
    }
}

// ---------------------------------------------------------------------------
// Constructors
// ---------------------------------------------------------------------------

/// The one-object groupoid of a group; composition is group multiplication.
pub fn delooping(group: &FinGroup) -> FinGroupoid {
    let n = group.order();
    let morphisms = (0..n)
        .map(|g| Morphism {
            name: group.element_name(g).to_string(),
            src: 0,
            dst: 0,
        })
        .collect();
    let table = (0..n)
        .map(|g| (0..n).map(|f| Some(group.mul(g, f))).collect())
        .collect();
    let inverses = (0..n).map(|g| group.inv(g)).collect();
    FinGroupoid::new(vec!["•".into()], morphisms, vec![group.unit()], table, inverses)
        .expect("delooping of a valid group is a valid groupoid")
}

/// The contractible groupoid on the elements of a group (a pair groupoid),
/// together with the quotient functor to the delooping sending the unique
/// morphism g → g′ to g′·g⁻¹.
pub fn e_groupoid(group: &FinGroup) -> (FinGroupoid, GroupoidFunctor) {
    let n = group.order();
    let groupoid = codiscrete(group.elements());
    let bg = delooping(group);
    // morphism index of a → b in codiscrete order is a·n + b
    let morphism_map = (0..n * n)
        .map(|m| {
            let (a, b) = (m / n, m % n);
            group.mul(b, group.inv(a))
        })
        .collect();
    let q = GroupoidFunctor::new(groupoid.clone(), bg, vec![0; n], morphism_map)
        .expect("quotient to the delooping is functorial");
    (groupoid, q)
}

/// The pair groupoid on a finite set: exactly one morphism between each
/// ordered pair of objects. Morphism a → b sits at index a·n + b.
pub fn codiscrete(labels: &[String]) -> FinGroupoid {
    let n = labels.len();
    let morphisms = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .map(|(a, b)| Morphism {
            name: format!("{}→{}", labels[a], labels[b]),
            src: a,
            dst: b,
        })
        .collect();
    let identities = (0..n).map(|a| a * n + a).collect();
    let table = (0..n * n)
        .map(|g| {
            let (gs, gd) = (g / n, g % n);
            (0..n * n)
                .map(|f| {
                    let (fs, fd) = (f / n, f % n);
                    (fd == gs).then_some(fs * n + gd)
                })
                .collect()
        })
        .collect();
    let inverses = (0..n * n).map(|m| (m % n) * n + m / n).collect();
    FinGroupoid::new(labels.to_vec(), morphisms, identities, table, inverses)
        .expect("pair groupoid is valid")
}

/// The discrete groupoid on a finite set (identities only).
pub fn discrete(labels: &[String]) -> FinGroupoid {
    let n = labels.len();
    let morphisms = (0..n)
        .map(|a| Morphism {
            name: format!("id_{}", labels[a]),
            src: a,
            dst: a,
        })
        .collect();
    let identities = (0..n).collect();
    let table = (0..n)
        .map(|g| (0..n).map(|f| (f == g).then_some(g)).collect())
        .collect();
    let inverses = (0..n).collect();
    FinGroupoid::new(labels.to_vec(), morphisms, identities, table, inverses)
        .expect("discrete groupoid is valid")
}

/// The terminal groupoid (one object, one morphism).
pub fn terminal() -> FinGroupoid {
    discrete(&["pt".to_string()])
}

/// A group acting on a finite set; `act[g][w] = g·w`, validated.
#[derive(Clone, Debug)]
pub struct GroupAction {
    pub group: FinGroup,
    pub set: Vec<String>,
    pub act: Vec<Vec<usize>>,
}

impl GroupAction {
    pub fn new(group: FinGroup, set: Vec<String>, act: Vec<Vec<usize>>) -> Result<Self> {
        let n = group.order();
        let w = set.len();
        if act.len() != n || act.iter().any(|row| row.len() != w) {
            return Err(GrpdError::InvalidAction {
                detail: format!("action table must be {n}x{w}"),
            });
        }
        if act.iter().flatten().any(|&v| v >= w) {
            return Err(GrpdError::InvalidAction {
                detail: "action table entry out of range".into(),
            });
        }
        for x in 0..w {
            if act[group.unit()][x] != x {
                return Err(GrpdError::InvalidAction {
                    detail: format!("unit does not act trivially on {}", set[x]),
                });
            }
        }
        for g in 0..n {
            for h in 0..n {
                for x in 0..w {
                    if act[group.mul(g, h)][x] != act[g][act[h][x]] {
                        return Err(GrpdError::InvalidAction {
                            detail: format!(
                                "action law fails on ({}, {}, {})",
                                group.element_name(g),
                                group.element_name(h),
                                set[x]
                            ),
                        });
                    }
                }
            }
        }
        Ok(GroupAction { group, set, act })
    }

    /// The trivial action on a set.
    pub fn trivial(group: FinGroup, set: Vec<String>) -> Self {
        let act = vec![(0..set.len()).collect(); group.order()];
        GroupAction::new(group, set, act).expect("trivial action is valid")
    }

    /// Left translation: the group acting on itself.
    pub fn translation(group: &FinGroup) -> Self {
        let act = (0..group.order())
            .map(|g| (0..group.order()).map(|x| group.mul(g, x)).collect())
            .collect();
        GroupAction::new(group.clone(), group.elements().to_vec(), act)
            .expect("translation action is valid")
    }
}

/// The action groupoid of a set-level group action, with its canonical
/// isofibration to the delooping. Morphism (g, w): w → g·w sits at index
/// g·|W| + w.
pub struct ActionGroupoid {
    pub groupoid: FinGroupoid,
    pub to_delooping: GroupoidFunctor,
}

pub fn action_groupoid(action: &GroupAction) -> ActionGroupoid {
    let n = action.group.order();
    let w = action.set.len();
    let morphisms = (0..n)
        .flat_map(|g| (0..w).map(move |x| (g, x)))
        .map(|(g, x)| Morphism {
            name: format!("({},{})", action.group.element_name(g), action.set[x]),
            src: x,
            dst: action.act[g][x],
        })
        .collect();
    let identities = (0..w).map(|x| action.group.unit() * w + x).collect();
    let table = (0..n * w)
        .map(|m2| {
            let (g2, x2) = (m2 / w, m2 % w);
            (0..n * w)
                .map(|m1| {
                    let (g1, x1) = (m1 / w, m1 % w);
                    (action.act[g1][x1] == x2)
                        .then(|| action.group.mul(g2, g1) * w + x1)
                })
                .collect()
        })
        .collect();
    let inverses = (0..n * w)
        .map(|m| {
            let (g, x) = (m / w, m % w);
            action.group.inv(g) * w + action.act[g][x]
        })
        .collect();
    let groupoid = FinGroupoid::new(action.set.clone(), morphisms, identities, table, inverses)
        .expect("action groupoid is valid when the action laws hold");
    let bg = delooping(&action.group);
    let to_delooping = GroupoidFunctor::new(
        groupoid.clone(),
        bg,
        vec![0; w],
        (0..n * w).map(|m| m / w).collect(),
    )
    .expect("projection to the delooping is functorial");
    ActionGroupoid {
        groupoid,
        to_delooping,
    }
}

/// Binary product with projections and fixed index layout:
/// object (x, y) = x·|Y_obj| + y, morphism (f, g) = f·|Y_mor| + g.
pub struct Product {
    pub groupoid: FinGroupoid,
    pub proj1: GroupoidFunctor,
    pub proj2: GroupoidFunctor,
}

impl Product {
    pub fn object_index(&self, x: usize, y: usize) -> usize {
        x * self.proj2.target().object_count() + y
    }

    pub fn morphism_index(&self, f: usize, g: usize) -> usize {
        f * self.proj2.target().morphism_count() + g
    }
}

pub fn product(x: &FinGroupoid, y: &FinGroupoid) -> Product {
    let (no_y, nm_y) = (y.object_count(), y.morphism_count());
    let objects = (0..x.object_count())
        .flat_map(|a| (0..no_y).map(move |b| (a, b)))
        .map(|(a, b)| format!("({},{})", x.object_name(a), y.object_name(b)))
        .collect();
    let morphisms = (0..x.morphism_count())
        .flat_map(|f| (0..nm_y).map(move |g| (f, g)))
        .map(|(f, g)| Morphism {
            name: format!("({},{})", x.morphism(f).name, y.morphism(g).name),
            src: x.src(f) * no_y + y.src(g),
            dst: x.dst(f) * no_y + y.dst(g),
        })
        .collect();
    let identities = (0..x.object_count() * no_y)
        .map(|o| x.identity(o / no_y) * nm_y + y.identity(o % no_y))
        .collect();
    let total = x.morphism_count() * nm_y;
    let table = (0..total)
        .map(|m2| {
            let (f2, g2) = (m2 / nm_y, m2 % nm_y);
            (0..total)
                .map(|m1| {
                    let (f1, g1) = (m1 / nm_y, m1 % nm_y);
                    match (x.compose(f2, f1), y.compose(g2, g1)) {
                        (Ok(f), Ok(g)) => Some(f * nm_y + g),
                        _ => None,
                    }
                })
                .collect()
        })
        .collect();
    let inverses = (0..total)
        .map(|m| x.inverse(m / nm_y) * nm_y + y.inverse(m % nm_y))
        .collect();
    let groupoid = FinGroupoid::new(objects, morphisms, identities, table, inverses)
        .expect("product groupoid is valid");
    let proj1 = GroupoidFunctor::new(
        groupoid.clone(),
        x.clone(),
        (0..groupoid.object_count()).map(|o| o / no_y).collect(),
        (0..total).map(|m| m / nm_y).collect(),
    )
    .expect("first projection is functorial");
    let proj2 = GroupoidFunctor::new(
        groupoid.clone(),
        y.clone(),
        (0..groupoid.object_count()).map(|o| o % no_y).collect(),
        (0..total).map(|m| m % nm_y).collect(),
    )
    .expect("second projection is functorial");
    Product {
        groupoid,
        proj1,
        proj2,
    }
}

/// The product of two functors, X×Z → Y×W in the `product` index layout.
pub fn product_functor(f: &GroupoidFunctor, g: &GroupoidFunctor) -> GroupoidFunctor {
    let src = product(f.source(), g.source());
    let dst = product(f.target(), g.target());
    let no_g = g.source().object_count();
    let nm_g = g.source().morphism_count();
    let object_map = (0..src.groupoid.object_count())
        .map(|o| dst.object_index(f.on_object(o / no_g), g.on_object(o % no_g)))
        .collect();
    let morphism_map = (0..src.groupoid.morphism_count())
        .map(|m| dst.morphism_index(f.on_morphism(m / nm_g), g.on_morphism(m % nm_g)))
        .collect();
    GroupoidFunctor::new(src.groupoid, dst.groupoid, object_map, morphism_map)
        .expect("product of functors is functorial")
}

/// Finite coproduct with coprojections; part k's names get the prefix `k:`.
pub struct Coproduct {
    pub groupoid: FinGroupoid,
    pub injections: Vec<GroupoidFunctor>,
    pub object_offsets: Vec<usize>,
    pub morphism_offsets: Vec<usize>,
}

pub fn coproduct(parts: &[FinGroupoid]) -> Coproduct {
    let mut objects = Vec::new();
    let mut morphisms: Vec<Morphism> = Vec::new();
    let mut identities = Vec::new();
    let mut object_offsets = Vec::new();
    let mut morphism_offsets = Vec::new();
    for (k, part) in parts.iter().enumerate() {
        object_offsets.push(objects.len());
        morphism_offsets.push(morphisms.len());
        let oo = objects.len();
        let mo = morphisms.len();
        for name in part.objects() {
            objects.push(format!("{k}:{name}"));
        }
        for m in part.morphisms() {
            morphisms.push(Morphism {
                name: format!("{k}:{}", m.name),
                src: oo + m.src,
                dst: oo + m.dst,
            });
        }
        for x in 0..part.object_count() {
            identities.push(mo + part.identity(x));
        }
    }
    let part_of_morphism: Vec<usize> = parts
        .iter()
        .enumerate()
        .flat_map(|(k, p)| std::iter::repeat(k).take(p.morphism_count()))
        .collect();
    let total = morphisms.len();
    let table = (0..total)
        .map(|g| {
            (0..total)
                .map(|f| {
                    let k = part_of_morphism[g];
                    if part_of_morphism[f] != k {
                        return None;
                    }
                    let off = morphism_offsets[k];
                    parts[k].compose(g - off, f - off).ok().map(|c| off + c)
                })
                .collect()
        })
        .collect();
    let inverses = (0..total)
        .map(|m| {
            let k = part_of_morphism[m];
            morphism_offsets[k] + parts[k].inverse(m - morphism_offsets[k])
        })
        .collect();
    let groupoid = FinGroupoid::new(objects, morphisms, identities, table, inverses)
        .expect("coproduct groupoid is valid");
    let injections = parts
        .iter()
        .enumerate()
        .map(|(k, part)| {
            GroupoidFunctor::new(
                part.clone(),
                groupoid.clone(),
                (0..part.object_count()).map(|x| object_offsets[k] + x).collect(),
                (0..part.morphism_count())
                    .map(|m| morphism_offsets[k] + m)
                    .collect(),
            )
            .expect("coprojection is functorial")
        })
        .collect();
    Coproduct {
        groupoid,
        injections,
        object_offsets,
        morphism_offsets,
    }
}

/// The exponential 𝒵^Y for a **discrete** exponent Y: the |Y|-fold product,
/// with objects the functions Y → obj(𝒵) and one evaluation functor per
/// point of Y. Objects and morphisms are indexed lexicographically, first
/// coordinate major.
pub struct Exponential {
    pub groupoid: FinGroupoid,
    pub evaluations: Vec<GroupoidFunctor>,
    exponent_size: usize,
    base_objects: usize,
    base_morphisms: usize,
}

impl Exponential {
    /// Object index of a tuple (z_{y_0}, …, z_{y_{k−1}}).
    pub fn object_index(&self, tuple: &[usize]) -> usize {
        assert_eq!(tuple.len(), self.exponent_size);
        tuple.iter().fold(0, |acc, &z| acc * self.base_objects + z)
    }

    /// Morphism index of a tuple of base morphisms.
    pub fn morphism_index(&self, tuple: &[usize]) -> usize {
        assert_eq!(tuple.len(), self.exponent_size);
        tuple
            .iter()
            .fold(0, |acc, &m| acc * self.base_morphisms + m)
    }

    pub fn object_tuple(&self, mut index: usize) -> Vec<usize> {
        let mut tuple = vec![0; self.exponent_size];
        for slot in tuple.iter_mut().rev() {
            *slot = index % self.base_objects;
            index /= self.base_objects;
        }
        tuple
    }

    pub fn morphism_tuple(&self, mut index: usize) -> Vec<usize> {
        let mut tuple = vec![0; self.exponent_size];
        for slot in tuple.iter_mut().rev() {
            *slot = index % self.base_morphisms;
            index /= self.base_morphisms;
        }
        tuple
    }
}

pub fn exponential(z: &FinGroupoid, exponent: &FinGroupoid) -> Result<Exponential> {
    if exponent.morphism_count() != exponent.object_count() {
        return Err(GrpdError::UnsupportedExponent {
            reason: format!(
                "exponent has {} morphisms on {} objects; only discrete exponents are supported",
                exponent.morphism_count(),
                exponent.object_count()
            ),
        });
    }
    let k = exponent.object_count();
    let (no, nm) = (z.object_count(), z.morphism_count());
    let obj_total = no.checked_pow(k as u32).ok_or_else(|| GrpdError::BadInput {
        detail: "exponential object count overflows".into(),
    })?;
    let mor_total = nm.checked_pow(k as u32).ok_or_else(|| GrpdError::BadInput {
        detail: "exponential morphism count overflows".into(),
    })?;
    let decode = |mut idx: usize, base: usize| -> Vec<usize> {
        let mut t = vec![0; k];
        for slot in t.iter_mut().rev() {
            *slot = idx % base;
            idx /= base;
        }
        t
    };
    let encode = |t: &[usize], base: usize| t.iter().fold(0, |acc, &v| acc * base + v);
    let tuple_name = |t: &[usize], names: &dyn Fn(usize) -> String| {
        let parts: Vec<String> = t
            .iter()
            .enumerate()
            .map(|(i, &v)| format!("{}↦{}", exponent.object_name(i), names(v)))
            .collect();
        format!("[{}]", parts.join(","))
    };
    let objects = (0..obj_total)
        .map(|o| tuple_name(&decode(o, no), &|v| z.object_name(v).to_string()))
        .collect();
    let morphisms = (0..mor_total)
        .map(|m| {
            let t = decode(m, nm);
            Morphism {
                name: tuple_name(&t, &|v| z.morphism(v).name.clone()),
                src: encode(&t.iter().map(|&f| z.src(f)).collect::<Vec<_>>(), no),
                dst: encode(&t.iter().map(|&f| z.dst(f)).collect::<Vec<_>>(), no),
            }
        })
        .collect();
    let identities = (0..obj_total)
        .map(|o| {
            let t = decode(o, no);
            encode(&t.iter().map(|&x| z.identity(x)).collect::<Vec<_>>(), nm)
        })
        .collect();
    let table = (0..mor_total)
        .map(|g| {
            let tg = decode(g, nm);
            (0..mor_total)
                .map(|f| {
                    let tf = decode(f, nm);
                    let mut out = Vec::with_capacity(k);
                    for i in 0..k {
                        match z.compose(tg[i], tf[i]) {
                            Ok(c) => out.push(c),
                            Err(_) => return None,
                        }
                    }
                    Some(encode(&out, nm))
                })
                .collect()
        })
        .collect();
    let inverses = (0..mor_total)
        .map(|m| {
            let t = decode(m, nm);
            encode(&t.iter().map(|&f| z.inverse(f)).collect::<Vec<_>>(), nm)
        })
        .collect();
    let groupoid = FinGroupoid::new(objects, morphisms, identities, table, inverses)
        .expect("discrete exponential is valid");
    let evaluations = (0..k)
        .map(|i| {
            GroupoidFunctor::new(
                groupoid.clone(),
                z.clone(),
                (0..obj_total).map(|o| decode(o, no)[i]).collect(),
                (0..mor_total).map(|m| decode(m, nm)[i]).collect(),
            )
            .expect("evaluation is functorial")
        })
        .collect();
    Ok(Exponential {
        groupoid,
        evaluations,
        exponent_size: k,
        base_objects: no,
        base_morphisms: nm,
    })
}

/// The full subgroupoid on a subset of objects, with its inclusion.
pub fn full_subgroupoid(x: &FinGroupoid, objects: &[usize]) -> Result<(FinGroupoid, GroupoidFunctor)> {
    let mut obj_index = HashMap::new();
    for (new, &old) in objects.iter().enumerate() {
        if old >= x.object_count() || obj_index.insert(old, new).is_some() {
            return Err(GrpdError::BadInput {
                detail: "full_subgroupoid requires distinct in-range objects".into(),
            });
        }
    }
    let kept: Vec<usize> = (0..x.morphism_count())
        .filter(|&m| obj_index.contains_key(&x.src(m)) && obj_index.contains_key(&x.dst(m)))
        .collect();
    let mor_index: HashMap<usize, usize> = kept.iter().enumerate().map(|(n, &o)| (o, n)).collect();
    let morphisms = kept
        .iter()
        .map(|&m| Morphism {
            name: x.morphism(m).name.clone(),
            src: obj_index[&x.src(m)],
            dst: obj_index[&x.dst(m)],
        })
        .collect();
    let identities = objects.iter().map(|&o| mor_index[&x.identity(o)]).collect();
    let table = kept
        .iter()
        .map(|&g| {
            kept.iter()
                .map(|&f| x.compose(g, f).ok().map(|c| mor_index[&c]))
                .collect()
        })
        .collect();
    let inverses = kept.iter().map(|&m| mor_index[&x.inverse(m)]).collect();
    let sub = FinGroupoid::new(
        objects.iter().map(|&o| x.object_name(o).to_string()).collect(),
        morphisms,
        identities,
        table,
        inverses,
    )?;
    let inclusion = GroupoidFunctor::new(sub.clone(), x.clone(), objects.to_vec(), kept)?;
    Ok((sub, inclusion))
}

// ---------------------------------------------------------------------------
// Skeleta
// ---------------------------------------------------------------------------

/// A deformation retraction onto a skeleton: the skeleton (a disjoint union
/// of one-object groupoids), inclusion ι, retraction p with p∘ι = id
/// strictly, and the natural isomorphism γ: ι∘p ⇒ id.
pub struct Skeletization {
    pub skeleton: FinGroupoid,
    pub iota: GroupoidFunctor,
    pub p: GroupoidFunctor,
    pub gamma: NaturalTransformation,
    /// Chosen basepoint object (in the ambient groupoid) per component.
    pub basepoints: Vec<usize>,
    /// The connecting morphism γ_x: basepoint(component of x) → x.
    pub gamma_morphisms: Vec<usize>,
}

/// Skeletize by choosing first-in-order basepoints and first-in-order
/// connecting isomorphisms (identity at each basepoint). The construction
/// is choice-dependent; fixing the choices keeps every downstream witness
/// reproducible.
pub fn skeletize(x: &FinGroupoid) -> Skeletization {
    let components = x.connected_components();
    let basepoints: Vec<usize> = components.iter().map(|c| c[0]).collect();
    let mut component_of = vec![usize::MAX; x.object_count()];
    for (k, c) in components.iter().enumerate() {
        for &o in c {
            component_of[o] = k;
        }
    }
    let gamma_morphisms: Vec<usize> = (0..x.object_count())
        .map(|o| {
            let b = basepoints[component_of[o]];
            if o == b {
                x.identity(o)
            } else {
                *x.hom_set(b, o)
                    .first()
                    .expect("objects in one component are connected")
            }
        })
        .collect();

    let (skeleton, iota) = full_subgroupoid(x, &basepoints)
        .expect("basepoints are distinct objects of the ambient groupoid");

    // p: object x ↦ its basepoint; morphism f: x→x′ ↦ γ_{x′}⁻¹ ∘ f ∘ γ_x
    let skl_obj_of = |o: usize| component_of[o];
    let mor_to_skl: Vec<usize> = (0..x.morphism_count())
        .map(|f| {
            let (s, d) = (x.src(f), x.dst(f));
            let conj = x
                .compose(
                    x.inverse(gamma_morphisms[d]),
                    x.compose(f, gamma_morphisms[s]).expect("composable"),
                )
                .expect("composable");
            iota.morphism_map()
                .iter()
                .position(|&m| m == conj)
                .expect("conjugate lands in the full subgroupoid on basepoints")
        })
        .collect();
    let p = GroupoidFunctor::new(
        x.clone(),
        skeleton.clone(),
        (0..x.object_count()).map(skl_obj_of).collect(),
        mor_to_skl,
    )
    .expect("retraction onto the skeleton is functorial");

    let iota_p = GroupoidFunctor::compose(&iota, &p).expect("composable functors");
    let gamma = NaturalTransformation::new(
        iota_p,
        GroupoidFunctor::identity(x),
        gamma_morphisms.clone(),
    )
    .expect("connecting isomorphisms are natural");

    Skeletization {
        skeleton,
        iota,
        p,
        gamma,
        basepoints,
        gamma_morphisms,
    }
}

// ---------------------------------------------------------------------------
// Morphism-class predicates
// ---------------------------------------------------------------------------

/// Essentially surjective and fully faithful, checked by enumeration.
pub fn is_equivalence(f: &GroupoidFunctor) -> bool {
    let (x, y) = (f.source(), f.target());
    // essential surjectivity: every target object connects to an image object
    let image: HashSet<usize> = f.object_map().iter().copied().collect();
    for t in 0..y.object_count() {
        let hit = image
            .iter()
            .any(|&s| !y.hom_set(s, t).is_empty());
        if !hit {
            return false;
        }
    }
    // full faithfulness: bijective on every hom-set
    for a in 0..x.object_count() {
        for b in 0..x.object_count() {
            let dom = x.hom_set(a, b);
            let cod = y.hom_set(f.on_object(a), f.on_object(b));
            let images: HashSet<usize> = dom.iter().map(|&m| f.on_morphism(m)).collect();
            if images.len() != dom.len() || images.len() != cod.len() {
                return false;
            }
        }
    }
    true
}

/// The morphism-lifting property: every morphism of the target starting at
/// an image object lifts, with prescribed domain, through the functor.
pub fn is_isofibration(f: &GroupoidFunctor) -> bool {
    let (x, y) = (f.source(), f.target());
    for w1 in 0..x.object_count() {
        for phi in 0..y.morphism_count() {
            if y.src(phi) != f.on_object(w1) {
                continue;
            }
            let lift_exists = (0..x.morphism_count())
                .any(|m| x.src(m) == w1 && f.on_morphism(m) == phi);
            if !lift_exists {
                return false;
            }
        }
    }
    true
}

/// Injectivity on objects.
pub fn is_cofibration(f: &GroupoidFunctor) -> bool {
    let mut seen = HashSet::new();
    f.object_map().iter().all(|&o| seen.insert(o))
}

pub fn is_acyclic_fibration(f: &GroupoidFunctor) -> bool {
    is_isofibration(f) && is_equivalence(f)
}

pub fn is_acyclic_cofibration(f: &GroupoidFunctor) -> bool {
    is_cofibration(f) && is_equivalence(f)
}

// ---------------------------------------------------------------------------
// Group actions on groupoids and orbit quotients
// ---------------------------------------------------------------------------

/// A group acting on a groupoid by automorphism functors, validated:
/// the unit acts as the identity functor and the action is multiplicative.
#[derive(Clone)]
pub struct GroupoidAction {
    pub group: FinGroup,
    pub groupoid: FinGroupoid,
    pub functors: Vec<GroupoidFunctor>,
}

impl GroupoidAction {
    pub fn new(group: FinGroup, groupoid: FinGroupoid, functors: Vec<GroupoidFunctor>) -> Result<Self> {
        if functors.len() != group.order() {
            return Err(GrpdError::InvalidAction {
                detail: "one functor per group element is required".into(),
            });
        }
        for f in &functors {
            if f.source() != &groupoid || f.target() != &groupoid {
                return Err(GrpdError::InvalidAction {
                    detail: "action functors must be endofunctors of the acted groupoid".into(),
                });
            }
        }
        let e = group.unit();
        if functors[e].object_map() != (0..groupoid.object_count()).collect::<Vec<_>>().as_slice()
            || functors[e].morphism_map()
                != (0..groupoid.morphism_count()).collect::<Vec<_>>().as_slice()
        {
            return Err(GrpdError::InvalidAction {
                detail: "the unit must act as the identity functor".into(),
            });
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                let gh = group.mul(g, h);
                let composed = GroupoidFunctor::compose(&functors[g], &functors[h])?;
                if composed.object_map() != functors[gh].object_map()
                    || composed.morphism_map() != functors[gh].morphism_map()
                {
                    return Err(GrpdError::InvalidAction {
                        detail: format!(
                            "action is not multiplicative on ({}, {})",
                            group.element_name(g),
                            group.element_name(h)
                        ),
                    });
                }
            }
        }
        Ok(GroupoidAction {
            group,
            groupoid,
            functors,
        })
    }

    /// The canonical free action of G on its contractible groupoid:
    /// g sends the object x to x·g⁻¹ (and morphisms accordingly).
    pub fn right_inverse_translation(group: &FinGroup) -> (Self, GroupoidFunctor) {
        let (eg, q) = e_groupoid(group);
        let n = group.order();
        let functors = (0..n)
            .map(|g| {
                let object_map: Vec<usize> =
                    (0..n).map(|x| group.mul(x, group.inv(g))).collect();
                let morphism_map = (0..n * n)
                    .map(|m| {
                        let (a, b) = (m / n, m % n);
                        object_map[a] * n + object_map[b]
                    })
                    .collect();
                GroupoidFunctor::new(eg.clone(), eg.clone(), object_map, morphism_map)
                    .expect("translation is functorial")
            })
            .collect();
        (
            GroupoidAction::new(group.clone(), eg, functors)
                .expect("right-inverse translation is a valid action"),
            q,
        )
    }
}

/// An orbit quotient: the quotient groupoid and the projection functor
/// (the colimiting cocone of the action diagram).
pub struct OrbitQuotient {
    pub groupoid: FinGroupoid,
    pub q: GroupoidFunctor,
    pub object_orbit: Vec<usize>,
    pub morphism_orbit: Vec<usize>,
}

/// The quotient of a groupoid by a group action that is **free on
/// objects**. Objects and morphisms of the quotient are orbits; composition
/// is computed by moving representatives with the unique matching group
/// element (uniqueness is exactly freeness).
pub fn orbit_groupoid(action: &GroupoidAction) -> Result<OrbitQuotient> {
    let x = &action.groupoid;
    let group = &action.group;
    for g in 0..group.order() {
        if g == group.unit() {
            continue;
        }
        for o in 0..x.object_count() {
            if action.functors[g].on_object(o) == o {
                return Err(GrpdError::NonFreeAction {
                    element: group.element_name(g).to_string(),
                    object: x.object_name(o).to_string(),
                });
            }
        }
    }

    let orbit_partition = |n: usize, act: &dyn Fn(usize, usize) -> usize| -> (Vec<usize>, Vec<usize>) {
        // returns (orbit index per element, representative per orbit)
        let mut orbit = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for start in 0..n {
            if orbit[start] != usize::MAX {
                continue;
            }
            let k = reps.len();
            reps.push(start);
            for g in 0..group.order() {
                orbit[act(g, start)] = k;
            }
        }
        (orbit, reps)
    };

    let (object_orbit, object_reps) = orbit_partition(x.object_count(), &|g, o| {
        action.functors[g].on_object(o)
    });
    let (morphism_orbit, morphism_reps) = orbit_partition(x.morphism_count(), &|g, m| {
        action.functors[g].on_morphism(m)
    });

    let objects: Vec<String> = object_reps
        .iter()
        .map(|&r| format!("[{}]", x.object_name(r)))
        .collect();
    let morphisms: Vec<Morphism> = morphism_reps
        .iter()
        .map(|&r| Morphism {
            name: format!("[{}]", x.morphism(r).name),
            src: object_orbit[x.src(r)],
            dst: object_orbit[x.dst(r)],
        })
        .collect();
    let identities = object_reps
        .iter()
        .map(|&r| morphism_orbit[x.identity(r)])
        .collect();

    // unique group element carrying object a to object b (freeness)
    let carry = |a: usize, b: usize| -> Option<usize> {
        (0..group.order()).find(|&g| action.functors[g].on_object(a) == b)
    };

    let nmor = morphism_reps.len();
    let mut table: Vec<Vec<Option<usize>>> = vec![vec![None; nmor]; nmor];
    for (m2, &rep2) in morphism_reps.iter().enumerate() {
        for (m1, &rep1) in morphism_reps.iter().enumerate() {
            if morphisms[m1].dst != morphisms[m2].src {
                continue;
            }
            let g = carry(x.src(rep2), x.dst(rep1))
                .expect("orbits match, so a carrier exists");
            let moved = action.functors[g].on_morphism(rep2);
            let composite = x.compose(moved, rep1)?;
            table[m2][m1] = Some(morphism_orbit[composite]);
        }
    }
    let inverses = morphism_reps
        .iter()
        .map(|&r| morphism_orbit[x.inverse(r)])
        .collect();
    let groupoid = FinGroupoid::new(objects, morphisms, identities, table, inverses)?;
    let q = GroupoidFunctor::new(
        x.clone(),
        groupoid.clone(),
        object_orbit.clone(),
        morphism_orbit.clone(),
    )?;
    Ok(OrbitQuotient {
        groupoid,
        q,
        object_orbit,
        morphism_orbit,
    })
}

/// Factors an action-invariant functor through the orbit quotient
/// (the universal property of the colimiting cocone, constructively).
pub fn factor_through_quotient(
    quotient: &OrbitQuotient,
    action: &GroupoidAction,
    f: &GroupoidFunctor,
) -> Result<GroupoidFunctor> {
    if f.source() != &action.groupoid {
        return Err(GrpdError::BadInput {
            detail: "functor does not start at the acted groupoid".into(),
        });
    }
    for g in 0..action.group.order() {
        let moved = GroupoidFunctor::compose(f, &action.functors[g])?;
        if moved.object_map() != f.object_map() || moved.morphism_map() != f.morphism_map() {
            return Err(GrpdError::BadInput {
                detail: format!(
                    "functor is not invariant under {}",
                    action.group.element_name(g)
                ),
            });
        }
    }
    let x = &action.groupoid;
    let mut object_map = vec![usize::MAX; quotient.groupoid.object_count()];
    for o in 0..x.object_count() {
        object_map[quotient.object_orbit[o]] = f.on_object(o);
    }
    let mut morphism_map = vec![usize::MAX; quotient.groupoid.morphism_count()];
    for m in 0..x.morphism_count() {
        morphism_map[quotient.morphism_orbit[m]] = f.on_morphism(m);
    }
    GroupoidFunctor::new(
        quotient.groupoid.clone(),
        f.target().clone(),
        object_map,
        morphism_map,
    )
}

// ---------------------------------------------------------------------------
// Set maps and the set-level pushout product
// ---------------------------------------------------------------------------

/// A map of finite sets with named elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetMap {
    pub domain: Vec<String>,
    pub codomain: Vec<String>,
    pub map: Vec<usize>,
}

impl SetMap {
    pub fn new(domain: Vec<String>, codomain: Vec<String>, map: Vec<usize>) -> Result<Self> {
        if map.len() != domain.len() || map.iter().any(|&v| v >= codomain.len()) {
            return Err(GrpdError::BadInput {
                detail: "set map table does not match its domain/codomain".into(),
            });
        }
        Ok(SetMap {
            domain,
            codomain,
            map,
        })
    }

    pub fn identity(set: &[String]) -> Self {
        SetMap {
            domain: set.to_vec(),
            codomain: set.to_vec(),
            map: (0..set.len()).collect(),
        }
    }
}

/// The pushout product f ×̂ g: (A×D) ⊔_{A×C} (B×C) → B×D, computed by a
/// brute-force pushout of finite sets, together with its full fiber report.
#[derive(Clone, Debug)]
pub struct SetPushoutProduct {
    /// Canonical labels of the pushout classes, in class order.
    pub domain: Vec<String>,
    /// Labels of B×D, pair order (b major).
    pub codomain: Vec<String>,
    /// Class index → codomain index.
    pub map: Vec<usize>,
    /// Fiber size over each element of B×D, in codomain order.
    pub fiber_sizes: Vec<usize>,
    /// Class of each A×D element, pair order (a major).
    pub ad_class: Vec<usize>,
    /// Class of each B×C element, pair order (b major).
    pub bc_class: Vec<usize>,
}

pub fn set_pushout_product(f: &SetMap, g: &SetMap) -> SetPushoutProduct {
    let (a, b) = (f.domain.len(), f.codomain.len());
    let (c, d) = (g.domain.len(), g.codomain.len());
    // elements: A×D occupy indices [0, a·d), B×C occupy [a·d, a·d + b·c)
    let total = a * d + b * c;
    let mut parent: Vec<usize> = (0..total).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let union = |parent: &mut Vec<usize>, x: usize, y: usize| {
        let (rx, ry) = (find(parent, x), find(parent, y));
        if rx != ry {
            let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
            parent[hi] = lo;
        }
    };
    // glue (x, g(y)) in A×D to (f(x), y) in B×C for every (x, y) in A×C
    for x in 0..a {
        for y in 0..c {
            union(&mut parent, x * d + g.map[y], a * d + f.map[x] * c + y);
        }
    }
    let mut class_of = vec![usize::MAX; total];
    let mut classes: Vec<usize> = Vec::new();
    for e in 0..total {
        let root = find(&mut parent, e);
        if class_of[root] == usize::MAX {
            class_of[root] = classes.len();
            classes.push(root);
        }
        class_of[e] = class_of[root];
    }
    let element_label = |e: usize| -> String {
        if e < a * d {
            format!("({},{})", f.domain[e / d], g.codomain[e % d])
        } else {
            let r = e - a * d;
            format!("({},{})", f.codomain[r / c], g.domain[r % c])
        }
    };
    let element_image = |e: usize| -> usize {
        if e < a * d {
            f.map[e / d] * d + e % d
        } else {
            let r = e - a * d;
            (r / c) * d + g.map[r % c]
        }
    };
    let domain: Vec<String> = classes.iter().map(|&r| element_label(r)).collect();
    let map: Vec<usize> = classes.iter().map(|&r| element_image(r)).collect();
    let codomain: Vec<String> = (0..b * d)
        .map(|e| format!("({},{})", f.codomain[e / d], g.codomain[e % d]))
        .collect();
    let mut fiber_sizes = vec![0usize; b * d];
    for &target in &map {
        fiber_sizes[target] += 1;
    }
    let ad_class = class_of[..a * d].to_vec();
    let bc_class = class_of[a * d..].to_vec();
    SetPushoutProduct {
        domain,
        codomain,
        map,
        fiber_sizes,
        ad_class,
        bc_class,
    }
}

/// Every functor x → y, found by brute force: all object assignments,
/// then all hom-set-respecting morphism assignments, validated through the
/// functor constructor. Intended for small groupoids (base-lift searches).
pub fn all_functors(x: &FinGroupoid, y: &FinGroupoid) -> Vec<GroupoidFunctor> {
    fn advance(digits: &mut [usize], sizes: &[usize]) -> bool {
        for slot in (0..digits.len()).rev() {
            digits[slot] += 1;
            if digits[slot] < sizes[slot] {
                return true;
            }
            digits[slot] = 0;
        }
        false
    }
    let mut found = Vec::new();
    if x.object_count() > 0 && y.object_count() == 0 {
        return found;
    }
    let object_sizes = vec![y.object_count(); x.object_count()];
    let mut object_map = vec![0usize; x.object_count()];
    loop {
        // candidate images per morphism under this object assignment;
        // identities are forced, the rest range over the target hom-set
        let candidates: Vec<Vec<usize>> = (0..x.morphism_count())
            .map(|m| {
                if x.identity(x.src(m)) == m {
                    vec![y.identity(object_map[x.src(m)])]
                } else {
                    y.hom_set(object_map[x.src(m)], object_map[x.dst(m)])
                }
            })
            .collect();
        if candidates.iter().all(|opts| !opts.is_empty()) {
            let sizes: Vec<usize> = candidates.iter().map(Vec::len).collect();
            let mut choice = vec![0usize; candidates.len()];
            loop {
                let morphism_map: Vec<usize> = choice
                    .iter()
                    .zip(&candidates)
                    .map(|(&c, opts)| opts[c])
                    .collect();
                if let Ok(f) =
                    GroupoidFunctor::new(x.clone(), y.clone(), object_map.clone(), morphism_map)
                {
                    found.push(f);
                }
                if !advance(&mut choice, &sizes) {
                    break;
                }
            }
        }
        if !advance(&mut object_map, &object_sizes) {
            return found;
        }
    }
}

/// Fault injection for the verification suites' own mutation tests: a
/// clone of `g` whose composition table sends `after ∘ first` to `wrong`,
/// constructed without re-validation. The suites are expected to flag any
/// structure built over such a groupoid.
pub(crate) fn with_corrupted_composition(
    g: &FinGroupoid,
    after: usize,
    first: usize,
    wrong: usize,
) -> FinGroupoid {
    let mut out = g.clone();
    out.table[after][first] = Some(wrong);
    out
}
