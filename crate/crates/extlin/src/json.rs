//! JSON interchange for the engine's structures: groupoids, functors,
//! vector-space bundles, chain complexes, chain-complex bundles, and
//! truncated simplicial complexes.
//!
//! Every parser threads a JSON path (`fibers.a.labels[2]`, …) so that a
//! malformed file is rejected with the precise location of the offending
//! field, and every parsed structure passes through the same validating
//! constructors as programmatic construction — a file that parses is a
//! structure that satisfies all the engine's invariants.
//!
//! Matrices serialize as row-major arrays of exact scalar strings
//! (`"2/3+1/2i"`), so payloads survive round-trips without any loss.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::chaincx::{ChainComplex, ChainMap, Homology, TruncatedSimplicialComplex};
use crate::dglocsys::{DgLocMorphism, DgLocalSystem};
use crate::fingrpd::{FinGroupoid, GroupoidFunctor, Morphism};
use crate::finvect::{LinearMap, VectorSpace};
use crate::locsys::{LocMorphism, LocalSystem};
use crate::quantum::QubitDemo;
use crate::scalars::{Field, FieldElement};

/// A parse failure with the JSON path of the offending field.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("at `{path}`: {message}")]
pub struct JsonError {
    pub path: String,
    pub message: String,
}

pub type Result<T> = std::result::Result<T, JsonError>;

fn err<T>(path: &str, message: impl Into<String>) -> Result<T> {
    Err(JsonError {
        path: path.to_string(),
        message: message.into(),
    })
}

fn wrap<E: std::fmt::Display>(path: &str) -> impl FnOnce(E) -> JsonError + '_ {
    move |e| JsonError {
        path: path.to_string(),
        message: e.to_string(),
    }
}

fn sub(path: &str, segment: &str) -> String {
    if path.is_empty() {
        segment.to_string()
    } else {
        format!("{path}.{segment}")
    }
}

fn idx(path: &str, i: usize) -> String {
    format!("{path}[{i}]")
}

// ---------------------------------------------------------------------------
// Value access helpers
// ---------------------------------------------------------------------------

fn as_obj<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or(())
        .or_else(|_| err(path, "expected an object"))
}

fn as_arr<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or(())
        .or_else(|_| err(path, "expected an array"))
}

fn as_str<'a>(v: &'a Value, path: &str) -> Result<&'a str> {
    v.as_str()
        .ok_or(())
        .or_else(|_| err(path, "expected a string"))
}

fn as_usize(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or(())
        .or_else(|_| err(path, "expected a non-negative integer"))
}

fn get<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or(())
        .or_else(|_| err(path, format!("missing field `{key}`")))
}

fn usize_list(v: &Value, path: &str) -> Result<Vec<usize>> {
    as_arr(v, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| as_usize(x, &idx(path, i)))
        .collect()
}

fn string_list(v: &Value, path: &str) -> Result<Vec<String>> {
    as_arr(v, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| as_str(x, &idx(path, i)).map(str::to_string))
        .collect()
}

// ---------------------------------------------------------------------------
// Scalars, spaces, matrices
// ---------------------------------------------------------------------------

pub fn field_to_json(field: Field) -> Value {
    Value::String(field.to_string())
}

pub fn field_from_json(v: &Value, path: &str) -> Result<Field> {
    match as_str(v, path)? {
        "Q" => Ok(Field::Rational),
        "Q(i)" => Ok(Field::Gaussian),
        other => err(path, format!("unknown field `{other}` (expected `Q` or `Q(i)`)")),
    }
}

fn scalar_from_json(v: &Value, field: Field, path: &str) -> Result<FieldElement> {
    let text = as_str(v, path)?;
    let parsed = FieldElement::parse(text).map_err(wrap(path))?;
    if parsed.field() == field {
        Ok(parsed)
    } else if field == Field::Gaussian {
        Ok(parsed.promote())
    } else {
        err(path, format!("entry `{text}` does not lie in {field}"))
    }
}

pub fn space_to_json(space: &VectorSpace) -> Value {
    json!({
        "dim": space.dim(),
        "labels": space.basis_labels(),
    })
}

pub fn space_from_json(v: &Value, field: Field, path: &str) -> Result<VectorSpace> {
    let obj = as_obj(v, path)?;
    let labels = string_list(get(obj, "labels", path)?, &sub(path, "labels"))?;
    let dim = as_usize(get(obj, "dim", path)?, &sub(path, "dim"))?;
    if dim != labels.len() {
        return err(
            &sub(path, "dim"),
            format!("dim is {dim} but {} labels are listed", labels.len()),
        );
    }
    VectorSpace::new(field, labels).map_err(wrap(path))
}

pub fn matrix_to_json(map: &LinearMap) -> Value {
    Value::Array(
        map.matrix()
            .iter()
            .map(|row| {
                Value::Array(row.iter().map(|e| Value::String(e.to_string())).collect())
            })
            .collect(),
    )
}

pub fn matrix_from_json(
    v: &Value,
    domain: VectorSpace,
    codomain: VectorSpace,
    path: &str,
) -> Result<LinearMap> {
    let field = domain.field();
    let rows_json = as_arr(v, path)?;
    if rows_json.len() != codomain.dim() {
        return err(
            path,
            format!(
                "matrix has {} rows, codomain has dimension {}",
                rows_json.len(),
                codomain.dim()
            ),
        );
    }
    let mut rows = Vec::with_capacity(rows_json.len());
    for (r, row_v) in rows_json.iter().enumerate() {
        let row_path = idx(path, r);
        let row_json = as_arr(row_v, &row_path)?;
        if row_json.len() != domain.dim() {
            return err(
                &row_path,
                format!(
                    "row has {} entries, domain has dimension {}",
                    row_json.len(),
                    domain.dim()
                ),
            );
        }
        let row = row_json
            .iter()
            .enumerate()
            .map(|(c, e)| scalar_from_json(e, field, &idx(&row_path, c)))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    LinearMap::new(domain, codomain, rows).map_err(wrap(path))
}

// ---------------------------------------------------------------------------
// Groupoids and functors
// ---------------------------------------------------------------------------

pub fn groupoid_to_json(g: &FinGroupoid) -> Value {
    let morphisms: Vec<Value> = (0..g.morphism_count())
        .map(|m| {
            let mor = g.morphism(m);
            json!({"name": mor.name, "src": mor.src, "dst": mor.dst})
        })
        .collect();
    let composition: Vec<Value> = (0..g.morphism_count())
        .map(|after| {
            Value::Array(
                (0..g.morphism_count())
                    .map(|first| {
                        if g.dst(first) == g.src(after) {
                            let composed = g
                                .compose(after, first)
                                .expect("composable pair composes in a valid groupoid");
                            Value::from(composed)
                        } else {
                            Value::Null
                        }
                    })
                    .collect(),
            )
        })
        .collect();
    json!({
        "objects": g.objects(),
        "morphisms": morphisms,
        "identities": (0..g.object_count()).map(|x| g.identity(x)).collect::<Vec<_>>(),
        "composition": composition,
        "inverses": (0..g.morphism_count()).map(|m| g.inverse(m)).collect::<Vec<_>>(),
    })
}

pub fn groupoid_from_json(v: &Value, path: &str) -> Result<FinGroupoid> {
    let obj = as_obj(v, path)?;
    let objects = string_list(get(obj, "objects", path)?, &sub(path, "objects"))?;
    let mor_path = sub(path, "morphisms");
    let morphisms = as_arr(get(obj, "morphisms", path)?, &mor_path)?
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let m_path = idx(&mor_path, i);
            let m_obj = as_obj(m, &m_path)?;
            Ok(Morphism {
                name: as_str(get(m_obj, "name", &m_path)?, &sub(&m_path, "name"))?.to_string(),
                src: as_usize(get(m_obj, "src", &m_path)?, &sub(&m_path, "src"))?,
                dst: as_usize(get(m_obj, "dst", &m_path)?, &sub(&m_path, "dst"))?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let identities = usize_list(get(obj, "identities", path)?, &sub(path, "identities"))?;
    let comp_path = sub(path, "composition");
    let table = as_arr(get(obj, "composition", path)?, &comp_path)?
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let row_path = idx(&comp_path, i);
            as_arr(row, &row_path)?
                .iter()
                .enumerate()
                .map(|(j, cell)| {
                    if cell.is_null() {
                        Ok(None)
                    } else {
                        as_usize(cell, &idx(&row_path, j)).map(Some)
                    }
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let inverses = usize_list(get(obj, "inverses", path)?, &sub(path, "inverses"))?;
    FinGroupoid::new(objects, morphisms, identities, table, inverses).map_err(wrap(path))
}

pub fn functor_to_json(f: &GroupoidFunctor) -> Value {
    json!({
        "source": groupoid_to_json(f.source()),
        "target": groupoid_to_json(f.target()),
        "objects": f.object_map(),
        "morphisms": f.morphism_map(),
    })
}

pub fn functor_from_json(v: &Value, path: &str) -> Result<GroupoidFunctor> {
    let obj = as_obj(v, path)?;
    let source = groupoid_from_json(get(obj, "source", path)?, &sub(path, "source"))?;
    let target = groupoid_from_json(get(obj, "target", path)?, &sub(path, "target"))?;
    let objects = usize_list(get(obj, "objects", path)?, &sub(path, "objects"))?;
    let morphisms = usize_list(get(obj, "morphisms", path)?, &sub(path, "morphisms"))?;
    GroupoidFunctor::new(source, target, objects, morphisms).map_err(wrap(path))
}

// ---------------------------------------------------------------------------
// Vector-space bundles
// ---------------------------------------------------------------------------

pub fn system_to_json(v: &LocalSystem) -> Value {
    let base = v.base();
    let fibers: Map<String, Value> = (0..base.object_count())
        .map(|x| (base.object_name(x).to_string(), space_to_json(v.fiber(x))))
        .collect();
    let transport: Map<String, Value> = (0..base.morphism_count())
        .map(|m| (base.morphism(m).name.clone(), matrix_to_json(v.transport(m))))
        .collect();
    json!({
        "base": groupoid_to_json(base),
        "field": field_to_json(v.field()),
        "fibers": fibers,
        "transport": transport,
    })
}

pub fn system_from_json(v: &Value, path: &str) -> Result<LocalSystem> {
    let obj = as_obj(v, path)?;
    let base = groupoid_from_json(get(obj, "base", path)?, &sub(path, "base"))?;
    let field = field_from_json(get(obj, "field", path)?, &sub(path, "field"))?;
    let fibers_path = sub(path, "fibers");
    let fibers_obj = as_obj(get(obj, "fibers", path)?, &fibers_path)?;
    let fibers = (0..base.object_count())
        .map(|x| {
            let name = base.object_name(x);
            let f_path = sub(&fibers_path, name);
            let entry = fibers_obj
                .get(name)
                .ok_or(())
                .or_else(|_| err(&fibers_path, format!("missing fiber over `{name}`")))?;
            space_from_json(entry, field, &f_path)
        })
        .collect::<Result<Vec<_>>>()?;
    let transport_path = sub(path, "transport");
    let transport_obj = as_obj(get(obj, "transport", path)?, &transport_path)?;
    let transports = (0..base.morphism_count())
        .map(|m| {
            let name = &base.morphism(m).name;
            let m_path = sub(&transport_path, name);
            let entry = transport_obj
                .get(name.as_str())
                .ok_or(())
                .or_else(|_| err(&transport_path, format!("missing transport along `{name}`")))?;
            matrix_from_json(
                entry,
                fibers[base.src(m)].clone(),
                fibers[base.dst(m)].clone(),
                &m_path,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    LocalSystem::new(base, field, fibers, transports).map_err(wrap(path))
}

pub fn loc_morphism_to_json(phi: &LocMorphism) -> Value {
    let base = phi.source().base();
    let components: Map<String, Value> = (0..base.object_count())
        .map(|x| (base.object_name(x).to_string(), matrix_to_json(phi.component(x))))
        .collect();
    json!({
        "map": functor_to_json(phi.map()),
        "source": system_to_json(phi.source()),
        "target": system_to_json(phi.target()),
        "components": components,
    })
}

// ---------------------------------------------------------------------------
// Chain complexes and chain maps
// ---------------------------------------------------------------------------

pub fn complex_to_json(c: &ChainComplex) -> Value {
    let components: Map<String, Value> = c
        .support()
        .into_iter()
        .map(|n| (n.to_string(), space_to_json(&c.component(n))))
        .collect();
    let differentials: Map<String, Value> = c
        .support()
        .into_iter()
        .filter(|&n| !c.differential(n).is_zero())
        .map(|n| (n.to_string(), matrix_to_json(&c.differential(n))))
        .collect();
    json!({
        "field": field_to_json(c.field()),
        "components": components,
        "differentials": differentials,
    })
}

fn degree_key(key: &str, path: &str) -> Result<i64> {
    key.parse::<i64>()
        .map_err(|_| ())
        .or_else(|_| err(path, format!("degree key `{key}` is not an integer")))
}

pub fn complex_from_json(v: &Value, path: &str) -> Result<ChainComplex> {
    let obj = as_obj(v, path)?;
    let field = field_from_json(get(obj, "field", path)?, &sub(path, "field"))?;
    let comp_path = sub(path, "components");
    let comp_obj = as_obj(get(obj, "components", path)?, &comp_path)?;
    let mut components: BTreeMap<i64, VectorSpace> = BTreeMap::new();
    for (key, entry) in comp_obj {
        let c_path = sub(&comp_path, key);
        let n = degree_key(key, &c_path)?;
        components.insert(n, space_from_json(entry, field, &c_path)?);
    }
    let diff_path = sub(path, "differentials");
    let diff_obj = as_obj(get(obj, "differentials", path)?, &diff_path)?;
    let zero = VectorSpace::zero(field);
    let mut differentials = Vec::new();
    for (key, entry) in diff_obj {
        let d_path = sub(&diff_path, key);
        let n = degree_key(key, &d_path)?;
        let domain = components.get(&n).unwrap_or(&zero).clone();
        let codomain = components.get(&(n - 1)).unwrap_or(&zero).clone();
        differentials.push((n, matrix_from_json(entry, domain, codomain, &d_path)?));
    }
    ChainComplex::new(field, components.into_iter().collect(), differentials).map_err(wrap(path))
}

pub fn chain_map_to_json(f: &ChainMap) -> Value {
    let mut degrees: Vec<i64> = f.domain().support();
    degrees.extend(f.codomain().support());
    degrees.sort_unstable();
    degrees.dedup();
    let components: Map<String, Value> = degrees
        .into_iter()
        .filter(|&n| f.domain().dim(n) > 0 && f.codomain().dim(n) > 0)
        .map(|n| (n.to_string(), matrix_to_json(&f.map_at(n))))
        .collect();
    json!({ "components": components })
}

pub fn chain_map_from_json(
    v: &Value,
    domain: &ChainComplex,
    codomain: &ChainComplex,
    path: &str,
) -> Result<ChainMap> {
    let obj = as_obj(v, path)?;
    let comp_path = sub(path, "components");
    let comp_obj = as_obj(get(obj, "components", path)?, &comp_path)?;
    let mut levels = Vec::new();
    for (key, entry) in comp_obj {
        let c_path = sub(&comp_path, key);
        let n = degree_key(key, &c_path)?;
        levels.push((
            n,
            matrix_from_json(entry, domain.component(n), codomain.component(n), &c_path)?,
        ));
    }
    ChainMap::new(domain.clone(), codomain.clone(), levels).map_err(wrap(path))
}

pub fn homology_to_json(h: &Homology) -> Value {
    let dims: Map<String, Value> = h
        .dims()
        .into_iter()
        .filter(|&(_, d)| d > 0)
        .map(|(n, d)| (n.to_string(), Value::from(d)))
        .collect();
    Value::Object(dims)
}

// ---------------------------------------------------------------------------
// Chain-complex bundles
// ---------------------------------------------------------------------------

pub fn dg_system_to_json(v: &DgLocalSystem) -> Value {
    let base = v.base();
    let fibers: Map<String, Value> = (0..base.object_count())
        .map(|x| (base.object_name(x).to_string(), complex_to_json(v.fiber(x))))
        .collect();
    let transport: Map<String, Value> = (0..base.morphism_count())
        .map(|m| (base.morphism(m).name.clone(), chain_map_to_json(v.transport(m))))
        .collect();
    json!({
        "base": groupoid_to_json(base),
        "field": field_to_json(v.field()),
        "fibers": fibers,
        "transport": transport,
    })
}

pub fn dg_system_from_json(v: &Value, path: &str) -> Result<DgLocalSystem> {
    let obj = as_obj(v, path)?;
    let base = groupoid_from_json(get(obj, "base", path)?, &sub(path, "base"))?;
    let field = field_from_json(get(obj, "field", path)?, &sub(path, "field"))?;
    let fibers_path = sub(path, "fibers");
    let fibers_obj = as_obj(get(obj, "fibers", path)?, &fibers_path)?;
    let fibers = (0..base.object_count())
        .map(|x| {
            let name = base.object_name(x);
            let entry = fibers_obj
                .get(name)
                .ok_or(())
                .or_else(|_| err(&fibers_path, format!("missing fiber over `{name}`")))?;
            complex_from_json(entry, &sub(&fibers_path, name))
        })
        .collect::<Result<Vec<_>>>()?;
    let transport_path = sub(path, "transport");
    let transport_obj = as_obj(get(obj, "transport", path)?, &transport_path)?;
    let transports = (0..base.morphism_count())
        .map(|m| {
            let name = &base.morphism(m).name;
            let entry = transport_obj
                .get(name.as_str())
                .ok_or(())
                .or_else(|_| err(&transport_path, format!("missing transport along `{name}`")))?;
            chain_map_from_json(
                entry,
                &fibers[base.src(m)],
                &fibers[base.dst(m)],
                &sub(&transport_path, name),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    DgLocalSystem::new(base, field, fibers, transports).map_err(wrap(path))
}

pub fn dg_morphism_to_json(phi: &DgLocMorphism) -> Value {
    let base = phi.source().base();
    let components: Map<String, Value> = (0..base.object_count())
        .map(|x| {
            (
                base.object_name(x).to_string(),
                chain_map_to_json(phi.component(x)),
            )
        })
        .collect();
    json!({
        "map": functor_to_json(phi.map()),
        "source": dg_system_to_json(phi.source()),
        "target": dg_system_to_json(phi.target()),
        "components": components,
    })
}

pub fn dg_morphism_from_json(v: &Value, path: &str) -> Result<DgLocMorphism> {
    let obj = as_obj(v, path)?;
    let map = functor_from_json(get(obj, "map", path)?, &sub(path, "map"))?;
    let source = dg_system_from_json(get(obj, "source", path)?, &sub(path, "source"))?;
    let target = dg_system_from_json(get(obj, "target", path)?, &sub(path, "target"))?;
    let comp_path = sub(path, "components");
    let comp_obj = as_obj(get(obj, "components", path)?, &comp_path)?;
    let components = (0..source.base().object_count())
        .map(|x| {
            let name = source.base().object_name(x);
            let entry = comp_obj
                .get(name)
                .ok_or(())
                .or_else(|_| err(&comp_path, format!("missing component at `{name}`")))?;
            chain_map_from_json(
                entry,
                source.fiber(x),
                target.fiber(map.on_object(x)),
                &sub(&comp_path, name),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    DgLocMorphism::new(map, source, target, components).map_err(wrap(path))
}

// ---------------------------------------------------------------------------
// Truncated simplicial complexes
// ---------------------------------------------------------------------------

pub fn simplicial_to_json(v: &TruncatedSimplicialComplex) -> Value {
    let n = v.truncation_level();
    let levels: Vec<Value> = (0..=n).map(|s| complex_to_json(v.level(s))).collect();
    let faces: Vec<Value> = (0..n)
        .map(|s| Value::Array((0..=s + 1).map(|i| chain_map_to_json(v.face(s, i))).collect()))
        .collect();
    let degeneracies: Vec<Value> = (0..n)
        .map(|s| Value::Array((0..=s).map(|i| chain_map_to_json(v.degeneracy(s, i))).collect()))
        .collect();
    json!({ "levels": levels, "faces": faces, "degeneracies": degeneracies })
}

pub fn simplicial_from_json(v: &Value, path: &str) -> Result<TruncatedSimplicialComplex> {
    let obj = as_obj(v, path)?;
    let levels_path = sub(path, "levels");
    let levels = as_arr(get(obj, "levels", path)?, &levels_path)?
        .iter()
        .enumerate()
        .map(|(s, entry)| complex_from_json(entry, &idx(&levels_path, s)))
        .collect::<Result<Vec<_>>>()?;
    if levels.is_empty() {
        return err(&levels_path, "at least level 0 is required");
    }
    let parse_family = |key: &str, from_level: bool| -> Result<Vec<Vec<ChainMap>>> {
        let fam_path = sub(path, key);
        as_arr(get(obj, key, path)?, &fam_path)?
            .iter()
            .enumerate()
            .map(|(s, row)| {
                let row_path = idx(&fam_path, s);
                if s + 1 >= levels.len() {
                    return err(&row_path, "more map families than level pairs");
                }
                let (dom, cod) = if from_level {
                    (&levels[s], &levels[s + 1])
                } else {
                    (&levels[s + 1], &levels[s])
                };
                as_arr(row, &row_path)?
                    .iter()
                    .enumerate()
                    .map(|(i, entry)| chain_map_from_json(entry, dom, cod, &idx(&row_path, i)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect()
    };
    let faces = parse_family("faces", false)?;
    let degeneracies = parse_family("degeneracies", true)?;
    TruncatedSimplicialComplex::new(levels, faces, degeneracies).map_err(wrap(path))
}

// ---------------------------------------------------------------------------
// Demo report
// ---------------------------------------------------------------------------

fn scalar_row(row: &[FieldElement]) -> Value {
    Value::Array(row.iter().map(|e| Value::String(e.to_string())).collect())
}

pub fn qubit_demo_to_json(demo: &QubitDemo) -> Value {
    json!({
        "field": field_to_json(demo.field),
        "q0": demo.q0.to_string(),
        "q1": demo.q1.to_string(),
        "measurement_rows": demo.measurement_rows.iter().map(|r| scalar_row(r)).collect::<Vec<_>>(),
        "preparation_columns": demo.preparation_columns.iter().map(|c| scalar_row(c)).collect::<Vec<_>>(),
        "prepared_column": scalar_row(&demo.prepared_column),
        "readout": scalar_row(&demo.readout),
        "collapse": scalar_row(&demo.collapse),
        "comonad_laws_hold": demo.comonad_laws_hold,
        "readout_idempotent": demo.readout_idempotent,
        "sum_product_comparison_invertible": demo.sum_product_comparison_invertible,
        "note": demo.preparation_note,
    })
}

// ---------------------------------------------------------------------------
// Validation dispatch
// ---------------------------------------------------------------------------

/// Parses a tagged payload (`{"kind": "...", ...}`) through the matching
/// validating constructor, returning a one-line summary of what was
/// accepted. The kinds are `groupoid`, `functor`, `system`, `complex`,
/// `dgsystem`, `dgmorphism`, and `simplicial`.
pub fn validate_payload(v: &Value) -> Result<String> {
    let obj = as_obj(v, "")?;
    let kind = as_str(get(obj, "kind", "")?, "kind")?;
    match kind {
        "groupoid" => {
            let g = groupoid_from_json(v, "")?;
            Ok(format!(
                "valid groupoid: {} objects, {} morphisms",
                g.object_count(),
                g.morphism_count()
            ))
        }
        "functor" => {
            let f = functor_from_json(v, "")?;
            Ok(format!(
                "valid functor: {} objects → {} objects",
                f.source().object_count(),
                f.target().object_count()
            ))
        }
        "system" => {
            let s = system_from_json(v, "")?;
            Ok(format!(
                "valid bundle: total dimension {} over {} objects",
                s.total_dim(),
                s.base().object_count()
            ))
        }
        "complex" => {
            let c = complex_from_json(v, "")?;
            Ok(format!(
                "valid chain complex: total dimension {} on support {:?}",
                c.total_dim(),
                c.support()
            ))
        }
        "dgsystem" => {
            let s = dg_system_from_json(v, "")?;
            Ok(format!(
                "valid chain-complex bundle: total dimension {} over {} objects",
                s.total_dim(),
                s.base().object_count()
            ))
        }
        "dgmorphism" => {
            let m = dg_morphism_from_json(v, "")?;
            Ok(format!(
                "valid bundle morphism over {} base objects",
                m.source().base().object_count()
            ))
        }
        "simplicial" => {
            let t = simplicial_from_json(v, "")?;
            Ok(format!(
                "valid truncated simplicial complex with {} levels",
                t.truncation_level() + 1
            ))
        }
        other => err(
            "kind",
            format!(
                "unknown kind `{other}` (expected groupoid, functor, system, complex, \
                 dgsystem, dgmorphism, or simplicial)"
            ),
        ),
    }
}
