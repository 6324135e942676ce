//! JSON workspaces: named spaces, maps, functionals, measures, nested
//! measures and monoids, with references between them by name.
//!
//! A workspace file is an object with up to eight sections, each a map from
//! name to object:
//!
//! ```json
//! {
//!   "spaces":    {"X": {"points": ["a", "b"], "dist": [["0/1", "1/1"], ["1/1", "0/1"]]},
//!                 "XX": {"tensor": ["X", "X"]}},
//!   "measures":  {"p": {"space": "X", "weights": {"a": "1/2", "b": "1/2"}}},
//!   "maps":      {"f": {"domain": "X", "codomain": "X", "table": {"a": "b", "b": "a"}}},
//!   "functionals": {"h": {"domain": "X", "values": {"a": "0/1", "b": "1/1"}}},
//!   "nested":    {"mu": {"base": "X", "inner": ["p", {"space": "X", "weights": {"a": "1/1"}}],
//!                        "weights": ["1/3", "2/3"]}},
//!   "doubly_nested": {"M": {"base": "X", "inner": ["mu"], "weights": ["1/1"]}},
//!   "monoids":   {"Z2": {"carrier": "X", "mult": "m", "unit": "a"}},
//!   "points":    {"x0": {"space": "X", "label": "a"}}
//! }
//! ```
//!
//! Wherever a space, measure, map or nested measure is expected, either a
//! name or an inline object is accepted. `{"tensor": [A, B, C]}` is the
//! left-nested tensor `(A ⊗ B) ⊗ C` and keeps its factorization. Weights of
//! labels missing from a measure are 0. Rationals are `"p/q"` strings.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::measure::Measure;
use crate::metric::{tensor_n, FinMetricSpace, Label, ShortFunctional, ShortMap};
use crate::monad::{DoublyNestedMeasure, NestedMeasure};
use crate::rational::{self, Rational};
use crate::structure::InternalMonoid;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpaceJson {
    Ref(String),
    Tensor {
        tensor: Vec<SpaceJson>,
    },
    Explicit {
        points: Vec<String>,
        dist: Vec<Vec<String>>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureJson {
    pub space: SpaceJson,
    pub weights: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapJson {
    pub domain: SpaceJson,
    pub codomain: SpaceJson,
    pub table: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionalJson {
    pub domain: SpaceJson,
    pub values: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Named<T> {
    Ref(String),
    Inline(T),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NestedJson {
    pub base: SpaceJson,
    pub inner: Vec<Named<MeasureJson>>,
    pub weights: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DoublyNestedJson {
    pub base: SpaceJson,
    pub inner: Vec<Named<NestedJson>>,
    pub weights: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidJson {
    pub carrier: SpaceJson,
    pub mult: Named<MapJson>,
    pub unit: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointJson {
    pub space: SpaceJson,
    pub label: String,
}

/// One workspace file, unresolved.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WorkspaceFile {
    pub spaces: BTreeMap<String, SpaceJson>,
    pub maps: BTreeMap<String, MapJson>,
    pub functionals: BTreeMap<String, FunctionalJson>,
    pub measures: BTreeMap<String, MeasureJson>,
    pub nested: BTreeMap<String, NestedJson>,
    pub doubly_nested: BTreeMap<String, DoublyNestedJson>,
    pub monoids: BTreeMap<String, MonoidJson>,
    pub points: BTreeMap<String, PointJson>,
}

fn merge_section<T>(kind: &'static str, into: &mut BTreeMap<String, T>, from: BTreeMap<String, T>) -> Result<()> {
    for (name, value) in from {
        if into.contains_key(&name) {
            return Err(Error::DuplicateName { kind, name });
        }
        into.insert(name, value);
    }
    Ok(())
}

impl WorkspaceFile {
    pub fn from_value(value: Value) -> Result<Self> {
        serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Adds every entry of `other`, rejecting names already present.
    pub fn merge(&mut self, other: WorkspaceFile) -> Result<()> {
        merge_section("space", &mut self.spaces, other.spaces)?;
        merge_section("map", &mut self.maps, other.maps)?;
        merge_section("functional", &mut self.functionals, other.functionals)?;
        merge_section("measure", &mut self.measures, other.measures)?;
        merge_section("nested measure", &mut self.nested, other.nested)?;
        merge_section("doubly nested measure", &mut self.doubly_nested, other.doubly_nested)?;
        merge_section("monoid", &mut self.monoids, other.monoids)?;
        merge_section("point", &mut self.points, other.points)?;
        Ok(())
    }
}

/// Fully resolved and validated objects, by name.
#[derive(Clone, Debug, Default)]
pub struct Workspace {
    pub spaces: BTreeMap<String, FinMetricSpace>,
    pub maps: BTreeMap<String, ShortMap>,
    pub functionals: BTreeMap<String, ShortFunctional>,
    pub measures: BTreeMap<String, Measure>,
    pub nested: BTreeMap<String, NestedMeasure>,
    pub doubly_nested: BTreeMap<String, DoublyNestedMeasure>,
    pub monoids: BTreeMap<String, InternalMonoid>,
    pub points: BTreeMap<String, (FinMetricSpace, usize)>,
}

fn lookup<'a, T>(map: &'a BTreeMap<String, T>, kind: &'static str, name: &str) -> Result<&'a T> {
    map.get(name).ok_or_else(|| Error::UnknownName {
        kind,
        name: name.to_string(),
    })
}

impl Workspace {
    /// Reads and merges files left to right.
    pub fn load<P: AsRef<Path>>(paths: &[P]) -> Result<Self> {
        let mut merged = WorkspaceFile::default();
        for path in paths {
            let path = path.as_ref();
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            let file: WorkspaceFile =
                serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            merged.merge(file)?;
        }
        Self::resolve(&merged)
    }

    pub fn from_value(value: Value) -> Result<Self> {
        Self::resolve(&WorkspaceFile::from_value(value)?)
    }

    pub fn resolve(file: &WorkspaceFile) -> Result<Self> {
        let mut r = Resolver {
            file,
            ws: Workspace::default(),
            in_progress: Vec::new(),
        };
        for name in file.spaces.keys() {
            r.named_space(name)?;
        }
        for name in file.maps.keys() {
            let m = r.map(&file.maps[name])?;
            r.ws.maps.insert(name.clone(), m);
        }
        for (name, f) in &file.functionals {
            let f = r.functional(f)?;
            r.ws.functionals.insert(name.clone(), f);
        }
        for name in file.measures.keys() {
            r.named_measure(name)?;
        }
        for name in file.nested.keys() {
            r.named_nested(name)?;
        }
        for (name, m) in &file.doubly_nested {
            let m = r.doubly_nested(m)?;
            r.ws.doubly_nested.insert(name.clone(), m);
        }
        for (name, m) in &file.monoids {
            let m = r.monoid(m)?;
            r.ws.monoids.insert(name.clone(), m);
        }
        for (name, p) in &file.points {
            let space = r.space(&p.space)?;
            let i = space.index_of(&Label::parse(&p.label)?)?;
            r.ws.points.insert(name.clone(), (space, i));
        }
        Ok(r.ws)
    }

    pub fn space(&self, name: &str) -> Result<&FinMetricSpace> {
        lookup(&self.spaces, "space", name)
    }

    pub fn map(&self, name: &str) -> Result<&ShortMap> {
        lookup(&self.maps, "map", name)
    }

    pub fn functional(&self, name: &str) -> Result<&ShortFunctional> {
        lookup(&self.functionals, "functional", name)
    }

    pub fn measure(&self, name: &str) -> Result<&Measure> {
        lookup(&self.measures, "measure", name)
    }

    pub fn nested(&self, name: &str) -> Result<&NestedMeasure> {
        lookup(&self.nested, "nested measure", name)
    }

    pub fn doubly_nested(&self, name: &str) -> Result<&DoublyNestedMeasure> {
        lookup(&self.doubly_nested, "doubly nested measure", name)
    }

    pub fn monoid(&self, name: &str) -> Result<&InternalMonoid> {
        lookup(&self.monoids, "monoid", name)
    }

    pub fn point(&self, name: &str) -> Result<&(FinMetricSpace, usize)> {
        lookup(&self.points, "point", name)
    }
}

struct Resolver<'a> {
    file: &'a WorkspaceFile,
    ws: Workspace,
    in_progress: Vec<String>,
}

impl Resolver<'_> {
    fn named_space(&mut self, name: &str) -> Result<FinMetricSpace> {
        if let Some(s) = self.ws.spaces.get(name) {
            return Ok(s.clone());
        }
        let json = self.file.spaces.get(name).ok_or_else(|| Error::UnknownName {
            kind: "space",
            name: name.to_string(),
        })?;
        if self.in_progress.iter().any(|n| n == name) {
            return Err(Error::Parse(format!("space {name:?} refers to itself")));
        }
        self.in_progress.push(name.to_string());
        let space = self.space(json);
        self.in_progress.pop();
        let space = space?;
        self.ws.spaces.insert(name.to_string(), space.clone());
        Ok(space)
    }

    fn space(&mut self, json: &SpaceJson) -> Result<FinMetricSpace> {
        match json {
            SpaceJson::Ref(name) => self.named_space(name),
            SpaceJson::Tensor { tensor } => {
                if tensor.is_empty() {
                    return Err(Error::Parse("empty tensor".into()));
                }
                let factors = tensor.iter().map(|s| self.space(s)).collect::<Result<Vec<_>>>()?;
                Ok(tensor_n(&factors))
            }
            SpaceJson::Explicit { points, dist } => {
                let points = points.iter().map(|p| Label::parse(p)).collect::<Result<Vec<_>>>()?;
                let dist = dist
                    .iter()
                    .map(|row| row.iter().map(|v| rational::parse(v)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                FinMetricSpace::new(points, dist)
            }
        }
    }

    fn map(&mut self, json: &MapJson) -> Result<ShortMap> {
        let domain = self.space(&json.domain)?;
        let codomain = self.space(&json.codomain)?;
        let table = label_table(&domain, &json.table, "map table")?;
        let table = table
            .into_iter()
            .enumerate()
            .map(|(i, y)| {
                let y = y.ok_or_else(|| Error::Parse(format!("map table has no entry for {}", domain.label(i))))?;
                codomain.index_of(&Label::parse(y)?)
            })
            .collect::<Result<Vec<_>>>()?;
        ShortMap::new(domain, codomain, table)
    }

    fn functional(&mut self, json: &FunctionalJson) -> Result<ShortFunctional> {
        let domain = self.space(&json.domain)?;
        let values = label_table(&domain, &json.values, "functional")?
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                let v = v.ok_or_else(|| Error::Parse(format!("functional has no value at {}", domain.label(i))))?;
                rational::parse(v)
            })
            .collect::<Result<Vec<_>>>()?;
        ShortFunctional::new(domain, values)
    }

    fn named_measure(&mut self, name: &str) -> Result<Measure> {
        if let Some(m) = self.ws.measures.get(name) {
            return Ok(m.clone());
        }
        let json = self.file.measures.get(name).ok_or_else(|| Error::UnknownName {
            kind: "measure",
            name: name.to_string(),
        })?;
        let m = self.measure(json)?;
        self.ws.measures.insert(name.to_string(), m.clone());
        Ok(m)
    }

    fn measure(&mut self, json: &MeasureJson) -> Result<Measure> {
        let space = self.space(&json.space)?;
        let weights = label_table(&space, &json.weights, "measure")?
            .into_iter()
            .map(|w| w.map_or_else(|| Ok(Rational::from_integer(0.into())), |s| rational::parse(s)))
            .collect::<Result<Vec<_>>>()?;
        Measure::new(space, weights)
    }

    fn named_or_inline_measure(&mut self, m: &Named<MeasureJson>) -> Result<Measure> {
        match m {
            Named::Ref(name) => self.named_measure(name),
            Named::Inline(json) => self.measure(json),
        }
    }

    fn named_nested(&mut self, name: &str) -> Result<NestedMeasure> {
        if let Some(m) = self.ws.nested.get(name) {
            return Ok(m.clone());
        }
        let json = self.file.nested.get(name).ok_or_else(|| Error::UnknownName {
            kind: "nested measure",
            name: name.to_string(),
        })?;
        let m = self.nested(json)?;
        self.ws.nested.insert(name.to_string(), m.clone());
        Ok(m)
    }

    fn nested(&mut self, json: &NestedJson) -> Result<NestedMeasure> {
        let base = self.space(&json.base)?;
        let inner = json
            .inner
            .iter()
            .map(|m| self.named_or_inline_measure(m))
            .collect::<Result<Vec<_>>>()?;
        NestedMeasure::new(base, inner, parse_all(&json.weights)?)
    }

    fn doubly_nested(&mut self, json: &DoublyNestedJson) -> Result<DoublyNestedMeasure> {
        let base = self.space(&json.base)?;
        let inner = json
            .inner
            .iter()
            .map(|m| match m {
                Named::Ref(name) => self.named_nested(name),
                Named::Inline(json) => self.nested(json),
            })
            .collect::<Result<Vec<_>>>()?;
        DoublyNestedMeasure::new(base, inner, parse_all(&json.weights)?)
    }

    fn monoid(&mut self, json: &MonoidJson) -> Result<InternalMonoid> {
        let carrier = self.space(&json.carrier)?;
        let mult = match &json.mult {
            Named::Ref(name) => match self.ws.maps.get(name) {
                Some(m) => m.clone(),
                None => {
                    let m = self.file.maps.get(name).ok_or_else(|| Error::UnknownName {
                        kind: "map",
                        name: name.clone(),
                    })?;
                    self.map(m)?
                }
            },
            Named::Inline(m) => self.map(m)?,
        };
        let unit = carrier.index_of(&Label::parse(&json.unit)?)?;
        InternalMonoid::new(carrier, mult, unit)
    }
}

fn parse_all(values: &[String]) -> Result<Vec<Rational>> {
    values.iter().map(|v| rational::parse(v)).collect()
}

/// Entries of a label-keyed table in point order; unknown labels are errors.
fn label_table<'a>(
    space: &FinMetricSpace,
    table: &'a BTreeMap<String, String>,
    what: &str,
) -> Result<Vec<Option<&'a String>>> {
    let mut out = vec![None; space.len()];
    for (label, value) in table {
        let i = space
            .index_of(&Label::parse(label)?)
            .map_err(|_| Error::UnknownPoint(format!("{label} in {what}")))?;
        out[i] = Some(value);
    }
    Ok(out)
}

/// Builds workspace JSON, writing registered spaces by name and everything
/// else inline.
#[derive(Default)]
pub struct WorkspaceWriter {
    registered: Vec<(String, FinMetricSpace)>,
    sections: BTreeMap<&'static str, Map<String, Value>>,
}

/// Equal as spaces and with the same factorization tree.
fn same_structure(a: &FinMetricSpace, b: &FinMetricSpace) -> bool {
    if a.ptr_eq(b) {
        return true;
    }
    if a != b {
        return false;
    }
    match (a.factors(), b.factors()) {
        (None, None) => true,
        (Some((a1, a2)), Some((b1, b2))) => same_structure(a1, b1) && same_structure(a2, b2),
        _ => false,
    }
}

impl WorkspaceWriter {
    pub fn new() -> Self {
        Self::default()
    }

    fn insert(&mut self, section: &'static str, name: &str, value: Value) {
        self.sections.entry(section).or_default().insert(name.to_string(), value);
    }

    /// Registers `space` under `name`; later objects on it refer to it by name.
    pub fn space(&mut self, name: &str, space: &FinMetricSpace) -> &mut Self {
        let value = self.space_value(space);
        self.insert("spaces", name, value);
        self.registered.push((name.to_string(), space.clone()));
        self
    }

    pub fn space_value(&self, space: &FinMetricSpace) -> Value {
        if let Some((name, _)) = self.registered.iter().find(|(_, s)| same_structure(s, space)) {
            return Value::String(name.clone());
        }
        match space.factors() {
            Some((a, b)) => json!({ "tensor": [self.space_value(a), self.space_value(b)] }),
            None => json!({
                "points": space.points().iter().map(ToString::to_string).collect::<Vec<_>>(),
                "dist": space.matrix().iter()
                    .map(|row| row.iter().map(rational::format).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
            }),
        }
    }

    pub fn measure_value(&self, p: &Measure) -> Value {
        let weights: Map<String, Value> = p
            .space()
            .points()
            .iter()
            .zip(p.weights())
            .map(|(l, w)| (l.to_string(), Value::String(rational::format(w))))
            .collect();
        json!({ "space": self.space_value(p.space()), "weights": weights })
    }

    pub fn map_value(&self, f: &ShortMap) -> Value {
        let table: Map<String, Value> = (0..f.domain().len())
            .map(|i| {
                (
                    f.domain().label(i).to_string(),
                    Value::String(f.codomain().label(f.apply(i)).to_string()),
                )
            })
            .collect();
        json!({
            "domain": self.space_value(f.domain()),
            "codomain": self.space_value(f.codomain()),
            "table": table,
        })
    }

    pub fn functional_value(&self, f: &ShortFunctional) -> Value {
        let values: Map<String, Value> = f
            .domain()
            .points()
            .iter()
            .zip(f.values())
            .map(|(l, v)| (l.to_string(), Value::String(rational::format(v))))
            .collect();
        json!({ "domain": self.space_value(f.domain()), "values": values })
    }

    pub fn nested_value(&self, mu: &NestedMeasure) -> Value {
        json!({
            "base": self.space_value(mu.base()),
            "inner": mu.inner().iter().map(|m| self.measure_value(m)).collect::<Vec<_>>(),
            "weights": mu.weights().iter().map(rational::format).collect::<Vec<_>>(),
        })
    }

    pub fn doubly_nested_value(&self, m: &DoublyNestedMeasure) -> Value {
        json!({
            "base": self.space_value(m.base()),
            "inner": m.inner().iter().map(|mu| self.nested_value(mu)).collect::<Vec<_>>(),
            "weights": m.weights().iter().map(rational::format).collect::<Vec<_>>(),
        })
    }

    pub fn monoid_value(&self, m: &InternalMonoid) -> Value {
        json!({
            "carrier": self.space_value(m.carrier()),
            "mult": self.map_value(m.mult()),
            "unit": m.carrier().label(m.unit()).to_string(),
        })
    }

    pub fn measure(&mut self, name: &str, p: &Measure) -> &mut Self {
        let v = self.measure_value(p);
        self.insert("measures", name, v);
        self
    }

    pub fn map(&mut self, name: &str, f: &ShortMap) -> &mut Self {
        let v = self.map_value(f);
        self.insert("maps", name, v);
        self
    }

    pub fn functional(&mut self, name: &str, f: &ShortFunctional) -> &mut Self {
        let v = self.functional_value(f);
        self.insert("functionals", name, v);
        self
    }

    pub fn nested(&mut self, name: &str, mu: &NestedMeasure) -> &mut Self {
        let v = self.nested_value(mu);
        self.insert("nested", name, v);
        self
    }

    pub fn doubly_nested(&mut self, name: &str, m: &DoublyNestedMeasure) -> &mut Self {
        let v = self.doubly_nested_value(m);
        self.insert("doubly_nested", name, v);
        self
    }

    pub fn monoid(&mut self, name: &str, m: &InternalMonoid) -> &mut Self {
        let v = self.monoid_value(m);
        self.insert("monoids", name, v);
        self
    }

    pub fn point(&mut self, name: &str, space: &FinMetricSpace, i: usize) -> &mut Self {
        let v = json!({ "space": self.space_value(space), "label": space.label(i).to_string() });
        self.insert("points", name, v);
        self
    }

    pub fn finish(&mut self) -> Value {
        let sections = std::mem::take(&mut self.sections);
        Value::Object(sections.into_iter().map(|(k, v)| (k.to_string(), Value::Object(v))).collect())
    }
}

/// Standalone JSON for a space, with tensors kept as `{"tensor": [..]}`.
pub fn space_to_json(space: &FinMetricSpace) -> Value {
    WorkspaceWriter::new().space_value(space)
}

pub fn measure_to_json(p: &Measure) -> Value {
    WorkspaceWriter::new().measure_value(p)
}

pub fn map_to_json(f: &ShortMap) -> Value {
    WorkspaceWriter::new().map_value(f)
}

pub fn functional_to_json(f: &ShortFunctional) -> Value {
    WorkspaceWriter::new().functional_value(f)
}

pub fn nested_to_json(mu: &NestedMeasure) -> Value {
    WorkspaceWriter::new().nested_value(mu)
}

pub fn monoid_to_json(m: &InternalMonoid) -> Value {
    WorkspaceWriter::new().monoid_value(m)
}

fn single<T>(section: &str, value: Value, pick: impl FnOnce(&Workspace) -> Result<&T>) -> Result<T>
where
    T: Clone,
{
    let ws = Workspace::from_value(json!({ section: { "it": value } }))?;
    pick(&ws).cloned()
}

pub fn space_from_json(value: Value) -> Result<FinMetricSpace> {
    single("spaces", value, |ws| ws.space("it"))
}

pub fn measure_from_json(value: Value) -> Result<Measure> {
    single("measures", value, |ws| ws.measure("it"))
}

pub fn map_from_json(value: Value) -> Result<ShortMap> {
    single("maps", value, |ws| ws.map("it"))
}

pub fn functional_from_json(value: Value) -> Result<ShortFunctional> {
    single("functionals", value, |ws| ws.functional("it"))
}

pub fn nested_from_json(value: Value) -> Result<NestedMeasure> {
    single("nested", value, |ws| ws.nested("it"))
}

pub fn monoid_from_json(value: Value) -> Result<InternalMonoid> {
    single("monoids", value, |ws| ws.monoid("it"))
}

/// Rational as its canonical JSON string.
pub fn rational_to_json(r: &Rational) -> Value {
    Value::String(rational::format(r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use crate::metric::tensor;
    use crate::structure::product;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const SAMPLE: &str = r#"{
        "spaces": {
            "X": {"points": ["a", "b"], "dist": [["0", "1/1"], ["1", "0/1"]]},
            "XX": {"tensor": ["X", "X"]}
        },
        "measures": {
            "p": {"space": "X", "weights": {"a": "1/2", "b": "1/2"}},
            "r": {"space": "XX", "weights": {"(a,a)": "1/2", "(b,b)": "1/2"}}
        },
        "nested": {"mu": {"base": "X", "inner": ["p", {"space": "X", "weights": {"a": "1"}}], "weights": ["1/3", "2/3"]}},
        "points": {"x": {"space": "X", "label": "b"}}
    }"#;

    #[test]
    fn resolves_references_and_tensors() {
        let ws = Workspace::from_value(serde_json::from_str(SAMPLE).unwrap()).unwrap();
        let x = ws.space("X").unwrap();
        let r = ws.measure("r").unwrap();
        assert_eq!(r.space().factors().unwrap().0, x);
        assert_eq!(r.weights()[1], Rational::from_integer(0.into()));
        assert_eq!(ws.nested("mu").unwrap().inner().len(), 2);
        assert_eq!(ws.point("x").unwrap().1, 1);
        assert!(matches!(ws.measure("q"), Err(Error::UnknownName { .. })));
    }

    #[test]
    fn rejects_bad_input() {
        let bad_triangle = json!({"spaces": {"X": {"points": ["a", "b", "c"],
            "dist": [["0", "1", "3"], ["1", "0", "1"], ["3", "1", "0"]]}}});
        assert!(matches!(Workspace::from_value(bad_triangle), Err(Error::NotAMetric(_))));
        let cyclic = json!({"spaces": {"A": {"tensor": ["B"]}, "B": {"tensor": ["A"]}}});
        assert!(Workspace::from_value(cyclic).is_err());
        let unknown_label = json!({"spaces": {"X": {"points": ["a"], "dist": [["0"]]}},
            "measures": {"p": {"space": "X", "weights": {"z": "1"}}}});
        assert!(matches!(Workspace::from_value(unknown_label), Err(Error::UnknownPoint(_))));
        assert!(matches!(Workspace::from_value(json!({"sapces": {}})), Err(Error::Parse(_))));
    }

    #[test]
    fn merge_rejects_duplicates() {
        let a: WorkspaceFile = serde_json::from_str(SAMPLE).unwrap();
        let mut b = a.clone();
        assert!(matches!(b.merge(a), Err(Error::DuplicateName { kind: "space", .. })));
    }

    #[test]
    fn emitted_objects_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let budget = gen::SizeBudget::default();
        for _ in 0..20 {
            let x = gen::space(&mut rng, &budget, "x");
            let y = gen::space(&mut rng, &budget, "y");
            let p = gen::measure(&mut rng, &x, 64);
            let q = gen::measure(&mut rng, &y, 64);
            let r = product(&p, &q);
            let back = measure_from_json(measure_to_json(&r)).unwrap();
            assert_eq!(back, r);
            assert!(same_structure(back.space(), &tensor(&x, &y)));
            let f = gen::short_map(&mut rng, &x, &y);
            assert_eq!(map_from_json(map_to_json(&f)).unwrap(), f);
            let h = gen::functional(&mut rng, &x, 64);
            assert_eq!(functional_from_json(functional_to_json(&h)).unwrap(), h);
            let mu = gen::nested(&mut rng, &x, &budget);
            assert_eq!(nested_from_json(nested_to_json(&mu)).unwrap(), mu);
            let m = gen::monoid(&mut rng, &budget);
            assert_eq!(monoid_from_json(monoid_to_json(&m)).unwrap(), m);
        }
    }

    #[test]
    fn writer_uses_registered_names() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let x = gen::space(&mut rng, &gen::SizeBudget::default(), "x");
        let p = gen::measure(&mut rng, &x, 64);
        let mut w = WorkspaceWriter::new();
        w.space("X", &x).measure("p", &product(&p, &p));
        let v = w.finish();
        assert_eq!(v["measures"]["p"]["space"], json!({"tensor": ["X", "X"]}));
        let ws = Workspace::from_value(v).unwrap();
        assert_eq!(ws.measure("p").unwrap(), &product(&p, &p));
    }
}
