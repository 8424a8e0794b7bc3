//! Reading the JSON file formats: categories (tables, presentations or
//! monoidal tables), functors, diagrams, cobordisms and labeled diagrams.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::Deserialize;
use thiserror::Error;

use crate::cobordism::{Cob1Mor, RawCob};
use crate::fincat::{
    close_presentation, validate_category, FinCat, Functor, MorId, ObjId, RawCategory, RawFunctor, RawPresentation,
};
use crate::freerigid::{BrauerMor, FreeRigid, RawBrauer};
use crate::grothendieck::{LaxMonDiagram, OplaxDiagram};
use crate::moncat::{validate_monoidal, RawMonoidal, StrictMonCat};

/// Default closure bound for category files given as presentations.
pub const DEFAULT_SIZE_BOUND: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{path}: {message}")]
pub struct LoadError {
    pub path: String,
    pub message: String,
}

impl LoadError {
    fn new(path: &Path, message: impl Into<String>) -> Self {
        Self { path: path.display().to_string(), message: message.into() }
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, LoadError> {
    let text = fs::read_to_string(path).map_err(|e| LoadError::new(path, format!("cannot read file: {e}")))?;
    serde_json::from_str(&text)
        .map_err(|e| LoadError::new(path, format!("line {}, column {}: {e}", e.line(), e.column())))
}

fn resolve(base: &Path, reference: &str) -> PathBuf {
    base.parent().unwrap_or(Path::new(".")).join(reference)
}

/// The three accepted shapes of a category file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CategoryFile {
    Tables(RawCategory),
    Presentation(RawPresentation),
    Monoidal(RawMonoidal),
}

/// Parses category file text; the shape is picked by its keys.
pub fn parse_category_file(text: &str) -> Result<CategoryFile, serde_json::Error> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let has = |key: &str| value.get(key).is_some();
    if has("generators") {
        serde_json::from_value(value).map(CategoryFile::Presentation)
    } else if has("tensor_objects") {
        serde_json::from_value(value).map(CategoryFile::Monoidal)
    } else {
        serde_json::from_value(value).map(CategoryFile::Tables)
    }
}

impl CategoryFile {
    /// The category described; presentations are closed with `size_bound`,
    /// monoidal files contribute their underlying category.
    pub fn into_category(self, size_bound: usize) -> Result<FinCat, String> {
        match self {
            CategoryFile::Tables(raw) => validate_category(&raw).map_err(|e| e.to_string()),
            CategoryFile::Presentation(raw) => close_presentation(&raw, size_bound).map_err(|e| e.to_string()),
            CategoryFile::Monoidal(raw) => validate_category(&raw.category()).map_err(|e| e.to_string()),
        }
    }
}

pub fn read_category_file(path: &Path) -> Result<CategoryFile, LoadError> {
    let text = fs::read_to_string(path).map_err(|e| LoadError::new(path, format!("cannot read file: {e}")))?;
    parse_category_file(&text)
        .map_err(|e| LoadError::new(path, format!("line {}, column {}: {e}", e.line(), e.column())))
}

pub fn load_category(path: &Path, size_bound: usize) -> Result<FinCat, LoadError> {
    read_category_file(path)?.into_category(size_bound).map_err(|e| LoadError::new(path, e))
}

pub fn load_monoidal(path: &Path) -> Result<StrictMonCat, LoadError> {
    match read_category_file(path)? {
        CategoryFile::Monoidal(raw) => validate_monoidal(&raw).map_err(|e| LoadError::new(path, e.to_string())),
        _ => Err(LoadError::new(path, "not a monoidal category file (no `tensor_objects`)")),
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FunctorFile {
    source: String,
    target: String,
    objects: BTreeMap<String, String>,
    #[serde(default)]
    morphisms: BTreeMap<String, String>,
}

/// A functor file: `source` and `target` category paths plus name tables.
pub fn load_functor(path: &Path, size_bound: usize) -> Result<Functor, LoadError> {
    let file: FunctorFile = read_json(path)?;
    let source = Arc::new(load_category(&resolve(path, &file.source), size_bound)?);
    let target = Arc::new(load_category(&resolve(path, &file.target), size_bound)?);
    let raw = RawFunctor { objects: file.objects, morphisms: file.morphisms };
    Functor::from_raw(source, target, &raw).map_err(|e| LoadError::new(path, e.to_string()))
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMu {
    left: String,
    right: String,
    objects: Vec<[String; 3]>,
    #[serde(default)]
    morphisms: Vec<[String; 3]>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBraid {
    left: String,
    right: String,
    components: Vec<[String; 3]>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DiagramFile {
    index: String,
    fibers: BTreeMap<String, String>,
    #[serde(default)]
    transitions: BTreeMap<String, RawFunctor>,
    #[serde(default)]
    mu: Option<Vec<RawMu>>,
    #[serde(default)]
    unit_fiber: Option<String>,
    #[serde(default)]
    braid: Option<Vec<RawBraid>>,
}

/// A diagram file, with lax monoidal data when `mu` is present.
#[derive(Clone, Debug)]
pub enum LoadedDiagram {
    Plain(OplaxDiagram),
    Monoidal(LaxMonDiagram),
}

impl LoadedDiagram {
    pub fn diagram(&self) -> &OplaxDiagram {
        match self {
            LoadedDiagram::Plain(d) => d,
            LoadedDiagram::Monoidal(lax) => &lax.diagram,
        }
    }
}

pub fn load_diagram(path: &Path, size_bound: usize) -> Result<LoadedDiagram, LoadError> {
    let file: DiagramFile = read_json(path)?;
    let err = |msg: String| LoadError::new(path, msg);
    let index_path = resolve(path, &file.index);
    let index_monoidal = if file.mu.is_some() { Some(Arc::new(load_monoidal(&index_path)?)) } else { None };
    let index = match &index_monoidal {
        Some(m) => m.base().clone(),
        None => Arc::new(load_category(&index_path, size_bound)?),
    };

    let mut cache: HashMap<PathBuf, Arc<FinCat>> = HashMap::new();
    let mut fibers = Vec::with_capacity(index.object_count());
    for name in file.fibers.keys() {
        if index.object_id(name).is_none() {
            return Err(err(format!("fiber given for unknown index object `{name}`")));
        }
    }
    for i in index.objects() {
        let name = index.object_name(i);
        let reference = file.fibers.get(name).ok_or_else(|| err(format!("no fiber for index object `{name}`")))?;
        let fiber_path = resolve(path, reference);
        let fiber = match cache.get(&fiber_path) {
            Some(c) => c.clone(),
            None => {
                let c = Arc::new(load_category(&fiber_path, size_bound)?);
                cache.insert(fiber_path, c.clone());
                c
            }
        };
        fibers.push(fiber);
    }

    for name in file.transitions.keys() {
        if index.morphism_id(name).is_none() {
            return Err(err(format!("transition given for unknown index morphism `{name}`")));
        }
    }
    let mut transitions = Vec::with_capacity(index.morphism_count());
    for f in index.morphisms() {
        let name = index.morphism_name(f);
        let (src, dst) = (fibers[index.src(f)].clone(), fibers[index.dst(f)].clone());
        let functor = match file.transitions.get(name) {
            Some(raw) => Functor::from_raw(src, dst, raw).map_err(|e| err(format!("transition `{name}`: {e}")))?,
            None if index.is_identity(f) => Functor::identity(src),
            None => return Err(err(format!("no transition for index morphism `{name}`"))),
        };
        transitions.push(functor);
    }
    let diagram = OplaxDiagram::new(index.clone(), fibers.clone(), transitions).map_err(|e| err(e.to_string()))?;

    let Some(monoidal) = index_monoidal else {
        return Ok(LoadedDiagram::Plain(diagram));
    };
    let n = index.object_count();
    let lookup_index = |name: &str| index.object_id(name).ok_or_else(|| err(format!("unknown index object `{name}`")));
    let lookup_obj = |c: &FinCat, name: &str| -> Result<ObjId, LoadError> {
        c.object_id(name).ok_or_else(|| err(format!("unknown fiber object `{name}`")))
    };
    let lookup_mor = |c: &FinCat, name: &str| -> Result<MorId, LoadError> {
        c.morphism_id(name).ok_or_else(|| err(format!("unknown fiber morphism `{name}`")))
    };

    let mut mu_objects: Vec<Option<Vec<Option<ObjId>>>> = vec![None; n * n];
    let mut mu_morphisms: Vec<Vec<Option<MorId>>> = vec![Vec::new(); n * n];
    for entry in file.mu.as_deref().unwrap_or_default() {
        let (i, j) = (lookup_index(&entry.left)?, lookup_index(&entry.right)?);
        let (fi, fj, fij) = (&fibers[i], &fibers[j], &fibers[monoidal.tensor_obj(i, j)]);
        let mut objs = vec![None; fi.object_count() * fj.object_count()];
        for [x, y, z] in &entry.objects {
            objs[lookup_obj(fi, x)? * fj.object_count() + lookup_obj(fj, y)?] = Some(lookup_obj(fij, z)?);
        }
        let mut mors = vec![None; fi.morphism_count() * fj.morphism_count()];
        for [p, q, r] in &entry.morphisms {
            mors[lookup_mor(fi, p)? * fj.morphism_count() + lookup_mor(fj, q)?] = Some(lookup_mor(fij, r)?);
        }
        for x in fi.objects() {
            for y in fj.objects() {
                if let Some(z) = objs[x * fj.object_count() + y] {
                    mors[fi.identity(x) * fj.morphism_count() + fj.identity(y)].get_or_insert(fij.identity(z));
                }
            }
        }
        mu_objects[i * n + j] = Some(objs);
        mu_morphisms[i * n + j] = mors;
    }
    let complete = |table: Vec<Option<usize>>, what: String| -> Result<Vec<usize>, LoadError> {
        table.into_iter().collect::<Option<Vec<_>>>().ok_or_else(|| err(format!("mu table for {what} is incomplete")))
    };
    let mut mu_obj_tables = Vec::with_capacity(n * n);
    let mut mu_mor_tables = Vec::with_capacity(n * n);
    for (k, (objs, mors)) in mu_objects.into_iter().zip(mu_morphisms).enumerate() {
        let what = format!("({}, {})", index.object_name(k / n), index.object_name(k % n));
        let objs = objs.ok_or_else(|| err(format!("no mu entry for {what}")))?;
        mu_obj_tables.push(complete(objs, what.clone())?);
        mu_mor_tables.push(complete(mors, what)?);
    }

    let unit_name = file.unit_fiber.as_deref().ok_or_else(|| err("`mu` requires `unit_fiber`".into()))?;
    let unit_fiber = lookup_obj(&fibers[monoidal.unit()], unit_name)?;

    let braid = match &file.braid {
        None => None,
        Some(entries) => {
            let mut tables: Vec<Vec<Option<MorId>>> =
                (0..n * n).map(|k| vec![None; fibers[k / n].object_count() * fibers[k % n].object_count()]).collect();
            for entry in entries {
                let (i, j) = (lookup_index(&entry.left)?, lookup_index(&entry.right)?);
                let (fi, fj, fji) = (&fibers[i], &fibers[j], &fibers[monoidal.tensor_obj(j, i)]);
                for [x, y, b] in &entry.components {
                    tables[i * n + j][lookup_obj(fi, x)? * fj.object_count() + lookup_obj(fj, y)?] =
                        Some(lookup_mor(fji, b)?);
                }
            }
            let tables = tables
                .into_iter()
                .enumerate()
                .map(|(k, t)| {
                    t.into_iter().collect::<Option<Vec<_>>>().ok_or_else(|| {
                        err(format!(
                            "braid table for ({}, {}) is incomplete",
                            index.object_name(k / n),
                            index.object_name(k % n)
                        ))
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            Some(tables)
        }
    };

    Ok(LoadedDiagram::Monoidal(LaxMonDiagram {
        index: monoidal,
        diagram,
        mu_objects: mu_obj_tables,
        mu_morphisms: mu_mor_tables,
        unit_fiber,
        braid,
    }))
}

pub fn load_cobordism(path: &Path) -> Result<Cob1Mor, LoadError> {
    let raw: RawCob = read_json(path)?;
    Cob1Mor::try_from(&raw).map_err(|e| LoadError::new(path, e.to_string()))
}

pub fn load_labeled_diagram(path: &Path, fr: &FreeRigid) -> Result<BrauerMor, LoadError> {
    let raw: RawBrauer = read_json(path)?;
    fr.from_raw(&raw).map_err(|e| LoadError::new(path, e.to_string()))
}
