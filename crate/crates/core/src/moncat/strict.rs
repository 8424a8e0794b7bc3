use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fincat::{validate_category, CategoryError, FinCat, MorId, ObjId, RawCategory, RawMorphism};

use super::SymmetricMonoidal;

/// Category tables extended with a strict symmetric monoidal structure.
///
/// Entries that are forced by strict unitality (`id_1 ⊗ f`, `s_{x,1}`, ...)
/// or by functoriality on identities (`id_x ⊗ id_y`) may be omitted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawMonoidal {
    pub objects: Vec<String>,
    pub morphisms: Vec<RawMorphism>,
    pub identities: std::collections::BTreeMap<String, String>,
    #[serde(default)]
    pub composition: Vec<[String; 3]>,
    pub tensor_objects: Vec<[String; 3]>,
    #[serde(default)]
    pub tensor_morphisms: Vec<[String; 3]>,
    pub unit: String,
    #[serde(default)]
    pub symmetry: Vec<[String; 3]>,
}

impl RawMonoidal {
    pub fn category(&self) -> RawCategory {
        RawCategory {
            objects: self.objects.clone(),
            morphisms: self.morphisms.clone(),
            identities: self.identities.clone(),
            composition: self.composition.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MonoidalError {
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error("dangling reference `{0}`")]
    DanglingReference(String),
    #[error("missing table entry: {0}")]
    MissingEntry(String),
    #[error("conflicting table entries: {0}")]
    ConflictingEntry(String),
    #[error("tensor has the wrong source or target: {0}")]
    TensorTyping(String),
    #[error("unit law fails: {0}")]
    UnitViolation(String),
    #[error("associativity fails: {0}")]
    AssocViolation(String),
    #[error("tensor is not functorial: {0}")]
    FunctorialityViolation(String),
    #[error("symmetry fails: {0}")]
    SymmetryViolation(String),
    #[error("symmetry is not natural: {0}")]
    NaturalityViolation(String),
    #[error("hexagon fails: {0}")]
    HexagonViolation(String),
}

/// A strict symmetric monoidal structure on a finite category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictMonCat {
    base: Arc<FinCat>,
    tensor_obj: Vec<ObjId>,
    tensor_mor: Vec<MorId>,
    unit: ObjId,
    symmetry: Vec<MorId>,
}

impl StrictMonCat {
    /// Builds and exhaustively checks a strict symmetric monoidal category
    /// from dense tables indexed `x * n + y` (objects) and `f * m + g`
    /// (morphisms).
    pub fn from_tables(
        base: Arc<FinCat>,
        tensor_obj: Vec<ObjId>,
        tensor_mor: Vec<MorId>,
        unit: ObjId,
        symmetry: Vec<MorId>,
    ) -> Result<Self, MonoidalError> {
        let (n, m) = (base.object_count(), base.morphism_count());
        if tensor_obj.len() != n * n || tensor_mor.len() != m * m || symmetry.len() != n * n || unit >= n {
            return Err(MonoidalError::MissingEntry("tables have the wrong size".into()));
        }
        if tensor_obj.iter().chain(&[unit]).any(|&x| x >= n) || tensor_mor.iter().chain(&symmetry).any(|&f| f >= m) {
            return Err(MonoidalError::DanglingReference("index out of range".into()));
        }
        let cat = Self { base, tensor_obj, tensor_mor, unit, symmetry };
        cat.check()?;
        Ok(cat)
    }

    pub fn base(&self) -> &Arc<FinCat> {
        &self.base
    }

    pub fn unit(&self) -> ObjId {
        self.unit
    }

    pub fn tensor_obj(&self, x: ObjId, y: ObjId) -> ObjId {
        self.tensor_obj[x * self.base.object_count() + y]
    }

    pub fn tensor_mor(&self, f: MorId, g: MorId) -> MorId {
        self.tensor_mor[f * self.base.morphism_count() + g]
    }

    pub fn symmetry(&self, x: ObjId, y: ObjId) -> MorId {
        self.symmetry[x * self.base.object_count() + y]
    }

    pub fn to_raw(&self) -> RawMonoidal {
        let c = &*self.base;
        let raw = c.to_raw();
        let on = |x| c.object_name(x).to_owned();
        let mn = |f| c.morphism_name(f).to_owned();
        let mut tensor_morphisms = Vec::new();
        for f in c.morphisms() {
            for g in c.morphisms() {
                if !(c.is_identity(f) && c.is_identity(g)) && f != c.identity(self.unit) && g != c.identity(self.unit) {
                    tensor_morphisms.push([mn(f), mn(g), mn(self.tensor_mor(f, g))]);
                }
            }
        }
        RawMonoidal {
            objects: raw.objects,
            morphisms: raw.morphisms,
            identities: raw.identities,
            composition: raw.composition,
            tensor_objects: c
                .objects()
                .flat_map(|x| c.objects().map(move |y| (x, y)))
                .map(|(x, y)| [on(x), on(y), on(self.tensor_obj(x, y))])
                .collect(),
            tensor_morphisms,
            unit: on(self.unit),
            symmetry: c
                .objects()
                .flat_map(|x| c.objects().map(move |y| (x, y)))
                .filter(|&(x, y)| x != self.unit && y != self.unit)
                .map(|(x, y)| [on(x), on(y), mn(self.symmetry(x, y))])
                .collect(),
        }
    }

    fn check(&self) -> Result<(), MonoidalError> {
        let c = &*self.base;
        let on = |x| c.object_name(x).to_owned();
        let mn = |f| c.morphism_name(f).to_owned();
        let unit = self.unit;
        let id_unit = c.identity(unit);

        for f in c.morphisms() {
            for g in c.morphisms() {
                let fg = self.tensor_mor(f, g);
                if c.src(fg) != self.tensor_obj(c.src(f), c.src(g)) || c.dst(fg) != self.tensor_obj(c.dst(f), c.dst(g))
                {
                    return Err(MonoidalError::TensorTyping(format!("{}⊗{}", mn(f), mn(g))));
                }
            }
        }
        for x in c.objects() {
            if self.tensor_obj(unit, x) != x || self.tensor_obj(x, unit) != x {
                return Err(MonoidalError::UnitViolation(format!("object {}", on(x))));
            }
            for y in c.objects() {
                let xy = self.tensor_obj(x, y);
                for z in c.objects() {
                    if self.tensor_obj(xy, z) != self.tensor_obj(x, self.tensor_obj(y, z)) {
                        return Err(MonoidalError::AssocViolation(format!("objects {}, {}, {}", on(x), on(y), on(z))));
                    }
                }
            }
        }
        for f in c.morphisms() {
            if self.tensor_mor(id_unit, f) != f || self.tensor_mor(f, id_unit) != f {
                return Err(MonoidalError::UnitViolation(format!("morphism {}", mn(f))));
            }
            for g in c.morphisms() {
                let fg = self.tensor_mor(f, g);
                for h in c.morphisms() {
                    if self.tensor_mor(fg, h) != self.tensor_mor(f, self.tensor_mor(g, h)) {
                        return Err(MonoidalError::AssocViolation(format!(
                            "morphisms {}, {}, {}",
                            mn(f),
                            mn(g),
                            mn(h)
                        )));
                    }
                }
            }
        }

        for x in c.objects() {
            for y in c.objects() {
                if self.tensor_mor(c.identity(x), c.identity(y)) != c.identity(self.tensor_obj(x, y)) {
                    return Err(MonoidalError::FunctorialityViolation(format!("id_{}⊗id_{}", on(x), on(y))));
                }
            }
        }
        for f in c.morphisms() {
            for &f2 in c.morphisms_from(c.dst(f)) {
                let f2f = c.compose(f2, f).unwrap();
                for g in c.morphisms() {
                    for &g2 in c.morphisms_from(c.dst(g)) {
                        let g2g = c.compose(g2, g).unwrap();
                        let lhs = self.tensor_mor(f2f, g2g);
                        let rhs = c.compose(self.tensor_mor(f2, g2), self.tensor_mor(f, g));
                        if rhs != Some(lhs) {
                            return Err(MonoidalError::FunctorialityViolation(format!(
                                "({}∘{})⊗({}∘{})",
                                mn(f2),
                                mn(f),
                                mn(g2),
                                mn(g)
                            )));
                        }
                    }
                }
            }
        }

        for x in c.objects() {
            for y in c.objects() {
                let s = self.symmetry(x, y);
                let (xy, yx) = (self.tensor_obj(x, y), self.tensor_obj(y, x));
                if c.src(s) != xy || c.dst(s) != yx {
                    return Err(MonoidalError::SymmetryViolation(format!("s_{{{},{}}} is ill-typed", on(x), on(y))));
                }
            }
        }
        for x in c.objects() {
            if self.symmetry(x, unit) != c.identity(x) || self.symmetry(unit, x) != c.identity(x) {
                return Err(MonoidalError::SymmetryViolation(format!("s with the unit at {}", on(x))));
            }
            for y in c.objects() {
                if c.compose(self.symmetry(y, x), self.symmetry(x, y)) != Some(c.identity(self.tensor_obj(x, y))) {
                    return Err(MonoidalError::SymmetryViolation(format!(
                        "s_{{{y},{x}}}∘s_{{{x},{y}}} ≠ id",
                        x = on(x),
                        y = on(y)
                    )));
                }
                for z in c.objects() {
                    let lhs = self.symmetry(x, self.tensor_obj(y, z));
                    let rhs = c.compose(
                        self.tensor_mor(c.identity(y), self.symmetry(x, z)),
                        self.tensor_mor(self.symmetry(x, y), c.identity(z)),
                    );
                    if rhs != Some(lhs) {
                        return Err(MonoidalError::HexagonViolation(format!("{}, {}, {}", on(x), on(y), on(z))));
                    }
                }
            }
        }
        for f in c.morphisms() {
            for g in c.morphisms() {
                let (x, y, x2, y2) = (c.src(f), c.src(g), c.dst(f), c.dst(g));
                let lhs = c.compose(self.symmetry(x2, y2), self.tensor_mor(f, g));
                let rhs = c.compose(self.tensor_mor(g, f), self.symmetry(x, y));
                if lhs != rhs {
                    return Err(MonoidalError::NaturalityViolation(format!("{}, {}", mn(f), mn(g))));
                }
            }
        }
        Ok(())
    }
}

fn fill(slot: &mut Option<usize>, value: usize, what: impl FnOnce() -> String) -> Result<(), MonoidalError> {
    match *slot {
        Some(prev) if prev != value => Err(MonoidalError::ConflictingEntry(what())),
        _ => {
            *slot = Some(value);
            Ok(())
        }
    }
}

/// Checks raw monoidal tables: the underlying category, then every strict
/// monoidal and symmetry law, by exhaustive enumeration.
pub fn validate_monoidal(raw: &RawMonoidal) -> Result<StrictMonCat, MonoidalError> {
    let c = validate_category(&raw.category())?;
    let (n, m) = (c.object_count(), c.morphism_count());
    let obj = |name: &str| c.object_id(name).ok_or_else(|| MonoidalError::DanglingReference(name.to_owned()));
    let mor = |name: &str| c.morphism_id(name).ok_or_else(|| MonoidalError::DanglingReference(name.to_owned()));
    let unit = obj(&raw.unit)?;

    let mut tensor_obj = vec![None; n * n];
    for [x, y, xy] in &raw.tensor_objects {
        fill(&mut tensor_obj[obj(x)? * n + obj(y)?], obj(xy)?, || format!("{x}⊗{y}"))?;
    }
    for x in c.objects() {
        fill(&mut tensor_obj[unit * n + x], x, || format!("{}⊗{}", raw.unit, c.object_name(x)))
            .map_err(|_| MonoidalError::UnitViolation(format!("object {}", c.object_name(x))))?;
        fill(&mut tensor_obj[x * n + unit], x, || format!("{}⊗{}", c.object_name(x), raw.unit))
            .map_err(|_| MonoidalError::UnitViolation(format!("object {}", c.object_name(x))))?;
    }
    let tensor_obj: Vec<ObjId> = tensor_obj
        .into_iter()
        .enumerate()
        .map(|(i, t)| {
            t.ok_or_else(|| MonoidalError::MissingEntry(format!("{}⊗{}", c.object_name(i / n), c.object_name(i % n))))
        })
        .collect::<Result<_, _>>()?;

    let mut tensor_mor = vec![None; m * m];
    for [f, g, fg] in &raw.tensor_morphisms {
        fill(&mut tensor_mor[mor(f)? * m + mor(g)?], mor(fg)?, || format!("{f}⊗{g}"))?;
    }
    let id_unit = c.identity(unit);
    for f in c.morphisms() {
        let name = || format!("morphism {}", c.morphism_name(f));
        fill(&mut tensor_mor[id_unit * m + f], f, name).map_err(|_| MonoidalError::UnitViolation(name()))?;
        fill(&mut tensor_mor[f * m + id_unit], f, name).map_err(|_| MonoidalError::UnitViolation(name()))?;
    }
    for x in c.objects() {
        for y in c.objects() {
            let what = || format!("id_{}⊗id_{}", c.object_name(x), c.object_name(y));
            fill(&mut tensor_mor[c.identity(x) * m + c.identity(y)], c.identity(tensor_obj[x * n + y]), what)
                .map_err(|_| MonoidalError::FunctorialityViolation(what()))?;
        }
    }
    let tensor_mor: Vec<MorId> = tensor_mor
        .into_iter()
        .enumerate()
        .map(|(i, t)| {
            t.ok_or_else(|| {
                MonoidalError::MissingEntry(format!("{}⊗{}", c.morphism_name(i / m), c.morphism_name(i % m)))
            })
        })
        .collect::<Result<_, _>>()?;

    let mut symmetry = vec![None; n * n];
    for [x, y, s] in &raw.symmetry {
        fill(&mut symmetry[obj(x)? * n + obj(y)?], mor(s)?, || format!("s_{{{x},{y}}}"))?;
    }
    for x in c.objects() {
        let what = || format!("s with the unit at {}", c.object_name(x));
        fill(&mut symmetry[unit * n + x], c.identity(x), what).map_err(|_| MonoidalError::SymmetryViolation(what()))?;
        fill(&mut symmetry[x * n + unit], c.identity(x), what).map_err(|_| MonoidalError::SymmetryViolation(what()))?;
    }
    let symmetry: Vec<MorId> = symmetry
        .into_iter()
        .enumerate()
        .map(|(i, s)| {
            s.ok_or_else(|| {
                MonoidalError::MissingEntry(format!("s_{{{},{}}}", c.object_name(i / n), c.object_name(i % n)))
            })
        })
        .collect::<Result<_, _>>()?;

    StrictMonCat::from_tables(Arc::new(c), tensor_obj, tensor_mor, unit, symmetry)
}

impl SymmetricMonoidal for StrictMonCat {
    type Obj = ObjId;
    type Mor = MorId;

    fn unit_object(&self) -> ObjId {
        self.unit
    }

    fn tensor_objects(&self, a: &ObjId, b: &ObjId) -> ObjId {
        self.tensor_obj(*a, *b)
    }

    fn dom(&self, f: &MorId) -> ObjId {
        self.base.src(*f)
    }

    fn cod(&self, f: &MorId) -> ObjId {
        self.base.dst(*f)
    }

    fn identity_on(&self, a: &ObjId) -> MorId {
        self.base.identity(*a)
    }

    fn compose(&self, g: &MorId, f: &MorId) -> Option<MorId> {
        self.base.compose(*g, *f)
    }

    fn tensor_morphisms(&self, f: &MorId, g: &MorId) -> MorId {
        self.tensor_mor(*f, *g)
    }

    fn braiding(&self, a: &ObjId, b: &ObjId) -> MorId {
        self.symmetry(*a, *b)
    }
}

/// Small monoidal categories used throughout the tests and the corpus.
pub mod standard {
    use super::*;
    use crate::fincat::standard as cats;

    /// The terminal category with its unique monoidal structure.
    pub fn terminal() -> StrictMonCat {
        let c = Arc::new(cats::terminal());
        StrictMonCat::from_tables(c, vec![0], vec![0], 0, vec![0]).unwrap()
    }

    /// The discrete category on `Z/n`, with addition as tensor and `0` as unit.
    pub fn cyclic_group(n: usize) -> StrictMonCat {
        let names: Vec<String> = (0..n).map(|k| format!("g{k}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let c = Arc::new(cats::discrete(&refs));
        let table: Vec<usize> = (0..n).flat_map(|a| (0..n).map(move |b| (a + b) % n)).collect();
        // Identities are declared in object order, so object k has identity k.
        StrictMonCat::from_tables(c, table.clone(), table, 0, (0..n * n).map(|i| (i / n + i % n) % n).collect())
            .unwrap()
    }

    /// The poset `0 < 1` with meet as tensor and `1` as unit.
    pub fn meet_arrow() -> StrictMonCat {
        let c = Arc::new(cats::walking_arrow());
        // objects x = 0, y = 1; morphisms id_x, id_y, a.
        let (x, y) = (0, 1);
        let meet = |p: usize, q: usize| p.min(q);
        let tensor_obj = vec![meet(x, x), meet(x, y), meet(y, x), meet(y, y)];
        let m = c.morphism_count();
        let mut tensor_mor = vec![0; m * m];
        for f in c.morphisms() {
            for g in c.morphisms() {
                let (s, t) = (meet(c.src(f), c.src(g)), meet(c.dst(f), c.dst(g)));
                tensor_mor[f * m + g] = c.hom(s, t)[0];
            }
        }
        let symmetry = tensor_obj.iter().map(|&z| c.identity(z)).collect();
        StrictMonCat::from_tables(c, tensor_obj, tensor_mor, y, symmetry).unwrap()
    }
}
