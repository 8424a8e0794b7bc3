use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type ObjId = usize;
pub type MorId = usize;

/// A morphism declaration as it appears in a category file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawMorphism {
    pub id: String,
    pub src: String,
    pub dst: String,
}

impl RawMorphism {
    pub fn new(id: impl Into<String>, src: impl Into<String>, dst: impl Into<String>) -> Self {
        Self { id: id.into(), src: src.into(), dst: dst.into() }
    }
}

/// Unchecked category tables. `composition` holds triples `[g, f, g∘f]`;
/// composites with an identity may be omitted and are filled in by
/// [`validate_category`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawCategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<RawMorphism>,
    pub identities: BTreeMap<String, String>,
    #[serde(default)]
    pub composition: Vec<[String; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CategoryError {
    #[error("identifier `{0}` is declared more than once")]
    DuplicateId(String),
    #[error("dangling reference `{id}` ({context})")]
    DanglingReference { id: String, context: String },
    #[error("object `{0}` has no identity morphism")]
    MissingIdentity(String),
    #[error("composite {g}∘{f} is declared but {g} and {f} are not composable")]
    NotComposable { g: String, f: String },
    #[error("composite {g}∘{f} is declared twice with different results")]
    ConflictingComposite { g: String, f: String },
    #[error("composite {g}∘{f} is missing from the composition table")]
    MissingComposite { g: String, f: String },
    #[error("identity law fails for morphism `{0}`")]
    IdentityViolation(String),
    #[error("associativity fails for {h}∘{g}∘{f}")]
    AssocViolation { h: String, g: String, f: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct MorphismInfo {
    name: String,
    src: ObjId,
    dst: ObjId,
}

/// A finite category stored as total explicit tables.
///
/// Objects and morphisms are addressed by dense indices ([`ObjId`],
/// [`MorId`]) in declaration order; names are kept for reporting and for
/// round-tripping through [`RawCategory`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCat {
    objects: Vec<String>,
    morphisms: Vec<MorphismInfo>,
    identities: Vec<MorId>,
    homs: Vec<Vec<MorId>>,
    composition: Vec<Option<MorId>>,
    outgoing: Vec<Vec<MorId>>,
    object_ids: HashMap<String, ObjId>,
    morphism_ids: HashMap<String, MorId>,
}

impl FinCat {
    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> std::ops::Range<ObjId> {
        0..self.objects.len()
    }

    pub fn morphisms(&self) -> std::ops::Range<MorId> {
        0..self.morphisms.len()
    }

    pub fn object_name(&self, x: ObjId) -> &str {
        &self.objects[x]
    }

    pub fn morphism_name(&self, f: MorId) -> &str {
        &self.morphisms[f].name
    }

    pub fn object_id(&self, name: &str) -> Option<ObjId> {
        self.object_ids.get(name).copied()
    }

    pub fn morphism_id(&self, name: &str) -> Option<MorId> {
        self.morphism_ids.get(name).copied()
    }

    pub fn src(&self, f: MorId) -> ObjId {
        self.morphisms[f].src
    }

    pub fn dst(&self, f: MorId) -> ObjId {
        self.morphisms[f].dst
    }

    pub fn identity(&self, x: ObjId) -> MorId {
        self.identities[x]
    }

    pub fn is_identity(&self, f: MorId) -> bool {
        self.identities[self.src(f)] == f
    }

    pub fn hom(&self, x: ObjId, y: ObjId) -> &[MorId] {
        &self.homs[x * self.objects.len() + y]
    }

    pub fn endomorphisms(&self, x: ObjId) -> &[MorId] {
        self.hom(x, x)
    }

    /// `g∘f`, or `None` when `dst(f) != src(g)`.
    pub fn compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        self.composition[g * self.morphisms.len() + f]
    }

    /// Composes a path given in application order (first morphism first).
    pub fn compose_path(&self, path: &[MorId]) -> Option<MorId> {
        let (&first, rest) = path.split_first()?;
        rest.iter().try_fold(first, |acc, &g| self.compose(g, acc))
    }

    pub fn are_isomorphic(&self, x: ObjId, y: ObjId) -> bool {
        self.hom(x, y).iter().any(|&f| {
            self.hom(y, x)
                .iter()
                .any(|&g| self.compose(g, f) == Some(self.identity(x)) && self.compose(f, g) == Some(self.identity(y)))
        })
    }

    /// Tables for this category. Composites involving identities are left
    /// implicit.
    pub fn to_raw(&self) -> RawCategory {
        let mut composition = Vec::new();
        for f in self.morphisms() {
            if self.is_identity(f) {
                continue;
            }
            for &g in self.morphisms_from(self.dst(f)) {
                if self.is_identity(g) {
                    continue;
                }
                let gf = self.compose(g, f).expect("total composition");
                composition.push([
                    self.morphism_name(g).to_owned(),
                    self.morphism_name(f).to_owned(),
                    self.morphism_name(gf).to_owned(),
                ]);
            }
        }
        RawCategory {
            objects: self.objects.clone(),
            morphisms: self
                .morphisms
                .iter()
                .map(|m| RawMorphism::new(&m.name, &self.objects[m.src], &self.objects[m.dst]))
                .collect(),
            identities: self
                .objects()
                .map(|x| (self.objects[x].clone(), self.morphism_name(self.identity(x)).to_owned()))
                .collect(),
            composition,
        }
    }

    /// All morphisms with source `x`, in declaration order.
    pub fn morphisms_from(&self, x: ObjId) -> &[MorId] {
        &self.outgoing[x]
    }
}

impl FinCat {
    fn build(raw: &RawCategory) -> Result<FinCat, CategoryError> {
        let mut object_ids = HashMap::new();
        for (i, name) in raw.objects.iter().enumerate() {
            if object_ids.insert(name.clone(), i).is_some() {
                return Err(CategoryError::DuplicateId(name.clone()));
            }
        }
        let lookup_obj = |name: &str, context: String| {
            object_ids
                .get(name)
                .copied()
                .ok_or_else(|| CategoryError::DanglingReference { id: name.to_owned(), context })
        };

        let mut morphism_ids = HashMap::new();
        let mut morphisms = Vec::with_capacity(raw.morphisms.len());
        for (i, m) in raw.morphisms.iter().enumerate() {
            if morphism_ids.insert(m.id.clone(), i).is_some() {
                return Err(CategoryError::DuplicateId(m.id.clone()));
            }
            let src = lookup_obj(&m.src, format!("source of `{}`", m.id))?;
            let dst = lookup_obj(&m.dst, format!("target of `{}`", m.id))?;
            morphisms.push(MorphismInfo { name: m.id.clone(), src, dst });
        }
        let lookup_mor = |name: &str, context: String| {
            morphism_ids
                .get(name)
                .copied()
                .ok_or_else(|| CategoryError::DanglingReference { id: name.to_owned(), context })
        };

        for key in raw.identities.keys() {
            lookup_obj(key, "identities table key".to_owned())?;
        }
        let mut identities = Vec::with_capacity(raw.objects.len());
        for name in &raw.objects {
            let id_name = raw.identities.get(name).ok_or_else(|| CategoryError::MissingIdentity(name.clone()))?;
            let id = lookup_mor(id_name, format!("identity of `{name}`"))?;
            let x = object_ids[name];
            if morphisms[id].src != x || morphisms[id].dst != x {
                return Err(CategoryError::IdentityViolation(id_name.clone()));
            }
            identities.push(id);
        }

        let n = raw.objects.len();
        let m = morphisms.len();
        let mut homs = vec![Vec::new(); n * n];
        let mut outgoing = vec![Vec::new(); n];
        for (i, info) in morphisms.iter().enumerate() {
            homs[info.src * n + info.dst].push(i);
            outgoing[info.src].push(i);
        }

        let mut composition: Vec<Option<MorId>> = vec![None; m * m];
        for [g_name, f_name, gf_name] in &raw.composition {
            let g = lookup_mor(g_name, format!("composite {g_name}∘{f_name}"))?;
            let f = lookup_mor(f_name, format!("composite {g_name}∘{f_name}"))?;
            let gf = lookup_mor(gf_name, format!("composite {g_name}∘{f_name}"))?;
            if morphisms[g].src != morphisms[f].dst {
                return Err(CategoryError::NotComposable { g: g_name.clone(), f: f_name.clone() });
            }
            if morphisms[gf].src != morphisms[f].src || morphisms[gf].dst != morphisms[g].dst {
                return Err(CategoryError::DanglingReference {
                    id: gf_name.clone(),
                    context: format!(
                        "composite {g_name}∘{f_name} must lie in hom({}, {})",
                        raw.objects[morphisms[f].src], raw.objects[morphisms[g].dst]
                    ),
                });
            }
            let slot = &mut composition[g * m + f];
            match slot {
                Some(prev) if *prev != gf => {
                    return Err(CategoryError::ConflictingComposite { g: g_name.clone(), f: f_name.clone() })
                }
                _ => *slot = Some(gf),
            }
        }

        for (f, mor) in morphisms.iter().enumerate() {
            let (x, y) = (mor.src, mor.dst);
            for slot in [identities[y] * m + f, f * m + identities[x]] {
                match composition[slot] {
                    Some(h) if h != f => return Err(CategoryError::IdentityViolation(mor.name.clone())),
                    _ => composition[slot] = Some(f),
                }
            }
        }

        Ok(FinCat {
            objects: raw.objects.clone(),
            morphisms,
            identities,
            homs,
            composition,
            object_ids,
            morphism_ids,
            outgoing,
        })
    }
}

/// Checks raw tables and returns the category they describe.
///
/// Every composable pair must have a composite (those involving an identity
/// are implied), and associativity is checked over every composable triple.
/// The first violation found, in declaration order, is returned.
pub fn validate_category(raw: &RawCategory) -> Result<FinCat, CategoryError> {
    let cat = FinCat::build(raw)?;
    for f in cat.morphisms() {
        for &g in cat.morphisms_from(cat.dst(f)) {
            if cat.compose(g, f).is_none() {
                return Err(CategoryError::MissingComposite {
                    g: cat.morphism_name(g).to_owned(),
                    f: cat.morphism_name(f).to_owned(),
                });
            }
        }
    }
    for f in cat.morphisms() {
        for &g in cat.morphisms_from(cat.dst(f)) {
            let gf = cat.compose(g, f).unwrap();
            for &h in cat.morphisms_from(cat.dst(g)) {
                let hg = cat.compose(h, g).unwrap();
                if cat.compose(h, gf) != cat.compose(hg, f) {
                    return Err(CategoryError::AssocViolation {
                        h: cat.morphism_name(h).to_owned(),
                        g: cat.morphism_name(g).to_owned(),
                        f: cat.morphism_name(f).to_owned(),
                    });
                }
            }
        }
    }
    Ok(cat)
}

impl TryFrom<&RawCategory> for FinCat {
    type Error = CategoryError;

    fn try_from(raw: &RawCategory) -> Result<Self, Self::Error> {
        validate_category(raw)
    }
}

/// Small categories used throughout the tests and the bundled corpus.
pub mod standard {
    use super::*;

    fn raw(objects: &[&str], morphisms: &[(&str, &str, &str)], composition: &[[&str; 3]]) -> RawCategory {
        RawCategory {
            objects: objects.iter().map(|s| s.to_string()).collect(),
            morphisms: objects
                .iter()
                .map(|x| RawMorphism::new(format!("id_{x}"), *x, *x))
                .chain(morphisms.iter().map(|(f, s, d)| RawMorphism::new(*f, *s, *d)))
                .collect(),
            identities: objects.iter().map(|x| (x.to_string(), format!("id_{x}"))).collect(),
            composition: composition.iter().map(|t| t.map(str::to_owned)).collect(),
        }
    }

    /// One object `pt`, one morphism `id_pt`.
    pub fn terminal() -> FinCat {
        validate_category(&raw(&["pt"], &[], &[])).unwrap()
    }

    /// `a: x → y`.
    pub fn walking_arrow() -> FinCat {
        validate_category(&raw(&["x", "y"], &[("a", "x", "y")], &[])).unwrap()
    }

    /// `f: x → y`, `g: y → x`, mutually inverse.
    pub fn walking_isomorphism() -> FinCat {
        validate_category(&raw(
            &["x", "y"],
            &[("f", "x", "y"), ("g", "y", "x")],
            &[["g", "f", "id_x"], ["f", "g", "id_y"]],
        ))
        .unwrap()
    }

    /// One object `o` whose endomorphisms form the group of order two.
    pub fn two_element_group() -> FinCat {
        validate_category(&raw(&["o"], &[("s", "o", "o")], &[["s", "s", "id_o"]])).unwrap()
    }

    /// Discrete category on the given objects.
    pub fn discrete(objects: &[&str]) -> FinCat {
        validate_category(&raw(objects, &[], &[])).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::standard::*;
    use super::*;

    fn arrow_raw() -> RawCategory {
        walking_arrow().to_raw()
    }

    #[test]
    fn terminal_is_valid() {
        let c = terminal();
        assert_eq!(c.object_count(), 1);
        assert_eq!(c.morphism_count(), 1);
        assert_eq!(c.compose(0, 0), Some(0));
    }

    #[test]
    fn walking_arrow_is_valid() {
        let c = walking_arrow();
        let (x, y) = (c.object_id("x").unwrap(), c.object_id("y").unwrap());
        let a = c.morphism_id("a").unwrap();
        assert_eq!(c.hom(x, y), &[a]);
        assert!(c.hom(y, x).is_empty());
        assert_eq!(c.compose(c.identity(y), a), Some(a));
        assert_eq!(c.compose(a, a), None);
    }

    #[test]
    fn composite_outside_hom_is_dangling() {
        let mut raw = walking_isomorphism().to_raw();
        // g∘f must be an endomorphism of x; declare it to be f instead.
        for t in raw.composition.iter_mut() {
            if t[0] == "g" && t[1] == "f" {
                t[2] = "f".into();
            }
        }
        let err = validate_category(&raw).unwrap_err();
        assert!(matches!(err, CategoryError::DanglingReference { ref id, .. } if id == "f"), "{err}");
    }

    #[test]
    fn unknown_names_are_dangling() {
        let mut raw = arrow_raw();
        raw.morphisms.push(RawMorphism::new("b", "x", "z"));
        assert!(matches!(
            validate_category(&raw),
            Err(CategoryError::DanglingReference { id, .. }) if id == "z"
        ));
    }

    #[test]
    fn missing_composite_is_reported() {
        let mut raw = walking_isomorphism().to_raw();
        raw.composition.retain(|t| !(t[0] == "f" && t[1] == "g"));
        assert_eq!(validate_category(&raw), Err(CategoryError::MissingComposite { g: "f".into(), f: "g".into() }));
    }

    #[test]
    fn associativity_violation_names_the_triple() {
        // One object, End = {id, a, b}, with a∘a = b, a∘b = a, b∘a = b, b∘b = b.
        // (a∘a)∘b = b∘b = b but a∘(a∘b) = a∘a = b; (a∘b)∘a = a∘a = b vs a∘(b∘a) = a∘b = a.
        let raw = RawCategory {
            objects: vec!["o".into()],
            morphisms: vec![
                RawMorphism::new("id", "o", "o"),
                RawMorphism::new("a", "o", "o"),
                RawMorphism::new("b", "o", "o"),
            ],
            identities: [("o".to_string(), "id".to_string())].into(),
            composition: vec![
                ["a".into(), "a".into(), "b".into()],
                ["a".into(), "b".into(), "a".into()],
                ["b".into(), "a".into(), "b".into()],
                ["b".into(), "b".into(), "b".into()],
            ],
        };
        assert!(matches!(validate_category(&raw), Err(CategoryError::AssocViolation { .. })));
    }

    #[test]
    fn identity_violation_is_reported() {
        let mut raw = two_element_group().to_raw();
        raw.composition.push(["id_o".into(), "s".into(), "id_o".into()]);
        assert_eq!(validate_category(&raw), Err(CategoryError::IdentityViolation("s".into())));
    }

    #[test]
    fn duplicate_ids_are_rejected() {
        let mut raw = arrow_raw();
        raw.morphisms.push(RawMorphism::new("a", "x", "y"));
        assert_eq!(validate_category(&raw), Err(CategoryError::DuplicateId("a".into())));
    }

    #[test]
    fn raw_round_trip() {
        for c in [terminal(), walking_arrow(), walking_isomorphism(), two_element_group()] {
            assert_eq!(validate_category(&c.to_raw()).unwrap(), c);
        }
    }

    #[test]
    fn isomorphic_objects() {
        let c = walking_isomorphism();
        assert!(c.are_isomorphic(0, 1));
        assert!(!walking_arrow().are_isomorphic(0, 1));
    }
}
