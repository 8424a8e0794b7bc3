use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::category::{FinCat, MorId, ObjId};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FunctorError {
    #[error("dangling reference `{0}`")]
    DanglingReference(String),
    #[error("no image given for `{0}`")]
    MissingImage(String),
    #[error("image of `{0}` has the wrong source or target")]
    TypeMismatch(String),
    #[error("identity of `{0}` is not sent to an identity")]
    IdentityNotPreserved(String),
    #[error("composite {g}∘{f} is not preserved")]
    CompositeNotPreserved { g: String, f: String },
    #[error("functors are not composable")]
    NotComposable,
}

/// Object and morphism assignments keyed by name. Images of identity
/// morphisms may be omitted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawFunctor {
    pub objects: BTreeMap<String, String>,
    #[serde(default)]
    pub morphisms: BTreeMap<String, String>,
}

/// A functor between finite categories, checked on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functor {
    source: Arc<FinCat>,
    target: Arc<FinCat>,
    object_map: Vec<ObjId>,
    morphism_map: Vec<MorId>,
}

impl Functor {
    pub fn new(
        source: Arc<FinCat>,
        target: Arc<FinCat>,
        object_map: Vec<ObjId>,
        morphism_map: Vec<MorId>,
    ) -> Result<Self, FunctorError> {
        if object_map.len() != source.object_count() || morphism_map.len() != source.morphism_count() {
            return Err(FunctorError::MissingImage("tables have the wrong length".into()));
        }
        if object_map.iter().any(|&y| y >= target.object_count())
            || morphism_map.iter().any(|&g| g >= target.morphism_count())
        {
            return Err(FunctorError::DanglingReference("index out of range".into()));
        }
        let functor = Self { source, target, object_map, morphism_map };
        functor.check()?;
        Ok(functor)
    }

    pub fn identity(cat: Arc<FinCat>) -> Self {
        Self {
            object_map: cat.objects().collect(),
            morphism_map: cat.morphisms().collect(),
            source: cat.clone(),
            target: cat,
        }
    }

    /// The unique functor into a category with one object and one morphism.
    pub fn to_terminal(source: Arc<FinCat>, terminal: Arc<FinCat>) -> Result<Self, FunctorError> {
        let object_map = vec![0; source.object_count()];
        let morphism_map = vec![0; source.morphism_count()];
        Self::new(source, terminal, object_map, morphism_map)
    }

    pub fn from_raw(source: Arc<FinCat>, target: Arc<FinCat>, raw: &RawFunctor) -> Result<Self, FunctorError> {
        for name in raw.objects.keys() {
            source.object_id(name).ok_or_else(|| FunctorError::DanglingReference(name.clone()))?;
        }
        for name in raw.morphisms.keys() {
            source.morphism_id(name).ok_or_else(|| FunctorError::DanglingReference(name.clone()))?;
        }
        let mut object_map = Vec::with_capacity(source.object_count());
        for x in source.objects() {
            let name = source.object_name(x);
            let image = raw.objects.get(name).ok_or_else(|| FunctorError::MissingImage(name.to_owned()))?;
            object_map.push(target.object_id(image).ok_or_else(|| FunctorError::DanglingReference(image.clone()))?);
        }
        let mut morphism_map = Vec::with_capacity(source.morphism_count());
        for f in source.morphisms() {
            let name = source.morphism_name(f);
            let image = match raw.morphisms.get(name) {
                Some(image) => {
                    target.morphism_id(image).ok_or_else(|| FunctorError::DanglingReference(image.clone()))?
                }
                None if source.is_identity(f) => target.identity(object_map[source.src(f)]),
                None => return Err(FunctorError::MissingImage(name.to_owned())),
            };
            morphism_map.push(image);
        }
        Self::new(source, target, object_map, morphism_map)
    }

    pub fn to_raw(&self) -> RawFunctor {
        RawFunctor {
            objects: self
                .source
                .objects()
                .map(|x| (self.source.object_name(x).to_owned(), self.target.object_name(self.obj(x)).to_owned()))
                .collect(),
            morphisms: self
                .source
                .morphisms()
                .map(|f| (self.source.morphism_name(f).to_owned(), self.target.morphism_name(self.mor(f)).to_owned()))
                .collect(),
        }
    }

    fn check(&self) -> Result<(), FunctorError> {
        let (c, d) = (&*self.source, &*self.target);
        for f in c.morphisms() {
            let g = self.mor(f);
            if d.src(g) != self.obj(c.src(f)) || d.dst(g) != self.obj(c.dst(f)) {
                return Err(FunctorError::TypeMismatch(c.morphism_name(f).to_owned()));
            }
        }
        for x in c.objects() {
            if self.mor(c.identity(x)) != d.identity(self.obj(x)) {
                return Err(FunctorError::IdentityNotPreserved(c.object_name(x).to_owned()));
            }
        }
        for f in c.morphisms() {
            for &g in c.morphisms_from(c.dst(f)) {
                let gf = c.compose(g, f).unwrap();
                if d.compose(self.mor(g), self.mor(f)) != Some(self.mor(gf)) {
                    return Err(FunctorError::CompositeNotPreserved {
                        g: c.morphism_name(g).to_owned(),
                        f: c.morphism_name(f).to_owned(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &Arc<FinCat> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinCat> {
        &self.target
    }

    pub fn obj(&self, x: ObjId) -> ObjId {
        self.object_map[x]
    }

    pub fn mor(&self, f: MorId) -> MorId {
        self.morphism_map[f]
    }

    pub fn object_map(&self) -> &[ObjId] {
        &self.object_map
    }

    pub fn morphism_map(&self) -> &[MorId] {
        &self.morphism_map
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &Functor) -> Result<Functor, FunctorError> {
        if first.target != self.source {
            return Err(FunctorError::NotComposable);
        }
        Ok(Functor {
            source: first.source.clone(),
            target: self.target.clone(),
            object_map: first.object_map.iter().map(|&x| self.obj(x)).collect(),
            morphism_map: first.morphism_map.iter().map(|&f| self.mor(f)).collect(),
        })
    }

    /// Whether every hom map `Hom(x, y) → Hom(Fx, Fy)` is injective.
    pub fn is_faithful(&self) -> bool {
        self.hom_maps().all(|(image, _)| {
            let mut sorted = image.clone();
            sorted.sort_unstable();
            sorted.dedup();
            sorted.len() == image.len()
        })
    }

    /// Whether every hom map `Hom(x, y) → Hom(Fx, Fy)` is surjective.
    pub fn is_full(&self) -> bool {
        self.hom_maps().all(|(image, full)| full.iter().all(|g| image.contains(g)))
    }

    fn hom_maps(&self) -> impl Iterator<Item = (Vec<MorId>, &[MorId])> + '_ {
        let c = &*self.source;
        c.objects().flat_map(move |x| {
            c.objects().map(move |y| {
                let image = c.hom(x, y).iter().map(|&f| self.mor(f)).collect();
                (image, self.target.hom(self.obj(x), self.obj(y)))
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::super::category::standard::*;
    use super::*;

    #[test]
    fn identity_functor_is_valid() {
        let c = Arc::new(walking_isomorphism());
        let id = Functor::identity(c.clone());
        assert!(Functor::new(c.clone(), c, id.object_map.clone(), id.morphism_map.clone()).is_ok());
        assert!(id.is_full() && id.is_faithful());
    }

    #[test]
    fn broken_composite_is_rejected() {
        // f ↦ s, g ↦ id would send g∘f = id_x to s.
        let c = Arc::new(walking_isomorphism());
        let d = Arc::new(two_element_group());
        let raw = RawFunctor {
            objects: [("x".into(), "o".into()), ("y".into(), "o".into())].into(),
            morphisms: [("f".into(), "s".into()), ("g".into(), "id_o".into())].into(),
        };
        assert!(matches!(
            Functor::from_raw(c.clone(), d.clone(), &raw),
            Err(FunctorError::CompositeNotPreserved { .. })
        ));
        let raw = RawFunctor {
            objects: raw.objects.clone(),
            morphisms: [("f".into(), "s".into()), ("g".into(), "s".into())].into(),
        };
        let f = Functor::from_raw(c, d, &raw).unwrap();
        // hom(x, x) = {id_x} misses s.
        assert!(!f.is_full());
        assert!(f.is_faithful());
    }

    #[test]
    fn missing_image_is_reported() {
        let c = Arc::new(walking_arrow());
        let raw =
            RawFunctor { objects: [("x".into(), "x".into()), ("y".into(), "y".into())].into(), ..Default::default() };
        assert_eq!(Functor::from_raw(c.clone(), c, &raw), Err(FunctorError::MissingImage("a".into())));
    }

    #[test]
    fn composition_of_functors() {
        let c = Arc::new(walking_arrow());
        let t = Arc::new(terminal());
        let bang = Functor::to_terminal(c.clone(), t.clone()).unwrap();
        let composite = bang.after(&Functor::identity(c)).unwrap();
        assert_eq!(composite, bang);
        assert_eq!(bang.after(&bang), Err(FunctorError::NotComposable));
    }
}
