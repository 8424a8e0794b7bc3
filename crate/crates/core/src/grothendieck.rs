//! The Grothendieck construction `∫F` of a strict diagram of finite
//! categories, its comparison with the hom-set coproduct formula, the unit
//! cocone, and the monoidal structure induced by lax monoidal data.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use thiserror::Error;

use crate::fincat::{
    find_right_adjoint, validate_category, CategoryError, FinCat, Functor, FunctorError, MorId, ObjId, RawCategory,
    RawMorphism,
};
use crate::moncat::StrictMonCat;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("diagram shape: {0}")]
    Shape(String),
    #[error("transition of `{0}` does not run between the right fibers")]
    TransitionTyping(String),
    #[error("diagram is not strictly functorial: {0}")]
    NotFunctorial(String),
    #[error(transparent)]
    Functor(#[from] FunctorError),
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error("lax monoidal data fails strict coherence: {0}")]
    CoherenceViolation(String),
}

/// A strict functor `F: I → Cat` into finite categories.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OplaxDiagram {
    index: Arc<FinCat>,
    fibers: Vec<Arc<FinCat>>,
    transitions: Vec<Functor>,
}

impl OplaxDiagram {
    pub fn new(index: Arc<FinCat>, fibers: Vec<Arc<FinCat>>, transitions: Vec<Functor>) -> Result<Self, DiagramError> {
        if fibers.len() != index.object_count() || transitions.len() != index.morphism_count() {
            return Err(DiagramError::Shape("one fiber per object and one transition per morphism".into()));
        }
        for f in index.morphisms() {
            let t = &transitions[f];
            if t.source() != &fibers[index.src(f)] || t.target() != &fibers[index.dst(f)] {
                return Err(DiagramError::TransitionTyping(index.morphism_name(f).to_owned()));
            }
        }
        for i in index.objects() {
            if transitions[index.identity(i)] != Functor::identity(fibers[i].clone()) {
                return Err(DiagramError::NotFunctorial(format!("F(id_{}) is not the identity", index.object_name(i))));
            }
        }
        for f in index.morphisms() {
            for &g in index.morphisms_from(index.dst(f)) {
                let gf = index.compose(g, f).expect("composable");
                if transitions[g].after(&transitions[f])? != transitions[gf] {
                    return Err(DiagramError::NotFunctorial(format!(
                        "F({}∘{}) ≠ F({})∘F({})",
                        index.morphism_name(g),
                        index.morphism_name(f),
                        index.morphism_name(g),
                        index.morphism_name(f)
                    )));
                }
            }
        }
        Ok(Self { index, fibers, transitions })
    }

    pub fn index(&self) -> &Arc<FinCat> {
        &self.index
    }

    pub fn fiber(&self, i: ObjId) -> &Arc<FinCat> {
        &self.fibers[i]
    }

    pub fn transition(&self, f: MorId) -> &Functor {
        &self.transitions[f]
    }
}

/// A morphism `(f, φ): (i, x) → (j, y)` of `∫F`, with `φ: F(f)x → y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GrothMor {
    pub base: MorId,
    pub source_object: ObjId,
    pub fiber: MorId,
}

/// `∫F` with its pair encoding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrothCat {
    diagram: OplaxDiagram,
    cat: Arc<FinCat>,
    objects: Vec<(ObjId, ObjId)>,
    morphisms: Vec<GrothMor>,
    object_ids: HashMap<(ObjId, ObjId), ObjId>,
    morphism_ids: HashMap<GrothMor, MorId>,
}

/// Builds `∫F`: objects `(i, x)`, morphisms `(f, φ)`, composition
/// `(g, ψ) ∘ (f, φ) = (g∘f, ψ ∘ F(g)(φ))`. The result is validated.
pub fn grothendieck(diagram: &OplaxDiagram) -> GrothCat {
    let index = &*diagram.index;
    let mut objects = Vec::new();
    for i in index.objects() {
        objects.extend(diagram.fibers[i].objects().map(|x| (i, x)));
    }
    let object_ids: HashMap<(ObjId, ObjId), ObjId> = objects.iter().enumerate().map(|(k, &p)| (p, k)).collect();

    let mut morphisms = Vec::new();
    for &(i, x) in &objects {
        for &f in index.morphisms_from(i) {
            let fiber = &diagram.fibers[index.dst(f)];
            let fx = diagram.transitions[f].obj(x);
            for y in fiber.objects() {
                morphisms.extend(fiber.hom(fx, y).iter().map(|&phi| GrothMor {
                    base: f,
                    source_object: x,
                    fiber: phi,
                }));
            }
        }
    }
    let morphism_ids: HashMap<GrothMor, MorId> = morphisms.iter().enumerate().map(|(k, &m)| (m, k)).collect();

    let object_name =
        |(i, x): (ObjId, ObjId)| format!("({},{})", index.object_name(i), diagram.fibers[i].object_name(x));
    let target_of = |m: &GrothMor| {
        let j = index.dst(m.base);
        (j, diagram.fibers[j].dst(m.fiber))
    };
    let morphism_name = |m: &GrothMor| {
        let i = index.src(m.base);
        let j = index.dst(m.base);
        format!(
            "({},{}|{})",
            index.morphism_name(m.base),
            diagram.fibers[j].morphism_name(m.fiber),
            diagram.fibers[i].object_name(m.source_object)
        )
    };

    let mut composition = Vec::new();
    for f in &morphisms {
        let mid = target_of(f);
        for g in morphisms.iter().filter(|g| (index.src(g.base), g.source_object) == mid) {
            let gf = GrothMor {
                base: index.compose(g.base, f.base).expect("composable in the index"),
                source_object: f.source_object,
                fiber: diagram.fibers[index.dst(g.base)]
                    .compose(g.fiber, diagram.transitions[g.base].mor(f.fiber))
                    .expect("transition preserves typing"),
            };
            composition.push([morphism_name(g), morphism_name(f), morphism_name(&gf)]);
        }
    }

    let raw = RawCategory {
        objects: objects.iter().map(|&p| object_name(p)).collect(),
        morphisms: morphisms
            .iter()
            .map(|m| {
                RawMorphism::new(
                    morphism_name(m),
                    object_name((index.src(m.base), m.source_object)),
                    object_name(target_of(m)),
                )
            })
            .collect(),
        identities: objects
            .iter()
            .map(|&(i, x)| {
                let id = GrothMor { base: index.identity(i), source_object: x, fiber: diagram.fibers[i].identity(x) };
                (object_name((i, x)), morphism_name(&id))
            })
            .collect(),
        composition,
    };
    let cat = validate_category(&raw).expect("the Grothendieck construction of a strict diagram is a category");
    GrothCat { diagram: diagram.clone(), cat: Arc::new(cat), objects, morphisms, object_ids, morphism_ids }
}

impl GrothCat {
    pub fn category(&self) -> &Arc<FinCat> {
        &self.cat
    }

    pub fn diagram(&self) -> &OplaxDiagram {
        &self.diagram
    }

    pub fn object(&self, i: ObjId, x: ObjId) -> ObjId {
        self.object_ids[&(i, x)]
    }

    pub fn object_pair(&self, o: ObjId) -> (ObjId, ObjId) {
        self.objects[o]
    }

    pub fn morphism(&self, m: GrothMor) -> Option<MorId> {
        self.morphism_ids.get(&m).copied()
    }

    pub fn morphism_pair(&self, m: MorId) -> GrothMor {
        self.morphisms[m]
    }

    /// `∫F → I`.
    pub fn projection(&self) -> Functor {
        Functor::new(
            self.cat.clone(),
            self.diagram.index.clone(),
            self.objects.iter().map(|&(i, _)| i).collect(),
            self.morphisms.iter().map(|m| m.base).collect(),
        )
        .expect("projection is a functor")
    }

    /// `ι_i: F(i) → ∫F`, `x ↦ (i, x)`, `φ ↦ (id_i, φ)`.
    pub fn inclusion(&self, i: ObjId) -> Functor {
        let fiber = &self.diagram.fibers[i];
        let id_i = self.diagram.index.identity(i);
        Functor::new(
            fiber.clone(),
            self.cat.clone(),
            fiber.objects().map(|x| self.object(i, x)).collect(),
            fiber
                .morphisms()
                .map(|phi| {
                    self.morphism(GrothMor { base: id_i, source_object: fiber.src(phi), fiber: phi })
                        .expect("fiber morphism")
                })
                .collect(),
        )
        .expect("inclusion is a functor")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomFormulaReport {
    pub source: String,
    pub target: String,
    pub hom_size: usize,
    /// `|⊔_{f: i→j} Hom_{F(j)}(F(f)x, y)|`.
    pub coproduct_size: usize,
    /// `(f, φ) ↦ (id_j, φ) ∘ (f, id)`, as pairs of index morphism, fiber
    /// morphism and morphism of `∫F`.
    pub comparison: Vec<(MorId, MorId, MorId)>,
    pub failure: Option<String>,
}

impl HomFormulaReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Compares `Hom_{∫F}((i,x),(j,y))` with `⊔_{f: i→j} Hom_{F(j)}(F(f)x, y)`
/// through the composite `(id_j, φ) ∘ (f, id_{F(f)x})` computed in `∫F`.
pub fn hom_formula_check(groth: &GrothCat, i: ObjId, x: ObjId, j: ObjId, y: ObjId) -> HomFormulaReport {
    let d = &groth.diagram;
    let (index, cat) = (&*d.index, &*groth.cat);
    let (src, dst) = (groth.object(i, x), groth.object(j, y));
    let fj = &d.fibers[j];

    let mut comparison = Vec::new();
    let mut failure = None;
    for &f in index.hom(i, j) {
        let fx = d.transitions[f].obj(x);
        let cocartesian = groth.morphism(GrothMor { base: f, source_object: x, fiber: fj.identity(fx) });
        for &phi in fj.hom(fx, y) {
            let vertical = groth.morphism(GrothMor { base: index.identity(j), source_object: fx, fiber: phi });
            match (cocartesian, vertical) {
                (Some(c), Some(v)) => match cat.compose(v, c) {
                    Some(m) => comparison.push((f, phi, m)),
                    None => {
                        failure = failure.or(Some(format!(
                            "({}, id) and (id, {}) do not compose",
                            index.morphism_name(f),
                            fj.morphism_name(phi)
                        )))
                    }
                },
                _ => {
                    failure = failure.or(Some(format!(
                        "missing morphism for ({}, {})",
                        index.morphism_name(f),
                        fj.morphism_name(phi)
                    )))
                }
            }
        }
    }

    let hom: BTreeSet<MorId> = cat.hom(src, dst).iter().copied().collect();
    let image: BTreeSet<MorId> = comparison.iter().map(|&(_, _, m)| m).collect();
    if failure.is_none() {
        if image.len() != comparison.len() {
            failure = Some("comparison map is not injective".into());
        } else if let Some(m) = hom.difference(&image).next() {
            failure = Some(format!("`{}` is not in the image of the comparison map", cat.morphism_name(*m)));
        } else if let Some(m) = image.difference(&hom).next() {
            failure = Some(format!("`{}` lands outside the hom set", cat.morphism_name(*m)));
        }
    }
    HomFormulaReport {
        source: cat.object_name(src).to_owned(),
        target: cat.object_name(dst).to_owned(),
        hom_size: hom.len(),
        coproduct_size: comparison.len(),
        comparison,
        failure,
    }
}

/// [`hom_formula_check`] for every ordered pair of objects of `∫F`.
pub fn hom_formula_check_all(groth: &GrothCat) -> Vec<HomFormulaReport> {
    let pairs = &groth.objects;
    pairs.iter().flat_map(|&(i, x)| pairs.iter().map(move |&(j, y)| hom_formula_check(groth, i, x, j, y))).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoconeReport {
    pub inclusions: Vec<Functor>,
    /// For each morphism `f: i → j` of the index, the components
    /// `(f, id): (i, x) → (j, F(f)x)` indexed by `x`.
    pub components: Vec<Vec<MorId>>,
    /// Whether each `ι_i` has a right adjoint. Reported only.
    pub has_right_adjoint: Vec<bool>,
    pub failures: Vec<String>,
}

impl CoconeReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// The inclusions `ι_i` with transformations `ι_i ⇒ ι_j ∘ F(f)` given by
/// `(f, id)`, checked for naturality and cocone compatibility.
pub fn unit_cocone(groth: &GrothCat) -> CoconeReport {
    let d = &groth.diagram;
    let (index, cat) = (&*d.index, &*groth.cat);
    let inclusions: Vec<Functor> = index.objects().map(|i| groth.inclusion(i)).collect();
    let components: Vec<Vec<MorId>> = index
        .morphisms()
        .map(|f| {
            let (i, j) = (index.src(f), index.dst(f));
            d.fibers[i]
                .objects()
                .map(|x| {
                    let fx = d.transitions[f].obj(x);
                    groth
                        .morphism(GrothMor { base: f, source_object: x, fiber: d.fibers[j].identity(fx) })
                        .expect("cocartesian lift")
                })
                .collect()
        })
        .collect();

    let mut failures = Vec::new();
    let projection = groth.projection();
    for i in index.objects() {
        if inclusions[i].object_map().iter().any(|&o| projection.obj(o) != i)
            || inclusions[i].morphism_map().iter().any(|&m| projection.mor(m) != index.identity(i))
        {
            failures.push(format!("projection ∘ ι_{} is not constant", index.object_name(i)));
        }
    }
    for f in index.morphisms() {
        let (i, j) = (index.src(f), index.dst(f));
        let fname = index.morphism_name(f);
        for phi in d.fibers[i].morphisms() {
            let (x, x2) = (d.fibers[i].src(phi), d.fibers[i].dst(phi));
            let lhs = cat.compose(components[f][x2], inclusions[i].mor(phi));
            let rhs = cat.compose(inclusions[j].mor(d.transitions[f].mor(phi)), components[f][x]);
            if lhs != rhs {
                failures.push(format!("component of {fname} is not natural at {}", d.fibers[i].morphism_name(phi)));
            }
        }
        if index.is_identity(f) && components[f].iter().any(|&c| !cat.is_identity(c)) {
            failures.push(format!("component of {fname} is not the identity"));
        }
        for &g in index.morphisms_from(j) {
            let gf = index.compose(g, f).expect("composable");
            for x in d.fibers[i].objects() {
                let fx = d.transitions[f].obj(x);
                if cat.compose(components[g][fx], components[f][x]) != Some(components[gf][x]) {
                    failures.push(format!(
                        "components of {} and {fname} do not compose to that of their composite",
                        index.morphism_name(g)
                    ));
                }
            }
        }
    }
    let has_right_adjoint = inclusions.iter().map(|inc| find_right_adjoint(inc).is_some()).collect();
    CoconeReport { inclusions, components, has_right_adjoint, failures }
}

/// An [`OplaxDiagram`] over a strict symmetric monoidal index with strict
/// lax structure `mu_{i,j}: F(i) × F(j) → F(i⊗j)` and a unit object in
/// `F(1)`. `braid` gives, for each `(i, j, x, y)`, a morphism
/// `F(s_{i,j})(mu(x, y)) → mu(y, x)` in `F(j⊗i)`; identities when absent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaxMonDiagram {
    pub index: Arc<StrictMonCat>,
    pub diagram: OplaxDiagram,
    /// `mu_objects[i*n + j][x * |F(j)| + y]`.
    pub mu_objects: Vec<Vec<ObjId>>,
    /// `mu_morphisms[i*n + j][φ * |mor F(j)| + ψ]`.
    pub mu_morphisms: Vec<Vec<MorId>>,
    pub unit_fiber: ObjId,
    pub braid: Option<Vec<Vec<MorId>>>,
}

impl LaxMonDiagram {
    fn mu_obj(&self, i: ObjId, j: ObjId, x: ObjId, y: ObjId) -> ObjId {
        let n = self.index.base().object_count();
        self.mu_objects[i * n + j][x * self.diagram.fibers[j].object_count() + y]
    }

    fn mu_mor(&self, i: ObjId, j: ObjId, phi: MorId, psi: MorId) -> MorId {
        let n = self.index.base().object_count();
        self.mu_morphisms[i * n + j][phi * self.diagram.fibers[j].morphism_count() + psi]
    }

    fn braid(&self, i: ObjId, j: ObjId, x: ObjId, y: ObjId) -> MorId {
        let n = self.index.base().object_count();
        match &self.braid {
            Some(table) => table[i * n + j][x * self.diagram.fibers[j].object_count() + y],
            None => {
                let fiber = &self.diagram.fibers[self.index.tensor_obj(j, i)];
                fiber.identity(self.mu_obj(j, i, y, x))
            }
        }
    }
}

/// The strict symmetric monoidal structure on `∫F`:
/// `(i,x) ⊗ (j,y) = (i⊗j, mu(x,y))`, `(f,φ) ⊗ (g,ψ) = (f⊗g, mu(φ,ψ))`, unit
/// `(1, unit_fiber)`, symmetry `(s_{i,j}, braid)`. Every coherence law is
/// checked exhaustively on the result.
pub fn monoidal_grothendieck(lax: &LaxMonDiagram) -> Result<(GrothCat, StrictMonCat), DiagramError> {
    let d = &lax.diagram;
    let m = &*lax.index;
    if d.index != *m.base() {
        return Err(DiagramError::Shape("diagram index is not the monoidal index".into()));
    }
    let n = m.base().object_count();
    if lax.mu_objects.len() != n * n || lax.mu_morphisms.len() != n * n {
        return Err(DiagramError::Shape("one mu table per pair of index objects".into()));
    }
    for i in 0..n {
        for j in 0..n {
            let (fi, fj, fij) = (&d.fibers[i], &d.fibers[j], &d.fibers[m.tensor_obj(i, j)]);
            if lax.mu_objects[i * n + j].len() != fi.object_count() * fj.object_count()
                || lax.mu_morphisms[i * n + j].len() != fi.morphism_count() * fj.morphism_count()
                || lax.mu_objects[i * n + j].iter().any(|&z| z >= fij.object_count())
                || lax.mu_morphisms[i * n + j].iter().any(|&z| z >= fij.morphism_count())
            {
                return Err(DiagramError::Shape(format!(
                    "mu table for ({}, {}) has the wrong size",
                    m.base().object_name(i),
                    m.base().object_name(j)
                )));
            }
            for phi in fi.morphisms() {
                for psi in fj.morphisms() {
                    let chi = lax.mu_mor(i, j, phi, psi);
                    if fij.src(chi) != lax.mu_obj(i, j, fi.src(phi), fj.src(psi))
                        || fij.dst(chi) != lax.mu_obj(i, j, fi.dst(phi), fj.dst(psi))
                    {
                        return Err(DiagramError::CoherenceViolation(format!(
                            "mu({}, {}) is ill-typed",
                            fi.morphism_name(phi),
                            fj.morphism_name(psi)
                        )));
                    }
                }
            }
        }
    }
    if lax.unit_fiber >= d.fibers[m.unit()].object_count() {
        return Err(DiagramError::Shape("unit fiber object out of range".into()));
    }

    let groth = grothendieck(d);
    let cat = groth.cat.clone();
    let objs = cat.object_count();
    let mut tensor_obj = Vec::with_capacity(objs * objs);
    let mut symmetry = Vec::with_capacity(objs * objs);
    for &(i, x) in &groth.objects {
        for &(j, y) in &groth.objects {
            tensor_obj.push(groth.object(m.tensor_obj(i, j), lax.mu_obj(i, j, x, y)));
            let s = GrothMor {
                base: m.symmetry(i, j),
                source_object: lax.mu_obj(i, j, x, y),
                fiber: lax.braid(i, j, x, y),
            };
            symmetry.push(groth.morphism(s).ok_or_else(|| {
                DiagramError::CoherenceViolation(format!(
                    "braid at ({}, {}) is ill-typed",
                    cat.object_name(groth.object(i, x)),
                    cat.object_name(groth.object(j, y))
                ))
            })?);
        }
    }

    let mut tensor_mor = Vec::with_capacity(cat.morphism_count().pow(2));
    for a in &groth.morphisms {
        for b in &groth.morphisms {
            let (i, j) = (m.base().src(a.base), m.base().src(b.base));
            let (i2, j2) = (m.base().dst(a.base), m.base().dst(b.base));
            let base = m.tensor_mor(a.base, b.base);
            let source_object = lax.mu_obj(i, j, a.source_object, b.source_object);
            let moved = d.transitions[base].obj(source_object);
            let fx = d.transitions[a.base].obj(a.source_object);
            let gy = d.transitions[b.base].obj(b.source_object);
            if moved != lax.mu_obj(i2, j2, fx, gy) {
                return Err(DiagramError::CoherenceViolation(format!(
                    "mu is not natural at ({}, {})",
                    m.base().morphism_name(a.base),
                    m.base().morphism_name(b.base)
                )));
            }
            let t = GrothMor { base, source_object, fiber: lax.mu_mor(i2, j2, a.fiber, b.fiber) };
            tensor_mor.push(groth.morphism(t).expect("typed by naturality of mu"));
        }
    }
    let unit = groth.object(m.unit(), lax.unit_fiber);
    let monoidal = StrictMonCat::from_tables(cat, tensor_obj, tensor_mor, unit, symmetry)
        .map_err(|e| DiagramError::CoherenceViolation(e.to_string()))?;
    Ok((groth, monoidal))
}

/// The lax diagram whose fibers are all the terminal category.
pub fn terminal_fibers(index: Arc<StrictMonCat>, terminal: Arc<FinCat>) -> Result<LaxMonDiagram, DiagramError> {
    let base = index.base().clone();
    let transitions =
        base.morphisms().map(|_| Functor::to_terminal(terminal.clone(), terminal.clone())).collect::<Result<_, _>>()?;
    let diagram = OplaxDiagram::new(base.clone(), vec![terminal; base.object_count()], transitions)?;
    let n = base.object_count();
    Ok(LaxMonDiagram {
        index,
        diagram,
        mu_objects: vec![vec![0]; n * n],
        mu_morphisms: vec![vec![0]; n * n],
        unit_fiber: 0,
        braid: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::standard;
    use crate::moncat::{check_rigid, standard as mstd};

    fn constant(index: FinCat, fiber: FinCat) -> OplaxDiagram {
        let index = Arc::new(index);
        let fiber = Arc::new(fiber);
        let transitions = index.morphisms().map(|_| Functor::identity(fiber.clone())).collect();
        OplaxDiagram::new(index.clone(), vec![fiber; index.object_count()], transitions).unwrap()
    }

    #[test]
    fn walking_arrow_of_terminals() {
        let g = grothendieck(&constant(standard::walking_arrow(), standard::terminal()));
        assert_eq!(g.category().object_count(), 2);
        assert_eq!(g.category().morphism_count(), 3);
        let (a, b) = (g.object(0, 0), g.object(1, 0));
        assert_eq!(g.category().hom(a, b).len(), 1);
        assert!(hom_formula_check_all(&g).iter().all(|r| r.passed()));
        let r = hom_formula_check(&g, 1, 0, 0, 0);
        assert_eq!((r.hom_size, r.coproduct_size), (0, 0));
        let cocone = unit_cocone(&g);
        assert!(cocone.passed(), "{:?}", cocone.failures);
        let u = g.diagram().index().morphism_id("a").unwrap();
        assert_eq!(g.morphism_pair(cocone.components[u][0]).base, u);
    }

    #[test]
    fn terminal_index_is_the_fiber() {
        let g = grothendieck(&constant(standard::terminal(), standard::walking_isomorphism()));
        assert_eq!(g.category().object_count(), 2);
        assert_eq!(g.category().morphism_count(), 4);
        assert!(hom_formula_check_all(&g).iter().all(|r| r.passed() && r.hom_size == r.coproduct_size));
        let inc = &unit_cocone(&g).inclusions[0];
        assert!(inc.is_full() && inc.is_faithful());
    }

    #[test]
    fn discrete_index_is_a_coproduct() {
        let index = Arc::new(standard::discrete(&["a", "b"]));
        let (fa, fb) = (Arc::new(standard::walking_arrow()), Arc::new(standard::two_element_group()));
        let d =
            OplaxDiagram::new(index, vec![fa.clone(), fb.clone()], vec![Functor::identity(fa), Functor::identity(fb)])
                .unwrap();
        let g = grothendieck(&d);
        assert_eq!(g.category().object_count(), 3);
        assert_eq!(g.category().morphism_count(), 5);
        assert!(unit_cocone(&g).passed());
    }

    #[test]
    fn non_functorial_diagram_is_rejected() {
        let index = Arc::new(standard::two_element_group());
        let fiber = Arc::new(standard::walking_isomorphism());
        let swap = Functor::new(fiber.clone(), fiber.clone(), vec![1, 0], vec![1, 0, 3, 2]).unwrap();
        assert!(OplaxDiagram::new(
            index.clone(),
            vec![fiber.clone()],
            vec![Functor::identity(fiber.clone()), swap.clone()]
        )
        .is_ok());
        let err = OplaxDiagram::new(index, vec![fiber.clone()], vec![swap, Functor::identity(fiber)]).unwrap_err();
        assert!(matches!(err, DiagramError::NotFunctorial(_)));
    }

    #[test]
    fn terminal_fibers_reproduce_the_index() {
        for index in [mstd::cyclic_group(2), mstd::meet_arrow()] {
            let index = Arc::new(index);
            let lax = terminal_fibers(index.clone(), Arc::new(standard::terminal())).unwrap();
            let (g, m) = monoidal_grothendieck(&lax).unwrap();
            assert_eq!(g.category().object_count(), index.base().object_count());
            assert_eq!(m.to_raw().tensor_objects.len(), index.to_raw().tensor_objects.len());
            assert_eq!(check_rigid(&m).is_rigid(), check_rigid(&index).is_rigid());
        }
    }

    #[test]
    fn fiber_monoid_over_terminal_index() {
        let z3 = mstd::cyclic_group(3);
        let fiber = z3.base().clone();
        let index = Arc::new(mstd::terminal());
        let diagram =
            OplaxDiagram::new(index.base().clone(), vec![fiber.clone()], vec![Functor::identity(fiber.clone())])
                .unwrap();
        let mu_objects = vec![(0..9).map(|k| z3.tensor_obj(k / 3, k % 3)).collect()];
        let mu_morphisms = vec![(0..9).map(|k| z3.tensor_mor(k / 3, k % 3)).collect()];
        let lax = LaxMonDiagram {
            index,
            diagram: diagram.clone(),
            mu_objects,
            mu_morphisms,
            unit_fiber: z3.unit(),
            braid: None,
        };
        let (_, m) = monoidal_grothendieck(&lax).unwrap();
        assert!(check_rigid(&m).is_rigid());

        let broken = LaxMonDiagram { mu_objects: vec![vec![0; 9]], mu_morphisms: vec![vec![0; 9]], ..lax };
        assert!(matches!(monoidal_grothendieck(&broken), Err(DiagramError::CoherenceViolation(_))));
    }
}
