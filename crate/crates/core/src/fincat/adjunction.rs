use std::fmt;

use super::category::{FinCat, MorId, ObjId};
use super::functor::Functor;

/// `left ⊣ right` with unit `id ⇒ right∘left` and counit `left∘right ⇒ id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Adjunction {
    pub left: Functor,
    pub right: Functor,
    /// Indexed by objects of the source of `left`.
    pub unit: Vec<MorId>,
    /// Indexed by objects of the target of `left`.
    pub counit: Vec<MorId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AdjunctionFailure {
    Shape(String),
    UnitTyping(String),
    CounitTyping(String),
    UnitNaturality(String),
    CounitNaturality(String),
    /// `ε_{Lc} ∘ L(η_c) ≠ id_{Lc}`
    LeftTriangle(String),
    /// `R(ε_d) ∘ η_{Rd} ≠ id_{Rd}`
    RightTriangle(String),
}

impl fmt::Display for AdjunctionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Shape(msg) => write!(f, "shape mismatch: {msg}"),
            Self::UnitTyping(x) => write!(f, "unit component at `{x}` is ill-typed"),
            Self::CounitTyping(x) => write!(f, "counit component at `{x}` is ill-typed"),
            Self::UnitNaturality(m) => write!(f, "unit is not natural at `{m}`"),
            Self::CounitNaturality(m) => write!(f, "counit is not natural at `{m}`"),
            Self::LeftTriangle(x) => write!(f, "triangle identity ε_L∘Lη = id fails at `{x}`"),
            Self::RightTriangle(x) => write!(f, "triangle identity Rε∘η_R = id fails at `{x}`"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AdjunctionReport {
    pub failures: Vec<AdjunctionFailure>,
}

impl AdjunctionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Whether `(c, φ: Fc → d)` is terminal in the comma category `(F ↓ d)`.
fn is_terminal_in_comma(functor: &Functor, d: ObjId, c: ObjId, phi: MorId) -> bool {
    let (src, dst) = (&**functor.source(), &**functor.target());
    src.objects().all(|c2| {
        dst.hom(functor.obj(c2), d)
            .iter()
            .all(|&psi| src.hom(c2, c).iter().filter(|&&h| dst.compose(phi, functor.mor(h)) == Some(psi)).count() == 1)
    })
}

/// The least terminal object `(c, φ)` of `(F ↓ d)`, ordered by object id and
/// then by morphism id.
pub fn comma_terminal(functor: &Functor, d: ObjId) -> Option<(ObjId, MorId)> {
    let (src, dst) = (&**functor.source(), &**functor.target());
    src.objects().find_map(|c| {
        dst.hom(functor.obj(c), d).iter().find(|&&phi| is_terminal_in_comma(functor, d, c, phi)).map(|&phi| (c, phi))
    })
}

/// The unique `h ∈ candidates` with `pred(h)`, if exactly one exists.
fn unique(candidates: &[MorId], pred: impl Fn(MorId) -> bool) -> Option<MorId> {
    let mut it = candidates.iter().copied().filter(|&h| pred(h));
    let first = it.next()?;
    it.next().is_none().then_some(first)
}

/// Right adjoint of `functor`, assembled from terminal objects of the comma
/// categories `(F ↓ d)`; `None` as soon as one of them has none.
pub fn find_right_adjoint(functor: &Functor) -> Option<Adjunction> {
    let (src, dst) = (functor.source().clone(), functor.target().clone());
    let terminals: Vec<(ObjId, MorId)> = dst.objects().map(|d| comma_terminal(functor, d)).collect::<Option<_>>()?;
    let counit: Vec<MorId> = terminals.iter().map(|&(_, phi)| phi).collect();
    let object_map: Vec<ObjId> = terminals.iter().map(|&(c, _)| c).collect();

    let morphism_map = dst
        .morphisms()
        .map(|k| {
            let (d, d2) = (dst.src(k), dst.dst(k));
            let target = dst.compose(k, counit[d]).unwrap();
            unique(src.hom(object_map[d], object_map[d2]), |h| dst.compose(counit[d2], functor.mor(h)) == Some(target))
        })
        .collect::<Option<Vec<_>>>()
        .expect("terminal comma objects induce unique factorizations");
    let right = Functor::new(dst.clone(), src.clone(), object_map, morphism_map)
        .expect("factorizations through terminal objects are functorial");

    let unit = src
        .objects()
        .map(|c| {
            let fc = functor.obj(c);
            unique(src.hom(c, right.obj(fc)), |h| dst.compose(counit[fc], functor.mor(h)) == Some(dst.identity(fc)))
        })
        .collect::<Option<Vec<_>>>()
        .expect("identity factors uniquely through the terminal object");

    Some(Adjunction { left: functor.clone(), right, unit, counit })
}

/// Checks naturality of unit and counit and both triangle identities by
/// enumeration; every failing witness is reported.
pub fn check_adjunction(adj: &Adjunction) -> AdjunctionReport {
    let mut failures = Vec::new();
    let (l, r) = (&adj.left, &adj.right);
    if l.source() != r.target() || l.target() != r.source() {
        failures.push(AdjunctionFailure::Shape("left and right functors are not opposed".into()));
    }
    let (c, d): (&FinCat, &FinCat) = (l.source(), l.target());
    if adj.unit.len() != c.object_count() || adj.counit.len() != d.object_count() {
        failures.push(AdjunctionFailure::Shape("unit/counit have the wrong number of components".into()));
    }
    if !failures.is_empty() {
        return AdjunctionReport { failures };
    }

    let mut well_typed = true;
    for x in c.objects() {
        let eta = adj.unit[x];
        if eta >= c.morphism_count() || c.src(eta) != x || c.dst(eta) != r.obj(l.obj(x)) {
            failures.push(AdjunctionFailure::UnitTyping(c.object_name(x).into()));
            well_typed = false;
        }
    }
    for y in d.objects() {
        let eps = adj.counit[y];
        if eps >= d.morphism_count() || d.src(eps) != l.obj(r.obj(y)) || d.dst(eps) != y {
            failures.push(AdjunctionFailure::CounitTyping(d.object_name(y).into()));
            well_typed = false;
        }
    }
    if !well_typed {
        return AdjunctionReport { failures };
    }

    for f in c.morphisms() {
        let (x, x2) = (c.src(f), c.dst(f));
        if c.compose(adj.unit[x2], f) != c.compose(r.mor(l.mor(f)), adj.unit[x]) {
            failures.push(AdjunctionFailure::UnitNaturality(c.morphism_name(f).into()));
        }
    }
    for g in d.morphisms() {
        let (y, y2) = (d.src(g), d.dst(g));
        if d.compose(g, adj.counit[y]) != d.compose(adj.counit[y2], l.mor(r.mor(g))) {
            failures.push(AdjunctionFailure::CounitNaturality(d.morphism_name(g).into()));
        }
    }
    for x in c.objects() {
        let lx = l.obj(x);
        if d.compose(adj.counit[lx], l.mor(adj.unit[x])) != Some(d.identity(lx)) {
            failures.push(AdjunctionFailure::LeftTriangle(c.object_name(x).into()));
        }
    }
    for y in d.objects() {
        let ry = r.obj(y);
        if c.compose(r.mor(adj.counit[y]), adj.unit[ry]) != Some(c.identity(ry)) {
            failures.push(AdjunctionFailure::RightTriangle(d.object_name(y).into()));
        }
    }
    AdjunctionReport { failures }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::super::category::standard::*;
    use super::*;

    #[test]
    fn identity_functor_has_identity_adjoint() {
        for c in [terminal(), walking_arrow(), two_element_group()] {
            let c = Arc::new(c);
            let id = Functor::identity(c.clone());
            let adj = find_right_adjoint(&id).unwrap();
            assert_eq!(adj.right, id);
            assert_eq!(adj.unit, c.objects().map(|x| c.identity(x)).collect::<Vec<_>>());
            assert!(check_adjunction(&adj).passed());
        }
    }

    #[test]
    fn identity_on_walking_isomorphism_picks_least_terminal() {
        // (id ↓ y) has two terminal objects, (x, f) and (y, id_y); x wins.
        let c = Arc::new(walking_isomorphism());
        let adj = find_right_adjoint(&Functor::identity(c.clone())).unwrap();
        assert_eq!(adj.right.object_map(), &[0, 0]);
        assert_eq!(adj.counit, vec![c.identity(0), c.morphism_id("f").unwrap()]);
        assert!(check_adjunction(&adj).passed());
    }

    #[test]
    fn arrow_to_terminal_has_right_adjoint_at_codomain() {
        let c = Arc::new(walking_arrow());
        let bang = Functor::to_terminal(c.clone(), Arc::new(terminal())).unwrap();
        let adj = find_right_adjoint(&bang).unwrap();
        assert_eq!(adj.right.obj(0), c.object_id("y").unwrap());
        assert!(check_adjunction(&adj).passed());
    }

    #[test]
    fn inclusion_of_source_has_right_adjoint() {
        // {x} ↪ (x → y): both commas (F ↓ x) and (F ↓ y) have a single object.
        let c = Arc::new(discrete(&["x"]));
        let d = Arc::new(walking_arrow());
        let inc = Functor::new(c, d.clone(), vec![0], vec![d.identity(0)]).unwrap();
        let adj = find_right_adjoint(&inc).unwrap();
        assert_eq!(adj.right.object_map(), &[0, 0]);
        assert_eq!(adj.counit, vec![d.identity(0), d.morphism_id("a").unwrap()]);
        assert!(check_adjunction(&adj).passed());
    }

    #[test]
    fn inclusion_of_target_has_no_right_adjoint() {
        // {y} ↪ (x → y): (F ↓ x) is empty.
        let c = Arc::new(discrete(&["y"]));
        let d = Arc::new(walking_arrow());
        let inc = Functor::new(c, d.clone(), vec![1], vec![d.identity(1)]).unwrap();
        assert!(find_right_adjoint(&inc).is_none());
    }

    #[test]
    fn non_identity_counit_breaks_triangle() {
        let c = Arc::new(two_element_group());
        let id = Functor::identity(c.clone());
        let s = c.morphism_id("s").unwrap();
        let adj = Adjunction { left: id.clone(), right: id, unit: vec![c.identity(0)], counit: vec![s] };
        let report = check_adjunction(&adj);
        assert!(report.failures.contains(&AdjunctionFailure::LeftTriangle("o".into())));
        assert!(report.failures.contains(&AdjunctionFailure::RightTriangle("o".into())));
        assert!(!report.failures.iter().any(|f| matches!(f, AdjunctionFailure::CounitNaturality(_))));
    }

    #[test]
    fn ill_typed_components_are_reported() {
        let c = Arc::new(walking_arrow());
        let id = Functor::identity(c.clone());
        let a = c.morphism_id("a").unwrap();
        let adj = Adjunction { left: id.clone(), right: id, unit: vec![a, c.identity(1)], counit: vec![0, 1] };
        assert_eq!(check_adjunction(&adj).failures, vec![AdjunctionFailure::UnitTyping("x".into())]);
    }
}
