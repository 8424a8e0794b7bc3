use crate::fincat::{MorId, ObjId};

use super::{StrictMonCat, SymmetricMonoidal};

/// A dual of `object` with `ev: x ⊗ x* → 1` and `coev: 1 → x* ⊗ x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DualData<O = ObjId, M = MorId> {
    pub object: O,
    pub dual: O,
    pub ev: M,
    pub coev: M,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TriangleFailure {
    EvTyping,
    CoevTyping,
    /// `(ev ⊗ id_x) ∘ (id_x ⊗ coev) ≠ id_x`
    First,
    /// `(id_{x*} ⊗ ev) ∘ (coev ⊗ id_{x*}) ≠ id_{x*}`
    Second,
}

/// Re-checks both zig-zag identities of `data` inside `cat`.
pub fn triangle_failures<C: SymmetricMonoidal>(cat: &C, data: &DualData<C::Obj, C::Mor>) -> Vec<TriangleFailure> {
    let (x, xs) = (&data.object, &data.dual);
    let unit = cat.unit_object();
    let mut failures = Vec::new();
    if cat.dom(&data.ev) != cat.tensor_objects(x, xs) || cat.cod(&data.ev) != unit {
        failures.push(TriangleFailure::EvTyping);
    }
    if cat.dom(&data.coev) != unit || cat.cod(&data.coev) != cat.tensor_objects(xs, x) {
        failures.push(TriangleFailure::CoevTyping);
    }
    if !failures.is_empty() {
        return failures;
    }
    let (id_x, id_xs) = (cat.identity_on(x), cat.identity_on(xs));
    let first = cat.compose(&cat.tensor_morphisms(&data.ev, &id_x), &cat.tensor_morphisms(&id_x, &data.coev));
    if first.as_ref() != Some(&id_x) {
        failures.push(TriangleFailure::First);
    }
    let second = cat.compose(&cat.tensor_morphisms(&id_xs, &data.ev), &cat.tensor_morphisms(&data.coev, &id_xs));
    if second.as_ref() != Some(&id_xs) {
        failures.push(TriangleFailure::Second);
    }
    failures
}

fn candidates(m: &StrictMonCat, x: ObjId) -> impl Iterator<Item = DualData> + '_ {
    let c = m.base();
    let unit = m.unit();
    c.objects().flat_map(move |y| {
        c.hom(m.tensor_obj(x, y), unit).iter().flat_map(move |&ev| {
            c.hom(unit, m.tensor_obj(y, x)).iter().map(move |&coev| DualData { object: x, dual: y, ev, coev })
        })
    })
}

/// Least `(dual, ev, coev)` by id satisfying both triangle identities.
pub fn find_dual(m: &StrictMonCat, x: ObjId) -> Option<DualData> {
    candidates(m, x).find(|d| triangle_failures(m, d).is_empty())
}

/// Every valid dual triple for `x`, in search order.
pub fn all_duals(m: &StrictMonCat, x: ObjId) -> Vec<DualData> {
    candidates(m, x).filter(|d| triangle_failures(m, d).is_empty()).collect()
}

pub const IDEMPOTENT_COMPLETION_CAVEAT: &str =
    "duals are searched in the category itself, not in its idempotent completion";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigidityReport {
    /// One entry per object, in object order.
    pub entries: Vec<(ObjId, Option<DualData>)>,
}

impl RigidityReport {
    pub fn is_rigid(&self) -> bool {
        self.entries.iter().all(|(_, d)| d.is_some())
    }

    pub fn non_dualizable(&self) -> Vec<ObjId> {
        self.entries.iter().filter(|(_, d)| d.is_none()).map(|&(x, _)| x).collect()
    }
}

pub fn check_rigid(m: &StrictMonCat) -> RigidityReport {
    RigidityReport { entries: m.base().objects().map(|x| (x, find_dual(m, x))).collect() }
}
