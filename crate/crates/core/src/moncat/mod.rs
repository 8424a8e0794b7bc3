//! Strict symmetric monoidal structure on finite categories, dual search and
//! rigidity.

mod duality;
mod lax;
mod strict;

use std::fmt::Debug;

pub use duality::{
    all_duals, check_rigid, find_dual, triangle_failures, DualData, RigidityReport, TriangleFailure,
    IDEMPOTENT_COMPLETION_CAVEAT,
};
pub use lax::{LaxMonFunctor, LaxMonoidalError};
pub use strict::{standard, validate_monoidal, MonoidalError, RawMonoidal, StrictMonCat};

/// The operations of a strict symmetric monoidal category.
///
/// Implemented by finite [`StrictMonCat`]s and by the (infinite) free rigid
/// categories, so constructions such as dual checks and diagram evaluation
/// can target either.
pub trait SymmetricMonoidal {
    type Obj: Clone + PartialEq + Debug;
    type Mor: Clone + PartialEq + Debug;

    fn unit_object(&self) -> Self::Obj;
    fn tensor_objects(&self, a: &Self::Obj, b: &Self::Obj) -> Self::Obj;
    fn dom(&self, f: &Self::Mor) -> Self::Obj;
    fn cod(&self, f: &Self::Mor) -> Self::Obj;
    fn identity_on(&self, a: &Self::Obj) -> Self::Mor;
    /// `g∘f`, or `None` if the boundaries do not match.
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Option<Self::Mor>;
    fn tensor_morphisms(&self, f: &Self::Mor, g: &Self::Mor) -> Self::Mor;
    /// `s_{a,b}: a⊗b → b⊗a`
    fn braiding(&self, a: &Self::Obj, b: &Self::Obj) -> Self::Mor;

    fn tensor_all_objects(&self, objects: &[Self::Obj]) -> Self::Obj {
        objects.iter().fold(self.unit_object(), |acc, x| self.tensor_objects(&acc, x))
    }

    fn tensor_all_morphisms(&self, morphisms: &[Self::Mor]) -> Self::Mor {
        let unit = self.identity_on(&self.unit_object());
        morphisms.iter().fold(unit, |acc, f| self.tensor_morphisms(&acc, f))
    }

    /// Composes morphisms given in application order.
    fn compose_path(&self, path: &[Self::Mor]) -> Option<Self::Mor> {
        let (first, rest) = path.split_first()?;
        rest.iter().try_fold(first.clone(), |acc, g| self.compose(g, &acc))
    }
}
