//! Finite categories as explicit tables, functors between them, adjoint
//! search through comma categories, and trace classes.

mod adjunction;
mod category;
mod functor;
mod presentation;
mod trace;

pub use adjunction::{
    check_adjunction, comma_terminal, find_right_adjoint, Adjunction, AdjunctionFailure, AdjunctionReport,
};
pub use category::{standard, validate_category, CategoryError, FinCat, MorId, ObjId, RawCategory, RawMorphism};
pub use functor::{Functor, FunctorError, RawFunctor};
pub use presentation::{close_presentation, PresentationError, RawPresentation};
#[allow(unused_imports)]
pub(crate) use trace::UnionFind;
pub use trace::{trace_set, ClassId, TraceSet};
