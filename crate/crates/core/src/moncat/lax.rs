use std::sync::Arc;

use thiserror::Error;

use crate::fincat::{Functor, MorId, ObjId};

use super::StrictMonCat;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LaxMonoidalError {
    #[error("underlying functor does not match the monoidal categories")]
    Shape,
    #[error("structure map is ill-typed: {0}")]
    Typing(String),
    #[error("mu is not natural: {0}")]
    Naturality(String),
    #[error("associativity coherence fails: {0}")]
    Associativity(String),
    #[error("unit coherence fails: {0}")]
    Unit(String),
    #[error("symmetry compatibility fails: {0}")]
    Symmetry(String),
}

/// A lax symmetric monoidal functor between strict monoidal categories, with
/// `mu_{x,y}: F(x) ⊗ F(y) → F(x ⊗ y)` and `unit_mor: 1 → F(1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaxMonFunctor {
    source: Arc<StrictMonCat>,
    target: Arc<StrictMonCat>,
    underlying: Functor,
    mu: Vec<MorId>,
    unit_mor: MorId,
}

impl LaxMonFunctor {
    pub fn new(
        source: Arc<StrictMonCat>,
        target: Arc<StrictMonCat>,
        underlying: Functor,
        mu: Vec<MorId>,
        unit_mor: MorId,
    ) -> Result<Self, LaxMonoidalError> {
        let n = source.base().object_count();
        if underlying.source() != source.base() || underlying.target() != target.base() || mu.len() != n * n {
            return Err(LaxMonoidalError::Shape);
        }
        if mu.iter().chain(&[unit_mor]).any(|&f| f >= target.base().morphism_count()) {
            return Err(LaxMonoidalError::Shape);
        }
        let functor = Self { source, target, underlying, mu, unit_mor };
        functor.check()?;
        Ok(functor)
    }

    /// A strict monoidal functor: every structure map is an identity.
    pub fn strict(
        source: Arc<StrictMonCat>,
        target: Arc<StrictMonCat>,
        underlying: Functor,
    ) -> Result<Self, LaxMonoidalError> {
        let n = source.base().object_count();
        let d = target.base().clone();
        let mu = (0..n * n).map(|i| d.identity(underlying.obj(source.tensor_obj(i / n, i % n)))).collect();
        let unit_mor = d.identity(target.unit());
        Self::new(source, target, underlying, mu, unit_mor)
    }

    pub fn underlying(&self) -> &Functor {
        &self.underlying
    }

    pub fn mu(&self, x: ObjId, y: ObjId) -> MorId {
        self.mu[x * self.source.base().object_count() + y]
    }

    pub fn unit_mor(&self) -> MorId {
        self.unit_mor
    }

    fn check(&self) -> Result<(), LaxMonoidalError> {
        let (m, t) = (&*self.source, &*self.target);
        let (c, d) = (&**m.base(), &**t.base());
        let f = &self.underlying;
        let on = |x| c.object_name(x).to_owned();

        for x in c.objects() {
            for y in c.objects() {
                let mu = self.mu(x, y);
                if d.src(mu) != t.tensor_obj(f.obj(x), f.obj(y)) || d.dst(mu) != f.obj(m.tensor_obj(x, y)) {
                    return Err(LaxMonoidalError::Typing(format!("mu_{{{},{}}}", on(x), on(y))));
                }
            }
        }
        if d.src(self.unit_mor) != t.unit() || d.dst(self.unit_mor) != f.obj(m.unit()) {
            return Err(LaxMonoidalError::Typing("unit map".into()));
        }

        for g in c.morphisms() {
            for h in c.morphisms() {
                let (x, y, x2, y2) = (c.src(g), c.src(h), c.dst(g), c.dst(h));
                let lhs = d.compose(f.mor(m.tensor_mor(g, h)), self.mu(x, y));
                let rhs = d.compose(self.mu(x2, y2), t.tensor_mor(f.mor(g), f.mor(h)));
                if lhs != rhs {
                    return Err(LaxMonoidalError::Naturality(format!(
                        "{}, {}",
                        c.morphism_name(g),
                        c.morphism_name(h)
                    )));
                }
            }
        }

        for x in c.objects() {
            let idf = |z: ObjId| d.identity(f.obj(z));
            for y in c.objects() {
                for z in c.objects() {
                    let lhs = d.compose(self.mu(m.tensor_obj(x, y), z), t.tensor_mor(self.mu(x, y), idf(z)));
                    let rhs = d.compose(self.mu(x, m.tensor_obj(y, z)), t.tensor_mor(idf(x), self.mu(y, z)));
                    if lhs != rhs {
                        return Err(LaxMonoidalError::Associativity(format!("{}, {}, {}", on(x), on(y), on(z))));
                    }
                }
                let lhs = d.compose(f.mor(m.symmetry(x, y)), self.mu(x, y));
                let rhs = d.compose(self.mu(y, x), t.symmetry(f.obj(x), f.obj(y)));
                if lhs != rhs {
                    return Err(LaxMonoidalError::Symmetry(format!("{}, {}", on(x), on(y))));
                }
            }
            let left = d.compose(self.mu(m.unit(), x), t.tensor_mor(self.unit_mor, idf(x)));
            let right = d.compose(self.mu(x, m.unit()), t.tensor_mor(idf(x), self.unit_mor));
            if left != Some(idf(x)) || right != Some(idf(x)) {
                return Err(LaxMonoidalError::Unit(on(x)));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::super::standard::*;
    use super::*;

    #[test]
    fn identity_is_strict_monoidal() {
        let m = Arc::new(cyclic_group(3));
        let id = Functor::identity(m.base().clone());
        let lax = LaxMonFunctor::strict(m.clone(), m, id).unwrap();
        assert_eq!(lax.mu(1, 2), 0);
    }

    #[test]
    fn reduction_mod_two_is_not_monoidal() {
        // Z/3 → Z/2 has no monoidal structure: g1 ⊗ g1 = g2 would need 1 + 1 = 0 = F(g2).
        let src = Arc::new(cyclic_group(3));
        let tgt = Arc::new(cyclic_group(2));
        let obj = vec![0, 1, 0];
        let under = Functor::new(src.base().clone(), tgt.base().clone(), obj.clone(), obj).unwrap();
        assert!(matches!(LaxMonFunctor::strict(src, tgt, under), Err(LaxMonoidalError::Typing(_))));
    }

    #[test]
    fn collapse_to_terminal_is_strict_monoidal() {
        let src = Arc::new(cyclic_group(3));
        let tgt = Arc::new(terminal());
        let under = Functor::to_terminal(src.base().clone(), tgt.base().clone()).unwrap();
        assert!(LaxMonFunctor::strict(src, tgt, under).is_ok());
    }
}
