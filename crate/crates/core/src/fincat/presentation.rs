//! Finite categories given by generators and relations.
//!
//! The quotient is computed by coset enumeration on the right Cayley graph
//! of each object: nodes are morphisms out of that object, edges are
//! post-composition with a generator, and every relation is imposed at every
//! node. Normal forms are the shortlex-least generator paths (application
//! order, generators compared by declaration order), read off by a
//! breadth-first search once the graph is complete.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::category::{validate_category, CategoryError, FinCat, ObjId, RawCategory, RawMorphism};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawPresentation {
    pub objects: Vec<String>,
    pub generators: Vec<RawMorphism>,
    /// Pairs of words. A word is `g.f` for `g∘f`, or `id(x)`.
    #[serde(default)]
    pub relations: Vec<[String; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("hom({src}, {dst}) exceeds the size bound {bound}")]
    BoundExceeded { src: String, dst: String, bound: usize },
    #[error("size bound must be at least 1")]
    InvalidBound,
    #[error("identifier `{0}` is declared more than once")]
    DuplicateId(String),
    #[error("dangling reference `{0}`")]
    DanglingReference(String),
    #[error("word `{0}` is not a composable path")]
    IllTypedWord(String),
    #[error("relation `{0}` = `{1}` equates non-parallel words")]
    NonParallelRelation(String, String),
    #[error(transparent)]
    Category(#[from] CategoryError),
}

type Gen = usize;

#[derive(Clone, Debug)]
struct Word {
    src: ObjId,
    dst: ObjId,
    /// Application order.
    path: Vec<Gen>,
}

struct Presentation<'a> {
    raw: &'a RawPresentation,
    object_ids: BTreeMap<&'a str, ObjId>,
    gen_ids: BTreeMap<&'a str, Gen>,
    gens: Vec<(ObjId, ObjId)>,
}

impl<'a> Presentation<'a> {
    fn new(raw: &'a RawPresentation) -> Result<Self, PresentationError> {
        let mut object_ids = BTreeMap::new();
        for (i, x) in raw.objects.iter().enumerate() {
            if object_ids.insert(x.as_str(), i).is_some() {
                return Err(PresentationError::DuplicateId(x.clone()));
            }
        }
        let mut gen_ids = BTreeMap::new();
        let mut gens = Vec::new();
        for (i, g) in raw.generators.iter().enumerate() {
            if gen_ids.insert(g.id.as_str(), i).is_some() {
                return Err(PresentationError::DuplicateId(g.id.clone()));
            }
            let obj = |name: &String| {
                object_ids.get(name.as_str()).copied().ok_or_else(|| PresentationError::DanglingReference(name.clone()))
            };
            gens.push((obj(&g.src)?, obj(&g.dst)?));
        }
        Ok(Self { raw, object_ids, gen_ids, gens })
    }

    fn parse_word(&self, text: &str) -> Result<Word, PresentationError> {
        let text = text.trim();
        if let Some(inner) = text.strip_prefix("id(").and_then(|t| t.strip_suffix(')')) {
            let x = *self
                .object_ids
                .get(inner.trim())
                .ok_or_else(|| PresentationError::DanglingReference(inner.trim().to_owned()))?;
            return Ok(Word { src: x, dst: x, path: Vec::new() });
        }
        let mut path = text
            .split('.')
            .map(|g| {
                self.gen_ids
                    .get(g.trim())
                    .copied()
                    .ok_or_else(|| PresentationError::DanglingReference(g.trim().to_owned()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        path.reverse();
        for w in path.windows(2) {
            if self.gens[w[0]].1 != self.gens[w[1]].0 {
                return Err(PresentationError::IllTypedWord(text.to_owned()));
            }
        }
        Ok(Word { src: self.gens[path[0]].0, dst: self.gens[*path.last().unwrap()].1, path })
    }

    fn word_name(&self, x: ObjId, path: &[Gen]) -> String {
        if path.is_empty() {
            return format!("id({})", self.raw.objects[x]);
        }
        path.iter().rev().map(|&g| self.raw.generators[g].id.as_str()).collect::<Vec<_>>().join(".")
    }
}

/// Right Cayley graph under construction.
struct Enumeration<'p> {
    gens: &'p [(ObjId, ObjId)],
    /// (start object, current object) per node.
    nodes: Vec<(ObjId, ObjId)>,
    edges: Vec<Vec<Option<usize>>>,
    parent: Vec<usize>,
}

impl<'p> Enumeration<'p> {
    fn find(&mut self, mut n: usize) -> usize {
        while self.parent[n] != n {
            self.parent[n] = self.parent[self.parent[n]];
            n = self.parent[n];
        }
        n
    }

    fn define(&mut self, n: usize, g: Gen) -> usize {
        let new = self.nodes.len();
        self.nodes.push((self.nodes[n].0, self.gens[g].1));
        self.edges.push(vec![None; self.gens.len()]);
        self.parent.push(new);
        self.edges[n][g] = Some(new);
        new
    }

    fn step(&mut self, n: usize, g: Gen) -> usize {
        let n = self.find(n);
        match self.edges[n][g] {
            Some(t) => self.find(t),
            None => self.define(n, g),
        }
    }

    fn trace(&mut self, n: usize, path: &[Gen]) -> usize {
        path.iter().fold(self.find(n), |cur, &g| self.step(cur, g))
    }

    fn coincide(&mut self, a: usize, b: usize) {
        let mut queue = VecDeque::from([(a, b)]);
        while let Some((a, b)) = queue.pop_front() {
            let (a, b) = (self.find(a), self.find(b));
            if a == b {
                continue;
            }
            let (keep, drop) = if a < b { (a, b) } else { (b, a) };
            self.parent[drop] = keep;
            for g in 0..self.gens.len() {
                if let Some(t) = self.edges[drop][g] {
                    match self.edges[keep][g] {
                        Some(t2) => queue.push_back((t, t2)),
                        None => self.edges[keep][g] = Some(t),
                    }
                }
            }
        }
    }

    fn largest_hom(&mut self, n_objects: usize) -> ((ObjId, ObjId), usize) {
        let mut counts = vec![0usize; n_objects * n_objects];
        for i in 0..self.nodes.len() {
            if self.find(i) == i {
                let (s, t) = self.nodes[i];
                counts[s * n_objects + t] += 1;
            }
        }
        let (idx, &count) = counts.iter().enumerate().max_by_key(|&(i, c)| (*c, std::cmp::Reverse(i))).unwrap();
        ((idx / n_objects, idx % n_objects), count)
    }
}

/// Quotient of the free category on `generators` by the congruence generated
/// by `relations`, as explicit tables.
///
/// Fails with [`PresentationError::BoundExceeded`] naming the first hom set
/// that grows beyond `size_bound` elements during enumeration.
pub fn close_presentation(raw: &RawPresentation, size_bound: usize) -> Result<FinCat, PresentationError> {
    if size_bound == 0 {
        return Err(PresentationError::InvalidBound);
    }
    let pres = Presentation::new(raw)?;
    let n_obj = raw.objects.len();
    let mut relations = Vec::new();
    for [lhs, rhs] in &raw.relations {
        let (l, r) = (pres.parse_word(lhs)?, pres.parse_word(rhs)?);
        if l.src != r.src || l.dst != r.dst {
            return Err(PresentationError::NonParallelRelation(lhs.clone(), rhs.clone()));
        }
        relations.push((l, r));
    }

    let mut en = Enumeration {
        gens: &pres.gens,
        nodes: (0..n_obj).map(|x| (x, x)).collect(),
        edges: vec![vec![None; pres.gens.len()]; n_obj],
        parent: (0..n_obj).collect(),
    };
    // Runaway guard for presentations whose enumeration never settles.
    let node_cap = 64 * size_bound * n_obj.max(1) * n_obj.max(1) + 1024;
    let exceeded = |en: &mut Enumeration| {
        let ((s, t), _) = en.largest_hom(n_obj);
        PresentationError::BoundExceeded { src: raw.objects[s].clone(), dst: raw.objects[t].clone(), bound: size_bound }
    };

    let mut i = 0;
    while i < en.nodes.len() {
        if en.find(i) == i {
            for (l, r) in &relations {
                if en.find(i) != i {
                    break;
                }
                if en.nodes[i].1 != l.src {
                    continue;
                }
                let a = en.trace(i, &l.path);
                let b = en.trace(i, &r.path);
                en.coincide(a, b);
            }
            if en.find(i) == i {
                for g in 0..pres.gens.len() {
                    if pres.gens[g].0 == en.nodes[i].1 && en.edges[i][g].is_none() {
                        en.define(i, g);
                    }
                }
            }
            if en.largest_hom(n_obj).1 > size_bound || en.nodes.len() > node_cap {
                return Err(exceeded(&mut en));
            }
        }
        i += 1;
    }

    // Breadth-first search from each identity node gives shortlex normal forms.
    let mut names: Vec<Option<(usize, String)>> = vec![None; en.nodes.len()];
    let mut order: Vec<usize> = Vec::new();
    let mut paths: Vec<Vec<Gen>> = vec![Vec::new(); en.nodes.len()];
    for x in 0..n_obj {
        let root = en.find(x);
        let mut queue = VecDeque::from([root]);
        names[root] = Some((order.len(), pres.word_name(x, &[])));
        order.push(root);
        while let Some(n) = queue.pop_front() {
            for g in 0..pres.gens.len() {
                if let Some(t) = en.edges[n][g] {
                    let t = en.find(t);
                    if names[t].is_none() {
                        let mut path = paths[n].clone();
                        path.push(g);
                        names[t] = Some((order.len(), pres.word_name(x, &path)));
                        paths[t] = path;
                        order.push(t);
                        queue.push_back(t);
                    }
                }
            }
        }
    }

    let name_of = |n: usize| names[n].as_ref().unwrap().1.clone();
    let mut out = RawCategory {
        objects: raw.objects.clone(),
        morphisms: order
            .iter()
            .map(|&n| {
                let (s, t) = en.nodes[n];
                RawMorphism::new(name_of(n), &raw.objects[s], &raw.objects[t])
            })
            .collect(),
        identities: (0..n_obj).map(|x| (raw.objects[x].clone(), name_of(en.find(x)))).collect(),
        composition: Vec::new(),
    };
    for &f in &order {
        for &g in &order {
            if en.nodes[g].0 != en.nodes[f].1 {
                continue;
            }
            let gf = en.trace(f, &paths[g]);
            out.composition.push([name_of(g), name_of(f), name_of(gf)]);
        }
    }
    Ok(validate_category(&out)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_object(gens: &[&str], relations: &[[&str; 2]]) -> RawPresentation {
        RawPresentation {
            objects: vec!["o".into()],
            generators: gens.iter().map(|g| RawMorphism::new(*g, "o", "o")).collect(),
            relations: relations.iter().map(|r| r.map(str::to_owned)).collect(),
        }
    }

    #[test]
    fn idempotent() {
        let c = close_presentation(&one_object(&["e"], &[["e.e", "e"]]), 8).unwrap();
        assert_eq!(c.morphism_count(), 2);
        let e = c.morphism_id("e").unwrap();
        assert_eq!(c.compose(e, e), Some(e));
        assert_eq!(c.morphism_name(c.identity(0)), "id(o)");
    }

    #[test]
    fn involution_is_the_two_element_group() {
        let c = close_presentation(&one_object(&["s"], &[["s.s", "id(o)"]]), 8).unwrap();
        assert_eq!(c.morphism_count(), 2);
        let s = c.morphism_id("s").unwrap();
        assert_eq!(c.compose(s, s), Some(c.identity(0)));
    }

    #[test]
    fn free_monoid_exceeds_bound() {
        assert_eq!(
            close_presentation(&one_object(&["t"], &[]), 5),
            Err(PresentationError::BoundExceeded { src: "o".into(), dst: "o".into(), bound: 5 })
        );
    }

    #[test]
    fn cyclic_group_of_order_three() {
        let c = close_presentation(&one_object(&["r"], &[["r.r.r", "id(o)"]]), 8).unwrap();
        let names: Vec<_> = c.morphisms().map(|f| c.morphism_name(f).to_owned()).collect();
        assert_eq!(names, ["id(o)", "r", "r.r"]);
    }

    #[test]
    fn normal_forms_are_shortlex_least() {
        // a.b = b.a with a, b idempotent: the commutative band on two generators.
        let raw = one_object(&["a", "b"], &[["a.a", "a"], ["b.b", "b"], ["b.a", "a.b"]]);
        let c = close_presentation(&raw, 8).unwrap();
        let names: Vec<_> = c.morphisms().map(|f| c.morphism_name(f).to_owned()).collect();
        // In application order `a` then `b` is the path [a, b], written b.a.
        assert_eq!(names, ["id(o)", "a", "b", "b.a"]);
    }

    #[test]
    fn two_objects_with_retraction() {
        let raw = RawPresentation {
            objects: vec!["x".into(), "y".into()],
            generators: vec![RawMorphism::new("i", "x", "y"), RawMorphism::new("r", "y", "x")],
            relations: vec![["r.i".into(), "id(x)".into()]],
        };
        let c = close_presentation(&raw, 8).unwrap();
        // hom(x,x) = {id}, hom(x,y) = {i}, hom(y,x) = {r}, hom(y,y) = {id, i.r}.
        assert_eq!(c.morphism_count(), 5);
        assert_eq!(c.hom(1, 1).len(), 2);
    }

    #[test]
    fn ill_typed_and_non_parallel_words_are_rejected() {
        let raw = RawPresentation {
            objects: vec!["x".into(), "y".into()],
            generators: vec![RawMorphism::new("a", "x", "y")],
            relations: vec![["a.a".into(), "a".into()]],
        };
        assert_eq!(close_presentation(&raw, 4), Err(PresentationError::IllTypedWord("a.a".into())));
        let raw = RawPresentation { relations: vec![["a".into(), "id(x)".into()]], ..raw };
        assert!(matches!(close_presentation(&raw, 4), Err(PresentationError::NonParallelRelation(..))));
    }
}
