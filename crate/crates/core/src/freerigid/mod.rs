//! The labeled oriented Brauer category `Fr(C)` of a finite category `C`.
//!
//! Objects are words of signed objects of `C`. A morphism is an oriented
//! matching of boundary points, with the orientation rule of
//! [`crate::cobordism`]. Each strand is labeled by a morphism of `C` running
//! from the object at its `ε = +1` end to the object at its `ε = −1` end.
//! Closed loops are recorded as a multiset of trace classes.

mod checks;
mod universal;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cobordism::{canonical_matching, epsilon, CobError, Point, Sign, SignedWord};
use crate::fincat::{trace_set, ClassId, FinCat, MorId, ObjId, TraceSet};
use crate::moncat::SymmetricMonoidal;

pub use checks::{
    fr_end_unit, fr_fully_faithful_check, fr_hom_from_unit, fr_law_check, fr_rigidity_check, fr_vs_cob,
    loop_rotation_classes, multiset_count, EndUnitReport, FullyFaithfulReport, HomFromUnitReport, HomWitness,
    LawReport, RigidityCheck, VsCobReport,
};
pub use universal::{evaluate, fr_universal_map, Interpretation, UniversalError, UniversalReport};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FrError {
    #[error("unknown object id {0}")]
    UnknownObject(ObjId),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("unknown trace class {0}")]
    UnknownClass(ClassId),
    #[error(transparent)]
    Matching(#[from] CobError),
    #[error("label of strand {0}-{1} has the wrong type")]
    LabelTypeMismatch(Point, Point),
    #[error("boundary mismatch: {0} ≠ {1}")]
    BoundaryMismatch(String, String),
    #[error("missing label for boundary point {0}")]
    MissingLabel(Point),
    #[error("malformed diagram: {0}")]
    Malformed(String),
}

/// A word of signed objects of `C`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabeledWord(pub Vec<(ObjId, Sign)>);

impl LabeledWord {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn signs(&self) -> Vec<Sign> {
        self.0.iter().map(|&(_, s)| s).collect()
    }

    pub fn concat(&self, other: &LabeledWord) -> LabeledWord {
        LabeledWord(self.0.iter().chain(&other.0).copied().collect())
    }

    /// Reversed, with every sign flipped.
    pub fn dual(&self) -> LabeledWord {
        LabeledWord(self.0.iter().rev().map(|&(x, s)| (x, s.flip())).collect())
    }

    /// Every entry carries object 0; the words of `Fr(terminal)`.
    pub fn from_signs(w: &SignedWord) -> LabeledWord {
        LabeledWord(w.0.iter().map(|&s| (0, s)).collect())
    }

    pub fn forget_labels(&self) -> SignedWord {
        SignedWord(self.signs())
    }

    fn object_at(&self, p: Point, target: &LabeledWord) -> ObjId {
        match p {
            Point::Source(k) => self.0[k].0,
            Point::Target(k) => target.0[k].0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Strand {
    pub a: Point,
    pub b: Point,
    pub label: MorId,
}

/// A morphism of `Fr(C)`. Strands are stored as in [`crate::cobordism::Cob1Mor`],
/// loops as a sorted list of class ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BrauerMor {
    source: LabeledWord,
    target: LabeledWord,
    strands: Vec<Strand>,
    loops: Vec<ClassId>,
}

impl BrauerMor {
    pub fn source(&self) -> &LabeledWord {
        &self.source
    }

    pub fn target(&self) -> &LabeledWord {
        &self.target
    }

    pub fn strands(&self) -> &[Strand] {
        &self.strands
    }

    pub fn loops(&self) -> &[ClassId] {
        &self.loops
    }

    pub fn epsilon(&self, p: Point) -> i8 {
        let (s, t) = (self.source.signs(), self.target.signs());
        epsilon(&s, &t, p).expect("point in range")
    }

    /// `in-point → (out-point, label)` along the orientation, indexed by
    /// [`BrauerMor::point_index`].
    fn flow(&self) -> Vec<(Point, MorId)> {
        let mut out = vec![(Point::Source(0), 0); self.source.len() + self.target.len()];
        for st in &self.strands {
            let plus = |p: Point| match p {
                Point::Source(k) => self.source.0[k].1 == Sign::Plus,
                Point::Target(k) => self.target.0[k].1 == Sign::Minus,
            };
            let (from, to) = if plus(st.a) { (st.a, st.b) } else { (st.b, st.a) };
            out[self.point_index(from)] = (to, st.label);
        }
        out
    }

    fn point_index(&self, p: Point) -> usize {
        match p {
            Point::Source(k) => k,
            Point::Target(k) => self.source.len() + k,
        }
    }

    pub fn without_loops(&self) -> BrauerMor {
        BrauerMor { loops: Vec::new(), ..self.clone() }
    }
}

/// `Fr(C)` for a fixed finite category, with its trace classes.
#[derive(Clone, Debug)]
pub struct FreeRigid {
    cat: Arc<FinCat>,
    traces: TraceSet,
}

impl PartialEq for FreeRigid {
    fn eq(&self, other: &Self) -> bool {
        self.cat == other.cat
    }
}

impl FreeRigid {
    pub fn new(cat: Arc<FinCat>) -> Self {
        let traces = trace_set(&cat);
        Self { cat, traces }
    }

    pub fn category(&self) -> &Arc<FinCat> {
        &self.cat
    }

    pub fn traces(&self) -> &TraceSet {
        &self.traces
    }

    /// Validates and canonicalizes a diagram given as `(a, b, label)` triples.
    pub fn morphism(
        &self,
        source: LabeledWord,
        target: LabeledWord,
        strands: impl IntoIterator<Item = (Point, Point, MorId)>,
        mut loops: Vec<ClassId>,
    ) -> Result<BrauerMor, FrError> {
        for &(x, _) in source.0.iter().chain(&target.0) {
            if x >= self.cat.object_count() {
                return Err(FrError::UnknownObject(x));
            }
        }
        let strands: Vec<(Point, Point, MorId)> = strands.into_iter().collect();
        let (s, t) = (source.signs(), target.signs());
        canonical_matching(&s, &t, strands.iter().map(|&(a, b, _)| (a, b)))?;
        let mut canon = Vec::with_capacity(strands.len());
        for (a, b, label) in strands {
            if label >= self.cat.morphism_count() {
                return Err(FrError::UnknownMorphism(label.to_string()));
            }
            let (from, to) = if epsilon(&s, &t, a) == Some(1) { (a, b) } else { (b, a) };
            if self.cat.src(label) != source.object_at(from, &target)
                || self.cat.dst(label) != source.object_at(to, &target)
            {
                return Err(FrError::LabelTypeMismatch(a, b));
            }
            let (a, b) = if a < b { (a, b) } else { (b, a) };
            canon.push(Strand { a, b, label });
        }
        canon.sort_unstable();
        if let Some(&c) = loops.iter().find(|&&c| c >= self.traces.class_count()) {
            return Err(FrError::UnknownClass(c));
        }
        loops.sort_unstable();
        Ok(BrauerMor { source, target, strands: canon, loops })
    }

    pub fn identity(&self, w: &LabeledWord) -> BrauerMor {
        let strands =
            w.0.iter()
                .enumerate()
                .map(|(k, &(x, _))| Strand { a: Point::Source(k), b: Point::Target(k), label: self.cat.identity(x) })
                .collect();
        BrauerMor { source: w.clone(), target: w.clone(), strands, loops: Vec::new() }
    }

    /// `ev_w: w ⊗ w* → ∅`
    pub fn ev(&self, w: &LabeledWord) -> BrauerMor {
        let n = w.len();
        let strands = (0..n)
            .map(|k| Strand {
                a: Point::Source(k),
                b: Point::Source(2 * n - 1 - k),
                label: self.cat.identity(w.0[k].0),
            })
            .collect();
        BrauerMor { source: w.concat(&w.dual()), target: LabeledWord::empty(), strands, loops: Vec::new() }
    }

    /// `coev_w: ∅ → w* ⊗ w`
    pub fn coev(&self, w: &LabeledWord) -> BrauerMor {
        let n = w.len();
        let strands = (0..n)
            .map(|k| Strand {
                a: Point::Target(k),
                b: Point::Target(2 * n - 1 - k),
                label: self.cat.identity(w.0[n - 1 - k].0),
            })
            .collect();
        BrauerMor { source: LabeledWord::empty(), target: w.dual().concat(w), strands, loops: Vec::new() }
    }

    pub fn dual(&self, w: &LabeledWord) -> LabeledWord {
        w.dual()
    }

    /// `g ∘ f`.
    pub fn compose(&self, g: &BrauerMor, f: &BrauerMor) -> Result<BrauerMor, FrError> {
        self.compose_traced(g, f).map(|(m, _)| m)
    }

    /// `g ∘ f` together with the label sequence, in flow order, of every
    /// closed loop created by the gluing.
    pub fn compose_traced(&self, g: &BrauerMor, f: &BrauerMor) -> Result<(BrauerMor, Vec<Vec<MorId>>), FrError> {
        if f.target != g.source {
            return Err(FrError::BoundaryMismatch(self.word_to_string(&f.target), self.word_to_string(&g.source)));
        }
        let (f_flow, g_flow) = (f.flow(), g.flow());
        let middle = &f.target;
        let mut middle_seen = vec![false; middle.len()];
        let cat = &*self.cat;

        // One step along a strand; returns the exit point and whether it lies inside the middle word.
        let step = |in_f: bool, p: Point| -> (Point, MorId, Option<(bool, Point, usize)>) {
            let (q, label) = if in_f { f_flow[f.point_index(p)] } else { g_flow[g.point_index(p)] };
            let next = match (in_f, q) {
                (true, Point::Target(l)) => Some((false, Point::Source(l), l)),
                (false, Point::Source(l)) => Some((true, Point::Target(l), l)),
                _ => None,
            };
            (q, label, next)
        };
        let extend = |acc: Option<MorId>, label: MorId, a: Point, b: Point| -> Result<MorId, FrError> {
            match acc {
                None => Ok(label),
                Some(acc) => cat.compose(label, acc).ok_or(FrError::LabelTypeMismatch(a, b)),
            }
        };

        let mut strands = Vec::new();
        let starts = f
            .source
            .0
            .iter()
            .enumerate()
            .filter(|(_, e)| e.1 == Sign::Plus)
            .map(|(k, _)| (true, Point::Source(k)))
            .chain(
                g.target
                    .0
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| e.1 == Sign::Minus)
                    .map(|(k, _)| (false, Point::Target(k))),
            );
        for (start_in_f, start) in starts {
            let (mut in_f, mut p, mut acc) = (start_in_f, start, None);
            let end = loop {
                let (q, label, next) = step(in_f, p);
                acc = Some(extend(acc, label, start, q)?);
                match next {
                    Some((side, point, l)) => {
                        middle_seen[l] = true;
                        in_f = side;
                        p = point;
                    }
                    None => break q,
                }
            };
            strands.push((start, end, acc.expect("strand has a label")));
        }

        let mut loops: Vec<ClassId> = f.loops.iter().chain(&g.loops).copied().collect();
        let mut cycles = Vec::new();
        for l in 0..middle.len() {
            if middle_seen[l] {
                continue;
            }
            let start = if middle.0[l].1 == Sign::Plus { (false, Point::Source(l)) } else { (true, Point::Target(l)) };
            let (mut in_f, mut p) = start;
            let mut labels = Vec::new();
            loop {
                let (_, label, next) = step(in_f, p);
                labels.push(label);
                let (side, point, k) = next.expect("closed component stays in the middle");
                middle_seen[k] = true;
                (in_f, p) = (side, point);
                if (in_f, p) == start {
                    break;
                }
            }
            let composite =
                cat.compose_path(&labels).ok_or(FrError::LabelTypeMismatch(Point::Target(l), Point::Target(l)))?;
            loops.push(self.traces.class_of(composite).expect("loop composite is an endomorphism"));
            cycles.push(labels);
        }

        let m = self.morphism(f.source.clone(), g.target.clone(), strands, loops)?;
        Ok((m, cycles))
    }

    /// Side-by-side juxtaposition `f ⊗ g`.
    pub fn tensor(&self, f: &BrauerMor, g: &BrauerMor) -> BrauerMor {
        let (so, to) = (f.source.len(), f.target.len());
        let shift = |p: Point| match p {
            Point::Source(k) => Point::Source(k + so),
            Point::Target(k) => Point::Target(k + to),
        };
        let mut strands: Vec<Strand> = f
            .strands
            .iter()
            .copied()
            .chain(g.strands.iter().map(|s| Strand { a: shift(s.a), b: shift(s.b), label: s.label }))
            .collect();
        strands.sort_unstable();
        let mut loops: Vec<ClassId> = f.loops.iter().chain(&g.loops).copied().collect();
        loops.sort_unstable();
        BrauerMor { source: f.source.concat(&g.source), target: f.target.concat(&g.target), strands, loops }
    }

    /// `s_{w1,w2}: w1 ⊗ w2 → w2 ⊗ w1`.
    pub fn symmetry(&self, w1: &LabeledWord, w2: &LabeledWord) -> BrauerMor {
        let (a, b) = (w1.len(), w2.len());
        let mut strands: Vec<Strand> = (0..a)
            .map(|k| Strand { a: Point::Source(k), b: Point::Target(b + k), label: self.cat.identity(w1.0[k].0) })
            .chain((0..b).map(|k| Strand {
                a: Point::Source(a + k),
                b: Point::Target(k),
                label: self.cat.identity(w2.0[k].0),
            }))
            .collect();
        strands.sort_unstable();
        BrauerMor { source: w1.concat(w2), target: w2.concat(w1), strands, loops: Vec::new() }
    }

    /// Every labeled word of length at most `max_len`, shortest first.
    pub fn words_up_to(&self, max_len: usize) -> Vec<LabeledWord> {
        let letters: Vec<(ObjId, Sign)> =
            self.cat.objects().flat_map(|x| [(x, Sign::Plus), (x, Sign::Minus)]).collect();
        (0..=max_len)
            .flat_map(|len| (0..len).map(|_| letters.iter().copied()).multi_cartesian_product().map(LabeledWord))
            .collect()
    }

    /// Every multiset of at most `max_loops` trace classes, as sorted lists.
    pub fn loop_multisets(&self, max_loops: usize) -> Vec<Vec<ClassId>> {
        let n = self.traces.class_count();
        (0..=max_loops).flat_map(|k| (0..n).combinations_with_replacement(k)).collect()
    }

    /// Every morphism `w1 → w2` with at most `max_loops` loops, in canonical order.
    pub fn enumerate_homs(&self, w1: &LabeledWord, w2: &LabeledWord, max_loops: usize) -> Vec<BrauerMor> {
        let (s, t) = (w1.signs(), w2.signs());
        let points: Vec<Point> = crate::cobordism::boundary_points(s.len(), t.len()).collect();
        let (plus, minus): (Vec<Point>, Vec<Point>) = points.iter().partition(|&&p| epsilon(&s, &t, p) == Some(1));
        if plus.len() != minus.len() {
            return Vec::new();
        }
        let multisets = self.loop_multisets(max_loops);
        let obj = |p: Point| w1.object_at(p, w2);
        let mut out = Vec::new();
        for perm in minus.iter().copied().permutations(minus.len()) {
            let label_choices: Vec<&[MorId]> =
                plus.iter().zip(&perm).map(|(&p, &q)| self.cat.hom(obj(p), obj(q))).collect();
            for labels in label_choices.iter().map(|h| h.iter().copied()).multi_cartesian_product() {
                let mut strands: Vec<Strand> = plus
                    .iter()
                    .zip(&perm)
                    .zip(&labels)
                    .map(|((&p, &q), &label)| {
                        let (a, b) = if p < q { (p, q) } else { (q, p) };
                        Strand { a, b, label }
                    })
                    .collect();
                strands.sort_unstable();
                for loops in &multisets {
                    out.push(BrauerMor {
                        source: w1.clone(),
                        target: w2.clone(),
                        strands: strands.clone(),
                        loops: loops.clone(),
                    });
                }
            }
        }
        out.sort();
        out
    }

    pub fn word_to_string(&self, w: &LabeledWord) -> String {
        if w.is_empty() {
            return "∅".into();
        }
        w.0.iter().map(|&(x, s)| format!("{}{}", self.cat.object_name(x), s.symbol())).join(" ")
    }

    pub fn parse_word(&self, text: &str) -> Result<LabeledWord, FrError> {
        text.split_whitespace()
            .filter(|tok| *tok != "∅")
            .map(|tok| {
                let sign = match tok.chars().last() {
                    Some('+') => Sign::Plus,
                    Some('-') => Sign::Minus,
                    _ => return Err(FrError::Malformed(format!("word entry `{tok}` needs a trailing + or -"))),
                };
                let name = &tok[..tok.len() - 1];
                let x =
                    self.cat.object_id(name).ok_or_else(|| FrError::Malformed(format!("unknown object `{name}`")))?;
                Ok((x, sign))
            })
            .collect::<Result<_, _>>()
            .map(LabeledWord)
    }

    pub fn display(&self, m: &BrauerMor) -> String {
        let strands =
            m.strands.iter().map(|s| format!("{}-{}:{}", s.a, s.b, self.cat.morphism_name(s.label))).join(" ");
        let loops =
            m.loops.iter().map(|&c| format!("[{}]", self.cat.morphism_name(self.traces.representative(c)))).join(" ");
        format!(
            "{} → {} {{{}}} loops{{{}}}",
            self.word_to_string(&m.source),
            self.word_to_string(&m.target),
            strands,
            loops
        )
    }

    pub fn from_raw(&self, raw: &RawBrauer) -> Result<BrauerMor, FrError> {
        let word = |signs: &str, side: fn(usize) -> Point| -> Result<LabeledWord, FrError> {
            let signs: SignedWord = signs.parse()?;
            signs
                .0
                .iter()
                .enumerate()
                .map(|(k, &s)| {
                    let p = side(k);
                    let name = raw.labels.get(&p.to_string()).ok_or(FrError::MissingLabel(p))?;
                    let x = self
                        .cat
                        .object_id(name)
                        .ok_or_else(|| FrError::Malformed(format!("unknown object `{name}`")))?;
                    Ok((x, s))
                })
                .collect::<Result<_, _>>()
                .map(LabeledWord)
        };
        let source = word(&raw.source, Point::Source)?;
        let target = word(&raw.target, Point::Target)?;
        let strands = raw
            .pairs
            .iter()
            .map(|pair| {
                let [a, b, label] = pair.as_slice() else {
                    return Err(FrError::Malformed("each pair needs two points and a label".into()));
                };
                let label = self.cat.morphism_id(label).ok_or_else(|| FrError::UnknownMorphism(label.clone()))?;
                Ok((a.parse()?, b.parse()?, label))
            })
            .collect::<Result<Vec<_>, FrError>>()?;
        let loops = raw
            .loops
            .iter()
            .map(|name| {
                let e = self.cat.morphism_id(name).ok_or_else(|| FrError::UnknownMorphism(name.clone()))?;
                self.traces
                    .class_of(e)
                    .ok_or_else(|| FrError::Malformed(format!("loop label `{name}` is not an endomorphism")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        self.morphism(source, target, strands, loops)
    }

    pub fn to_raw(&self, m: &BrauerMor) -> RawBrauer {
        let signs = |w: &LabeledWord| w.0.iter().map(|&(_, s)| s.symbol()).collect();
        let labels = m
            .source
            .0
            .iter()
            .enumerate()
            .map(|(k, &(x, _))| (Point::Source(k), x))
            .chain(m.target.0.iter().enumerate().map(|(k, &(x, _))| (Point::Target(k), x)))
            .map(|(p, x)| (p.to_string(), self.cat.object_name(x).to_owned()))
            .collect();
        RawBrauer {
            source: signs(&m.source),
            target: signs(&m.target),
            labels,
            pairs: m
                .strands
                .iter()
                .map(|s| vec![s.a.to_string(), s.b.to_string(), self.cat.morphism_name(s.label).to_owned()])
                .collect(),
            loops: m.loops.iter().map(|&c| self.cat.morphism_name(self.traces.representative(c)).to_owned()).collect(),
        }
    }
}

impl fmt::Display for LabeledWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("∅");
        }
        f.write_str(&self.0.iter().map(|&(x, s)| format!("{x}{}", s.symbol())).join(" "))
    }
}

/// File form of a labeled diagram: the cobordism format plus an object for
/// every boundary point, a label as third pair entry, and loop
/// representatives.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawBrauer {
    pub source: String,
    pub target: String,
    pub labels: BTreeMap<String, String>,
    pub pairs: Vec<Vec<String>>,
    #[serde(default)]
    pub loops: Vec<String>,
}

impl SymmetricMonoidal for FreeRigid {
    type Obj = LabeledWord;
    type Mor = BrauerMor;

    fn unit_object(&self) -> LabeledWord {
        LabeledWord::empty()
    }

    fn tensor_objects(&self, a: &LabeledWord, b: &LabeledWord) -> LabeledWord {
        a.concat(b)
    }

    fn dom(&self, f: &BrauerMor) -> LabeledWord {
        f.source.clone()
    }

    fn cod(&self, f: &BrauerMor) -> LabeledWord {
        f.target.clone()
    }

    fn identity_on(&self, a: &LabeledWord) -> BrauerMor {
        self.identity(a)
    }

    fn compose(&self, g: &BrauerMor, f: &BrauerMor) -> Option<BrauerMor> {
        FreeRigid::compose(self, g, f).ok()
    }

    fn tensor_morphisms(&self, f: &BrauerMor, g: &BrauerMor) -> BrauerMor {
        self.tensor(f, g)
    }

    fn braiding(&self, a: &LabeledWord, b: &LabeledWord) -> BrauerMor {
        self.symmetry(a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{close_presentation, standard, RawMorphism, RawPresentation};

    fn arrow() -> FreeRigid {
        FreeRigid::new(Arc::new(standard::walking_arrow()))
    }

    #[test]
    fn coev_then_cap_gives_identity_loop() {
        let fr = arrow();
        let x = LabeledWord(vec![(0, Sign::Plus)]);
        let (m, cycles) = fr.compose_traced(&fr.ev(&x.dual()), &fr.coev(&x)).unwrap();
        assert_eq!(m.loops(), &[fr.traces().class_of(0).unwrap()]);
        assert_eq!(cycles, vec![vec![0, 0]]);
        assert_eq!(m.source(), &LabeledWord::empty());
    }

    #[test]
    fn cap_labeled_by_idempotent_gives_its_class() {
        let raw = RawPresentation {
            objects: vec!["o".into()],
            generators: vec![RawMorphism::new("e", "o", "o")],
            relations: vec![["e.e".into(), "e".into()]],
        };
        let fr = FreeRigid::new(Arc::new(close_presentation(&raw, 10).unwrap()));
        let e = fr.category().morphism_id("e").unwrap();
        let w = LabeledWord(vec![(0, Sign::Minus), (0, Sign::Plus)]);
        let cup = fr.coev(&LabeledWord(vec![(0, Sign::Plus)]));
        let cap = fr.morphism(w, LabeledWord::empty(), [(Point::Source(0), Point::Source(1), e)], vec![]).unwrap();
        let m = fr.compose(&cap, &cup).unwrap();
        assert_eq!(m.loops(), &[fr.traces().class_of(e).unwrap()]);
        assert_ne!(fr.traces().class_of(e), fr.traces().class_of(0));
    }

    #[test]
    fn labels_compose_along_flow() {
        let fr = arrow();
        let a = fr.category().morphism_id("a").unwrap();
        let (x, y) = (LabeledWord(vec![(0, Sign::Plus)]), LabeledWord(vec![(1, Sign::Plus)]));
        let f = fr.morphism(x.clone(), y.clone(), [(Point::Source(0), Point::Target(0), a)], vec![]).unwrap();
        assert_eq!(fr.compose(&fr.identity(&y), &f).unwrap(), f);
        assert_eq!(fr.compose(&f, &fr.identity(&x)).unwrap(), f);
        // A downward `−` strand runs upward: its label goes target → source.
        let (xm, ym) = (x.dual(), y.dual());
        let g = fr.morphism(ym.clone(), xm.clone(), [(Point::Source(0), Point::Target(0), a)], vec![]).unwrap();
        assert_eq!(fr.compose(&g, &fr.identity(&ym)).unwrap(), g);
        assert!(fr.morphism(xm, ym, [(Point::Source(0), Point::Target(0), a)], vec![]).is_err());
    }

    #[test]
    fn hom_examples() {
        let fr = arrow();
        let (x, y) = (0, 1);
        let w = |v: Vec<(ObjId, Sign)>| LabeledWord(v);
        let h = fr.enumerate_homs(&LabeledWord::empty(), &w(vec![(y, Sign::Plus), (x, Sign::Minus)]), 0);
        assert_eq!(h.len(), 1);
        assert_eq!(h[0].strands()[0].label, fr.category().morphism_id("a").unwrap());
        assert!(fr.enumerate_homs(&LabeledWord::empty(), &w(vec![(x, Sign::Plus), (y, Sign::Minus)]), 0).is_empty());
        assert!(fr.enumerate_homs(&LabeledWord::empty(), &w(vec![(x, Sign::Plus)]), 2).is_empty());
    }

    #[test]
    fn dual_of_generator() {
        let fr = arrow();
        assert_eq!(fr.dual(&LabeledWord(vec![(0, Sign::Plus)])), LabeledWord(vec![(0, Sign::Minus)]));
        let w = LabeledWord(vec![(0, Sign::Plus), (1, Sign::Minus)]);
        assert_eq!(fr.tensor(&fr.identity(&w), &fr.identity(&w)), fr.identity(&w.concat(&w)));
    }

    #[test]
    fn raw_round_trip() {
        let fr = arrow();
        let w = LabeledWord(vec![(1, Sign::Plus), (0, Sign::Minus)]);
        let m = fr.enumerate_homs(&LabeledWord::empty(), &w, 1).pop().unwrap();
        let raw = fr.to_raw(&m);
        assert_eq!(raw.pairs, vec![vec!["t0".to_string(), "t1".into(), "a".into()]]);
        assert_eq!(fr.from_raw(&raw).unwrap(), m);
        let text = serde_json::to_string(&raw).unwrap();
        assert_eq!(fr.from_raw(&serde_json::from_str(&text).unwrap()).unwrap(), m);
    }

    #[test]
    fn words_and_parsing() {
        let fr = arrow();
        assert_eq!(fr.words_up_to(2).len(), 1 + 4 + 16);
        let w = fr.parse_word("y+ x-").unwrap();
        assert_eq!(w, LabeledWord(vec![(1, Sign::Plus), (0, Sign::Minus)]));
        assert_eq!(fr.word_to_string(&w), "y+ x-");
        assert!(fr.parse_word("z+").is_err());
    }
}
