use std::collections::BTreeSet;
use std::sync::Arc;

use itertools::Itertools;

use super::{BrauerMor, FreeRigid, LabeledWord};
use crate::cobordism::{cob_compose, cob_enumerate_homs, cob_symmetry, cob_tensor, Cob1Mor, Point, Sign, SignedWord};
use crate::fincat::{standard, ClassId, Functor, MorId, ObjId};
use crate::moncat::{triangle_failures, DualData, TriangleFailure};

/// Number of multisets of size at most `max` over `n` elements.
pub fn multiset_count(n: usize, max: usize) -> usize {
    let binomial = |top: usize, k: usize| (0..k).fold(1usize, |acc, i| acc * (top - i) / (i + 1));
    (0..=max)
        .map(|k| {
            if k == 0 {
                1
            } else if n == 0 {
                0
            } else {
                binomial(n + k - 1, k)
            }
        })
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomFromUnitReport {
    pub target: LabeledWord,
    /// All morphisms `∅ → target` within the loop bound.
    pub morphisms: Vec<BrauerMor>,
    /// Loop-free part, one entry per bijection `σ` and label choice.
    pub decomposition: Vec<(Vec<usize>, Vec<MorId>)>,
    /// `Σ_σ ∏_i |Hom(n_σ(i), m_i)|`.
    pub formula_count: usize,
    pub multiset_count: usize,
    /// The decomposition hits every loop-free morphism exactly once.
    pub bijective: bool,
}

impl HomFromUnitReport {
    pub fn passed(&self) -> bool {
        self.bijective && self.morphisms.len() == self.formula_count * self.multiset_count
    }
}

/// Morphisms `∅ → (m_1,+)…(m_i,+)(n_1,−)…(n_j,−)` with their decomposition
/// by bijections `σ: {1..i} ≅ {1..j}` and labels in `Hom(n_σ(k), m_k)`.
pub fn fr_hom_from_unit(fr: &FreeRigid, pos: &[ObjId], neg: &[ObjId], max_loops: usize) -> HomFromUnitReport {
    let cat = fr.category();
    let target =
        LabeledWord(pos.iter().map(|&m| (m, Sign::Plus)).chain(neg.iter().map(|&n| (n, Sign::Minus))).collect());
    let morphisms = fr.enumerate_homs(&LabeledWord::empty(), &target, max_loops);

    let (i, j) = (pos.len(), neg.len());
    let mut decomposition = Vec::new();
    let mut formula_count = 0;
    if i == j {
        for sigma in (0..j).permutations(j) {
            let homs: Vec<&[MorId]> = (0..i).map(|k| cat.hom(neg[sigma[k]], pos[k])).collect();
            formula_count += homs.iter().map(|h| h.len()).product::<usize>();
            for labels in homs.iter().map(|h| h.iter().copied()).multi_cartesian_product() {
                decomposition.push((sigma.clone(), labels));
            }
        }
    }

    let built: Vec<BrauerMor> = decomposition
        .iter()
        .map(|(sigma, labels)| {
            let strands = (0..i).map(|k| (Point::Target(k), Point::Target(i + sigma[k]), labels[k]));
            fr.morphism(LabeledWord::empty(), target.clone(), strands, Vec::new()).expect("decomposition is well typed")
        })
        .collect();
    let built_set: BTreeSet<&BrauerMor> = built.iter().collect();
    let loop_free: BTreeSet<&BrauerMor> = morphisms.iter().filter(|m| m.loops().is_empty()).collect();
    let bijective = built_set.len() == built.len() && built_set == loop_free;

    HomFromUnitReport {
        target,
        morphisms,
        decomposition,
        formula_count,
        multiset_count: multiset_count(fr.traces().class_count(), max_loops),
        bijective,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndUnitReport {
    pub elements: Vec<BrauerMor>,
    pub expected_count: usize,
    pub composition_is_union: bool,
    pub commutative: bool,
    pub unital: bool,
}

impl EndUnitReport {
    pub fn passed(&self) -> bool {
        self.elements.len() == self.expected_count && self.composition_is_union && self.commutative && self.unital
    }
}

/// `End(∅)` truncated at `max_loops`, with its monoid structure checked.
pub fn fr_end_unit(fr: &FreeRigid, max_loops: usize) -> EndUnitReport {
    let empty = LabeledWord::empty();
    let elements = fr.enumerate_homs(&empty, &empty, max_loops);
    let id = fr.identity(&empty);
    let (mut union, mut commutative, mut unital) = (true, true, true);
    for a in &elements {
        unital &= fr.compose(&id, a).as_ref() == Ok(a) && fr.compose(a, &id).as_ref() == Ok(a);
        for b in &elements {
            let ab = fr.compose(a, b).expect("endomorphisms of ∅ compose");
            let mut expected: Vec<ClassId> = a.loops().iter().chain(b.loops()).copied().collect();
            expected.sort_unstable();
            union &= ab.loops() == expected.as_slice() && ab.strands().is_empty();
            commutative &= fr.compose(b, a).as_ref() == Ok(&ab);
        }
    }
    EndUnitReport {
        elements,
        expected_count: multiset_count(fr.traces().class_count(), max_loops),
        composition_is_union: union,
        commutative,
        unital,
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VsCobReport {
    pub hom_sets: usize,
    pub morphisms: usize,
    pub composable_pairs: usize,
    pub tensor_pairs: usize,
    pub failures: Vec<String>,
}

impl VsCobReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn forget(m: &BrauerMor) -> Cob1Mor {
    Cob1Mor::new(
        m.source().forget_labels(),
        m.target().forget_labels(),
        m.strands().iter().map(|s| (s.a, s.b)),
        m.loops().len(),
    )
    .expect("underlying matching of a Brauer diagram")
}

/// Compares `Fr(terminal)` with the cobordism category on all words of
/// length at most `maxlen`, with loops and circles up to `bound`.
pub fn fr_vs_cob(maxlen: usize, bound: usize) -> VsCobReport {
    const MAX_WITNESSES: usize = 10;
    let fr = FreeRigid::new(Arc::new(standard::terminal()));
    let words = SignedWord::all_up_to(maxlen);
    let lwords: Vec<LabeledWord> = words.iter().map(LabeledWord::from_signs).collect();
    let mut report = VsCobReport::default();
    let fail = |report: &mut VsCobReport, msg: String| {
        if report.failures.len() < MAX_WITNESSES {
            report.failures.push(msg);
        }
    };

    let n = words.len();
    let mut homs: Vec<Vec<Vec<BrauerMor>>> = vec![vec![Vec::new(); n]; n];
    for a in 0..n {
        for b in 0..n {
            let fr_hom = fr.enumerate_homs(&lwords[a], &lwords[b], bound);
            let mut image: Vec<Cob1Mor> = fr_hom.iter().map(forget).collect();
            image.sort();
            let before = image.len();
            image.dedup();
            let cob_hom = cob_enumerate_homs(&words[a], &words[b], bound);
            if image.len() != before {
                fail(&mut report, format!("Hom({}, {}): forgetful map is not injective", words[a], words[b]));
            }
            if image != cob_hom {
                fail(
                    &mut report,
                    format!("Hom({}, {}): {} diagrams vs {} cobordisms", words[a], words[b], before, cob_hom.len()),
                );
            }
            report.hom_sets += 1;
            report.morphisms += fr_hom.len();
            homs[a][b] = fr_hom;
        }
        if forget(&fr.identity(&lwords[a])) != Cob1Mor::identity(&words[a]) {
            fail(&mut report, format!("identity on {}", words[a]));
        }
        for b in 0..n {
            if words[a].len() + words[b].len() <= maxlen
                && forget(&fr.symmetry(&lwords[a], &lwords[b])) != cob_symmetry(&words[a], &words[b])
            {
                fail(&mut report, format!("symmetry on {}, {}", words[a], words[b]));
            }
        }
    }

    for from_a in &homs {
        for (b, fs) in from_a.iter().enumerate() {
            for gs in &homs[b] {
                for f in fs {
                    for g in gs {
                        report.composable_pairs += 1;
                        let lhs = forget(&fr.compose(g, f).expect("composable"));
                        let rhs = cob_compose(&forget(g), &forget(f)).expect("composable");
                        if lhs != rhs {
                            fail(&mut report, format!("composition: {} after {}", forget(g), forget(f)));
                        }
                    }
                }
            }
        }
    }

    let all: Vec<(&BrauerMor, Cob1Mor)> = homs.iter().flatten().flatten().map(|m| (m, forget(m))).collect();
    for (f, cf) in &all {
        for (g, cg) in &all {
            report.tensor_pairs += 1;
            if forget(&fr.tensor(f, g)) != cob_tensor(cf, cg) {
                fail(&mut report, format!("tensor: {cf} ⊗ {cg}"));
            }
        }
    }
    report
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomWitness {
    pub source: String,
    pub target: String,
    pub source_count: usize,
    pub target_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullyFaithfulReport {
    pub full: bool,
    pub faithful: bool,
    pub source_classes: usize,
    pub target_classes: usize,
    pub trace_bijective: bool,
    pub hom_sets_checked: usize,
    pub hom_bijective: bool,
    /// First hom set, in word order, on which the induced map is not a bijection.
    pub witness: Option<HomWitness>,
}

impl FullyFaithfulReport {
    pub fn passed(&self) -> bool {
        self.full && self.faithful && self.trace_bijective && self.hom_bijective
    }
}

/// Compares `F: C → D` with the induced map `Fr(C) → Fr(D)` on all hom sets
/// between words of length at most `maxlen`.
pub fn fr_fully_faithful_check(functor: &Functor, maxlen: usize, max_loops: usize) -> FullyFaithfulReport {
    let frc = FreeRigid::new(functor.source().clone());
    let frd = FreeRigid::new(functor.target().clone());
    let trace_map: Vec<ClassId> = (0..frc.traces().class_count())
        .map(|c| frd.traces().class_of(functor.mor(frc.traces().representative(c))).expect("endomorphism image"))
        .collect();
    let image_classes: BTreeSet<ClassId> = trace_map.iter().copied().collect();
    let trace_bijective = image_classes.len() == trace_map.len() && trace_map.len() == frd.traces().class_count();

    let map_word = |w: &LabeledWord| LabeledWord(w.0.iter().map(|&(x, s)| (functor.obj(x), s)).collect());
    let map_mor = |m: &BrauerMor| {
        frd.morphism(
            map_word(m.source()),
            map_word(m.target()),
            m.strands().iter().map(|s| (s.a, s.b, functor.mor(s.label))),
            m.loops().iter().map(|&c| trace_map[c]).collect(),
        )
        .expect("image of a diagram under a functor")
    };

    let mut hom_sets_checked = 0;
    let mut witness = None;
    let words = frc.words_up_to(maxlen);
    for w1 in &words {
        for w2 in &words {
            hom_sets_checked += 1;
            let source = frc.enumerate_homs(w1, w2, max_loops);
            let mut image: Vec<BrauerMor> = source.iter().map(map_mor).collect();
            image.sort();
            image.dedup();
            let target = frd.enumerate_homs(&map_word(w1), &map_word(w2), max_loops);
            if (image.len() != source.len() || image != target) && witness.is_none() {
                witness = Some(HomWitness {
                    source: frc.word_to_string(w1),
                    target: frc.word_to_string(w2),
                    source_count: source.len(),
                    target_count: target.len(),
                });
            }
        }
    }
    FullyFaithfulReport {
        full: functor.is_full(),
        faithful: functor.is_faithful(),
        source_classes: frc.traces().class_count(),
        target_classes: frd.traces().class_count(),
        trace_bijective,
        hom_sets_checked,
        hom_bijective: witness.is_none(),
        witness,
    }
}

/// Trace class of every rotation of a closed loop's label sequence.
pub fn loop_rotation_classes(fr: &FreeRigid, cycle: &[MorId]) -> Vec<ClassId> {
    (0..cycle.len())
        .map(|r| {
            let rotated: Vec<MorId> = cycle[r..].iter().chain(&cycle[..r]).copied().collect();
            let e = fr.category().compose_path(&rotated).expect("loop labels compose");
            fr.traces().class_of(e).expect("loop composite is an endomorphism")
        })
        .collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LawReport {
    pub checks: usize,
    pub failures: Vec<String>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Exhaustive identity, associativity, interchange and symmetry laws on
/// words of length at most `maxlen` and loops at most `max_loops`.
/// Interchange and symmetry naturality use words of length at most
/// `tensor_maxlen`.
pub fn fr_law_check(fr: &FreeRigid, maxlen: usize, tensor_maxlen: usize, max_loops: usize) -> LawReport {
    let words = fr.words_up_to(maxlen);
    let n = words.len();
    let homs: Vec<Vec<Vec<BrauerMor>>> =
        words.iter().map(|a| words.iter().map(|b| fr.enumerate_homs(a, b, max_loops)).collect()).collect();
    let mut report = LawReport::default();
    let mut check = |ok: bool, what: &dyn Fn() -> String| {
        report.checks += 1;
        if !ok && report.failures.len() < 10 {
            report.failures.push(what());
        }
    };

    for a in 0..n {
        for b in 0..n {
            let (ida, idb) = (fr.identity(&words[a]), fr.identity(&words[b]));
            for f in &homs[a][b] {
                check(fr.compose(f, &ida).as_ref() == Ok(f) && fr.compose(&idb, f).as_ref() == Ok(f), &|| {
                    format!("identity law: {}", fr.display(f))
                });
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    if homs[c][d].is_empty() {
                        continue;
                    }
                    for f in &homs[a][b] {
                        for g in &homs[b][c] {
                            let gf = fr.compose(g, f).expect("composable");
                            for h in &homs[c][d] {
                                let lhs = fr.compose(h, &gf);
                                let rhs = fr.compose(&fr.compose(h, g).expect("composable"), f);
                                check(lhs == rhs, &|| {
                                    format!("associativity: {} ∘ {} ∘ {}", fr.display(h), fr.display(g), fr.display(f))
                                });
                            }
                        }
                    }
                }
            }
        }
    }

    let small: Vec<usize> = (0..n).filter(|&a| words[a].len() <= tensor_maxlen).collect();
    let pairs: Vec<(BrauerMor, BrauerMor)> = small
        .iter()
        .flat_map(|&a| small.iter().map(move |&b| (a, b)))
        .flat_map(|(a, b)| small.iter().map(move |&c| (a, b, c)))
        .flat_map(|(a, b, c)| {
            let homs = &homs;
            homs[a][b].iter().flat_map(move |f| homs[b][c].iter().map(move |g| (g.clone(), f.clone())))
        })
        .collect();
    for (g1, f1) in &pairs {
        for (g2, f2) in &pairs {
            let lhs = fr.compose(&fr.tensor(g1, g2), &fr.tensor(f1, f2));
            let rhs = fr.compose(g1, f1).map(|x| fr.tensor(&x, &fr.compose(g2, f2).expect("composable")));
            check(lhs == rhs, &|| format!("interchange: ({} ⊗ {})", fr.display(g1), fr.display(g2)));
        }
    }

    for &a in &small {
        for &b in &small {
            let s = fr.symmetry(&words[a], &words[b]);
            let back = fr.symmetry(&words[b], &words[a]);
            check(fr.compose(&back, &s) == Ok(fr.identity(&words[a].concat(&words[b]))), &|| {
                format!("symmetry involution on {}, {}", fr.word_to_string(&words[a]), fr.word_to_string(&words[b]))
            });
        }
    }
    let morphisms: Vec<&BrauerMor> =
        small.iter().flat_map(|&a| small.iter().map(move |&b| (a, b))).flat_map(|(a, b)| homs[a][b].iter()).collect();
    for f in &morphisms {
        for g in &morphisms {
            let lhs = fr.compose(&fr.symmetry(f.target(), g.target()), &fr.tensor(f, g));
            let rhs = fr.compose(&fr.tensor(g, f), &fr.symmetry(f.source(), g.source()));
            check(lhs == rhs, &|| format!("symmetry naturality: {}, {}", fr.display(f), fr.display(g)));
        }
    }
    report
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RigidityCheck {
    pub words_checked: usize,
    pub failures: Vec<(String, Vec<TriangleFailure>)>,
}

impl RigidityCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Both triangle identities for every word of length at most `maxlen`, with
/// dual `w*` and the nested caps and cups `ev_w`, `coev_w`.
pub fn fr_rigidity_check(fr: &FreeRigid, maxlen: usize) -> RigidityCheck {
    let mut report = RigidityCheck::default();
    for w in fr.words_up_to(maxlen) {
        let data = DualData { object: w.clone(), dual: fr.dual(&w), ev: fr.ev(&w), coev: fr.coev(&w) };
        let failures = triangle_failures(fr, &data);
        report.words_checked += 1;
        if !failures.is_empty() {
            report.failures.push((fr.word_to_string(&w), failures));
        }
    }
    report
}
