use thiserror::Error;

use super::{BrauerMor, FreeRigid, LabeledWord};
use crate::cobordism::{Point, Sign};
use crate::fincat::Functor;
use crate::moncat::{find_dual, triangle_failures, DualData, StrictMonCat, SymmetricMonoidal, TriangleFailure};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum UniversalError {
    #[error("supplied dual of `{object}` fails its triangle check: {failures:?}")]
    IllTypedDual { object: String, failures: Vec<TriangleFailure> },
    #[error("interpretation does not match the category: {0}")]
    Shape(String),
    #[error("interpretation is not a functor: {0}")]
    NotFunctorial(String),
}

/// A functor `F0: C → M` on generators, with a chosen dual of every image.
#[derive(Clone, Debug)]
pub struct Interpretation<M: SymmetricMonoidal> {
    pub objects: Vec<M::Obj>,
    pub morphisms: Vec<M::Mor>,
    pub duals: Vec<DualData<M::Obj, M::Mor>>,
}

impl Interpretation<StrictMonCat> {
    /// `functor` into the underlying category of `m`, with the least dual of
    /// every image; `None` if some image is not dualizable.
    pub fn from_functor(m: &StrictMonCat, functor: &Functor) -> Option<Self> {
        let duals = functor.object_map().iter().map(|&y| find_dual(m, y)).collect::<Option<Vec<_>>>()?;
        Some(Self { objects: functor.object_map().to_vec(), morphisms: functor.morphism_map().to_vec(), duals })
    }
}

impl Interpretation<FreeRigid> {
    /// The inclusion of generators `C → Fr(C)`, `x ↦ (x,+)`.
    pub fn generators(fr: &FreeRigid) -> Self {
        let cat = fr.category();
        let word = |x| LabeledWord(vec![(x, Sign::Plus)]);
        let objects: Vec<LabeledWord> = cat.objects().map(word).collect();
        let morphisms = cat
            .morphisms()
            .map(|f| {
                fr.morphism(word(cat.src(f)), word(cat.dst(f)), [(Point::Source(0), Point::Target(0), f)], Vec::new())
                    .expect("generator strand")
            })
            .collect();
        let duals = objects
            .iter()
            .map(|w| DualData { object: w.clone(), dual: w.dual(), ev: fr.ev(w), coev: fr.coev(w) })
            .collect();
        Self { objects, morphisms, duals }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UniversalReport {
    pub diagrams: usize,
    pub composable_pairs: usize,
    pub tensor_pairs: usize,
    pub failures: Vec<String>,
}

impl UniversalReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Evaluator<'a, M: SymmetricMonoidal> {
    m: &'a M,
    interp: &'a Interpretation<M>,
}

impl<M: SymmetricMonoidal> Evaluator<'_, M> {
    fn letter(&self, (x, s): (usize, Sign)) -> M::Obj {
        match s {
            Sign::Plus => self.interp.objects[x].clone(),
            Sign::Minus => self.interp.duals[x].dual.clone(),
        }
    }

    fn word(&self, w: &LabeledWord) -> M::Obj {
        let letters: Vec<M::Obj> = w.0.iter().map(|&e| self.letter(e)).collect();
        self.m.tensor_all_objects(&letters)
    }

    fn tensor(&self, parts: &[M::Mor]) -> M::Mor {
        self.m.tensor_all_morphisms(parts)
    }

    fn id(&self, x: &M::Obj) -> M::Mor {
        self.m.identity_on(x)
    }

    fn path(&self, path: &[M::Mor]) -> M::Mor {
        self.m.compose_path(path).expect("evaluation composes")
    }

    /// From `objs` in the given order to `objs` sorted by `keys`, by adjacent swaps.
    fn permutation(&self, objs: Vec<M::Obj>, keys: Vec<usize>) -> M::Mor {
        let mut cur: Vec<(usize, M::Obj)> = keys.into_iter().zip(objs).collect();
        let all: Vec<M::Obj> = cur.iter().map(|(_, o)| o.clone()).collect();
        let mut acc = self.id(&self.m.tensor_all_objects(&all));
        let mut swapped = true;
        while swapped {
            swapped = false;
            for i in 0..cur.len().saturating_sub(1) {
                if cur[i].0 > cur[i + 1].0 {
                    let prefix: Vec<M::Obj> = cur[..i].iter().map(|(_, o)| o.clone()).collect();
                    let suffix: Vec<M::Obj> = cur[i + 2..].iter().map(|(_, o)| o.clone()).collect();
                    let swap = self.tensor(&[
                        self.id(&self.m.tensor_all_objects(&prefix)),
                        self.m.braiding(&cur[i].1, &cur[i + 1].1),
                        self.id(&self.m.tensor_all_objects(&suffix)),
                    ]);
                    acc = self.m.compose(&swap, &acc).expect("permutation composes");
                    cur.swap(i, i + 1);
                    swapped = true;
                }
            }
        }
        acc
    }

    /// `h*: X* → Y*` for `h: Y → X`.
    fn transpose(&self, h: &M::Mor, y: usize, x: usize) -> M::Mor {
        let (dx, dy) = (&self.interp.duals[x], &self.interp.duals[y]);
        self.path(&[
            self.tensor(&[dy.coev.clone(), self.id(&dx.dual)]),
            self.tensor(&[self.id(&dy.dual), h.clone(), self.id(&dx.dual)]),
            self.tensor(&[self.id(&dy.dual), dx.ev.clone()]),
        ])
    }

    /// `ev_x ∘ (F(e) ⊗ id) ∘ s ∘ coev_x` for an endomorphism `e` of `x`.
    fn scalar(&self, e: usize, x: usize) -> M::Mor {
        let d = &self.interp.duals[x];
        self.path(&[
            d.coev.clone(),
            self.m.braiding(&d.dual, &d.object),
            self.tensor(&[self.interp.morphisms[e].clone(), self.id(&d.dual)]),
            d.ev.clone(),
        ])
    }

    fn eval(&self, fr: &FreeRigid, d: &BrauerMor) -> M::Mor {
        let (a, b) = (d.source(), d.target());
        let obj = |p: Point| match p {
            Point::Source(k) => a.0[k],
            Point::Target(k) => b.0[k],
        };
        let mut through: Vec<(usize, usize, usize)> = Vec::new();
        let mut caps: Vec<(usize, usize, usize)> = Vec::new();
        let mut cups: Vec<(usize, usize, usize)> = Vec::new();
        for s in d.strands() {
            match (s.a, s.b) {
                (Point::Source(i), Point::Target(t)) => through.push((t, i, s.label)),
                (Point::Source(i), Point::Source(j)) => {
                    let (p, q) = if a.0[i].1 == Sign::Plus { (i, j) } else { (j, i) };
                    caps.push((p, q, s.label));
                }
                (Point::Target(i), Point::Target(j)) => {
                    let (p, q) = if b.0[i].1 == Sign::Minus { (i, j) } else { (j, i) };
                    cups.push((p, q, s.label));
                }
                (Point::Target(_), Point::Source(_)) => unreachable!("canonical strands list the source end first"),
            }
        }
        through.sort_unstable();

        let a_order: Vec<usize> =
            through.iter().map(|&(_, i, _)| i).chain(caps.iter().flat_map(|&(p, q, _)| [p, q])).collect();
        let mut a_keys = vec![0; a.len()];
        for (rank, &k) in a_order.iter().enumerate() {
            a_keys[k] = rank;
        }
        let sigma_a = self.permutation(a.0.iter().map(|&e| self.letter(e)).collect(), a_keys);

        let mut middle: Vec<M::Mor> = through
            .iter()
            .map(|&(t, i, label)| {
                let f = &self.interp.morphisms[label];
                match a.0[i].1 {
                    Sign::Plus => f.clone(),
                    Sign::Minus => self.transpose(f, obj(Point::Target(t)).0, obj(Point::Source(i)).0),
                }
            })
            .collect();
        middle.extend(caps.iter().map(|&(_, q, label)| {
            let y = a.0[q].0;
            self.path(&[
                self.tensor(&[self.interp.morphisms[label].clone(), self.id(&self.interp.duals[y].dual)]),
                self.interp.duals[y].ev.clone(),
            ])
        }));
        let middle = self.tensor(&middle);

        let through_targets: Vec<M::Obj> = through.iter().map(|&(t, _, _)| self.letter(b.0[t])).collect();
        let mut cup_step = vec![self.id(&self.m.tensor_all_objects(&through_targets))];
        cup_step.extend(cups.iter().map(|&(p, _, label)| {
            let n = b.0[p].0;
            let dn = &self.interp.duals[n];
            self.path(&[dn.coev.clone(), self.tensor(&[self.id(&dn.dual), self.interp.morphisms[label].clone()])])
        }));
        let cup_step = self.tensor(&cup_step);

        let b_order: Vec<usize> =
            through.iter().map(|&(t, _, _)| t).chain(cups.iter().flat_map(|&(p, q, _)| [p, q])).collect();
        let sigma_b = self.permutation(b_order.iter().map(|&k| self.letter(b.0[k])).collect(), b_order);

        let mut parts = vec![self.path(&[sigma_a, middle, cup_step, sigma_b])];
        let cat = fr.category();
        parts.extend(d.loops().iter().map(|&c| {
            let e = fr.traces().representative(c);
            self.scalar(e, cat.src(e))
        }));
        self.tensor(&parts)
    }
}

fn check_interpretation<M: SymmetricMonoidal>(
    fr: &FreeRigid,
    m: &M,
    interp: &Interpretation<M>,
) -> Result<(), UniversalError> {
    let cat = fr.category();
    if interp.objects.len() != cat.object_count()
        || interp.morphisms.len() != cat.morphism_count()
        || interp.duals.len() != cat.object_count()
    {
        return Err(UniversalError::Shape("tables have the wrong length".into()));
    }
    for f in cat.morphisms() {
        let image = &interp.morphisms[f];
        if m.dom(image) != interp.objects[cat.src(f)] || m.cod(image) != interp.objects[cat.dst(f)] {
            return Err(UniversalError::NotFunctorial(format!("image of `{}` is ill-typed", cat.morphism_name(f))));
        }
        for &g in cat.morphisms_from(cat.dst(f)) {
            let gf = cat.compose(g, f).expect("composable");
            if m.compose(&interp.morphisms[g], image).as_ref() != Some(&interp.morphisms[gf]) {
                return Err(UniversalError::NotFunctorial(format!(
                    "{}∘{} is not preserved",
                    cat.morphism_name(g),
                    cat.morphism_name(f)
                )));
            }
        }
    }
    for x in cat.objects() {
        if interp.morphisms[cat.identity(x)] != m.identity_on(&interp.objects[x]) {
            return Err(UniversalError::NotFunctorial(format!("identity of `{}`", cat.object_name(x))));
        }
        let d = &interp.duals[x];
        let mut failures = triangle_failures(m, d);
        if d.object != interp.objects[x] && failures.is_empty() {
            failures.push(TriangleFailure::EvTyping);
        }
        if !failures.is_empty() {
            return Err(UniversalError::IllTypedDual { object: cat.object_name(x).to_owned(), failures });
        }
    }
    Ok(())
}

/// Evaluates one diagram of `Fr(C)` in `m`.
pub fn evaluate<M: SymmetricMonoidal>(
    fr: &FreeRigid,
    m: &M,
    interp: &Interpretation<M>,
    d: &BrauerMor,
) -> Result<M::Mor, UniversalError> {
    check_interpretation(fr, m, interp)?;
    Ok(Evaluator { m, interp }.eval(fr, d))
}

/// The extension of `interp` to `Fr(C)`, checked on every diagram between
/// words of length at most `diagram_bound` with at most `max_loops` loops:
/// identities, symmetries, generator duals, composition and tensor.
pub fn fr_universal_map<M: SymmetricMonoidal>(
    fr: &FreeRigid,
    m: &M,
    interp: &Interpretation<M>,
    diagram_bound: usize,
    max_loops: usize,
) -> Result<UniversalReport, UniversalError> {
    check_interpretation(fr, m, interp)?;
    let ev = Evaluator { m, interp };
    let mut report = UniversalReport::default();
    let fail = |report: &mut UniversalReport, msg: String| {
        if report.failures.len() < 10 {
            report.failures.push(msg);
        }
    };

    let words = fr.words_up_to(diagram_bound);
    for w in &words {
        if ev.eval(fr, &fr.identity(w)) != m.identity_on(&ev.word(w)) {
            fail(&mut report, format!("identity on {}", fr.word_to_string(w)));
        }
        for w2 in &words {
            if ev.eval(fr, &fr.symmetry(w, w2)) != m.braiding(&ev.word(w), &ev.word(w2)) {
                fail(&mut report, format!("symmetry on {}, {}", fr.word_to_string(w), fr.word_to_string(w2)));
            }
        }
    }
    for x in fr.category().objects() {
        let w = LabeledWord(vec![(x, Sign::Plus)]);
        if ev.eval(fr, &fr.ev(&w)) != interp.duals[x].ev || ev.eval(fr, &fr.coev(&w)) != interp.duals[x].coev {
            fail(&mut report, format!("generator duality at {}", fr.category().object_name(x)));
        }
    }

    type Valued<T> = Vec<(BrauerMor, T)>;
    let homs: Vec<Vec<Valued<M::Mor>>> = words
        .iter()
        .map(|a| {
            words
                .iter()
                .map(|b| {
                    fr.enumerate_homs(a, b, max_loops)
                        .into_iter()
                        .map(|d| {
                            let v = ev.eval(fr, &d);
                            (d, v)
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    for from_a in &homs {
        for (b, fs) in from_a.iter().enumerate() {
            for (d, v) in fs {
                report.diagrams += 1;
                if m.dom(v) != ev.word(d.source()) || m.cod(v) != ev.word(d.target()) {
                    fail(&mut report, format!("ill-typed value of {}", fr.display(d)));
                }
            }
            for gs in &homs[b] {
                for (f, vf) in fs {
                    for (g, vg) in gs {
                        report.composable_pairs += 1;
                        let gf = fr.compose(g, f).expect("composable");
                        if Some(ev.eval(fr, &gf)) != m.compose(vg, vf) {
                            fail(&mut report, format!("composition: {} after {}", fr.display(g), fr.display(f)));
                        }
                    }
                }
            }
        }
    }
    let all: Vec<&(BrauerMor, M::Mor)> = homs.iter().flatten().flatten().collect();
    for (f, vf) in &all {
        for (g, vg) in &all {
            report.tensor_pairs += 1;
            if ev.eval(fr, &fr.tensor(f, g)) != m.tensor_morphisms(vf, vg) {
                fail(&mut report, format!("tensor: {} ⊗ {}", fr.display(f), fr.display(g)));
            }
        }
    }
    Ok(report)
}
