//! The acceptance suite over the bundled corpus.
//!
//! Each criterion produces deterministic records and a wall time. A
//! criterion passes when its checks hold and it finishes within its limit;
//! the limit verdict is kept out of the records so that two runs compare
//! byte for byte.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::{Duration, Instant};

use itertools::Itertools;

use crate::fincat::{validate_category, FinCat, ObjId};
use crate::freerigid::{
    fr_end_unit, fr_fully_faithful_check, fr_hom_from_unit, fr_law_check, fr_rigidity_check, fr_vs_cob,
    loop_rotation_classes, FreeRigid,
};
use crate::grothendieck::{grothendieck, hom_formula_check_all, monoidal_grothendieck, unit_cocone};
use crate::io::{self, LoadedDiagram, DEFAULT_SIZE_BOUND};
use crate::moncat::{check_rigid, validate_monoidal, IDEMPOTENT_COMPLETION_CAVEAT};
use crate::report::{Record, Report};

/// The corpus shipped with the crate sources.
pub fn default_corpus_dir() -> PathBuf {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/corpus"))
}

#[derive(Clone, Debug)]
pub struct CriterionOutcome {
    pub id: u8,
    pub name: &'static str,
    pub checks_passed: bool,
    pub elapsed: Duration,
    pub limit: Duration,
    pub records: Vec<Record>,
}

impl CriterionOutcome {
    pub fn within_limit(&self) -> bool {
        self.elapsed < self.limit
    }

    pub fn passed(&self) -> bool {
        self.checks_passed && self.within_limit()
    }

    /// `criterion <id> <name>: PASS|FAIL (<secs>s, limit <secs>s)`.
    pub fn summary_line(&self) -> String {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let note = match (self.checks_passed, self.within_limit()) {
            (true, false) => ", over time limit",
            (false, _) => ", checks failed",
            _ => "",
        };
        format!(
            "criterion {} {}: {verdict} ({:.3}s, limit {}s{note})",
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.limit.as_secs()
        )
    }
}

#[derive(Clone, Debug)]
pub struct AcceptanceReport {
    pub criteria: Vec<CriterionOutcome>,
}

impl AcceptanceReport {
    pub fn passed(&self) -> bool {
        self.criteria.iter().all(CriterionOutcome::passed)
    }

    /// Records for every criterion, with one summary note per criterion.
    pub fn report(&self) -> Report {
        let mut report = Report::new("acceptance");
        for c in &self.criteria {
            report.push(
                Record::new("criterion")
                    .field("id", c.id)
                    .field("name", c.name)
                    .field("result", if c.checks_passed { "pass" } else { "fail" }),
            );
            report.records.extend(c.records.iter().cloned());
            report.notes.push(c.summary_line());
        }
        report.passed = self.passed();
        report
    }
}

struct Criterion {
    ok: bool,
    records: Vec<Record>,
}

impl Criterion {
    fn new() -> Self {
        Self { ok: true, records: Vec::new() }
    }

    fn check(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.ok &= ok;
        let mut r = Record::new("check").field("name", name.into()).field("result", if ok { "pass" } else { "fail" });
        let detail = detail.into();
        if !detail.is_empty() {
            r = r.field("detail", detail);
        }
        self.records.push(r);
    }

    fn push(&mut self, record: Record) {
        self.records.push(record);
    }
}

/// A named corpus category.
struct Named {
    name: String,
    cat: Arc<FinCat>,
}

fn stem(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

fn json_files(dir: &Path) -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map(|rd| {
            rd.filter_map(Result::ok).map(|e| e.path()).filter(|p| p.extension().is_some_and(|e| e == "json")).collect()
        })
        .unwrap_or_default();
    files.sort();
    files
}

struct Corpus {
    dir: PathBuf,
    categories: Vec<Named>,
    load_errors: Vec<String>,
}

impl Corpus {
    /// Files under `categories/`, then the underlying categories of
    /// `monoidal/`, each by file stem.
    fn load(dir: &Path) -> Self {
        let mut categories = Vec::new();
        let mut load_errors = Vec::new();
        for path in json_files(&dir.join("categories")) {
            match io::load_category(&path, DEFAULT_SIZE_BOUND) {
                Ok(c) => categories.push(Named { name: stem(&path), cat: Arc::new(c) }),
                Err(e) => load_errors.push(e.to_string()),
            }
        }
        for path in json_files(&dir.join("monoidal")) {
            match io::load_monoidal(&path) {
                Ok(m) => categories.push(Named { name: format!("monoidal/{}", stem(&path)), cat: m.base().clone() }),
                Err(e) => load_errors.push(e.to_string()),
            }
        }
        Self { dir: dir.to_owned(), categories, load_errors }
    }

    fn category(&self, name: &str) -> Option<&Arc<FinCat>> {
        self.categories.iter().find(|c| c.name == name).map(|c| &c.cat)
    }

    fn require(&self, c: &mut Criterion, name: &str) -> Option<Arc<FinCat>> {
        let found = self.category(name).cloned();
        if found.is_none() {
            c.check(format!("corpus has {name}"), false, "missing from the corpus");
        }
        found
    }
}

const DIAGRAMS: [&str; 2] = ["arrow_into_iso", "cospan"];

fn criterion_hom_formula(corpus: &Corpus) -> Criterion {
    let mut c = Criterion::new();
    for name in DIAGRAMS {
        let path = corpus.dir.join("diagrams").join(format!("{name}.json"));
        let loaded = match io::load_diagram(&path, DEFAULT_SIZE_BOUND) {
            Ok(d) => d,
            Err(e) => {
                c.check(format!("{name} loads"), false, e.to_string());
                continue;
            }
        };
        let d = loaded.diagram();
        let index_size = d.index().object_count();
        let fiber_max = d.index().objects().map(|i| d.fiber(i).object_count()).max().unwrap_or(0);
        c.check(
            format!("{name} size"),
            index_size <= 3 && fiber_max <= 4,
            format!("index objects {index_size}, largest fiber {fiber_max}"),
        );
        let groth = grothendieck(d);
        let reports = hom_formula_check_all(&groth);
        let failed: Vec<String> = reports
            .iter()
            .filter_map(|r| r.failure.as_ref().map(|f| format!("Hom({}, {}): {f}", r.source, r.target)))
            .collect();
        let morphisms: usize = reports.iter().map(|r| r.hom_size).sum();
        c.push(
            Record::new("grothendieck")
                .field("diagram", name)
                .field("objects", groth.category().object_count())
                .field("morphisms", groth.category().morphism_count())
                .field("pairs", reports.len())
                .field("hom_total", morphisms),
        );
        c.check(format!("{name} hom formula"), failed.is_empty(), failed.first().cloned().unwrap_or_default());
        let cocone = unit_cocone(&groth);
        c.check(format!("{name} cocone"), cocone.passed(), cocone.failures.first().cloned().unwrap_or_default());
    }
    c
}

fn criterion_vs_cob() -> Criterion {
    let mut c = Criterion::new();
    let r = fr_vs_cob(3, 2);
    c.push(
        Record::new("vs-cob")
            .field("maxlen", 3)
            .field("bound", 2)
            .field("hom_sets", r.hom_sets)
            .field("morphisms", r.morphisms)
            .field("composable_pairs", r.composable_pairs)
            .field("tensor_pairs", r.tensor_pairs),
    );
    c.check(
        "bijection compatible with composition and tensor",
        r.passed(),
        r.failures.first().cloned().unwrap_or_default(),
    );
    c
}

fn criterion_end_unit(corpus: &Corpus) -> Criterion {
    let mut c = Criterion::new();
    for named in &corpus.categories {
        let fr = FreeRigid::new(named.cat.clone());
        let r = fr_end_unit(&fr, 3);
        let classes = fr.traces().class_count();
        c.push(
            Record::new("end-unit")
                .field("category", &named.name)
                .field("classes", classes)
                .field("bound", 3)
                .field("elements", r.elements.len())
                .field("expected", r.expected_count),
        );
        c.check(format!("{} End(1)", named.name), r.passed(), "");
    }
    let spot = [("terminal", 3, 4), ("two_element_group", 2, 6), ("idempotent", 2, 6)];
    for (name, bound, expected) in spot {
        if let Some(cat) = corpus.require(&mut c, name) {
            let n = fr_end_unit(&FreeRigid::new(cat), bound).elements.len();
            c.check(
                format!("{name} End(1) at bound {bound}"),
                n == expected,
                format!("{n} elements, expected {expected}"),
            );
        }
    }
    c
}

fn object_lists(cat: &FinCat, max: usize) -> Vec<Vec<ObjId>> {
    (0..=max).flat_map(|len| (0..len).map(|_| cat.objects()).multi_cartesian_product()).collect()
}

fn criterion_hom_decomposition(corpus: &Corpus) -> Criterion {
    const LOOPS: usize = 1;
    let mut c = Criterion::new();
    for named in &corpus.categories {
        let fr = FreeRigid::new(named.cat.clone());
        let lists = object_lists(&named.cat, 2);
        let (mut sets, mut morphisms, mut failures) = (0, 0, Vec::new());
        let mut unbalanced_nonempty = 0;
        for pos in &lists {
            for neg in &lists {
                let r = fr_hom_from_unit(&fr, pos, neg, LOOPS);
                sets += 1;
                morphisms += r.morphisms.len();
                if pos.len() != neg.len() && r.morphisms.iter().any(|m| m.loops().is_empty()) {
                    unbalanced_nonempty += 1;
                }
                if !r.passed() && failures.len() < 3 {
                    failures.push(format!(
                        "Hom(1, {}): {} enumerated, formula {} x {}",
                        fr.word_to_string(&r.target),
                        r.morphisms.len(),
                        r.formula_count,
                        r.multiset_count
                    ));
                }
            }
        }
        c.push(
            Record::new("hom-from-unit")
                .field("category", &named.name)
                .field("hom_sets", sets)
                .field("morphisms", morphisms)
                .field("loops", LOOPS),
        );
        c.check(format!("{} decomposition", named.name), failures.is_empty(), failures.join("; "));
        c.check(format!("{} unbalanced loop-free part empty", named.name), unbalanced_nonempty == 0, "");
    }
    c
}

fn criterion_loops(corpus: &Corpus) -> Criterion {
    const REQUIRED: usize = 200;
    let mut c = Criterion::new();
    let mut total = 0;
    for name in ["walking_arrow", "two_element_group", "monoidal/z3_discrete"] {
        let Some(cat) = corpus.require(&mut c, name) else { continue };
        let fr = FreeRigid::new(cat);
        let words = fr.words_up_to(2);
        let homs: Vec<Vec<_>> =
            words.iter().map(|a| words.iter().map(|b| fr.enumerate_homs(a, b, 0)).collect()).collect();
        let (mut pairs, mut cycles, mut failures) = (0, 0, Vec::new());
        for from_a in &homs {
            for (b, fs) in from_a.iter().enumerate() {
                for f in fs {
                    for row in &homs[b] {
                        for g in row {
                            let (composite, traced) = fr.compose_traced(g, f).expect("composable");
                            if traced.is_empty() {
                                continue;
                            }
                            pairs += 1;
                            let mut classes = Vec::new();
                            for cycle in &traced {
                                cycles += 1;
                                let rotations = loop_rotation_classes(&fr, cycle);
                                if rotations.iter().any(|&k| k != rotations[0]) && failures.len() < 3 {
                                    failures.push(format!("{} after {}", fr.display(g), fr.display(f)));
                                }
                                classes.push(rotations[0]);
                            }
                            classes.sort_unstable();
                            if composite.loops() != classes.as_slice() && failures.len() < 3 {
                                failures.push(format!("loop classes of {} after {}", fr.display(g), fr.display(f)));
                            }
                        }
                    }
                }
            }
        }
        total += pairs;
        c.push(Record::new("loops").field("category", name).field("pairs", pairs).field("cycles", cycles));
        c.check(format!("{name} rotation invariance"), failures.is_empty(), failures.join("; "));
    }
    c.check("enough looping pairs", total >= REQUIRED, format!("{total} pairs, at least {REQUIRED} required"));
    c
}

fn criterion_rigidity(corpus: &Corpus) -> Criterion {
    let mut c = Criterion::new();
    for named in &corpus.categories {
        let r = fr_rigidity_check(&FreeRigid::new(named.cat.clone()), 2);
        c.push(Record::new("rigidity").field("category", &named.name).field("words", r.words_checked));
        let detail = r.failures.first().map(|(w, f)| format!("{w}: {f:?}")).unwrap_or_default();
        c.check(format!("{} triangle identities", named.name), r.passed(), detail);
    }
    match io::load_monoidal(&corpus.dir.join("monoidal/z3_discrete.json")) {
        Ok(m) => {
            let r = check_rigid(&m);
            let missing: Vec<&str> = r.non_dualizable().into_iter().map(|x| m.base().object_name(x)).collect();
            c.check(
                "z3_discrete rigid",
                r.is_rigid(),
                if missing.is_empty() { String::new() } else { missing.join(",") },
            );
        }
        Err(e) => c.check("z3_discrete rigid", false, e.to_string()),
    }
    c.push(Record::new("caveat").field("text", IDEMPOTENT_COMPLETION_CAVEAT));
    c
}

fn criterion_fully_faithful(corpus: &Corpus) -> Criterion {
    let mut c = Criterion::new();
    let functors = corpus.dir.join("functors");
    let load = |c: &mut Criterion, name: &str| match io::load_functor(
        &functors.join(format!("{name}.json")),
        DEFAULT_SIZE_BOUND,
    ) {
        Ok(f) => Some(f),
        Err(e) => {
            c.check(format!("{name} loads"), false, e.to_string());
            None
        }
    };
    if let Some(f) = load(&mut c, "terminal_to_walking_isomorphism") {
        let r = fr_fully_faithful_check(&f, 2, 1);
        c.push(
            Record::new("ff").field("functor", "terminal_to_walking_isomorphism").field("hom_sets", r.hom_sets_checked),
        );
        let detail = r
            .witness
            .as_ref()
            .map(|w| format!("Hom({}, {}): {} vs {}", w.source, w.target, w.source_count, w.target_count));
        c.check("terminal_to_walking_isomorphism fully faithful", r.passed(), detail.unwrap_or_default());
    }
    if let Some(f) = load(&mut c, "terminal_to_two_element_group") {
        let r = fr_fully_faithful_check(&f, 2, 1);
        c.push(
            Record::new("ff")
                .field("functor", "terminal_to_two_element_group")
                .field("full", r.full)
                .field("faithful", r.faithful)
                .field("trace_bijective", r.trace_bijective)
                .field("source_classes", r.source_classes)
                .field("target_classes", r.target_classes),
        );
        let predicted = r.faithful
            && !r.trace_bijective
            && !r.passed()
            && r.witness
                .as_ref()
                .is_some_and(|w| w.source == "∅" && w.target == "∅" && w.source_count == 2 && w.target_count == 3);
        let detail = match &r.witness {
            Some(w) => format!("Hom({}, {}): {} vs {}", w.source, w.target, w.source_count, w.target_count),
            None => "no mismatch found".into(),
        };
        c.check("terminal_to_two_element_group fails with End(1) 2 vs 3", predicted, detail);
    }
    c
}

fn criterion_validity(corpus: &Corpus) -> Criterion {
    let mut c = Criterion::new();
    for e in &corpus.load_errors {
        c.check("corpus file loads", false, e.clone());
    }
    c.push(Record::new("corpus").field("categories", corpus.categories.len()));
    for path in json_files(&corpus.dir.join("functors")) {
        let r = io::load_functor(&path, DEFAULT_SIZE_BOUND);
        c.check(format!("functors/{}", stem(&path)), r.is_ok(), r.err().map(|e| e.to_string()).unwrap_or_default());
    }
    for path in json_files(&corpus.dir.join("diagrams")) {
        let name = format!("diagrams/{}", stem(&path));
        let loaded = match io::load_diagram(&path, DEFAULT_SIZE_BOUND) {
            Ok(d) => d,
            Err(e) => {
                c.check(name, false, e.to_string());
                continue;
            }
        };
        let groth = grothendieck(loaded.diagram());
        let valid = validate_category(&groth.category().to_raw());
        c.check(format!("{name} grothendieck"), valid.is_ok(), valid.err().map(|e| e.to_string()).unwrap_or_default());
        if let LoadedDiagram::Monoidal(lax) = &loaded {
            match monoidal_grothendieck(lax) {
                Ok((_, m)) => {
                    let valid = validate_monoidal(&m.to_raw());
                    c.check(
                        format!("{name} monoidal grothendieck"),
                        valid.is_ok(),
                        valid.err().map(|e| e.to_string()).unwrap_or_default(),
                    );
                }
                Err(e) => c.check(format!("{name} monoidal grothendieck"), false, e.to_string()),
            }
        }
    }
    for named in corpus.categories.iter().filter(|n| !n.name.starts_with("monoidal/")) {
        let r = fr_law_check(&FreeRigid::new(named.cat.clone()), 2, 1, 1);
        c.push(Record::new("fr-laws").field("category", &named.name).field("checks", r.checks));
        c.check(format!("{} Fr laws", named.name), r.passed(), r.failures.first().cloned().unwrap_or_default());
    }
    c
}

type Runner = fn(&Corpus) -> Criterion;

const CRITERIA: [(u8, &str, u64, Runner); 8] = [
    (1, "grothendieck-hom-formula", 5, criterion_hom_formula),
    (2, "cobordism-comparison", 30, |_| criterion_vs_cob()),
    (3, "end-of-unit", 1, criterion_end_unit),
    (4, "hom-decomposition", 30, criterion_hom_decomposition),
    (5, "loop-well-definedness", 10, criterion_loops),
    (6, "rigidity", 10, criterion_rigidity),
    (7, "fully-faithful-transfer", 10, criterion_fully_faithful),
    (8, "validity", 30, criterion_validity),
];

/// Criteria 1 to 8 once.
pub fn run_criteria(corpus_dir: &Path) -> Vec<CriterionOutcome> {
    let corpus = Corpus::load(corpus_dir);
    CRITERIA
        .iter()
        .map(|&(id, name, limit, run)| {
            let start = Instant::now();
            let c = run(&corpus);
            CriterionOutcome {
                id,
                name,
                checks_passed: c.ok,
                elapsed: start.elapsed(),
                limit: Duration::from_secs(limit),
                records: c.records,
            }
        })
        .collect()
}

/// Criteria 1 to 8, run twice; criterion 9 compares the two record
/// renderings and bounds the total time.
pub fn run_acceptance_suite(corpus_dir: &Path) -> AcceptanceReport {
    let start = Instant::now();
    let first = run_criteria(corpus_dir);
    let second = run_criteria(corpus_dir);
    let render =
        |outcomes: &[CriterionOutcome]| AcceptanceReport { criteria: outcomes.to_vec() }.report().render_records();
    let identical = render(&first) == render(&second);
    let mut criteria = first;
    let mut records = vec![Record::new("determinism").field("runs", 2)];
    let detail = if identical { "" } else { "record output differs between runs" };
    let mut check = Record::new("check")
        .field("name", "byte-identical records")
        .field("result", if identical { "pass" } else { "fail" });
    if !detail.is_empty() {
        check = check.field("detail", detail);
    }
    records.push(check);
    criteria.push(CriterionOutcome {
        id: 9,
        name: "determinism",
        checks_passed: identical,
        elapsed: start.elapsed(),
        limit: Duration::from_secs(120),
        records,
    });
    AcceptanceReport { criteria }
}
