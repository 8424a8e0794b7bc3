//! The `rigcat` command line.
//!
//! Exit status is 0 when every check in the report passes, 1 when a check
//! fails and 2 for usage, parse and bound errors.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::acceptance::{default_corpus_dir, run_acceptance_suite};
use crate::fincat::{check_adjunction, find_right_adjoint, FinCat, ObjId};
use crate::freerigid::{
    fr_end_unit, fr_fully_faithful_check, fr_hom_from_unit, fr_law_check, fr_rigidity_check, fr_universal_map,
    fr_vs_cob, FreeRigid, Interpretation,
};
use crate::grothendieck::{grothendieck, hom_formula_check_all, monoidal_grothendieck, unit_cocone};
use crate::io::{self, LoadedDiagram, DEFAULT_SIZE_BOUND};
use crate::moncat::{check_rigid, IDEMPOTENT_COMPLETION_CAVEAT};
use crate::report::{Format, Record, Report};

/// Largest word length accepted by the enumerating commands.
pub const MAX_WORD_LEN: usize = 6;
/// Largest loop or circle bound accepted by the enumerating commands.
pub const MAX_LOOPS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Text,
    Records,
}

#[derive(Debug, Parser)]
#[command(
    name = "rigcat",
    version,
    about = "Finite categories, their Grothendieck constructions and free rigid envelopes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: FormatArg,
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Closure bound for category files given as presentations.
    #[arg(long, global = true, default_value_t = DEFAULT_SIZE_BOUND)]
    pub size_bound: usize,
    /// Reserved; every command is deterministic.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct Bounds {
    /// Largest word length enumerated.
    #[arg(long, default_value_t = 2)]
    pub maxlen: usize,
    /// Largest number of closed loops enumerated.
    #[arg(long, default_value_t = 1)]
    pub loops: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a category, monoidal category, functor, diagram or cobordism file.
    Validate { file: PathBuf },
    /// Trace classes of a category.
    Trace { category: PathBuf },
    /// Find a dual for every object of a monoidal category.
    Rigid { monoidal: PathBuf },
    /// Search for a right adjoint of a functor.
    Adjoint { functor: PathBuf },
    /// Grothendieck construction of a diagram, with its hom formula and cocone.
    Groth { diagram: PathBuf },
    /// Compose two labeled diagrams over a category: `g` after `f`.
    Compose { category: PathBuf, g: PathBuf, f: PathBuf },
    /// Morphisms from the unit to a word of positive then negative letters.
    Hom {
        category: PathBuf,
        /// Objects carrying the positive sign, comma separated or repeated.
        #[arg(long, value_delimiter = ',')]
        pos: Vec<String>,
        /// Objects carrying the negative sign, comma separated or repeated.
        #[arg(long, value_delimiter = ',')]
        neg: Vec<String>,
        #[arg(long, default_value_t = 0)]
        loops: usize,
    },
    /// Endomorphisms of the unit up to a loop bound.
    EndUnit {
        category: PathBuf,
        #[arg(long, default_value_t = 3)]
        loops: usize,
    },
    /// Compare the free rigid envelope of the terminal category with cobordisms.
    VsCob {
        #[arg(long, default_value_t = 3)]
        maxlen: usize,
        /// Largest number of loops and circles enumerated.
        #[arg(long, default_value_t = 2)]
        bound: usize,
    },
    /// Check whether a functor induces bijections on envelope hom sets.
    FfCheck {
        functor: PathBuf,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Category laws and triangle identities of the envelope of a category.
    Laws {
        category: PathBuf,
        #[command(flatten)]
        bounds: Bounds,
        /// Word length for interchange and symmetry checks.
        #[arg(long, default_value_t = 1)]
        tensor_maxlen: usize,
    },
    /// Extend a functor into a rigid monoidal category to the envelope.
    Universal {
        /// Functor whose target is the underlying category of `monoidal`.
        functor: PathBuf,
        monoidal: PathBuf,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Run the acceptance suite over the corpus.
    Acceptance {
        /// Corpus directory; defaults to the corpus shipped with the sources.
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Load(#[from] io::LoadError),
    #[error("{file}: {message}")]
    Parse { file: String, message: String },
    #[error("{0}")]
    Usage(String),
    #[error("bound --{flag} {value} exceeds the limit {limit}")]
    BoundViolation { flag: &'static str, value: usize, limit: usize },
    #[error("cannot write {path}: {message}")]
    Output { path: String, message: String },
}

/// What a command printed and its exit status.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliOutput {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if status == 0 {
                CliOutput { status, stdout: text, stderr: String::new() }
            } else {
                CliOutput { status, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let format = match cli.format {
                FormatArg::Text => Format::Text,
                FormatArg::Records => Format::Records,
            };
            let rendered = report.render(format);
            let status = if report.passed { 0 } else { 1 };
            match &cli.out {
                Some(path) => match fs::write(path, &rendered) {
                    Ok(()) => CliOutput { status, stdout: String::new(), stderr: String::new() },
                    Err(e) => {
                        error_output(&CliError::Output { path: path.display().to_string(), message: e.to_string() })
                    }
                },
                None => CliOutput { status, stdout: rendered, stderr: String::new() },
            }
        }
        Err(e) => error_output(&e),
    }
}

fn error_output(e: &CliError) -> CliOutput {
    CliOutput { status: 2, stdout: String::new(), stderr: format!("error: {e}\n") }
}

fn bound(flag: &'static str, value: usize, limit: usize) -> Result<(), CliError> {
    if value > limit {
        Err(CliError::BoundViolation { flag, value, limit })
    } else {
        Ok(())
    }
}

fn check_bounds(b: &Bounds) -> Result<(), CliError> {
    bound("maxlen", b.maxlen, MAX_WORD_LEN)?;
    bound("loops", b.loops, MAX_LOOPS)
}

fn object(cat: &FinCat, file: &Path, name: &str) -> Result<ObjId, CliError> {
    cat.object_id(name).ok_or_else(|| CliError::Usage(format!("{}: no object named `{name}`", file.display())))
}

fn read_value(path: &Path) -> Result<serde_json::Value, CliError> {
    let parse = |message: String| CliError::Parse { file: path.display().to_string(), message };
    let text = fs::read_to_string(path).map_err(|e| parse(format!("cannot read file: {e}")))?;
    serde_json::from_str(&text).map_err(|e| parse(format!("line {}, column {}: {e}", e.line(), e.column())))
}

fn category_record(cat: &FinCat) -> Record {
    let composable: usize = cat.morphisms().map(|f| cat.morphisms_from(cat.dst(f)).len()).sum();
    Record::new("category")
        .field("objects", cat.object_count())
        .field("morphisms", cat.morphism_count())
        .field("composable_pairs", composable)
}

fn execute(cli: &Cli) -> Result<Report, CliError> {
    let size = cli.size_bound;
    let start = Instant::now();
    let mut report = match &cli.command {
        Command::Validate { file } => validate(file, size)?,
        Command::Trace { category } => {
            let cat = io::load_category(category, size)?;
            let fr = FreeRigid::new(Arc::new(cat));
            let mut r = Report::new("trace");
            let traces = fr.traces();
            r.push(Record::new("trace").field("classes", traces.class_count()));
            for k in 0..traces.class_count() {
                let members: Vec<&str> = traces.members(k).iter().map(|&f| fr.category().morphism_name(f)).collect();
                r.push(Record::new("class").field("id", k).field("members", members.join(",")));
            }
            r
        }
        Command::Rigid { monoidal } => {
            let m = io::load_monoidal(monoidal)?;
            let rigid = check_rigid(&m);
            let base = m.base();
            let mut r = Report::new("rigid");
            for (x, dual) in &rigid.entries {
                let mut rec = Record::new("object").field("name", base.object_name(*x));
                if let Some(d) = dual {
                    rec = rec
                        .field("dual", base.object_name(d.dual))
                        .field("ev", base.morphism_name(d.ev))
                        .field("coev", base.morphism_name(d.coev));
                } else {
                    rec = rec.field("dual", "none");
                }
                r.push(rec);
            }
            let missing: Vec<&str> = rigid.non_dualizable().into_iter().map(|x| base.object_name(x)).collect();
            r.check("rigid", rigid.is_rigid(), missing.join(","));
            r.push(Record::new("caveat").field("text", IDEMPOTENT_COMPLETION_CAVEAT));
            r
        }
        Command::Adjoint { functor } => {
            let f = io::load_functor(functor, size)?;
            let mut r = Report::new("adjoint");
            match find_right_adjoint(&f) {
                Some(adj) => {
                    let (c, d) = (f.source(), f.target());
                    for y in d.objects() {
                        r.push(
                            Record::new("right")
                                .field("object", d.object_name(y))
                                .field("image", c.object_name(adj.right.obj(y)))
                                .field("counit", d.morphism_name(adj.counit[y])),
                        );
                    }
                    let check = check_adjunction(&adj);
                    let detail = check.failures.first().map(ToString::to_string).unwrap_or_default();
                    r.check("adjunction", check.passed(), detail);
                }
                None => r.push(Record::new("right").field("exists", false)),
            }
            r
        }
        Command::Groth { diagram } => {
            let loaded = io::load_diagram(diagram, size)?;
            let groth = grothendieck(loaded.diagram());
            let mut r = Report::new("groth");
            r.push(category_record(groth.category()));
            let homs = hom_formula_check_all(&groth);
            for h in &homs {
                r.push(
                    Record::new("hom")
                        .field("source", &h.source)
                        .field("target", &h.target)
                        .field("size", h.hom_size)
                        .field("coproduct", h.coproduct_size),
                );
            }
            let failure =
                homs.iter().find_map(|h| h.failure.as_ref().map(|f| format!("Hom({}, {}): {f}", h.source, h.target)));
            r.check("hom formula", failure.is_none(), failure.unwrap_or_default());
            let cocone = unit_cocone(&groth);
            r.check("cocone", cocone.passed(), cocone.failures.first().cloned().unwrap_or_default());
            for (i, has) in cocone.has_right_adjoint.iter().enumerate() {
                r.push(
                    Record::new("inclusion")
                        .field("index", loaded.diagram().index().object_name(i))
                        .field("right_adjoint", has),
                );
            }
            if let LoadedDiagram::Monoidal(lax) = &loaded {
                match monoidal_grothendieck(lax) {
                    Ok((g, m)) => {
                        r.push(Record::new("monoidal").field("unit", g.category().object_name(m.unit())));
                        r.check("monoidal coherence", true, "");
                    }
                    Err(e) => r.check("monoidal coherence", false, e.to_string()),
                }
            }
            r
        }
        Command::Compose { category, g, f } => {
            let fr = FreeRigid::new(Arc::new(io::load_category(category, size)?));
            let (g, f) = (io::load_labeled_diagram(g, &fr)?, io::load_labeled_diagram(f, &fr)?);
            let mut r = Report::new("compose");
            match fr.compose(&g, &f) {
                Ok(h) => {
                    r.push(Record::new("composite").field("diagram", fr.display(&h)));
                    let raw = serde_json::to_string(&fr.to_raw(&h)).expect("diagrams serialize");
                    r.push(Record::new("json").field("value", raw));
                }
                Err(e) => r.check("composable", false, e.to_string()),
            }
            r
        }
        Command::Hom { category, pos, neg, loops } => {
            bound("loops", *loops, MAX_LOOPS)?;
            bound("maxlen", pos.len() + neg.len(), MAX_WORD_LEN)?;
            let cat = Arc::new(io::load_category(category, size)?);
            let pos: Vec<ObjId> = pos.iter().map(|n| object(&cat, category, n)).collect::<Result<_, _>>()?;
            let neg: Vec<ObjId> = neg.iter().map(|n| object(&cat, category, n)).collect::<Result<_, _>>()?;
            let fr = FreeRigid::new(cat);
            let h = fr_hom_from_unit(&fr, &pos, &neg, *loops);
            let mut r = Report::new("hom");
            r.push(
                Record::new("hom")
                    .field("target", fr.word_to_string(&h.target))
                    .field("morphisms", h.morphisms.len())
                    .field("formula", h.formula_count)
                    .field("multisets", h.multiset_count),
            );
            for m in &h.morphisms {
                r.push(Record::new("morphism").field("diagram", fr.display(m)));
            }
            r.check("decomposition", h.passed(), "");
            r
        }
        Command::EndUnit { category, loops } => {
            bound("loops", *loops, MAX_LOOPS)?;
            let fr = FreeRigid::new(Arc::new(io::load_category(category, size)?));
            let e = fr_end_unit(&fr, *loops);
            let mut r = Report::new("end-unit");
            r.push(
                Record::new("end-unit")
                    .field("classes", fr.traces().class_count())
                    .field("elements", e.elements.len())
                    .field("expected", e.expected_count),
            );
            r.check("count", e.elements.len() == e.expected_count, "");
            r.check("free commutative monoid", e.composition_is_union && e.commutative && e.unital, "");
            r
        }
        Command::VsCob { maxlen, bound: b } => {
            bound("maxlen", *maxlen, MAX_WORD_LEN)?;
            bound("bound", *b, MAX_LOOPS)?;
            let v = fr_vs_cob(*maxlen, *b);
            let mut r = Report::new("vs-cob");
            r.push(
                Record::new("vs-cob")
                    .field("hom_sets", v.hom_sets)
                    .field("morphisms", v.morphisms)
                    .field("composable_pairs", v.composable_pairs)
                    .field("tensor_pairs", v.tensor_pairs),
            );
            r.check("bijection", v.passed(), v.failures.first().cloned().unwrap_or_default());
            r
        }
        Command::FfCheck { functor, bounds } => {
            check_bounds(bounds)?;
            let f = io::load_functor(functor, size)?;
            let ff = fr_fully_faithful_check(&f, bounds.maxlen, bounds.loops);
            let mut r = Report::new("ff-check");
            r.push(
                Record::new("functor")
                    .field("full", ff.full)
                    .field("faithful", ff.faithful)
                    .field("source_classes", ff.source_classes)
                    .field("target_classes", ff.target_classes)
                    .field("hom_sets", ff.hom_sets_checked),
            );
            r.check("trace classes", ff.trace_bijective, "");
            let detail = ff
                .witness
                .as_ref()
                .map(|w| format!("Hom({}, {}): {} vs {}", w.source, w.target, w.source_count, w.target_count));
            r.check("hom sets", ff.hom_bijective, detail.unwrap_or_default());
            r.check("fully faithful", ff.full && ff.faithful, "");
            r
        }
        Command::Laws { category, bounds, tensor_maxlen } => {
            check_bounds(bounds)?;
            bound("tensor-maxlen", *tensor_maxlen, bounds.maxlen)?;
            let fr = FreeRigid::new(Arc::new(io::load_category(category, size)?));
            let laws = fr_law_check(&fr, bounds.maxlen, *tensor_maxlen, bounds.loops);
            let rigid = fr_rigidity_check(&fr, bounds.maxlen);
            let mut r = Report::new("laws");
            r.push(Record::new("laws").field("checks", laws.checks).field("words", rigid.words_checked));
            r.check(
                "category and symmetric monoidal laws",
                laws.passed(),
                laws.failures.first().cloned().unwrap_or_default(),
            );
            let detail = rigid.failures.first().map(|(w, f)| format!("{w}: {f:?}")).unwrap_or_default();
            r.check("triangle identities", rigid.passed(), detail);
            r
        }
        Command::Universal { functor, monoidal, bounds } => {
            check_bounds(bounds)?;
            let m = io::load_monoidal(monoidal)?;
            let f = io::load_functor(functor, size)?;
            if f.target().as_ref() != m.base().as_ref() {
                return Err(CliError::Usage(format!(
                    "{}: functor target is not the underlying category of {}",
                    functor.display(),
                    monoidal.display()
                )));
            }
            let fr = FreeRigid::new(f.source().clone());
            let mut r = Report::new("universal");
            match Interpretation::from_functor(&m, &f) {
                None => r.check("images dualizable", false, "some image has no dual"),
                Some(interp) => match fr_universal_map(&fr, &m, &interp, bounds.maxlen, bounds.loops) {
                    Ok(u) => {
                        r.push(
                            Record::new("universal")
                                .field("diagrams", u.diagrams)
                                .field("composable_pairs", u.composable_pairs)
                                .field("tensor_pairs", u.tensor_pairs),
                        );
                        r.check(
                            "symmetric monoidal functor",
                            u.passed(),
                            u.failures.first().cloned().unwrap_or_default(),
                        );
                    }
                    Err(e) => r.check("interpretation", false, e.to_string()),
                },
            }
            r
        }
        Command::Acceptance { corpus } => {
            let dir = corpus.clone().unwrap_or_else(default_corpus_dir);
            if !dir.is_dir() {
                return Err(CliError::Usage(format!("{}: corpus directory not found", dir.display())));
            }
            return Ok(run_acceptance_suite(&dir).report());
        }
    };
    report.time("total", start.elapsed());
    Ok(report)
}

fn validate(file: &Path, size: usize) -> Result<Report, CliError> {
    let value = read_value(file)?;
    let has = |key: &str| value.get(key).is_some();
    let mut r = Report::new("validate");
    let outcome: Result<Record, io::LoadError> = if has("index") {
        io::load_diagram(file, size).map(|d| {
            let d = d.diagram();
            Record::new("diagram")
                .field("index_objects", d.index().object_count())
                .field("index_morphisms", d.index().morphism_count())
        })
    } else if has("objects") && has("source") {
        io::load_functor(file, size)
            .map(|f| Record::new("functor").field("full", f.is_full()).field("faithful", f.is_faithful()))
    } else if has("pairs") && has("circles") {
        io::load_cobordism(file).map(|c| Record::new("cobordism").field("circles", c.circles()))
    } else if has("tensor_objects") {
        io::load_monoidal(file).map(|m| category_record(m.base()).field("unit", m.base().object_name(m.unit())))
    } else {
        io::load_category(file, size).map(|c| category_record(&c))
    };
    match outcome {
        Ok(record) => {
            r.push(record);
            r.check("valid", true, "");
        }
        Err(e) => r.check("valid", false, e.message),
    }
    Ok(r)
}
