use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use rigcat_core::acceptance::default_corpus_dir;
use rigcat_core::fincat::{standard, trace_set, validate_category};
use rigcat_core::freerigid::FreeRigid;
use rigcat_core::grothendieck::{grothendieck, monoidal_grothendieck, terminal_fibers, unit_cocone};
use rigcat_core::io::{self, LoadedDiagram, DEFAULT_SIZE_BOUND};
use rigcat_core::moncat::{check_rigid, validate_monoidal, SymmetricMonoidal};

fn corpus(rel: &str) -> PathBuf {
    default_corpus_dir().join(rel)
}

fn json_files(dir: &str) -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = fs::read_dir(corpus(dir))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    files.sort();
    files
}

#[test]
fn every_corpus_file_loads() {
    for path in json_files("categories") {
        let cat = io::load_category(&path, DEFAULT_SIZE_BOUND).unwrap_or_else(|e| panic!("{e}"));
        assert_eq!(validate_category(&cat.to_raw()).unwrap(), cat);
    }
    for path in json_files("monoidal") {
        let m = io::load_monoidal(&path).unwrap_or_else(|e| panic!("{e}"));
        validate_monoidal(&m.to_raw()).unwrap();
    }
    for path in json_files("functors") {
        io::load_functor(&path, DEFAULT_SIZE_BOUND).unwrap_or_else(|e| panic!("{e}"));
    }
    for path in json_files("diagrams") {
        io::load_diagram(&path, DEFAULT_SIZE_BOUND).unwrap_or_else(|e| panic!("{e}"));
    }
    for path in json_files("cobordisms") {
        io::load_cobordism(&path).unwrap_or_else(|e| panic!("{e}"));
    }
    let arrow = Arc::new(io::load_category(&corpus("categories/walking_arrow.json"), DEFAULT_SIZE_BOUND).unwrap());
    let fr = FreeRigid::new(arrow);
    for path in json_files("labeled") {
        io::load_labeled_diagram(&path, &fr).unwrap_or_else(|e| panic!("{e}"));
    }
}

#[test]
fn corpus_matches_the_standard_categories() {
    let load = |name: &str| io::load_category(&corpus(&format!("categories/{name}.json")), DEFAULT_SIZE_BOUND).unwrap();
    assert_eq!(load("terminal"), standard::terminal());
    assert_eq!(load("walking_arrow"), standard::walking_arrow());
    assert_eq!(load("walking_isomorphism"), standard::walking_isomorphism());
    let group = load("two_element_group");
    assert_eq!((group.object_count(), group.morphism_count()), (1, 2));
    let idempotent = load("idempotent");
    assert_eq!((idempotent.morphism_count(), trace_set(&idempotent).class_count()), (2, 2));
    let retraction = load("retraction");
    assert_eq!((retraction.morphism_count(), trace_set(&retraction).class_count()), (5, 2));
}

/// `|Hom((i,x),(j,y))| = Σ_{f: i→j} |Hom(F(f)x, y)|`, read off the diagram.
#[test]
fn grothendieck_hom_sizes() {
    for name in ["arrow_into_iso", "cospan"] {
        let loaded = io::load_diagram(&corpus(&format!("diagrams/{name}.json")), DEFAULT_SIZE_BOUND).unwrap();
        let d = loaded.diagram();
        let g = grothendieck(d);
        let index = d.index();
        let objects: usize = index.objects().map(|i| d.fiber(i).object_count()).sum();
        assert_eq!(g.category().object_count(), objects);
        for i in index.objects() {
            for j in index.objects() {
                for x in d.fiber(i).objects() {
                    for y in d.fiber(j).objects() {
                        let expected: usize =
                            index.hom(i, j).iter().map(|&f| d.fiber(j).hom(d.transition(f).obj(x), y).len()).sum();
                        assert_eq!(g.category().hom(g.object(i, x), g.object(j, y)).len(), expected, "{name}");
                    }
                }
            }
        }
        let projection = g.projection();
        for m in g.category().morphisms() {
            assert_eq!(projection.mor(m), g.morphism_pair(m).base);
        }
        assert!(unit_cocone(&g).passed());
    }
}

#[test]
fn parity_tensor_is_addition() {
    let LoadedDiagram::Monoidal(lax) =
        io::load_diagram(&corpus("diagrams/parity_over_z2.json"), DEFAULT_SIZE_BOUND).unwrap()
    else {
        panic!("parity diagram carries mu");
    };
    let (g, m) = monoidal_grothendieck(&lax).unwrap();
    let cat = g.category();
    assert_eq!(cat.object_count(), 4);
    for a in cat.objects() {
        for b in cat.objects() {
            let ((i, x), (j, y)) = (g.object_pair(a), g.object_pair(b));
            assert_eq!(g.object_pair(m.tensor_obj(a, b)), ((i + j) % 2, (x + y) % 2));
        }
    }
    assert_eq!(g.object_pair(m.unit()), (0, 0));
    assert!(check_rigid(&m).is_rigid());
}

#[test]
fn terminal_fibers_over_z3() {
    let z3 = Arc::new(io::load_monoidal(&corpus("monoidal/z3_discrete.json")).unwrap());
    let lax = terminal_fibers(z3.clone(), Arc::new(standard::terminal())).unwrap();
    let (g, m) = monoidal_grothendieck(&lax).unwrap();
    assert_eq!(g.category().object_count(), 3);
    for a in g.category().objects() {
        for b in g.category().objects() {
            let index_of = |o| g.object_pair(o).0;
            assert_eq!(index_of(m.tensor_obj(a, b)), z3.tensor_obj(index_of(a), index_of(b)));
        }
    }
    assert_eq!(m.unit_object(), g.object(z3.unit(), 0));
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

#[test]
fn load_errors_name_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let broken = write(dir.path(), "broken.json", "{ \"objects\": [");
    let err = io::load_category(&broken, DEFAULT_SIZE_BOUND).unwrap_err();
    assert!(err.to_string().contains("broken.json"), "{err}");
    assert!(err.message.contains("line"), "{err}");

    let mut raw = standard::two_element_group().to_raw();
    raw.composition.retain(|t| !(t[0] == "s" && t[1] == "s"));
    let corrupted = write(dir.path(), "corrupted.json", &serde_json::to_string(&raw).unwrap());
    let err = io::load_category(&corrupted, DEFAULT_SIZE_BOUND).unwrap_err();
    assert!(err.to_string().contains("corrupted.json") && err.message.contains("s∘s"), "{err}");

    let functor = write(dir.path(), "f.json", r#"{"source": "missing.json", "target": "missing.json", "objects": {}}"#);
    let err = io::load_functor(&functor, DEFAULT_SIZE_BOUND).unwrap_err();
    assert!(err.to_string().contains("missing.json"), "{err}");
}

#[test]
fn presentation_bound_is_enforced() {
    let dir = tempfile::tempdir().unwrap();
    let free = write(
        dir.path(),
        "free.json",
        r#"{"objects": ["x"], "generators": [{"id": "e", "src": "x", "dst": "x"}], "relations": []}"#,
    );
    assert!(io::load_category(&free, 8).is_err());
    let cyclic = write(
        dir.path(),
        "cyclic.json",
        r#"{"objects": ["x"], "generators": [{"id": "g", "src": "x", "dst": "x"}], "relations": [["g.g.g", "id(x)"]]}"#,
    );
    assert_eq!(io::load_category(&cyclic, 8).unwrap().morphism_count(), 3);
}
