use std::sync::Arc;

use proptest::prelude::*;
use proptest::sample::Index;
use rigcat_core::cobordism::{
    boundary_points, cob_compose, cob_enumerate_homs, cob_symmetry, cob_tensor, epsilon, Cob, Cob1Mor, SignedWord,
};
use rigcat_core::fincat::{standard, FinCat};
use rigcat_core::freerigid::{evaluate, BrauerMor, FreeRigid, Interpretation, LabeledWord};
use rigcat_core::moncat::{DualData, SymmetricMonoidal};

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// `|Hom(a, b)|` with at most `circles` circles: orientation-compatible
/// matchings pair every `ε = +1` point with an `ε = −1` point.
fn cob_hom_size(a: &SignedWord, b: &SignedWord, circles: usize) -> usize {
    let eps: Vec<i8> = boundary_points(a.len(), b.len()).map(|p| epsilon(&a.0, &b.0, p).unwrap()).collect();
    let plus = eps.iter().filter(|&&e| e > 0).count();
    if 2 * plus != eps.len() {
        return 0;
    }
    factorial(plus) * (circles + 1)
}

#[test]
fn cobordism_hom_sizes_match_matching_count() {
    let words = SignedWord::all_up_to(3);
    for a in &words {
        for b in &words {
            for circles in 0..=2 {
                assert_eq!(cob_enumerate_homs(a, b, circles).len(), cob_hom_size(a, b, circles), "Hom({a}, {b})");
            }
        }
    }
}

fn pick<T: Clone>(items: &[T], i: Index) -> Option<T> {
    (!items.is_empty()).then(|| items[i.index(items.len())].clone())
}

fn word(max_len: usize) -> impl Strategy<Value = SignedWord> {
    let words = SignedWord::all_up_to(max_len);
    (0..words.len()).prop_map(move |k| words[k].clone())
}

fn cob(a: &SignedWord, b: &SignedWord, i: Index) -> Option<Cob1Mor> {
    pick(&cob_enumerate_homs(a, b, 2), i)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn cob_associative_and_unital(a in word(3), b in word(3), c in word(3), d in word(3), i: Index, j: Index, k: Index) {
        let (Some(f), Some(g), Some(h)) = (cob(&a, &b, i), cob(&b, &c, j), cob(&c, &d, k)) else { return Ok(()) };
        let left = cob_compose(&h, &cob_compose(&g, &f).unwrap()).unwrap();
        let right = cob_compose(&cob_compose(&h, &g).unwrap(), &f).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(cob_compose(&f, &Cob1Mor::identity(&a)).unwrap(), f.clone());
        prop_assert_eq!(cob_compose(&Cob1Mor::identity(&b), &f).unwrap(), f);
    }

    #[test]
    fn cob_interchange(a1 in word(2), b1 in word(2), c1 in word(2), a2 in word(2), b2 in word(2), c2 in word(2),
                       i: Index, j: Index, k: Index, l: Index) {
        let (Some(f1), Some(g1), Some(f2), Some(g2)) = (cob(&a1, &b1, i), cob(&b1, &c1, j), cob(&a2, &b2, k), cob(&b2, &c2, l))
        else { return Ok(()) };
        let lhs = cob_compose(&cob_tensor(&g1, &g2), &cob_tensor(&f1, &f2)).unwrap();
        let rhs = cob_tensor(&cob_compose(&g1, &f1).unwrap(), &cob_compose(&g2, &f2).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cob_symmetry_natural_and_involutive(a in word(2), b in word(2), c in word(2), d in word(2), i: Index, j: Index) {
        let s = cob_symmetry(&a, &b);
        prop_assert_eq!(cob_compose(&cob_symmetry(&b, &a), &s).unwrap(), Cob1Mor::identity(&a.concat(&b)));
        let (Some(f), Some(g)) = (cob(&a, &c, i), cob(&b, &d, j)) else { return Ok(()) };
        let lhs = cob_compose(&cob_symmetry(&c, &d), &cob_tensor(&f, &g)).unwrap();
        let rhs = cob_compose(&cob_tensor(&g, &f), &s).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn circles_add(m in 0usize..6, n in 0usize..6) {
        let c = cob_compose(&Cob1Mor::closed(m), &Cob1Mor::closed(n)).unwrap();
        prop_assert_eq!(c.circles(), m + n);
        prop_assert_eq!(cob_tensor(&Cob1Mor::closed(m), &Cob1Mor::closed(n)).circles(), m + n);
    }

    #[test]
    fn dual_is_involutive(a in word(4)) {
        prop_assert_eq!(a.dual().dual(), a.clone());
        prop_assert_eq!(a.dual().len(), a.len());
    }
}

fn test_categories() -> Vec<(&'static str, Arc<FinCat>)> {
    vec![
        ("terminal", Arc::new(standard::terminal())),
        ("walking_arrow", Arc::new(standard::walking_arrow())),
        ("walking_isomorphism", Arc::new(standard::walking_isomorphism())),
        ("two_element_group", Arc::new(standard::two_element_group())),
    ]
}

/// Exact permanent of a small matrix by expansion over column subsets.
fn permanent(matrix: &[Vec<usize>]) -> usize {
    fn go(matrix: &[Vec<usize>], row: usize, used: u32) -> usize {
        if row == matrix.len() {
            return 1;
        }
        (0..matrix.len())
            .filter(|c| used & (1 << c) == 0)
            .map(|c| matrix[row][c] * go(matrix, row + 1, used | (1 << c)))
            .sum()
    }
    go(matrix, 0, 0)
}

/// Multisets of size at most `max` over `n` elements, by listing
/// non-decreasing sequences.
fn count_multisets(n: usize, max: usize) -> usize {
    fn go(n: usize, start: usize, left: usize) -> usize {
        1 + if left == 0 { 0 } else { (start..n).map(|k| go(n, k, left - 1)).sum() }
    }
    go(n, 0, max)
}

#[test]
fn end_unit_sizes() {
    assert_eq!(count_multisets(1, 3), 4);
    assert_eq!(count_multisets(2, 2), 6);
    for (name, cat) in test_categories() {
        let fr = FreeRigid::new(cat);
        for loops in 0..=3 {
            let n = fr.enumerate_homs(&LabeledWord::empty(), &LabeledWord::empty(), loops).len();
            assert_eq!(n, count_multisets(fr.traces().class_count(), loops), "{name} at {loops}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hom_from_unit_matches_permanent(which in 0usize..4, pos in prop::collection::vec(0usize..2, 0..=3),
                                        neg in prop::collection::vec(0usize..2, 0..=3), loops in 0usize..=2) {
        let (_, cat) = test_categories().swap_remove(which);
        let clamp = |v: &[usize]| -> Vec<usize> { v.iter().map(|&x| x % cat.object_count()).collect() };
        let (pos, neg) = (clamp(&pos), clamp(&neg));
        let fr = FreeRigid::new(cat.clone());
        let target = LabeledWord(
            pos.iter().map(|&m| (m, rigcat_core::cobordism::Sign::Plus))
                .chain(neg.iter().map(|&n| (n, rigcat_core::cobordism::Sign::Minus)))
                .collect(),
        );
        let count = fr.enumerate_homs(&LabeledWord::empty(), &target, loops).len();
        let expected = if pos.len() == neg.len() {
            let matrix: Vec<Vec<usize>> = pos.iter().map(|&m| neg.iter().map(|&n| cat.hom(n, m).len()).collect()).collect();
            permanent(&matrix) * count_multisets(fr.traces().class_count(), loops)
        } else {
            0
        };
        prop_assert_eq!(count, expected);
    }
}

struct Sampler {
    fr: FreeRigid,
    words: Vec<LabeledWord>,
}

impl Sampler {
    fn new(cat: Arc<FinCat>, max_len: usize) -> Self {
        let fr = FreeRigid::new(cat);
        let words = fr.words_up_to(max_len);
        Self { fr, words }
    }

    fn word(&self, i: Index) -> LabeledWord {
        self.words[i.index(self.words.len())].clone()
    }

    fn hom(&self, a: &LabeledWord, b: &LabeledWord, loops: usize, i: Index) -> Option<BrauerMor> {
        pick(&self.fr.enumerate_homs(a, b, loops), i)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    /// Laws on words of length at most 2 with at most one loop per factor.
    #[test]
    fn fr_interchange(which in 0usize..4, w: [Index; 6], m: [Index; 4]) {
        let s = Sampler::new(test_categories().swap_remove(which).1, 2);
        let (a1, b1, c1, a2, b2, c2) = (s.word(w[0]), s.word(w[1]), s.word(w[2]), s.word(w[3]), s.word(w[4]), s.word(w[5]));
        let (Some(f1), Some(g1), Some(f2), Some(g2)) =
            (s.hom(&a1, &b1, 1, m[0]), s.hom(&b1, &c1, 1, m[1]), s.hom(&a2, &b2, 1, m[2]), s.hom(&b2, &c2, 1, m[3]))
        else { return Ok(()) };
        let fr = &s.fr;
        let lhs = fr.compose(&fr.tensor(&g1, &g2), &fr.tensor(&f1, &f2)).unwrap();
        let rhs = fr.tensor(&fr.compose(&g1, &f1).unwrap(), &fr.compose(&g2, &f2).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn fr_associative_unital(which in 0usize..4, w: [Index; 4], m: [Index; 3]) {
        let s = Sampler::new(test_categories().swap_remove(which).1, 2);
        let (a, b, c, d) = (s.word(w[0]), s.word(w[1]), s.word(w[2]), s.word(w[3]));
        let (Some(f), Some(g), Some(h)) = (s.hom(&a, &b, 1, m[0]), s.hom(&b, &c, 1, m[1]), s.hom(&c, &d, 1, m[2]))
        else { return Ok(()) };
        let fr = &s.fr;
        prop_assert_eq!(
            fr.compose(&h, &fr.compose(&g, &f).unwrap()).unwrap(),
            fr.compose(&fr.compose(&h, &g).unwrap(), &f).unwrap()
        );
        prop_assert_eq!(fr.compose(&f, &fr.identity(&a)).unwrap(), f.clone());
        prop_assert_eq!(fr.compose(&fr.identity(&b), &f).unwrap(), f);
    }

    #[test]
    fn fr_symmetry_natural(which in 0usize..4, w: [Index; 4], m: [Index; 2]) {
        let s = Sampler::new(test_categories().swap_remove(which).1, 2);
        let (a, b, c, d) = (s.word(w[0]), s.word(w[1]), s.word(w[2]), s.word(w[3]));
        let fr = &s.fr;
        let sym = fr.symmetry(&a, &b);
        prop_assert_eq!(fr.compose(&fr.symmetry(&b, &a), &sym).unwrap(), fr.identity(&a.concat(&b)));
        let (Some(f), Some(g)) = (s.hom(&a, &c, 1, m[0]), s.hom(&b, &d, 1, m[1])) else { return Ok(()) };
        prop_assert_eq!(
            fr.compose(&fr.symmetry(&c, &d), &fr.tensor(&f, &g)).unwrap(),
            fr.compose(&fr.tensor(&g, &f), &sym).unwrap()
        );
    }

    /// Evaluating diagrams over the terminal category in cobordisms forgets labels.
    #[test]
    fn terminal_evaluation_is_forgetful(w: [Index; 3], m: [Index; 2]) {
        let s = Sampler::new(Arc::new(standard::terminal()), 3);
        let plus: SignedWord = "+".parse().unwrap();
        let interp = Interpretation::<Cob> {
            objects: vec![plus.clone()],
            morphisms: vec![Cob1Mor::identity(&plus)],
            duals: vec![DualData { object: plus.clone(), dual: plus.dual(), ev: Cob1Mor::ev(&plus), coev: Cob1Mor::coev(&plus) }],
        };
        let forget = |d: &BrauerMor| {
            Cob1Mor::new(d.source().forget_labels(), d.target().forget_labels(), d.strands().iter().map(|t| (t.a, t.b)), d.loops().len()).unwrap()
        };
        let (a, b, c) = (s.word(w[0]), s.word(w[1]), s.word(w[2]));
        let (Some(f), Some(g)) = (s.hom(&a, &b, 2, m[0]), s.hom(&b, &c, 2, m[1])) else { return Ok(()) };
        let ef = evaluate(&s.fr, &Cob, &interp, &f).unwrap();
        prop_assert_eq!(&ef, &forget(&f));
        let gf = s.fr.compose(&g, &f).unwrap();
        prop_assert_eq!(evaluate(&s.fr, &Cob, &interp, &gf).unwrap(), Cob.compose(&forget(&g), &ef).unwrap());
    }
}

#[test]
fn fr_laws_exhaustive() {
    use rigcat_core::freerigid::fr_law_check;
    for (name, cat) in test_categories() {
        let fr = FreeRigid::new(cat);
        let report = fr_law_check(&fr, 2, 1, 1);
        assert!(report.passed(), "{name}: {:?}", report.failures);
        if name != "walking_isomorphism" {
            let report = fr_law_check(&fr, 2, 2, 0);
            assert!(report.passed(), "{name}: {:?}", report.failures);
        }
    }
}

#[test]
fn loop_class_follows_its_label() {
    use rigcat_core::cobordism::{Point::Target, Sign};
    let cat = Arc::new(standard::two_element_group());
    let fr = FreeRigid::new(cat.clone());
    let o = cat.object_id("o").unwrap();
    let w = LabeledWord(vec![(o, Sign::Plus), (o, Sign::Minus)]);
    for f in cat.morphisms() {
        let cup = fr.morphism(LabeledWord::empty(), w.clone(), [(Target(0), Target(1), f)], vec![]).unwrap();
        let (closed, cycles) = fr.compose_traced(&fr.ev(&LabeledWord(vec![(o, Sign::Plus)])), &cup).unwrap();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cat.compose_path(&cycles[0]), Some(f));
        assert_eq!(closed.loops(), [fr.traces().class_of(f).unwrap()]);
    }
    assert_ne!(fr.traces().class_of(0), fr.traces().class_of(1));
}
