use std::collections::{BTreeMap, HashMap};

use petgraph::unionfind::UnionFind;
use proptest::prelude::*;
use rigcat_core::fincat::{trace_set, validate_category, FinCat, RawCategory, RawMorphism};

/// A concrete category: objects are finite sets, morphisms the closure of
/// some generating functions under composition.
#[derive(Clone, Debug)]
struct Concrete {
    sizes: Vec<usize>,
    /// `(src, dst, table)`.
    maps: Vec<(usize, usize, Vec<usize>)>,
}

fn closure(sizes: &[usize], generators: &[(usize, usize, Vec<usize>)]) -> Concrete {
    let mut maps: Vec<(usize, usize, Vec<usize>)> =
        sizes.iter().enumerate().map(|(i, &n)| (i, i, (0..n).collect())).collect();
    for g in generators {
        if !maps.contains(g) {
            maps.push(g.clone());
        }
    }
    loop {
        let mut added = false;
        for a in 0..maps.len() {
            for b in 0..maps.len() {
                let (f, g) = (&maps[a], &maps[b]);
                if f.1 == g.0 {
                    let table: Vec<usize> = f.2.iter().map(|&v| g.2[v]).collect();
                    let gf = (f.0, g.1, table);
                    if !maps.contains(&gf) {
                        maps.push(gf);
                        added = true;
                    }
                }
            }
        }
        if !added || maps.len() > 40 {
            break;
        }
    }
    Concrete { sizes: sizes.to_vec(), maps }
}

impl Concrete {
    fn raw(&self) -> RawCategory {
        let objects: Vec<String> = (0..self.sizes.len()).map(|i| format!("o{i}")).collect();
        let name = |k: usize| format!("m{k}");
        let mut composition = Vec::new();
        for (a, f) in self.maps.iter().enumerate() {
            for (b, g) in self.maps.iter().enumerate() {
                if f.1 == g.0 {
                    let table: Vec<usize> = f.2.iter().map(|&v| g.2[v]).collect();
                    let c = self.maps.iter().position(|m| m.0 == f.0 && m.1 == g.1 && m.2 == table).unwrap();
                    composition.push([name(b), name(a), name(c)]);
                }
            }
        }
        RawCategory {
            morphisms: self
                .maps
                .iter()
                .enumerate()
                .map(|(k, m)| RawMorphism::new(name(k), &objects[m.0], &objects[m.1]))
                .collect(),
            identities: (0..self.sizes.len()).map(|i| (objects[i].clone(), name(i))).collect(),
            objects,
            composition,
        }
    }
}

fn concrete() -> impl Strategy<Value = Concrete> {
    prop::collection::vec(1usize..=3, 1..=2)
        .prop_flat_map(|sizes| {
            let n = sizes.len();
            let s = sizes.clone();
            let generator = (0..n, 0..n)
                .prop_flat_map(move |(i, j)| prop::collection::vec(0..s[j], s[i]).prop_map(move |t| (i, j, t)));
            (Just(sizes), prop::collection::vec(generator, 0..=2))
        })
        .prop_map(|(sizes, gens)| closure(&sizes, &gens))
        .prop_filter("closure stays small", |c| c.maps.len() <= 40)
}

/// Brute-force category axioms on raw tables, with composites involving an
/// identity filled in when absent.
fn satisfies_axioms(raw: &RawCategory) -> bool {
    let mut ids = std::collections::BTreeSet::new();
    for name in raw.objects.iter().chain(raw.morphisms.iter().map(|m| &m.id)) {
        if !ids.insert(name.clone()) {
            return false;
        }
    }
    let typ: HashMap<&str, (&str, &str)> =
        raw.morphisms.iter().map(|m| (m.id.as_str(), (m.src.as_str(), m.dst.as_str()))).collect();
    if raw.morphisms.iter().any(|m| !raw.objects.contains(&m.src) || !raw.objects.contains(&m.dst)) {
        return false;
    }
    for x in &raw.objects {
        match raw.identities.get(x) {
            Some(i) if typ.get(i.as_str()) == Some(&(x.as_str(), x.as_str())) => {}
            _ => return false,
        }
    }
    if raw.identities.len() != raw.objects.len() {
        return false;
    }
    let is_id = |m: &str| raw.identities.values().any(|i| i == m);
    let mut table: BTreeMap<(&str, &str), &str> = BTreeMap::new();
    for [g, f, h] in &raw.composition {
        let (Some(tg), Some(tf), Some(th)) = (typ.get(g.as_str()), typ.get(f.as_str()), typ.get(h.as_str())) else {
            return false;
        };
        if tf.1 != tg.0 || th.0 != tf.0 || th.1 != tg.1 {
            return false;
        }
        if table.insert((g, f), h).is_some_and(|old| old != h) {
            return false;
        }
    }
    let compose = |g: &str, f: &str| -> Option<String> {
        if let Some(h) = table.get(&(g, f)) {
            return Some(h.to_string());
        }
        if is_id(f) {
            return Some(g.to_owned());
        }
        if is_id(g) {
            return Some(f.to_owned());
        }
        None
    };
    let names: Vec<&str> = raw.morphisms.iter().map(|m| m.id.as_str()).collect();
    for &f in &names {
        for &g in names.iter().filter(|g| typ[**g].0 == typ[f].1) {
            let Some(gf) = compose(g, f) else { return false };
            if is_id(f) && gf != g || is_id(g) && gf != f {
                return false;
            }
            for &h in names.iter().filter(|h| typ[**h].0 == typ[g].1) {
                let Some(hg) = compose(h, g) else { return false };
                if compose(h, &gf) != compose(&hg, f) {
                    return false;
                }
            }
        }
    }
    true
}

fn trace_components(cat: &FinCat) -> usize {
    let endos: Vec<usize> = cat.morphisms().filter(|&f| cat.src(f) == cat.dst(f)).collect();
    let index: HashMap<usize, usize> = endos.iter().enumerate().map(|(k, &f)| (f, k)).collect();
    let mut uf = UnionFind::<usize>::new(endos.len());
    for f in cat.morphisms() {
        for &g in cat.hom(cat.dst(f), cat.src(f)) {
            uf.union(index[&cat.compose(g, f).unwrap()], index[&cat.compose(f, g).unwrap()]);
        }
    }
    let mut roots: Vec<usize> = (0..endos.len()).map(|k| uf.find(k)).collect();
    roots.sort_unstable();
    roots.dedup();
    roots.len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn concrete_categories_validate(c in concrete()) {
        let raw = c.raw();
        prop_assert!(satisfies_axioms(&raw));
        let cat = validate_category(&raw).unwrap();
        prop_assert_eq!(cat.morphism_count(), c.maps.len());
    }

    #[test]
    fn validation_agrees_with_brute_force(c in concrete(), pick in any::<prop::sample::Index>(), to in any::<prop::sample::Index>(), drop in any::<bool>()) {
        let mut raw = c.raw();
        let k = pick.index(raw.composition.len());
        if drop {
            raw.composition.remove(k);
        } else {
            let replacement = raw.morphisms[to.index(raw.morphisms.len())].id.clone();
            raw.composition[k][2] = replacement;
        }
        prop_assert_eq!(validate_category(&raw).is_ok(), satisfies_axioms(&raw));
    }

    #[test]
    fn trace_classes_are_graph_components(c in concrete()) {
        let cat = validate_category(&c.raw()).unwrap();
        let traces = trace_set(&cat);
        prop_assert_eq!(traces.class_count(), trace_components(&cat));
        for k in 0..traces.class_count() {
            for &f in traces.members(k) {
                prop_assert_eq!(traces.class_of(f), Some(k));
            }
        }
    }

    #[test]
    fn raw_round_trip(c in concrete()) {
        let cat = validate_category(&c.raw()).unwrap();
        let again = validate_category(&cat.to_raw()).unwrap();
        prop_assert_eq!(again, cat);
    }
}
