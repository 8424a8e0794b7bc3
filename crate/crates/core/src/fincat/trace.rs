use super::category::{FinCat, MorId};

pub type ClassId = usize;

/// Disjoint-set forest with path compression and union by rank.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self { parent: (0..n).collect(), rank: vec![0; n] }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}

/// Endomorphisms of a finite category modulo `g∘f ~ f∘g`.
///
/// Classes are numbered in order of their least morphism id, which is also
/// the class representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceSet {
    classes: Vec<Vec<MorId>>,
    class_of: Vec<Option<ClassId>>,
}

impl TraceSet {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[Vec<MorId>] {
        &self.classes
    }

    /// `None` for morphisms that are not endomorphisms.
    pub fn class_of(&self, f: MorId) -> Option<ClassId> {
        self.class_of[f]
    }

    pub fn representative(&self, class: ClassId) -> MorId {
        self.classes[class][0]
    }

    pub fn members(&self, class: ClassId) -> &[MorId] {
        &self.classes[class]
    }
}

/// Quotient of all endomorphisms by the equivalence generated by
/// `g∘f ~ f∘g` over every opposed pair `f: x → y`, `g: y → x`.
pub fn trace_set(cat: &FinCat) -> TraceSet {
    let mut uf = UnionFind::new(cat.morphism_count());
    for f in cat.morphisms() {
        let (x, y) = (cat.src(f), cat.dst(f));
        for &g in cat.hom(y, x) {
            let gf = cat.compose(g, f).expect("opposed pair composes");
            let fg = cat.compose(f, g).expect("opposed pair composes");
            uf.union(gf, fg);
        }
    }

    let mut root_class = vec![None; cat.morphism_count()];
    let mut classes: Vec<Vec<MorId>> = Vec::new();
    let mut class_of = vec![None; cat.morphism_count()];
    // Morphisms are visited in id order, so each class is created by its
    // least member.
    for f in cat.morphisms().filter(|&f| cat.src(f) == cat.dst(f)) {
        let root = uf.find(f);
        let class = *root_class[root].get_or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[class].push(f);
        class_of[f] = Some(class);
    }
    TraceSet { classes, class_of }
}

#[cfg(test)]
mod tests {
    use super::super::category::standard::*;
    use super::*;

    #[test]
    fn terminal_has_one_class() {
        assert_eq!(trace_set(&terminal()).class_count(), 1);
    }

    #[test]
    fn walking_isomorphism_identifies_identities() {
        let c = walking_isomorphism();
        let t = trace_set(&c);
        assert_eq!(t.class_count(), 1);
        assert_eq!(t.members(0), &[c.identity(0), c.identity(1)]);
        assert_eq!(t.class_of(c.morphism_id("f").unwrap()), None);
    }

    #[test]
    fn two_element_group_has_two_classes() {
        let c = two_element_group();
        let t = trace_set(&c);
        assert_eq!(t.class_count(), 2);
        assert_eq!(t.representative(0), c.identity(0));
        assert_eq!(t.representative(1), c.morphism_id("s").unwrap());
    }

    #[test]
    fn walking_arrow_has_two_classes() {
        assert_eq!(trace_set(&walking_arrow()).class_count(), 2);
    }

    #[test]
    fn union_find_merges_transitively() {
        let mut uf = UnionFind::new(5);
        uf.union(0, 1);
        uf.union(3, 4);
        uf.union(1, 4);
        assert_eq!(uf.find(0), uf.find(3));
        assert_ne!(uf.find(2), uf.find(0));
    }
}
