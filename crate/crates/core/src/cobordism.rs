//! The oriented 1-dimensional cobordism category up to diffeomorphism.
//!
//! A morphism between signed words is a perfect matching of its boundary
//! points plus a count of closed components. A point carries the weight
//! `ε = +1` if it is a `+` in the source or a `−` in the target, `ε = −1`
//! otherwise, and every matched pair must have weights summing to zero.
//! The circle count is the only trace of the closed part: each component is
//! a circle, and the loop space of circles is forgotten.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::moncat::SymmetricMonoidal;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedWord(pub Vec<Sign>);

impl SignedWord {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &SignedWord) -> SignedWord {
        SignedWord(self.0.iter().chain(&other.0).copied().collect())
    }

    /// Reversed, with every sign flipped.
    pub fn dual(&self) -> SignedWord {
        SignedWord(self.0.iter().rev().map(|s| s.flip()).collect())
    }

    /// All words of length at most `max_len`, shortest first.
    pub fn all_up_to(max_len: usize) -> Vec<SignedWord> {
        (0..=max_len)
            .flat_map(|len| (0..len).map(|_| [Sign::Plus, Sign::Minus]).multi_cartesian_product().map(SignedWord))
            .collect()
    }
}

impl fmt::Display for SignedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("∅");
        }
        self.0.iter().try_for_each(|s| write!(f, "{}", s.symbol()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CobError {
    #[error("invalid sign `{0}` (expected `+` or `-`)")]
    InvalidSign(char),
    #[error("invalid point reference `{0}` (expected s<k> or t<k>)")]
    InvalidPoint(String),
    #[error("point {0} is out of range")]
    PointOutOfRange(Point),
    #[error("point {0} is matched more than once")]
    RepeatedPoint(Point),
    #[error("point {0} is not matched")]
    UnmatchedPoint(Point),
    #[error("pair ({0}, {1}) does not respect orientation")]
    OrientationMismatch(Point, Point),
    #[error("boundary mismatch: {0} ≠ {1}")]
    BoundaryMismatch(String, String),
}

impl FromStr for SignedWord {
    type Err = CobError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .filter(|c| !c.is_whitespace() && *c != '∅')
            .map(|c| match c {
                '+' => Ok(Sign::Plus),
                '-' | '−' => Ok(Sign::Minus),
                other => Err(CobError::InvalidSign(other)),
            })
            .collect::<Result<_, _>>()
            .map(SignedWord)
    }
}

/// A boundary point of a morphism: position `k` in the source or target word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Source(usize),
    Target(usize),
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Source(k) => write!(f, "s{k}"),
            Point::Target(k) => write!(f, "t{k}"),
        }
    }
}

impl FromStr for Point {
    type Err = CobError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CobError::InvalidPoint(s.to_owned());
        let (kind, index) = s.trim().split_at_checked(1).ok_or_else(bad)?;
        let index: usize = index.parse().map_err(|_| bad())?;
        match kind {
            "s" => Ok(Point::Source(index)),
            "t" => Ok(Point::Target(index)),
            _ => Err(bad()),
        }
    }
}

/// Orientation weight of a boundary point, or `None` if it is out of range.
pub fn epsilon(source: &[Sign], target: &[Sign], p: Point) -> Option<i8> {
    match p {
        Point::Source(k) => source.get(k).map(|s| s.value()),
        Point::Target(k) => target.get(k).map(|s| -s.value()),
    }
}

/// Every boundary point of a morphism `source → target`, sources first.
pub fn boundary_points(source_len: usize, target_len: usize) -> impl Iterator<Item = Point> {
    (0..source_len).map(Point::Source).chain((0..target_len).map(Point::Target))
}

/// Checks that `pairs` is an orientation-compatible perfect matching and
/// returns it in canonical order.
pub(crate) fn canonical_matching(
    source: &[Sign],
    target: &[Sign],
    pairs: impl IntoIterator<Item = (Point, Point)>,
) -> Result<Vec<(Point, Point)>, CobError> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for (a, b) in pairs {
        for p in [a, b] {
            epsilon(source, target, p).ok_or(CobError::PointOutOfRange(p))?;
            if !seen.insert(p) {
                return Err(CobError::RepeatedPoint(p));
            }
        }
        if epsilon(source, target, a).unwrap() + epsilon(source, target, b).unwrap() != 0 {
            return Err(CobError::OrientationMismatch(a, b));
        }
        out.push(if a < b { (a, b) } else { (b, a) });
    }
    if let Some(p) = boundary_points(source.len(), target.len()).find(|p| !seen.contains(p)) {
        return Err(CobError::UnmatchedPoint(p));
    }
    out.sort_unstable();
    Ok(out)
}

/// A 1-dimensional oriented cobordism up to diffeomorphism rel boundary.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cob1Mor {
    source: SignedWord,
    target: SignedWord,
    pairs: Vec<(Point, Point)>,
    circles: usize,
}

impl Cob1Mor {
    pub fn new(
        source: SignedWord,
        target: SignedWord,
        pairs: impl IntoIterator<Item = (Point, Point)>,
        circles: usize,
    ) -> Result<Self, CobError> {
        let pairs = canonical_matching(&source.0, &target.0, pairs)?;
        Ok(Self { source, target, pairs, circles })
    }

    pub fn source(&self) -> &SignedWord {
        &self.source
    }

    pub fn target(&self) -> &SignedWord {
        &self.target
    }

    /// Canonical order: each pair has its least point first, pairs sorted.
    pub fn pairs(&self) -> &[(Point, Point)] {
        &self.pairs
    }

    pub fn circles(&self) -> usize {
        self.circles
    }

    pub fn with_circles(&self, circles: usize) -> Self {
        Self { circles, ..self.clone() }
    }

    pub fn identity(w: &SignedWord) -> Self {
        let pairs = (0..w.len()).map(|k| (Point::Source(k), Point::Target(k))).collect();
        Self { source: w.clone(), target: w.clone(), pairs, circles: 0 }
    }

    /// `ev_w: w ⊗ w* → ∅`, pairing position `k` with its mirror.
    pub fn ev(w: &SignedWord) -> Self {
        let n = w.len();
        let pairs = (0..n).map(|k| (Point::Source(k), Point::Source(2 * n - 1 - k))).collect();
        Self { source: w.concat(&w.dual()), target: SignedWord::empty(), pairs, circles: 0 }
    }

    /// `coev_w: ∅ → w* ⊗ w`, pairing position `k` with its mirror.
    pub fn coev(w: &SignedWord) -> Self {
        let n = w.len();
        let pairs = (0..n).map(|k| (Point::Target(k), Point::Target(2 * n - 1 - k))).collect();
        Self { source: SignedWord::empty(), target: w.dual().concat(w), pairs, circles: 0 }
    }

    /// A closed cobordism: `circles` circles, no boundary.
    pub fn closed(circles: usize) -> Self {
        Self { source: SignedWord::empty(), target: SignedWord::empty(), pairs: Vec::new(), circles }
    }

    fn partner(&self, p: Point) -> Point {
        self.pairs
            .iter()
            .find_map(|&(a, b)| {
                if a == p {
                    Some(b)
                } else if b == p {
                    Some(a)
                } else {
                    None
                }
            })
            .expect("perfect matching")
    }
}

impl fmt::Display for Cob1Mor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} → {} [", self.source, self.target)?;
        for (i, (a, b)) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{a}-{b}")?;
        }
        write!(f, "] ○{}", self.circles)
    }
}

/// `g ∘ f`: glue along the middle word, follow strands, count new circles.
pub fn cob_compose(g: &Cob1Mor, f: &Cob1Mor) -> Result<Cob1Mor, CobError> {
    if f.target != g.source {
        return Err(CobError::BoundaryMismatch(f.target.to_string(), g.source.to_string()));
    }
    let middle = f.target.len();
    let mut middle_seen = vec![false; middle];

    // Follows a strand from an outer point until it exits at another outer point.
    let mut follow = |start: Point, mut in_f: bool| -> Point {
        let mut p = start;
        loop {
            let q = if in_f { f.partner(p) } else { g.partner(p) };
            match (in_f, q) {
                (true, Point::Source(_)) => return q,
                (false, Point::Target(_)) => return q,
                (true, Point::Target(l)) => {
                    middle_seen[l] = true;
                    in_f = false;
                    p = Point::Source(l);
                }
                (false, Point::Source(l)) => {
                    middle_seen[l] = true;
                    in_f = true;
                    p = Point::Target(l);
                }
            }
        }
    };

    let mut pairs = Vec::new();
    let mut outer_seen = std::collections::BTreeSet::new();
    let outer = (0..f.source.len())
        .map(|k| (Point::Source(k), true))
        .chain((0..g.target.len()).map(|k| (Point::Target(k), false)));
    for (p, in_f) in outer {
        if outer_seen.contains(&p) {
            continue;
        }
        let q = follow(p, in_f);
        outer_seen.insert(p);
        outer_seen.insert(q);
        pairs.push((p, q));
    }

    let mut new_circles = 0;
    for l in 0..middle {
        if middle_seen[l] {
            continue;
        }
        new_circles += 1;
        let mut k = l;
        loop {
            middle_seen[k] = true;
            let Point::Target(next) = f.partner(Point::Target(k)) else {
                unreachable!("middle point reached an outer point on a closed strand")
            };
            middle_seen[next] = true;
            let Point::Source(back) = g.partner(Point::Source(next)) else {
                unreachable!("middle point reached an outer point on a closed strand")
            };
            if back == l {
                break;
            }
            k = back;
        }
    }

    Cob1Mor::new(f.source.clone(), g.target.clone(), pairs, f.circles + g.circles + new_circles)
}

fn shift(p: Point, source_offset: usize, target_offset: usize) -> Point {
    match p {
        Point::Source(k) => Point::Source(k + source_offset),
        Point::Target(k) => Point::Target(k + target_offset),
    }
}

/// Side-by-side juxtaposition `f ⊗ g`.
pub fn cob_tensor(f: &Cob1Mor, g: &Cob1Mor) -> Cob1Mor {
    let (so, to) = (f.source.len(), f.target.len());
    let pairs = f.pairs.iter().copied().chain(g.pairs.iter().map(|&(a, b)| (shift(a, so, to), shift(b, so, to))));
    Cob1Mor::new(f.source.concat(&g.source), f.target.concat(&g.target), pairs, f.circles + g.circles)
        .expect("juxtaposition of matchings is a matching")
}

/// `s_{w1,w2}: w1 ⊗ w2 → w2 ⊗ w1`, the block transposition.
pub fn cob_symmetry(w1: &SignedWord, w2: &SignedWord) -> Cob1Mor {
    let (a, b) = (w1.len(), w2.len());
    let pairs = (0..a)
        .map(|k| (Point::Source(k), Point::Target(b + k)))
        .chain((0..b).map(|k| (Point::Source(a + k), Point::Target(k))));
    Cob1Mor::new(w1.concat(w2), w2.concat(w1), pairs, 0).expect("block transposition is a matching")
}

pub fn cob_dual(w: &SignedWord) -> SignedWord {
    w.dual()
}

/// Every morphism `w1 → w2` with at most `max_circles` circles, in
/// canonical order.
pub fn cob_enumerate_homs(w1: &SignedWord, w2: &SignedWord, max_circles: usize) -> Vec<Cob1Mor> {
    let points: Vec<Point> = boundary_points(w1.len(), w2.len()).collect();
    let (plus, minus): (Vec<Point>, Vec<Point>) = points.iter().partition(|&&p| epsilon(&w1.0, &w2.0, p) == Some(1));
    if plus.len() != minus.len() {
        return Vec::new();
    }
    let mut out: Vec<Cob1Mor> = minus
        .iter()
        .copied()
        .permutations(minus.len())
        .flat_map(|perm| {
            let base = Cob1Mor::new(w1.clone(), w2.clone(), plus.iter().copied().zip(perm), 0)
                .expect("ε-balanced bijection is a valid matching");
            (0..=max_circles).map(move |c| base.with_circles(c))
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// The cobordism category as a [`SymmetricMonoidal`] instance.
#[derive(Clone, Copy, Debug, Default)]
pub struct Cob;

impl SymmetricMonoidal for Cob {
    type Obj = SignedWord;
    type Mor = Cob1Mor;

    fn unit_object(&self) -> SignedWord {
        SignedWord::empty()
    }

    fn tensor_objects(&self, a: &SignedWord, b: &SignedWord) -> SignedWord {
        a.concat(b)
    }

    fn dom(&self, f: &Cob1Mor) -> SignedWord {
        f.source.clone()
    }

    fn cod(&self, f: &Cob1Mor) -> SignedWord {
        f.target.clone()
    }

    fn identity_on(&self, a: &SignedWord) -> Cob1Mor {
        Cob1Mor::identity(a)
    }

    fn compose(&self, g: &Cob1Mor, f: &Cob1Mor) -> Option<Cob1Mor> {
        cob_compose(g, f).ok()
    }

    fn tensor_morphisms(&self, f: &Cob1Mor, g: &Cob1Mor) -> Cob1Mor {
        cob_tensor(f, g)
    }

    fn braiding(&self, a: &SignedWord, b: &SignedWord) -> Cob1Mor {
        cob_symmetry(a, b)
    }
}

/// File form of a cobordism: `"source": "+-"`, `"pairs": [["s0", "s1"]]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawCob {
    pub source: String,
    pub target: String,
    pub pairs: Vec<[String; 2]>,
    #[serde(default)]
    pub circles: usize,
}

impl TryFrom<&RawCob> for Cob1Mor {
    type Error = CobError;

    fn try_from(raw: &RawCob) -> Result<Self, Self::Error> {
        let pairs =
            raw.pairs.iter().map(|[a, b]| Ok((a.parse()?, b.parse()?))).collect::<Result<Vec<_>, CobError>>()?;
        Cob1Mor::new(raw.source.parse()?, raw.target.parse()?, pairs, raw.circles)
    }
}

impl From<&Cob1Mor> for RawCob {
    fn from(m: &Cob1Mor) -> Self {
        let word = |w: &SignedWord| w.0.iter().map(|s| s.symbol()).collect();
        RawCob {
            source: word(&m.source),
            target: word(&m.target),
            pairs: m.pairs.iter().map(|(a, b)| [a.to_string(), b.to_string()]).collect(),
            circles: m.circles,
        }
    }
}
