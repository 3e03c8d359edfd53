//! Structural invariants of finite loops.

use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::catalog;
use crate::perm::Permutation;
use crate::table::{Element, LoopTable, MAX_ORDER};

/// A subset of `0..n`, as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet {
    order: u8,
    bits: u64,
}

impl ElementSet {
    pub fn empty(order: usize) -> Self {
        debug_assert!(order <= MAX_ORDER);
        ElementSet { order: order as u8, bits: 0 }
    }

    pub fn full(order: usize) -> Self {
        let bits = if order == 64 { u64::MAX } else { (1u64 << order) - 1 };
        ElementSet { order: order as u8, bits }
    }

    pub fn from_elements(order: usize, elems: impl IntoIterator<Item = Element>) -> Self {
        let mut s = Self::empty(order);
        for e in elems {
            s.insert(e);
        }
        s
    }

    pub fn from_predicate(table: &LoopTable, mut pred: impl FnMut(Element) -> bool) -> Self {
        Self::from_elements(table.order(), table.elements().filter(|&e| pred(e)))
    }

    #[inline]
    pub fn contains(&self, e: Element) -> bool {
        self.bits >> e & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, e: Element) {
        debug_assert!((e as usize) < self.order as usize);
        self.bits |= 1 << e;
    }

    pub fn order(&self) -> usize {
        self.order as usize
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn is_full(&self) -> bool {
        *self == Self::full(self.order())
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        ElementSet { order: self.order, bits: self.bits & other.bits }
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        ElementSet { order: self.order, bits: self.bits | other.bits }
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = Element> {
        let bits = self.bits;
        (0..self.order).filter(move |&e| bits >> e & 1 == 1)
    }

    pub fn to_vec(&self) -> Vec<Element> {
        self.iter().collect()
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for ElementSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("set is not a subloop")]
    NotASubloop,
    #[error("subloop is not normal")]
    NotNormal,
    #[error("order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
}

fn all_pairs(table: &LoopTable, mut f: impl FnMut(Element, Element) -> bool) -> bool {
    table.elements().all(|x| table.elements().all(|y| f(x, y)))
}

/// `{a : a(xy) = (ax)y}`.
pub fn left_nucleus(t: &LoopTable) -> ElementSet {
    ElementSet::from_predicate(t, |a| all_pairs(t, |x, y| t.mul(a, t.mul(x, y)) == t.mul(t.mul(a, x), y)))
}

/// `{a : x(ay) = (xa)y}`.
pub fn middle_nucleus(t: &LoopTable) -> ElementSet {
    ElementSet::from_predicate(t, |a| all_pairs(t, |x, y| t.mul(x, t.mul(a, y)) == t.mul(t.mul(x, a), y)))
}

/// `{a : x(ya) = (xy)a}`.
pub fn right_nucleus(t: &LoopTable) -> ElementSet {
    ElementSet::from_predicate(t, |a| all_pairs(t, |x, y| t.mul(x, t.mul(y, a)) == t.mul(t.mul(x, y), a)))
}

pub fn nucleus(t: &LoopTable) -> ElementSet {
    left_nucleus(t).intersection(&middle_nucleus(t)).intersection(&right_nucleus(t))
}

pub fn commutant(t: &LoopTable) -> ElementSet {
    ElementSet::from_predicate(t, |c| t.elements().all(|x| t.mul(c, x) == t.mul(x, c)))
}

pub fn center(t: &LoopTable) -> ElementSet {
    nucleus(t).intersection(&commutant(t))
}

/// Elements `c` with `c (xc)^rho = x^rho` for every `x`.
pub fn wip_elements(t: &LoopTable) -> ElementSet {
    ElementSet::from_predicate(t, |c| {
        t.elements().all(|x| t.mul(c, t.right_inverse(t.mul(x, c))) == t.right_inverse(x))
    })
}

/// Every `L(x)^-1 L(y) L(x)` is a left translation.
///
/// The conjugate sends `t` to `x(y(x\t))`; if it is a left translation
/// it is `L(w)` with `w` its image of `1`.
pub fn is_lcc(t: &LoopTable) -> bool {
    all_pairs(t, |x, y| {
        let w = t.mul(x, t.mul(y, t.ldiv(x, 0)));
        t.elements().all(|s| t.mul(x, t.mul(y, t.ldiv(x, s))) == t.mul(w, s))
    })
}

/// Every `R(x)^-1 R(y) R(x)` is a right translation.
pub fn is_rcc(t: &LoopTable) -> bool {
    all_pairs(t, |x, y| {
        let w = t.mul(t.mul(t.rdiv(0, x), y), x);
        t.elements().all(|s| t.mul(t.mul(t.rdiv(s, x), y), x) == t.mul(s, w))
    })
}

pub fn is_cc(t: &LoopTable) -> bool {
    is_lcc(t) && is_rcc(t)
}

/// `R(x)^2 = L(x)^2` for all `x`: `(yx)x = x(xy)`.
pub fn squares_translation(t: &LoopTable) -> bool {
    all_pairs(t, |x, y| t.mul(t.mul(y, x), x) == t.mul(x, t.mul(x, y)))
}

/// `R(x^2) = L(x^2)` for all `x`: every square commutes with everything.
pub fn square_central_translation(t: &LoopTable) -> bool {
    all_pairs(t, |x, y| {
        let sq = t.mul(x, x);
        t.mul(y, sq) == t.mul(sq, y)
    })
}

/// Least subloop containing `gens`: closure under `*`, `\` and `/`.
pub fn subloop_generated(t: &LoopTable, gens: &ElementSet) -> ElementSet {
    let mut set = *gens;
    set.insert(0);
    let mut members = set.to_vec();
    let mut i = 0;
    // every new pair involves the newest member, so a worklist suffices
    while i < members.len() {
        let a = members[i];
        let mut j = 0;
        while j <= i {
            let b = members[j];
            for c in [t.mul(a, b), t.mul(b, a), t.ldiv(a, b), t.ldiv(b, a), t.rdiv(a, b), t.rdiv(b, a)] {
                if !set.contains(c) {
                    set.insert(c);
                    members.push(c);
                }
            }
            j += 1;
        }
        i += 1;
    }
    set
}

pub fn is_subloop(t: &LoopTable, h: &ElementSet) -> bool {
    h.contains(0)
        && h.iter().all(|a| {
            h.iter().all(|b| h.contains(t.mul(a, b)) && h.contains(t.ldiv(a, b)) && h.contains(t.rdiv(a, b)))
        })
}

/// Every singly generated subloop is associative.
pub fn is_power_associative(t: &LoopTable) -> bool {
    t.elements().all(|x| {
        let h = subloop_generated(t, &ElementSet::from_elements(t.order(), [x]));
        h.iter().all(|a| h.iter().all(|b| h.iter().all(|c| t.mul(t.mul(a, b), c) == t.mul(a, t.mul(b, c)))))
    })
}

/// Invariance of `h` under the inner mappings `t -> (xy)\(x(yt))`,
/// `t -> ((ty)x)/(yx)` and `t -> x\(tx)`.
pub fn is_normal(t: &LoopTable, h: &ElementSet) -> Result<bool, StructureError> {
    if h.order() != t.order() || !is_subloop(t, h) {
        return Err(StructureError::NotASubloop);
    }
    let maps_in = |f: &dyn Fn(Element) -> Element| h.iter().all(|s| h.contains(f(s)));
    let normal = t.elements().all(|x| {
        maps_in(&|s| t.ldiv(x, t.mul(s, x)))
            && t.elements().all(|y| {
                maps_in(&|s| t.ldiv(t.mul(x, y), t.mul(x, t.mul(y, s))))
                    && maps_in(&|s| t.rdiv(t.mul(t.mul(s, y), x), t.mul(y, x)))
            })
    });
    Ok(normal)
}

/// A quotient together with the projection onto it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    pub table: LoopTable,
    /// `projection[x]` is the coset of `x`.
    pub projection: Vec<Element>,
}

/// `Q / H` on cosets ordered by least member; the coset of `1` is `0`.
pub fn quotient(t: &LoopTable, h: &ElementSet) -> Result<Quotient, StructureError> {
    if !is_normal(t, h)? {
        return Err(StructureError::NotNormal);
    }
    let n = t.order();
    let mut projection = alloc::vec![Element::MAX; n];
    let mut reps = Vec::new();
    for x in t.elements() {
        if projection[x as usize] != Element::MAX {
            continue;
        }
        let k = reps.len() as Element;
        reps.push(x);
        for s in h.iter() {
            projection[t.mul(x, s) as usize] = k;
        }
    }
    let m = reps.len();
    let mut cells = Vec::with_capacity(m * m);
    for &a in &reps {
        for &b in &reps {
            cells.push(projection[t.mul(a, b) as usize]);
        }
    }
    Ok(Quotient { table: LoopTable::from_cells_unchecked(m, cells), projection })
}

/// The upper central series `Z_0 = {1} <= Z_1 <= ...`, up to `Q` or until it
/// stops growing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralSeries {
    pub terms: Vec<ElementSet>,
}

impl CentralSeries {
    /// Least `k` with `Z_k = Q`, or `None` if the series stalls below `Q`.
    pub fn class(&self) -> Option<usize> {
        let last = self.terms.last()?;
        last.is_full().then(|| self.terms.len() - 1)
    }
}

pub fn central_series(t: &LoopTable) -> CentralSeries {
    let mut terms = alloc::vec![ElementSet::from_elements(t.order(), [0])];
    loop {
        let current = *terms.last().unwrap();
        if current.is_full() {
            break;
        }
        let q = quotient(t, &current).expect("terms of the upper central series are normal");
        let z = center(&q.table);
        let next = ElementSet::from_predicate(t, |x| z.contains(q.projection[x as usize]));
        if next == current {
            break;
        }
        terms.push(next);
    }
    CentralSeries { terms }
}

pub fn nilpotency_class(t: &LoopTable) -> Option<usize> {
    central_series(t).class()
}

/// Lexicographically least relabeling of `t` fixing `0`, and the relabeling
/// (`labels[element] = new label`) that produces it.
pub fn canonical_labeling(t: &LoopTable) -> (LoopTable, Permutation) {
    let n = t.order();
    if n <= 2 {
        return (t.clone(), Permutation::identity(n));
    }
    let mut search = CanonSearch {
        t,
        n,
        label_of: alloc::vec![None; n],
        elem_of: alloc::vec![None; n],
        next_label: 1,
        current: alloc::vec![0; (n - 1) * (n - 1)],
        best: None,
        best_labels: Vec::new(),
        updates: 0,
    };
    search.label_of[0] = Some(0);
    search.elem_of[0] = Some(0);
    search.visit(0, false);
    let labels = Permutation::from_images_unchecked(search.best_labels);
    (t.relabeled(&labels), labels)
}

pub fn canonical_form(t: &LoopTable) -> LoopTable {
    canonical_labeling(t).0
}

pub fn is_isomorphic(a: &LoopTable, b: &LoopTable) -> bool {
    a.order() == b.order() && canonical_form(a) == canonical_form(b)
}

/// Branch and bound over relabelings, comparing the non-trivial block
/// (rows and columns `1..n`) in row-major order.
///
/// Labels are handed out in increasing order. An entry whose element is
/// still unlabeled always gets the next free label: any other choice makes
/// that entry larger. Branching only happens when a row or column label is
/// needed before its element has appeared as an entry.
struct CanonSearch<'a> {
    t: &'a LoopTable,
    n: usize,
    label_of: Vec<Option<Element>>,
    elem_of: Vec<Option<Element>>,
    next_label: usize,
    current: Vec<Element>,
    best: Option<Vec<Element>>,
    best_labels: Vec<Element>,
    updates: usize,
}

impl CanonSearch<'_> {
    fn bind(&mut self, elem: Element) {
        let l = self.next_label as Element;
        self.label_of[elem as usize] = Some(l);
        self.elem_of[l as usize] = Some(elem);
        self.next_label += 1;
    }

    fn unbind_last(&mut self) {
        self.next_label -= 1;
        let elem = self.elem_of[self.next_label].take().unwrap();
        self.label_of[elem as usize] = None;
    }

    fn visit(&mut self, pos: usize, strictly_less: bool) {
        let m = self.n - 1;
        if pos == m * m {
            if strictly_less || self.best.is_none() {
                self.best = Some(self.current.clone());
                self.updates += 1;
                self.best_labels = self.label_of.iter().map(|l| l.unwrap()).collect();
            }
            return;
        }
        let (i, j) = (1 + pos / m, 1 + pos % m);
        let need = if self.elem_of[i].is_none() {
            Some(i)
        } else if self.elem_of[j].is_none() {
            Some(j)
        } else {
            None
        };
        match need {
            Some(l) => {
                debug_assert_eq!(l, self.next_label);
                let mut less = strictly_less;
                for e in 1..self.n as Element {
                    if self.label_of[e as usize].is_none() {
                        let updates = self.updates;
                        self.bind(e);
                        self.visit(pos, less);
                        self.unbind_last();
                        // a new best shares this prefix
                        if self.updates != updates {
                            less = false;
                        }
                    }
                }
            }
            None => {
                let v = self.t.mul(self.elem_of[i].unwrap(), self.elem_of[j].unwrap());
                let fresh = self.label_of[v as usize].is_none();
                if fresh {
                    self.bind(v);
                }
                let label = self.label_of[v as usize].unwrap();
                let mut less = strictly_less;
                let prune = match (&self.best, strictly_less) {
                    (Some(best), false) => {
                        if label > best[pos] {
                            true
                        } else {
                            less = label < best[pos];
                            false
                        }
                    }
                    _ => false,
                };
                if !prune {
                    self.current[pos] = label;
                    self.visit(pos + 1, less);
                }
                if fresh {
                    self.unbind_last();
                }
            }
        }
    }
}

/// `f(x) * g(y) = h(x * y)` for all `x, y`, products in `l2` and `l1`.
pub fn is_isotopism(
    f: &Permutation,
    g: &Permutation,
    h: &Permutation,
    l1: &LoopTable,
    l2: &LoopTable,
) -> Result<bool, StructureError> {
    let n = l1.order();
    for other in [l2.order(), f.len(), g.len(), h.len()] {
        if other != n {
            return Err(StructureError::OrderMismatch(n, other));
        }
    }
    Ok(all_pairs(l1, |x, y| l2.mul(f.apply(x), g.apply(y)) == h.apply(l1.mul(x, y))))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Flags {
    pub lcc: bool,
    pub rcc: bool,
    pub cc: bool,
    pub wip: bool,
    pub power_associative: bool,
    pub flexible: bool,
    pub lap: bool,
    pub rap: bool,
    pub left_cheban: bool,
    pub right_cheban: bool,
    pub cheban: bool,
    pub moufang: bool,
    pub extra: bool,
    pub squares_translation: bool,
    pub square_central_translation: bool,
}

/// Every invariant computed by [`analyze`].
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct StructureReport {
    pub left_nucleus: ElementSet,
    pub middle_nucleus: ElementSet,
    pub right_nucleus: ElementSet,
    pub nucleus: ElementSet,
    pub commutant: ElementSet,
    pub center: ElementSet,
    pub nilpotency_class: Option<usize>,
    pub flags: Flags,
}

pub fn analyze(t: &LoopTable) -> StructureReport {
    let left_nucleus = left_nucleus(t);
    let middle_nucleus = middle_nucleus(t);
    let right_nucleus = right_nucleus(t);
    let nucleus = left_nucleus.intersection(&middle_nucleus).intersection(&right_nucleus);
    let commutant = commutant(t);
    let holds = |name: &str| catalog::lookup(name).expect("known name").holds(t);
    let lcc = is_lcc(t);
    let rcc = is_rcc(t);
    let flags = Flags {
        lcc,
        rcc,
        cc: lcc && rcc,
        wip: wip_elements(t).is_full(),
        power_associative: is_power_associative(t),
        flexible: holds("flexible"),
        lap: holds("lap"),
        rap: holds("rap"),
        left_cheban: holds("left_cheban"),
        right_cheban: holds("right_cheban"),
        cheban: holds("cheban"),
        moufang: holds("moufang"),
        extra: holds("extra"),
        squares_translation: squares_translation(t),
        square_central_translation: square_central_translation(t),
    };
    StructureReport {
        left_nucleus,
        middle_nucleus,
        right_nucleus,
        nucleus,
        commutant,
        center: nucleus.intersection(&commutant),
        nilpotency_class: nilpotency_class(t),
        flags,
    }
}
