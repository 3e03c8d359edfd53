//! Finite-model checks of the structural theorems about Cheban loops.
//!
//! Each claim is checked over enumerated families of loops (up to
//! isomorphism) plus two fixed tables: the order-8 left Cheban example and
//! the Heisenberg group of order 27. Unconstrained families are enumerated
//! to a smaller order than families cut down by Cheban-type identities.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::catalog;
use crate::models;
use crate::search::{enumerate, Limits, Mode, SearchError, SearchSpec};
use crate::structure::{self as st, ElementSet};
use crate::table::{Element, LoopTable};
use crate::term::Identity;

/// Default bound for enumerations without identity constraints.
pub const UNCONSTRAINED_BOUND: usize = 6;
/// Default bound for enumerations constrained by Cheban-type identities.
pub const CONSTRAINED_BOUND: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ClaimResult {
    pub claim_id: &'static str,
    pub statement: &'static str,
    pub scope: String,
    pub verdict: Verdict,
    pub loops_checked: usize,
    /// Counterexamples on failure.
    #[cfg_attr(feature = "serde", serde(skip))]
    pub witnesses: Vec<LoopTable>,
    pub note: Option<String>,
}

/// Identifiers accepted by [`Harness::run_claim`], in suite order.
pub const CLAIM_IDS: &[&str] = &[
    "ex_3_3",
    "ex_3_3_minimality",
    "center_basics",
    "lcc_identity_agreement",
    "thm_3_1",
    "rem_3_2",
    "thm_3_2",
    "thm_3_4",
    "lem_3_5",
    "lem_3_6",
    "lem_3_7",
    "lem_3_8",
    "thm_3_9",
    "thm_3_10",
    "rem_3_11",
    "rem_3_12",
];

/// The two fixed tables every claim also looks at.
#[derive(Debug, Clone)]
pub struct FixedModels {
    pub example: LoopTable,
    pub heisenberg: LoopTable,
}

impl Default for FixedModels {
    fn default() -> Self {
        FixedModels { example: models::example_3_3(), heisenberg: models::heisenberg_27() }
    }
}

/// Families of loops by order, each up to isomorphism (canonical forms).
type Family = Vec<Vec<LoopTable>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Fam {
    All,
    LeftCheban,
    RightCheban,
    Cheban,
    LccSquares,
    LeftAndRightCheban,
    LccSquareCentral,
}

/// Runs claims, caching the enumerated families between them.
pub struct Harness {
    max_order: usize,
    limits: Limits,
    models: FixedModels,
    cache: Vec<(Fam, Result<Family, SearchError>)>,
}

struct Check {
    checked: usize,
    witnesses: Vec<LoopTable>,
    notes: Vec<String>,
}

impl Check {
    fn new() -> Self {
        Check { checked: 0, witnesses: Vec::new(), notes: Vec::new() }
    }

    fn expect(&mut self, t: &LoopTable, ok: bool) {
        self.checked += 1;
        if !ok && self.witnesses.len() < 8 && !self.witnesses.contains(t) {
            self.witnesses.push(t.clone());
        }
    }

    fn fail_note(&mut self, note: String) {
        self.notes.push(note);
    }
}

impl Harness {
    pub fn new(max_order: usize, limits: Limits) -> Self {
        Self::with_models(max_order, limits, FixedModels::default())
    }

    pub fn with_models(max_order: usize, limits: Limits, models: FixedModels) -> Self {
        Harness { max_order, limits, models, cache: Vec::new() }
    }

    fn unconstrained_bound(&self) -> usize {
        self.max_order.min(UNCONSTRAINED_BOUND)
    }

    fn constrained_bound(&self) -> usize {
        self.max_order.min(CONSTRAINED_BOUND)
    }

    fn family(&mut self, fam: Fam) -> Result<Family, SearchError> {
        if let Some((_, f)) = self.cache.iter().find(|(k, _)| *k == fam) {
            return f.clone();
        }
        let ids = |names: &[&str]| -> Vec<Identity> { names.iter().map(|n| catalog::lookup(n).unwrap()).collect() };
        let (constraints, bound, rcc_filter) = match fam {
            Fam::All => (Vec::new(), self.unconstrained_bound(), false),
            Fam::LeftCheban => (ids(&["left_cheban"]), self.constrained_bound(), false),
            Fam::RightCheban => (ids(&["right_cheban"]), self.constrained_bound(), false),
            Fam::Cheban => (ids(&["cheban"]), self.constrained_bound(), false),
            Fam::LccSquares => (ids(&["lcc", "squares_translation"]), self.constrained_bound(), false),
            Fam::LeftAndRightCheban => (ids(&["left_cheban", "right_cheban"]), self.constrained_bound(), false),
            Fam::LccSquareCentral => (ids(&["lcc", "square_central_translation"]), self.constrained_bound(), true),
        };
        let mut result = Ok(Vec::new());
        for n in 1..=bound {
            let spec = SearchSpec {
                order: n,
                constraints: constraints.clone(),
                mode: Mode::UpToIsomorphism,
                predicate: None,
                limits: self.limits,
            };
            match enumerate(&spec) {
                Ok(e) if e.complete => {
                    let mut tables = e.tables;
                    if rcc_filter {
                        tables.retain(st::is_rcc);
                    }
                    if let Ok(f) = result.as_mut() {
                        f.push(tables);
                    }
                }
                Ok(e) => {
                    result = Err(SearchError::BudgetExceeded { nodes: e.stats.nodes_expanded });
                    break;
                }
                Err(err) => {
                    result = Err(err);
                    break;
                }
            }
        }
        self.cache.push((fam, result.clone()));
        result
    }

    fn flat(&mut self, fam: Fam) -> Result<Vec<LoopTable>, SearchError> {
        Ok(self.family(fam)?.into_iter().flatten().collect())
    }

    /// Members of the enumerated family plus whichever fixed models satisfy
    /// `member`.
    fn with_fixed(&mut self, fam: Fam, member: impl Fn(&LoopTable) -> bool) -> Result<Vec<LoopTable>, SearchError> {
        let mut v = self.flat(fam)?;
        for m in [self.models.example.clone(), self.models.heisenberg.clone()] {
            if member(&m) {
                v.push(m);
            }
        }
        Ok(v)
    }

    fn fixed(&self) -> [LoopTable; 2] {
        [self.models.example.clone(), self.models.heisenberg.clone()]
    }

    pub fn run_suite(&mut self) -> Vec<ClaimResult> {
        CLAIM_IDS.iter().map(|id| self.run_claim(id).expect("known claim")).collect()
    }

    /// Runs one claim; `None` for an unknown id.
    pub fn run_claim(&mut self, claim_id: &str) -> Option<ClaimResult> {
        let u = self.unconstrained_bound();
        let c = self.constrained_bound();
        let (id, statement, scope, outcome) = match claim_id {
            "ex_3_3" => (
                "ex_3_3",
                "the order-8 example is a left Cheban loop in which 1 is nuclear but not central",
                String::from("embedded example table"),
                Ok(self.example_fidelity()),
            ),
            "ex_3_3_minimality" => (
                "ex_3_3_minimality",
                "no left Cheban loop of smaller order than 8 has a nuclear non-central element",
                format!("left Cheban loops of order ≤ {c}"),
                self.minimality(),
            ),
            "center_basics" => (
                "center_basics",
                "Z = N ∩ C, Z ⊆ C, Z ⊆ N, and the center is a normal subloop",
                format!("all loops of order ≤ {u} and the fixed models"),
                self.center_basics(),
            ),
            "lcc_identity_agreement" => (
                "lcc_identity_agreement",
                "LCC by conjugation of left translations agrees with the LCC identity",
                format!("all loops of order ≤ {u} and the fixed models"),
                self.lcc_agreement(),
            ),
            "thm_3_1" => (
                "thm_3_1",
                "left Cheban <=> LCC and R(x)^2 = L(x)^2",
                format!("canonical-form sets: all loops of order ≤ {u}; constrained searches to order {c}"),
                self.thm_3_1(),
            ),
            "rem_3_2" => (
                "rem_3_2",
                "left Cheban loops satisfy (xy.x).xz = x.(yx.x)z",
                format!("left Cheban loops of order ≤ {c} and the fixed models"),
                self.over_left_cheban(|t, chk| {
                    chk.expect(t, catalog::lookup("wippacc_ax1").unwrap().holds(t));
                }),
            ),
            "thm_3_2" => (
                "thm_3_2",
                "in left Cheban loops N_λ = N_μ is normal, C ≤ N, and a ∈ N_λ implies a^2 ∈ Z",
                format!("left Cheban loops of order ≤ {c} and the fixed models"),
                self.over_left_cheban(|t, chk| chk.expect(t, thm_3_2_holds(t))),
            ),
            "thm_3_4" => (
                "thm_3_4",
                "in left Cheban loops WIP elements have central squares, squares are WIP, fourth powers are central",
                format!("left Cheban loops of order ≤ {c} and the fixed models"),
                self.over_left_cheban(|t, chk| chk.expect(t, thm_3_4_holds(t))),
            ),
            "lem_3_5" => (
                "lem_3_5",
                "Cheban <=> left Cheban and right Cheban",
                format!("canonical-form sets to order {c}; all loops of order ≤ {u}"),
                self.lem_3_5(),
            ),
            "lem_3_6" => (
                "lem_3_6",
                "a left Cheban loop that is WIP or has R(x^2) = L(x^2) is Cheban",
                format!("left Cheban loops of order ≤ {c} and the fixed models"),
                self.over_left_cheban(|t, chk| {
                    let wip = st::wip_elements(t).is_full();
                    let sq = st::square_central_translation(t);
                    chk.expect(t, !(wip || sq) || catalog::cheban().holds(t));
                }),
            ),
            "lem_3_7" => (
                "lem_3_7",
                "a flexible or RAP left Cheban loop is extra",
                format!("left Cheban loops of order ≤ {c} and the fixed models"),
                self.over_left_cheban(|t, chk| {
                    let hyp = catalog::lookup("flexible").unwrap().holds(t) || catalog::lookup("rap").unwrap().holds(t);
                    chk.expect(t, !hyp || catalog::lookup("extra").unwrap().holds(t));
                }),
            ),
            "lem_3_8" => (
                "lem_3_8",
                "in CC loops R(x^2) = L(x^2) <=> R(x)^2 = L(x)^2",
                format!("CC loops of order ≤ {u}, Cheban loops of order ≤ {c}, and the fixed models"),
                self.lem_3_8(),
            ),
            "thm_3_9" => (
                "thm_3_9",
                "Cheban <=> CC and R(x^2) = L(x^2)",
                format!("canonical-form sets: all loops of order ≤ {u}; constrained searches to order {c}"),
                self.thm_3_9(),
            ),
            "thm_3_10" => (
                "thm_3_10",
                "Cheban loops are WIP PACC loops of nilpotency class at most 2",
                format!("Cheban loops of order ≤ {c} and the fixed models"),
                self.thm_3_10(),
            ),
            "rem_3_11" => (
                "rem_3_11",
                "the Heisenberg group of order 27 is WIP PACC of class 2 but not Cheban",
                String::from("Heisenberg group of order 27"),
                Ok(self.rem_3_11()),
            ),
            "rem_3_12" => (
                "rem_3_12",
                "a left, right or two-sided Cheban loop in which every element is a square or an involution is an abelian group",
                format!("left, right and two-sided Cheban loops of order ≤ {c} and the fixed models"),
                self.rem_3_12(),
            ),
            _ => return None,
        };
        Some(match outcome {
            Ok(chk) => ClaimResult {
                claim_id: id,
                statement,
                scope,
                verdict: if chk.witnesses.is_empty() && chk.notes.is_empty() { Verdict::Pass } else { Verdict::Fail },
                loops_checked: chk.checked,
                note: (!chk.notes.is_empty()).then(|| chk.notes.join("; ")).or_else(|| claim_note(id)),
                witnesses: chk.witnesses,
            },
            Err(e) => ClaimResult {
                claim_id: id,
                statement,
                scope,
                verdict: Verdict::Skipped,
                loops_checked: 0,
                witnesses: Vec::new(),
                note: Some(format!("{e}")),
            },
        })
    }

    fn example_fidelity(&self) -> Check {
        let mut chk = Check::new();
        let t = &self.models.example;
        let ok = t.order() == 8
            && catalog::left_cheban().holds(t)
            && st::nucleus(t).contains(1)
            && !st::center(t).contains(1);
        chk.expect(t, ok);
        chk
    }

    fn minimality(&mut self) -> Result<Check, SearchError> {
        let fam = self.family(Fam::LeftCheban)?;
        let mut chk = Check::new();
        let pred = |t: &LoopTable| !st::nucleus(t).is_subset(&st::center(t));
        for (i, tables) in fam.iter().enumerate() {
            let n = i + 1;
            for t in tables {
                chk.checked += 1;
                if n < 8 && pred(t) {
                    chk.witnesses.push(t.clone());
                }
            }
            if n == 8 {
                let target = st::canonical_form(&self.models.example);
                let hit = tables.iter().any(|t| pred(t) && *t == target);
                if !hit {
                    chk.fail_note(String::from("no order-8 left Cheban loop with a nuclear non-central element is isomorphic to the example"));
                    chk.witnesses.push(self.models.example.clone());
                }
            }
        }
        Ok(chk)
    }

    fn center_basics(&mut self) -> Result<Check, SearchError> {
        let mut chk = Check::new();
        let mut tables = self.flat(Fam::All)?;
        tables.extend(self.fixed());
        for t in &tables {
            let n = st::nucleus(t);
            let c = st::commutant(t);
            let z = st::center(t);
            let ok = z == n.intersection(&c)
                && z.is_subset(&c)
                && z.is_subset(&n)
                && st::left_nucleus(t).intersection(&st::middle_nucleus(t)).intersection(&st::right_nucleus(t)) == n
                && st::is_normal(t, &z) == Ok(true);
            chk.expect(t, ok);
        }
        Ok(chk)
    }

    fn lcc_agreement(&mut self) -> Result<Check, SearchError> {
        let mut chk = Check::new();
        let lcc = catalog::lookup("lcc").unwrap();
        let mut tables = self.flat(Fam::All)?;
        tables.extend(self.fixed());
        for t in &tables {
            chk.expect(t, st::is_lcc(t) == lcc.holds(t));
        }
        Ok(chk)
    }

    fn over_left_cheban(&mut self, mut f: impl FnMut(&LoopTable, &mut Check)) -> Result<Check, SearchError> {
        let lc = catalog::left_cheban();
        let tables = self.with_fixed(Fam::LeftCheban, |t| lc.holds(t))?;
        let mut chk = Check::new();
        for t in &tables {
            f(t, &mut chk);
        }
        Ok(chk)
    }

    /// Compares two independently computed model sets per order.
    fn compare_sets(chk: &mut Check, what: &str, lhs: &[Vec<LoopTable>], rhs: &[Vec<LoopTable>]) {
        for (i, (a, b)) in lhs.iter().zip(rhs).enumerate() {
            let a: BTreeSet<_> = a.iter().cloned().collect();
            let b: BTreeSet<_> = b.iter().cloned().collect();
            chk.checked += a.len().max(b.len());
            if a != b {
                chk.fail_note(format!("{what}: model sets differ at order {}", i + 1));
                chk.witnesses.extend(a.symmetric_difference(&b).take(4).cloned());
            }
        }
    }

    fn filter_all(&mut self, pred: impl Fn(&LoopTable) -> bool) -> Result<Family, SearchError> {
        Ok(self.family(Fam::All)?.into_iter().map(|v| v.into_iter().filter(|t| pred(t)).collect()).collect())
    }

    fn thm_3_1(&mut self) -> Result<Check, SearchError> {
        let mut chk = Check::new();
        let lc = self.family(Fam::LeftCheban)?;
        let by_perm = self.filter_all(|t| st::is_lcc(t) && st::squares_translation(t))?;
        Self::compare_sets(&mut chk, "left Cheban vs LCC+squares among all loops", &lc, &by_perm);
        let by_ids = self.family(Fam::LccSquares)?;
        Self::compare_sets(&mut chk, "left Cheban vs LCC+squares by search", &lc, &by_ids);
        let ident = catalog::left_cheban();
        for t in self.fixed() {
            chk.expect(&t, ident.holds(&t) == (st::is_lcc(&t) && st::squares_translation(&t)));
        }
        Ok(chk)
    }

    fn lem_3_5(&mut self) -> Result<Check, SearchError> {
        let mut chk = Check::new();
        let ch = self.family(Fam::Cheban)?;
        let both = self.family(Fam::LeftAndRightCheban)?;
        Self::compare_sets(&mut chk, "Cheban vs left+right Cheban", &ch, &both);
        let (c, l, r) = (catalog::cheban(), catalog::left_cheban(), catalog::right_cheban());
        let mut tables = self.flat(Fam::All)?;
        tables.extend(self.fixed());
        for t in &tables {
            chk.expect(t, c.holds(t) == (l.holds(t) && r.holds(t)));
        }
        Ok(chk)
    }

    fn lem_3_8(&mut self) -> Result<Check, SearchError> {
        let mut chk = Check::new();
        let mut tables: Vec<LoopTable> = self.flat(Fam::All)?.into_iter().filter(st::is_cc).collect();
        tables.extend(self.flat(Fam::Cheban)?);
        tables.extend(self.fixed().into_iter().filter(st::is_cc));
        for t in &tables {
            chk.expect(t, st::squares_translation(t) == st::square_central_translation(t));
        }
        Ok(chk)
    }

    fn thm_3_9(&mut self) -> Result<Check, SearchError> {
        let mut chk = Check::new();
        let ch = self.family(Fam::Cheban)?;
        let by_perm = self.filter_all(|t| st::is_cc(t) && st::square_central_translation(t))?;
        Self::compare_sets(&mut chk, "Cheban vs CC+R(x^2)=L(x^2) among all loops", &ch, &by_perm);
        let by_search = self.family(Fam::LccSquareCentral)?;
        Self::compare_sets(&mut chk, "Cheban vs CC+R(x^2)=L(x^2) by search", &ch, &by_search);
        let ident = catalog::cheban();
        for t in self.fixed() {
            chk.expect(&t, ident.holds(&t) == (st::is_cc(&t) && st::square_central_translation(&t)));
        }
        Ok(chk)
    }

    fn thm_3_10(&mut self) -> Result<Check, SearchError> {
        let c = catalog::cheban();
        let tables = self.with_fixed(Fam::Cheban, |t| c.holds(t))?;
        let mut chk = Check::new();
        for t in &tables {
            chk.expect(t, thm_3_10_holds(t));
        }
        Ok(chk)
    }

    fn rem_3_11(&self) -> Check {
        let mut chk = Check::new();
        let h = &self.models.heisenberg;
        let ok = st::wip_elements(h).is_full()
            && st::is_power_associative(h)
            && st::is_cc(h)
            && st::nilpotency_class(h) == Some(2)
            && !st::square_central_translation(h)
            && !catalog::cheban().holds(h);
        chk.expect(h, ok);
        chk
    }

    fn rem_3_12(&mut self) -> Result<Check, SearchError> {
        let (l, r, c) = (catalog::left_cheban(), catalog::right_cheban(), catalog::cheban());
        let mut tables = self.flat(Fam::LeftCheban)?;
        tables.extend(self.flat(Fam::RightCheban)?);
        tables.extend(self.flat(Fam::Cheban)?);
        tables.extend(self.fixed().into_iter().filter(|t| l.holds(t) || r.holds(t) || c.holds(t)));
        let mut chk = Check::new();
        for t in &tables {
            let squares: ElementSet = ElementSet::from_elements(t.order(), t.elements().map(|y| t.mul(y, y)));
            let hyp = t.elements().all(|x| squares.contains(x) || t.mul(x, x) == 0);
            chk.expect(t, !hyp || t.is_abelian_group());
        }
        Ok(chk)
    }
}

fn claim_note(id: &str) -> Option<String> {
    match id {
        "ex_3_3_minimality" => Some(String::from(
            "read as: 8 is the least order of a left Cheban loop having a nuclear element that is not central",
        )),
        "lem_3_8" => Some(String::from("checked for loops only, not for cancellative groupoids")),
        _ => None,
    }
}

fn square(t: &LoopTable, x: Element) -> Element {
    t.mul(x, x)
}

pub(crate) fn thm_3_2_holds(t: &LoopTable) -> bool {
    let nl = st::left_nucleus(t);
    let n = st::nucleus(t);
    let z = st::center(t);
    nl == st::middle_nucleus(t)
        && st::is_normal(t, &nl) == Ok(true)
        && st::is_normal(t, &n) == Ok(true)
        && st::commutant(t).is_subset(&n)
        && nl.iter().all(|a| z.contains(square(t, a)))
}

pub(crate) fn thm_3_4_holds(t: &LoopTable) -> bool {
    let z = st::center(t);
    let wip = st::wip_elements(t);
    wip.iter().all(|c| z.contains(square(t, c)))
        && t.elements().all(|x| {
            let x2 = square(t, x);
            wip.contains(x2) && z.contains(square(t, x2))
        })
}

pub(crate) fn thm_3_10_holds(t: &LoopTable) -> bool {
    let z = st::center(t);
    let comm = st::commutant(t);
    let quotient_ok = st::quotient(t, &z).is_ok_and(|q| q.table.is_abelian_group());
    st::wip_elements(t).is_full()
        && st::is_power_associative(t)
        && st::is_cc(t)
        && st::nilpotency_class(t).is_some_and(|k| k <= 2)
        && t.elements().all(|x| comm.contains(square(t, x)))
        && quotient_ok
}
