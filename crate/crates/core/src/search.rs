//! Enumeration of loops of a fixed order satisfying identities.
//!
//! Cells are filled row-major (row and column `0` are the identity) with
//! row/column bitsets for the Latin condition. Every identity is expanded to
//! its ground instances, one per assignment of its variables. An instance
//! is evaluated on the partial table until it needs a cell that is not yet
//! known; it then waits on that cell and is re-evaluated once the cell is
//! filled. A fully evaluated instance with different sides rejects the
//! branch. If one side is known and the other only lacks its outermost
//! operation, the missing cell is implied and filled at once.

use alloc::collections::BTreeSet;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::structure::{self, StructureReport};
use crate::table::{Element, LoopTable, MAX_ORDER};
use crate::term::{next_tuple, Identity, Op, Program};

const UNDEF: Element = Element::MAX;
const NO_CELL: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Mode {
    AllLabeled,
    UpToIsomorphism,
    FirstOnly,
}

/// A filter applied to solutions after the identities.
#[derive(Clone)]
pub struct Predicate {
    name: &'static str,
    test: Arc<dyn Fn(&LoopTable) -> bool + Send + Sync>,
}

impl Predicate {
    pub fn new(name: &'static str, test: impl Fn(&LoopTable) -> bool + Send + Sync + 'static) -> Self {
        Predicate { name, test: Arc::new(test) }
    }

    /// A filter on the full structure report.
    pub fn on_report(name: &'static str, test: impl Fn(&StructureReport) -> bool + Send + Sync + 'static) -> Self {
        Self::new(name, move |t| test(&structure::analyze(t)))
    }

    pub fn always() -> Self {
        Self::new("always", |_| true)
    }

    /// Some nuclear element is not central.
    pub fn nucleus_not_in_center() -> Self {
        Self::new("nucleus_not_in_center", |t| !structure::nucleus(t).is_subset(&structure::center(t)))
    }

    pub fn nonassociative() -> Self {
        Self::new("nonassociative", |t| !t.is_associative())
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn test(&self, t: &LoopTable) -> bool {
        (self.test)(t)
    }

    /// Looks up `nucleus_not_in_center`, `nonassociative` or `always`.
    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "nucleus_not_in_center" => Some(Self::nucleus_not_in_center()),
            "nonassociative" => Some(Self::nonassociative()),
            "always" => Some(Self::always()),
            _ => None,
        }
    }
}

impl fmt::Debug for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Predicate({})", self.name)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Limits {
    pub max_nodes: Option<u64>,
}

#[derive(Debug, Clone)]
pub struct SearchSpec {
    pub order: usize,
    pub constraints: Vec<Identity>,
    pub mode: Mode,
    pub predicate: Option<Predicate>,
    pub limits: Limits,
}

impl SearchSpec {
    pub fn new(order: usize, constraints: Vec<Identity>, mode: Mode) -> Self {
        SearchSpec { order, constraints, mode, predicate: None, limits: Limits::default() }
    }

    pub fn with_predicate(mut self, p: Predicate) -> Self {
        self.predicate = Some(p);
        self
    }

    pub fn with_max_nodes(mut self, nodes: u64) -> Self {
        self.limits.max_nodes = Some(nodes);
        self
    }

    fn accepts(&self, t: &LoopTable) -> bool {
        self.predicate.as_ref().is_none_or(|p| p.test(t))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SearchStats {
    pub nodes_expanded: u64,
    pub solutions_found: u64,
    pub isomorphism_rejections: u64,
}

impl SearchStats {
    pub fn merge(&mut self, other: &SearchStats) {
        self.nodes_expanded += other.nodes_expanded;
        self.solutions_found += other.solutions_found;
        self.isomorphism_rejections += other.isomorphism_rejections;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("order must be between 1 and {MAX_ORDER}, got {0}")]
    InvalidOrder(usize),
    #[error("identity has {0} variables; at most 8 are supported")]
    TooManyVariables(usize),
    #[error("search budget exceeded after {nodes} nodes")]
    BudgetExceeded { nodes: u64 },
}

/// Result of [`enumerate`]. `complete` is false when the budget ran out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub tables: Vec<LoopTable>,
    pub stats: SearchStats,
    pub complete: bool,
}

/// Returned by a solution callback.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flow {
    Continue,
    Stop,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Outcome {
    Finished,
    Stopped,
    OutOfBudget,
}

enum Side {
    Known(Element),
    /// Only the outermost operation is unknown; its value names a cell.
    Implies { target: Implied, watch: u32 },
    Blocked(u32),
}

#[derive(Clone, Copy)]
enum Implied {
    /// The product cell itself.
    Cell(u32),
    /// `a \ b = v`, so `a * v = b`.
    LeftDiv(Element, Element),
    /// `a / b = v`, so `v * b = a`.
    RightDiv(Element, Element),
}

/// Backtracking state for one order and one constraint set.
pub struct Solver {
    n: usize,
    programs: Vec<(Program, Program)>,
    arity: usize,
    inst_identity: Vec<u16>,
    inst_values: Vec<Element>,

    cells: Vec<Element>,
    row_used: Vec<u64>,
    col_used: Vec<u64>,
    ldiv: Vec<Element>,
    rdiv: Vec<Element>,
    trail: Vec<u32>,
    watches: Vec<Vec<u32>>,
    watch_trail: Vec<u32>,
    queue: Vec<(u32, Element)>,
    stack: Vec<Element>,

    root_ok: bool,
    stats: SearchStats,
    max_nodes: Option<u64>,
}

impl Solver {
    pub fn new(order: usize, constraints: &[Identity]) -> Result<Self, SearchError> {
        if order == 0 || order > MAX_ORDER {
            return Err(SearchError::InvalidOrder(order));
        }
        let n = order;
        let arity = constraints.iter().map(|c| c.vars.len()).max().unwrap_or(0);
        if arity > 8 {
            return Err(SearchError::TooManyVariables(arity));
        }
        let programs: Vec<_> = constraints
            .iter()
            .map(|id| {
                let c = id.compile();
                (c.lhs, c.rhs)
            })
            .collect();
        let mut inst_identity = Vec::new();
        let mut inst_values = Vec::new();
        for (k, id) in constraints.iter().enumerate() {
            let mut vals = alloc::vec![0 as Element; id.vars.len()];
            loop {
                inst_identity.push(k as u16);
                inst_values.extend_from_slice(&vals);
                inst_values.resize(inst_identity.len() * arity, 0);
                if !next_tuple(&mut vals, n) {
                    break;
                }
            }
        }

        let mut s = Solver {
            n,
            programs,
            arity,
            inst_identity,
            inst_values,
            cells: alloc::vec![UNDEF; n * n],
            row_used: alloc::vec![0; n],
            col_used: alloc::vec![0; n],
            ldiv: alloc::vec![UNDEF; n * n],
            rdiv: alloc::vec![UNDEF; n * n],
            trail: Vec::new(),
            watches: alloc::vec![Vec::new(); n * n],
            watch_trail: Vec::new(),
            queue: Vec::new(),
            stack: Vec::new(),
            root_ok: true,
            stats: SearchStats::default(),
            max_nodes: None,
        };
        for i in 0..n {
            s.set_cell(i, i as Element);
            if i > 0 {
                s.set_cell(i * n, i as Element);
            }
        }
        s.trail.clear();
        for inst in 0..s.inst_identity.len() as u32 {
            if !s.check_instance(inst) {
                s.root_ok = false;
                break;
            }
        }
        s.root_ok = s.root_ok && s.drain_queue();
        // the root state is never undone
        s.trail.clear();
        s.watch_trail.clear();
        Ok(s)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn stats(&self) -> SearchStats {
        self.stats
    }

    pub fn set_max_nodes(&mut self, nodes: Option<u64>) {
        self.max_nodes = nodes;
    }

    fn set_cell(&mut self, cell: usize, v: Element) {
        let n = self.n;
        let (r, c) = (cell / n, cell % n);
        self.cells[cell] = v;
        self.row_used[r] |= 1 << v;
        self.col_used[c] |= 1 << v;
        self.ldiv[r * n + v as usize] = c as Element;
        self.rdiv[v as usize * n + c] = r as Element;
        self.trail.push(cell as u32);
    }

    fn undo_to(&mut self, trail_len: usize, watch_len: usize) {
        let n = self.n;
        while self.trail.len() > trail_len {
            let cell = self.trail.pop().unwrap() as usize;
            let (r, c) = (cell / n, cell % n);
            let v = self.cells[cell];
            self.cells[cell] = UNDEF;
            self.row_used[r] &= !(1 << v);
            self.col_used[c] &= !(1 << v);
            self.ldiv[r * n + v as usize] = UNDEF;
            self.rdiv[v as usize * n + c] = UNDEF;
        }
        while self.watch_trail.len() > watch_len {
            let cell = self.watch_trail.pop().unwrap() as usize;
            self.watches[cell].pop();
        }
        self.queue.clear();
    }

    fn first_open_in_row(&self, r: usize) -> u32 {
        let base = r * self.n;
        (base..base + self.n).find(|&i| self.cells[i] == UNDEF).map_or(NO_CELL, |i| i as u32)
    }

    fn first_open_in_col(&self, c: usize) -> u32 {
        (0..self.n).map(|r| r * self.n + c).find(|&i| self.cells[i] == UNDEF).map_or(NO_CELL, |i| i as u32)
    }

    fn eval_side(&mut self, prog: &Program, vals: &[Element]) -> Side {
        let n = self.n;
        self.stack.clear();
        let last = prog.ops.len() - 1;
        for (k, op) in prog.ops.iter().enumerate() {
            let v = match *op {
                Op::Var(i) => vals[i as usize],
                Op::One => 0,
                Op::Mul => {
                    let b = self.stack.pop().unwrap() as usize;
                    let a = self.stack.pop().unwrap() as usize;
                    let cell = a * n + b;
                    let v = self.cells[cell];
                    if v == UNDEF {
                        let cell = cell as u32;
                        return if k == last {
                            Side::Implies { target: Implied::Cell(cell), watch: cell }
                        } else {
                            Side::Blocked(cell)
                        };
                    }
                    v
                }
                Op::LDiv | Op::RhoInv => {
                    let b = if *op == Op::LDiv { self.stack.pop().unwrap() } else { 0 };
                    let a = self.stack.pop().unwrap();
                    let v = self.ldiv[a as usize * n + b as usize];
                    if v == UNDEF {
                        let watch = self.first_open_in_row(a as usize);
                        return if k == last {
                            Side::Implies { target: Implied::LeftDiv(a, b), watch }
                        } else {
                            Side::Blocked(watch)
                        };
                    }
                    v
                }
                Op::RDiv | Op::LambdaInv => {
                    let b = self.stack.pop().unwrap();
                    let a = if *op == Op::RDiv { self.stack.pop().unwrap() } else { 0 };
                    let v = self.rdiv[a as usize * n + b as usize];
                    if v == UNDEF {
                        let watch = self.first_open_in_col(b as usize);
                        return if k == last {
                            Side::Implies { target: Implied::RightDiv(a, b), watch }
                        } else {
                            Side::Blocked(watch)
                        };
                    }
                    v
                }
            };
            self.stack.push(v);
        }
        Side::Known(self.stack[0])
    }

    /// Evaluates one instance. Returns false on a contradiction.
    fn check_instance(&mut self, inst: u32) -> bool {
        let k = self.inst_identity[inst as usize] as usize;
        let base = inst as usize * self.arity;
        let mut vals = [0; 8];
        vals[..self.arity].copy_from_slice(&self.inst_values[base..base + self.arity]);
        let progs = core::mem::take(&mut self.programs);
        let lhs = self.eval_side(&progs[k].0, &vals);
        let rhs = self.eval_side(&progs[k].1, &vals);
        self.programs = progs;
        match (lhs, rhs) {
            (Side::Known(a), Side::Known(b)) => a == b,
            (Side::Known(v), Side::Implies { target, .. }) | (Side::Implies { target, .. }, Side::Known(v)) => {
                let n = self.n as u32;
                let (cell, w) = match target {
                    Implied::Cell(cell) => (cell, v),
                    Implied::LeftDiv(a, b) => (a as u32 * n + v as u32, b),
                    Implied::RightDiv(a, b) => (v as u32 * n + b as u32, a),
                };
                let cur = self.cells[cell as usize];
                if cur != UNDEF {
                    return cur == w;
                }
                // once placed, the instance holds on this branch
                self.queue.push((cell, w));
                true
            }
            (Side::Blocked(w), _) | (_, Side::Blocked(w)) | (Side::Implies { watch: w, .. }, Side::Implies { .. }) => {
                self.watch(inst, w);
                true
            }
        }
    }

    fn watch(&mut self, inst: u32, cell: u32) {
        debug_assert!(cell != NO_CELL);
        self.watches[cell as usize].push(inst);
        self.watch_trail.push(cell);
    }

    /// Assigns queued cells and wakes their watchers until quiet.
    fn drain_queue(&mut self) -> bool {
        while let Some((cell, v)) = self.queue.pop() {
            let cell = cell as usize;
            let cur = self.cells[cell];
            if cur != UNDEF {
                if cur != v {
                    return false;
                }
                continue;
            }
            if !self.assign(cell, v) {
                return false;
            }
        }
        true
    }

    /// Places `v` and re-evaluates every instance waiting on the cell.
    fn assign(&mut self, cell: usize, v: Element) -> bool {
        let (r, c) = (cell / self.n, cell % self.n);
        if (self.row_used[r] | self.col_used[c]) >> v & 1 == 1 {
            return false;
        }
        self.set_cell(cell, v);
        let mut k = 0;
        while k < self.watches[cell].len() {
            let inst = self.watches[cell][k];
            if !self.check_instance(inst) {
                return false;
            }
            k += 1;
        }
        true
    }

    fn tick(&mut self) -> bool {
        self.stats.nodes_expanded += 1;
        self.max_nodes.is_none_or(|m| self.stats.nodes_expanded <= m)
    }

    /// Depth-first search below the current state. Calls `leaf` whenever
    /// every cell before `limit` (row-major index) is filled.
    fn dfs(&mut self, from: usize, limit: usize, leaf: &mut dyn FnMut(&Solver) -> Flow) -> Outcome {
        let Some(cell) = (from..limit).find(|&i| self.cells[i] == UNDEF) else {
            return match leaf(self) {
                Flow::Continue => Outcome::Finished,
                Flow::Stop => Outcome::Stopped,
            };
        };
        let (r, c) = (cell / self.n, cell % self.n);
        let mut free = !(self.row_used[r] | self.col_used[c]) & full_mask(self.n);
        while free != 0 {
            let v = free.trailing_zeros() as Element;
            free &= free - 1;
            if !self.tick() {
                return Outcome::OutOfBudget;
            }
            let (t, w) = (self.trail.len(), self.watch_trail.len());
            if self.assign(cell, v) && self.drain_queue() {
                let out = self.dfs(cell + 1, limit, leaf);
                if out != Outcome::Finished {
                    self.undo_to(t, w);
                    return out;
                }
            }
            self.undo_to(t, w);
        }
        Outcome::Finished
    }

    fn table(&self) -> LoopTable {
        LoopTable::from_cells_unchecked(self.n, self.cells.clone())
    }

    /// Every consistent completion of row 1, in increasing order. These
    /// partition the search tree.
    pub fn row1_prefixes(&mut self) -> Result<Vec<Vec<Element>>, SearchError> {
        let mut out = Vec::new();
        if !self.root_ok {
            return Ok(out);
        }
        let n = self.n;
        if n <= 1 {
            return Ok(alloc::vec![Vec::new()]);
        }
        let outcome = self.dfs(0, 2 * n, &mut |s| {
            out.push(s.cells[n..2 * n].to_vec());
            Flow::Continue
        });
        match outcome {
            Outcome::OutOfBudget => Err(SearchError::BudgetExceeded { nodes: self.stats.nodes_expanded }),
            _ => Ok(out),
        }
    }

    /// Runs the search, calling `on_solution` with each table in
    /// lexicographic order. With `row1` set, only tables whose row 1 equals
    /// it are visited.
    pub fn run(
        &mut self,
        row1: Option<&[Element]>,
        on_solution: &mut dyn FnMut(&LoopTable) -> Flow,
    ) -> Result<bool, SearchError> {
        if !self.root_ok {
            return Ok(true);
        }
        let n = self.n;
        let (t, w) = (self.trail.len(), self.watch_trail.len());
        if let Some(row) = row1 {
            if n > 1 {
                for (j, &v) in row.iter().enumerate() {
                    let cell = n + j;
                    let cur = self.cells[cell];
                    let ok = if cur == UNDEF { self.assign(cell, v) && self.drain_queue() } else { cur == v };
                    if !ok {
                        self.undo_to(t, w);
                        return Ok(true);
                    }
                }
            }
        }
        let mut found = 0;
        let outcome = self.dfs(0, n * n, &mut |s| {
            found += 1;
            on_solution(&s.table())
        });
        self.stats.solutions_found += found;
        self.undo_to(t, w);
        match outcome {
            Outcome::OutOfBudget => Err(SearchError::BudgetExceeded { nodes: self.stats.nodes_expanded }),
            Outcome::Stopped => Ok(false),
            Outcome::Finished => Ok(true),
        }
    }
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1 << n) - 1
    }
}

/// Collects solutions according to a spec's mode and predicate.
///
/// Feed it labeled solutions in lexicographic order from any number of
/// solver runs, then call [`Collector::finish`].
#[derive(Debug)]
pub struct Collector<'a> {
    spec: &'a SearchSpec,
    labeled: Vec<LoopTable>,
    classes: BTreeSet<LoopTable>,
    pub stats: SearchStats,
}

impl<'a> Collector<'a> {
    pub fn new(spec: &'a SearchSpec) -> Self {
        Collector { spec, labeled: Vec::new(), classes: BTreeSet::new(), stats: SearchStats::default() }
    }

    pub fn push(&mut self, t: &LoopTable) -> Flow {
        match self.spec.mode {
            Mode::AllLabeled => {
                if self.spec.accepts(t) {
                    self.labeled.push(t.clone());
                }
                Flow::Continue
            }
            Mode::FirstOnly => {
                if self.spec.accepts(t) {
                    self.labeled.push(t.clone());
                    Flow::Stop
                } else {
                    Flow::Continue
                }
            }
            Mode::UpToIsomorphism => {
                let c = structure::canonical_form(t);
                if self.classes.contains(&c) {
                    self.stats.isomorphism_rejections += 1;
                } else {
                    self.classes.insert(c);
                }
                Flow::Continue
            }
        }
    }

    /// Merges another collector's canonical classes (parallel runs).
    pub fn absorb(&mut self, other: Collector<'_>) {
        self.stats.merge(&other.stats);
        self.labeled.extend(other.labeled);
        for c in other.classes {
            if !self.classes.insert(c) {
                self.stats.isomorphism_rejections += 1;
            }
        }
    }

    pub fn finish(self) -> Vec<LoopTable> {
        match self.spec.mode {
            Mode::AllLabeled | Mode::FirstOnly => self.labeled,
            Mode::UpToIsomorphism => self.classes.into_iter().filter(|c| self.spec.accepts(c)).collect(),
        }
    }
}

/// All loops of `spec.order` satisfying the constraints (single-threaded).
pub fn enumerate(spec: &SearchSpec) -> Result<Enumeration, SearchError> {
    let mut solver = Solver::new(spec.order, &spec.constraints)?;
    solver.set_max_nodes(spec.limits.max_nodes);
    let mut collector = Collector::new(spec);
    let result = solver.run(None, &mut |t| collector.push(t));
    let mut stats = solver.stats();
    stats.isomorphism_rejections = collector.stats.isomorphism_rejections;
    let complete = match result {
        Ok(_) => true,
        Err(SearchError::BudgetExceeded { .. }) => false,
        Err(e) => return Err(e),
    };
    Ok(Enumeration { tables: collector.finish(), stats, complete })
}

/// Number of loops [`enumerate`] would emit.
pub fn count(spec: &SearchSpec) -> Result<u64, SearchError> {
    if spec.mode == Mode::AllLabeled && spec.predicate.is_none() {
        let mut solver = Solver::new(spec.order, &spec.constraints)?;
        solver.set_max_nodes(spec.limits.max_nodes);
        let mut count = 0u64;
        solver.run(None, &mut |_| {
            count += 1;
            Flow::Continue
        })?;
        return Ok(count);
    }
    let e = enumerate(spec)?;
    if !e.complete {
        return Err(SearchError::BudgetExceeded { nodes: e.stats.nodes_expanded });
    }
    Ok(e.tables.len() as u64)
}

/// Least order `<= max_order` with a loop meeting the constraints and the
/// predicate, with the first such table found.
pub fn find_minimal(
    constraints: &[Identity],
    predicate: &Predicate,
    max_order: usize,
    limits: Limits,
) -> Result<Option<(usize, LoopTable)>, SearchError> {
    for n in 1..=max_order {
        let spec = SearchSpec {
            order: n,
            constraints: constraints.to_vec(),
            mode: Mode::FirstOnly,
            predicate: Some(predicate.clone()),
            limits,
        };
        let e = enumerate(&spec)?;
        if let Some(t) = e.tables.into_iter().next() {
            return Ok(Some((n, t)));
        }
        if !e.complete {
            return Err(SearchError::BudgetExceeded { nodes: e.stats.nodes_expanded });
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn trivial_order() {
        let e = enumerate(&SearchSpec::new(1, Vec::new(), Mode::AllLabeled)).unwrap();
        assert_eq!(e.tables, [LoopTable::trivial()]);
        assert!(e.complete);
    }

    #[test]
    fn small_unconstrained_counts() {
        // reduced Latin squares of orders 1..=6
        let expected = [1u64, 1, 1, 4, 56, 9408];
        for (i, &want) in expected.iter().enumerate() {
            let spec = SearchSpec::new(i + 1, Vec::new(), Mode::AllLabeled);
            assert_eq!(count(&spec).unwrap(), want, "order {}", i + 1);
        }
    }

    #[test]
    fn budget_is_reported() {
        let spec = SearchSpec::new(6, Vec::new(), Mode::AllLabeled).with_max_nodes(100);
        let e = enumerate(&spec).unwrap();
        assert!(!e.complete);
        assert!(matches!(count(&spec), Err(SearchError::BudgetExceeded { .. })));
    }

    #[test]
    fn emission_is_lexicographic() {
        let e = enumerate(&SearchSpec::new(5, Vec::new(), Mode::AllLabeled)).unwrap();
        assert!(e.tables.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn solutions_satisfy_constraints() {
        let lc = catalog::left_cheban();
        let e = enumerate(&SearchSpec::new(6, alloc::vec![lc.clone()], Mode::AllLabeled)).unwrap();
        assert!(!e.tables.is_empty());
        for t in &e.tables {
            assert!(lc.holds(t));
        }
    }

    #[test]
    fn first_only_stops() {
        let spec = SearchSpec::new(6, Vec::new(), Mode::FirstOnly).with_predicate(Predicate::nonassociative());
        let e = enumerate(&spec).unwrap();
        assert_eq!(e.tables.len(), 1);
        assert!(!e.tables[0].is_associative());
    }

    #[test]
    fn row1_partition_covers_search() {
        let ids = alloc::vec![catalog::lookup("lcc").unwrap()];
        let mut solver = Solver::new(6, &ids).unwrap();
        let prefixes = solver.row1_prefixes().unwrap();
        let mut parts = Vec::new();
        for p in &prefixes {
            solver.run(Some(p), &mut |t| {
                parts.push(t.clone());
                Flow::Continue
            })
            .unwrap();
        }
        let whole = enumerate(&SearchSpec::new(6, ids, Mode::AllLabeled)).unwrap().tables;
        assert_eq!(parts, whole);
    }

    #[test]
    fn minimal_order_of_unconstrained_nonassociative_loop() {
        let (n, t) = find_minimal(&[], &Predicate::nonassociative(), 6, Limits::default()).unwrap().unwrap();
        assert_eq!(n, 5);
        assert!(!t.is_associative());
    }
}
