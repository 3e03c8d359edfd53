//! Cayley tables of finite loops.

use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::perm::Permutation;

/// Largest supported loop order. Element sets are `u64` bitmasks.
pub const MAX_ORDER: usize = 64;

/// An element of a loop, `0..n`. Element `0` is the identity.
pub type Element = u8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("table is empty")]
    Empty,
    #[error("table is not square: row {row} has {len} entries, expected {expected}")]
    NonSquareInput { row: usize, len: usize, expected: usize },
    #[error("order {0} exceeds the supported maximum of {MAX_ORDER}")]
    OrderTooLarge(usize),
    #[error("entry {value} at row {row}, column {col} is out of range for order {order}")]
    EntryOutOfRange { row: usize, col: usize, value: usize, order: usize },
    #[error("not a Latin square: {line} {index} repeats value {value}")]
    NotLatinSquare { line: Line, index: usize, value: Element },
    #[error("no two-sided identity element")]
    NoIdentityElement,
}

/// Row or column, for diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Line {
    Row,
    Column,
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Line::Row => f.write_str("row"),
            Line::Column => f.write_str("column"),
        }
    }
}

/// A finite loop given by its multiplication table, identity at `0`.
///
/// Left and right division and both one-sided inverses are tabulated at
/// construction, so every basic operation is a single lookup.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LoopTable {
    order: usize,
    mul: Vec<Element>,
    ldiv: Vec<Element>,
    rdiv: Vec<Element>,
}

/// Result of [`LoopTable::validate`]: the normalized table and the
/// relabeling that was applied to the input (`relabel[old] = new`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Validated {
    pub table: LoopTable,
    pub relabel: Permutation,
}

impl LoopTable {
    /// Validates a raw square array and normalizes its identity to `0`.
    ///
    /// If the identity sits at `e != 0`, elements `0` and `e` are swapped.
    pub fn validate<R: AsRef<[usize]>>(raw: &[R]) -> Result<Validated, TableError> {
        let n = raw.len();
        if n == 0 {
            return Err(TableError::Empty);
        }
        if n > MAX_ORDER {
            return Err(TableError::OrderTooLarge(n));
        }
        let mut cells = Vec::with_capacity(n * n);
        for (r, row) in raw.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(TableError::NonSquareInput { row: r, len: row.len(), expected: n });
            }
            for (c, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(TableError::EntryOutOfRange { row: r, col: c, value: v, order: n });
                }
                cells.push(v as Element);
            }
        }
        check_latin(n, &cells)?;

        let identity = (0..n)
            .find(|&e| (0..n).all(|x| cells[e * n + x] as usize == x && cells[x * n + e] as usize == x))
            .ok_or(TableError::NoIdentityElement)?;

        let relabel = Permutation::transposition(n, 0, identity as Element);
        let table = LoopTable::from_cells_unchecked(n, cells).relabeled(&relabel);
        Ok(Validated { table, relabel })
    }

    /// Builds a table from row-major cells that must already be a Latin
    /// square with identity `0`.
    pub fn from_cells(order: usize, cells: Vec<Element>) -> Result<Self, TableError> {
        if order == 0 {
            return Err(TableError::Empty);
        }
        if order > MAX_ORDER {
            return Err(TableError::OrderTooLarge(order));
        }
        if cells.len() != order * order {
            return Err(TableError::NonSquareInput {
                row: cells.len() / order,
                len: cells.len() % order,
                expected: order,
            });
        }
        if let Some((i, &v)) = cells.iter().enumerate().find(|(_, &v)| v as usize >= order) {
            return Err(TableError::EntryOutOfRange { row: i / order, col: i % order, value: v as usize, order });
        }
        check_latin(order, &cells)?;
        if (0..order).any(|x| cells[x] as usize != x || cells[x * order] as usize != x) {
            return Err(TableError::NoIdentityElement);
        }
        Ok(Self::from_cells_unchecked(order, cells))
    }

    /// Builds a table from `f(i, j)`; the result is validated.
    pub fn from_fn(order: usize, f: impl Fn(Element, Element) -> Element) -> Result<Self, TableError> {
        let mut cells = Vec::with_capacity(order * order);
        for i in 0..order {
            for j in 0..order {
                cells.push(f(i as Element, j as Element));
            }
        }
        Self::from_cells(order, cells)
    }

    pub(crate) fn from_cells_unchecked(order: usize, mul: Vec<Element>) -> Self {
        let mut ldiv = alloc::vec![0; order * order];
        let mut rdiv = alloc::vec![0; order * order];
        for a in 0..order {
            for b in 0..order {
                let c = mul[a * order + b];
                // a * b = c  =>  a \ c = b  and  c / b = a
                ldiv[a * order + c as usize] = b as Element;
                rdiv[c as usize * order + b] = a as Element;
            }
        }
        LoopTable { order, mul, ldiv, rdiv }
    }

    /// The trivial loop of order 1.
    pub fn trivial() -> Self {
        Self::from_cells_unchecked(1, alloc::vec![0])
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        self.mul[a as usize * self.order + b as usize]
    }

    /// `a \ b`: the unique `c` with `a * c = b`.
    #[inline]
    pub fn ldiv(&self, a: Element, b: Element) -> Element {
        self.ldiv[a as usize * self.order + b as usize]
    }

    /// `a / b`: the unique `c` with `c * b = a`.
    #[inline]
    pub fn rdiv(&self, a: Element, b: Element) -> Element {
        self.rdiv[a as usize * self.order + b as usize]
    }

    /// `y^rho`, with `y * y^rho = 1`.
    #[inline]
    pub fn right_inverse(&self, y: Element) -> Element {
        self.ldiv(y, 0)
    }

    /// `y^lambda`, with `y^lambda * y = 1`.
    #[inline]
    pub fn left_inverse(&self, y: Element) -> Element {
        self.rdiv(0, y)
    }

    pub fn left_translation(&self, x: Element) -> Permutation {
        Permutation::from_images_unchecked(self.row(x).to_vec())
    }

    pub fn right_translation(&self, x: Element) -> Permutation {
        Permutation::from_images_unchecked(self.elements().map(|y| self.mul(y, x)).collect())
    }

    /// Row `x` of the table, i.e. the images of `L(x)`.
    pub fn row(&self, x: Element) -> &[Element] {
        let start = x as usize * self.order;
        &self.mul[start..start + self.order]
    }

    /// Row-major cells.
    pub fn cells(&self) -> &[Element] {
        &self.mul
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Element]> + '_ {
        self.mul.chunks(self.order)
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + Clone {
        (0..self.order).map(|x| x as Element)
    }

    /// The table relabeled by `p`: the new table computes `p(a) * p(b) = p(a * b)`.
    ///
    /// `p` must fix `0` for the result to keep its identity at `0`.
    pub fn relabeled(&self, p: &Permutation) -> LoopTable {
        let n = self.order;
        let inv = p.inverse();
        let mut cells = alloc::vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                let a = inv.apply(i as Element);
                let b = inv.apply(j as Element);
                cells[i * n + j] = p.apply(self.mul(a, b));
            }
        }
        LoopTable::from_cells_unchecked(n, cells)
    }

    pub fn is_associative(&self) -> bool {
        self.elements().all(|x| {
            self.elements()
                .all(|y| self.elements().all(|z| self.mul(self.mul(x, y), z) == self.mul(x, self.mul(y, z))))
        })
    }

    pub fn is_commutative(&self) -> bool {
        self.elements().all(|x| self.elements().all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    pub fn is_abelian_group(&self) -> bool {
        self.is_commutative() && self.is_associative()
    }

    /// Rows as plain integer vectors, the inverse of [`LoopTable::validate`].
    pub fn to_raw(&self) -> Vec<Vec<usize>> {
        self.rows().map(|r| r.iter().map(|&v| v as usize).collect()).collect()
    }
}

fn check_latin(n: usize, cells: &[Element]) -> Result<(), TableError> {
    for r in 0..n {
        let mut seen = 0u64;
        for c in 0..n {
            let v = cells[r * n + c];
            if seen & (1 << v) != 0 {
                return Err(TableError::NotLatinSquare { line: Line::Row, index: r, value: v });
            }
            seen |= 1 << v;
        }
    }
    for c in 0..n {
        let mut seen = 0u64;
        for r in 0..n {
            let v = cells[r * n + c];
            if seen & (1 << v) != 0 {
                return Err(TableError::NotLatinSquare { line: Line::Column, index: c, value: v });
            }
            seen |= 1 << v;
        }
    }
    Ok(())
}

impl fmt::Debug for LoopTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LoopTable({})", self.order)?;
        for row in self.rows() {
            for (i, v) in row.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{v}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl PartialOrd for LoopTable {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Order first, then row-major cells.
impl Ord for LoopTable {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.order.cmp(&other.order).then_with(|| self.mul.cmp(&other.mul))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::example_3_3;
    use alloc::vec;

    #[test]
    fn trivial_loop_validates() {
        let v = LoopTable::validate(&[[0usize]]).unwrap();
        assert_eq!(v.table.order(), 1);
        assert!(v.relabel.is_identity());
    }

    #[test]
    fn duplicate_in_row_is_rejected() {
        let err = LoopTable::validate(&[vec![0usize, 1], vec![1, 1]]).unwrap_err();
        assert!(matches!(err, TableError::NotLatinSquare { line: Line::Row, index: 1, value: 1 }));
    }

    #[test]
    fn non_square_and_out_of_range() {
        assert!(matches!(
            LoopTable::validate(&[vec![0usize, 1], vec![1]]),
            Err(TableError::NonSquareInput { row: 1, len: 1, expected: 2 })
        ));
        assert!(matches!(
            LoopTable::validate(&[vec![0usize, 2], vec![1, 0]]),
            Err(TableError::EntryOutOfRange { .. })
        ));
        let empty: [[usize; 0]; 0] = [];
        assert_eq!(LoopTable::validate(&empty).unwrap_err(), TableError::Empty);
    }

    #[test]
    fn latin_square_without_identity() {
        // x * y = x - y mod 3 has a right identity but no left identity
        let raw: Vec<Vec<usize>> = (0..3).map(|x| (0..3).map(|y| (x + 3 - y) % 3).collect()).collect();
        assert_eq!(LoopTable::validate(&raw).unwrap_err(), TableError::NoIdentityElement);
    }

    #[test]
    fn identity_elsewhere_is_moved_to_zero() {
        // Z3 written with identity 2
        let raw = [[1usize, 2, 0], [2, 0, 1], [0, 1, 2]];
        let v = LoopTable::validate(&raw).unwrap();
        assert_eq!(v.relabel.apply(2), 0);
        assert_eq!(v.relabel.apply(0), 2);
        assert_eq!(v.table.row(0), &[0, 1, 2]);
        assert!(v.table.is_abelian_group());
    }

    #[test]
    fn example_table_lookups() {
        let q = example_3_3();
        assert_eq!(q.mul(2, 1), 4);
        assert_eq!(q.mul(7, 7), 0);
        assert_eq!(q.ldiv(2, 4), 1);
        assert_eq!(q.rdiv(4, 1), 2);
        assert_eq!(q.right_inverse(0), 0);
        assert_eq!(q.right_inverse(1), 1);
        assert_eq!(q.right_inverse(2), 2);
        for x in q.elements() {
            assert_eq!(q.mul(0, x), x);
            assert_eq!(q.ldiv(0, x), x);
            assert_eq!(q.rdiv(x, 0), x);
        }
    }

    #[test]
    fn example_divisions_are_inverse_to_multiplication() {
        let q = example_3_3();
        for x in q.elements() {
            for y in q.elements() {
                assert_eq!(q.ldiv(x, q.mul(x, y)), y);
                assert_eq!(q.rdiv(q.mul(x, y), y), x);
                assert_eq!(q.mul(x, q.ldiv(x, y)), y);
                assert_eq!(q.mul(q.rdiv(x, y), y), x);
            }
        }
    }

    #[test]
    fn example_translations() {
        let q = example_3_3();
        assert!(q.left_translation(0).is_identity());
        assert_eq!(q.left_translation(2).images(), &[2, 4, 0, 6, 1, 7, 3, 5]);
        assert_eq!(q.right_translation(2).apply(1), 3);
    }

    #[test]
    fn raw_round_trip() {
        let q = example_3_3();
        let back = LoopTable::validate(&q.to_raw()).unwrap();
        assert_eq!(back.table, q);
        assert!(back.relabel.is_identity());
    }
}
