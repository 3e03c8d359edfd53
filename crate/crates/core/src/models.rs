//! Fixed loops used throughout the checks and tests.

use alloc::vec::Vec;

use crate::table::{Element, LoopTable};

/// The order-8 left Cheban loop in which `1` is nuclear but not central.
pub const EXAMPLE_3_3: [[Element; 8]; 8] = [
    [0, 1, 2, 3, 4, 5, 6, 7],
    [1, 0, 3, 2, 5, 4, 7, 6],
    [2, 4, 0, 6, 1, 7, 3, 5],
    [3, 5, 1, 7, 0, 6, 2, 4],
    [4, 2, 6, 0, 7, 1, 5, 3],
    [5, 3, 7, 1, 6, 0, 4, 2],
    [6, 7, 4, 5, 2, 3, 0, 1],
    [7, 6, 5, 4, 3, 2, 1, 0],
];

pub fn example_3_3() -> LoopTable {
    LoopTable::from_cells(8, EXAMPLE_3_3.iter().flatten().copied().collect())
        .expect("embedded example is a loop")
}

/// The Heisenberg group over the 3-element field: upper unitriangular
/// 3x3 matrices, nonabelian of exponent 3 and class 2.
///
/// The matrix with entries `(a, b, c)` above the diagonal is element
/// `9a + 3b + c`, so the identity matrix is `0`.
pub fn heisenberg_27() -> LoopTable {
    let decode = |x: Element| (x / 9, (x / 3) % 3, x % 3);
    LoopTable::from_fn(27, |x, y| {
        let (a1, b1, c1) = decode(x);
        let (a2, b2, c2) = decode(y);
        // [1 a1 c1; 0 1 b1; 0 0 1] * [1 a2 c2; 0 1 b2; 0 0 1]
        let a = (a1 + a2) % 3;
        let b = (b1 + b2) % 3;
        let c = (c1 + c2 + a1 * b2) % 3;
        9 * a + 3 * b + c
    })
    .expect("matrix group table is a loop")
}

/// The cyclic group `Z_n`.
pub fn cyclic(n: usize) -> LoopTable {
    LoopTable::from_fn(n, |x, y| ((x as usize + y as usize) % n) as Element).expect("cyclic group")
}

/// Direct product of abelian groups `Z_{m1} x Z_{m2} x ...` in mixed radix.
pub fn abelian(moduli: &[usize]) -> LoopTable {
    let n: usize = moduli.iter().product();
    let digits = |mut x: usize| -> Vec<usize> {
        moduli
            .iter()
            .map(|&m| {
                let d = x % m;
                x /= m;
                d
            })
            .collect()
    };
    LoopTable::from_fn(n, |x, y| {
        let (dx, dy) = (digits(x as usize), digits(y as usize));
        let mut out = 0;
        for (i, &m) in moduli.iter().enumerate().rev() {
            out = out * m + (dx[i] + dy[i]) % m;
        }
        out as Element
    })
    .expect("abelian group")
}

/// Every abelian group of order at most 8, up to isomorphism.
pub fn abelian_groups_up_to_8() -> Vec<LoopTable> {
    let shapes: [&[usize]; 11] = [
        &[1],
        &[2],
        &[3],
        &[4],
        &[2, 2],
        &[5],
        &[6],
        &[7],
        &[8],
        &[4, 2],
        &[2, 2, 2],
    ];
    shapes.iter().map(|m| abelian(m)).collect()
}

/// The dihedral group of order `2m`: rotations `0..m`, reflections `m..2m`.
pub fn dihedral(m: usize) -> LoopTable {
    // element k < m is r^k, element m + k is s r^k
    LoopTable::from_fn(2 * m, |x, y| {
        let (sx, kx) = ((x as usize) / m, (x as usize) % m);
        let (sy, ky) = ((y as usize) / m, (y as usize) % m);
        // s^a r^i s^b r^j = s^(a+b) r^((-1)^b i + j)
        let k = if sy == 0 { (kx + ky) % m } else { (m - kx + ky) % m };
        (((sx + sy) % 2) * m + k) as Element
    })
    .expect("dihedral group")
}

/// The symmetric group on 3 letters (dihedral of order 6).
pub fn symmetric_3() -> LoopTable {
    dihedral(3)
}

/// The quaternion group `{±1, ±i, ±j, ±k}`.
pub fn quaternion() -> LoopTable {
    // element 2u + s is (-1)^s * u, with u in [1, i, j, k]
    // unit products: (sign, unit)
    const UNIT: [[(u8, u8); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    LoopTable::from_fn(8, |x, y| {
        let (ux, sx) = (x / 2, x % 2);
        let (uy, sy) = (y / 2, y % 2);
        let (s, u) = UNIT[ux as usize][uy as usize];
        2 * u + (s + sx + sy) % 2
    })
    .expect("quaternion group")
}
