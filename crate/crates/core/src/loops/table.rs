//! Cayley tables and finite loops.
//!
//! A loop of order `n` is stored as an `n`-by-`n` multiplication table over
//! the elements `0..n`. Element `0` is always the identity; loaders reject
//! tables where it is not. Left and right division tables are derived once
//! at construction.

use crate::error::{LoopError, Result};

/// Element of a loop, identified by its row/column index in the table.
/// The identity is always `0`.
pub type Elem = usize;

/// A validated Latin square with identity row and column at index 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CayleyTable {
    n: usize,
    mul: Vec<Elem>,
}

impl CayleyTable {
    /// Validates and wraps a multiplication table given as rows.
    ///
    /// Checks that the table is square, every row and every column is a
    /// permutation of `0..n`, and element 0 is a two-sided identity.
    pub fn new(rows: Vec<Vec<Elem>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(LoopError::Dimension {
                row: 0,
                found: 0,
                expected: 1,
            });
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(LoopError::Dimension {
                    row: i,
                    found: row.len(),
                    expected: n,
                });
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(LoopError::EntryOutOfRange {
                        row: i,
                        col: j,
                        value: v,
                        order: n,
                    });
                }
            }
        }
        for (i, row) in rows.iter().enumerate() {
            let mut seen = vec![false; n];
            for &v in row {
                if seen[v] {
                    return Err(LoopError::LatinSquareViolation {
                        line: "row",
                        index: i,
                    });
                }
                seen[v] = true;
            }
        }
        for j in 0..n {
            let mut seen = vec![false; n];
            for row in &rows {
                let v = row[j];
                if seen[v] {
                    return Err(LoopError::LatinSquareViolation {
                        line: "column",
                        index: j,
                    });
                }
                seen[v] = true;
            }
        }
        for b in 0..n {
            if rows[0][b] != b {
                return Err(LoopError::IdentityViolation { index: b });
            }
        }
        for (a, row) in rows.iter().enumerate() {
            if row[0] != a {
                return Err(LoopError::IdentityViolation { index: a });
            }
        }
        let mut mul = Vec::with_capacity(n * n);
        for row in &rows {
            mul.extend_from_slice(row);
        }
        Ok(CayleyTable { n, mul })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.n + b]
    }

    /// The table as rows, for serialization.
    pub fn rows(&self) -> Vec<Vec<Elem>> {
        (0..self.n)
            .map(|a| self.mul[a * self.n..(a + 1) * self.n].to_vec())
            .collect()
    }
}

/// A finite loop: a Cayley table together with its derived division tables.
///
/// For all `a`, `b` the four division identities hold by construction:
/// `a·(a\b) = b`, `a\(a·b) = b`, `(a/b)·b = a`, `(a·b)/b = a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLoop {
    n: usize,
    mul: Vec<Elem>,
    ldiv: Vec<Elem>,
    rdiv: Vec<Elem>,
}

impl FiniteLoop {
    /// Builds a loop from a validated table, deriving both divisions.
    pub fn new(table: CayleyTable) -> Self {
        let n = table.n;
        let mul = table.mul;
        let mut ldiv = vec![0; n * n];
        let mut rdiv = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let ab = mul[a * n + b];
                // a \ (a·b) = b  and  (a·b) / b = a
                ldiv[a * n + ab] = b;
                rdiv[ab * n + b] = a;
            }
        }
        FiniteLoop { n, mul, ldiv, rdiv }
    }

    /// Validates raw rows and builds the loop.
    pub fn from_rows(rows: Vec<Vec<Elem>>) -> Result<Self> {
        Ok(FiniteLoop::new(CayleyTable::new(rows)?))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// `a · b`
    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.n + b]
    }

    /// `a \ b`, the unique `x` with `a·x = b`.
    #[inline]
    pub fn ldiv(&self, a: Elem, b: Elem) -> Elem {
        self.ldiv[a * self.n + b]
    }

    /// `a / b`, the unique `y` with `y·b = a`.
    #[inline]
    pub fn rdiv(&self, a: Elem, b: Elem) -> Elem {
        self.rdiv[a * self.n + b]
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.n
    }

    pub fn table(&self) -> CayleyTable {
        CayleyTable {
            n: self.n,
            mul: self.mul.clone(),
        }
    }

    pub fn rows(&self) -> Vec<Vec<Elem>> {
        (0..self.n)
            .map(|a| self.mul[a * self.n..(a + 1) * self.n].to_vec())
            .collect()
    }

    pub fn is_associative(&self) -> bool {
        let n = self.n;
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.n;
        (0..n).all(|a| (a..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Groups are exactly the associative loops.
    pub fn is_group(&self) -> bool {
        self.is_associative()
    }

    /// Left associated power `x^m = (..((x·x)·x)..)·x` with `m` factors;
    /// `x^0` is the identity. Equals the `m`-th iterate of the right
    /// translation `R_x` applied to the identity.
    pub fn left_power(&self, x: Elem, m: usize) -> Elem {
        let mut acc = 0;
        for _ in 0..m {
            acc = self.mul(acc, x);
        }
        acc
    }

    /// Smallest `m >= 1` with `x^m = 0` (left associated powers). This is
    /// the length of the cycle of the identity under `R_x`, so it is at
    /// most `n`.
    pub fn element_order(&self, x: Elem) -> usize {
        let mut acc = self.mul(0, x);
        let mut m = 1;
        while acc != 0 {
            acc = self.mul(acc, x);
            m += 1;
        }
        m
    }

    /// The right translation `R_x: a -> a·x` as an image vector.
    pub fn right_translation(&self, x: Elem) -> Vec<Elem> {
        (0..self.n).map(|a| self.mul(a, x)).collect()
    }

    /// The left translation `L_x: a -> x·a` as an image vector.
    pub fn left_translation(&self, x: Elem) -> Vec<Elem> {
        (0..self.n).map(|a| self.mul(x, a)).collect()
    }

    /// Order of the permutation `R_x` (lcm of its cycle lengths).
    pub fn right_translation_order(&self, x: Elem) -> u64 {
        perm_order(&self.right_translation(x))
    }

    /// lcm of the orders of all right translations. Left associated powers
    /// satisfy `x^(m+1) = R_x^m(x)`, so exponents congruent modulo this
    /// value act identically on every element.
    pub fn right_translation_exponent(&self) -> u64 {
        (0..self.n)
            .map(|x| self.right_translation_order(x))
            .fold(1, crate::arith::lcm)
    }

    /// Mal'cev term `(x/y)·z`.
    pub fn malcev_eval(&self, x: Elem, y: Elem, z: Elem) -> Elem {
        self.mul(self.rdiv(x, y), z)
    }
}

/// Order of a permutation given as an image vector.
pub(crate) fn perm_order(images: &[usize]) -> u64 {
    let n = images.len();
    let mut seen = vec![false; n];
    let mut order = 1u64;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0u64;
        let mut p = start;
        while !seen[p] {
            seen[p] = true;
            p = images[p];
            len += 1;
        }
        order = crate::arith::lcm(order, len);
    }
    order
}

/// Direct product on pairs `(a, b) -> a * l2.order() + b`; the pair `(0,0)`
/// is the identity and maps to index 0.
pub fn direct_product(l1: &FiniteLoop, l2: &FiniteLoop) -> FiniteLoop {
    let (n1, n2) = (l1.order(), l2.order());
    let n = n1 * n2;
    let mut rows = vec![vec![0; n]; n];
    for a1 in 0..n1 {
        for a2 in 0..n2 {
            for b1 in 0..n1 {
                for b2 in 0..n2 {
                    rows[a1 * n2 + a2][b1 * n2 + b2] = l1.mul(a1, b1) * n2 + l2.mul(a2, b2);
                }
            }
        }
    }
    FiniteLoop::from_rows(rows).expect("direct product of loops is a loop")
}

/// Iterated direct product, folding left: `((L1 x L2) x L3) ...`.
/// The empty product is the trivial loop.
pub fn direct_product_many(factors: &[&FiniteLoop]) -> FiniteLoop {
    let mut acc = FiniteLoop::from_rows(vec![vec![0]]).unwrap();
    for f in factors {
        acc = direct_product(&acc, f);
    }
    acc
}
