//! Function tables `Z_q^m -> Z_p` and linear spans over `Z_p`.

use crate::arith::mod_inverse;
use crate::error::{LoopError, Result};

/// A zero-preserving function `Z_q^arity -> Z_p`, tabulated with the
/// big-endian point index `x_1·q^(m-1) + ... + x_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FnTable {
    pub q: u64,
    pub p: u64,
    pub arity: usize,
    values: Vec<u64>,
}

impl FnTable {
    pub fn new(q: u64, p: u64, arity: usize, values: Vec<u64>) -> Result<Self> {
        if values.len() != (q as usize).pow(arity as u32)
            || values.iter().any(|&v| v >= p)
            || values.first() != Some(&0)
        {
            return Err(LoopError::BadFunctionTable);
        }
        Ok(FnTable { q, p, arity, values })
    }

    pub fn unary(q: u64, p: u64, values: Vec<u64>) -> Result<Self> {
        FnTable::new(q, p, 1, values)
    }

    pub fn from_fn(q: u64, p: u64, arity: usize, f: impl Fn(&[u64]) -> u64) -> Result<Self> {
        let size = (q as usize).pow(arity as u32);
        let mut point = vec![0u64; arity];
        let mut values = Vec::with_capacity(size);
        for idx in 0..size {
            decode_point(idx, q, &mut point);
            values.push(f(&point));
        }
        FnTable::new(q, p, arity, values)
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn eval(&self, point: &[u64]) -> u64 {
        debug_assert_eq!(point.len(), self.arity);
        let mut idx = 0usize;
        for &x in point {
            idx = idx * self.q as usize + (x % self.q) as usize;
        }
        self.values[idx]
    }

    /// Unary evaluation shortcut.
    pub fn at(&self, x: u64) -> u64 {
        self.values[(x % self.q) as usize]
    }

    /// The unary table `x -> f(c·x)`.
    pub fn scale_arg(&self, c: u64) -> FnTable {
        debug_assert_eq!(self.arity, 1);
        let values = (0..self.q).map(|x| self.at(c * x)).collect();
        FnTable::new(self.q, self.p, 1, values).expect("scaling preserves the table shape")
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }
}

pub(crate) fn decode_point(mut idx: usize, q: u64, out: &mut [u64]) {
    for slot in out.iter_mut().rev() {
        *slot = (idx % q as usize) as u64;
        idx /= q as usize;
    }
}

/// A subspace of `Z_p^ncols` in reduced row echelon form.
#[derive(Debug, Clone)]
pub struct SpanBasis {
    pub p: u64,
    pub ncols: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl SpanBasis {
    pub fn empty(p: u64, ncols: usize) -> Self {
        SpanBasis {
            p,
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    /// Residual of `v` after eliminating all pivots.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut out = v.to_vec();
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            let c = out[piv] % p;
            if c != 0 {
                for (o, r) in out.iter_mut().zip(row) {
                    *o = (*o + (p - c) * r) % p;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Inserts a vector, keeping reduced echelon form. Returns true if the
    /// dimension grew.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        let p = self.p;
        let mut v = self.reduce(v);
        let Some(piv) = v.iter().position(|&x| x % p != 0) else {
            return false;
        };
        let inv = mod_inverse(v[piv], p).expect("nonzero residue mod a prime");
        for x in v.iter_mut() {
            *x = *x * inv % p;
        }
        for row in self.rows.iter_mut() {
            let c = row[piv];
            if c != 0 {
                for (r, &w) in row.iter_mut().zip(&v) {
                    *r = (*r + (p - c) * w) % p;
                }
            }
        }
        let at = self.pivots.partition_point(|&x| x < piv);
        self.pivots.insert(at, piv);
        self.rows.insert(at, v);
        true
    }
}

/// Row space over `Z_p` spanned by `{ x -> f(<α, x>) : α in Z_q^n, α != 0 }`,
/// i.e. the `n`-ary part of the clonoid generated by the unary `f`.
pub fn clonoid_span(f: &FnTable, n: usize) -> SpanBasis {
    debug_assert_eq!(f.arity, 1);
    let q = f.q;
    let size = (q as usize).pow(n as u32);
    let mut span = SpanBasis::empty(f.p, size);
    let mut alpha = vec![0u64; n];
    let mut point = vec![0u64; n];
    for a_idx in 1..size {
        decode_point(a_idx, q, &mut alpha);
        let mut vec = Vec::with_capacity(size);
        for x_idx in 0..size {
            decode_point(x_idx, q, &mut point);
            let dot: u64 = alpha.iter().zip(&point).map(|(&a, &x)| a * x).sum();
            vec.push(f.at(dot));
        }
        span.insert(&vec);
    }
    span
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn span_dimensions_match_hand_computation() {
        // q=3, p=2, f=(0,1,1): f(2x) = f(x), so dim C^[1] = 1 and the
        // 8 binary generators span a 4-dimensional space
        let f = FnTable::unary(3, 2, vec![0, 1, 1]).unwrap();
        assert_eq!(clonoid_span(&f, 1).dim(), 1);
        assert_eq!(clonoid_span(&f, 2).dim(), 4);

        // q=3, p=2, f=(0,1,0): f and f(2x) are independent
        let g = FnTable::unary(3, 2, vec![0, 1, 0]).unwrap();
        assert_eq!(clonoid_span(&g, 1).dim(), 2);
        assert_eq!(clonoid_span(&g, 2).dim(), 8);

        let zero = FnTable::unary(3, 2, vec![0, 0, 0]).unwrap();
        assert_eq!(clonoid_span(&zero, 1).dim(), 0);
        assert_eq!(clonoid_span(&zero, 2).dim(), 0);
    }

    #[test]
    fn reduce_and_contains() {
        let f = FnTable::unary(3, 2, vec![0, 1, 0]).unwrap();
        let span = clonoid_span(&f, 1);
        assert!(span.contains(f.values()));
        assert!(span.contains(&[0, 1, 1])); // f(x) + f(2x)
        assert!(!span.contains(&[1, 0, 0])); // not zero-preserving
    }

    #[test]
    fn table_shape_is_validated() {
        assert!(FnTable::unary(3, 2, vec![1, 0, 0]).is_err()); // f(0) != 0
        assert!(FnTable::unary(3, 2, vec![0, 2, 0]).is_err()); // value >= p
        assert!(FnTable::unary(3, 2, vec![0, 1]).is_err()); // wrong length
    }
}
