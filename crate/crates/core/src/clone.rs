//! Bounded closure of binary term operations.
//!
//! The binary part of the clone of a loop is generated from the two
//! projections by pointwise multiplication and both pointwise divisions.
//! Closure is exact but capped: exceeding the cap is reported as an error,
//! never silently truncated.

use std::collections::{BTreeSet, HashSet};

use crate::error::{LoopError, Result};
use crate::loops::table::FiniteLoop;

/// A binary operation on a loop of order <= 256, stored row-major as bytes.
pub type BinOpTable = Vec<u8>;

/// Row-major byte table of the loop multiplication itself.
pub fn mul_table(l: &FiniteLoop) -> BinOpTable {
    let n = l.order();
    let mut out = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            out.push(l.mul(x, y) as u8);
        }
    }
    out
}

/// All binary term operations of `l`, i.e. the closure of the projections
/// under pointwise `·`, `\` and `/`. Errors with `CapExceeded` if more
/// than `cap` distinct operations appear.
pub fn binary_term_clone(l: &FiniteLoop, cap: usize) -> Result<BTreeSet<BinOpTable>> {
    let n = l.order();
    assert!(n <= 256, "byte-encoded tables need order <= 256");
    let cells = n * n;
    let mut proj1 = Vec::with_capacity(cells);
    let mut proj2 = Vec::with_capacity(cells);
    for x in 0..n {
        for y in 0..n {
            proj1.push(x as u8);
            proj2.push(y as u8);
        }
    }
    let mut ops: Vec<BinOpTable> = vec![proj1, proj2];
    ops.dedup(); // order 1: the two projections coincide
    let mut seen: HashSet<BinOpTable> = ops.iter().cloned().collect();

    let combine = |f: &[u8], g: &[u8], which: u8| -> BinOpTable {
        f.iter()
            .zip(g)
            .map(|(&a, &b)| {
                let (a, b) = (a as usize, b as usize);
                (match which {
                    0 => l.mul(a, b),
                    1 => l.ldiv(a, b),
                    _ => l.rdiv(a, b),
                }) as u8
            })
            .collect()
    };

    let mut next = 0;
    while next < ops.len() {
        for j in 0..=next {
            for which in 0..3u8 {
                for (f, g) in [(next, j), (j, next)] {
                    let h = combine(&ops[f], &ops[g], which);
                    if !seen.contains(&h) {
                        if ops.len() >= cap {
                            return Err(LoopError::CapExceeded { cap });
                        }
                        seen.insert(h.clone());
                        ops.push(h);
                    }
                }
            }
        }
        next += 1;
    }
    Ok(ops.into_iter().collect())
}

/// The binary operations in `clone_set` that are loop tables with
/// identity 0, returned as row tables.
pub fn loop_tables_in(clone_set: &BTreeSet<BinOpTable>, n: usize) -> Vec<Vec<Vec<usize>>> {
    clone_set
        .iter()
        .filter_map(|t| {
            let rows: Vec<Vec<usize>> = (0..n)
                .map(|x| t[x * n..(x + 1) * n].iter().map(|&v| v as usize).collect())
                .collect();
            FiniteLoop::from_rows(rows.clone()).ok().map(|_| rows)
        })
        .collect()
}
