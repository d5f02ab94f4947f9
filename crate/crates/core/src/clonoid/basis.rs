//! Basis parameter search and the coefficient identities
//! `f(cx) = Σ d_i f(a^i x)`.

use crate::arith::mod_inverse;
use crate::error::{LoopError, Result};
use crate::clonoid::span::{clonoid_span, decode_point, FnTable, SpanBasis};

/// A basis of the unary clonoid part, selected from the orbit of `f`
/// under `x -> a·x`.
///
/// `powers[i]` is the value `a^(e_i) mod q` for the retained orbit
/// members `B_i(x) = f(powers[i]·x)`; these are linearly
/// independent and span, so `k = dim C^[1]`. When the orbit members are
/// pairwise distinct the exponents are simply `0..k`, but an `f` with
/// symmetries can force gaps: the orbit of a spanning `a` may repeat
/// before covering the dimension, and then the first independent members
/// are kept.
#[derive(Debug, Clone)]
pub struct ClonoidBasis {
    pub f: FnTable,
    pub a: u64,
    pub k: usize,
    /// Multipliers `a^(e_i) mod q` of the retained orbit members.
    pub powers: Vec<u64>,
    pub b: Vec<FnTable>,
}

/// One row of coefficients: `f(c·x) = Σ d_i f(a^i·x)` pointwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientRow {
    pub c: u64,
    pub d: Vec<u64>,
}

/// Finds the smallest `a` whose orbit `{f(a^i x)}` spans the unary
/// clonoid part, and keeps the first linearly independent members. Every
/// nonzero `f` admits one: the orbit of a primitive root is the whole
/// generating family, so exhausting the search is an internal error.
pub fn find_basis_parameter(f: &FnTable) -> Result<ClonoidBasis> {
    if f.is_zero() {
        return Err(LoopError::BadFunctionTable);
    }
    let dim = clonoid_span(f, 1).dim();
    for a in 1..f.q {
        // the orbit is a cycle of the substitution h -> h(a·x), so it
        // closes exactly when it returns to f
        let mut orbit: Vec<(u64, FnTable)> = vec![(1, f.clone())];
        let mut power = a;
        loop {
            let next = f.scale_arg(power);
            if next == *f {
                break;
            }
            orbit.push((power, next));
            power = power * a % f.q;
        }
        let mut check = SpanBasis::empty(f.p, f.q as usize);
        let mut powers = Vec::new();
        let mut b = Vec::new();
        for (mult, table) in orbit {
            if check.insert(table.values()) {
                powers.push(mult);
                b.push(table);
            }
        }
        if check.dim() == dim {
            return Ok(ClonoidBasis {
                f: f.clone(),
                a,
                k: dim,
                powers,
                b,
            });
        }
    }
    Err(LoopError::InternalInconsistency)
}

/// Solves `f(cx) = Σ d_i B_i(x)` over `Z_p` for every `c in Z_q`. The
/// solution is unique because `B` is a basis.
pub fn coefficient_rows(basis: &ClonoidBasis) -> Result<Vec<CoefficientRow>> {
    let f = &basis.f;
    (0..f.q)
        .map(|c| {
            let target = f.scale_arg(c);
            let d = solve_unique(
                f.p,
                &basis.b.iter().map(|t| t.values().to_vec()).collect::<Vec<_>>(),
                target.values(),
            )
            .ok_or(LoopError::NoSolution)?;
            Ok(CoefficientRow { c, d })
        })
        .collect()
}

/// Solves `Σ d_j cols[j] = target` over `Z_p` when the columns are
/// independent. Returns `None` if inconsistent.
fn solve_unique(p: u64, cols: &[Vec<u64>], target: &[u64]) -> Option<Vec<u64>> {
    let k = cols.len();
    let rows = target.len();
    // augmented matrix [cols | target], eliminated row by row
    let mut m: Vec<Vec<u64>> = (0..rows)
        .map(|r| {
            let mut row: Vec<u64> = cols.iter().map(|c| c[r] % p).collect();
            row.push(target[r] % p);
            row
        })
        .collect();
    let mut pivot_rows = Vec::new();
    for col in 0..k {
        let Some(pr) = (0..rows).find(|&r| !pivot_rows.contains(&r) && m[r][col] != 0) else {
            return None; // dependent columns; callers guarantee independence
        };
        let inv = mod_inverse(m[pr][col], p)?;
        for x in m[pr].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..rows {
            if r != pr && m[r][col] != 0 {
                let c = m[r][col];
                let pivot_row = m[pr].clone();
                for (x, &w) in m[r].iter_mut().zip(&pivot_row) {
                    *x = (*x + (p - c) * w) % p;
                }
            }
        }
        pivot_rows.push(pr);
    }
    // consistency: rows without pivot must have zero in the target column
    for r in 0..rows {
        if !pivot_rows.contains(&r) && m[r][k] != 0 {
            return None;
        }
    }
    let mut d = vec![0; k];
    for (col, &pr) in pivot_rows.iter().enumerate() {
        d[col] = m[pr][k];
    }
    Some(d)
}

/// Checks the closed dimension formula `dim C^[n] = k·(q^n - 1)/(q - 1)`
/// against the measured span dimension.
pub fn dimension_formula_check(f: &FnTable, n: usize) -> Result<bool> {
    let basis = find_basis_parameter(f)?;
    let q = f.q as usize;
    let expected = basis.k * (q.pow(n as u32) - 1) / (q - 1);
    Ok(clonoid_span(f, n).dim() == expected)
}

/// The function supported on the line through `y` with values given by
/// `h`: `h_L(λ·y) = h(λ)` and `0` elsewhere. Both `h` and the result are
/// checked for clonoid membership.
pub fn h_l_construct(f: &FnTable, h: &FnTable, y: &[u64]) -> Result<FnTable> {
    let q = f.q;
    if y.iter().all(|&c| c % q == 0) {
        return Err(LoopError::MalformedTerm("line direction must be nonzero".into()));
    }
    if !clonoid_span(f, 1).contains(h.values()) {
        return Err(LoopError::NotInClonoid);
    }
    let n = y.len();
    let lead = y.iter().position(|&c| c % q != 0).unwrap();
    let lead_inv = mod_inverse(y[lead] % q, q).expect("nonzero mod a prime");
    let size = (q as usize).pow(n as u32);
    let mut point = vec![0u64; n];
    let mut values = Vec::with_capacity(size);
    for idx in 0..size {
        decode_point(idx, q, &mut point);
        // x on the line iff x = λ·y with λ = x[lead]·y[lead]^-1
        let lambda = point[lead] * lead_inv % q;
        let on_line = point
            .iter()
            .zip(y)
            .all(|(&x, &c)| x % q == lambda * c % q);
        values.push(if on_line { h.at(lambda) } else { 0 });
    }
    let table = FnTable::new(q, f.p, n, values)?;
    if !clonoid_span(f, n).contains(table.values()) {
        return Err(LoopError::NotInClonoid);
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f011() -> FnTable {
        FnTable::unary(3, 2, vec![0, 1, 1]).unwrap()
    }

    fn f010() -> FnTable {
        FnTable::unary(3, 2, vec![0, 1, 0]).unwrap()
    }

    #[test]
    fn basis_parameters() {
        let b = find_basis_parameter(&f011()).unwrap();
        assert_eq!((b.a, b.k), (1, 1));

        let b = find_basis_parameter(&f010()).unwrap();
        assert_eq!((b.a, b.k), (2, 2));

        // q=5: indicator of {1,4} is fixed by negation, so the basis comes
        // from the orbit of a=2 collapsed to its two distinct members
        let f = FnTable::unary(5, 2, vec![0, 1, 0, 0, 1]).unwrap();
        let b = find_basis_parameter(&f).unwrap();
        assert_eq!(b.k, 2);
        assert_eq!(clonoid_span(&f, 1).dim(), 2);
    }

    #[test]
    fn zero_function_is_rejected() {
        let zero = FnTable::unary(3, 2, vec![0, 0, 0]).unwrap();
        assert!(find_basis_parameter(&zero).is_err());
    }

    #[test]
    fn coefficient_row_examples() {
        let b = find_basis_parameter(&f010()).unwrap();
        let rows = coefficient_rows(&b).unwrap();
        assert_eq!(rows[0].d, vec![0, 0]); // f(0·x) = 0
        assert_eq!(rows[1].d, vec![1, 0]); // f(1·x) = f(x)
        assert_eq!(rows[2].d, vec![0, 1]); // f(2·x) is the second basis element

        // the identity holds pointwise for every c
        for row in &rows {
            for x in 0..3 {
                let lhs = b.f.at(row.c * x);
                let rhs: u64 = row
                    .d
                    .iter()
                    .zip(&b.b)
                    .map(|(&d, t)| d * t.at(x))
                    .sum::<u64>()
                    % 2;
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn dimension_formula_on_examples() {
        assert!(dimension_formula_check(&f011(), 1).unwrap());
        assert!(dimension_formula_check(&f011(), 2).unwrap());
        assert!(dimension_formula_check(&f010(), 1).unwrap());
        assert!(dimension_formula_check(&f010(), 2).unwrap());
    }

    #[test]
    fn h_l_on_the_diagonal() {
        let f = f011();
        // h = f, n = 1, y = (1): h_L is f itself
        let hl = h_l_construct(&f, &f, &[1]).unwrap();
        assert_eq!(hl, f);

        // q=3, n=2, y=(1,1): supported on the diagonal line
        let hl = h_l_construct(&f, &f, &[1, 1]).unwrap();
        for x in 0..3u64 {
            for y in 0..3u64 {
                let expect = if x == y { f.at(x) } else { 0 };
                assert_eq!(hl.eval(&[x, y]), expect);
            }
        }

        // h = 0 -> zero function
        let zero = FnTable::unary(3, 2, vec![0, 0, 0]).unwrap();
        let hl = h_l_construct(&f, &zero, &[1, 2]).unwrap();
        assert!(hl.is_zero());
    }

    #[test]
    fn h_l_rejects_non_members() {
        let f = f011(); // C^[1] is spanned by f alone
        let outside = f010();
        assert!(matches!(
            h_l_construct(&f, &outside, &[1]),
            Err(LoopError::NotInClonoid)
        ));
    }
}
