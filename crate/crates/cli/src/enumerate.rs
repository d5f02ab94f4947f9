//! Exhaustive enumeration of loops of small order by Latin-square
//! completion, with an optional canonical-form filter for one table per
//! isomorphism class.

use finloop::loops::upper_central_series;
use finloop::{FiniteLoop, LoopError};

use crate::error::Result;

/// Hard cap: beyond order 8 the search space is out of desk range.
pub const MAX_ORDER: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LoopFilter {
    All,
    Nilpotent,
    NilpotentNonassociative,
}

impl LoopFilter {
    pub fn accepts(self, l: &FiniteLoop) -> Result<bool> {
        Ok(match self {
            LoopFilter::All => true,
            LoopFilter::Nilpotent => upper_central_series(l)
                .map_err(LoopError::from)?
                .nilpotent,
            LoopFilter::NilpotentNonassociative => {
                !l.is_associative() && upper_central_series(l)?.nilpotent
            }
        })
    }
}

/// Enumerates all loops of the given order with identity row and column
/// fixed, in lexicographic table order. With `up_to_iso`, only tables that
/// are the lexicographic minimum over relabelings fixing 0 are kept, so
/// each isomorphism class appears exactly once.
pub fn enumerate_loops(
    order: usize,
    filter: LoopFilter,
    up_to_iso: bool,
) -> Result<Vec<FiniteLoop>> {
    if order == 0 || order > MAX_ORDER {
        return Err(LoopError::OrderTooLarge {
            order,
            max: MAX_ORDER,
        }
        .into());
    }
    let mut out = Vec::new();
    let mut grid = vec![vec![0usize; order]; order];
    for (i, row) in grid.iter_mut().enumerate() {
        row[0] = i;
    }
    grid[0] = (0..order).collect();
    let full: u16 = if order == 16 { !0 } else { (1u16 << order) - 1 };
    let mut row_used: Vec<u16> = (0..order).map(|r| 1 << grid[r][0]).collect();
    let mut col_used: Vec<u16> = (0..order).map(|c| 1 << grid[0][c]).collect();
    row_used[0] = full;
    col_used[0] = full;

    let perms = relabelings(order);
    complete(
        &mut grid,
        &mut row_used,
        &mut col_used,
        order,
        1,
        1,
        &mut |rows| {
            if up_to_iso && !is_canonical(rows, &perms) {
                return Ok(());
            }
            let l = FiniteLoop::from_rows(rows.to_vec())?;
            if filter.accepts(&l)? {
                out.push(l);
            }
            Ok(())
        },
    )?;
    Ok(out)
}

fn complete(
    grid: &mut Vec<Vec<usize>>,
    row_used: &mut Vec<u16>,
    col_used: &mut Vec<u16>,
    order: usize,
    r: usize,
    c: usize,
    emit: &mut impl FnMut(&[Vec<usize>]) -> Result<()>,
) -> Result<()> {
    if r == order {
        return emit(grid);
    }
    let (next_r, next_c) = if c + 1 == order { (r + 1, 1) } else { (r, c + 1) };
    let mut candidates = !(row_used[r] | col_used[c]) & low_mask(order);
    while candidates != 0 {
        let v = candidates.trailing_zeros() as usize;
        candidates &= candidates - 1;
        grid[r][c] = v;
        row_used[r] |= 1 << v;
        col_used[c] |= 1 << v;
        complete(grid, row_used, col_used, order, next_r, next_c, emit)?;
        row_used[r] &= !(1 << v);
        col_used[c] &= !(1 << v);
    }
    Ok(())
}

fn low_mask(order: usize) -> u16 {
    if order >= 16 {
        !0
    } else {
        (1u16 << order) - 1
    }
}

/// All permutations of `1..order` (identity fixed at 0), as full image
/// vectors including the fixed point.
fn relabelings(order: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut work: Vec<usize> = (1..order).collect();
    permute(&mut work, 0, &mut |p| {
        let mut images = Vec::with_capacity(order);
        images.push(0);
        images.extend_from_slice(p);
        out.push(images);
    });
    out
}

fn permute(items: &mut Vec<usize>, at: usize, visit: &mut impl FnMut(&[usize])) {
    if at == items.len() {
        visit(items);
        return;
    }
    for i in at..items.len() {
        items.swap(at, i);
        permute(items, at + 1, visit);
        items.swap(at, i);
    }
}

/// True when no relabeling fixing 0 yields a lexicographically smaller
/// table. Comparison walks the relabeled table row-major with early exit.
fn is_canonical(rows: &[Vec<usize>], perms: &[Vec<usize>]) -> bool {
    let n = rows.len();
    for sigma in perms {
        let mut inverse = vec![0; n];
        for (x, &y) in sigma.iter().enumerate() {
            inverse[y] = x;
        }
        for a in 0..n {
            let mut decided = false;
            for b in 0..n {
                let relabeled = sigma[rows[inverse[a]][inverse[b]]];
                match relabeled.cmp(&rows[a][b]) {
                    std::cmp::Ordering::Less => return false,
                    std::cmp::Ordering::Greater => {
                        decided = true;
                        break;
                    }
                    std::cmp::Ordering::Equal => {}
                }
            }
            if decided {
                break;
            }
        }
    }
    true
}
