//! Quotients by normal subloops.

use crate::error::{LoopError, Result};
use crate::loops::subloop::NormalSubloop;
use crate::loops::table::{Elem, FiniteLoop};

/// A quotient loop together with the projection data.
///
/// Cosets are represented by their minimal element; the coset of the
/// identity is coset 0 and the remaining cosets are ordered by
/// representative.
#[derive(Debug, Clone)]
pub struct QuotientLoop {
    /// Canonical representative (minimal element) of each coset.
    pub reps: Vec<Elem>,
    /// Coset index of each element of the parent.
    pub proj: Vec<usize>,
    /// The loop structure on the cosets.
    pub quot: FiniteLoop,
}

impl QuotientLoop {
    /// Image of a parent subset in the quotient, as a sorted coset-index set.
    pub fn image_of(&self, elems: &[Elem]) -> Vec<usize> {
        let mut out: Vec<usize> = elems.iter().map(|&e| self.proj[e]).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Preimage of a coset-index set, as a sorted parent element set.
    pub fn preimage_of(&self, cosets: &[usize]) -> Vec<Elem> {
        let mut mask = vec![false; self.reps.len()];
        for &c in cosets {
            mask[c] = true;
        }
        (0..self.proj.len()).filter(|&x| mask[self.proj[x]]).collect()
    }
}

/// Quotient of `l` by the normal subloop `n`: cosets `aN` with
/// `(aN)(bN) = (ab)N`.
pub fn quotient(l: &FiniteLoop, n: &NormalSubloop) -> Result<QuotientLoop> {
    let order = l.order();
    let mut proj = vec![usize::MAX; order];
    let mut reps = Vec::new();
    for a in 0..order {
        if proj[a] != usize::MAX {
            continue;
        }
        // a is minimal in its (left) coset since we scan in ascending order
        let idx = reps.len();
        reps.push(a);
        for &x in n.elements() {
            let ax = l.mul(a, x);
            if proj[ax] != usize::MAX && proj[ax] != idx {
                return Err(LoopError::NotNormal);
            }
            proj[ax] = idx;
        }
    }
    if reps.len() * n.order() != order {
        return Err(LoopError::NotNormal);
    }
    let k = reps.len();
    let rows: Vec<Vec<usize>> = (0..k)
        .map(|i| (0..k).map(|j| proj[l.mul(reps[i], reps[j])]).collect())
        .collect();
    // well-definedness check: products of arbitrary coset members must land
    // in the same coset as products of representatives
    for a in 0..order {
        for b in 0..order {
            if proj[l.mul(a, b)] != rows[proj[a]][proj[b]] {
                return Err(LoopError::NotNormal);
            }
        }
    }
    let quot = FiniteLoop::from_rows(rows).map_err(|_| LoopError::NotNormal)?;
    Ok(QuotientLoop { reps, proj, quot })
}
