//! Subloops, normal subloops, and the loop center.

use crate::error::{LoopError, Result};
use crate::loops::table::{Elem, FiniteLoop};

/// A subloop given by its sorted element set. Always contains the identity
/// and is closed under multiplication and both divisions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subloop {
    elems: Vec<Elem>,
}

impl Subloop {
    /// Wraps a sorted element set after checking closure.
    pub fn checked(l: &FiniteLoop, mut elems: Vec<Elem>) -> Result<Self> {
        elems.sort_unstable();
        elems.dedup();
        if elems.first() != Some(&0) {
            return Err(LoopError::NotASubloop);
        }
        let member = membership_mask(l.order(), &elems);
        for &a in &elems {
            for &b in &elems {
                if !member[l.mul(a, b)] || !member[l.ldiv(a, b)] || !member[l.rdiv(a, b)] {
                    return Err(LoopError::NotASubloop);
                }
            }
        }
        Ok(Subloop { elems })
    }

    /// The trivial subloop `{0}`.
    pub fn trivial() -> Self {
        Subloop { elems: vec![0] }
    }

    /// The whole loop as a subloop.
    pub fn whole(l: &FiniteLoop) -> Self {
        Subloop {
            elems: l.elements().collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elems
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.elems.binary_search(&x).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elems.len() == 1
    }

    /// Sorted intersection with another subloop of the same loop.
    /// The intersection of subloops is again a subloop.
    pub fn intersect(&self, other: &Subloop) -> Subloop {
        let elems = self
            .elems
            .iter()
            .copied()
            .filter(|&x| other.contains(x))
            .collect();
        Subloop { elems }
    }

    /// The subloop relabeled as a standalone loop, together with the map
    /// from new indices to the original elements. Element 0 stays 0.
    pub fn as_loop(&self, l: &FiniteLoop) -> (FiniteLoop, Vec<Elem>) {
        let old_of_new = self.elems.clone();
        let mut new_of_old = vec![usize::MAX; l.order()];
        for (i, &e) in old_of_new.iter().enumerate() {
            new_of_old[e] = i;
        }
        let k = old_of_new.len();
        let rows = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| new_of_old[l.mul(old_of_new[i], old_of_new[j])])
                    .collect()
            })
            .collect();
        let sub = FiniteLoop::from_rows(rows).expect("subloop closure gives a loop");
        (sub, old_of_new)
    }
}

fn membership_mask(n: usize, elems: &[Elem]) -> Vec<bool> {
    let mut mask = vec![false; n];
    for &e in elems {
        mask[e] = true;
    }
    mask
}

/// Smallest subloop containing `gens`: closure of `gens ∪ {0}` under
/// multiplication and both divisions.
pub fn subloop_generated(l: &FiniteLoop, gens: &[Elem]) -> Subloop {
    let n = l.order();
    let mut member = vec![false; n];
    member[0] = true;
    let mut stack: Vec<Elem> = vec![0];
    for &g in gens {
        if !member[g] {
            member[g] = true;
            stack.push(g);
        }
    }
    let mut elems: Vec<Elem> = stack.clone();
    while let Some(a) = stack.pop() {
        // combine a with every current member, both ways around
        let current: Vec<Elem> = elems.clone();
        for &b in &current {
            for v in [
                l.mul(a, b),
                l.mul(b, a),
                l.ldiv(a, b),
                l.ldiv(b, a),
                l.rdiv(a, b),
                l.rdiv(b, a),
            ] {
                if !member[v] {
                    member[v] = true;
                    elems.push(v);
                    stack.push(v);
                }
            }
        }
    }
    elems.sort_unstable();
    Subloop { elems }
}

/// A subloop `N` with `(ab)N = a(bN) = a(Nb)` for all `a`, `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalSubloop {
    base: Subloop,
}

impl NormalSubloop {
    /// Checks normality of a subloop.
    pub fn checked(l: &FiniteLoop, base: Subloop) -> Result<Self> {
        if !is_normal(l, &base)? {
            return Err(LoopError::NotNormal);
        }
        Ok(NormalSubloop { base })
    }

    pub fn trivial() -> Self {
        NormalSubloop {
            base: Subloop::trivial(),
        }
    }

    pub fn whole(l: &FiniteLoop) -> Self {
        NormalSubloop {
            base: Subloop::whole(l),
        }
    }

    pub fn subloop(&self) -> &Subloop {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.base.order()
    }

    pub fn elements(&self) -> &[Elem] {
        self.base.elements()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.base.contains(x)
    }

    pub fn is_trivial(&self) -> bool {
        self.base.is_trivial()
    }

    pub fn is_whole(&self, l: &FiniteLoop) -> bool {
        self.base.order() == l.order()
    }

    pub fn as_loop(&self, l: &FiniteLoop) -> (FiniteLoop, Vec<Elem>) {
        self.base.as_loop(l)
    }
}

/// True iff the three coset sets `(ab)N`, `a(bN)`, `a(Nb)` coincide for all
/// pairs `a`, `b`. Errors if `s` is not closed.
pub fn is_normal(l: &FiniteLoop, s: &Subloop) -> Result<bool> {
    // re-check closure so callers can pass arbitrary sorted sets
    Subloop::checked(l, s.elements().to_vec())?;
    let n = l.order();
    let mask = membership_mask(n, s.elements());
    let mut set1 = vec![false; n];
    let mut set2 = vec![false; n];
    let mut set3 = vec![false; n];
    for a in 0..n {
        for b in 0..n {
            set1.iter_mut().for_each(|v| *v = false);
            set2.iter_mut().for_each(|v| *v = false);
            set3.iter_mut().for_each(|v| *v = false);
            let ab = l.mul(a, b);
            for x in 0..n {
                if !mask[x] {
                    continue;
                }
                set1[l.mul(ab, x)] = true;
                set2[l.mul(a, l.mul(b, x))] = true;
                set3[l.mul(a, l.mul(x, b))] = true;
            }
            if set1 != set2 || set1 != set3 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The center: elements that commute and associate with all pairs, i.e.
/// `z` with `zx = xz`, `(zx)y = z(xy)`, `(xz)y = x(zy)` and `(xy)z = x(yz)`
/// for all `x`, `y`. Returned as a normal subloop; closure and normality
/// are asserted rather than assumed.
pub fn center(l: &FiniteLoop) -> Result<NormalSubloop> {
    let n = l.order();
    let mut elems = Vec::new();
    'outer: for z in 0..n {
        for x in 0..n {
            if l.mul(z, x) != l.mul(x, z) {
                continue 'outer;
            }
        }
        for x in 0..n {
            let zx = l.mul(z, x);
            let xz = l.mul(x, z);
            for y in 0..n {
                let xy = l.mul(x, y);
                if l.mul(zx, y) != l.mul(z, xy)
                    || l.mul(xz, y) != l.mul(x, l.mul(z, y))
                    || l.mul(xy, z) != l.mul(x, l.mul(y, z))
                {
                    continue 'outer;
                }
            }
        }
        elems.push(z);
    }
    let sub = Subloop::checked(l, elems)
        .map_err(|_| LoopError::internal("center is not closed"))?;
    NormalSubloop::checked(l, sub).map_err(|_| LoopError::internal("center is not normal"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::builtin;

    #[test]
    fn generated_subloop_of_z6() {
        let z6 = builtin::cyclic(6);
        let s = subloop_generated(&z6, &[2]);
        assert_eq!(s.elements(), &[0, 2, 4]);
        let t = subloop_generated(&z6, &[]);
        assert_eq!(t.elements(), &[0]);
    }

    #[test]
    fn rotation_subgroup_of_d8() {
        let d8 = builtin::dihedral(4);
        let s = subloop_generated(&d8, &[1]);
        assert_eq!(s.elements(), &[0, 1, 2, 3]);
    }

    #[test]
    fn normality_in_abelian_and_s3() {
        let z6 = builtin::cyclic(6);
        let s = subloop_generated(&z6, &[3]);
        assert!(is_normal(&z6, &s).unwrap());
        assert!(is_normal(&z6, &Subloop::whole(&z6)).unwrap());

        let s3 = builtin::symmetric3();
        // a 2-element subgroup: pick an involution
        let invol = (1..6).find(|&x| s3.element_order(x) == 2).unwrap();
        let two = subloop_generated(&s3, &[invol]);
        assert_eq!(two.order(), 2);
        assert!(!is_normal(&s3, &two).unwrap());
    }

    #[test]
    fn centers() {
        let z6 = builtin::cyclic(6);
        assert_eq!(center(&z6).unwrap().order(), 6);
        let d8 = builtin::dihedral(4);
        assert_eq!(center(&d8).unwrap().order(), 2);
        let s3 = builtin::symmetric3();
        assert_eq!(center(&s3).unwrap().order(), 1);
    }

    #[test]
    fn group_center_matches_commutation_only_center() {
        // for groups the associativity conditions are vacuous
        for g in [builtin::dihedral(4), builtin::quaternion8(), builtin::cyclic(8)] {
            let by_def = center(&g).unwrap();
            let commuting: Vec<usize> = g
                .elements()
                .filter(|&z| g.elements().all(|x| g.mul(z, x) == g.mul(x, z)))
                .collect();
            assert_eq!(by_def.elements(), commuting.as_slice());
        }
    }
}
