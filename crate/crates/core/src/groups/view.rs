//! Groups presented as loops: inverses, commutators, the derived subgroup,
//! and the `x·y·[x,y]^c` reduct family of 2-nilpotent groups.

use crate::arith::{lcm, mod_inverse};
use crate::error::{LoopError, Result};
use crate::loops::subloop::{center, subloop_generated, Subloop};
use crate::loops::table::{Elem, FiniteLoop};

/// An associative loop with its group-specific derived data.
///
/// The commutator convention is `[x,y] = x⁻¹y⁻¹xy`, so `xy = yx·[x,y]`.
#[derive(Debug, Clone)]
pub struct GroupView {
    pub group: FiniteLoop,
    pub inverse: Vec<Elem>,
    commutator: Vec<Elem>,
    pub derived: Subloop,
    pub derived_exponent: u64,
}

impl GroupView {
    /// Builds the view, rejecting non-associative input.
    pub fn new(l: FiniteLoop) -> Result<Self> {
        if !l.is_associative() {
            return Err(LoopError::NotAssociative);
        }
        let n = l.order();
        let inverse: Vec<Elem> = (0..n).map(|x| l.ldiv(x, 0)).collect();
        let mut commutator = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let a = l.mul(inverse[x], inverse[y]);
                commutator[x * n + y] = l.mul(a, l.mul(x, y));
            }
        }
        let derived = subloop_generated(&l, &commutator);
        let derived_exponent = derived
            .elements()
            .iter()
            .map(|&x| l.element_order(x) as u64)
            .fold(1, lcm);
        Ok(GroupView {
            group: l,
            inverse,
            commutator,
            derived,
            derived_exponent,
        })
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// `[x,y] = x⁻¹y⁻¹xy`
    pub fn commutator(&self, x: Elem, y: Elem) -> Elem {
        self.commutator[x * self.group.order() + y]
    }

    /// `x^e` (any parenthesization; the view is associative).
    pub fn power(&self, x: Elem, e: u64) -> Elem {
        let m = self.group.element_order(x) as u64;
        self.group.left_power(x, (e % m) as usize)
    }

    /// True iff every commutator is central.
    pub fn is_2_nilpotent(&self) -> Result<bool> {
        let z = center(&self.group)?;
        Ok(self.derived.elements().iter().all(|&d| z.contains(d)))
    }

    /// The Mal'cev polynomial
    /// `m_c(x,y,z) = xy⁻¹z ([x,y][x,z]⁻¹[y,z])^c`.
    pub fn malcev_eval(&self, c: u64, x: Elem, y: Elem, z: Elem) -> Elem {
        let g = &self.group;
        let base = g.mul(g.mul(x, self.inverse[y]), z);
        let w = g.mul(
            g.mul(self.commutator(x, y), self.inverse[self.commutator(x, z)]),
            self.commutator(y, z),
        );
        g.mul(base, self.power(w, c))
    }

    /// Checks both Mal'cev identities `m(x,y,y) = x = m(y,y,x)`
    /// exhaustively for the parameter `c`.
    pub fn malcev_verify(&self, c: u64) -> Result<()> {
        let n = self.order();
        for x in 0..n {
            for y in 0..n {
                if self.malcev_eval(c, x, y, y) != x || self.malcev_eval(c, y, y, x) != x {
                    return Err(LoopError::MalcevIdentityViolation { c });
                }
            }
        }
        Ok(())
    }

    /// The ternary function `m_c` materialized as a flat table indexed by
    /// `(x·n + y)·n + z`, after verifying the Mal'cev identities.
    pub fn malcev_table(&self, c: u64) -> Result<Vec<Elem>> {
        self.malcev_verify(c)?;
        let n = self.order();
        let mut out = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    out.push(self.malcev_eval(c, x, y, z));
                }
            }
        }
        Ok(out)
    }

    /// The candidate reduct table `x*y = xy·[x,y]^c`.
    pub fn family_rows(&self, c: u64) -> Vec<Vec<Elem>> {
        let n = self.order();
        (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| {
                        self.group
                            .mul(self.group.mul(x, y), self.power(self.commutator(x, y), c))
                    })
                    .collect()
            })
            .collect()
    }
}

/// One member of the group-reduct family of a 2-nilpotent group.
#[derive(Debug, Clone)]
pub struct ReductFamilyMember {
    /// Smallest exponent producing this table.
    pub c: u64,
    pub member: FiniteLoop,
}

/// All distinct group reducts `x*y = xy·[x,y]^c` of a 2-nilpotent group,
/// for `c = 0..derived_exponent`, deduplicated by table equality. Each
/// member is verified to be a group with identity 0.
pub fn reduct_family(g: &GroupView) -> Result<Vec<ReductFamilyMember>> {
    if !g.is_2_nilpotent()? {
        return Err(LoopError::NotTwoNilpotent);
    }
    let mut out: Vec<ReductFamilyMember> = Vec::new();
    let mut seen: Vec<Vec<Vec<Elem>>> = Vec::new();
    for c in 0..g.derived_exponent.max(1) {
        let rows = g.family_rows(c);
        if seen.contains(&rows) {
            continue;
        }
        seen.push(rows.clone());
        let member =
            FiniteLoop::from_rows(rows).map_err(|_| LoopError::AssociativityViolation { c })?;
        if !member.is_associative() {
            return Err(LoopError::AssociativityViolation { c });
        }
        out.push(ReductFamilyMember { c, member });
    }
    Ok(out)
}

/// The abelian member of the reduct family, when one exists.
///
/// Solves `[x,y]^(2c+1) = 1`: a solution exists iff the derived exponent
/// `e` is odd, in which case `c = (e-1)/2`. The returned table is verified
/// to be an abelian group.
pub fn abelian_reduct(g: &GroupView) -> Result<Option<(u64, FiniteLoop)>> {
    if !g.is_2_nilpotent()? {
        return Err(LoopError::NotTwoNilpotent);
    }
    let e = g.derived_exponent;
    if e % 2 == 0 {
        return Ok(None);
    }
    let c = (e - 1) / 2;
    let member = FiniteLoop::from_rows(g.family_rows(c))
        .map_err(|_| LoopError::internal("abelian reduct candidate is not a loop"))?;
    if !member.is_associative() || !member.is_commutative() {
        return Err(LoopError::internal("abelian reduct candidate is not abelian"));
    }
    Ok(Some((c, member)))
}

/// The Baer construction `x*y = xy·[y,x]^k` with `k` the inverse of
/// squaring on the derived subgroup. Requires odd derived exponent;
/// the result coincides with [`abelian_reduct`].
pub fn baer_trick(g: &GroupView) -> Result<FiniteLoop> {
    if !g.is_2_nilpotent()? {
        return Err(LoopError::NotTwoNilpotent);
    }
    let e = g.derived_exponent;
    if e % 2 == 0 {
        return Err(LoopError::EvenExponent { exponent: e });
    }
    let k = mod_inverse(2, e).expect("2 is invertible modulo an odd exponent");
    let n = g.order();
    let rows: Vec<Vec<Elem>> = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    g.group
                        .mul(g.group.mul(x, y), g.power(g.commutator(y, x), k))
                })
                .collect()
        })
        .collect();
    let table = FiniteLoop::from_rows(rows)
        .map_err(|_| LoopError::internal("baer table is not a loop"))?;
    let (_, reference) = abelian_reduct(g)?
        .ok_or_else(|| LoopError::internal("odd exponent but no abelian reduct"))?;
    if table != reference {
        return Err(LoopError::internal(
            "baer table differs from the abelian reduct",
        ));
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::builtin;

    #[test]
    fn view_of_z6() {
        let v = GroupView::new(builtin::cyclic(6)).unwrap();
        assert_eq!(v.derived.order(), 1);
        assert_eq!(v.derived_exponent, 1);
        assert!(v.is_2_nilpotent().unwrap());
    }

    #[test]
    fn view_of_d8_and_d16() {
        let d8 = GroupView::new(builtin::dihedral(4)).unwrap();
        assert_eq!(d8.derived.order(), 2);
        assert_eq!(d8.derived_exponent, 2);
        assert!(d8.is_2_nilpotent().unwrap());

        let d16 = GroupView::new(builtin::dihedral(8)).unwrap();
        assert_eq!(d16.derived.order(), 4);
        assert!(!d16.is_2_nilpotent().unwrap());
    }

    #[test]
    fn heisenberg_derived() {
        let h = GroupView::new(builtin::heisenberg(3)).unwrap();
        assert_eq!(h.derived.order(), 3);
        assert_eq!(h.derived_exponent, 3);
        assert!(h.is_2_nilpotent().unwrap());
    }

    #[test]
    fn rejects_nonassociative() {
        use crate::loops::ext::central_extension;
        let l = central_extension(&builtin::cyclic(3), 2, |x, y| usize::from(x == 1 && y == 1))
            .unwrap();
        assert!(matches!(GroupView::new(l), Err(LoopError::NotAssociative)));
    }

    #[test]
    fn malcev_c0_is_xyz() {
        let v = GroupView::new(builtin::dihedral(4)).unwrap();
        for x in 0..8 {
            for y in 0..8 {
                for z in 0..8 {
                    let expect = v.group.mul(v.group.mul(x, v.inverse[y]), z);
                    assert_eq!(v.malcev_eval(0, x, y, z), expect);
                }
            }
        }
    }

    #[test]
    fn malcev_family_of_d8() {
        let v = GroupView::new(builtin::dihedral(4)).unwrap();
        let t0 = v.malcev_table(0).unwrap();
        let t1 = v.malcev_table(1).unwrap();
        let t2 = v.malcev_table(2).unwrap();
        assert_ne!(t0, t1);
        assert_eq!(t0, t2); // c is taken modulo the derived exponent 2
    }

    #[test]
    fn malcev_family_of_heisenberg_pairwise_distinct() {
        let v = GroupView::new(builtin::heisenberg(3)).unwrap();
        let tables: Vec<_> = (0..3).map(|c| v.malcev_table(c).unwrap()).collect();
        assert_ne!(tables[0], tables[1]);
        assert_ne!(tables[0], tables[2]);
        assert_ne!(tables[1], tables[2]);
    }

    #[test]
    fn d8_family_is_group_and_opposite() {
        let v = GroupView::new(builtin::dihedral(4)).unwrap();
        let fam = reduct_family(&v).unwrap();
        assert_eq!(fam.len(), 2);
        assert_eq!(fam[0].member, v.group);
        // c = 1 member is the opposite group
        let opp = &fam[1].member;
        for x in 0..8 {
            for y in 0..8 {
                assert_eq!(opp.mul(x, y), v.group.mul(y, x));
            }
        }
    }

    #[test]
    fn abelian_family_is_singleton() {
        let v = GroupView::new(builtin::cyclic(6)).unwrap();
        let fam = reduct_family(&v).unwrap();
        assert_eq!(fam.len(), 1);
        assert_eq!(fam[0].member, v.group);
    }

    #[test]
    fn heisenberg_family_has_three_members() {
        let v = GroupView::new(builtin::heisenberg(3)).unwrap();
        let fam = reduct_family(&v).unwrap();
        assert_eq!(fam.len(), 3);
    }

    #[test]
    fn abelian_reducts() {
        let d8 = GroupView::new(builtin::dihedral(4)).unwrap();
        assert!(abelian_reduct(&d8).unwrap().is_none());
        assert!(matches!(
            baer_trick(&d8),
            Err(LoopError::EvenExponent { exponent: 2 })
        ));

        let h = GroupView::new(builtin::heisenberg(3)).unwrap();
        let (c, table) = abelian_reduct(&h).unwrap().unwrap();
        assert_eq!(c, 1);
        assert!(table.is_commutative() && table.is_associative());
        let baer = baer_trick(&h).unwrap();
        assert_eq!(baer, table);

        let z6 = GroupView::new(builtin::cyclic(6)).unwrap();
        let (c, table) = abelian_reduct(&z6).unwrap().unwrap();
        assert_eq!(c, 0);
        assert_eq!(table, z6.group);
        assert_eq!(baer_trick(&z6).unwrap(), z6.group);
    }
}
