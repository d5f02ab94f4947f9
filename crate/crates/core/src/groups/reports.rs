//! Fixture reports: the wreath-product obstruction facts and the dihedral
//! reduct class scan.

use crate::arith::lcm;
use crate::error::{LoopError, Result};
use crate::groups::builtin;
use crate::groups::view::GroupView;
use crate::loops::series::nilpotence_class;
use crate::loops::subloop::{NormalSubloop, Subloop};
use crate::loops::table::FiniteLoop;

/// The computable facts behind the claim that `Z3 wr Z3` has no abelian
/// group reduct. The step "every element generates the same subgroup in
/// any abelian reduct" is not machine-checked; see `unchecked_step`.
#[derive(Debug, Clone)]
pub struct WreathReport {
    pub order: usize,
    pub exponent: u64,
    pub base_order: usize,
    pub base_is_normal: bool,
    pub base_is_abelian: bool,
    pub base_exponent: u64,
    /// Implied by order 27, abelian, exponent 3.
    pub base_is_elementary_abelian: bool,
    /// An element outside the base subgroup of order 3.
    pub outside_order3_witness: Option<usize>,
    /// The one step of the argument this report does not verify.
    pub unchecked_step: &'static str,
}

/// Verifies the wreath-product facts on the constructed order-81 table.
pub fn wreath_obstruction_facts() -> Result<WreathReport> {
    let g = builtin::wreath_z3_z3();
    let exponent = g
        .elements()
        .map(|x| g.element_order(x) as u64)
        .fold(1, lcm);
    let base_set = builtin::wreath_base_elements();
    let base = Subloop::checked(&g, base_set)?;
    let base_is_normal = NormalSubloop::checked(&g, base.clone()).is_ok();
    let (base_loop, _) = base.as_loop(&g);
    let base_is_abelian = base_loop.is_associative() && base_loop.is_commutative();
    let base_exponent = base_loop
        .elements()
        .map(|x| base_loop.element_order(x) as u64)
        .fold(1, lcm);
    let outside_order3_witness = g
        .elements()
        .find(|&x| !base.contains(x) && g.element_order(x) == 3);
    Ok(WreathReport {
        order: g.order(),
        exponent,
        base_order: base.order(),
        base_is_normal,
        base_is_abelian,
        base_exponent,
        base_is_elementary_abelian: base.order() == 27
            && base_is_abelian
            && base_exponent == 3,
        outside_order3_witness,
        unchecked_step:
            "in an abelian reduct every element generates the same subgroup as in the group; \
             this implication is taken from the argument, not machine-checked",
    })
}

/// Result of scanning the `x·y·[x,y]^c` family of a dihedral group.
#[derive(Debug, Clone)]
pub struct DihedralScan {
    /// Order of the scanned group `D_{2^(n+1)}`.
    pub order: usize,
    /// For each `c` below the derived exponent: `Some(class)` when the
    /// table is a group, `None` when it is not associative.
    pub classes: Vec<(u64, Option<usize>)>,
}

impl DihedralScan {
    /// Nilpotence classes of the members that are groups.
    pub fn group_classes(&self) -> Vec<usize> {
        self.classes.iter().filter_map(|&(_, c)| c).collect()
    }
}

/// Builds every `x·y·[x,y]^c` table of `D_{2^(n+1)}` for `c` below the
/// derived exponent and records the nilpotence class of those that happen
/// to be groups. No 2-nilpotence assumption is made.
pub fn dihedral_reduct_class_scan(n: u32) -> Result<DihedralScan> {
    if n < 2 {
        return Err(LoopError::internal("dihedral scan needs n >= 2"));
    }
    let g = GroupView::new(builtin::dihedral(1 << n))?;
    let mut classes = Vec::new();
    for c in 0..g.derived_exponent {
        let rows = g.family_rows(c);
        let class = match FiniteLoop::from_rows(rows) {
            Ok(member) if member.is_associative() => nilpotence_class(&member)?,
            _ => None,
        };
        classes.push((c, class));
    }
    Ok(DihedralScan {
        order: g.order(),
        classes,
    })
}
