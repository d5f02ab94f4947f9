//! Groups viewed as loops: commutator machinery, the `x·y·[x,y]^c` reduct
//! family of 2-nilpotent groups, the Baer construction, and the standard
//! fixture groups.

pub mod builtin;
pub mod reports;
pub mod view;

pub use reports::{dihedral_reduct_class_scan, wreath_obstruction_facts, DihedralScan, WreathReport};
pub use view::{abelian_reduct, baer_trick, reduct_family, GroupView, ReductFamilyMember};
