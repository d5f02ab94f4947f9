//! Central extensions by a cyclic kernel.

use crate::error::Result;
use crate::loops::table::FiniteLoop;

/// Builds the central extension of `base` by `Z_m` with cocycle `phi`.
///
/// Elements are pairs `(x, a)` with `x` in the base and `a` in `Z_m`,
/// encoded as `x*m + a`, multiplying by
/// `(x, a)·(y, b) = (x·y, a + b + phi(x, y) mod m)`.
///
/// For any `phi` vanishing on the identity row and column the result is a
/// loop whose kernel `{(0, a)}` is central; it is a group exactly when
/// `base` is a group and `phi` is a group cocycle. Non-cocycle choices of
/// `phi` give the nilpotent non-associative loops used as fixtures.
pub fn central_extension(
    base: &FiniteLoop,
    m: usize,
    phi: impl Fn(usize, usize) -> usize,
) -> Result<FiniteLoop> {
    let s = base.order();
    let n = s * m;
    let mut rows = vec![vec![0; n]; n];
    for x in 0..s {
        for a in 0..m {
            for y in 0..s {
                for b in 0..m {
                    let prod = base.mul(x, y) * m + (a + b + phi(x, y)) % m;
                    rows[x * m + a][y * m + b] = prod;
                }
            }
        }
    }
    FiniteLoop::from_rows(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::builtin;
    use crate::loops::series::nilpotence_class;
    use crate::loops::subloop::center;

    #[test]
    fn kernel_is_central_and_loop_nilpotent() {
        let z3 = builtin::cyclic(3);
        // phi = indicator of (1,1): not a group cocycle
        let l = central_extension(&z3, 2, |x, y| usize::from(x == 1 && y == 1)).unwrap();
        assert_eq!(l.order(), 6);
        assert!(!l.is_associative());
        let z = center(&l).unwrap();
        assert!(z.contains(1)); // (0, 1)
        assert_eq!(nilpotence_class(&l).unwrap(), Some(2));
    }

    #[test]
    fn trivial_cocycle_gives_product() {
        let z3 = builtin::cyclic(3);
        let l = central_extension(&z3, 2, |_, _| 0).unwrap();
        assert!(l.is_associative());
        assert!(l.is_commutative());
    }
}
