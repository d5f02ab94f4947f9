//! Supernilpotence of finite loops, decided two independent ways: internal
//! Sylow-factor decomposition, and nilpotence of the multiplication group
//! (Wright's criterion).

use crate::arith::{p_part, prime_divisors, prime_power};
use crate::error::Result;
use crate::loops::morphism::LoopMap;
use crate::loops::series::upper_central_series;
use crate::loops::subloop::{NormalSubloop, Subloop};
use crate::loops::table::{direct_product_many, FiniteLoop};
use crate::perm::{is_nilpotent_group, mlt_group};

/// Witness that a loop is the direct product of nilpotent loops of prime
/// power order.
#[derive(Debug, Clone)]
pub struct SylowDecomposition {
    /// One normal subloop per prime dividing the order, ascending.
    pub factors: Vec<(u64, NormalSubloop)>,
    /// The direct product of the factors, in the listed order.
    pub product: FiniteLoop,
    /// Isomorphism from `product` onto the loop, sending a tuple to the
    /// left-associated product of its entries.
    pub witness: LoopMap,
}

/// The candidate Sylow subset for `p`: elements whose left-associated
/// order is a power of `p`. In a supernilpotent loop this is exactly the
/// `p`-factor; in general it carries no closure guarantee.
pub fn sylow_candidate(l: &FiniteLoop, p: u64) -> Vec<usize> {
    l.elements()
        .filter(|&x| {
            let m = l.element_order(x) as u64;
            m == 1 || matches!(prime_power(m), Some((q, _)) if q == p)
        })
        .collect()
}

/// Decides supernilpotence by attempting the full internal decomposition.
///
/// Returns the witness if the loop is a direct product of nilpotent loops
/// of prime power order, `None` otherwise. Non-nilpotent input yields
/// `None` immediately. The final product-isomorphism check is
/// authoritative; the candidate construction is only a guess.
pub fn is_supernilpotent_decomp(l: &FiniteLoop) -> Result<Option<SylowDecomposition>> {
    if !upper_central_series(l)?.nilpotent {
        return Ok(None);
    }
    let n = l.order() as u64;
    let mut factors = Vec::new();
    for p in prime_divisors(n) {
        let candidate = sylow_candidate(l, p);
        if candidate.len() as u64 != p_part(n, p) {
            return Ok(None);
        }
        let Ok(sub) = Subloop::checked(l, candidate) else {
            return Ok(None);
        };
        let Ok(normal) = NormalSubloop::checked(l, sub) else {
            return Ok(None);
        };
        factors.push((p, normal));
    }
    let factor_loops: Vec<FiniteLoop> = factors
        .iter()
        .map(|(_, f)| f.as_loop(l).0)
        .collect();
    let product = direct_product_many(&factor_loops.iter().collect::<Vec<_>>());

    // witness: tuple -> left-associated product of the factor elements
    let mut images = Vec::with_capacity(l.order());
    for mut idx in 0..product.order() {
        let mut parts = vec![0; factors.len()];
        for (slot, (_, f)) in factors.iter().enumerate().rev() {
            parts[slot] = f.elements()[idx % f.order()];
            idx /= f.order();
        }
        images.push(parts.into_iter().fold(0, |acc, u| l.mul(acc, u)));
    }
    let witness = LoopMap { images };
    if witness.is_isomorphism(&product, l) {
        Ok(Some(SylowDecomposition {
            factors,
            product,
            witness,
        }))
    } else {
        Ok(None)
    }
}

/// Wright's criterion: a finite loop is supernilpotent iff its
/// multiplication group is nilpotent.
pub fn is_supernilpotent_wright(l: &FiniteLoop) -> Result<bool> {
    Ok(is_nilpotent_group(&mlt_group(l))?.nilpotent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::builtin;
    use crate::loops::ext::central_extension;
    use crate::loops::series::nilpotence_class;

    fn l6_nonproduct() -> FiniteLoop {
        central_extension(&builtin::cyclic(3), 2, |x, y| usize::from(x == 1 && y == 1)).unwrap()
    }

    #[test]
    fn candidates_in_z6() {
        let z6 = builtin::cyclic(6);
        assert_eq!(sylow_candidate(&z6, 2), vec![0, 3]);
        assert_eq!(sylow_candidate(&z6, 3), vec![0, 2, 4]);
    }

    #[test]
    fn z6_decomposes() {
        let z6 = builtin::cyclic(6);
        let d = is_supernilpotent_decomp(&z6).unwrap().expect("supernilpotent");
        assert_eq!(d.factors.len(), 2);
        assert_eq!(d.factors[0].0, 2);
        assert_eq!(d.factors[0].1.elements(), &[0, 3]);
        assert_eq!(d.factors[1].0, 3);
        assert_eq!(d.factors[1].1.elements(), &[0, 2, 4]);
        // factor orders multiply to |L| and are coprime in pairs
        assert_eq!(d.factors.iter().map(|(_, f)| f.order()).product::<usize>(), 6);
    }

    #[test]
    fn nonproduct_order6_loop_fails_both_ways() {
        let l = l6_nonproduct();
        assert_eq!(nilpotence_class(&l).unwrap(), Some(2));
        assert!(is_supernilpotent_decomp(&l).unwrap().is_none());
        assert!(!is_supernilpotent_wright(&l).unwrap());
    }

    #[test]
    fn wright_on_groups() {
        assert!(is_supernilpotent_wright(&builtin::cyclic(8)).unwrap());
        assert!(!is_supernilpotent_wright(&builtin::symmetric3()).unwrap());
        assert!(is_supernilpotent_wright(&builtin::dihedral(4)).unwrap());
    }

    #[test]
    fn agreement_on_small_fixtures() {
        let fixtures = vec![
            builtin::cyclic(1),
            builtin::cyclic(4),
            builtin::cyclic(6),
            builtin::cyclic(8),
            builtin::dihedral(4),
            builtin::quaternion8(),
            builtin::symmetric3(),
            l6_nonproduct(),
            central_extension(&builtin::cyclic(3), 2, |x, y| {
                usize::from(x != 0 && y != 0 && x == y)
            })
            .unwrap(),
        ];
        for l in fixtures {
            let decomp = is_supernilpotent_decomp(&l).unwrap().is_some();
            let wright = is_supernilpotent_wright(&l).unwrap();
            assert_eq!(decomp, wright, "disagreement at order {}", l.order());
        }
    }

    #[test]
    fn factors_are_nilpotent_with_bounded_class() {
        let z12 = crate::loops::table::direct_product(&builtin::cyclic(4), &builtin::cyclic(3));
        let d = is_supernilpotent_decomp(&z12).unwrap().unwrap();
        let class = nilpotence_class(&z12).unwrap().unwrap();
        for (_, f) in &d.factors {
            let (fl, _) = f.as_loop(&z12);
            assert!(nilpotence_class(&fl).unwrap().unwrap() <= class);
        }
    }
}
