//! Standard group fixtures realized as Cayley tables with identity 0.

use crate::loops::table::FiniteLoop;

/// Cyclic group `Z_m` with `a·b = a + b mod m`.
pub fn cyclic(m: usize) -> FiniteLoop {
    let rows = (0..m)
        .map(|a| (0..m).map(|b| (a + b) % m).collect())
        .collect();
    FiniteLoop::from_rows(rows).expect("cyclic table is a group")
}

/// Dihedral group of order `2m` (`m >= 1`): rotations `r^i` and
/// reflections `r^i s`, encoded as `i + m·j` for `r^i s^j`.
pub fn dihedral(m: usize) -> FiniteLoop {
    let n = 2 * m;
    let idx = |i: usize, j: usize| i + m * j;
    let mut rows = vec![vec![0; n]; n];
    for i in 0..m {
        for j in 0..2 {
            for k in 0..m {
                for l in 0..2 {
                    // s r^k = r^{-k} s
                    let rot = if j == 0 { (i + k) % m } else { (i + m - k % m) % m };
                    rows[idx(i, j)][idx(k, l)] = idx(rot, (j + l) % 2);
                }
            }
        }
    }
    FiniteLoop::from_rows(rows).expect("dihedral table is a group")
}

/// Quaternion group `Q8`: `a` of order 4, `b` with `b^2 = a^2` and
/// `b^-1 a b = a^-1`, encoded as `a^i b^j -> i + 4j`.
pub fn quaternion8() -> FiniteLoop {
    let idx = |i: usize, j: usize| i + 4 * j;
    let mut rows = vec![vec![0; 8]; 8];
    for i in 0..4 {
        for j in 0..2 {
            for k in 0..4 {
                for l in 0..2 {
                    let mut rot = if j == 0 { (i + k) % 4 } else { (i + 4 - k) % 4 };
                    let mut flip = j + l;
                    if flip == 2 {
                        flip = 0;
                        rot = (rot + 2) % 4; // b^2 = a^2
                    }
                    rows[idx(i, j)][idx(k, l)] = idx(rot, flip);
                }
            }
        }
    }
    FiniteLoop::from_rows(rows).expect("quaternion table is a group")
}

/// Heisenberg group modulo `p`: unitriangular 3x3 matrices over `Z_p`,
/// `(a,b,c)·(a',b',c') = (a+a', b+b', c+c'+a·b')`, encoded as
/// `a·p² + b·p + c`. Order `p³`, class 2 for `p` odd.
pub fn heisenberg(p: usize) -> FiniteLoop {
    let n = p * p * p;
    let idx = |a: usize, b: usize, c: usize| a * p * p + b * p + c;
    let mut rows = vec![vec![0; n]; n];
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for a2 in 0..p {
                    for b2 in 0..p {
                        for c2 in 0..p {
                            rows[idx(a, b, c)][idx(a2, b2, c2)] =
                                idx((a + a2) % p, (b + b2) % p, (c + c2 + a * b2) % p);
                        }
                    }
                }
            }
        }
    }
    FiniteLoop::from_rows(rows).expect("heisenberg table is a group")
}

/// The wreath product `Z3 wr Z3 = Z3^3 ⋊ Z3` of order 81: pairs `(t, f)`
/// with `f: Z3 -> Z3`, the shift acting by `(σ^t f)(i) = f(i - t)`.
/// Encoded as `t·27 + f(0)·9 + f(1)·3 + f(2)`. Nilpotent of class 3.
pub fn wreath_z3_z3() -> FiniteLoop {
    let idx = |t: usize, f: [usize; 3]| t * 27 + f[0] * 9 + f[1] * 3 + f[2];
    let decode = |x: usize| (x / 27, [(x / 9) % 3, (x / 3) % 3, x % 3]);
    let mut rows = vec![vec![0; 81]; 81];
    for x in 0..81 {
        let (t, f) = decode(x);
        for y in 0..81 {
            let (u, g) = decode(y);
            let mut h = [0; 3];
            for (i, slot) in h.iter_mut().enumerate() {
                // (f + σ^t g)(i) = f(i) + g(i - t)
                *slot = (f[i] + g[(i + 3 - t) % 3]) % 3;
            }
            rows[x][y] = idx((t + u) % 3, h);
        }
    }
    FiniteLoop::from_rows(rows).expect("wreath table is a group")
}

/// The base subgroup `Z3^3` of [`wreath_z3_z3`], as a sorted element set.
pub fn wreath_base_elements() -> Vec<usize> {
    (0..27).collect()
}

/// Symmetric group on 3 points: permutations in lexicographic order with
/// the identity first, multiplied by composition.
pub fn symmetric3() -> FiniteLoop {
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let compose = |p: &[usize; 3], q: &[usize; 3]| [p[q[0]], p[q[1]], p[q[2]]];
    let find = |r: [usize; 3]| perms.iter().position(|&p| p == r).unwrap();
    let rows = perms
        .iter()
        .map(|p| perms.iter().map(|q| find(compose(p, q))).collect())
        .collect();
    FiniteLoop::from_rows(rows).expect("symmetric group table is a group")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::loops::series::nilpotence_class;
    use crate::loops::subloop::{center, subloop_generated};

    #[test]
    fn builtin_tables_validate() {
        for g in [
            cyclic(1),
            cyclic(16),
            dihedral(4),
            dihedral(8),
            dihedral(16),
            quaternion8(),
            heisenberg(3),
            symmetric3(),
        ] {
            assert!(g.is_associative());
        }
    }

    #[test]
    fn dihedral_structure() {
        let d16 = dihedral(8);
        assert_eq!(d16.order(), 16);
        assert_eq!(center(&d16).unwrap().order(), 2);
        assert_eq!(nilpotence_class(&d16).unwrap(), Some(3));
    }

    #[test]
    fn quaternion_structure() {
        let q8 = quaternion8();
        assert!(q8.is_associative());
        assert_eq!(q8.element_order(2), 2); // a^2 is the unique involution
        for x in [1, 3, 4, 5, 6, 7] {
            assert_eq!(q8.element_order(x), 4);
        }
        let derived = subloop_generated(
            &q8,
            &(0..8)
                .flat_map(|x| (0..8).map(move |y| (x, y)))
                .map(|(x, y)| {
                    let xy = q8.mul(x, y);
                    let yx = q8.mul(y, x);
                    q8.ldiv(yx, xy) // yx \ xy = [x,y]
                })
                .collect::<Vec<_>>(),
        );
        assert_eq!(derived.order(), 2);
    }

    #[test]
    fn wreath_is_class_three_of_exponent_nine() {
        let g = wreath_z3_z3();
        assert_eq!(g.order(), 81);
        assert!(g.is_associative());
        assert_eq!(nilpotence_class(&g).unwrap(), Some(3));
        let exponent = (0..81).map(|x| g.element_order(x) as u64).fold(1, crate::arith::lcm);
        assert_eq!(exponent, 9);
    }

    #[test]
    fn heisenberg_structure() {
        let h = heisenberg(3);
        assert_eq!(h.order(), 27);
        assert_eq!(nilpotence_class(&h).unwrap(), Some(2));
    }
}
