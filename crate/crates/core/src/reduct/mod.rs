//! Construction of supernilpotent term reducts of finite nilpotent loops.
//!
//! [`build_reduct`] refines a central series to prime-power factors and
//! runs the inductive stage construction along it, producing a certificate
//! with the final operation, the per-stage data, a term DAG over the basic
//! operations of the input, and the Sylow decomposition of the result.
//! [`corollary_reduct`] is the relative version: the series is routed
//! through a chosen normal subloop `N` with supernilpotent quotient and
//! the construction starts there, leaving everything above `N` untouched.

pub mod series;
pub mod stage;
pub mod term;

pub use series::{refine_central_series, series_through, RefinedCentralSeries};
pub use stage::choose_exponent;
pub use term::{TermDag, TermNode, TermOp};

use crate::error::{LoopError, Result};
use crate::loops::quotient::quotient;
use crate::loops::subloop::NormalSubloop;
use crate::loops::table::{Elem, FiniteLoop};
use crate::supernilpotence::{is_supernilpotent_decomp, SylowDecomposition};

/// Data of one constructed stage: the operation `*_index`, the correction
/// table `r` (values in `C_{index-1}`), the exponent `n` with its moduli,
/// and the root of the term for `*_index` in the shared DAG.
#[derive(Debug, Clone)]
pub struct ReductStage {
    /// Stage number: this is `*_index`, starting at 2.
    pub index: usize,
    pub star: FiniteLoop,
    /// Row-major correction values `r(x, y)`.
    pub r_table: Vec<Elem>,
    pub n: u64,
    pub m_e: u64,
    pub m_v: u64,
    pub root: u32,
}

/// The full output of the construction: every stage, the shared term DAG,
/// and the verified decomposition of the final operation.
#[derive(Debug, Clone)]
pub struct ReductCertificate {
    pub input: FiniteLoop,
    pub series: RefinedCentralSeries,
    pub stages: Vec<ReductStage>,
    pub dag: TermDag,
    /// Term for the final operation; for a degenerate run this is the
    /// plain multiplication term.
    pub final_root: u32,
    pub final_star: FiniteLoop,
    pub decomposition: SylowDecomposition,
}

impl ReductCertificate {
    /// Evaluates the certified term on the input loop.
    pub fn eval_final(&self, x: Elem, y: Elem) -> Result<Elem> {
        self.dag.eval(&self.input, self.final_root, x, y)
    }
}

/// Builds a supernilpotent loop reduct of a nilpotent loop, with
/// certificate. Non-nilpotent input is rejected with `NotNilpotent`.
pub fn build_reduct(l: &FiniteLoop) -> Result<ReductCertificate> {
    let series = refine_central_series(l)?;
    run_stages(l, series, 1)
}

fn run_stages(
    l: &FiniteLoop,
    series: RefinedCentralSeries,
    start: usize,
) -> Result<ReductCertificate> {
    let mut dag = TermDag::new();
    let vx = dag.var_x();
    let vy = dag.var_y();
    let mut root = dag.mul(vx, vy);
    let mut star = l.clone();
    let mut stages = Vec::new();
    for i in start..series.len() {
        let data = stage::stage_step(l, &star, &series, i, &mut dag, root)?;
        root = data.root;
        star = data.star;
        stages.push(ReductStage {
            index: i + 1,
            star: star.clone(),
            r_table: data.r_table,
            n: data.n,
            m_e: data.m_e,
            m_v: data.m_v,
            root,
        });
    }
    let decomposition = is_supernilpotent_decomp(&star)?
        .ok_or_else(|| LoopError::internal("final operation is not supernilpotent"))?;
    Ok(ReductCertificate {
        input: l.clone(),
        series,
        stages,
        dag,
        final_root: root,
        final_star: star,
        decomposition,
    })
}

/// The relative construction through a normal subloop `N` with
/// supernilpotent quotient.
#[derive(Debug, Clone)]
pub struct CorollaryReduct {
    pub certificate: ReductCertificate,
    /// Index of `N` in the certificate's series chain.
    pub j: usize,
    /// `r(x,y) = (x·y) /_* (x * y)`, row-major; its range lies in `N` and
    /// `x·y = r(x,y) * (x * y)` reconstructs the input multiplication.
    pub r_table: Vec<Elem>,
    /// Term for `r` in the certificate DAG.
    pub r_root: u32,
}

/// Runs the construction with a series through `n`, so the final operation
/// `*` satisfies `(A,*)/N = L/N` and the correction `r = (x·y)/_*(x*y)`
/// maps into `N` with `x·y = r(x,y)*(x*y)` everywhere.
pub fn corollary_reduct(l: &FiniteLoop, n: &NormalSubloop) -> Result<CorollaryReduct> {
    let (series, j) = series_through(l, n)?;
    let certificate = run_stages(l, series, j.max(1))?;
    let star = &certificate.final_star;

    // (A,*)/N = L/N on the nose: same cosets, same table
    let n_in_star = NormalSubloop::checked(
        star,
        crate::loops::subloop::Subloop::checked(star, n.elements().to_vec())
            .map_err(|_| LoopError::internal("N is not a subloop of the reduct"))?,
    )
    .map_err(|_| LoopError::internal("N is not normal in the reduct"))?;
    let q_star = quotient(star, &n_in_star)?;
    let q_orig = quotient(l, n)?;
    if q_star.proj != q_orig.proj || q_star.quot != q_orig.quot {
        return Err(LoopError::internal("quotient by N changed under the reduct"));
    }

    let order = l.order();
    let mut r_table = vec![0; order * order];
    for x in 0..order {
        for y in 0..order {
            let r = star.rdiv(l.mul(x, y), star.mul(x, y));
            if !n.contains(r) {
                return Err(LoopError::internal("correction value outside N"));
            }
            if star.mul(r, star.mul(x, y)) != l.mul(x, y) {
                return Err(LoopError::internal("reconstruction identity fails"));
            }
            r_table[x * order + y] = r;
        }
    }

    // r as a term: (x·y) /_* (x*y), with /_* expanded over the final stage
    let mut certificate = certificate;
    let r_root = build_correction_term(&mut certificate, l)?;
    Ok(CorollaryReduct {
        certificate,
        j,
        r_table,
        r_root,
    })
}

fn build_correction_term(cert: &mut ReductCertificate, l: &FiniteLoop) -> Result<u32> {
    let dag = &mut cert.dag;
    let vx = dag.var_x();
    let vy = dag.var_y();
    let basic_mul = dag.mul(vx, vy);
    let star_xy = dag.substitute(cert.final_root, vx, vy);
    let r_root = if cert.final_star == *l {
        dag.rdiv(basic_mul, star_xy)
    } else {
        let m = cert.final_star.right_translation_exponent();
        let mut acc = basic_mul;
        for _ in 1..m {
            acc = dag.substitute(cert.final_root, acc, star_xy);
        }
        acc
    };
    // the r term must reproduce the r table on the input loop
    let order = l.order();
    for x in 0..order {
        for y in 0..order {
            let expected = cert.final_star.rdiv(l.mul(x, y), cert.final_star.mul(x, y));
            if cert.dag.eval(l, r_root, x, y)? != expected {
                return Err(LoopError::internal("correction term does not match its table"));
            }
        }
    }
    Ok(r_root)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::builtin;
    use crate::loops::ext::central_extension;
    use crate::loops::morphism::is_isomorphic;
    use crate::loops::subloop::{center, subloop_generated};

    fn l6_nonproduct() -> FiniteLoop {
        central_extension(&builtin::cyclic(3), 2, |x, y| usize::from(x == 1 && y == 1)).unwrap()
    }

    #[test]
    fn s3_is_gated() {
        assert!(matches!(
            build_reduct(&builtin::symmetric3()),
            Err(LoopError::NotNilpotent)
        ));
    }

    #[test]
    fn z6_stays_fixed() {
        let z6 = builtin::cyclic(6);
        let cert = build_reduct(&z6).unwrap();
        assert_eq!(cert.final_star, z6);
        for x in 0..6 {
            for y in 0..6 {
                assert_eq!(cert.eval_final(x, y).unwrap(), z6.mul(x, y));
            }
        }
    }

    #[test]
    fn prime_power_inputs_are_fixpoints() {
        for l in [
            builtin::cyclic(4),
            builtin::cyclic(8),
            builtin::cyclic(9),
            builtin::dihedral(4),
            builtin::quaternion8(),
        ] {
            let cert = build_reduct(&l).unwrap();
            assert_eq!(cert.final_star, l, "order {}", l.order());
        }
    }

    #[test]
    fn nonproduct_order6_gets_abelian_reduct() {
        let l = l6_nonproduct();
        let cert = build_reduct(&l).unwrap();
        let star = &cert.final_star;
        assert!(star.is_associative());
        assert!(star.is_commutative());
        assert!(is_isomorphic(star, &builtin::cyclic(6)).is_some());
        // certificate term reproduces the final table
        for x in 0..6 {
            for y in 0..6 {
                assert_eq!(cert.eval_final(x, y).unwrap(), star.mul(x, y));
            }
        }
        // monotone agreement: each stage's r-values lie in its C_i
        for stage in &cert.stages {
            for &r in &stage.r_table {
                assert!(cert.series.chain[stage.index - 1].contains(r));
            }
        }
    }

    #[test]
    fn rebuilding_the_reduct_is_idempotent() {
        let l = l6_nonproduct();
        let first = build_reduct(&l).unwrap();
        let second = build_reduct(&first.final_star).unwrap();
        assert_eq!(second.final_star, first.final_star);
    }

    #[test]
    fn corollary_with_trivial_subloop_needs_supernilpotent_input() {
        let z6 = builtin::cyclic(6);
        let c = corollary_reduct(&z6, &NormalSubloop::trivial()).unwrap();
        assert_eq!(c.certificate.final_star, z6);
        assert!(c.r_table.iter().all(|&r| r == 0));

        let l6 = l6_nonproduct();
        assert!(matches!(
            corollary_reduct(&l6, &NormalSubloop::trivial()),
            Err(LoopError::QuotientNotSupernilpotent)
        ));
    }

    #[test]
    fn corollary_with_whole_loop_matches_build_reduct() {
        let l = l6_nonproduct();
        let c = corollary_reduct(&l, &NormalSubloop::whole(&l)).unwrap();
        let direct = build_reduct(&l).unwrap();
        assert_eq!(c.certificate.final_star, direct.final_star);
        assert_eq!(c.j, 0);
    }

    #[test]
    fn corollary_through_center_of_order6_fixture() {
        let l = l6_nonproduct();
        let z = center(&l).unwrap();
        let c = corollary_reduct(&l, &z).unwrap();
        let star = &c.certificate.final_star;
        // range of r inside N and reconstruction identity, on all 36 pairs
        for x in 0..6 {
            for y in 0..6 {
                let r = c.r_table[x * 6 + y];
                assert!(z.contains(r));
                assert_eq!(star.mul(r, star.mul(x, y)), l.mul(x, y));
                assert_eq!(c.certificate.dag.eval(&l, c.r_root, x, y).unwrap(), r);
            }
        }
        assert!(is_supernilpotent_decomp(star).unwrap().is_some());
    }

    #[test]
    fn z4_through_its_two_element_subloop() {
        let z4 = builtin::cyclic(4);
        let n = NormalSubloop::checked(&z4, subloop_generated(&z4, &[2])).unwrap();
        let c = corollary_reduct(&z4, &n).unwrap();
        assert_eq!(c.certificate.final_star, z4);
        assert!(c.r_table.iter().all(|&r| r == 0));
    }
}
