//! One stage of the reduct construction.
//!
//! Given a loop operation `*` whose quotient by `C_i` is supernilpotent,
//! the stage builds the corrected operation
//! `x ∘ y = (x*y) / r(x,y)` with `r(x,y) = (x*y)^n / (x^n * y^n)`,
//! where `n` is chosen so that `x^n = x` on the maximal `p`-power subloop
//! `E` of `A/C_{i+1}` and `x^n = 1` on the coprime quotient `V`. All the
//! facts the proof derives along the way are asserted on the tables.

use crate::arith::{crt_min_exponent, gcd};
use crate::error::{LoopError, Result};
use crate::loops::morphism::is_isomorphic;
use crate::loops::quotient::{quotient, QuotientLoop};
use crate::loops::subloop::{NormalSubloop, Subloop};
use crate::loops::table::{direct_product, Elem, FiniteLoop};
use crate::reduct::series::RefinedCentralSeries;
use crate::reduct::term::TermDag;
use crate::supernilpotence::is_supernilpotent_decomp;

/// Minimal exponent for a stage: `n ≡ 1 (mod m_e)`, `n ≡ 0 (mod m_v)`
/// where `m_e`, `m_v` are the lcms of the right-translation orders of `E`
/// and `V`. Left associated powers satisfy `x^m = R_x^m(1)`, so this `n`
/// fixes every element of `E` and kills every element of `V`.
pub fn choose_exponent(e: &FiniteLoop, v: &FiniteLoop, _p: u64) -> Result<(u64, u64, u64)> {
    let m_e = e.right_translation_exponent();
    let m_v = v.right_translation_exponent();
    if gcd(m_e, m_v) != 1 {
        return Err(LoopError::CoprimalityViolation { m_e, m_v });
    }
    let n = crt_min_exponent(m_e, m_v)
        .ok_or_else(|| LoopError::internal("no CRT solution for coprime moduli"))?;
    Ok((n, m_e, m_v))
}

/// Output of one stage.
pub(crate) struct StageData {
    pub star: FiniteLoop,
    pub r_table: Vec<Elem>,
    pub n: u64,
    pub m_e: u64,
    pub m_v: u64,
    pub root: u32,
}

fn internal(i: usize, what: &str) -> LoopError {
    LoopError::internal(format!("stage {i}: {what}"))
}

/// Re-wraps an element set of the original loop as a normal subloop of a
/// reduct operation. Closure and normality carry over because the set is a
/// congruence class; a failure is an implementation bug.
fn renormal(star: &FiniteLoop, elems: &[Elem], i: usize, what: &str) -> Result<NormalSubloop> {
    let sub = Subloop::checked(star, elems.to_vec()).map_err(|_| internal(i, what))?;
    NormalSubloop::checked(star, sub).map_err(|_| internal(i, what))
}

/// Builds `*_{i+1}` from `*_i` along the series factor `C_i/C_{i+1}`.
///
/// `star_prev` is `(A, *_i)`; `root_prev` is its term over the basic
/// operations of `original`.
pub(crate) fn stage_step(
    original: &FiniteLoop,
    star_prev: &FiniteLoop,
    series: &RefinedCentralSeries,
    i: usize,
    dag: &mut TermDag,
    root_prev: u32,
) -> Result<StageData> {
    let order = star_prev.order();
    let c_i = &series.chain[i];
    let c_next = &series.chain[i + 1];
    let p = series.primes[i];

    // Ā = (A,*_i)/C_{i+1}; the congruence classes of C_{i+1} are shared by
    // every reduct, so C_{i+1} must still be normal here.
    let c_next_star = renormal(star_prev, c_next.elements(), i, "C_{i+1} not normal in *_i")?;
    let abar = quotient(star_prev, &c_next_star)?;

    // C = image of C_i and Ā/C, which is (A,*_i)/C_i up to relabeling
    let c_img = renormal(&abar.quot, &abar.image_of(c_i.elements()), i, "C_i image not normal")?;
    let amodc = quotient(&abar.quot, &c_img)?;

    // stage invariant: the quotient is supernilpotent; its decomposition
    // yields the p-factor P
    let decomp = is_supernilpotent_decomp(&amodc.quot)?
        .ok_or_else(|| internal(i, "quotient by C_i is not supernilpotent"))?;
    let p_factor: Vec<usize> = decomp
        .factors
        .iter()
        .find(|(q, _)| *q == p)
        .map(|(_, f)| f.elements().to_vec())
        .unwrap_or_else(|| vec![0]);

    // E = preimage of P in Ā; V = Ā/E
    let e_norm = renormal(&abar.quot, &amodc.preimage_of(&p_factor), i, "E not normal in Ā")?;
    let (e_loop, _) = e_norm.as_loop(&abar.quot);
    let v_quot = quotient(&abar.quot, &e_norm)?;

    let (n, m_e, m_v) = choose_exponent(&e_loop, &v_quot.quot, p)?;

    // r(x,y) = (xy)^n / (x^n y^n) and the corrected operation, all in *_i
    let pow_n: Vec<Elem> = (0..order).map(|x| star_prev.left_power(x, n as usize)).collect();
    let mut r_table = vec![0; order * order];
    let mut star_rows = vec![vec![0; order]; order];
    for x in 0..order {
        for y in 0..order {
            let xy = star_prev.mul(x, y);
            let r = star_prev.rdiv(
                star_prev.left_power(xy, n as usize),
                star_prev.mul(pow_n[x], pow_n[y]),
            );
            r_table[x * order + y] = r;
            star_rows[x][y] = star_prev.rdiv(xy, r);
        }
    }
    let star = FiniteLoop::from_rows(star_rows)
        .map_err(|_| internal(i, "corrected operation is not a loop"))?;

    // r takes values in C_i
    if r_table.iter().any(|&r| !c_i.contains(r)) {
        return Err(internal(i, "r value outside C_i"));
    }
    // r vanishes on E: checked on all representatives of E-classes
    for x in 0..order {
        if !e_norm.contains(abar.proj[x]) {
            continue;
        }
        for y in 0..order {
            if e_norm.contains(abar.proj[y]) && !c_next.contains(r_table[x * order + y]) {
                return Err(internal(i, "r does not vanish on E"));
            }
        }
    }

    // quotient of the new operation by C_{i+1}; same coset structure
    let c_next_new = renormal(&star, c_next.elements(), i, "C_{i+1} not normal in *_{i+1}")?;
    let abar_new = quotient(&star, &c_next_new)?;
    if abar_new.proj != abar.proj {
        return Err(internal(i, "C_{i+1} cosets changed under the new operation"));
    }

    // h(z) = z^n on Ā is a homomorphism of the new operation onto E
    check_power_homomorphism(&abar, &abar_new, &e_norm, n, i)?;

    // (A,*_{i+1}) / C_{i+1} ≅ E x V
    let product = direct_product(&e_loop, &v_quot.quot);
    if is_isomorphic(&abar_new.quot, &product).is_none() {
        return Err(internal(i, "quotient does not split as E x V"));
    }

    // the term for the new operation, with powers expanded left to right
    let root = build_stage_term(dag, root_prev, star_prev, original, n);
    for x in 0..order {
        for y in 0..order {
            if dag.eval(original, root, x, y)? != star.mul(x, y) {
                return Err(internal(i, "term does not reproduce the new operation"));
            }
        }
    }

    Ok(StageData {
        star,
        r_table,
        n,
        m_e,
        m_v,
        root,
    })
}

fn check_power_homomorphism(
    abar: &QuotientLoop,
    abar_new: &QuotientLoop,
    e_norm: &NormalSubloop,
    n: u64,
    i: usize,
) -> Result<()> {
    let k = abar.quot.order();
    let h: Vec<Elem> = (0..k).map(|z| abar.quot.left_power(z, n as usize)).collect();
    let mut image: Vec<Elem> = h.clone();
    image.sort_unstable();
    image.dedup();
    if image != e_norm.elements() {
        return Err(internal(i, "n-th power map is not onto E"));
    }
    for z in 0..k {
        for w in 0..k {
            if h[abar_new.quot.mul(z, w)] != abar_new.quot.mul(h[z], h[w]) {
                return Err(internal(i, "n-th power map is not a homomorphism"));
            }
        }
    }
    Ok(())
}

/// Term construction for one stage. Multiplication in `*_i` is substitution
/// into the stage-`i` term; division in `*_i` is either the basic right
/// division (when `*_i` is the original multiplication, table-wise) or the
/// expansion `u / v = R_v^(M-1)(u)` with `M` the lcm of the right
/// translation orders of `*_i`.
fn build_stage_term(
    dag: &mut TermDag,
    root_prev: u32,
    star_prev: &FiniteLoop,
    original: &FiniteLoop,
    n: u64,
) -> u32 {
    let builder = StarTermBuilder {
        root_prev,
        basic_div: star_prev == original,
        m_div: star_prev.right_translation_exponent(),
    };
    let vx = dag.var_x();
    let vy = dag.var_y();
    let xy = builder.mul(dag, vx, vy);
    let xy_n = builder.pow(dag, xy, n);
    let xn = builder.pow(dag, vx, n);
    let yn = builder.pow(dag, vy, n);
    let denom = builder.mul(dag, xn, yn);
    let r_root = builder.rdiv(dag, xy_n, denom);
    builder.rdiv(dag, xy, r_root)
}

struct StarTermBuilder {
    root_prev: u32,
    basic_div: bool,
    m_div: u64,
}

impl StarTermBuilder {
    fn mul(&self, dag: &mut TermDag, a: u32, b: u32) -> u32 {
        dag.substitute(self.root_prev, a, b)
    }

    fn rdiv(&self, dag: &mut TermDag, a: u32, b: u32) -> u32 {
        if self.basic_div {
            dag.rdiv(a, b)
        } else {
            // u / v = R_v^(M-1)(u) since R_v^M is the identity
            let mut acc = a;
            for _ in 1..self.m_div {
                acc = self.mul(dag, acc, b);
            }
            acc
        }
    }

    fn pow(&self, dag: &mut TermDag, a: u32, e: u64) -> u32 {
        let mut acc = a;
        for _ in 1..e {
            acc = self.mul(dag, acc, a);
        }
        acc
    }
}
