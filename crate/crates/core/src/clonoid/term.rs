//! Terms over `(Z_q x Z_p, +, f)` and their canonical normal forms.
//!
//! Normalization rewrites with the identities: inner `f`-subterms are
//! absorbed (`f(x + f(y)) = f(x)`), inner coefficients reduce mod `q`
//! (`f(x + qy) = f(x)`), outer coefficients reduce mod `p`
//! (`p·f(x) = 0`), inner linear forms are rewritten to leading
//! coefficients `a^j` through the rows `f(cx) = Σ d_i f(a^i x)`, and the
//! linear part collects mod `pq`. Equality of normal forms coincides with
//! pointwise equality of the term functions, and every call cross-checks
//! this by exhaustive evaluation.

use std::collections::BTreeMap;

use crate::clonoid::basis::{coefficient_rows, find_basis_parameter, ClonoidBasis, CoefficientRow};
use crate::clonoid::span::FnTable;
use crate::error::{LoopError, Result};

/// A term over the two-sorted algebra: variables, binary sums, repetition
/// markers (`m·t` is `t + ... + t`), and applications of `f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TermAst {
    Var(usize),
    Add(Box<TermAst>, Box<TermAst>),
    Repeat(u64, Box<TermAst>),
    Apply(Box<TermAst>),
}

impl TermAst {
    pub fn var(i: usize) -> Self {
        TermAst::Var(i)
    }

    pub fn add(self, other: TermAst) -> Self {
        TermAst::Add(Box::new(self), Box::new(other))
    }

    pub fn repeat(self, m: u64) -> Self {
        TermAst::Repeat(m, Box::new(self))
    }

    pub fn apply(self) -> Self {
        TermAst::Apply(Box::new(self))
    }

    /// Largest variable index plus one.
    pub fn min_arity(&self) -> usize {
        match self {
            TermAst::Var(i) => i + 1,
            TermAst::Add(a, b) => a.min_arity().max(b.min_arity()),
            TermAst::Repeat(_, t) | TermAst::Apply(t) => t.min_arity(),
        }
    }
}

/// Fixed data for normalizing and evaluating terms: the primes, the unary
/// generator, its basis parameter and all coefficient rows.
#[derive(Debug, Clone)]
pub struct ClonoidContext {
    pub q: u64,
    pub p: u64,
    pub f: FnTable,
    pub basis: ClonoidBasis,
    pub rows: Vec<CoefficientRow>,
}

impl ClonoidContext {
    pub fn new(f: FnTable) -> Result<Self> {
        let basis = find_basis_parameter(&f)?;
        let rows = coefficient_rows(&basis)?;
        Ok(ClonoidContext {
            q: f.q,
            p: f.p,
            f,
            basis,
            rows,
        })
    }

    /// Evaluates a term at a point of `(Z_q x Z_p)^arity`, each argument a
    /// pair `(x mod q, x mod p)`.
    pub fn eval(&self, term: &TermAst, args: &[(u64, u64)]) -> Result<(u64, u64)> {
        match term {
            TermAst::Var(i) => args
                .get(*i)
                .copied()
                .map(|(a, b)| (a % self.q, b % self.p))
                .ok_or_else(|| LoopError::MalformedTerm(format!("variable x{} out of range", i + 1))),
            TermAst::Add(s, t) => {
                let (aq, ap) = self.eval(s, args)?;
                let (bq, bp) = self.eval(t, args)?;
                Ok(((aq + bq) % self.q, (ap + bp) % self.p))
            }
            TermAst::Repeat(m, t) => {
                let (aq, ap) = self.eval(t, args)?;
                Ok((aq * (m % self.q) % self.q, ap * (m % self.p) % self.p))
            }
            TermAst::Apply(t) => {
                let (aq, _) = self.eval(t, args)?;
                Ok((0, self.f.at(aq)))
            }
        }
    }

    /// Evaluates an `arity`-ary term on every point, as a flat table.
    pub fn eval_table(&self, term: &TermAst, arity: usize) -> Result<Vec<(u64, u64)>> {
        let modulus = self.q * self.p;
        let size = (modulus as usize).pow(arity as u32);
        let mut out = Vec::with_capacity(size);
        let mut args = vec![(0u64, 0u64); arity];
        for idx in 0..size {
            let mut rest = idx as u64;
            for slot in args.iter_mut().rev() {
                let v = rest % modulus;
                rest /= modulus;
                *slot = (v % self.q, v % self.p);
            }
            out.push(self.eval(term, &args)?);
        }
        Ok(out)
    }
}

/// Canonical form `Σ d_i x_i + Σ c_α f(<α, x>)`: coefficients `d_i` mod
/// `pq`, and a spectral part indexed by tuples whose leading nonzero entry
/// is a power `a^j`, `j < k`, with coefficients in `Z_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalFormTerm {
    pub arity: usize,
    pub linear: Vec<u64>,
    pub spectral: BTreeMap<Vec<u64>, u64>,
}

impl NormalFormTerm {
    fn zero(arity: usize) -> Self {
        NormalFormTerm {
            arity,
            linear: vec![0; arity],
            spectral: BTreeMap::new(),
        }
    }

    /// The canonical term denoting this normal form. The zero function is
    /// written as `pq·x1`.
    pub fn to_ast(&self, q: u64, p: u64) -> TermAst {
        let weighted = |m: u64, t: TermAst| if m == 1 { t } else { t.repeat(m) };
        let mut parts: Vec<TermAst> = Vec::new();
        for (i, &d) in self.linear.iter().enumerate() {
            if d != 0 {
                parts.push(weighted(d, TermAst::var(i)));
            }
        }
        for (alpha, &c) in &self.spectral {
            let mut inner: Vec<TermAst> = Vec::new();
            for (i, &coef) in alpha.iter().enumerate() {
                if coef != 0 {
                    inner.push(weighted(coef, TermAst::var(i)));
                }
            }
            let arg = inner
                .into_iter()
                .reduce(TermAst::add)
                .expect("spectral keys are nonzero");
            parts.push(weighted(c, arg.apply()));
        }
        parts
            .into_iter()
            .reduce(TermAst::add)
            .unwrap_or_else(|| TermAst::var(0).repeat(p * q))
    }
}

/// Rewrites a term into its normal form.
pub fn normalize_term(ctx: &ClonoidContext, term: &TermAst, arity: usize) -> Result<NormalFormTerm> {
    if arity == 0 || term.min_arity() > arity {
        return Err(LoopError::MalformedTerm(format!(
            "term needs arity >= {}, got {arity}",
            term.min_arity()
        )));
    }
    let mut nf = collect(ctx, term, arity, 1)?;
    let pq = ctx.p * ctx.q;
    for d in nf.linear.iter_mut() {
        *d %= pq;
    }
    nf.spectral.retain(|_, c| *c % ctx.p != 0);
    for c in nf.spectral.values_mut() {
        *c %= ctx.p;
    }
    Ok(nf)
}

/// Recursive collection with an outer multiplicity.
fn collect(
    ctx: &ClonoidContext,
    term: &TermAst,
    arity: usize,
    weight: u64,
) -> Result<NormalFormTerm> {
    let pq = ctx.p * ctx.q;
    match term {
        TermAst::Var(i) => {
            let mut nf = NormalFormTerm::zero(arity);
            nf.linear[*i] = weight % pq;
            Ok(nf)
        }
        TermAst::Add(s, t) => {
            let mut nf = collect(ctx, s, arity, weight)?;
            let other = collect(ctx, t, arity, weight)?;
            for (a, b) in nf.linear.iter_mut().zip(&other.linear) {
                *a = (*a + b) % pq;
            }
            for (alpha, c) in other.spectral {
                let entry = nf.spectral.entry(alpha).or_insert(0);
                *entry = (*entry + c) % ctx.p;
            }
            Ok(nf)
        }
        // weight mod pq preserves both the mod-q and mod-p residues
        TermAst::Repeat(m, t) => collect(ctx, t, arity, weight * (m % pq) % pq),
        TermAst::Apply(t) => {
            // the argument's spectral part is absorbed: f(x + f(y)) = f(x);
            // its linear part reduces mod q: f(x + qy) = f(x)
            let inner = collect(ctx, t, arity, 1)?;
            let beta: Vec<u64> = inner.linear.iter().map(|&d| d % ctx.q).collect();
            let mut nf = NormalFormTerm::zero(arity);
            if beta.iter().all(|&b| b == 0) {
                return Ok(nf); // f(0) = 0
            }
            let lead_pos = beta.iter().position(|&b| b != 0).unwrap();
            let b = beta[lead_pos];
            let inv = crate::arith::mod_inverse(b, ctx.q).expect("nonzero mod prime");
            let delta: Vec<u64> = beta.iter().map(|&c| c * inv % ctx.q).collect();
            let row = &ctx.rows[b as usize];
            for (&d, &mult) in row.d.iter().zip(&ctx.basis.powers) {
                if d != 0 {
                    let alpha: Vec<u64> = delta.iter().map(|&c| c * mult % ctx.q).collect();
                    let entry = nf.spectral.entry(alpha).or_insert(0);
                    *entry = (*entry + weight % ctx.p * d) % ctx.p;
                }
            }
            Ok(nf)
        }
    }
}

/// Compares two terms: normal forms are compared, and the verdict is
/// cross-checked against exhaustive pointwise evaluation. A disagreement
/// between the two routes is an internal error.
pub fn terms_equal(
    ctx: &ClonoidContext,
    t1: &TermAst,
    t2: &TermAst,
    arity: usize,
) -> Result<bool> {
    let by_nf = normalize_term(ctx, t1, arity)? == normalize_term(ctx, t2, arity)?;
    let by_eval = ctx.eval_table(t1, arity)? == ctx.eval_table(t2, arity)?;
    if by_nf != by_eval {
        return Err(LoopError::internal(
            "normal-form equality disagrees with pointwise evaluation",
        ));
    }
    Ok(by_nf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ctx_011() -> ClonoidContext {
        ClonoidContext::new(FnTable::unary(3, 2, vec![0, 1, 1]).unwrap()).unwrap()
    }

    fn ctx_010() -> ClonoidContext {
        ClonoidContext::new(FnTable::unary(3, 2, vec![0, 1, 0]).unwrap()).unwrap()
    }

    #[test]
    fn absorption_rule() {
        // f(x + f(y)) = f(x)
        let ctx = ctx_011();
        let t = TermAst::var(0).add(TermAst::var(1).apply()).apply();
        let plain = TermAst::var(0).apply();
        assert!(terms_equal(&ctx, &t, &plain, 2).unwrap());
    }

    #[test]
    fn p_fold_sum_vanishes() {
        // f(x) + f(x) = 0 for p = 2
        let ctx = ctx_011();
        let t = TermAst::var(0).apply().add(TermAst::var(0).apply());
        let nf = normalize_term(&ctx, &t, 1).unwrap();
        assert!(nf.spectral.is_empty());
        assert!(nf.linear.iter().all(|&d| d == 0));
    }

    #[test]
    fn inner_q_multiples_vanish() {
        // f(x + 3y) = f(x) for q = 3
        let ctx = ctx_010();
        let t = TermAst::var(0).add(TermAst::var(1).repeat(3)).apply();
        let plain = TermAst::var(0).apply();
        assert!(terms_equal(&ctx, &t, &plain, 2).unwrap());
    }

    #[test]
    fn scaling_rewrites_through_coefficient_rows() {
        // with f = (0,1,1): k = 1 and f(2x) = f(x)
        let ctx = ctx_011();
        let doubled = TermAst::var(0).repeat(2).apply();
        let plain = TermAst::var(0).apply();
        assert!(terms_equal(&ctx, &doubled, &plain, 1).unwrap());

        // with f = (0,1,0): f(2x) is a distinct basis element
        let ctx = ctx_010();
        let doubled = TermAst::var(0).repeat(2).apply();
        let plain = TermAst::var(0).apply();
        assert!(!terms_equal(&ctx, &doubled, &plain, 1).unwrap());
    }

    #[test]
    fn normal_form_keys_have_leading_powers() {
        let ctx = ctx_010(); // a = 2, k = 2
        let t = TermAst::var(0)
            .repeat(2)
            .add(TermAst::var(1))
            .apply()
            .add(TermAst::var(1).repeat(5));
        let nf = normalize_term(&ctx, &t, 2).unwrap();
        for alpha in nf.spectral.keys() {
            let lead = *alpha.iter().find(|&&c| c != 0).unwrap();
            assert!(lead == 1 || lead == 2); // a^0 or a^1
        }
        assert_eq!(nf.linear[1], 5);
    }

    fn ast_strategy(arity: usize) -> impl Strategy<Value = TermAst> {
        let leaf = (0..arity).prop_map(TermAst::Var);
        leaf.prop_recursive(4, 48, 3, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| a.add(b)),
                (0u64..12, inner.clone()).prop_map(|(m, t)| t.repeat(m)),
                inner.prop_map(TermAst::apply),
            ]
        })
    }

    proptest! {
        #[test]
        fn normalization_preserves_the_function(t in ast_strategy(3)) {
            for ctx in [ctx_011(), ctx_010()] {
                let nf = normalize_term(&ctx, &t, 3).unwrap();
                let round = nf.to_ast(ctx.q, ctx.p);
                prop_assert_eq!(
                    ctx.eval_table(&t, 3).unwrap(),
                    ctx.eval_table(&round, 3).unwrap()
                );
                // idempotence
                prop_assert_eq!(normalize_term(&ctx, &round, 3).unwrap(), nf);
            }
        }

        #[test]
        fn equality_matches_pointwise(
            t1 in ast_strategy(2),
            t2 in ast_strategy(2),
        ) {
            for ctx in [ctx_011(), ctx_010()] {
                // terms_equal errors iff the two routes disagree
                prop_assert!(terms_equal(&ctx, &t1, &t2, 2).is_ok());
            }
        }
    }
}
