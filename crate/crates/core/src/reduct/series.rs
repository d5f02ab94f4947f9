//! Refined central series: descending chains of normal subloops with
//! central factors of prime power order.

use crate::arith::{prime_divisors, prime_power};
use crate::error::{LoopError, Result};
use crate::loops::quotient::quotient;
use crate::loops::series::upper_central_series;
use crate::loops::subloop::{center, NormalSubloop, Subloop};
use crate::loops::table::FiniteLoop;
use crate::supernilpotence::is_supernilpotent_decomp;

/// A descending central series `A = C_0 > C_1 > ... > C_k = {0}` in which
/// every factor `C_i/C_{i+1}` has order a power of `primes[i]`.
#[derive(Debug, Clone)]
pub struct RefinedCentralSeries {
    pub chain: Vec<NormalSubloop>,
    pub primes: Vec<u64>,
}

impl RefinedCentralSeries {
    /// Number of factors `k`.
    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }
}

/// Refines the (reversed) upper central series of a nilpotent loop so that
/// every factor has prime power order.
///
/// Each central factor is an abelian group; it is split along its Sylow
/// components with primes in ascending order from the top, so for `Z6` the
/// chain is `Z6 > {0,2,4} > {0}` with primes `(2, 3)`.
pub fn refine_central_series(l: &FiniteLoop) -> Result<RefinedCentralSeries> {
    let ucs = upper_central_series(l)?;
    if !ucs.nilpotent {
        return Err(LoopError::NotNilpotent);
    }
    let descending: Vec<NormalSubloop> = ucs.chain.into_iter().rev().collect();
    split_prime_factors(l, descending)
}

/// Inserts intermediate normal subloops into a descending central chain so
/// that all factors are prime powers. Asserts centrality and normality of
/// everything it constructs.
pub(crate) fn split_prime_factors(
    l: &FiniteLoop,
    descending: Vec<NormalSubloop>,
) -> Result<RefinedCentralSeries> {
    let mut chain: Vec<NormalSubloop> = vec![descending[0].clone()];
    let mut primes: Vec<u64> = Vec::new();
    for pair in descending.windows(2) {
        let (top, bot) = (&pair[0], &pair[1]);
        if top.order() == bot.order() {
            continue;
        }
        let q = quotient(l, bot)?;
        let factor_set = q.image_of(top.elements());
        let z = center(&q.quot)?;
        if factor_set.iter().any(|&c| !z.contains(c)) {
            return Err(LoopError::internal("series factor is not central"));
        }
        let factor = Subloop::checked(&q.quot, factor_set)
            .map_err(|_| LoopError::internal("series factor is not a subloop"))?;

        // peel by p-th powers, smallest prime first: the subgroup
        // generated by { x^p : x in current } drops exactly one
        // elementary-abelian layer of the p-part, so for Z4 the chain is
        // Z4 > {0,2} > {0} with primes (2, 2)
        let mut current = factor;
        while current.order() > 1 {
            let p = *prime_divisors(current.order() as u64)
                .first()
                .expect("nontrivial group has a prime divisor");
            primes.push(p);
            let powers: Vec<usize> = current
                .elements()
                .iter()
                .map(|&x| q.quot.left_power(x, p as usize))
                .collect();
            let next = crate::loops::subloop::subloop_generated(&q.quot, &powers);
            if next.order() == 1 {
                chain.push(bot.clone());
            } else {
                let preimage = q.preimage_of(next.elements());
                let lifted = Subloop::checked(l, preimage)
                    .map_err(|_| LoopError::internal("lifted set is not a subloop"))?;
                let normal = NormalSubloop::checked(l, lifted)
                    .map_err(|_| LoopError::internal("lifted subloop is not normal"))?;
                chain.push(normal);
            }
            current = next;
        }
    }
    for (i, pair) in chain.windows(2).enumerate() {
        let f = (pair[0].order() / pair[1].order()) as u64;
        match prime_power(f) {
            Some((p, _)) if p == primes[i] => {}
            _ => return Err(LoopError::internal("refined factor is not the right prime power")),
        }
    }
    Ok(RefinedCentralSeries { chain, primes })
}

/// A refined central series passing through the normal subloop `n`, for
/// the corollary construction: above `n` the series is the pullback of the
/// refined series of `L/n`; below, intersections of `n` with the upper
/// central series, refined. Returns the series and the index `j` of `n`.
pub fn series_through(
    l: &FiniteLoop,
    n: &NormalSubloop,
) -> Result<(RefinedCentralSeries, usize)> {
    let q = quotient(l, n)?;
    if is_supernilpotent_decomp(&q.quot)?.is_none() {
        return Err(LoopError::QuotientNotSupernilpotent);
    }
    let ucs = upper_central_series(l)?;
    if !ucs.nilpotent {
        return Err(LoopError::NotNilpotent);
    }

    let top = refine_central_series(&q.quot)?;
    let mut chain: Vec<NormalSubloop> = Vec::new();
    for d in &top.chain {
        let preimage = q.preimage_of(d.elements());
        let sub = Subloop::checked(l, preimage)
            .map_err(|_| LoopError::internal("pullback is not a subloop"))?;
        chain.push(
            NormalSubloop::checked(l, sub)
                .map_err(|_| LoopError::internal("pullback is not normal"))?,
        );
    }
    let j = chain.len() - 1;
    debug_assert_eq!(chain[j].elements(), n.elements());

    // below n: intersections with the upper central series, deduplicated
    let mut below: Vec<NormalSubloop> = Vec::new();
    for z in ucs.chain.iter().rev() {
        let inter = n.subloop().intersect(z.subloop());
        if below
            .last()
            .is_some_and(|prev: &NormalSubloop| prev.order() == inter.order())
        {
            continue;
        }
        let sub = Subloop::checked(l, inter.elements().to_vec())
            .map_err(|_| LoopError::internal("intersection is not a subloop"))?;
        below.push(
            NormalSubloop::checked(l, sub)
                .map_err(|_| LoopError::internal("intersection is not normal"))?,
        );
    }
    let refined_below = split_prime_factors(l, below)?;

    let mut primes = top.primes;
    chain.extend(refined_below.chain.into_iter().skip(1));
    primes.extend(refined_below.primes);
    let series = RefinedCentralSeries { chain, primes };
    if series.chain.last().map(|c| c.order()) != Some(1) {
        return Err(LoopError::internal("series does not reach the trivial subloop"));
    }
    Ok((series, j))
}
