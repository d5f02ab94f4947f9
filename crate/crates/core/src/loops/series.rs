//! Upper central series and nilpotence.

use crate::error::Result;
use crate::loops::quotient::quotient;
use crate::loops::subloop::{center, NormalSubloop, Subloop};
use crate::loops::table::FiniteLoop;

/// The ascending central series `{0} = Z_0 <= Z_1 <= ...` where `Z_{i+1}`
/// is the preimage of the center of `L/Z_i`, computed until it stabilizes.
#[derive(Debug, Clone)]
pub struct CentralSeries {
    /// Strictly ascending chain, starting at the trivial subloop. The last
    /// entry is the whole loop exactly when the loop is nilpotent.
    pub chain: Vec<NormalSubloop>,
    pub nilpotent: bool,
}

impl CentralSeries {
    /// Nilpotence class: length of the chain minus one, when nilpotent.
    pub fn class(&self) -> Option<usize> {
        self.nilpotent.then(|| self.chain.len() - 1)
    }
}

/// Computes the upper central series of `l`.
pub fn upper_central_series(l: &FiniteLoop) -> Result<CentralSeries> {
    let mut chain = vec![NormalSubloop::trivial()];
    loop {
        let top = chain.last().unwrap();
        if top.is_whole(l) {
            return Ok(CentralSeries { chain, nilpotent: true });
        }
        let q = quotient(l, top)?;
        let z_quot = center(&q.quot)?;
        let preimage = q.preimage_of(z_quot.elements());
        if preimage.len() == top.order() {
            // center of the quotient is trivial: the series has stalled
            return Ok(CentralSeries { chain, nilpotent: false });
        }
        let sub = Subloop::checked(l, preimage)?;
        chain.push(NormalSubloop::checked(l, sub)?);
    }
}

/// Convenience: nilpotence class of `l`, if nilpotent.
pub fn nilpotence_class(l: &FiniteLoop) -> Result<Option<usize>> {
    Ok(upper_central_series(l)?.class())
}
