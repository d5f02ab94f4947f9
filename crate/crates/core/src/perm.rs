//! Permutation groups via stabilizer chains: multiplication groups of
//! loops, order and membership, and nilpotence of the group.

use std::collections::HashMap;

use crate::arith::prime_power;
use crate::error::{LoopError, Result};
use crate::loops::table::FiniteLoop;

/// A permutation of `0..degree`, stored as its image vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree).collect(),
        }
    }

    /// Wraps an image vector, checking bijectivity.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n || seen[v] {
                return Err(LoopError::internal("image vector is not a permutation"));
            }
            seen[v] = true;
        }
        Ok(Perm { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// `self` followed by `other`: `(self.then(other))(x) = other(self(x))`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm {
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y] = x;
        }
        Perm { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `a⁻¹ b⁻¹ a b`
    pub fn commutator(&self, other: &Perm) -> Perm {
        self.inverse()
            .then(&other.inverse())
            .then(self)
            .then(other)
    }

    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        g.inverse().then(self).then(g)
    }
}

struct Level {
    point: usize,
    gens: Vec<Perm>,
    /// transversal[p] maps the base point to p
    transversal: HashMap<usize, Perm>,
    orbit: Vec<usize>,
}

impl Level {
    fn new(degree: usize, point: usize) -> Self {
        let mut transversal = HashMap::new();
        transversal.insert(point, Perm::identity(degree));
        Level {
            point,
            gens: Vec::new(),
            transversal,
            orbit: vec![point],
        }
    }

    fn recompute_orbit(&mut self) {
        let degree = self.transversal[&self.point].degree();
        self.transversal.clear();
        self.transversal
            .insert(self.point, Perm::identity(degree));
        self.orbit = vec![self.point];
        let mut i = 0;
        while i < self.orbit.len() {
            let pt = self.orbit[i];
            i += 1;
            for g in &self.gens {
                let img = g.apply(pt);
                if !self.transversal.contains_key(&img) {
                    let rep = self.transversal[&pt].then(g);
                    self.transversal.insert(img, rep);
                    self.orbit.push(img);
                }
            }
        }
        self.orbit.sort_unstable();
    }
}

/// A permutation group with a stabilizer chain, supporting order,
/// membership and nilpotence queries.
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    levels: Vec<Level>,
}

impl PermGroup {
    /// The trivial group on `degree` points.
    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            gens: Vec::new(),
            levels: Vec::new(),
        }
    }

    /// Builds the stabilizer chain for the group generated by `gens`.
    /// Base points are chosen ascending, skipping fixed points.
    pub fn new(degree: usize, gens: Vec<Perm>) -> Self {
        let mut group = PermGroup::trivial(degree);
        for g in gens {
            group.add_generator(g);
        }
        group.verify_chain();
        group
    }

    /// Adds one generator, updating the chain incrementally. A generator
    /// that is already a member leaves the group unchanged.
    pub fn add_generator(&mut self, p: Perm) {
        assert_eq!(p.degree(), self.degree);
        if self.contains(&p) {
            return;
        }
        self.gens.push(p.clone());
        self.insert(p, 0);
    }

    /// Sifts `p` through the chain; the residue is the identity iff `p` is
    /// a member.
    fn sift(&self, p: &Perm) -> Perm {
        let mut residue = p.clone();
        for level in &self.levels {
            let img = residue.apply(level.point);
            match level.transversal.get(&img) {
                Some(rep) => residue = residue.then(&rep.inverse()),
                None => return residue,
            }
        }
        residue
    }

    /// Adds a generator at `level`, extending the chain as needed, then
    /// restores the Schreier condition from that level downward.
    fn insert(&mut self, p: Perm, level: usize) {
        if p.is_identity() {
            return;
        }
        if level == self.levels.len() {
            let point = (0..self.degree)
                .find(|&x| p.apply(x) != x)
                .expect("non-identity permutation moves a point");
            self.levels.push(Level::new(self.degree, point));
        }
        self.levels[level].gens.push(p);
        self.levels[level].recompute_orbit();
        self.close_level(level);
    }

    /// Schreier–Sims closure at one level: every Schreier generator must
    /// sift to the identity through the lower levels.
    fn close_level(&mut self, level: usize) {
        loop {
            let mut to_insert: Option<(Perm, usize)> = None;
            {
                let lvl = &self.levels[level];
                'search: for &pt in &lvl.orbit {
                    for g in &lvl.gens {
                        let rep = &lvl.transversal[&pt];
                        let img_rep = &lvl.transversal[&g.apply(pt)];
                        let schreier = rep.then(g).then(&img_rep.inverse());
                        let residue = self.sift_below(&schreier, level + 1);
                        if !residue.is_identity() {
                            to_insert = Some((residue, level + 1));
                            break 'search;
                        }
                    }
                }
            }
            match to_insert {
                Some((residue, at)) => self.insert(residue, at),
                None => return,
            }
        }
    }

    fn sift_below(&self, p: &Perm, from: usize) -> Perm {
        let mut residue = p.clone();
        for level in &self.levels[from.min(self.levels.len())..] {
            let img = residue.apply(level.point);
            match level.transversal.get(&img) {
                Some(rep) => residue = residue.then(&rep.inverse()),
                None => return residue,
            }
        }
        residue
    }

    fn verify_chain(&self) {
        for g in &self.gens {
            debug_assert!(self.contains(g), "generator fails membership");
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    /// Group order: the product of the fundamental orbit lengths.
    /// Panics on overflow past `u128`, which cannot happen at desk scale.
    pub fn order(&self) -> u128 {
        self.levels
            .iter()
            .fold(1u128, |acc, l| {
                acc.checked_mul(l.orbit.len() as u128)
                    .expect("group order exceeds u128")
            })
    }

    pub fn contains(&self, p: &Perm) -> bool {
        p.degree() == self.degree && self.sift(p).is_identity()
    }
}

/// The multiplication group `Mlt(L) = <L_a, R_a : a in L>`, generated by
/// all left and right translations.
pub fn mlt_group(l: &FiniteLoop) -> PermGroup {
    let mut gens = Vec::with_capacity(2 * l.order());
    for a in l.elements() {
        gens.push(Perm::new(l.left_translation(a)).expect("translations are bijections"));
    }
    for a in l.elements() {
        gens.push(Perm::new(l.right_translation(a)).expect("translations are bijections"));
    }
    PermGroup::new(l.order(), gens)
}

/// Outcome of the nilpotence test on a permutation group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupNilpotence {
    pub nilpotent: bool,
    /// Nilpotence class, when nilpotent. The trivial group has class 0.
    pub class: Option<usize>,
}

/// Decides nilpotence by computing the lower central series at generator
/// level: `L_1 = G`, and `L_{i+1}` is the normal closure of the
/// commutators of generators of `L_i` with generators of `G`. The series
/// is must reach the trivial group within `log2(|G|) + 1` steps.
pub fn is_nilpotent_group(g: &PermGroup) -> Result<GroupNilpotence> {
    let order = g.order();
    if order == 1 {
        return Ok(GroupNilpotence {
            nilpotent: true,
            class: Some(0),
        });
    }
    let bound = (128 - order.leading_zeros()) as usize + 2;
    let mut current_gens: Vec<Perm> = g.generators().to_vec();
    let mut current_order = order;
    for step in 1..=bound {
        let mut comm_gens: Vec<Perm> = Vec::new();
        for a in &current_gens {
            for b in g.generators() {
                let c = a.commutator(b);
                if !c.is_identity() {
                    comm_gens.push(c);
                }
            }
        }
        if comm_gens.is_empty() {
            return Ok(GroupNilpotence {
                nilpotent: true,
                class: Some(step),
            });
        }
        let next = normal_closure(g, comm_gens);
        let next_order = next.order();
        if next_order == current_order {
            return Ok(GroupNilpotence {
                nilpotent: false,
                class: None,
            });
        }
        current_gens = next.gens;
        current_order = next_order;
    }
    Err(LoopError::IterationBound { bound })
}

/// Normal closure of `<seed>` under conjugation by the generators of `g`,
/// built incrementally: only permutations outside the current closure
/// become generators.
fn normal_closure(g: &PermGroup, seed: Vec<Perm>) -> PermGroup {
    let mut closure = PermGroup::trivial(g.degree());
    let mut queue = seed;
    while let Some(s) = queue.pop() {
        if closure.contains(&s) {
            continue;
        }
        for x in g.generators() {
            queue.push(s.conjugate_by(x));
        }
        closure.add_generator(s);
    }
    closure
}

/// True iff the group order is a power of `p` (including the trivial group).
pub fn is_p_group(g: &PermGroup, p: u64) -> bool {
    let order = g.order();
    if order == 1 {
        return true;
    }
    match prime_power(order as u64) {
        Some((q, _)) => q == p,
        None => false,
    }
}
