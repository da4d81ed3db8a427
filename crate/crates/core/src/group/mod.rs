//! Finite p-groups materialized as Cayley tables.
//!
//! A [`Group`] is built once from permutation generators (see
//! [`build_group`]) and is immutable afterwards: a dense multiplication
//! table over element ids `0..order`, with the identity at id 0, cached
//! inverses and element orders, and the prime-power shape `(p, n, e)`
//! where `|G| = p^n` and the exponent is `p^e`. Everything downstream
//! (lattice enumeration, censuses, bound checks) works on these ids.

mod family;
mod io;

pub use family::{direct_product, family, DEFAULT_ORDER_CAP, ExtraspecialKind, FamilyKind};
pub use io::{parse_specs, render_specs};

use std::collections::HashMap;

use thiserror::Error;

use crate::bitset::ElementSet;
use crate::perm::Permutation;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("generated group of order {order} is not a p-group")]
    NotPGroup { order: usize },

    #[error("generated group exceeds the order cap ({cap})")]
    OrderCapExceeded { cap: usize },

    #[error("operand is not a subgroup")]
    NotASubgroup,

    #[error("unknown group family `{0}`")]
    UnknownFamily(String),

    #[error("bad family parameters: {0}")]
    BadParams(String),
}

/// A named set of permutation generators; the input form of a group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Permutation>,
}

impl GroupSpec {
    pub fn new(
        name: impl Into<String>,
        degree: usize,
        generators: Vec<Permutation>,
    ) -> Result<Self, GroupError> {
        if generators.is_empty() {
            return Err(GroupError::InvalidPermutation(
                "generator list is empty".into(),
            ));
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(GroupError::InvalidPermutation(format!(
                    "generator degree {} does not match declared degree {degree}",
                    g.degree()
                )));
            }
        }
        Ok(GroupSpec {
            name: name.into(),
            degree,
            generators,
        })
    }
}

/// An immutable finite p-group with a dense Cayley table.
#[derive(Debug)]
pub struct Group {
    name: String,
    order: usize,
    prime: usize,
    /// `|G| = p^log_order`.
    log_order: u32,
    /// Exponent of the group is `p^exponent_log`.
    exponent_log: u32,
    /// Row-major `order x order` table of element ids.
    cayley: Vec<u16>,
    inverse: Vec<u16>,
    element_order: Vec<u32>,
    /// Ids of the spec generators after re-indexing.
    generators: Vec<usize>,
}

impl Group {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn prime(&self) -> usize {
        self.prime
    }

    pub fn log_order(&self) -> u32 {
        self.log_order
    }

    pub fn exponent_log(&self) -> u32 {
        self.exponent_log
    }

    pub fn generator_ids(&self) -> &[usize] {
        &self.generators
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cayley[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn order_of(&self, a: usize) -> u32 {
        self.element_order[a]
    }

    pub fn pow(&self, a: usize, mut k: usize) -> usize {
        let mut acc = 0usize;
        let mut base = a;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// `g h g^-1`.
    #[inline]
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    #[inline]
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let lhs = self.mul(self.inv(a), self.inv(b));
        self.mul(self.mul(lhs, a), b)
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|&a| self.generators.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The whole group as an element set.
    pub fn all_elements(&self) -> ElementSet {
        ElementSet::full(self.order)
    }

    pub fn trivial_subgroup(&self) -> ElementSet {
        ElementSet::from_members(self.order, &[0])
    }

    /// `true` when `set` is nonempty and closed under the table product
    /// (which suffices for a finite subgroup).
    pub fn is_subgroup(&self, set: &ElementSet) -> bool {
        if !set.contains(0) {
            return false;
        }
        for a in set.iter() {
            for b in set.iter() {
                if !set.contains(self.mul(a, b)) {
                    return false;
                }
            }
        }
        true
    }

    /// Smallest subgroup containing `seed`; the empty seed yields the
    /// trivial subgroup.
    pub fn closure(&self, seed: &ElementSet) -> ElementSet {
        let mut bits = self.trivial_subgroup();
        let mut known: Vec<usize> = vec![0];
        let mut frontier: Vec<usize> = seed.iter().filter(|&x| x != 0).collect();
        for &x in &frontier {
            bits.insert(x);
        }
        self.close_over(&mut bits, &mut known, &mut frontier);
        bits
    }

    /// Closure of `subgroup ∪ {g}`. Requires `subgroup` to be closed
    /// already; this is the hot path of lattice enumeration.
    pub(crate) fn extend_subgroup(&self, subgroup: &ElementSet, g: usize) -> ElementSet {
        let mut bits = subgroup.clone();
        let mut known: Vec<usize> = subgroup.iter().collect();
        let mut frontier = vec![g];
        bits.insert(g);
        self.close_over(&mut bits, &mut known, &mut frontier);
        bits
    }

    /// Worklist closure: every frontier element is multiplied (both sides)
    /// against everything already known. Pairs of old elements are never
    /// revisited, which is sound because `known` starts out closed.
    fn close_over(&self, bits: &mut ElementSet, known: &mut Vec<usize>, frontier: &mut Vec<usize>) {
        while let Some(x) = frontier.pop() {
            known.push(x);
            let mut idx = 0;
            while idx < known.len() {
                let y = known[idx];
                idx += 1;
                for z in [self.mul(x, y), self.mul(y, x)] {
                    if !bits.contains(z) {
                        bits.insert(z);
                        frontier.push(z);
                    }
                }
            }
        }
    }

    /// The subgroup generated by the elements of `region` whose order
    /// divides `p^i`, together with a flag telling whether that raw
    /// element set was already closed.
    pub fn omega(&self, region: &ElementSet, i: u32) -> Result<OmegaResult, GroupError> {
        if !self.is_subgroup(region) {
            return Err(GroupError::NotASubgroup);
        }
        let bound = self
            .prime
            .checked_pow(i)
            .unwrap_or(usize::MAX);
        let mut raw = ElementSet::empty(self.order);
        for x in region.iter() {
            if bound % self.element_order[x] as usize == 0 {
                raw.insert(x);
            }
        }
        let subgroup = self.closure(&raw);
        let raw_was_closed = raw == subgroup;
        Ok(OmegaResult {
            subgroup,
            raw_was_closed,
        })
    }

    /// Center, Frattini and derived subgroups of `region`, with its
    /// minimal generator count and exponent. Frattini is computed as the
    /// closure of commutators and p-th powers, the p-group identity.
    pub fn characteristic_data(&self, region: &ElementSet) -> Result<CharacteristicData, GroupError> {
        if !self.is_subgroup(region) {
            return Err(GroupError::NotASubgroup);
        }
        let members: Vec<usize> = region.iter().collect();

        let mut center = ElementSet::empty(self.order);
        for &x in &members {
            if members.iter().all(|&y| self.mul(x, y) == self.mul(y, x)) {
                center.insert(x);
            }
        }

        let mut derived_seed = ElementSet::empty(self.order);
        for &x in &members {
            for &y in &members {
                derived_seed.insert(self.commutator(x, y));
            }
        }
        let derived = self.closure(&derived_seed);

        let mut frattini_seed = derived_seed;
        for &x in &members {
            frattini_seed.insert(self.pow(x, self.prime));
        }
        let frattini = self.closure(&frattini_seed);

        let index = members.len() / frattini.len();
        let rank = log_exact(index, self.prime).expect("frattini index is a p-power");
        let max_order = members
            .iter()
            .map(|&x| self.element_order[x] as usize)
            .max()
            .unwrap_or(1);
        let exponent_log = log_exact(max_order, self.prime).expect("element order is a p-power");

        Ok(CharacteristicData {
            center,
            frattini,
            derived,
            rank,
            exponent_log,
        })
    }

    /// Elements of the whole group commuting with all of `target`.
    pub fn centralizer(&self, target: &ElementSet) -> ElementSet {
        let members: Vec<usize> = target.iter().collect();
        let mut result = ElementSet::empty(self.order);
        for x in 0..self.order {
            if members.iter().all(|&t| self.mul(x, t) == self.mul(t, x)) {
                result.insert(x);
            }
        }
        result
    }

    /// Elements of the whole group that conjugate `target` onto itself.
    pub fn normalizer(&self, target: &ElementSet) -> Result<ElementSet, GroupError> {
        if !self.is_subgroup(target) {
            return Err(GroupError::NotASubgroup);
        }
        let members: Vec<usize> = target.iter().collect();
        let mut result = ElementSet::empty(self.order);
        for x in 0..self.order {
            if members.iter().all(|&t| target.contains(self.conjugate(x, t))) {
                result.insert(x);
            }
        }
        Ok(result)
    }

    /// The image of `set` under conjugation by `g`.
    pub fn conjugate_set(&self, g: usize, set: &ElementSet) -> ElementSet {
        let mut result = ElementSet::empty(self.order);
        for h in set.iter() {
            result.insert(self.conjugate(g, h));
        }
        result
    }
}

/// Result of an omega computation: the generated subgroup plus whether
/// the defining element set needed closing at all.
#[derive(Debug, Clone)]
pub struct OmegaResult {
    pub subgroup: ElementSet,
    pub raw_was_closed: bool,
}

#[derive(Debug, Clone)]
pub struct CharacteristicData {
    pub center: ElementSet,
    pub frattini: ElementSet,
    pub derived: ElementSet,
    /// Minimal number of generators, `log_p` of the Frattini index.
    pub rank: u32,
    /// The exponent of the region is `p^exponent_log`.
    pub exponent_log: u32,
}

/// `log_base(value)` when `value` is an exact power of `base`.
pub(crate) fn log_exact(value: usize, base: usize) -> Option<u32> {
    if value == 0 {
        return None;
    }
    let mut v = value;
    let mut log = 0u32;
    while v > 1 {
        if v % base != 0 {
            return None;
        }
        v /= base;
        log += 1;
    }
    Some(log)
}

/// Builds a group from its spec with the default order cap.
pub fn build_group(spec: &GroupSpec) -> Result<Group, GroupError> {
    build_group_with_cap(spec, DEFAULT_ORDER_CAP)
}

/// Builds a group from permutation generators: closes the generators under
/// composition, re-indexes elements to `0..order` sorted by
/// `(element order, discovery order)` with the identity at 0, fills the
/// Cayley table and validates the p-group shape.
///
/// The cap is clamped to `u16::MAX` because element ids are 16-bit.
pub fn build_group_with_cap(spec: &GroupSpec, cap: usize) -> Result<Group, GroupError> {
    if spec.generators.is_empty() {
        return Err(GroupError::InvalidPermutation(
            "generator list is empty".into(),
        ));
    }
    for g in &spec.generators {
        if g.degree() != spec.degree {
            return Err(GroupError::InvalidPermutation(format!(
                "generator degree {} does not match spec degree {}",
                g.degree(),
                spec.degree
            )));
        }
    }
    let cap = cap.min(u16::MAX as usize);

    // Breadth-first closure under right multiplication by generators.
    let identity = Permutation::identity(spec.degree);
    let mut elements: Vec<Permutation> = vec![identity.clone()];
    let mut index: HashMap<Permutation, usize> = HashMap::new();
    index.insert(identity, 0);
    let mut head = 0;
    while head < elements.len() {
        let current = elements[head].clone();
        head += 1;
        for g in &spec.generators {
            let next = current.then(g);
            if !index.contains_key(&next) {
                if elements.len() >= cap {
                    return Err(GroupError::OrderCapExceeded { cap });
                }
                index.insert(next.clone(), elements.len());
                elements.push(next);
            }
        }
    }

    let order = elements.len();
    let prime = if order == 1 {
        // The trivial group is a p-group for every p; pick 2 so the
        // prime-power metadata stays well-defined. Every congruence in
        // this crate is vacuously `1 ≡ 1` there regardless of p.
        2
    } else {
        smallest_prime_factor(order)
    };
    let log_order = log_exact(order, prime).ok_or(GroupError::NotPGroup { order })?;

    // Deterministic re-index: identity first, then by (order, discovery).
    let mut rank: Vec<usize> = (0..order).collect();
    let orders: Vec<usize> = elements.iter().map(|p| p.order()).collect();
    rank.sort_by_key(|&i| (orders[i], i));
    let mut new_id = vec![0usize; order];
    for (new, &old) in rank.iter().enumerate() {
        new_id[old] = new;
    }

    let mut cayley = vec![0u16; order * order];
    for (old_a, perm_a) in elements.iter().enumerate() {
        for (old_b, perm_b) in elements.iter().enumerate() {
            let prod = new_id[index[&perm_a.then(perm_b)]];
            cayley[new_id[old_a] * order + new_id[old_b]] = prod as u16;
        }
    }
    let mut inverse = vec![0u16; order];
    for (old, perm) in elements.iter().enumerate() {
        inverse[new_id[old]] = new_id[index[&perm.inverse()]] as u16;
    }
    let mut element_order = vec![0u32; order];
    for (old, &ord) in orders.iter().enumerate() {
        element_order[new_id[old]] = ord as u32;
    }

    let max_order = *orders.iter().max().unwrap_or(&1);
    let exponent_log = log_exact(max_order, prime).ok_or(GroupError::NotPGroup { order })?;

    let generators = spec
        .generators
        .iter()
        .map(|g| new_id[index[g]])
        .collect();

    let group = Group {
        name: spec.name.clone(),
        order,
        prime,
        log_order,
        exponent_log,
        cayley,
        inverse,
        element_order,
        generators,
    };
    group.check_table();
    Ok(group)
}

impl Group {
    /// One-time construction self-check: identity laws, inverses and full
    /// associativity of the table.
    fn check_table(&self) {
        let n = self.order;
        for x in 0..n {
            assert_eq!(self.mul(0, x), x, "left identity broken at {x}");
            assert_eq!(self.mul(x, 0), x, "right identity broken at {x}");
            assert_eq!(self.mul(x, self.inv(x)), 0, "inverse broken at {x}");
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    assert_eq!(
                        self.mul(ab, c),
                        self.mul(a, self.mul(b, c)),
                        "associativity broken at ({a},{b},{c})"
                    );
                }
            }
        }
    }
}

fn smallest_prime_factor(n: usize) -> usize {
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return d;
        }
        d += 1;
    }
    n
}
