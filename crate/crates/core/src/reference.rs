//! Brute-force ground truth over explicitly enumerable groups.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::sdp_group::FiniteGroup;

/// Sorted, duplicate-free list of elements.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementSet<E>(Vec<E>);

impl<E: Ord> ElementSet<E> {
    pub fn from_vec(mut v: Vec<E>) -> Self {
        v.sort();
        v.dedup();
        Self(v)
    }

    pub fn contains(&self, e: &E) -> bool {
        self.0.binary_search(e).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, E> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[E] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<E> {
        self.0
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.0.iter().all(|e| other.contains(e))
    }
}

impl<E: Ord> FromIterator<E> for ElementSet<E> {
    fn from_iter<I: IntoIterator<Item = E>>(iter: I) -> Self {
        Self::from_vec(iter.into_iter().collect())
    }
}

/// Subgroup generated by `gens`, by breadth-first multiplication.
pub fn closure<G: FiniteGroup>(group: &G, gens: &[G::Elem]) -> ElementSet<G::Elem> {
    let id = group.identity();
    let mut seen = BTreeSet::new();
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(v) = queue.pop_front() {
        for g in gens {
            let w = group.op(&v, g);
            if seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    ElementSet(seen.into_iter().collect())
}

/// Greedy generating set of an explicit subset, or `None` when some
/// intermediate closure escapes it (the subset is not a subgroup).
fn greedy_generators<G: FiniteGroup>(group: &G, set: &ElementSet<G::Elem>) -> Option<Vec<G::Elem>> {
    let mut gens = Vec::new();
    let mut span = closure(group, &gens);
    for h in set.iter() {
        if span.contains(h) {
            continue;
        }
        gens.push(h.clone());
        span = closure(group, &gens);
        if !span.is_subset(set) {
            return None;
        }
    }
    (span.len() == set.len()).then_some(gens)
}

pub fn is_subgroup<G: FiniteGroup>(group: &G, set: &ElementSet<G::Elem>) -> bool {
    greedy_generators(group, set).is_some()
}

/// `{ g : f(g) = f(e) }` over the whole group.
pub fn brute_force_hidden_subgroup<G, L, F>(group: &G, f: F) -> Result<ElementSet<G::Elem>>
where
    G: FiniteGroup,
    L: PartialEq,
    F: Fn(&G::Elem) -> L,
{
    if group.order() > 1_000_000 {
        return Err(Error::EnumerationBound(group.order()));
    }
    let base = f(&group.identity());
    let set: ElementSet<_> = group.all_elements().into_iter().filter(|g| f(g) == base).collect();
    if !is_subgroup(group, &set) {
        return Err(Error::NotPeriodic);
    }
    Ok(set)
}

pub fn subgroup_equal<E: Ord>(s1: &ElementSet<E>, s2: &ElementSet<E>) -> bool {
    s1 == s2
}

pub fn is_normal<G: FiniteGroup>(group: &G, set: &ElementSet<G::Elem>) -> bool {
    group.generators().iter().all(|g| {
        let gi = group.inv(g);
        set.iter().all(|h| set.contains(&group.op(&group.op(g, h), &gi)))
    })
}

pub fn is_abelian<G: FiniteGroup>(group: &G, set: &ElementSet<G::Elem>) -> bool {
    let gens = greedy_generators(group, set).unwrap_or_else(|| set.as_slice().to_vec());
    gens.iter()
        .all(|a| gens.iter().all(|b| group.op(a, b) == group.op(b, a)))
}

/// Every subgroup of a group with at most `bound` elements (`bound <= 10^4`).
///
/// Starts from the cyclic subgroups and joins one cyclic subgroup at a time
/// until nothing new appears. Every subgroup is the join of its cyclic
/// subgroups, so the fixpoint is complete.
pub fn enumerate_all_subgroups<G: FiniteGroup>(group: &G, bound: u64) -> Result<Vec<ElementSet<G::Elem>>> {
    let bound = bound.min(10_000);
    if group.order() > bound {
        return Err(Error::EnumerationBound(group.order()));
    }
    let mut cyclic: Vec<(G::Elem, ElementSet<G::Elem>)> = Vec::new();
    let mut cyclic_seen = BTreeSet::new();
    for g in group.all_elements() {
        let c = closure(group, std::slice::from_ref(&g));
        if cyclic_seen.insert(c.clone()) {
            cyclic.push((g, c));
        }
    }
    let mut found: BTreeSet<ElementSet<G::Elem>> = BTreeSet::new();
    let mut work: Vec<(Vec<G::Elem>, ElementSet<G::Elem>)> = Vec::new();
    for (g, c) in &cyclic {
        if found.insert(c.clone()) {
            work.push((vec![g.clone()], c.clone()));
        }
    }
    while let Some((gens, set)) = work.pop() {
        for (g, c) in &cyclic {
            if c.is_subset(&set) {
                continue;
            }
            let mut joined = gens.clone();
            joined.push(g.clone());
            let span = closure(group, &joined);
            if found.insert(span.clone()) {
                work.push((joined, span));
            }
        }
    }
    Ok(found.into_iter().collect())
}
