//! Subgroups as id sets, the subgroup lattice, derived series, generator
//! counts, and rank.

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupRef};
use crate::util::IdSet;
use std::collections::HashSet;

/// A subgroup of a fixed parent group, stored as a sorted id list.
///
/// The parent is identified by a fingerprint rather than owned; operations
/// that combine a subgroup with a group assert the fingerprints agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    members: Vec<u32>,
    mask: IdSet,
    normal: bool,
    parent_hash: u64,
    parent_order: usize,
}

impl Subgroup {
    /// Wraps a sorted member list, verifying it really is a subgroup.
    pub fn new(parent: &FiniteGroup, mut members: Vec<u32>) -> Result<Subgroup> {
        members.sort_unstable();
        members.dedup();
        if members.first() != Some(&0) {
            return Err(Error::Parse("subgroup must contain the identity".into()));
        }
        let mask = IdSet::from_ids(parent.order(), &members);
        for &a in &members {
            if !mask.contains(parent.inv(a)) {
                return Err(Error::Parse("subgroup not closed under inverse".into()));
            }
            for &b in &members {
                if !mask.contains(parent.mul(a, b)) {
                    return Err(Error::Parse("subgroup not closed under product".into()));
                }
            }
        }
        Ok(Self::new_unchecked(parent, members, mask))
    }

    fn new_unchecked(parent: &FiniteGroup, members: Vec<u32>, mask: IdSet) -> Subgroup {
        let normal = parent
            .generator_ids()
            .iter()
            .all(|&s| members.iter().all(|&m| mask.contains(parent.conj(m, s))));
        Subgroup {
            members,
            mask,
            normal,
            parent_hash: parent.canonical_hash(),
            parent_order: parent.order(),
        }
    }

    pub fn trivial(parent: &FiniteGroup) -> Subgroup {
        Subgroup::new(parent, vec![0]).expect("trivial subgroup")
    }

    pub fn whole(parent: &FiniteGroup) -> Subgroup {
        Subgroup::new(parent, (0..parent.order() as u32).collect()).expect("whole group")
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn index_in_parent(&self) -> usize {
        self.parent_order / self.members.len()
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn contains(&self, id: u32) -> bool {
        self.mask.contains(id)
    }

    pub fn is_normal(&self) -> bool {
        self.normal
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.parent_order
    }

    pub fn assert_parent(&self, parent: &FiniteGroup) {
        assert_eq!(
            self.parent_hash,
            parent.canonical_hash(),
            "subgroup used with the wrong parent group"
        );
    }

    /// A short generating list found greedily; each pick at least doubles the
    /// subgroup, so the list has at most log2(order) entries.
    pub fn greedy_generators(&self, parent: &FiniteGroup) -> Vec<u32> {
        self.assert_parent(parent);
        greedy_generators_of(parent, &self.members)
    }

    /// Realizes the subgroup as a group in its own right (same degree,
    /// same permutations). Sub-id `k` corresponds to parent id
    /// `members()[k]` because the parent's lexicographic order restricts.
    pub fn as_group(&self, parent: &FiniteGroup) -> Embedded {
        self.assert_parent(parent);
        let perms: Vec<_> = self.members.iter().map(|&m| parent.perm(m).clone()).collect();
        let gens: Vec<_> = self
            .greedy_generators(parent)
            .iter()
            .map(|&m| parent.perm(m).clone())
            .collect();
        let group = FiniteGroup::from_elements(parent.degree(), perms, gens);
        assert_eq!(group.order(), self.members.len());
        Embedded {
            group,
            to_parent: self.members.clone(),
        }
    }
}

/// A subgroup realized as its own `FiniteGroup`, with the id translation
/// back into the parent.
pub struct Embedded {
    pub group: GroupRef,
    pub to_parent: Vec<u32>,
}

impl Embedded {
    pub fn parent_id(&self, sub_id: u32) -> u32 {
        self.to_parent[sub_id as usize]
    }

    pub fn sub_id(&self, parent_id: u32) -> Option<u32> {
        self.to_parent
            .binary_search(&parent_id)
            .ok()
            .map(|i| i as u32)
    }
}

fn greedy_generators_of(parent: &FiniteGroup, members: &[u32]) -> Vec<u32> {
    let mut gens: Vec<u32> = Vec::new();
    let mut closure = IdSet::from_ids(parent.order(), &[0]);
    let mut closure_list = vec![0u32];
    for &m in members {
        if !closure.contains(m) {
            gens.push(m);
            extend_closure(parent, &mut closure, &mut closure_list, m);
        }
    }
    gens
}

/// Grows `closure` (already a subgroup) by one new generator in place.
fn extend_closure(
    parent: &FiniteGroup,
    closure: &mut IdSet,
    list: &mut Vec<u32>,
    new_gen: u32,
) {
    let mut queue = vec![new_gen];
    closure.insert(new_gen);
    list.push(new_gen);
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        let snapshot_len = list.len();
        for i in 0..snapshot_len {
            let m = list[i];
            for y in [parent.mul(x, m), parent.mul(m, x)] {
                if closure.insert(y) {
                    list.push(y);
                    queue.push(y);
                }
            }
        }
    }
    list.sort_unstable();
}

/// Closure of a seed set into the subgroup it generates, as sorted ids.
/// `budget` is decremented by one per multiplication.
pub fn close_subset(parent: &FiniteGroup, seed: &[u32], budget: &mut usize) -> Result<Vec<u32>> {
    let mut set = IdSet::from_ids(parent.order(), &[0]);
    let mut list = vec![0u32];
    let mut queue: Vec<u32> = Vec::new();
    for &s in seed {
        if set.insert(s) {
            list.push(s);
            queue.push(s);
        }
    }
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for &s in seed {
            if *budget == 0 {
                return Err(Error::BudgetExceeded);
            }
            *budget -= 1;
            for y in [parent.mul(x, s), parent.mul(s, x)] {
                if set.insert(y) {
                    list.push(y);
                    queue.push(y);
                }
            }
        }
    }
    list.sort_unstable();
    Ok(list)
}

/// Normal closure of `seed` inside the subgroup generated by `host_gens`
/// (pass the group's generators for the normal closure in the whole group).
pub fn normal_closure(
    parent: &FiniteGroup,
    host_gens: &[u32],
    seed: &[u32],
    budget: &mut usize,
) -> Result<Vec<u32>> {
    let mut gens: Vec<u32> = seed.to_vec();
    loop {
        let closure = close_subset(parent, &gens, budget)?;
        let mask = IdSet::from_ids(parent.order(), &closure);
        let mut grew = false;
        'outer: for &g in host_gens {
            for &m in &closure {
                let c = parent.conj(m, g);
                if !mask.contains(c) {
                    gens.push(c);
                    grew = true;
                    break 'outer;
                }
            }
        }
        if !grew {
            return Ok(closure);
        }
    }
}

impl FiniteGroup {
    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::trivial(self)
    }

    pub fn whole_subgroup(&self) -> Subgroup {
        Subgroup::whole(self)
    }

    /// All subgroups, as sorted member lists, found by breadth-first
    /// extension of known subgroups by single elements. Output is sorted by
    /// (order, members) so it is deterministic.
    pub fn all_subgroups(&self, limits: &Limits) -> Result<Vec<Vec<u32>>> {
        self.subgroups_with_order_dividing(self.order(), limits)
    }

    /// The lattice BFS restricted to subgroups whose order divides `m`.
    /// Any subgroup of such a subgroup again has order dividing `m`, so the
    /// restriction is search-complete.
    pub fn subgroups_with_order_dividing(
        &self,
        m: usize,
        limits: &Limits,
    ) -> Result<Vec<Vec<u32>>> {
        let mut budget = limits.subgroup_budget;
        let trivial = vec![0u32];
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        seen.insert(trivial.clone());
        let mut queue = vec![trivial];
        let mut head = 0;
        while head < queue.len() {
            let current = queue[head].clone();
            head += 1;
            let mask = IdSet::from_ids(self.order(), &current);
            let mut gens = greedy_generators_of(self, &current);
            for g in 0..self.order() as u32 {
                if mask.contains(g) {
                    continue;
                }
                gens.push(g);
                let bigger = close_subset(self, &gens, &mut budget)?;
                gens.pop();
                if m % bigger.len() == 0 && !seen.contains(&bigger) {
                    seen.insert(bigger.clone());
                    queue.push(bigger);
                }
            }
        }
        let mut out: Vec<Vec<u32>> = seen.into_iter().collect();
        out.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(out)
    }

    /// Exhaustive, duplicate-free list of the subgroups of index `n`.
    /// Returns the empty list when `n` does not divide the order.
    pub fn subgroups_of_index(&self, n: usize, limits: &Limits) -> Result<Vec<Subgroup>> {
        if n == 0 || self.order() % n != 0 {
            return Ok(Vec::new());
        }
        let m = self.order() / n;
        let all = self.subgroups_with_order_dividing(m, limits)?;
        all.into_iter()
            .filter(|s| s.len() == m)
            .map(|s| Subgroup::new(self, s))
            .collect()
    }

    /// Number of subgroups of index `n`.
    pub fn subgroup_count_of_index(&self, n: usize, limits: &Limits) -> Result<usize> {
        Ok(self.subgroups_of_index(n, limits)?.len())
    }

    /// Intersection of all subgroups of the same index as `h`. The result is
    /// invariant under every automorphism of the group.
    pub fn characteristic_core(&self, h: &Subgroup, limits: &Limits) -> Result<Subgroup> {
        h.assert_parent(self);
        let n = self.order() / h.order();
        let peers = self.subgroups_of_index(n, limits)?;
        let mut members: Vec<u32> = h.members().to_vec();
        for peer in &peers {
            members.retain(|&m| peer.contains(m));
        }
        Subgroup::new(self, members)
    }

    /// All normal subgroups, enumerated by closing unions of conjugacy
    /// classes. Any normal subgroup is generated by the classes it contains,
    /// so this is exhaustive.
    pub fn normal_subgroups(&self, limits: &Limits) -> Result<Vec<Subgroup>> {
        let mut budget = limits.subgroup_budget;
        let classes = &self.conjugacy_classes().classes;
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        seen.insert(vec![0]);
        let mut queue = vec![vec![0u32]];
        let mut head = 0;
        while head < queue.len() {
            let current = queue[head].clone();
            head += 1;
            let mask = IdSet::from_ids(self.order(), &current);
            for class in classes {
                if class.iter().all(|&c| mask.contains(c)) {
                    continue;
                }
                let mut seed = greedy_generators_of(self, &current);
                seed.extend_from_slice(class);
                let bigger = close_subset(self, &seed, &mut budget)?;
                if !seen.contains(&bigger) {
                    seen.insert(bigger.clone());
                    queue.push(bigger);
                }
            }
        }
        let mut lists: Vec<Vec<u32>> = seen.into_iter().collect();
        lists.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let subs: Vec<Subgroup> = lists
            .into_iter()
            .map(|s| Subgroup::new(self, s))
            .collect::<Result<_>>()?;
        debug_assert!(subs.iter().all(Subgroup::is_normal));
        Ok(subs)
    }

    /// Commutator subgroup of the subgroup spanned by `members`, computed as
    /// the normal closure (inside that subgroup) of the commutators of a
    /// short generating list.
    pub fn commutator_subgroup(&self, members: &[u32], budget: &mut usize) -> Result<Vec<u32>> {
        let gens = greedy_generators_of(self, members);
        let mut seed = Vec::new();
        for &a in &gens {
            for &b in &gens {
                let c = self.commutator(a, b);
                if c != 0 {
                    seed.push(c);
                }
            }
        }
        if seed.is_empty() {
            return Ok(vec![0]);
        }
        normal_closure(self, &gens, &seed, budget)
    }

    /// Derived chain of a subgroup, as raw id lists, ending at the trivial
    /// subgroup or at the first repeat.
    pub fn derived_chain(&self, members: &[u32], budget: &mut usize) -> Result<DerivedChain> {
        let mut terms: Vec<Vec<u32>> = vec![members.to_vec()];
        loop {
            let last = terms.last().unwrap();
            if last.len() == 1 {
                return Ok(DerivedChain {
                    soluble: true,
                    terms,
                });
            }
            let next = self.commutator_subgroup(last, budget)?;
            if &next == last {
                return Ok(DerivedChain {
                    soluble: false,
                    terms,
                });
            }
            terms.push(next);
        }
    }

    pub fn derived_series(&self, limits: &Limits) -> Result<DerivedSeries> {
        let mut budget = limits.subgroup_budget;
        let whole: Vec<u32> = (0..self.order() as u32).collect();
        let chain = self.derived_chain(&whole, &mut budget)?;
        let terms: Vec<Subgroup> = chain
            .terms
            .iter()
            .map(|t| Subgroup::new(self, t.clone()))
            .collect::<Result<_>>()?;
        let soluble = chain.soluble;
        let derived_length = soluble.then(|| terms.len() - 1);
        Ok(DerivedSeries {
            terms,
            soluble,
            derived_length,
        })
    }

    pub fn is_soluble(&self, limits: &Limits) -> Result<bool> {
        Ok(self.derived_series(limits)?.soluble)
    }

    /// Smallest number of generators of the subgroup spanned by `members`.
    ///
    /// Cyclic and abelian subgroups are resolved by order counting; the
    /// general case falls back to budgeted subset search.
    pub fn min_generators(&self, sub: &Subgroup, limits: &Limits) -> Result<usize> {
        sub.assert_parent(self);
        let members = sub.members();
        let h = members.len();
        if h == 1 {
            return Ok(0);
        }
        if members.iter().any(|&m| self.element_order(m) as usize == h) {
            return Ok(1);
        }
        let abelian = members
            .iter()
            .all(|&a| members.iter().all(|&b| self.mul(a, b) == self.mul(b, a)));
        if abelian {
            return Ok(abelian_min_generators(self, members));
        }
        subset_search_min_generators(self, members, limits)
    }

    /// Prüfer rank at finite scale: the maximum of `min_generators` over the
    /// whole subgroup lattice.
    pub fn rank(&self, limits: &Limits) -> Result<usize> {
        if self.order() > limits.rank_order_cap {
            return Err(Error::BudgetExceeded);
        }
        let mut best = 0;
        for members in self.all_subgroups(limits)? {
            let sub = Subgroup::new(self, members)?;
            best = best.max(self.min_generators(&sub, limits)?);
        }
        Ok(best)
    }
}

/// For an abelian subgroup the generator count is the largest p-torsion
/// dimension: d = max over p of log_p #{x : x^p = e}.
fn abelian_min_generators(parent: &FiniteGroup, members: &[u32]) -> usize {
    let h = members.len() as u64;
    let mut d = 0usize;
    let mut rest = h;
    let mut p = 2u64;
    while rest > 1 {
        if rest % p == 0 {
            while rest % p == 0 {
                rest /= p;
            }
            let torsion = members
                .iter()
                .filter(|&&m| {
                    let mut x = m;
                    for _ in 1..p {
                        x = parent.mul(x, m);
                    }
                    x == 0
                })
                .count() as u64;
            let mut dim = 0usize;
            let mut t = torsion;
            while t > 1 {
                assert_eq!(t % p, 0, "p-torsion count must be a power of p");
                t /= p;
                dim += 1;
            }
            d = d.max(dim);
        }
        p += 1;
    }
    d
}

/// Advances `combo` to the next k-combination of `0..n`; false when done.
fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    for i in (0..k).rev() {
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn subset_search_min_generators(
    parent: &FiniteGroup,
    members: &[u32],
    limits: &Limits,
) -> Result<usize> {
    let mut budget = limits.subgroup_budget;
    let pool: Vec<u32> = members.iter().copied().filter(|&m| m != 0).collect();
    let target = members.len();
    // k = 1 is ruled out by the cyclic check in the caller
    for k in 2..=pool.len().min(16) {
        let mut combo: Vec<usize> = (0..k).collect();
        loop {
            let seed: Vec<u32> = combo.iter().map(|&i| pool[i]).collect();
            if close_subset(parent, &seed, &mut budget)?.len() == target {
                return Ok(k);
            }
            if !next_combination(&mut combo, pool.len()) {
                break;
            }
        }
    }
    Err(Error::BudgetExceeded)
}

#[derive(Debug)]
pub struct DerivedChain {
    pub soluble: bool,
    pub terms: Vec<Vec<u32>>,
}

/// Derived series `G ⊇ [G,G] ⊇ …` ending at the trivial subgroup (soluble)
/// or at the first stabilized term.
#[derive(Debug)]
pub struct DerivedSeries {
    pub terms: Vec<Subgroup>,
    pub soluble: bool,
    pub derived_length: Option<usize>,
}
