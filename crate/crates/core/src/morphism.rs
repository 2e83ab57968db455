//! Homomorphisms and automorphisms built from generator images, with
//! exhaustive validation, restriction, quotient induction, and inner twists.

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupRef};
use crate::quotient::QuotientGroup;
use crate::subgroup::{Embedded, Subgroup};

/// A validated homomorphism between two enumerated groups, stored as a dense
/// id map.
#[derive(Clone)]
pub struct GroupMorphism {
    pub source: GroupRef,
    pub target: GroupRef,
    map: Vec<u32>,
}

impl GroupMorphism {
    /// Validates `map(xy) = map(x)map(y)` over every pair.
    pub fn new(source: GroupRef, target: GroupRef, map: Vec<u32>) -> Result<GroupMorphism> {
        if map.len() != source.order() || map[0] != 0 {
            return Err(Error::NotAHomomorphism);
        }
        let n = source.order() as u32;
        for x in 0..n {
            for y in 0..n {
                if map[source.mul(x, y) as usize] != target.mul(map[x as usize], map[y as usize]) {
                    return Err(Error::NotAHomomorphism);
                }
            }
        }
        Ok(GroupMorphism { source, target, map })
    }

    pub fn apply(&self, id: u32) -> u32 {
        self.map[id as usize]
    }

    pub fn map(&self) -> &[u32] {
        &self.map
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target.order()];
        for &v in &self.map {
            seen[v as usize] = true;
        }
        seen.into_iter().all(|b| b)
    }
}

/// An automorphism of a fixed group: a bijective id map with its inverse.
#[derive(Clone)]
pub struct Automorphism {
    pub group: GroupRef,
    map: Vec<u32>,
    inv: Vec<u32>,
}

impl PartialEq for Automorphism {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map
    }
}
impl Eq for Automorphism {}

impl Automorphism {
    /// Full construction path: exhaustive homomorphism check plus
    /// bijectivity.
    pub fn new(group: GroupRef, map: Vec<u32>) -> Result<Automorphism> {
        let morphism = GroupMorphism::new(group.clone(), group.clone(), map)?;
        Self::from_validated(group, morphism.map)
    }

    /// Caller has already proven the homomorphism property (for instance via
    /// the edge check over all `(x, generator)` products).
    fn from_validated(group: GroupRef, map: Vec<u32>) -> Result<Automorphism> {
        let n = group.order();
        let mut inv = vec![u32::MAX; n];
        for (x, &y) in map.iter().enumerate() {
            if inv[y as usize] != u32::MAX {
                return Err(Error::NotBijective);
            }
            inv[y as usize] = x as u32;
        }
        Ok(Automorphism { group, map, inv })
    }

    pub fn identity(group: GroupRef) -> Automorphism {
        let n = group.order() as u32;
        Automorphism {
            group,
            map: (0..n).collect(),
            inv: (0..n).collect(),
        }
    }

    /// Extends generator images multiplicatively over the whole group, then
    /// validates exhaustively.
    pub fn from_images(group: &GroupRef, images: &[u32]) -> Result<Automorphism> {
        let map = extend_images(group, group.generator_ids(), images)?
            .ok_or(Error::NotAHomomorphism)?;
        Automorphism::new(group.clone(), map)
    }

    /// Inner automorphism `z ↦ x z x⁻¹`.
    pub fn inner(group: &GroupRef, x: u32) -> Automorphism {
        let map: Vec<u32> = (0..group.order() as u32).map(|z| group.conj(z, x)).collect();
        Automorphism::from_validated(group.clone(), map).expect("conjugation is bijective")
    }

    /// `τ_x ∘ self`, i.e. `z ↦ x · self(z) · x⁻¹`.
    pub fn compose_with_inner(&self, x: u32) -> Automorphism {
        let g = &self.group;
        let map: Vec<u32> = self.map.iter().map(|&v| g.conj(v, x)).collect();
        Automorphism::from_validated(g.clone(), map).expect("inner twist stays bijective")
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        assert_eq!(self.group.order(), other.group.order());
        let map: Vec<u32> = other.map.iter().map(|&v| self.map[v as usize]).collect();
        Automorphism::from_validated(self.group.clone(), map).expect("composition stays bijective")
    }

    pub fn apply(&self, id: u32) -> u32 {
        self.map[id as usize]
    }

    pub fn apply_inv(&self, id: u32) -> u32 {
        self.inv[id as usize]
    }

    pub fn map(&self) -> &[u32] {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &v)| i as u32 == v)
    }

    /// Order under composition: the lcm of the cycle lengths of the id map.
    pub fn order(&self) -> u64 {
        let n = self.map.len();
        let mut seen = vec![false; n];
        let mut order = 1u64;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.map[p] as usize;
                len += 1;
            }
            order = num_integer::lcm(order, len);
        }
        order
    }

    /// Does the automorphism fix the subgroup setwise?
    pub fn preserves(&self, sub: &Subgroup) -> bool {
        sub.members().iter().all(|&m| sub.contains(self.map[m as usize]))
    }

    /// Restriction to an invariant subgroup, realized as an automorphism of
    /// the subgroup-as-group.
    pub fn restrict(&self, sub: &Subgroup) -> Result<(Embedded, Automorphism)> {
        sub.assert_parent(&self.group);
        if !self.preserves(sub) {
            return Err(Error::NotInvariant);
        }
        let emb = sub.as_group(&self.group);
        let map: Vec<u32> = (0..emb.group.order() as u32)
            .map(|sid| {
                emb.sub_id(self.apply(emb.parent_id(sid)))
                    .expect("image stays in the invariant subgroup")
            })
            .collect();
        let auto = Automorphism::from_validated(emb.group.clone(), map)?;
        Ok((emb, auto))
    }

    /// Induced automorphism `gN ↦ φ(g)N` on a quotient by an invariant
    /// normal subgroup; well-definedness is checked on every element.
    pub fn induce_on_quotient(&self, quotient: &QuotientGroup) -> Result<Automorphism> {
        assert_eq!(quotient.parent.order(), self.group.order());
        if !self.preserves(&quotient.kernel) {
            return Err(Error::NotInvariant);
        }
        let mut map = vec![u32::MAX; quotient.group.order()];
        for &rep in &quotient.cosets {
            map[quotient.project(rep) as usize] = quotient.project(self.apply(rep));
        }
        for g in 0..self.group.order() as u32 {
            if map[quotient.project(g) as usize] != quotient.project(self.apply(g)) {
                return Err(Error::Internal(
                    "induced quotient map is not well defined".into(),
                ));
            }
        }
        Automorphism::from_validated(quotient.group.clone(), map)
    }

    /// Fixed subgroup `C(φ) = {g : φ(g) = g}`.
    pub fn fixed_subgroup(&self) -> Subgroup {
        let fixed: Vec<u32> = (0..self.group.order() as u32)
            .filter(|&g| self.map[g as usize] == g)
            .collect();
        Subgroup::new(&self.group, fixed).expect("fixed points form a subgroup")
    }
}

impl std::fmt::Debug for Automorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Automorphism{:?}", self.map)
    }
}

/// Extends generator images to the whole group by breadth-first products,
/// checking `φ(x·s) = φ(x)·φ(s)` on every edge. Passing the check on all
/// `(element, generator)` pairs already implies the homomorphism property.
/// Returns `Ok(None)` when an edge check fails.
fn extend_images(
    group: &FiniteGroup,
    gen_ids: &[u32],
    images: &[u32],
) -> Result<Option<Vec<u32>>> {
    if images.len() != gen_ids.len() {
        return Err(Error::Parse(format!(
            "expected {} generator images, got {}",
            gen_ids.len(),
            images.len()
        )));
    }
    for &im in images {
        if im as usize >= group.order() {
            return Err(Error::Parse(format!("image id {im} out of range")));
        }
    }
    match extend_partial(group, gen_ids, images) {
        Some(map) => {
            if map.iter().any(|&v| v == u32::MAX) {
                return Err(Error::Internal("generators do not span the group".into()));
            }
            Ok(Some(map))
        }
        None => Ok(None),
    }
}

/// Same breadth-first extension, but only over the subgroup the given
/// generators span; unreachable ids stay `u32::MAX`. `None` on an edge
/// conflict.
fn extend_partial(group: &FiniteGroup, gen_ids: &[u32], images: &[u32]) -> Option<Vec<u32>> {
    let n = group.order();
    let mut map = vec![u32::MAX; n];
    map[0] = 0;
    let mut queue = vec![0u32];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (i, &s) in gen_ids.iter().enumerate() {
            let y = group.mul(x, s);
            let image = group.mul(map[x as usize], images[i]);
            let slot = &mut map[y as usize];
            if *slot == u32::MAX {
                *slot = image;
                queue.push(y);
            } else if *slot != image {
                return None;
            }
        }
    }
    Some(map)
}

/// Is the partial map injective on the ids it covers? Used to prune the
/// automorphism search.
fn partial_injective(map: &[u32]) -> bool {
    let mut hit = vec![false; map.len()];
    for &v in map {
        if v != u32::MAX {
            if hit[v as usize] {
                return false;
            }
            hit[v as usize] = true;
        }
    }
    true
}

/// Every automorphism of the group, found by depth-first search over
/// order-preserving generator images with incremental consistency pruning.
/// The result is sorted by id map, so the enumeration is deterministic.
pub fn all_automorphisms(group: &GroupRef) -> Vec<Automorphism> {
    let gen_ids: Vec<u32> = minimal_generator_chain(group);
    if gen_ids.is_empty() {
        return vec![Automorphism::identity(group.clone())];
    }
    let orders = group.element_orders();
    let candidates: Vec<Vec<u32>> = gen_ids
        .iter()
        .map(|&g| {
            (0..group.order() as u32)
                .filter(|&x| orders[x as usize] == orders[g as usize])
                .collect()
        })
        .collect();
    let mut found = Vec::new();
    let mut images = Vec::new();
    search(group, &gen_ids, &candidates, &mut images, &mut found);
    found.sort_unstable_by(|a: &Automorphism, b: &Automorphism| a.map.cmp(&b.map));
    found
}

fn search(
    group: &GroupRef,
    gen_ids: &[u32],
    candidates: &[Vec<u32>],
    images: &mut Vec<u32>,
    found: &mut Vec<Automorphism>,
) {
    let level = images.len();
    for &cand in &candidates[level] {
        images.push(cand);
        if let Some(map) = extend_partial(group, &gen_ids[..=level], images) {
            if partial_injective(&map) {
                if level + 1 == gen_ids.len() {
                    if map.iter().all(|&v| v != u32::MAX) {
                        if let Ok(auto) = Automorphism::from_validated(group.clone(), map) {
                            found.push(auto);
                        }
                    }
                } else {
                    search(group, gen_ids, candidates, images, found);
                }
            }
        }
        images.pop();
    }
}

/// A duplicate-free generating chain taken from the stored generators:
/// generators that do not enlarge the span are dropped.
fn minimal_generator_chain(group: &FiniteGroup) -> Vec<u32> {
    let mut kept: Vec<u32> = Vec::new();
    let mut budget = usize::MAX;
    let mut span = 1usize;
    for &g in group.generator_ids() {
        if g == 0 {
            continue;
        }
        let mut attempt = kept.clone();
        attempt.push(g);
        let closure = crate::subgroup::close_subset(group, &attempt, &mut budget)
            .expect("unbudgeted closure");
        if closure.len() > span {
            span = closure.len();
            kept = attempt;
        }
        if span == group.order() {
            break;
        }
    }
    assert_eq!(span, group.order(), "stored generators must span the group");
    kept
}

/// All distinct inner automorphisms, one per center coset, sorted by id map.
pub fn inner_automorphisms(group: &GroupRef) -> Vec<Automorphism> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for x in 0..group.order() as u32 {
        let tau = Automorphism::inner(group, x);
        if seen.insert(tau.map.clone()) {
            out.push(tau);
        }
    }
    out.sort_unstable_by(|a, b| a.map.cmp(&b.map));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Limits;
    use crate::perm::Perm;

    fn make(degree: usize, gens: &[&str]) -> GroupRef {
        FiniteGroup::generate(
            degree,
            gens.iter()
                .map(|c| Perm::from_cycles(degree, c).unwrap())
                .collect(),
            &Limits::default(),
        )
        .unwrap()
    }

    fn s3() -> GroupRef {
        make(3, &["(0 1)", "(0 1 2)"])
    }

    fn c5() -> GroupRef {
        make(5, &["(0 1 2 3 4)"])
    }

    #[test]
    fn identity_from_images() {
        let g = s3();
        let ids: Vec<u32> = g.generator_ids().to_vec();
        let phi = Automorphism::from_images(&g, &ids).unwrap();
        assert!(phi.is_identity());
        assert_eq!(phi.order(), 1);
    }

    #[test]
    fn squaring_on_c5_has_order_four() {
        let g = c5();
        let gen = g.generator_ids()[0];
        let phi = Automorphism::from_images(&g, &[g.mul(gen, gen)]).unwrap();
        assert_eq!(phi.order(), 4);
        assert!(phi.fixed_subgroup().is_trivial());
    }

    #[test]
    fn constant_map_is_rejected_as_not_bijective() {
        let g = s3();
        let err = Automorphism::from_images(&g, &[0, 0]).unwrap_err();
        assert!(matches!(err, Error::NotBijective));
    }

    #[test]
    fn non_homomorphism_is_rejected() {
        // sending an involution of S3 to a 3-cycle violates t² = e
        let g = s3();
        let c = g.id_of(&Perm::from_cycles(3, "(0 1 2)").unwrap()).unwrap();
        let err = Automorphism::from_images(&g, &[c, c]).unwrap_err();
        assert!(matches!(err, Error::NotAHomomorphism));

        // a non-bijective but valid homomorphism: C4 generator to an involution
        let c4 = make(4, &["(0 1 2 3)"]);
        let two = (0..4u32).find(|&x| c4.element_order(x) == 2).unwrap();
        let err = Automorphism::from_images(&c4, &[two]).unwrap_err();
        assert!(matches!(err, Error::NotBijective));
    }

    #[test]
    fn inner_of_identity_is_identity() {
        let g = s3();
        assert!(Automorphism::inner(&g, 0).is_identity());
    }

    #[test]
    fn inner_of_inverse_cancels() {
        for g in [s3(), c5(), make(4, &["(0 1)", "(0 1 2 3)"])] {
            for x in 0..g.order() as u32 {
                let tau = Automorphism::inner(&g, x);
                let tau_inv = Automorphism::inner(&g, g.inv(x));
                assert!(tau.compose(&tau_inv).is_identity());
            }
        }
    }

    #[test]
    fn inner_by_transposition_fixes_exactly_the_centralizer() {
        let g = s3();
        let t = g.id_of(&Perm::from_cycles(3, "(0 1)").unwrap()).unwrap();
        let tau = Automorphism::inner(&g, t);
        assert_eq!(tau.order(), 2);
        assert_eq!(tau.fixed_subgroup().members(), g.centralizer(t).as_slice());
    }

    #[test]
    fn fixed_subgroup_of_inner_is_centralizer_everywhere() {
        for g in [s3(), make(4, &["(0 1)", "(0 1 2 3)"])] {
            for x in 0..g.order() as u32 {
                let tau = Automorphism::inner(&g, x);
                assert_eq!(tau.fixed_subgroup().members(), g.centralizer(x).as_slice());
            }
        }
    }

    #[test]
    fn restriction_examples() {
        let g = s3();
        let derived = g.derived_series(&Limits::default()).unwrap();
        let a3 = &derived.terms[1];

        let id = Automorphism::identity(g.clone());
        let (_, restricted) = id.restrict(a3).unwrap();
        assert!(restricted.is_identity());

        let t = g.id_of(&Perm::from_cycles(3, "(0 1)").unwrap()).unwrap();
        let tau = Automorphism::inner(&g, t);
        let (emb, restricted) = tau.restrict(a3).unwrap();
        assert_eq!(emb.group.order(), 3);
        assert_eq!(restricted.order(), 2);

        // a subgroup moved by the automorphism is rejected
        let moved = g.id_of(&Perm::from_cycles(3, "(1 2)").unwrap()).unwrap();
        let c2 = Subgroup::new(&g, vec![0, moved]).unwrap();
        assert!(matches!(tau.restrict(&c2), Err(Error::NotInvariant)));
    }

    #[test]
    fn induction_examples() {
        let g = make(6, &["(0 1 2 3 4 5)"]);
        let gen = g.generator_ids()[0];
        let inversion = Automorphism::from_images(&g, &[g.inv(gen)]).unwrap();

        // quotient by the whole group
        let q = QuotientGroup::new(&g, &g.whole_subgroup()).unwrap();
        assert!(inversion.induce_on_quotient(&q).unwrap().is_identity());

        // quotient by the trivial subgroup is a relabeling
        let q = QuotientGroup::new(&g, &g.trivial_subgroup()).unwrap();
        let induced = inversion.induce_on_quotient(&q).unwrap();
        assert_eq!(induced.order(), inversion.order());

        // C6 / C3 kills inversion
        let c3: Vec<u32> = (0..6u32).filter(|&x| g.element_order(x) % 2 == 1).collect();
        let c3 = Subgroup::new(&g, c3).unwrap();
        let q = QuotientGroup::new(&g, &c3).unwrap();
        assert_eq!(q.group.order(), 2);
        assert!(inversion.induce_on_quotient(&q).unwrap().is_identity());
    }

    #[test]
    fn projection_commutes_with_induction() {
        let g = s3();
        let derived = g.derived_series(&Limits::default()).unwrap();
        let q = QuotientGroup::new(&g, &derived.terms[1]).unwrap();
        for x in 0..g.order() as u32 {
            let tau = Automorphism::inner(&g, x);
            let induced = tau.induce_on_quotient(&q).unwrap();
            for e in 0..g.order() as u32 {
                assert_eq!(q.project(tau.apply(e)), induced.apply(q.project(e)));
            }
        }
    }

    #[test]
    fn inner_twists_compose_by_product() {
        let g = s3();
        let phi = Automorphism::inner(&g, 3);
        for x in 0..6u32 {
            for y in 0..6u32 {
                let twice = phi.compose_with_inner(x).compose_with_inner(y);
                let once = phi.compose_with_inner(g.mul(y, x));
                assert_eq!(twice, once);
            }
        }
    }

    #[test]
    fn automorphism_counts_of_known_groups() {
        assert_eq!(all_automorphisms(&s3()).len(), 6);
        assert_eq!(all_automorphisms(&c5()).len(), 4);
        let klein = make(4, &["(0 1)", "(2 3)"]);
        assert_eq!(all_automorphisms(&klein).len(), 6);
        let c2cubed = make(6, &["(0 1)", "(2 3)", "(4 5)"]);
        assert_eq!(all_automorphisms(&c2cubed).len(), 168);
    }

    #[test]
    fn automorphism_orders_divide_group_of_automorphisms() {
        let g = s3();
        let all = all_automorphisms(&g);
        for phi in &all {
            assert_eq!((all.len() as u64) % phi.order(), 0);
        }
    }

    #[test]
    fn inner_automorphism_count_is_index_of_center() {
        for g in [s3(), c5(), make(8, &["(0 1 2 3)(4 5 6 7)", "(0 4 2 6)(1 7 3 5)"])] {
            let inners = inner_automorphisms(&g);
            assert_eq!(inners.len(), g.order() / g.center().len());
        }
    }
}
