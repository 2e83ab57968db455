//! Finite groups given by permutation generators, with full element
//! enumeration and canonical ids.
//!
//! Elements are sorted lexicographically by image array, so ids are
//! deterministic and the identity always has id 0.

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::util::fnv1a64;
use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

/// Groups at or below this order get a dense multiplication table.
const MUL_TABLE_MAX: usize = 1024;

pub type GroupRef = Arc<FiniteGroup>;

pub struct FiniteGroup {
    degree: usize,
    generators: Vec<Perm>,
    gen_ids: Vec<u32>,
    elements: Vec<Perm>,
    index: HashMap<Perm, u32>,
    inverse: Vec<u32>,
    mul_table: OnceLock<Option<Vec<u32>>>,
    classes: OnceLock<ConjClasses>,
    center: OnceLock<Vec<u32>>,
    orders: OnceLock<Vec<u32>>,
}

/// Conjugacy classes in canonical order: sorted members, classes sorted by
/// least member, so the identity class is always class 0.
#[derive(Clone, Debug)]
pub struct ConjClasses {
    pub classes: Vec<Vec<u32>>,
    pub class_of: Vec<u32>,
}

impl FiniteGroup {
    /// Closes the generators under products into a full group.
    pub fn generate(degree: usize, generators: Vec<Perm>, limits: &Limits) -> Result<GroupRef> {
        if degree == 0 {
            return Err(Error::Parse("degree must be at least 1".into()));
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch);
            }
        }
        let identity = Perm::identity(degree);
        let mut seen: HashMap<Perm, ()> = HashMap::new();
        seen.insert(identity.clone(), ());
        let mut queue = vec![identity];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head].clone();
            head += 1;
            for s in &generators {
                let y = x.mul(s);
                if !seen.contains_key(&y) {
                    if seen.len() >= limits.group_cap {
                        return Err(Error::ClosureCapExceeded {
                            cap: limits.group_cap,
                        });
                    }
                    seen.insert(y.clone(), ());
                    queue.push(y);
                }
            }
        }
        queue.sort();
        Ok(Self::finish(degree, generators, queue))
    }

    /// Builds a group from a known element list (quotients, subgroups).
    /// The caller guarantees closure; this re-sorts, indexes, and checks it.
    pub(crate) fn from_elements(
        degree: usize,
        mut elements: Vec<Perm>,
        generators: Vec<Perm>,
    ) -> GroupRef {
        elements.sort();
        elements.dedup();
        let g = Self::finish(degree, generators, elements);
        debug_assert!(g.closed_under_product());
        g
    }

    fn finish(degree: usize, generators: Vec<Perm>, elements: Vec<Perm>) -> GroupRef {
        let n = elements.len();
        let index: HashMap<Perm, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        assert_eq!(index.len(), n);
        assert!(elements[0].is_identity(), "identity must sort first");
        let inverse: Vec<u32> = elements.iter().map(|p| index[&p.inverse()]).collect();
        let gen_ids: Vec<u32> = generators.iter().map(|p| index[p]).collect();
        Arc::new(FiniteGroup {
            degree,
            generators,
            gen_ids,
            elements,
            index,
            inverse,
            mul_table: OnceLock::new(),
            classes: OnceLock::new(),
            center: OnceLock::new(),
            orders: OnceLock::new(),
        })
    }

    fn closed_under_product(&self) -> bool {
        let n = self.order();
        (0..n as u32).all(|a| {
            (0..n as u32).all(|b| {
                self.index
                    .contains_key(&self.elements[a as usize].mul(&self.elements[b as usize]))
            })
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> u32 {
        0
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn generator_ids(&self) -> &[u32] {
        &self.gen_ids
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn perm(&self, id: u32) -> &Perm {
        &self.elements[id as usize]
    }

    pub fn id_of(&self, p: &Perm) -> Option<u32> {
        self.index.get(p).copied()
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let table = self.mul_table.get_or_init(|| {
            let n = self.order();
            (n <= MUL_TABLE_MAX).then(|| {
                let mut t = vec![0u32; n * n];
                for (i, x) in self.elements.iter().enumerate() {
                    for (j, y) in self.elements.iter().enumerate() {
                        t[i * n + j] = self.index[&x.mul(y)];
                    }
                }
                t
            })
        });
        match table {
            Some(t) => t[a as usize * self.order() + b as usize],
            None => self.index[&self.elements[a as usize].mul(&self.elements[b as usize])],
        }
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    /// `x g x⁻¹`
    pub fn conj(&self, g: u32, x: u32) -> u32 {
        self.mul(self.mul(x, g), self.inv(x))
    }

    /// `a b a⁻¹ b⁻¹`
    pub fn commutator(&self, a: u32, b: u32) -> u32 {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn element_order(&self, a: u32) -> u32 {
        self.element_orders()[a as usize]
    }

    pub fn element_orders(&self) -> &[u32] {
        self.orders.get_or_init(|| {
            (0..self.order() as u32)
                .map(|a| {
                    let mut k = 1;
                    let mut x = a;
                    while x != 0 {
                        x = self.mul(x, a);
                        k += 1;
                    }
                    k
                })
                .collect()
        })
    }

    pub fn exponent(&self) -> u64 {
        self.element_orders()
            .iter()
            .fold(1u64, |acc, &o| num_integer::lcm(acc, o as u64))
    }

    pub fn is_abelian(&self) -> bool {
        self.gen_ids
            .iter()
            .all(|&a| self.gen_ids.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Orbits of `g ↦ x g x⁻¹`; conjugating by generators spans the action.
    pub fn conjugacy_classes(&self) -> &ConjClasses {
        self.classes.get_or_init(|| {
            let n = self.order();
            let mut class_of = vec![u32::MAX; n];
            let mut classes = Vec::new();
            for start in 0..n as u32 {
                if class_of[start as usize] != u32::MAX {
                    continue;
                }
                let idx = classes.len() as u32;
                let mut members = vec![start];
                class_of[start as usize] = idx;
                let mut head = 0;
                while head < members.len() {
                    let g = members[head];
                    head += 1;
                    for &s in &self.gen_ids {
                        let h = self.conj(g, s);
                        if class_of[h as usize] == u32::MAX {
                            class_of[h as usize] = idx;
                            members.push(h);
                        }
                    }
                }
                members.sort_unstable();
                classes.push(members);
            }
            ConjClasses { classes, class_of }
        })
    }

    pub fn class_count(&self) -> usize {
        self.conjugacy_classes().classes.len()
    }

    pub fn centralizer(&self, x: u32) -> Vec<u32> {
        (0..self.order() as u32)
            .filter(|&g| self.mul(g, x) == self.mul(x, g))
            .collect()
    }

    pub fn center(&self) -> &[u32] {
        self.center.get_or_init(|| {
            (0..self.order() as u32)
                .filter(|&z| self.gen_ids.iter().all(|&s| self.mul(z, s) == self.mul(s, z)))
                .collect()
        })
    }

    /// Stable fingerprint of the element table, used to seed deterministic
    /// sampling.
    pub fn canonical_hash(&self) -> u64 {
        fnv1a64(
            std::iter::once(self.degree as u64).chain(
                self.elements
                    .iter()
                    .flat_map(|p| p.images().iter().map(|&v| v as u64)),
            ),
        )
    }
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "FiniteGroup(degree {}, order {}, gens {:?})",
            self.degree, self.elements.len(), self.generators
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> GroupRef {
        FiniteGroup::generate(
            3,
            vec![
                Perm::from_cycles(3, "(0 1)").unwrap(),
                Perm::from_cycles(3, "(0 1 2)").unwrap(),
            ],
            &Limits::default(),
        )
        .unwrap()
    }

    /// Independent closure oracle: multiply all pairs until stable.
    fn brute_closure(degree: usize, gens: &[Perm]) -> usize {
        let mut set: std::collections::HashSet<Perm> = gens.iter().cloned().collect();
        set.insert(Perm::identity(degree));
        loop {
            let snapshot: Vec<Perm> = set.iter().cloned().collect();
            let before = set.len();
            for a in &snapshot {
                for b in &snapshot {
                    set.insert(a.mul(b));
                }
            }
            if set.len() == before {
                return set.len();
            }
        }
    }

    #[test]
    fn s3_closure_matches_oracle() {
        let g = s3();
        assert_eq!(g.order(), 6);
        assert_eq!(brute_closure(3, g.generators()), 6);
    }

    #[test]
    fn trivial_group_on_one_point() {
        let g = FiniteGroup::generate(1, vec![], &Limits::default()).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.class_count(), 1);
    }

    #[test]
    fn cyclic_four_from_one_cycle() {
        let g = FiniteGroup::generate(
            4,
            vec![Perm::from_cycles(4, "(0 1 2 3)").unwrap()],
            &Limits::default(),
        )
        .unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(brute_closure(4, g.generators()), 4);
        assert!(g.is_abelian());
    }

    #[test]
    fn closure_cap_is_enforced() {
        let limits = Limits {
            group_cap: 5,
            ..Limits::default()
        };
        let err = FiniteGroup::generate(
            3,
            vec![
                Perm::from_cycles(3, "(0 1)").unwrap(),
                Perm::from_cycles(3, "(0 1 2)").unwrap(),
            ],
            &limits,
        )
        .unwrap_err();
        assert!(matches!(err, Error::ClosureCapExceeded { cap: 5 }));
    }

    #[test]
    fn degree_mismatch_is_rejected() {
        let err = FiniteGroup::generate(
            3,
            vec![Perm::from_cycles(4, "(0 1 2 3)").unwrap()],
            &Limits::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::DegreeMismatch));
    }

    #[test]
    fn every_inverse_is_present_and_identity_is_zero() {
        let g = s3();
        assert!(g.perm(0).is_identity());
        for a in 0..g.order() as u32 {
            assert_eq!(g.mul(a, g.inv(a)), 0);
        }
    }

    /// Brute-force orbit oracle for conjugacy classes.
    fn brute_classes(g: &FiniteGroup) -> Vec<Vec<u32>> {
        let n = g.order() as u32;
        let mut assigned = vec![false; n as usize];
        let mut out = Vec::new();
        for start in 0..n {
            if assigned[start as usize] {
                continue;
            }
            let mut cls: Vec<u32> = (0..n).map(|x| g.conj(start, x)).collect();
            cls.sort_unstable();
            cls.dedup();
            for &m in &cls {
                assigned[m as usize] = true;
            }
            out.push(cls);
        }
        out
    }

    #[test]
    fn s3_classes_match_brute_force() {
        let g = s3();
        let cc = g.conjugacy_classes();
        let mut sizes: Vec<usize> = cc.classes.iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert_eq!(cc.classes, brute_classes(&g));
        assert_eq!(cc.classes[0], vec![0]);
    }

    #[test]
    fn abelian_classes_are_singletons() {
        let g = FiniteGroup::generate(
            5,
            vec![Perm::from_cycles(5, "(0 1 2 3 4)").unwrap()],
            &Limits::default(),
        )
        .unwrap();
        assert_eq!(g.class_count(), 5);
        assert!(g.conjugacy_classes().classes.iter().all(|c| c.len() == 1));
    }

    #[test]
    fn center_of_s3_is_trivial() {
        let g = s3();
        assert_eq!(g.center(), &[0]);
        assert_eq!(g.exponent(), 6);
    }
}
