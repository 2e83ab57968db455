//! Quotient groups realized on the left-translation action on cosets.

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupRef};
use crate::morphism::GroupMorphism;
use crate::perm::Perm;
use crate::subgroup::Subgroup;

pub struct QuotientGroup {
    pub parent: GroupRef,
    pub kernel: Subgroup,
    /// Least id in each coset, indexed by coset.
    pub cosets: Vec<u32>,
    /// parent id → coset index
    pub projection: Vec<u32>,
    /// The quotient as a permutation group on the coset indices.
    pub group: GroupRef,
    /// coset index → element id inside `group`
    coset_to_elem: Vec<u32>,
}

impl QuotientGroup {
    pub fn new(parent: &GroupRef, kernel: &Subgroup) -> Result<QuotientGroup> {
        kernel.assert_parent(parent);
        if !kernel.is_normal() {
            return Err(Error::NotNormal);
        }
        let n = parent.order();
        let mut projection = vec![u32::MAX; n];
        let mut cosets = Vec::new();
        for g in 0..n as u32 {
            if projection[g as usize] != u32::MAX {
                continue;
            }
            let idx = cosets.len() as u32;
            cosets.push(g);
            for &k in kernel.members() {
                projection[parent.mul(g, k) as usize] = idx;
            }
        }
        let q = cosets.len();
        assert_eq!(q * kernel.order(), n);

        // left translation by a coset rep permutes the coset indices
        let coset_perm = |rep: u32| -> Perm {
            Perm::new(
                (0..q)
                    .map(|c| projection[parent.mul(rep, cosets[c]) as usize])
                    .collect(),
            )
            .expect("translation action is a permutation")
        };
        let elements: Vec<Perm> = cosets.iter().map(|&r| coset_perm(r)).collect();
        let generators: Vec<Perm> = parent
            .generator_ids()
            .iter()
            .map(|&g| coset_perm(cosets[projection[g as usize] as usize]))
            .collect();
        let group = FiniteGroup::from_elements(q.max(1), elements, generators);
        assert_eq!(group.order(), q, "regular action on cosets must be faithful");

        let coset_to_elem: Vec<u32> = cosets
            .iter()
            .map(|&r| group.id_of(&coset_perm(r)).expect("coset perm is an element"))
            .collect();
        Ok(QuotientGroup {
            parent: parent.clone(),
            kernel: kernel.clone(),
            cosets,
            projection,
            group,
            coset_to_elem,
        })
    }

    /// Image of a parent element, as an element id of the quotient group.
    pub fn project(&self, parent_id: u32) -> u32 {
        self.coset_to_elem[self.projection[parent_id as usize] as usize]
    }

    /// The projection as a validated homomorphism.
    pub fn morphism(&self) -> GroupMorphism {
        let map: Vec<u32> = (0..self.parent.order() as u32)
            .map(|g| self.project(g))
            .collect();
        GroupMorphism::new(self.parent.clone(), self.group.clone(), map)
            .expect("projection is a homomorphism")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Limits;
    use crate::perm::Perm;

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

    #[test]
    fn s3_by_derived_subgroup() {
        let g = s3();
        let derived = g.derived_series(&Limits::default()).unwrap();
        let q = QuotientGroup::new(&g, &derived.terms[1]).unwrap();
        assert_eq!(q.group.order(), 2);
        let p = q.morphism();
        // projection is surjective with kernel exactly A3
        assert!(p.is_surjective());
        let a3 = &derived.terms[1];
        for g_id in 0..6u32 {
            assert_eq!(p.apply(g_id) == 0, a3.contains(g_id));
        }
    }

    #[test]
    fn quotient_by_trivial_is_isomorphic() {
        let g = s3();
        let q = QuotientGroup::new(&g, &g.trivial_subgroup()).unwrap();
        assert_eq!(q.group.order(), g.order());
    }

    #[test]
    fn quotient_by_whole_is_trivial() {
        let g = s3();
        let q = QuotientGroup::new(&g, &g.whole_subgroup()).unwrap();
        assert_eq!(q.group.order(), 1);
    }

    #[test]
    fn non_normal_subgroup_is_rejected() {
        let g = s3();
        let c2 = Subgroup::new(&g, vec![0, g.id_of(&Perm::from_cycles(3, "(0 1)").unwrap()).unwrap()])
            .unwrap();
        assert!(matches!(
            QuotientGroup::new(&g, &c2),
            Err(Error::NotNormal)
        ));
    }

    #[test]
    fn order_product_identity() {
        let g = s3();
        for sub in g.normal_subgroups(&Limits::default()).unwrap() {
            let q = QuotientGroup::new(&g, &sub).unwrap();
            assert_eq!(q.group.order() * sub.order(), g.order());
        }
    }
}
