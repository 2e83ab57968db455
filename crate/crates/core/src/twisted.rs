//! Twisted conjugacy classes, Reidemeister numbers, and the finite-scale
//! verifications built on them: class shifts, the extension inequalities,
//! the doubly-exponential fixed-point bound, an independent semidirect
//! orbit count, and the shift-action witness quotient.

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupRef};
use crate::morphism::Automorphism;
use crate::perm::Perm;
use crate::quotient::QuotientGroup;
use crate::subgroup::Subgroup;
use crate::util::{IdSet, UnionFind};
use num_bigint::BigUint;
use std::collections::HashMap;

/// The partition of a group into φ-twisted conjugacy classes: orbits of
/// `x · g = x g φ(x⁻¹)`.
pub struct TwistedPartition {
    pub group: GroupRef,
    pub phi: Automorphism,
    /// Sorted classes, ordered by least member.
    pub classes: Vec<Vec<u32>>,
    pub class_of: Vec<u32>,
}

impl TwistedPartition {
    pub fn r(&self) -> usize {
        self.classes.len()
    }

    pub fn class_containing(&self, g: u32) -> &[u32] {
        &self.classes[self.class_of[g as usize] as usize]
    }
}

/// Orbits computed by union-find over the generator moves
/// `g ↦ s g φ(s⁻¹)`; the generator moves span the full action.
pub fn reidemeister_classes(group: &GroupRef, phi: &Automorphism) -> TwistedPartition {
    assert_eq!(group.order(), phi.group.order());
    let n = group.order();
    let mut uf = UnionFind::new(n);
    for &s in group.generator_ids() {
        let phi_s_inv = phi.apply(group.inv(s));
        for g in 0..n as u32 {
            let moved = group.mul(group.mul(s, g), phi_s_inv);
            uf.union(g, moved);
        }
    }
    let mut roots: Vec<u32> = (0..n as u32).map(|g| uf.find(g)).collect();
    let mut root_to_class: HashMap<u32, u32> = HashMap::new();
    let mut classes: Vec<Vec<u32>> = Vec::new();
    for g in 0..n as u32 {
        let root = roots[g as usize];
        let idx = *root_to_class.entry(root).or_insert_with(|| {
            classes.push(Vec::new());
            (classes.len() - 1) as u32
        });
        classes[idx as usize].push(g);
        roots[g as usize] = idx;
    }
    // members arrive in ascending id order, classes in least-member order
    TwistedPartition {
        group: group.clone(),
        phi: phi.clone(),
        classes,
        class_of: roots,
    }
}

pub fn reidemeister_number(group: &GroupRef, phi: &Automorphism) -> usize {
    reidemeister_classes(group, phi).r()
}

/// Checks `{g}_φ · x = {gx}_{τ_{x⁻¹}∘φ}` for every class, and that the
/// twisted class count is unchanged by inner twists.
pub fn verify_shift(group: &GroupRef, phi: &Automorphism, x: u32) -> bool {
    let base = reidemeister_classes(group, phi);
    let twisted_down = phi.compose_with_inner(group.inv(x));
    let shifted = reidemeister_classes(group, &twisted_down);
    for class in &base.classes {
        let mut moved: Vec<u32> = class.iter().map(|&g| group.mul(g, x)).collect();
        moved.sort_unstable();
        if shifted.class_containing(moved[0]) != moved.as_slice() {
            return false;
        }
    }
    let twisted_up = phi.compose_with_inner(x);
    reidemeister_number(group, &twisted_up) == base.r()
}

/// The recomputed data behind the projection surjection and the two
/// extension inequalities for a normal invariant subgroup.
#[derive(Debug)]
pub struct ExtensionReport {
    pub r_total: usize,
    pub r_quotient: usize,
    pub r_restricted: usize,
    pub fixed_quotient_size: usize,
    pub surjectivity_ok: bool,
    pub bound_a_ok: bool,
    pub intersection_b_ok: bool,
}

impl ExtensionReport {
    pub fn all_ok(&self) -> bool {
        self.surjectivity_ok && self.bound_a_ok && self.intersection_b_ok
    }
}

/// For normal φ-invariant `H`: computes R(φ), R(φ̄), R(φ′), |C(φ̄)| from
/// scratch and checks
///   R(φ̄) ≤ R(φ)  (with the projection sending classes onto classes),
///   R(φ′) ≤ R(φ)·|C(φ̄)|,
/// and, when C(φ̄) is trivial, that each class of φ′ is exactly the
/// intersection of a class of φ with H.
pub fn verify_extension(
    group: &GroupRef,
    h: &Subgroup,
    phi: &Automorphism,
) -> Result<ExtensionReport> {
    h.assert_parent(group);
    if !h.is_normal() {
        return Err(Error::NotNormal);
    }
    if !phi.preserves(h) {
        return Err(Error::NotInvariant);
    }
    let total = reidemeister_classes(group, phi);

    let quotient = QuotientGroup::new(group, h)?;
    let phi_bar = phi.induce_on_quotient(&quotient)?;
    let on_quotient = reidemeister_classes(&quotient.group, &phi_bar);
    let fixed_quotient_size = phi_bar.fixed_subgroup().order();

    let (embedding, phi_prime) = phi.restrict(h)?;
    let on_sub = reidemeister_classes(&embedding.group, &phi_prime);

    // projection is well defined on classes and hits every quotient class
    let mut hit = vec![false; on_quotient.r()];
    let mut surjectivity_ok = true;
    for class in &total.classes {
        let image_class = on_quotient.class_of[quotient.project(class[0]) as usize];
        hit[image_class as usize] = true;
        for &g in class {
            if on_quotient.class_of[quotient.project(g) as usize] != image_class {
                surjectivity_ok = false;
            }
        }
    }
    surjectivity_ok &= hit.into_iter().all(|b| b);
    surjectivity_ok &= on_quotient.r() <= total.r();

    let bound_a_ok = on_sub.r() <= total.r() * fixed_quotient_size;

    let intersection_b_ok = if fixed_quotient_size == 1 {
        on_sub.classes.iter().all(|class| {
            let parent_ids: Vec<u32> = class.iter().map(|&s| embedding.parent_id(s)).collect();
            let big_class = total.class_containing(parent_ids[0]);
            let expected: Vec<u32> = big_class.iter().copied().filter(|&g| h.contains(g)).collect();
            parent_ids == expected
        })
    } else {
        true
    };

    Ok(ExtensionReport {
        r_total: total.r(),
        r_quotient: on_quotient.r(),
        r_restricted: on_sub.r(),
        fixed_quotient_size,
        surjectivity_ok,
        bound_a_ok,
        intersection_b_ok,
    })
}

/// `α(r) = 2^(2^r)`, exact. Only sensible for small `r`; the bound check
/// short-circuits before ever needing a large value.
pub fn alpha(r: u32) -> BigUint {
    assert!(r <= 26, "alpha(r) beyond r = 26 is astronomically large");
    BigUint::from(1u8) << (1usize << r)
}

/// `|C(φ)| ≤ 2^(2^R(φ))`, compared with exact wide integers. For
/// `2^R ≥ 64` the bound exceeds 2^64 while any enumerated group is far
/// smaller, so the check returns true immediately.
pub fn jabara_check(group: &GroupRef, phi: &Automorphism) -> bool {
    let r = reidemeister_number(group, phi) as u32;
    if r >= 6 {
        return true;
    }
    let fixed = phi.fixed_subgroup().order();
    BigUint::from(fixed) <= alpha(r)
}

/// Independent cross-check of the class count: builds the semidirect
/// product `G ⋊ ⟨φ⟩` as a permutation group on the element ids (where
/// `(g, φ^k)` acts by `x ↦ g·φ^k(x)`) and counts conjugation orbits of the
/// translation copy of G on the coset `G·φ`. Runs on raw permutations, so
/// it shares no code with `reidemeister_classes`.
pub fn semidirect_coset_oracle(
    group: &GroupRef,
    phi: &Automorphism,
    limits: &Limits,
) -> Result<usize> {
    let n = group.order();
    let translations: Vec<Perm> = group
        .generator_ids()
        .iter()
        .map(|&s| {
            Perm::new((0..n as u32).map(|x| group.mul(s, x)).collect()).expect("translation")
        })
        .collect();
    let phi_perm = Perm::new(phi.map().to_vec()).expect("automorphism is a bijection");
    let mut gens = translations.clone();
    gens.push(phi_perm.clone());
    let product = FiniteGroup::generate(n, gens, limits)?;

    // pick out the coset G·φ inside the product
    let coset: Vec<Perm> = product
        .elements()
        .iter()
        .filter(|w| {
            let g = w.apply(0);
            let translation =
                Perm::new((0..n as u32).map(|x| group.mul(g, x)).collect()).expect("translation");
            translation.mul(&phi_perm) == **w
        })
        .cloned()
        .collect();
    assert_eq!(coset.len(), n);

    let index: HashMap<&Perm, u32> = coset.iter().zip(0u32..).collect();
    let mut uf = UnionFind::new(n);
    for (i, c) in coset.iter().enumerate() {
        for t in &translations {
            let conj = t.mul(c).mul(&t.inverse());
            uf.union(i as u32, index[&conj]);
        }
    }
    let mut roots: Vec<u32> = (0..n as u32).map(|i| uf.find(i)).collect();
    roots.sort_unstable();
    roots.dedup();
    Ok(roots.len())
}

/// The witness data for the shift-action construction: the family of all
/// shifted classes, the permutation action of the group on it, the kernel,
/// and the induced quotient comparison.
pub struct SigmaWitness {
    /// All distinct sets `{g}_φ · x`, each sorted, in lexicographic order.
    pub shifted_family: Vec<Vec<u32>>,
    /// Number of sets the group acts on.
    pub action_degree: usize,
    pub kernel: Subgroup,
    pub kernel_phi_invariant: bool,
    pub quotient: QuotientGroup,
    pub phi_on_quotient: Automorphism,
    pub bijection_ok: bool,
}

/// Enumerates all shifted classes, forms the translation action on the
/// family, takes its kernel K, checks K is φ-invariant, and verifies that
/// `G → G/K` maps the twisted classes of φ bijectively onto those of the
/// induced automorphism.
pub fn sigma_witness(group: &GroupRef, phi: &Automorphism) -> Result<SigmaWitness> {
    let n = group.order();
    let partition = reidemeister_classes(group, phi);

    let mut family: Vec<Vec<u32>> = Vec::new();
    let mut seen: std::collections::HashSet<Vec<u32>> = std::collections::HashSet::new();
    for class in &partition.classes {
        for x in 0..n as u32 {
            let mut shifted: Vec<u32> = class.iter().map(|&g| group.mul(g, x)).collect();
            shifted.sort_unstable();
            if seen.insert(shifted.clone()) {
                family.push(shifted);
            }
        }
    }
    family.sort_unstable();
    let masks: Vec<IdSet> = family.iter().map(|s| IdSet::from_ids(n, s)).collect();

    // kernel of the translation action: z with z·S = S for every S
    let kernel_ids: Vec<u32> = (0..n as u32)
        .filter(|&z| {
            family
                .iter()
                .zip(&masks)
                .all(|(s, mask)| s.iter().all(|&m| mask.contains(group.mul(z, m))))
        })
        .collect();
    let kernel = Subgroup::new(group, kernel_ids)?;
    if !kernel.is_normal() {
        return Err(Error::Internal("action kernel must be normal".into()));
    }
    let kernel_phi_invariant = phi.preserves(&kernel);

    let quotient = QuotientGroup::new(group, &kernel)?;
    let phi_on_quotient = phi.induce_on_quotient(&quotient)?;
    let on_quotient = reidemeister_classes(&quotient.group, &phi_on_quotient);

    // bijection: classes are unions of kernel cosets and counts agree
    let cosets_respected = partition.classes.iter().all(|class| {
        let mask = IdSet::from_ids(n, class);
        class
            .iter()
            .all(|&g| kernel.members().iter().all(|&k| mask.contains(group.mul(g, k))))
    });
    let bijection_ok =
        kernel_phi_invariant && cosets_respected && on_quotient.r() == partition.r();

    Ok(SigmaWitness {
        shifted_family: family,
        action_degree: masks.len(),
        kernel,
        kernel_phi_invariant,
        quotient,
        phi_on_quotient,
        bijection_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
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

    fn c6() -> GroupRef {
        make(6, &["(0 1 2 3 4 5)"])
    }

    fn doubling_on_c5() -> (GroupRef, Automorphism) {
        let g = c5();
        let gen = g.generator_ids()[0];
        let phi = Automorphism::from_images(&g, &[g.mul(gen, gen)]).unwrap();
        (g, phi)
    }

    fn inversion_on_c6() -> (GroupRef, Automorphism) {
        let g = c6();
        let gen = g.generator_ids()[0];
        let phi = Automorphism::from_images(&g, &[g.inv(gen)]).unwrap();
        (g, phi)
    }

    /// Brute-force oracle: the full orbit of g under every x at once.
    fn brute_partition(group: &GroupRef, phi: &Automorphism) -> Vec<Vec<u32>> {
        let n = group.order() as u32;
        let mut assigned = vec![false; n as usize];
        let mut out = Vec::new();
        for g in 0..n {
            if assigned[g as usize] {
                continue;
            }
            let mut orbit: Vec<u32> = (0..n)
                .map(|x| group.mul(group.mul(x, g), phi.apply(group.inv(x))))
                .collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &m in &orbit {
                assigned[m as usize] = true;
            }
            out.push(orbit);
        }
        out
    }

    #[test]
    fn identity_twist_gives_conjugacy_classes() {
        let g = s3();
        let phi = Automorphism::identity(g.clone());
        let partition = reidemeister_classes(&g, &phi);
        assert_eq!(partition.r(), 3);
        assert_eq!(partition.classes, g.conjugacy_classes().classes);
    }

    #[test]
    fn doubling_on_c5_has_one_class() {
        let (g, phi) = doubling_on_c5();
        assert_eq!(reidemeister_number(&g, &phi), 1);
    }

    #[test]
    fn inversion_on_c6_splits_even_odd() {
        let (g, phi) = inversion_on_c6();
        let partition = reidemeister_classes(&g, &phi);
        assert_eq!(partition.r(), 2);
        // the class of the identity is the set of even powers of the generator
        let gen = g.generator_ids()[0];
        let sq = g.mul(gen, gen);
        let mut evens = vec![0, sq, g.mul(sq, sq)];
        evens.sort_unstable();
        assert_eq!(partition.class_containing(0), evens.as_slice());
    }

    #[test]
    fn union_find_partition_matches_brute_force() {
        let cases: Vec<(GroupRef, Automorphism)> = vec![
            (s3(), Automorphism::identity(s3())),
            doubling_on_c5(),
            inversion_on_c6(),
            {
                let g = make(4, &["(0 1)", "(0 1 2 3)"]);
                let phi = Automorphism::inner(&g, 5);
                (g, phi)
            },
        ];
        for (g, phi) in cases {
            let fast = reidemeister_classes(&g, &phi);
            assert_eq!(fast.classes, brute_partition(&g, &phi));
            for (idx, class) in fast.classes.iter().enumerate() {
                for &m in class {
                    assert_eq!(fast.class_of[m as usize] as usize, idx);
                }
            }
        }
    }

    #[test]
    fn trivial_group_has_r_one() {
        let g = make(1, &[]);
        let phi = Automorphism::identity(g.clone());
        assert_eq!(reidemeister_number(&g, &phi), 1);
    }

    #[test]
    fn quaternion_inner_twists_keep_class_count() {
        let q8 = make(8, &["(0 1 2 3)(4 5 6 7)", "(0 4 2 6)(1 7 3 5)"]);
        assert_eq!(q8.order(), 8);
        assert_eq!(q8.class_count(), 5);
        for x in 0..8u32 {
            let phi = Automorphism::inner(&q8, x);
            assert_eq!(reidemeister_number(&q8, &phi), 5);
        }
    }

    #[test]
    fn shift_by_identity_is_trivially_true() {
        let g = s3();
        let phi = Automorphism::identity(g.clone());
        assert!(verify_shift(&g, &phi, 0));
    }

    #[test]
    fn shift_by_three_cycle_in_s3() {
        let g = s3();
        let phi = Automorphism::identity(g.clone());
        let c = g.id_of(&Perm::from_cycles(3, "(0 1 2)").unwrap()).unwrap();
        assert!(verify_shift(&g, &phi, c));
        let twisted = phi.compose_with_inner(c);
        assert_eq!(reidemeister_number(&g, &twisted), 3);
    }

    #[test]
    fn shift_holds_exhaustively_on_small_groups() {
        let groups = [s3(), c6(), make(8, &["(0 1 2 3)(4 5 6 7)", "(0 4 2 6)(1 7 3 5)"])];
        for g in groups {
            for phi in crate::morphism::inner_automorphisms(&g) {
                for x in 0..g.order() as u32 {
                    assert!(verify_shift(&g, &phi, x));
                }
            }
        }
    }

    #[test]
    fn extension_with_whole_group_as_subgroup() {
        let g = s3();
        let phi = Automorphism::identity(g.clone());
        let report = verify_extension(&g, &g.whole_subgroup(), &phi).unwrap();
        assert_eq!(report.r_quotient, 1);
        assert!(report.all_ok());
    }

    #[test]
    fn extension_worked_example_s3() {
        let g = s3();
        let phi = Automorphism::identity(g.clone());
        let derived = g.derived_series(&Limits::default()).unwrap();
        let report = verify_extension(&g, &derived.terms[1], &phi).unwrap();
        assert_eq!(report.r_total, 3);
        assert_eq!(report.r_quotient, 2);
        assert_eq!(report.r_restricted, 3);
        assert_eq!(report.fixed_quotient_size, 2);
        assert!(report.all_ok());
    }

    #[test]
    fn extension_worked_example_c6() {
        let (g, phi) = inversion_on_c6();
        let order3: Vec<u32> = (0..6u32).filter(|&x| g.element_order(x) % 2 == 1).collect();
        let h = Subgroup::new(&g, order3).unwrap();
        let report = verify_extension(&g, &h, &phi).unwrap();
        assert_eq!(report.r_total, 2);
        assert_eq!(report.r_quotient, 2);
        assert_eq!(report.r_restricted, 1);
        assert!(report.all_ok());
    }

    #[test]
    fn extension_rejects_bad_inputs() {
        let g = s3();
        let phi = Automorphism::identity(g.clone());
        let t = g.id_of(&Perm::from_cycles(3, "(0 1)").unwrap()).unwrap();
        let c2 = Subgroup::new(&g, vec![0, t]).unwrap();
        assert!(matches!(
            verify_extension(&g, &c2, &phi),
            Err(Error::NotNormal)
        ));
    }

    #[test]
    fn alpha_table() {
        assert_eq!(alpha(1), BigUint::from(4u8));
        assert_eq!(alpha(2), BigUint::from(16u8));
        assert_eq!(alpha(3), BigUint::from(256u16));
    }

    #[test]
    fn jabara_examples() {
        let klein = make(4, &["(0 1)", "(2 3)"]);
        let id = Automorphism::identity(klein.clone());
        // |C| = 4, R = 4, bound 2^16
        assert_eq!(reidemeister_number(&klein, &id), 4);
        assert!(jabara_check(&klein, &id));

        let (g, phi) = doubling_on_c5();
        assert_eq!(phi.fixed_subgroup().order(), 1);
        assert!(jabara_check(&g, &phi));
    }

    #[test]
    fn oracle_for_identity_counts_conjugacy_classes() {
        let g = s3();
        let phi = Automorphism::identity(g.clone());
        assert_eq!(
            semidirect_coset_oracle(&g, &phi, &Limits::default()).unwrap(),
            3
        );
    }

    #[test]
    fn oracle_on_c5_doubling() {
        let (g, phi) = doubling_on_c5();
        assert_eq!(
            semidirect_coset_oracle(&g, &phi, &Limits::default()).unwrap(),
            1
        );
    }

    #[test]
    fn oracle_matches_union_find_on_samples() {
        let q8 = make(8, &["(0 1 2 3)(4 5 6 7)", "(0 4 2 6)(1 7 3 5)"]);
        let (c6g, inv6) = inversion_on_c6();
        let cases: Vec<(GroupRef, Automorphism)> = vec![
            doubling_on_c5(),
            (c6g, inv6),
            (q8.clone(), Automorphism::inner(&q8, 3)),
        ];
        for (g, phi) in cases {
            assert_eq!(
                semidirect_coset_oracle(&g, &phi, &Limits::default()).unwrap(),
                reidemeister_number(&g, &phi)
            );
        }
    }

    #[test]
    fn sigma_witness_trivial_group() {
        let g = make(1, &[]);
        let phi = Automorphism::identity(g.clone());
        let witness = sigma_witness(&g, &phi).unwrap();
        assert_eq!(witness.action_degree, 1);
        assert_eq!(witness.quotient.group.order(), 1);
        assert!(witness.bijection_ok);
    }

    #[test]
    fn sigma_witness_on_c6_inversion() {
        let (g, phi) = inversion_on_c6();
        let witness = sigma_witness(&g, &phi).unwrap();
        assert_eq!(witness.shifted_family.len(), 2);
        assert_eq!(witness.quotient.group.order(), 2);
        assert!(witness.kernel_phi_invariant);
        assert!(witness.bijection_ok);
        assert_eq!(
            reidemeister_number(&witness.quotient.group, &witness.phi_on_quotient),
            2
        );
    }

    #[test]
    fn sigma_witness_on_abelian_identity_has_trivial_kernel() {
        let g = c5();
        let phi = Automorphism::identity(g.clone());
        let witness = sigma_witness(&g, &phi).unwrap();
        assert_eq!(witness.action_degree, 5);
        assert!(witness.kernel.is_trivial());
        assert!(witness.bijection_ok);
    }

    #[test]
    fn partition_is_independent_of_generating_set() {
        // same group generated two different ways must give the same classes
        let g1 = s3();
        let g2 = make(3, &["(1 2)", "(0 2 1)", "(0 1)"]);
        assert_eq!(g1.order(), g2.order());
        let phi1 = Automorphism::inner(&g1, 4);
        let phi2 = Automorphism::inner(&g2, 4);
        let p1 = reidemeister_classes(&g1, &phi1);
        let p2 = reidemeister_classes(&g2, &phi2);
        assert_eq!(p1.classes, p2.classes);
    }
}
