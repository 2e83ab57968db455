//! End-to-end verification passes: the derived-series reduction with its
//! per-level inequalities, the finite-by-abelian inner-automorphism bound,
//! soluble-radical profiling, class/coset-union checks, and the corpus
//! runner that aggregates every lemma check into deterministic reports.

use crate::abelian::Cardinal;
use crate::characters::{character_table, class_permutation, fixed_character_count, ModPCharacterTable};
use crate::config::Limits;
use crate::corpus::{sample_automorphisms, CorpusConfig};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupRef};
use crate::morphism::Automorphism;
use crate::quotient::QuotientGroup;
use crate::subgroup::Subgroup;
use crate::twisted::{
    jabara_check, reidemeister_classes, reidemeister_number, semidirect_coset_oracle,
    sigma_witness, verify_extension, verify_shift,
};
use crate::util::IdSet;
use num_bigint::BigUint;
use serde::Serialize;
use std::collections::BTreeMap;

/// Per-level data of the derived-series walk.
#[derive(Debug, Serialize)]
pub struct LevelReport {
    /// Order of the series term the level starts from.
    pub term_order: usize,
    /// R of the restriction to that term.
    pub r_restricted: usize,
    /// |C(α)| for the induced map on the abelian section.
    pub fixed_on_section: usize,
    /// R(next restriction) ≤ R(this restriction) · |C(α)|.
    pub inequality_ok: bool,
    /// R(τ_g ∘ φ_i) = R(φ_i) for the sampled g.
    pub shift_ok: bool,
    /// R of the induced map on G / term ≤ R(φ).
    pub quotient_bound_ok: bool,
}

#[derive(Debug, Serialize)]
pub struct ReductionTrace {
    pub term_orders: Vec<usize>,
    pub per_level: Vec<LevelReport>,
}

impl ReductionTrace {
    pub fn all_ok(&self) -> bool {
        self.per_level
            .iter()
            .all(|l| l.inequality_ok && l.shift_ok && l.quotient_bound_ok)
    }
}

/// Walks the derived series of a soluble group: at each level restricts φ to
/// the term, induces it on the abelian section and on the head quotient,
/// and asserts the extension inequality plus shift invariance on sampled
/// elements.
pub fn derived_reduction(
    group: &GroupRef,
    phi: &Automorphism,
    limits: &Limits,
) -> Result<ReductionTrace> {
    let series = group.derived_series(limits)?;
    if !series.soluble {
        return Err(Error::NotSoluble);
    }
    for term in &series.terms {
        if !phi.preserves(term) {
            return Err(Error::Internal(
                "derived terms must be invariant under every automorphism".into(),
            ));
        }
    }
    let terms = &series.terms;
    let k = terms.len();

    // R of the restriction of φ to each term (the last term is trivial when
    // the series is proper; a one-term series means the group is trivial)
    let mut restricted_r = Vec::with_capacity(k);
    let mut restrictions = Vec::with_capacity(k);
    for term in terms {
        let (emb, restricted) = phi.restrict(term)?;
        restricted_r.push(reidemeister_number(&emb.group, &restricted));
        restrictions.push((emb, restricted));
    }

    let total_r = restricted_r[0];
    let mut per_level = Vec::new();
    for i in 0..k.saturating_sub(1) {
        let (emb, phi_i) = &restrictions[i];
        // the next term inside the realization of this term
        let next_ids: Vec<u32> = terms[i + 1]
            .members()
            .iter()
            .map(|&m| emb.sub_id(m).expect("series is descending"))
            .collect();
        let next_inside = Subgroup::new(&emb.group, next_ids)?;
        let section = QuotientGroup::new(&emb.group, &next_inside)?;
        let alpha = phi_i.induce_on_quotient(&section)?;
        let fixed_on_section = alpha.fixed_subgroup().order();
        let r_next = restricted_r[i + 1];
        let inequality_ok = r_next <= restricted_r[i] * fixed_on_section;

        // sampled shift invariance inside the term
        let order = emb.group.order();
        let stride = (order / 16).max(1);
        let shift_ok = (0..order as u32).step_by(stride).all(|g| {
            let twisted = phi_i.compose_with_inner(g);
            reidemeister_number(&emb.group, &twisted) == restricted_r[i]
        });

        // head quotient G / term and the projection bound
        let head = QuotientGroup::new(group, &terms[i])?;
        let beta = phi.induce_on_quotient(&head)?;
        let quotient_bound_ok = reidemeister_number(&head.group, &beta) <= total_r;

        per_level.push(LevelReport {
            term_order: terms[i].order(),
            r_restricted: restricted_r[i],
            fixed_on_section,
            inequality_ok,
            shift_ok,
            quotient_bound_ok,
        });
    }
    Ok(ReductionTrace {
        term_orders: terms.iter().map(Subgroup::order).collect(),
        per_level,
    })
}

/// p-rank maximum over primes: the rank of a finite abelian group.
pub fn finite_abelian_rank(group: &FiniteGroup) -> usize {
    assert!(group.is_abelian());
    let n = group.order() as u64;
    let mut rank = 0usize;
    let mut rest = n;
    let mut p = 2u64;
    while rest > 1 {
        if rest % p == 0 {
            while rest % p == 0 {
                rest /= p;
            }
            let torsion = (0..group.order() as u32)
                .filter(|&x| {
                    let mut y = x;
                    for _ in 1..p {
                        y = group.mul(y, x);
                    }
                    y == 0
                })
                .count() as u64;
            let mut dim = 0usize;
            let mut t = torsion;
            while t > 1 {
                t /= p;
                dim += 1;
            }
            rank = rank.max(dim);
        }
        p += 1;
    }
    rank
}

#[derive(Debug, Serialize)]
pub struct InnerBoundReport {
    pub inner_count: usize,
    pub kernel_order: usize,
    pub quotient_rank: usize,
    pub ok: bool,
}

/// For finite `F` normal with `G/F` abelian: the number of distinct inner
/// automorphisms is at most `|F|! · |F|^{rk(G/F)}`.
pub fn inner_bound_check(group: &GroupRef, f: &Subgroup) -> Result<InnerBoundReport> {
    f.assert_parent(group);
    if !f.is_normal() {
        return Err(Error::NotNormal);
    }
    let quotient = QuotientGroup::new(group, f)?;
    if !quotient.group.is_abelian() {
        return Err(Error::QuotientNotAbelian);
    }
    let inner_count = group.order() / group.center().len();
    let quotient_rank = finite_abelian_rank(&quotient.group);
    let f_order = f.order();
    let factorial: BigUint = (1..=f_order as u64).map(BigUint::from).product();
    let bound = factorial * BigUint::from(f_order as u64).pow(quotient_rank as u32);
    Ok(InnerBoundReport {
        inner_count,
        kernel_order: f_order,
        quotient_rank,
        ok: BigUint::from(inner_count) <= bound,
    })
}

#[derive(Debug, Serialize)]
pub struct SolubleProfile {
    pub fixed_order: usize,
    pub rank: usize,
    pub radical_order: usize,
    pub radical_index: usize,
    pub radical_derived_length: usize,
}

/// The largest soluble normal subgroup with its index and derived length,
/// alongside |C(φ)| and the rank. Profiling only; nothing is asserted.
pub fn soluble_profile(
    group: &GroupRef,
    phi: &Automorphism,
    limits: &Limits,
) -> Result<SolubleProfile> {
    let radical = soluble_radical(group, limits)?;
    let mut budget = limits.subgroup_budget;
    let chain = group.derived_chain(radical.members(), &mut budget)?;
    assert!(chain.soluble, "the radical must be soluble");
    Ok(SolubleProfile {
        fixed_order: phi.fixed_subgroup().order(),
        rank: group.rank(limits)?,
        radical_order: radical.order(),
        radical_index: group.order() / radical.order(),
        radical_derived_length: chain.terms.len() - 1,
    })
}

/// The soluble radical: the unique largest soluble normal subgroup, found by
/// filtering the normal subgroup lattice. The maximum is checked to contain
/// every other soluble normal subgroup.
pub fn soluble_radical(group: &GroupRef, limits: &Limits) -> Result<Subgroup> {
    let mut budget = limits.subgroup_budget;
    let mut soluble: Vec<Subgroup> = Vec::new();
    for n in group.normal_subgroups(limits)? {
        if group.derived_chain(n.members(), &mut budget)?.soluble {
            soluble.push(n);
        }
    }
    let radical = soluble
        .iter()
        .max_by_key(|s| s.order())
        .expect("the trivial subgroup is always soluble")
        .clone();
    for other in &soluble {
        if !other.members().iter().all(|&m| radical.contains(m)) {
            return Err(Error::Internal(
                "soluble normal subgroups must join into the radical".into(),
            ));
        }
    }
    Ok(radical)
}

/// Is every twisted class of φ a union of left `H`-cosets?
pub fn class_coset_union(group: &GroupRef, phi: &Automorphism, h: &Subgroup) -> bool {
    h.assert_parent(group);
    let partition = reidemeister_classes(group, phi);
    partition.classes.iter().all(|class| {
        let mask = IdSet::from_ids(group.order(), class);
        class
            .iter()
            .all(|&g| h.members().iter().all(|&m| mask.contains(group.mul(g, m))))
    })
}

/// Outcome of one named check inside a report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckOutcome {
    Pass,
    Fail,
    Skipped,
    Error(String),
}

impl CheckOutcome {
    pub fn from_bool(ok: bool) -> CheckOutcome {
        if ok {
            CheckOutcome::Pass
        } else {
            CheckOutcome::Fail
        }
    }

    pub fn is_acceptable(&self) -> bool {
        matches!(self, CheckOutcome::Pass | CheckOutcome::Skipped)
    }
}

impl Serialize for CheckOutcome {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            CheckOutcome::Pass => s.serialize_str("pass"),
            CheckOutcome::Fail => s.serialize_str("fail"),
            CheckOutcome::Skipped => s.serialize_str("skipped"),
            CheckOutcome::Error(e) => s.serialize_str(&format!("error: {e}")),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct GroupFingerprint {
    pub order: usize,
    pub degree: usize,
    pub class_count: usize,
    pub soluble: bool,
    pub rank: Option<usize>,
    pub radical_index: Option<usize>,
    pub radical_derived_length: Option<usize>,
}

#[derive(Debug, Serialize)]
pub struct AutFingerprint {
    pub order: u64,
    pub fixed_order: usize,
    pub inner: bool,
}

/// One verification case: either the group-level checks (no automorphism
/// fingerprint) or a (group, automorphism) pair.
#[derive(Debug, Serialize)]
pub struct VerificationReport {
    pub case_id: String,
    pub group: GroupFingerprint,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub automorphism: Option<AutFingerprint>,
    pub checks: BTreeMap<String, CheckOutcome>,
    #[serde(skip)]
    pub elapsed_ms: u128,
}

impl VerificationReport {
    pub fn all_ok(&self) -> bool {
        self.checks.values().all(CheckOutcome::is_acceptable)
    }
}

/// Runs every lemma check over each (group, automorphism) case in the
/// config. Per-case errors are captured in the reports; the sweep never
/// aborts. Reports are deterministic for a fixed config.
pub fn run_corpus(config: &CorpusConfig) -> Vec<VerificationReport> {
    let limits = &config.limits;
    let mut reports = Vec::new();
    for entry in &config.groups {
        let started = std::time::Instant::now();
        let group = match entry.construct.build(limits) {
            Ok(g) => g,
            Err(e) => {
                let mut checks = BTreeMap::new();
                checks.insert("construct".to_string(), CheckOutcome::Error(e.to_string()));
                reports.push(VerificationReport {
                    case_id: entry.name.clone(),
                    group: GroupFingerprint {
                        order: 0,
                        degree: 0,
                        class_count: 0,
                        soluble: false,
                        rank: None,
                        radical_index: None,
                        radical_derived_length: None,
                    },
                    automorphism: None,
                    checks,
                    elapsed_ms: started.elapsed().as_millis(),
                });
                continue;
            }
        };

        let shared = match GroupContext::prepare(&group, limits, config.seed) {
            Ok(s) => s,
            Err(e) => {
                let mut checks = BTreeMap::new();
                checks.insert("prepare".to_string(), CheckOutcome::Error(e.to_string()));
                reports.push(VerificationReport {
                    case_id: entry.name.clone(),
                    group: bare_fingerprint(&group),
                    automorphism: None,
                    checks,
                    elapsed_ms: started.elapsed().as_millis(),
                });
                continue;
            }
        };

        reports.push(shared.group_level_report(&entry.name, started));

        let autos: Vec<(Automorphism, Option<Error>)> = if entry.automorphisms.is_empty() {
            shared.sampled_autos.iter().cloned().map(|a| (a, None)).collect()
        } else {
            entry
                .automorphisms
                .iter()
                .map(|specs| {
                    let images: Result<Vec<u32>> =
                        specs.iter().map(|s| s.resolve(&group)).collect();
                    match images.and_then(|im| Automorphism::from_images(&group, &im)) {
                        Ok(a) => (a, None),
                        Err(e) => (Automorphism::identity(group.clone()), Some(e)),
                    }
                })
                .collect()
        };

        for (idx, (phi, spec_error)) in autos.iter().enumerate() {
            let started = std::time::Instant::now();
            let case_id = format!("{}/aut{:03}", entry.name, idx);
            let mut checks = BTreeMap::new();
            if let Some(e) = spec_error {
                checks.insert("automorphism".to_string(), CheckOutcome::Error(e.to_string()));
                reports.push(VerificationReport {
                    case_id,
                    group: shared.fingerprint(),
                    automorphism: None,
                    checks,
                    elapsed_ms: started.elapsed().as_millis(),
                });
                continue;
            }
            let report = shared.case_report(case_id, phi, started);
            reports.push(report);
        }
    }
    reports
}

/// Everything computed once per group and reused across its cases.
struct GroupContext<'a> {
    group: GroupRef,
    limits: &'a Limits,
    normals: Vec<Subgroup>,
    table: Option<ModPCharacterTable>,
    soluble: bool,
    rank: Option<usize>,
    radical: Subgroup,
    radical_derived_length: usize,
    sampled_autos: Vec<Automorphism>,
}

fn bare_fingerprint(group: &GroupRef) -> GroupFingerprint {
    GroupFingerprint {
        order: group.order(),
        degree: group.degree(),
        class_count: group.class_count(),
        soluble: false,
        rank: None,
        radical_index: None,
        radical_derived_length: None,
    }
}

impl<'a> GroupContext<'a> {
    fn prepare(group: &GroupRef, limits: &'a Limits, seed: u64) -> Result<GroupContext<'a>> {
        let normals = group.normal_subgroups(limits)?;
        let table = character_table(group, limits).ok();
        let soluble = group.is_soluble(limits)?;
        let rank = group.rank(limits).ok();
        let radical = soluble_radical(group, limits)?;
        let mut budget = limits.subgroup_budget;
        let radical_derived_length =
            group.derived_chain(radical.members(), &mut budget)?.terms.len() - 1;
        let sampled_autos = sample_automorphisms(group, limits, seed);
        Ok(GroupContext {
            group: group.clone(),
            limits,
            normals,
            table,
            soluble,
            rank,
            radical,
            radical_derived_length,
            sampled_autos,
        })
    }

    fn fingerprint(&self) -> GroupFingerprint {
        GroupFingerprint {
            order: self.group.order(),
            degree: self.group.degree(),
            class_count: self.group.class_count(),
            soluble: self.soluble,
            rank: self.rank,
            radical_index: Some(self.group.order() / self.radical.order()),
            radical_derived_length: Some(self.radical_derived_length),
        }
    }

    fn group_level_report(&self, name: &str, started: std::time::Instant) -> VerificationReport {
        let mut checks = BTreeMap::new();

        // subgroup growth: a_n ≤ (n!)^rank for n ≤ 8
        checks.insert(
            "subgroup_bound".to_string(),
            match self.rank {
                None => CheckOutcome::Skipped,
                Some(rank) => {
                    let result = (1..=8usize).try_fold(true, |acc, n| {
                        let count = self.group.subgroup_count_of_index(n, self.limits)?;
                        let factorial: BigUint = (1..=n as u64).map(BigUint::from).product();
                        Ok::<bool, Error>(
                            acc && BigUint::from(count) <= factorial.pow(rank as u32),
                        )
                    });
                    match result {
                        Ok(ok) => CheckOutcome::from_bool(ok),
                        Err(e) => CheckOutcome::Error(e.to_string()),
                    }
                }
            },
        );

        // inner-automorphism bound over every normal subgroup with abelian
        // quotient
        let inner_bound = self
            .normals
            .iter()
            .filter_map(|f| match inner_bound_check(&self.group, f) {
                Ok(report) => Some(Ok(report.ok)),
                Err(Error::QuotientNotAbelian) => None,
                Err(e) => Some(Err(e)),
            })
            .try_fold(true, |acc, r| r.map(|ok| acc && ok));
        checks.insert(
            "inner_bound".to_string(),
            match inner_bound {
                Ok(ok) => CheckOutcome::from_bool(ok),
                Err(e) => CheckOutcome::Error(e.to_string()),
            },
        );

        // derived terms are characteristic: invariant under the sampled
        // automorphism set
        let derived_ok = self.group.derived_series(self.limits).map(|series| {
            series.terms.iter().all(|term| {
                self.sampled_autos.iter().all(|phi| phi.preserves(term))
            })
        });
        checks.insert(
            "derived_characteristic".to_string(),
            match derived_ok {
                Ok(ok) => CheckOutcome::from_bool(ok),
                Err(e) => CheckOutcome::Error(e.to_string()),
            },
        );

        VerificationReport {
            case_id: name.to_string(),
            group: self.fingerprint(),
            automorphism: None,
            checks,
            elapsed_ms: started.elapsed().as_millis(),
        }
    }

    fn case_report(
        &self,
        case_id: String,
        phi: &Automorphism,
        started: std::time::Instant,
    ) -> VerificationReport {
        let group = &self.group;
        let mut checks = BTreeMap::new();
        let base_r = reidemeister_number(group, phi);

        // shift lemma: exhaustive up to order 24, strided sample beyond
        let order = group.order();
        let stride = if order <= 24 { 1 } else { (order / 16).max(1) };
        let shift_ok = (0..order as u32)
            .step_by(stride)
            .all(|x| verify_shift(group, phi, x));
        checks.insert("shift".to_string(), CheckOutcome::from_bool(shift_ok));

        // independent oracle
        checks.insert(
            "oracle".to_string(),
            match semidirect_coset_oracle(group, phi, self.limits) {
                Ok(count) => CheckOutcome::from_bool(count == base_r),
                Err(e) => CheckOutcome::Error(e.to_string()),
            },
        );

        // fixed character rows
        checks.insert(
            "tbft".to_string(),
            match &self.table {
                None => CheckOutcome::Skipped,
                Some(table) => {
                    let cp = class_permutation(group, phi);
                    CheckOutcome::from_bool(fixed_character_count(table, &cp) == base_r)
                }
            },
        );

        checks.insert(
            "jabara".to_string(),
            CheckOutcome::from_bool(jabara_check(group, phi)),
        );

        // extension inequalities over every normal invariant subgroup
        let extension = self
            .normals
            .iter()
            .filter(|n| phi.preserves(n))
            .try_fold(true, |acc, n| {
                verify_extension(group, n, phi).map(|r| acc && r.all_ok())
            });
        checks.insert(
            "extension".to_string(),
            match extension {
                Ok(ok) => CheckOutcome::from_bool(ok),
                Err(e) => CheckOutcome::Error(e.to_string()),
            },
        );

        // witness quotient and the coset-union property for its kernel
        match sigma_witness(group, phi) {
            Ok(witness) => {
                checks.insert(
                    "sigma".to_string(),
                    CheckOutcome::from_bool(witness.bijection_ok),
                );
                checks.insert(
                    "coset_union".to_string(),
                    CheckOutcome::from_bool(class_coset_union(group, phi, &witness.kernel)),
                );
            }
            Err(e) => {
                checks.insert("sigma".to_string(), CheckOutcome::Error(e.to_string()));
                checks.insert("coset_union".to_string(), CheckOutcome::Skipped);
            }
        }

        checks.insert(
            "derived_reduction".to_string(),
            if self.soluble {
                match derived_reduction(group, phi, self.limits) {
                    Ok(trace) => CheckOutcome::from_bool(trace.all_ok()),
                    Err(e) => CheckOutcome::Error(e.to_string()),
                }
            } else {
                CheckOutcome::Skipped
            },
        );

        let fingerprint = AutFingerprint {
            order: phi.order(),
            fixed_order: phi.fixed_subgroup().order(),
            inner: (0..group.order() as u32).any(|x| &Automorphism::inner(group, x) == phi),
        };
        VerificationReport {
            case_id,
            group: self.fingerprint(),
            automorphism: Some(fingerprint),
            checks,
            elapsed_ms: started.elapsed().as_millis(),
        }
    }
}

/// `Cardinal`-valued |C(φ)| for pipeline consumers.
pub fn fixed_order(phi: &Automorphism) -> Cardinal {
    Cardinal::finite(phi.fixed_subgroup().order() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{self, Construction};
    use crate::corpus::CorpusEntry;
    use crate::perm::Perm;

    fn limits() -> Limits {
        Limits::default()
    }

    fn s3() -> GroupRef {
        construct::symmetric(3, &limits()).unwrap()
    }

    #[test]
    fn derived_reduction_on_abelian_group() {
        let g = construct::cyclic(6, &limits()).unwrap();
        let phi = Automorphism::identity(g.clone());
        let trace = derived_reduction(&g, &phi, &limits()).unwrap();
        assert_eq!(trace.term_orders, vec![6, 1]);
        assert_eq!(trace.per_level.len(), 1);
        assert!(trace.all_ok());
    }

    #[test]
    fn derived_reduction_worked_example_s3() {
        let g = s3();
        let phi = Automorphism::identity(g.clone());
        let trace = derived_reduction(&g, &phi, &limits()).unwrap();
        assert_eq!(trace.term_orders, vec![6, 3, 1]);
        assert_eq!(trace.per_level.len(), 2);
        assert_eq!(trace.per_level[0].r_restricted, 3);
        assert_eq!(trace.per_level[0].fixed_on_section, 2);
        assert_eq!(trace.per_level[1].r_restricted, 3);
        assert!(trace.all_ok());
    }

    #[test]
    fn derived_reduction_sweeps_dihedral_inners() {
        let g = construct::dihedral(4, &limits()).unwrap();
        for x in 0..g.order() as u32 {
            let phi = Automorphism::inner(&g, x);
            let trace = derived_reduction(&g, &phi, &limits()).unwrap();
            assert_eq!(trace.term_orders, vec![8, 2, 1]);
            assert!(trace.all_ok());
        }
    }

    #[test]
    fn derived_reduction_rejects_insoluble_groups() {
        let g = construct::alternating(5, &limits()).unwrap();
        let phi = Automorphism::identity(g.clone());
        assert!(matches!(
            derived_reduction(&g, &phi, &limits()),
            Err(Error::NotSoluble)
        ));
    }

    #[test]
    fn inner_bound_examples() {
        // dihedral of order 8, F = center of order 2
        let g = construct::dihedral(4, &limits()).unwrap();
        let center = Subgroup::new(&g, g.center().to_vec()).unwrap();
        let report = inner_bound_check(&g, &center).unwrap();
        assert_eq!(report.inner_count, 4);
        assert_eq!(report.quotient_rank, 2);
        assert!(report.ok);

        // abelian G with trivial F
        let g = construct::cyclic(6, &limits()).unwrap();
        let report = inner_bound_check(&g, &g.trivial_subgroup()).unwrap();
        assert_eq!(report.inner_count, 1);
        assert!(report.ok);

        // quaternion, F = center
        let g = construct::quaternion(&limits()).unwrap();
        let center = Subgroup::new(&g, g.center().to_vec()).unwrap();
        let report = inner_bound_check(&g, &center).unwrap();
        assert_eq!(report.inner_count, 4);
        assert!(report.ok);
    }

    #[test]
    fn inner_bound_rejects_nonabelian_quotient() {
        let g = s3();
        assert!(matches!(
            inner_bound_check(&g, &g.trivial_subgroup()),
            Err(Error::QuotientNotAbelian)
        ));
    }

    #[test]
    fn soluble_profiles() {
        let phi = |g: &GroupRef| Automorphism::identity(g.clone());

        let g = s3();
        let profile = soluble_profile(&g, &phi(&g), &limits()).unwrap();
        assert_eq!(profile.radical_index, 1);
        assert_eq!(profile.radical_derived_length, 2);

        let g = construct::alternating(5, &limits()).unwrap();
        let profile = soluble_profile(&g, &phi(&g), &limits()).unwrap();
        assert_eq!(profile.radical_order, 1);
        assert_eq!(profile.radical_index, 60);

        let g = construct::direct_product(
            &[
                construct::alternating(5, &limits()).unwrap(),
                construct::cyclic(2, &limits()).unwrap(),
            ],
            &limits(),
        )
        .unwrap();
        let profile = soluble_profile(&g, &phi(&g), &limits()).unwrap();
        assert_eq!(profile.radical_order, 2);
        assert_eq!(profile.radical_index, 60);
    }

    #[test]
    fn coset_union_examples() {
        let g = s3();
        let phi = Automorphism::identity(g.clone());
        assert!(class_coset_union(&g, &phi, &g.trivial_subgroup()));
        // R > 1 with H = G: a single coset cannot split into several classes
        assert!(!class_coset_union(&g, &phi, &g.whole_subgroup()));

        let witness = sigma_witness(&g, &phi).unwrap();
        assert!(class_coset_union(&g, &phi, &witness.kernel));
    }

    #[test]
    fn empty_corpus_gives_empty_reports() {
        let config = CorpusConfig {
            groups: vec![],
            ..CorpusConfig::default()
        };
        assert!(run_corpus(&config).is_empty());
    }

    #[test]
    fn small_corpus_passes_every_check() {
        let config = CorpusConfig {
            groups: vec![
                CorpusEntry {
                    name: "S3".into(),
                    construct: Construction::Symmetric { n: 3 },
                    automorphisms: vec![],
                },
                CorpusEntry {
                    name: "C6".into(),
                    construct: Construction::Cyclic { n: 6 },
                    automorphisms: vec![],
                },
            ],
            ..CorpusConfig::default()
        };
        let reports = run_corpus(&config);
        assert!(reports.len() > 2);
        for report in &reports {
            assert!(report.all_ok(), "case {} failed: {:?}", report.case_id, report.checks);
        }
    }

    #[test]
    fn corrupted_automorphism_is_captured_not_fatal() {
        let g = s3();
        let bad_image = g.id_of(&Perm::from_cycles(3, "(0 1 2)").unwrap()).unwrap();
        let config = CorpusConfig {
            groups: vec![CorpusEntry {
                name: "S3".into(),
                construct: Construction::Symmetric { n: 3 },
                // sends the involution generator to a 3-cycle: not a
                // homomorphism
                automorphisms: vec![vec![
                    crate::corpus::ImageSpec::Index(bad_image),
                    crate::corpus::ImageSpec::Index(bad_image),
                ]],
            }],
            ..CorpusConfig::default()
        };
        let reports = run_corpus(&config);
        let case = reports.iter().find(|r| r.case_id == "S3/aut000").unwrap();
        assert!(matches!(
            case.checks.get("automorphism"),
            Some(CheckOutcome::Error(_))
        ));
    }

    #[test]
    fn corpus_reports_are_deterministic() {
        let config = CorpusConfig {
            groups: vec![CorpusEntry {
                name: "Q8".into(),
                construct: Construction::Quaternion,
                automorphisms: vec![],
            }],
            ..CorpusConfig::default()
        };
        let a = serde_json::to_string(&run_corpus(&config)).unwrap();
        let b = serde_json::to_string(&run_corpus(&config)).unwrap();
        assert_eq!(a, b);
    }
}
