//! Corpus configuration: named groups plus the automorphism sampling
//! policy, with a built-in default covering ~25 groups of order ≤ 120.

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::group::GroupRef;
use crate::morphism::{all_automorphisms, inner_automorphisms, Automorphism};
use crate::construct::Construction;
use crate::perm::Perm;
use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// One generator image: an element index in canonical order, a cycle
/// string, or an explicit image array.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ImageSpec {
    Index(u32),
    Cycles(String),
    Images(Vec<u32>),
}

impl ImageSpec {
    pub fn resolve(&self, group: &GroupRef) -> Result<u32> {
        let perm = match self {
            ImageSpec::Index(i) => {
                if *i as usize >= group.order() {
                    return Err(Error::Parse(format!(
                        "element index {i} out of range for order {}",
                        group.order()
                    )));
                }
                return Ok(*i);
            }
            ImageSpec::Cycles(text) => Perm::from_cycles(group.degree(), text)?,
            ImageSpec::Images(images) => Perm::new(images.clone())?,
        };
        group
            .id_of(&perm)
            .ok_or_else(|| Error::Parse(format!("permutation {perm} is not a group element")))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub construct: Construction,
    /// Explicit automorphisms (generator images); when present, sampling is
    /// skipped for this entry.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub automorphisms: Vec<Vec<ImageSpec>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct CorpusConfig {
    pub seed: u64,
    pub limits: Limits,
    pub groups: Vec<CorpusEntry>,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            seed: 7,
            limits: Limits::default(),
            groups: Vec::new(),
        }
    }
}

impl CorpusConfig {
    /// The built-in corpus: ~25 named groups of order ≤ 120.
    pub fn builtin() -> CorpusConfig {
        use Construction::*;
        let entries: Vec<(&str, Construction)> = vec![
            ("C1", Cyclic { n: 1 }),
            ("C2", Cyclic { n: 2 }),
            ("C3", Cyclic { n: 3 }),
            ("C4", Cyclic { n: 4 }),
            ("C5", Cyclic { n: 5 }),
            ("C6", Cyclic { n: 6 }),
            ("C8", Cyclic { n: 8 }),
            ("C12", Cyclic { n: 12 }),
            ("V4", Product { factors: vec![Cyclic { n: 2 }, Cyclic { n: 2 }] }),
            ("C2xC4", Product { factors: vec![Cyclic { n: 2 }, Cyclic { n: 4 }] }),
            ("C2xC2xC2", Product { factors: vec![Cyclic { n: 2 }, Cyclic { n: 2 }, Cyclic { n: 2 }] }),
            ("C3xC3", Product { factors: vec![Cyclic { n: 3 }, Cyclic { n: 3 }] }),
            ("C2xC6", Product { factors: vec![Cyclic { n: 2 }, Cyclic { n: 6 }] }),
            ("S3", Symmetric { n: 3 }),
            ("S4", Symmetric { n: 4 }),
            ("S5", Symmetric { n: 5 }),
            ("A4", Alternating { n: 4 }),
            ("A5", Alternating { n: 5 }),
            ("D4", Dihedral { n: 4 }),
            ("D5", Dihedral { n: 5 }),
            ("D6", Dihedral { n: 6 }),
            ("Q8", Quaternion),
            ("Hei3", Heisenberg { p: 3 }),
            ("S3xC3", Product { factors: vec![Symmetric { n: 3 }, Cyclic { n: 3 }] }),
            ("A4xC2", Product { factors: vec![Alternating { n: 4 }, Cyclic { n: 2 }] }),
            ("D4xC2", Product { factors: vec![Dihedral { n: 4 }, Cyclic { n: 2 }] }),
            ("A5xC2", Product { factors: vec![Alternating { n: 5 }, Cyclic { n: 2 }] }),
        ];
        CorpusConfig {
            seed: 7,
            limits: Limits::default(),
            groups: entries
                .into_iter()
                .map(|(name, construct)| CorpusEntry {
                    name: name.into(),
                    construct,
                    automorphisms: Vec::new(),
                })
                .collect(),
        }
    }
}

/// Sampling policy: the full automorphism group for small orders; all inner
/// automorphisms plus seeded random generator-image attempts above that.
/// The seed mixes the configured seed with the group's canonical hash, so
/// the sample is deterministic per (config, group).
pub fn sample_automorphisms(
    group: &GroupRef,
    limits: &Limits,
    seed: u64,
) -> Vec<Automorphism> {
    if group.order() <= limits.aut_full_order {
        return all_automorphisms(group);
    }
    let mut autos = inner_automorphisms(group);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ group.canonical_hash());
    let orders = group.element_orders();
    let pools: Vec<Vec<u32>> = group
        .generator_ids()
        .iter()
        .map(|&g| {
            (0..group.order() as u32)
                .filter(|&x| orders[x as usize] == orders[g as usize])
                .collect()
        })
        .collect();
    for _ in 0..limits.outer_tries {
        let images: Vec<u32> = pools
            .iter()
            .map(|pool| *pool.choose(&mut rng).expect("pool holds the generator"))
            .collect();
        if let Ok(auto) = Automorphism::from_images(group, &images) {
            if !autos.contains(&auto) {
                autos.push(auto);
            }
        }
    }
    autos.sort_unstable_by(|a, b| a.map().cmp(b.map()));
    autos
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_corpus_builds_within_bounds() {
        let config = CorpusConfig::builtin();
        assert!(config.groups.len() >= 25);
        for entry in &config.groups {
            let g = entry.construct.build(&config.limits).unwrap();
            assert!(g.order() <= 120, "{} too large", entry.name);
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let config = CorpusConfig::builtin();
        let s5 = Construction::Symmetric { n: 5 }.build(&config.limits).unwrap();
        let a = sample_automorphisms(&s5, &config.limits, 7);
        let b = sample_automorphisms(&s5, &config.limits, 7);
        assert_eq!(a.len(), b.len());
        assert!(a.iter().zip(&b).all(|(x, y)| x == y));
        // S5 is complete: every sampled automorphism is inner, |Inn| = 120
        assert_eq!(a.len(), 120);
    }

    #[test]
    fn small_groups_get_the_full_automorphism_group() {
        let limits = Limits::default();
        let s3 = Construction::Symmetric { n: 3 }.build(&limits).unwrap();
        assert_eq!(sample_automorphisms(&s3, &limits, 1).len(), 6);
    }

    #[test]
    fn image_specs_resolve() {
        let limits = Limits::default();
        let s3 = Construction::Symmetric { n: 3 }.build(&limits).unwrap();
        let by_index = ImageSpec::Index(3).resolve(&s3).unwrap();
        assert_eq!(by_index, 3);
        let by_cycles = ImageSpec::Cycles("(0 1)".into()).resolve(&s3).unwrap();
        assert_eq!(s3.perm(by_cycles).to_cycles(), "(0 1)");
        assert!(ImageSpec::Index(99).resolve(&s3).is_err());
        assert!(ImageSpec::Cycles("(0 1 2 3)".into()).resolve(&s3).is_err());
    }
}
