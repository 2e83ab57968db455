//! The JSON input schema: permutation groups with optional automorphisms,
//! abelian lattice quotients, and quasicyclic modules.

use reidemeister::abelian::{LatticeAbelianEndo, LatticeAbelianGroup};
use reidemeister::corpus::ImageSpec;
use reidemeister::group::{FiniteGroup, GroupRef};
use reidemeister::morphism::Automorphism;
use reidemeister::perm::Perm;
use reidemeister::prufer::{PruferSubgroup, QuasicyclicEndo};
use reidemeister::{Error, Limits, Result};
use serde::Deserialize;

/// A generator: cycle notation or an explicit image array.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum PermSpec {
    Cycles(String),
    Images(Vec<u32>),
}

impl PermSpec {
    fn build(&self, degree: usize) -> Result<Perm> {
        match self {
            PermSpec::Cycles(text) => Perm::from_cycles(degree, text),
            PermSpec::Images(images) => {
                if images.len() != degree {
                    return Err(Error::Parse(format!(
                        "image array has length {}, degree is {degree}",
                        images.len()
                    )));
                }
                Perm::new(images.clone())
            }
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpecFile {
    Perm {
        degree: usize,
        generators: Vec<PermSpec>,
        #[serde(default)]
        automorphism: Option<Vec<ImageSpec>>,
    },
    Abelian {
        ambient_rank: usize,
        #[serde(default)]
        relations: Vec<Vec<i64>>,
        matrix: Vec<Vec<i64>>,
    },
    Prufer {
        p: u64,
        d: usize,
        matrix: Vec<Vec<i64>>,
        #[serde(default)]
        subgroup: Option<PruferSubgroup>,
    },
}

pub fn load(path: &std::path::Path) -> Result<GroupSpecFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("bad spec file: {e}")))
}

/// A parsed permutation-group case: the group plus the optional
/// automorphism (identity when none is given).
pub struct PermCase {
    pub group: GroupRef,
    pub phi: Automorphism,
    pub explicit_automorphism: bool,
}

pub fn build_perm_case(
    degree: usize,
    generators: &[PermSpec],
    automorphism: &Option<Vec<ImageSpec>>,
    limits: &Limits,
) -> Result<PermCase> {
    let gens: Vec<Perm> = generators
        .iter()
        .map(|g| g.build(degree))
        .collect::<Result<_>>()?;
    let group = FiniteGroup::generate(degree, gens, limits)?;
    let phi = match automorphism {
        None => Automorphism::identity(group.clone()),
        Some(specs) => {
            let images: Vec<u32> = specs
                .iter()
                .map(|s| s.resolve(&group))
                .collect::<Result<_>>()?;
            Automorphism::from_images(&group, &images)?
        }
    };
    Ok(PermCase {
        group,
        phi,
        explicit_automorphism: automorphism.is_some(),
    })
}

pub fn build_abelian_endo(
    ambient_rank: usize,
    relations: &[Vec<i64>],
    matrix: &[Vec<i64>],
) -> Result<LatticeAbelianEndo> {
    let group = LatticeAbelianGroup::new(ambient_rank, relations)?;
    LatticeAbelianEndo::new(group, matrix)
}

pub fn build_prufer_endo(p: u64, d: usize, matrix: &[Vec<i64>]) -> Result<QuasicyclicEndo> {
    QuasicyclicEndo::new(p, d, matrix)
}
