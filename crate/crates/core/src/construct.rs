//! Named group constructions for corpus files: cyclic, dihedral, symmetric,
//! alternating, quaternion, Heisenberg mod p, and direct products.

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupRef};
use crate::perm::Perm;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Construction {
    Cyclic { n: usize },
    Dihedral { n: usize },
    Symmetric { n: usize },
    Alternating { n: usize },
    Quaternion,
    Heisenberg { p: u64 },
    Product { factors: Vec<Construction> },
}

impl Construction {
    pub fn build(&self, limits: &Limits) -> Result<GroupRef> {
        match self {
            Construction::Cyclic { n } => cyclic(*n, limits),
            Construction::Dihedral { n } => dihedral(*n, limits),
            Construction::Symmetric { n } => symmetric(*n, limits),
            Construction::Alternating { n } => alternating(*n, limits),
            Construction::Quaternion => quaternion(limits),
            Construction::Heisenberg { p } => heisenberg(*p, limits),
            Construction::Product { factors } => {
                if factors.is_empty() {
                    return cyclic(1, limits);
                }
                let built: Vec<GroupRef> =
                    factors.iter().map(|f| f.build(limits)).collect::<Result<_>>()?;
                direct_product(&built, limits)
            }
        }
    }
}

pub fn cyclic(n: usize, limits: &Limits) -> Result<GroupRef> {
    if n == 0 {
        return Err(Error::Parse("cyclic group needs n ≥ 1".into()));
    }
    if n == 1 {
        return FiniteGroup::generate(1, vec![], limits);
    }
    let images: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
    FiniteGroup::generate(n, vec![Perm::new(images)?], limits)
}

/// Order 2n: rotations and reflections of an n-gon. For n ≤ 2 the natural
/// action is not faithful on n points, so small cases are built as products.
pub fn dihedral(n: usize, limits: &Limits) -> Result<GroupRef> {
    match n {
        0 => Err(Error::Parse("dihedral group needs n ≥ 1".into())),
        1 => cyclic(2, limits),
        2 => direct_product(&[cyclic(2, limits)?, cyclic(2, limits)?], limits),
        _ => {
            let rotation: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
            let reflection: Vec<u32> = (0..n as u32).map(|i| (n as u32 - i) % n as u32).collect();
            FiniteGroup::generate(
                n,
                vec![Perm::new(rotation)?, Perm::new(reflection)?],
                limits,
            )
        }
    }
}

pub fn symmetric(n: usize, limits: &Limits) -> Result<GroupRef> {
    match n {
        0 => Err(Error::Parse("symmetric group needs n ≥ 1".into())),
        1 => FiniteGroup::generate(1, vec![], limits),
        2 => FiniteGroup::generate(2, vec![Perm::from_cycles(2, "(0 1)")?], limits),
        _ => {
            let transposition = Perm::from_cycles(n, "(0 1)")?;
            let cycle: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
            FiniteGroup::generate(n, vec![transposition, Perm::new(cycle)?], limits)
        }
    }
}

pub fn alternating(n: usize, limits: &Limits) -> Result<GroupRef> {
    match n {
        0 => Err(Error::Parse("alternating group needs n ≥ 1".into())),
        1 | 2 => FiniteGroup::generate(n, vec![], limits),
        3 => FiniteGroup::generate(3, vec![Perm::from_cycles(3, "(0 1 2)")?], limits),
        _ => {
            let three_cycle = Perm::from_cycles(n, "(0 1 2)")?;
            // an even long cycle: the full n-cycle for odd n, else the
            // (n−1)-cycle fixing point 0
            let long = if n % 2 == 1 {
                let images: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
                Perm::new(images)?
            } else {
                let mut images: Vec<u32> = (0..n as u32).collect();
                for i in 1..n as u32 {
                    images[i as usize] = if i as usize == n - 1 { 1 } else { i + 1 };
                }
                Perm::new(images)?
            };
            FiniteGroup::generate(n, vec![three_cycle, long], limits)
        }
    }
}

/// The order-8 quaternion group on its regular action, elements ordered
/// `1, i, −1, −i, j, k, −j, −k`.
pub fn quaternion(limits: &Limits) -> Result<GroupRef> {
    let i = Perm::from_cycles(8, "(0 1 2 3)(4 5 6 7)")?;
    let j = Perm::from_cycles(8, "(0 4 2 6)(1 7 3 5)")?;
    FiniteGroup::generate(8, vec![i, j], limits)
}

/// Unitriangular 3×3 matrices over F_p acting on the p³ column vectors;
/// order p³.
pub fn heisenberg(p: u64, limits: &Limits) -> Result<GroupRef> {
    if !(2..=7).contains(&p) || (p != 2 && p != 3 && p != 5 && p != 7) {
        return Err(Error::Parse("heisenberg parameter must be a prime ≤ 7".into()));
    }
    let points = (p * p * p) as usize;
    let encode = |v: [u64; 3]| -> u32 { (v[0] * p * p + v[1] * p + v[2]) as u32 };
    let perm_of = |action: &dyn Fn([u64; 3]) -> [u64; 3]| -> Result<Perm> {
        let images: Vec<u32> = (0..points as u32)
            .map(|idx| {
                let v = [
                    idx as u64 / (p * p),
                    (idx as u64 / p) % p,
                    idx as u64 % p,
                ];
                encode(action(v))
            })
            .collect();
        Perm::new(images)
    };
    // x: adds row 2 to row 1; y: adds row 3 to row 2
    let x = perm_of(&|v| [(v[0] + v[1]) % p, v[1], v[2]])?;
    let y = perm_of(&|v| [v[0], (v[1] + v[2]) % p, v[2]])?;
    let g = FiniteGroup::generate(points, vec![x, y], limits)?;
    assert_eq!(g.order() as u64, p * p * p);
    Ok(g)
}

/// Product on the disjoint union of the point sets; generators are each
/// factor's generators extended by the identity elsewhere.
pub fn direct_product(factors: &[GroupRef], limits: &Limits) -> Result<GroupRef> {
    if factors.is_empty() {
        return FiniteGroup::generate(1, vec![], limits);
    }
    let degree: usize = factors.iter().map(|g| g.degree()).sum();
    let mut gens = Vec::new();
    let mut offset = 0u32;
    for g in factors {
        for gen in g.generators() {
            let mut images: Vec<u32> = (0..degree as u32).collect();
            for (i, &v) in gen.images().iter().enumerate() {
                images[offset as usize + i] = offset + v;
            }
            gens.push(Perm::new(images)?);
        }
        offset += g.degree() as u32;
    }
    let product = FiniteGroup::generate(degree, gens, limits)?;
    let expected: usize = factors.iter().map(|g| g.order()).product();
    assert_eq!(product.order(), expected);
    Ok(product)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_orders() {
        let limits = Limits::default();
        assert_eq!(cyclic(1, &limits).unwrap().order(), 1);
        assert_eq!(cyclic(12, &limits).unwrap().order(), 12);
        assert_eq!(dihedral(4, &limits).unwrap().order(), 8);
        assert_eq!(dihedral(2, &limits).unwrap().order(), 4);
        assert_eq!(symmetric(4, &limits).unwrap().order(), 24);
        assert_eq!(alternating(4, &limits).unwrap().order(), 12);
        assert_eq!(alternating(5, &limits).unwrap().order(), 60);
        assert_eq!(quaternion(&limits).unwrap().order(), 8);
        assert_eq!(heisenberg(3, &limits).unwrap().order(), 27);
    }

    #[test]
    fn quaternion_element_order_profile() {
        // one involution and six elements of order 4 characterize Q8
        let q = quaternion(&Limits::default()).unwrap();
        let mut orders: Vec<u32> = (0..8).map(|i| q.element_order(i)).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![1, 2, 4, 4, 4, 4, 4, 4]);
    }

    #[test]
    fn heisenberg_is_nonabelian_of_exponent_p() {
        let h = heisenberg(3, &Limits::default()).unwrap();
        assert!(!h.is_abelian());
        assert_eq!(h.exponent(), 3);
        assert_eq!(h.center().len(), 3);
    }

    #[test]
    fn product_order_and_commuting_factors() {
        let limits = Limits::default();
        let product = direct_product(
            &[symmetric(3, &limits).unwrap(), cyclic(2, &limits).unwrap()],
            &limits,
        )
        .unwrap();
        assert_eq!(product.order(), 12);
    }

    #[test]
    fn construction_from_json() {
        let c: Construction =
            serde_json::from_str(r#"{"kind":"product","factors":[{"kind":"cyclic","n":2},{"kind":"cyclic","n":2}]}"#)
                .unwrap();
        let g = c.build(&Limits::default()).unwrap();
        assert_eq!(g.order(), 4);
        assert!(g.is_abelian());

        assert!(serde_json::from_str::<Construction>(r#"{"kind":"sporadic"}"#).is_err());
    }

    #[test]
    fn alternating_even_case_generators() {
        let a6 = alternating(6, &Limits::default()).unwrap();
        assert_eq!(a6.order(), 360);
    }
}
