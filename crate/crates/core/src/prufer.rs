//! Quasicyclic modules `Z(p^∞)^d` with integer-matrix endomorphisms.
//!
//! The fixed subgroup of `x ↦ Mx` has order `p^{v_p(det(1−M))}` when the
//! determinant is nonzero, and the twisted class count is then 1; both are
//! cross-checked by enumerating the truncation levels `(ℤ/p^k)^d`, where the
//! count stabilizes once `k` passes every elementary-divisor valuation.

use crate::abelian::Cardinal;
use crate::error::{Error, Result};
use crate::snf::{smith_normal_form, IMat};
use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub struct QuasicyclicEndo {
    pub p: u64,
    pub d: usize,
    matrix: IMat,
}

impl QuasicyclicEndo {
    pub fn new(p: u64, d: usize, matrix: &[Vec<i64>]) -> Result<QuasicyclicEndo> {
        if !is_prime(p) {
            return Err(Error::Parse(format!("{p} is not prime")));
        }
        if d == 0 {
            return Err(Error::Parse("dimension must be at least 1".into()));
        }
        if matrix.len() != d || matrix.iter().any(|r| r.len() != d) {
            return Err(Error::IllFormedEndo(format!("matrix must be {d}×{d}")));
        }
        Ok(QuasicyclicEndo {
            p,
            d,
            matrix: IMat::from_i64_rows(matrix),
        })
    }

    pub fn matrix(&self) -> &IMat {
        &self.matrix
    }

    /// Integer matrices act invertibly on `Z(p^∞)^d` exactly when p does not
    /// divide the determinant.
    pub fn is_automorphism(&self) -> bool {
        let det = self.matrix.det_bareiss();
        !(det % BigInt::from(self.p)).is_zero()
    }

    pub fn one_minus(&self) -> IMat {
        let mut m = IMat::zero(self.d, self.d);
        for i in 0..self.d {
            for j in 0..self.d {
                let eye = if i == j { BigInt::from(1) } else { BigInt::zero() };
                m[(i, j)] = eye - self.matrix[(i, j)].clone();
            }
        }
        m
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut f = 2;
    while f * f <= n {
        if n % f == 0 {
            return false;
        }
        f += 1;
    }
    true
}

fn valuation(mut n: BigUint, p: u64) -> u32 {
    let p = BigUint::from(p);
    let mut v = 0;
    while (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    v
}

/// `|C(φ)| = p^{v_p(det(1−M))}` when `det(1−M) ≠ 0`, else infinite.
pub fn quasicyclic_fixed(endo: &QuasicyclicEndo) -> Cardinal {
    let det = endo.one_minus().det_bareiss();
    if det.is_zero() {
        return Cardinal::Infinite;
    }
    let v = valuation(det.abs().to_biguint().expect("positive"), endo.p);
    Cardinal::Finite(BigUint::from(endo.p).pow(v))
}

/// `R(φ) = 1` when `det(1−M) ≠ 0` (the map is then onto), else infinite.
pub fn quasicyclic_r(endo: &QuasicyclicEndo) -> Cardinal {
    if endo.one_minus().det_bareiss().is_zero() {
        Cardinal::Infinite
    } else {
        Cardinal::finite(1)
    }
}

/// Number of solutions of `(1−M)x ≡ 0` over `(ℤ/p^k)^d` by exhaustive
/// enumeration. This is the independent truncation oracle.
pub fn truncation_fixed_count(endo: &QuasicyclicEndo, level: u32) -> BigUint {
    let modulus = BigInt::from(endo.p).pow(level);
    let one_minus = endo.one_minus();
    let wide = (endo.p as u128).pow(level * endo.d as u32);
    assert!(wide <= 100_000_000, "truncation enumeration beyond budget");
    let size = wide as u64;
    let mut count = BigUint::zero();
    let mut x = vec![BigInt::zero(); endo.d];
    for _ in 0..size {
        let image = one_minus.map_vec(&x);
        if image.iter().all(|v| (v % &modulus).is_zero()) {
            count += 1u8;
        }
        // odometer over (ℤ/p^k)^d
        for coord in x.iter_mut() {
            *coord += 1;
            if *coord < modulus {
                break;
            }
            *coord = BigInt::zero();
        }
    }
    count
}

/// The fixed-count formula together with its truncation cross-check. Levels
/// `2..=base_level` are always enumerated; the level is raised past every
/// p-valuation of `det(1−M)` so the last two counts agree and pin the total.
pub struct QuasicyclicFixedReport {
    pub fixed: Cardinal,
    pub levels: BTreeMap<u32, BigUint>,
    pub stable_ok: bool,
}

pub fn quasicyclic_fixed_checked(
    endo: &QuasicyclicEndo,
    base_level: u32,
) -> QuasicyclicFixedReport {
    let fixed = quasicyclic_fixed(endo);
    let det = endo.one_minus().det_bareiss();
    let needed = match &det {
        d if d.is_zero() => base_level.max(2) + 1,
        d => valuation(d.abs().to_biguint().expect("positive"), endo.p) + 1,
    };
    let top = base_level.max(2).max(needed);
    let mut levels = BTreeMap::new();
    for k in 2..=top {
        // keep the enumeration at desk scale
        if (endo.p as u128).pow(k * endo.d as u32) > 100_000_000 {
            break;
        }
        levels.insert(k, truncation_fixed_count(endo, k));
    }
    let stable_ok = match &fixed {
        Cardinal::Infinite => {
            // counts must keep growing with the level
            let counts: Vec<&BigUint> = levels.values().collect();
            counts.windows(2).all(|w| w[0] < w[1])
        }
        Cardinal::Finite(n) => {
            let last_two: Vec<&BigUint> = levels.values().rev().take(2).collect();
            last_two.len() == 2 && last_two[0] == last_two[1] && last_two[0] == n
        }
    };
    QuasicyclicFixedReport {
        fixed,
        levels,
        stable_ok,
    }
}

/// Implication check on a quasicyclic instance: a finite twisted class
/// count forces a finite fixed subgroup.
pub fn fin_fix_check_quasicyclic(endo: &QuasicyclicEndo) -> crate::abelian::FinFixReport {
    let r = quasicyclic_r(endo);
    let fixed = quasicyclic_fixed(endo);
    let implication_ok = !r.is_finite() || fixed.is_finite();
    crate::abelian::FinFixReport {
        reidemeister: r,
        fixed,
        implication_ok,
    }
}

/// An element of `(ℤ[1/p]/ℤ)^d`: the vector `coords / p^level`.
#[derive(Clone, Debug, serde::Deserialize, serde::Serialize)]
pub struct PruferElement {
    pub level: u32,
    pub coords: Vec<i64>,
}

/// The two supported subgroup descriptions.
#[derive(Clone, Debug, serde::Deserialize, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PruferSubgroup {
    /// Finitely many generators, each a torsion element.
    Generators(Vec<PruferElement>),
    /// The image of `N: (Z(p^∞))^s → (Z(p^∞))^d`, a divisible subgroup.
    Image(Vec<Vec<i64>>),
}

/// Either the subgroup is finite, or the quotient is again quasicyclic of
/// strictly smaller dimension.
#[derive(Debug, PartialEq, Eq)]
pub enum QuotientDichotomy {
    FiniteSubgroup { order: BigUint },
    QuasicyclicQuotient { dimension: usize },
}

pub fn quasicyclic_quotient(
    p: u64,
    d: usize,
    subgroup: &PruferSubgroup,
) -> Result<QuotientDichotomy> {
    if !is_prime(p) {
        return Err(Error::Parse(format!("{p} is not prime")));
    }
    match subgroup {
        PruferSubgroup::Generators(gens) => {
            for g in gens {
                if g.coords.len() != d {
                    return Err(Error::UnsupportedSubgroupForm(format!(
                        "generator coordinates must have length {d}"
                    )));
                }
            }
            // all generators live in the level-k truncation (ℤ/p^k)^d
            let level = gens.iter().map(|g| g.level).max().unwrap_or(0);
            let modulus = BigUint::from(p).pow(level);
            if modulus.clone().pow(d as u32) > BigUint::from(100_000_000u64) {
                return Err(Error::UnsupportedSubgroupForm(
                    "generator levels beyond the enumeration budget".into(),
                ));
            }
            let m = u64::try_from(modulus).expect("budget keeps modulus small");
            let normalized: Vec<Vec<u64>> = gens
                .iter()
                .map(|g| {
                    let scale = p.pow(level - g.level);
                    g.coords
                        .iter()
                        .map(|&c| {
                            let c = ((c % m as i64) + m as i64) as u64 % m;
                            c * scale % m
                        })
                        .collect()
                })
                .collect();
            // additive closure by breadth-first sums
            let mut seen = std::collections::HashSet::new();
            seen.insert(vec![0u64; d]);
            let mut queue = vec![vec![0u64; d]];
            let mut head = 0;
            while head < queue.len() {
                let x = queue[head].clone();
                head += 1;
                for g in &normalized {
                    let y: Vec<u64> = x.iter().zip(g).map(|(&a, &b)| (a + b) % m).collect();
                    if seen.insert(y.clone()) {
                        queue.push(y);
                    }
                }
            }
            Ok(QuotientDichotomy::FiniteSubgroup {
                order: BigUint::from(seen.len()),
            })
        }
        PruferSubgroup::Image(n_rows) => {
            if n_rows.len() != d {
                return Err(Error::UnsupportedSubgroupForm(format!(
                    "image matrix must have {d} rows"
                )));
            }
            let n = IMat::from_i64_rows(n_rows);
            let rank = smith_normal_form(&n).rank();
            let dimension = d - rank;
            if rank >= 1 {
                assert!(dimension < d);
            }
            if rank >= 1 {
                verify_quotient_growth(p, d, &n, dimension)?;
            }
            Ok(QuotientDichotomy::QuasicyclicQuotient { dimension })
        }
    }
}

/// Structure check at truncation levels: the quotient size at level k is
/// `p^{kd} / |Im(N mod p^k)|`, and for k past every divisor valuation it
/// grows by exactly `p^{d'}` per level.
fn verify_quotient_growth(p: u64, d: usize, n: &IMat, expected_dim: usize) -> Result<()> {
    let snf = smith_normal_form(n);
    let valuations: Vec<u32> = snf
        .diagonal()
        .iter()
        .filter(|v| !v.is_zero())
        .map(|v| valuation(v.abs().to_biguint().expect("positive"), p))
        .collect();
    let start = valuations.iter().copied().max().unwrap_or(0);
    let log_quotient = |k: u32| -> u64 {
        // log_p |Q_k| = k·d − Σ (k − min(b_i, k))
        let image: u64 = valuations
            .iter()
            .map(|&b| (k as u64).saturating_sub(b as u64))
            .sum();
        k as u64 * d as u64 - image
    };
    let growth = log_quotient(start + 2) - log_quotient(start + 1);
    if growth != expected_dim as u64 {
        return Err(Error::Internal(format!(
            "quotient growth {growth} does not match dimension {expected_dim}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn endo(p: u64, d: usize, m: &[Vec<i64>]) -> QuasicyclicEndo {
        QuasicyclicEndo::new(p, d, m).unwrap()
    }

    #[test]
    fn two_adic_tripling() {
        let q = endo(2, 1, &[vec![3]]);
        assert!(q.is_automorphism());
        assert_eq!(quasicyclic_fixed(&q), Cardinal::finite(2));
        assert_eq!(quasicyclic_r(&q), Cardinal::finite(1));
        // the two fixed points are 0 and 1/2: check by level enumeration
        assert_eq!(truncation_fixed_count(&q, 4), BigUint::from(2u8));
        let report = quasicyclic_fixed_checked(&q, 4);
        assert!(report.stable_ok);
        assert_eq!(report.levels[&2], BigUint::from(2u8));
    }

    #[test]
    fn identity_has_infinite_fixed_set() {
        let q = endo(2, 1, &[vec![1]]);
        assert_eq!(quasicyclic_fixed(&q), Cardinal::Infinite);
        assert_eq!(quasicyclic_r(&q), Cardinal::Infinite);
        let report = quasicyclic_fixed_checked(&q, 4);
        assert!(report.stable_ok, "counts must strictly grow: {:?}", report.levels);
    }

    #[test]
    fn three_adic_example() {
        let q = endo(3, 1, &[vec![4]]);
        assert_eq!(quasicyclic_fixed(&q), Cardinal::finite(3));
        assert_eq!(quasicyclic_r(&q), Cardinal::finite(1));
        assert_eq!(truncation_fixed_count(&q, 4), BigUint::from(3u8));
    }

    #[test]
    fn formula_matches_enumeration_two_dimensional() {
        let cases = [
            endo(2, 2, &[vec![3, 2], vec![4, 5]]),
            endo(3, 2, &[vec![4, 3], vec![0, 7]]),
            endo(5, 2, &[vec![6, 5], vec![5, 6]]),
        ];
        for q in cases {
            let report = quasicyclic_fixed_checked(&q, 4);
            assert!(report.stable_ok, "p={} levels {:?}", q.p, report.levels);
        }
    }

    #[test]
    fn automorphism_detection() {
        assert!(endo(2, 1, &[vec![3]]).is_automorphism());
        assert!(!endo(2, 1, &[vec![2]]).is_automorphism());
        assert!(endo(5, 2, &[vec![1, 1], vec![0, 2]]).is_automorphism());
    }

    #[test]
    fn finite_subgroup_from_generators() {
        // ⟨1/8⟩ in Z(2^∞) has order 8
        let sub = PruferSubgroup::Generators(vec![PruferElement {
            level: 3,
            coords: vec![1],
        }]);
        let result = quasicyclic_quotient(2, 1, &sub).unwrap();
        assert_eq!(
            result,
            QuotientDichotomy::FiniteSubgroup {
                order: BigUint::from(8u8)
            }
        );
    }

    #[test]
    fn zero_image_keeps_full_dimension() {
        let sub = PruferSubgroup::Image(vec![vec![0], vec![0]]);
        let result = quasicyclic_quotient(2, 2, &sub).unwrap();
        assert_eq!(result, QuotientDichotomy::QuasicyclicQuotient { dimension: 2 });
    }

    #[test]
    fn coordinate_image_drops_dimension() {
        let sub = PruferSubgroup::Image(vec![vec![1], vec![0]]);
        let result = quasicyclic_quotient(3, 2, &sub).unwrap();
        assert_eq!(result, QuotientDichotomy::QuasicyclicQuotient { dimension: 1 });

        // a p-multiple image is still the whole divisible line
        let sub = PruferSubgroup::Image(vec![vec![3], vec![0]]);
        let result = quasicyclic_quotient(3, 2, &sub).unwrap();
        assert_eq!(result, QuotientDichotomy::QuasicyclicQuotient { dimension: 1 });
    }

    #[test]
    fn mixed_generator_levels_close_correctly() {
        // ⟨(1/2, 0), (0, 1/4)⟩ in Z(2^∞)²: order 2·4
        let sub = PruferSubgroup::Generators(vec![
            PruferElement { level: 1, coords: vec![1, 0] },
            PruferElement { level: 2, coords: vec![0, 1] },
        ]);
        let result = quasicyclic_quotient(2, 2, &sub).unwrap();
        assert_eq!(
            result,
            QuotientDichotomy::FiniteSubgroup {
                order: BigUint::from(8u8)
            }
        );
    }

    #[test]
    fn fin_fix_on_quasicyclic_instances() {
        let report = fin_fix_check_quasicyclic(&endo(2, 1, &[vec![3]]));
        assert_eq!(report.reidemeister, Cardinal::finite(1));
        assert_eq!(report.fixed, Cardinal::finite(2));
        assert!(report.implication_ok);

        let report = fin_fix_check_quasicyclic(&endo(2, 1, &[vec![1]]));
        assert_eq!(report.reidemeister, Cardinal::Infinite);
        assert!(report.implication_ok);
    }

    #[test]
    fn bad_inputs_are_rejected() {
        assert!(QuasicyclicEndo::new(4, 1, &[vec![1]]).is_err());
        assert!(QuasicyclicEndo::new(2, 2, &[vec![1]]).is_err());
        let sub = PruferSubgroup::Image(vec![vec![1]]);
        assert!(matches!(
            quasicyclic_quotient(2, 2, &sub),
            Err(Error::UnsupportedSubgroupForm(_))
        ));
    }
}
