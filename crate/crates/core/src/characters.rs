//! Irreducible character tables over a prime field, the row permutation an
//! automorphism induces, and the fixed-row count matched against the twisted
//! class count.
//!
//! The prime is chosen with p ≡ 1 (mod exponent) and p > 2·√|G|, so the
//! mod-p table is in degree-preserving bijection with the complex one and
//! row equality is preserved; counting fixed rows therefore needs no
//! characteristic-zero lift.

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupRef};
use crate::modp::{Fp, FpMat};
use crate::morphism::Automorphism;
use crate::snf::{smith_normal_form, IMat};
use crate::twisted::reidemeister_number;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct ClassData {
    pub rep: u32,
    pub size: u32,
}

/// One row per irreducible character, with values in F_p in canonical class
/// order; rows sorted by (degree, values).
#[derive(Clone, Debug, Serialize)]
pub struct ModPCharacterTable {
    pub prime: u64,
    pub classes: Vec<ClassData>,
    pub degrees: Vec<u64>,
    pub rows: Vec<Vec<u64>>,
}

impl ModPCharacterTable {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }
}

/// Smallest prime p ≡ 1 (mod e) with p² > 4n.
fn pick_prime(exponent: u64, order: usize) -> Result<u64> {
    let is_prime = |q: u64| -> bool {
        if q < 2 {
            return false;
        }
        let mut f = 2;
        while f * f <= q {
            if q % f == 0 {
                return false;
            }
            f += 1;
        }
        true
    };
    let mut p = 1u64;
    loop {
        p += exponent;
        if p > 100_000_000 {
            return Err(Error::PrimeSearchFailed);
        }
        if p * p > 4 * order as u64 && is_prime(p) {
            return Ok(p);
        }
    }
}

pub fn character_table(group: &GroupRef, limits: &Limits) -> Result<ModPCharacterTable> {
    let n = group.order();
    if n > limits.chartable_cap {
        return Err(Error::CapExceeded {
            cap: limits.chartable_cap,
        });
    }
    let p = pick_prime(group.exponent(), n)?;
    let field = Fp::new(p);
    let cc = group.conjugacy_classes();
    let classes: Vec<ClassData> = cc
        .classes
        .iter()
        .map(|c| ClassData {
            rep: c[0],
            size: c.len() as u32,
        })
        .collect();

    let (degrees, mut rows) = if group.is_abelian() {
        abelian_rows(group, field)?
    } else {
        dixon_rows(group, field)?
    };

    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.sort_by(|&a, &b| degrees[a].cmp(&degrees[b]).then_with(|| rows[a].cmp(&rows[b])));
    let degrees: Vec<u64> = order.iter().map(|&i| degrees[i]).collect();
    rows = order.iter().map(|&i| rows[i].clone()).collect();

    let table = ModPCharacterTable {
        prime: p,
        classes,
        degrees,
        rows,
    };
    validate_table(group, &table)?;
    Ok(table)
}

fn validate_table(group: &FiniteGroup, table: &ModPCharacterTable) -> Result<()> {
    let n = group.order() as u64;
    let square_sum: u64 = table.degrees.iter().map(|d| d * d).sum();
    if square_sum != n {
        return Err(Error::Internal(format!(
            "degree squares sum to {square_sum}, expected {n}"
        )));
    }
    if table.rows.len() != table.classes.len() {
        return Err(Error::Internal("row count must equal class count".into()));
    }
    for i in 0..table.rows.len() {
        for j in 0..i {
            if table.rows[i] == table.rows[j] {
                return Err(Error::Internal("duplicate character rows".into()));
            }
        }
    }
    Ok(())
}

/// Dual-group construction for abelian groups: decompose into independent
/// cyclic factors via the Smith normal form of the relation lattice of a
/// short generating list, then read the characters off root-of-unity powers.
fn abelian_rows(group: &GroupRef, field: Fp) -> Result<(Vec<u64>, Vec<Vec<u64>>)> {
    let n = group.order();
    let gens = greedy_max_order_generators(group);
    let orders: Vec<u64> = gens.iter().map(|&g| group.element_order(g) as u64).collect();
    let tuple_space: u64 = orders.iter().product();
    if tuple_space > 10_000_000 {
        return Err(Error::Internal(
            "relation enumeration space unexpectedly large".into(),
        ));
    }

    // powers of each generator
    let powers: Vec<Vec<u32>> = gens
        .iter()
        .zip(&orders)
        .map(|(&g, &e)| {
            let mut row = vec![0u32; e as usize];
            for k in 1..e as usize {
                row[k] = group.mul(row[k - 1], g);
            }
            row
        })
        .collect();

    // kernel tuples of the evaluation map (Z_e1 × … × Z_et) → G
    let t = gens.len();
    let mut kernel_cols: Vec<Vec<BigInt>> = Vec::new();
    let mut tuple = vec![0u64; t];
    loop {
        let elem = tuple
            .iter()
            .enumerate()
            .fold(0u32, |acc, (i, &a)| group.mul(acc, powers[i][a as usize]));
        if elem == 0 && tuple.iter().any(|&a| a != 0) {
            kernel_cols.push(tuple.iter().map(|&a| BigInt::from(a)).collect());
        }
        // odometer
        let mut i = 0;
        loop {
            if i == t {
                break;
            }
            tuple[i] += 1;
            if tuple[i] < orders[i] {
                break;
            }
            tuple[i] = 0;
            i += 1;
        }
        if i == t {
            break;
        }
    }

    // relation lattice: diag(e_i) columns plus the kernel tuples
    let mut lattice = IMat::zero(t, t + kernel_cols.len());
    for i in 0..t {
        lattice[(i, i)] = BigInt::from(orders[i]);
    }
    for (j, col) in kernel_cols.iter().enumerate() {
        for i in 0..t {
            lattice[(i, t + j)] = col[i].clone();
        }
    }
    let snf = smith_normal_form(&lattice);
    let diag = snf.diagonal();

    // independent basis h_j with h_j of order d_j
    let mut factor_orders: Vec<u64> = Vec::new();
    let mut basis: Vec<u32> = Vec::new();
    for (j, d) in diag.iter().enumerate() {
        assert!(!d.is_zero(), "finite group has a full-rank relation lattice");
        let d_u64: u64 = d.to_string().parse().expect("small invariant factor");
        let mut h = 0u32;
        for i in 0..t {
            let expo = modulus(&snf.u_inv[(i, j)], orders[i]);
            h = group.mul(h, powers[i][expo as usize]);
        }
        if d.is_one() {
            assert_eq!(h, 0, "unit factor must carry the identity");
            continue;
        }
        assert_eq!(group.element_order(h) as u64, d_u64);
        factor_orders.push(d_u64);
        basis.push(h);
    }
    let product: u64 = factor_orders.iter().product();
    assert_eq!(product, n as u64, "independent factors must fill the group");

    // coordinates of every element in the basis
    let r = basis.len();
    let mut coords = vec![vec![0u64; r]; n];
    let mut covered = vec![false; n];
    let mut c = vec![0u64; r];
    loop {
        let elem = c
            .iter()
            .enumerate()
            .fold(0u32, |acc, (j, &a)| {
                let mut x = acc;
                for _ in 0..a {
                    x = group.mul(x, basis[j]);
                }
                x
            });
        assert!(!covered[elem as usize], "basis tuples must hit each element once");
        covered[elem as usize] = true;
        coords[elem as usize] = c.clone();
        let mut i = 0;
        loop {
            if i == r {
                break;
            }
            c[i] += 1;
            if c[i] < factor_orders[i] {
                break;
            }
            c[i] = 0;
            i += 1;
        }
        if i == r {
            break;
        }
    }

    let zetas: Vec<u64> = factor_orders.iter().map(|&d| field.root_of_unity(d)).collect();
    let class_reps: Vec<u32> = group
        .conjugacy_classes()
        .classes
        .iter()
        .map(|c| c[0])
        .collect();

    let mut rows = Vec::with_capacity(n);
    let mut chi = vec![0u64; r];
    loop {
        let row: Vec<u64> = class_reps
            .iter()
            .map(|&g| {
                let mut value = 1u64;
                for j in 0..r {
                    let expo = chi[j] * coords[g as usize][j] % factor_orders[j];
                    value = field.mul(value, field.pow(zetas[j], expo));
                }
                value
            })
            .collect();
        rows.push(row);
        let mut i = 0;
        loop {
            if i == r {
                break;
            }
            chi[i] += 1;
            if chi[i] < factor_orders[i] {
                break;
            }
            chi[i] = 0;
            i += 1;
        }
        if i == r {
            break;
        }
    }
    Ok((vec![1; rows.len()], rows))
}

fn modulus(v: &BigInt, m: u64) -> u64 {
    let m_big = BigInt::from(m);
    let r = ((v % &m_big) + &m_big) % &m_big;
    r.to_string().parse().expect("reduced residue fits u64")
}

/// Generators picked by maximal element order (ties by id); each pick
/// shrinks the remaining index, and keeps the relation tuple space close to
/// the group order.
fn greedy_max_order_generators(group: &FiniteGroup) -> Vec<u32> {
    let mut gens: Vec<u32> = Vec::new();
    let mut budget = usize::MAX;
    let mut closure = vec![0u32];
    while closure.len() < group.order() {
        let orders = group.element_orders();
        let next = (0..group.order() as u32)
            .filter(|g| closure.binary_search(g).is_err())
            .max_by_key(|&g| (orders[g as usize], std::cmp::Reverse(g)))
            .expect("closure is proper");
        gens.push(next);
        closure = crate::subgroup::close_subset(group, &gens, &mut budget)
            .expect("unbudgeted closure");
    }
    gens
}

/// Class-algebra eigenvector computation: the structure-constant matrices
/// commute and share k one-dimensional common eigenspaces; split the space
/// by one operator at a time in class order, then recover degrees and rows
/// from the normalized eigenvectors.
fn dixon_rows(group: &GroupRef, field: Fp) -> Result<(Vec<u64>, Vec<Vec<u64>>)> {
    let cc = group.conjugacy_classes();
    let k = cc.classes.len();
    let n = group.order() as u64;
    let reps: Vec<u32> = cc.classes.iter().map(|c| c[0]).collect();
    let sizes: Vec<u64> = cc.classes.iter().map(|c| c.len() as u64).collect();
    let inv_class: Vec<usize> =
        reps.iter().map(|&r| cc.class_of[group.inv(r) as usize] as usize).collect();

    // m_i[j][z] = #{x ∈ C_i : x⁻¹·rep_z ∈ C_j}
    let matrices: Vec<FpMat> = (0..k)
        .map(|i| {
            let mut m = FpMat::zero(k, k);
            for (z, &rep_z) in reps.iter().enumerate() {
                for &x in &cc.classes[i] {
                    let y = group.mul(group.inv(x), rep_z);
                    let j = cc.class_of[y as usize] as usize;
                    m[(j, z)] = field.add(m[(j, z)], 1);
                }
            }
            m
        })
        .collect();

    let mut spaces: Vec<FpMat> = vec![FpMat::identity(k)];
    for m_i in matrices.iter().skip(1) {
        if spaces.iter().all(|s| s.cols == 1) {
            break;
        }
        let mut next = Vec::with_capacity(spaces.len());
        for basis in spaces {
            if basis.cols == 1 {
                next.push(basis);
                continue;
            }
            let image = m_i.mul(&basis, field);
            let restricted = basis.solve_full_rank(&image, field);
            let mut split_dim = 0;
            for lambda in 0..field.p {
                let mut shifted = restricted.clone();
                for d in 0..shifted.rows {
                    shifted[(d, d)] = field.sub(shifted[(d, d)], lambda);
                }
                let kernel = shifted.kernel_basis(field);
                if kernel.cols > 0 {
                    split_dim += kernel.cols;
                    next.push(basis.mul(&kernel, field));
                }
                if split_dim == basis.cols {
                    break;
                }
            }
            if split_dim != basis.cols {
                return Err(Error::Internal(
                    "class-sum operator failed to split its subspace".into(),
                ));
            }
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.cols != 1) {
        return Err(Error::Internal(
            "common eigenspaces did not separate into lines".into(),
        ));
    }

    let mut degrees = Vec::with_capacity(k);
    let mut rows = Vec::with_capacity(k);
    for line in spaces {
        let mut omega: Vec<u64> = (0..k).map(|i| line[(i, 0)]).collect();
        if omega[0] == 0 {
            return Err(Error::Internal("eigenvector vanishes on the identity".into()));
        }
        let scale = field.inv(omega[0]);
        for w in omega.iter_mut() {
            *w = field.mul(*w, scale);
        }
        // d² = |G| / Σ_i ω_i ω_{i*} / |C_i|
        let mut s = 0u64;
        for i in 0..k {
            let term = field.mul(omega[i], omega[inv_class[i]]);
            s = field.add(s, field.mul(term, field.inv(sizes[i] % field.p)));
        }
        if s == 0 {
            return Err(Error::Internal("degenerate norm sum in degree recovery".into()));
        }
        let d_squared = field.mul(n % field.p, field.inv(s));
        let degree = (1..=(field.p - 1) / 2)
            .find(|&d| field.mul(d, d) == d_squared)
            .ok_or_else(|| Error::Internal("no square root below p/2 for a degree".into()))?;
        let row: Vec<u64> = (0..k)
            .map(|i| field.mul(field.mul(degree, omega[i]), field.inv(sizes[i] % field.p)))
            .collect();
        degrees.push(degree);
        rows.push(row);
    }
    Ok((degrees, rows))
}

/// The permutation of conjugacy classes induced by an automorphism.
#[derive(Clone, Debug)]
pub struct ClassPermutation {
    pub perm: Vec<usize>,
}

pub fn class_permutation(group: &GroupRef, phi: &Automorphism) -> ClassPermutation {
    let cc = group.conjugacy_classes();
    let perm: Vec<usize> = cc
        .classes
        .iter()
        .map(|c| cc.class_of[phi.apply(c[0]) as usize] as usize)
        .collect();
    for g in 0..group.order() as u32 {
        debug_assert_eq!(
            cc.class_of[phi.apply(g) as usize] as usize,
            perm[cc.class_of[g as usize] as usize],
            "automorphisms permute whole classes"
        );
    }
    ClassPermutation { perm }
}

/// Rows χ with χ∘φ = χ, i.e. χ(perm(c)) = χ(c) for every class index c.
pub fn fixed_character_count(table: &ModPCharacterTable, cp: &ClassPermutation) -> usize {
    table
        .rows
        .iter()
        .filter(|row| cp.perm.iter().enumerate().all(|(c, &pc)| row[pc] == row[c]))
        .count()
}

#[derive(Debug)]
pub struct TbftReport {
    pub reidemeister: usize,
    pub fixed_rows: usize,
}

impl TbftReport {
    pub fn ok(&self) -> bool {
        self.reidemeister == self.fixed_rows
    }
}

/// The finite-group equality: the twisted class count of φ equals the number
/// of φ̂-fixed irreducible character rows. Both sides are recomputed.
pub fn verify_tbft_finite(
    group: &GroupRef,
    phi: &Automorphism,
    limits: &Limits,
) -> Result<TbftReport> {
    let table = character_table(group, limits)?;
    let cp = class_permutation(group, phi);
    Ok(TbftReport {
        reidemeister: reidemeister_number(group, phi),
        fixed_rows: fixed_character_count(&table, &cp),
    })
}
