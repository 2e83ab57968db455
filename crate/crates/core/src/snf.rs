//! Exact integer matrices and the Smith normal form with all four
//! transformation matrices, over arbitrary-precision integers.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Dense row-major matrix over the integers.
#[derive(Clone, PartialEq, Eq)]
pub struct IMat {
    rows: usize,
    cols: usize,
    a: Vec<BigInt>,
}

impl IMat {
    pub fn zero(rows: usize, cols: usize) -> IMat {
        IMat {
            rows,
            cols,
            a: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> IMat {
        let mut m = IMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> IMat {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IMat {
            rows: r,
            cols: c,
            a: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> IMat {
        IMat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    pub fn mul(&self, other: &IMat) -> IMat {
        assert_eq!(self.cols, other.rows);
        let mut out = IMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] += add;
                }
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &IMat) -> IMat {
        assert_eq!(self.rows, other.rows);
        let mut out = IMat::zero(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    pub fn map_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    /// Fraction-free determinant (Bareiss). Independent of the SNF route.
    pub fn det_bareiss(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m: Vec<Vec<BigInt>> = (0..n).map(|i| (0..n).map(|j| self[(i, j)].clone()).collect()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let Some(swap) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                    return BigInt::zero();
                };
                m.swap(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                    m[i][j] = num / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        sign * m[n - 1][n - 1].clone()
    }
}

impl std::ops::Index<(usize, usize)> for IMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.a[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.a[i * self.cols + j]
    }
}

impl std::fmt::Debug for IMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// `U · M · V = D` with U, V unimodular and D diagonal with a divisibility
/// chain `d_1 | d_2 | …`, nonnegative entries, zeros trailing.
pub struct Snf {
    pub u: IMat,
    pub u_inv: IMat,
    pub v: IMat,
    pub v_inv: IMat,
    pub d: IMat,
}

impl Snf {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }

    /// Count of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }

    /// Diagonal entries larger than one, i.e. the nontrivial invariant
    /// factors of the cokernel.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal()
            .into_iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .collect()
    }
}

struct Worker {
    m: IMat,
    u: IMat,
    u_inv: IMat,
    v: IMat,
    v_inv: IMat,
}

impl Worker {
    // row_i ← row_i + c·row_j, mirrored into U (and inversely into U⁻¹)
    fn row_add(&mut self, i: usize, j: usize, c: &BigInt) {
        for col in 0..self.m.cols {
            let add = c * &self.m[(j, col)];
            self.m[(i, col)] += add;
        }
        for col in 0..self.u.cols {
            let add = c * &self.u[(j, col)];
            self.u[(i, col)] += add;
        }
        for row in 0..self.u_inv.rows {
            let sub = c * &self.u_inv[(row, i)];
            self.u_inv[(row, j)] -= sub;
        }
    }

    fn col_add(&mut self, i: usize, j: usize, c: &BigInt) {
        for row in 0..self.m.rows {
            let add = c * &self.m[(row, j)];
            self.m[(row, i)] += add;
        }
        for row in 0..self.v.rows {
            let add = c * &self.v[(row, j)];
            self.v[(row, i)] += add;
        }
        for col in 0..self.v_inv.cols {
            let sub = c * &self.v_inv[(i, col)];
            self.v_inv[(j, col)] -= sub;
        }
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for col in 0..self.m.cols {
            let tmp = self.m[(i, col)].clone();
            self.m[(i, col)] = self.m[(j, col)].clone();
            self.m[(j, col)] = tmp;
        }
        for col in 0..self.u.cols {
            let tmp = self.u[(i, col)].clone();
            self.u[(i, col)] = self.u[(j, col)].clone();
            self.u[(j, col)] = tmp;
        }
        for row in 0..self.u_inv.rows {
            let tmp = self.u_inv[(row, i)].clone();
            self.u_inv[(row, i)] = self.u_inv[(row, j)].clone();
            self.u_inv[(row, j)] = tmp;
        }
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in 0..self.m.rows {
            let tmp = self.m[(row, i)].clone();
            self.m[(row, i)] = self.m[(row, j)].clone();
            self.m[(row, j)] = tmp;
        }
        for row in 0..self.v.rows {
            let tmp = self.v[(row, i)].clone();
            self.v[(row, i)] = self.v[(row, j)].clone();
            self.v[(row, j)] = tmp;
        }
        for col in 0..self.v_inv.cols {
            let tmp = self.v_inv[(i, col)].clone();
            self.v_inv[(i, col)] = self.v_inv[(j, col)].clone();
            self.v_inv[(j, col)] = tmp;
        }
    }

    fn row_negate(&mut self, i: usize) {
        for col in 0..self.m.cols {
            let v = -self.m[(i, col)].clone();
            self.m[(i, col)] = v;
        }
        for col in 0..self.u.cols {
            let v = -self.u[(i, col)].clone();
            self.u[(i, col)] = v;
        }
        for row in 0..self.u_inv.rows {
            let v = -self.u_inv[(row, i)].clone();
            self.u_inv[(row, i)] = v;
        }
    }
}

/// Textbook elimination: move the least nonzero entry to the pivot, kill its
/// row and column by Euclidean steps, then repair divisibility before
/// advancing.
pub fn smith_normal_form(input: &IMat) -> Snf {
    let (rows, cols) = (input.rows, input.cols);
    let mut w = Worker {
        m: input.clone(),
        u: IMat::identity(rows),
        u_inv: IMat::identity(rows),
        v: IMat::identity(cols),
        v_inv: IMat::identity(cols),
    };
    let limit = rows.min(cols);
    let mut t = 0;
    while t < limit {
        let Some((pi, pj)) = smallest_nonzero(&w.m, t) else {
            break;
        };
        w.row_swap(t, pi);
        w.col_swap(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if w.m[(i, t)].is_zero() {
                    continue;
                }
                let q = div_nearest(&w.m[(i, t)], &w.m[(t, t)]);
                w.row_add(i, t, &(-q));
                if !w.m[(i, t)].is_zero() {
                    // remainder became the new, strictly smaller pivot
                    w.row_swap(t, i);
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if w.m[(t, j)].is_zero() {
                    continue;
                }
                let q = div_nearest(&w.m[(t, j)], &w.m[(t, t)]);
                w.col_add(j, t, &(-q));
                if !w.m[(t, j)].is_zero() {
                    w.col_swap(t, j);
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility repair: fold a misaligned entry into the pivot column
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(&w.m[(i, j)] % &w.m[(t, t)]).is_zero());
            match offender {
                Some((i, _)) => {
                    w.row_add(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if w.m[(t, t)].is_negative() {
            w.row_negate(t);
        }
        t += 1;
    }
    let snf = Snf {
        u: w.u,
        u_inv: w.u_inv,
        v: w.v,
        v_inv: w.v_inv,
        d: w.m,
    };
    debug_assert!(snf_is_canonical(&snf));
    snf
}

fn snf_is_canonical(snf: &Snf) -> bool {
    let diag = snf.diagonal();
    for pair in diag.windows(2) {
        if pair[0].is_negative() || pair[1].is_negative() {
            return false;
        }
        if pair[1].is_zero() {
            continue;
        }
        if pair[0].is_zero() || !(&pair[1] % &pair[0]).is_zero() {
            return false;
        }
    }
    for i in 0..snf.d.rows() {
        for j in 0..snf.d.cols() {
            if i != j && !snf.d[(i, j)].is_zero() {
                return false;
            }
        }
    }
    true
}

fn smallest_nonzero(m: &IMat, from: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in from..m.rows {
        for j in from..m.cols {
            if m[(i, j)].is_zero() {
                continue;
            }
            match best {
                Some(b) if m[(b.0, b.1)].abs() <= m[(i, j)].abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

/// Quotient rounded toward the nearest integer, so the remainder has at most
/// half the pivot's magnitude.
fn div_nearest(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut q, r) = num_integer::Integer::div_rem(a, b);
    let two_r = BigInt::from(2) * r.abs();
    if two_r > b.abs() {
        if (a.is_negative()) == (b.is_negative()) {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}

/// Is `x` in the column span of `lattice` over the integers?
pub fn lattice_contains(snf_of_lattice: &Snf, x: &[BigInt]) -> bool {
    let y = snf_of_lattice.u.map_vec(x);
    let diag = snf_of_lattice.diagonal();
    for (i, val) in y.iter().enumerate() {
        let d = diag.get(i).cloned().unwrap_or_else(BigInt::zero);
        if d.is_zero() {
            if !val.is_zero() {
                return false;
            }
        } else if !(val % &d).is_zero() {
            return false;
        }
    }
    true
}

/// Basis of the integer kernel of `m`, as the columns of the returned matrix.
pub fn kernel_basis(m: &IMat) -> IMat {
    let snf = smith_normal_form(m);
    let rank = snf.rank();
    let mut out = IMat::zero(m.cols, m.cols - rank);
    for (k, j) in (rank..m.cols).enumerate() {
        for i in 0..m.cols {
            out[(i, k)] = snf.v[(i, j)].clone();
        }
    }
    out
}

/// Solves `m · a = x` exactly for full-column-rank `m`; `None` when `x` is
/// not in the column span.
pub fn solve_exact(m: &IMat, x: &[BigInt]) -> Option<Vec<BigInt>> {
    let snf = smith_normal_form(m);
    let y = snf.u.map_vec(x);
    let diag = snf.diagonal();
    let mut c = vec![BigInt::zero(); m.cols];
    for (i, val) in y.iter().enumerate() {
        if i < diag.len() && !diag[i].is_zero() {
            let (q, r) = num_integer::Integer::div_rem(val, &diag[i]);
            if !r.is_zero() {
                return None;
            }
            c[i] = q;
        } else if !val.is_zero() {
            return None;
        }
    }
    Some(snf.v.map_vec(&c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check_round_trip(m: &IMat) {
        let snf = smith_normal_form(m);
        assert_eq!(snf.u.mul(m).mul(&snf.v), snf.d, "U·M·V = D");
        assert_eq!(snf.u.mul(&snf.u_inv), IMat::identity(m.rows()));
        assert_eq!(snf.v.mul(&snf.v_inv), IMat::identity(m.cols()));
        assert_eq!(snf.u.det_bareiss().abs(), BigInt::one());
        assert_eq!(snf.v.det_bareiss().abs(), BigInt::one());
        assert!(snf_is_canonical(&snf));
    }

    #[test]
    fn identity_matrix() {
        let m = IMat::identity(3);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.d, IMat::identity(3));
        check_round_trip(&m);
    }

    #[test]
    fn worked_two_by_two() {
        let m = IMat::from_i64_rows(&[vec![2, 4], vec![6, 8]]);
        let snf = smith_normal_form(&m);
        let diag = snf.diagonal();
        // d1 = gcd of entries, d1·d2 = |det|
        assert_eq!(diag[0], BigInt::from(2));
        assert_eq!(diag[1], BigInt::from(4));
        assert_eq!(m.det_bareiss(), BigInt::from(-8));
        check_round_trip(&m);
    }

    #[test]
    fn zero_matrix() {
        let m = IMat::zero(2, 3);
        let snf = smith_normal_form(&m);
        assert!(snf.diagonal().iter().all(|d| d.is_zero()));
        check_round_trip(&m);
    }

    #[test]
    fn empty_matrices() {
        check_round_trip(&IMat::zero(0, 0));
        check_round_trip(&IMat::zero(3, 0));
        check_round_trip(&IMat::zero(0, 3));
    }

    #[test]
    fn kernel_and_solve() {
        let m = IMat::from_i64_rows(&[vec![2, 0, -2], vec![0, 3, 3]]);
        let k = kernel_basis(&m);
        assert_eq!(k.cols(), 1);
        let prod = m.mul(&k);
        assert!((0..prod.rows()).all(|i| prod[(i, 0)].is_zero()));

        let full = IMat::from_i64_rows(&[vec![2, 1], vec![0, 3], vec![4, 0]]);
        let target = full.map_vec(&[BigInt::from(5), BigInt::from(-2)]);
        let sol = solve_exact(&full, &target).unwrap();
        assert_eq!(sol, vec![BigInt::from(5), BigInt::from(-2)]);
        assert!(solve_exact(&full, &[1.into(), 1.into(), 1.into()]).is_none());
    }

    #[test]
    fn membership_in_lattice() {
        let lat = IMat::from_i64_rows(&[vec![2, 0], vec![0, 3]]);
        let snf = smith_normal_form(&lat);
        assert!(lattice_contains(&snf, &[BigInt::from(4), BigInt::from(-3)]));
        assert!(!lattice_contains(&snf, &[BigInt::from(1), BigInt::from(0)]));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn snf_round_trip_random(rows in 1usize..=6, cols in 1usize..=6, seed in any::<u64>()) {
            // cheap deterministic fill from the seed
            let mut state = seed | 1;
            let mut next = || {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((state >> 33) % 41) as i64 - 20
            };
            let m = IMat::from_i64_rows(
                &(0..rows).map(|_| (0..cols).map(|_| next()).collect()).collect::<Vec<_>>(),
            );
            check_round_trip(&m);
        }

        #[test]
        fn square_snf_product_matches_determinant(n in 1usize..=4, seed in any::<u64>()) {
            let mut state = seed | 1;
            let mut next = || {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((state >> 33) % 21) as i64 - 10
            };
            let m = IMat::from_i64_rows(
                &(0..n).map(|_| (0..n).map(|_| next()).collect()).collect::<Vec<_>>(),
            );
            let det = m.det_bareiss().abs();
            let product: BigInt = smith_normal_form(&m).diagonal().iter().product();
            prop_assert_eq!(det, product.abs());
        }
    }
}
