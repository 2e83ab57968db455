//! Small dense linear algebra over a prime field F_p (p < 2^31).

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Fp {
        assert!(p >= 2 && p < (1 << 31));
        Fp { p }
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b % self.p) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        base %= self.p;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "division by zero mod p");
        self.pow(a, self.p - 2)
    }

    /// The smallest primitive root mod p.
    pub fn primitive_root(&self) -> u64 {
        let phi = self.p - 1;
        let mut factors = Vec::new();
        let mut rest = phi;
        let mut q = 2;
        while q * q <= rest {
            if rest % q == 0 {
                factors.push(q);
                while rest % q == 0 {
                    rest /= q;
                }
            }
            q += 1;
        }
        if rest > 1 {
            factors.push(rest);
        }
        (2..self.p)
            .find(|&g| factors.iter().all(|&f| self.pow(g, phi / f) != 1))
            .expect("every prime has a primitive root")
    }

    /// An element of exact multiplicative order n (requires n | p−1).
    pub fn root_of_unity(&self, n: u64) -> u64 {
        assert_eq!((self.p - 1) % n, 0, "no n-th roots of unity mod p");
        self.pow(self.primitive_root(), (self.p - 1) / n)
    }
}

/// Dense row-major matrix over F_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMat {
    pub rows: usize,
    pub cols: usize,
    pub a: Vec<u64>,
}

impl FpMat {
    pub fn zero(rows: usize, cols: usize) -> FpMat {
        FpMat {
            rows,
            cols,
            a: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> FpMat {
        let mut m = FpMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn mul(&self, other: &FpMat, f: Fp) -> FpMat {
        assert_eq!(self.cols, other.rows);
        let mut out = FpMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let v = self[(i, k)];
                if v == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] = f.add(out[(i, j)], f.mul(v, other[(k, j)]));
                }
            }
        }
        out
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self, f: Fp) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pivot_row) = (row..self.rows).find(|&r| self[(r, col)] != 0) else {
                continue;
            };
            for j in 0..self.cols {
                let tmp = self[(row, j)];
                self[(row, j)] = self[(pivot_row, j)];
                self[(pivot_row, j)] = tmp;
            }
            let scale = f.inv(self[(row, col)]);
            for j in 0..self.cols {
                self[(row, j)] = f.mul(self[(row, j)], scale);
            }
            for r in 0..self.rows {
                if r != row && self[(r, col)] != 0 {
                    let factor = self[(r, col)];
                    for j in 0..self.cols {
                        let sub = f.mul(factor, self[(row, j)]);
                        self[(r, j)] = f.sub(self[(r, j)], sub);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// Basis of the right kernel, as columns, in a canonical order (free
    /// columns ascending).
    pub fn kernel_basis(&self, f: Fp) -> FpMat {
        let mut work = self.clone();
        let pivots = work.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = FpMat::zero(self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            basis[(fc, k)] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                basis[(pc, k)] = f.sub(0, work[(r, fc)]);
            }
        }
        basis
    }

    /// Solves `self · X = rhs` when `self` has full column rank.
    pub fn solve_full_rank(&self, rhs: &FpMat, f: Fp) -> FpMat {
        assert_eq!(self.rows, rhs.rows);
        let mut work = FpMat::zero(self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                work[(i, j)] = self[(i, j)];
            }
            for j in 0..rhs.cols {
                work[(i, self.cols + j)] = rhs[(i, j)];
            }
        }
        let pivots = work.rref(f);
        assert_eq!(
            pivots.len().min(self.cols),
            self.cols,
            "matrix must have full column rank"
        );
        let mut x = FpMat::zero(self.cols, rhs.cols);
        for (r, &pc) in pivots.iter().enumerate() {
            if pc < self.cols {
                for j in 0..rhs.cols {
                    x[(pc, j)] = work[(r, self.cols + j)];
                }
            }
        }
        // consistency: rows beyond the rank must be zero on the rhs side
        for r in pivots.len()..self.rows {
            for j in 0..rhs.cols {
                assert_eq!(work[(r, self.cols + j)], 0, "inconsistent system");
            }
        }
        x
    }
}

impl std::ops::Index<(usize, usize)> for FpMat {
    type Output = u64;
    fn index(&self, (i, j): (usize, usize)) -> &u64 {
        &self.a[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for FpMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut u64 {
        &mut self.a[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_basics() {
        let f = Fp::new(13);
        assert_eq!(f.mul(f.inv(5), 5), 1);
        assert_eq!(f.pow(2, 12), 1);
        let root = f.root_of_unity(3);
        assert_eq!(f.pow(root, 3), 1);
        assert_ne!(root, 1);
    }

    #[test]
    fn kernel_of_singular_matrix() {
        let f = Fp::new(7);
        // rank-1 matrix
        let m = FpMat {
            rows: 2,
            cols: 2,
            a: vec![1, 2, 2, 4],
        };
        let k = m.kernel_basis(f);
        assert_eq!(k.cols, 1);
        let prod = m.mul(&k, f);
        assert!(prod.a.iter().all(|&v| v == 0));
    }

    #[test]
    fn solve_round_trip() {
        let f = Fp::new(11);
        let m = FpMat {
            rows: 3,
            cols: 2,
            a: vec![1, 2, 3, 4, 5, 6],
        };
        let x = FpMat {
            rows: 2,
            cols: 1,
            a: vec![3, 9],
        };
        let rhs = m.mul(&x, f);
        let solved = m.solve_full_rank(&rhs, f);
        assert_eq!(solved, x);
    }
}
