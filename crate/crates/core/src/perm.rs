//! Permutations on `{0, …, degree−1}`, the carrier for all group elements.

use crate::error::{Error, Result};
use std::fmt;

/// A permutation stored as its image array: `images[i]` is where point `i` goes.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    /// Builds a permutation from an image array, rejecting non-bijections.
    pub fn new(images: Vec<u32>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if (v as usize) >= n || seen[v as usize] {
                return Err(Error::Parse(format!(
                    "image array {images:?} is not a bijection on 0..{n}"
                )));
            }
            seen[v as usize] = true;
        }
        Ok(Perm { images })
    }

    pub fn identity(degree: usize) -> Perm {
        Perm {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i as u32 == v)
    }

    /// Function composition: `(self * other)(x) = self(other(x))`.
    pub fn mul(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u32; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v as usize] = i as u32;
        }
        Perm { images }
    }

    /// Parses cycle notation like `"(0 1 2)(3 4)"`; commas also separate points.
    /// Cycles are applied left to right. `"()"` and the empty string denote the identity.
    pub fn from_cycles(degree: usize, text: &str) -> Result<Perm> {
        let mut perm = Perm::identity(degree);
        let bad = |msg: &str| Error::Parse(format!("cycle string {text:?}: {msg}"));
        let mut rest = text.trim();
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(bad("expected '('"));
            }
            let close = rest.find(')').ok_or_else(|| bad("missing ')'"))?;
            let body = &rest[1..close];
            let mut cycle = Vec::new();
            for tok in body.split(|c: char| c.is_whitespace() || c == ',') {
                if tok.is_empty() {
                    continue;
                }
                let p: u32 = tok
                    .parse()
                    .map_err(|_| bad(&format!("bad point {tok:?}")))?;
                if p as usize >= degree {
                    return Err(bad(&format!("point {p} outside degree {degree}")));
                }
                if cycle.contains(&p) {
                    return Err(bad(&format!("point {p} repeated in a cycle")));
                }
                cycle.push(p);
            }
            let mut this = Perm::identity(degree);
            for (i, &p) in cycle.iter().enumerate() {
                this.images[p as usize] = cycle[(i + 1) % cycle.len()];
            }
            perm = this.mul(&perm);
            rest = rest[close + 1..].trim_start();
        }
        Ok(perm)
    }

    /// Renders disjoint cycle notation; the identity prints as `"()"`.
    pub fn to_cycles(&self) -> String {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                seen[start] = true;
                continue;
            }
            out.push('(');
            let mut p = start;
            let mut first = true;
            while !seen[p] {
                seen[p] = true;
                if !first {
                    out.push(' ');
                }
                out.push_str(&p.to_string());
                first = false;
                p = self.images[p] as usize;
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{}]", self.to_cycles())
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycles())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_and_invert() {
        let a = Perm::from_cycles(3, "(0 1)").unwrap();
        let b = Perm::from_cycles(3, "(0 1 2)").unwrap();
        assert_eq!(a.mul(&a), Perm::identity(3));
        assert_eq!(b.mul(&b.inverse()), Perm::identity(3));
        // (0 1) then (0 1 2): 0 -> 1 -> 2
        assert_eq!(b.mul(&a).apply(0), 2);
    }

    #[test]
    fn parse_round_trip() {
        let p = Perm::from_cycles(5, "(0 1 2)(3 4)").unwrap();
        assert_eq!(p.to_cycles(), "(0 1 2)(3 4)");
        assert_eq!(Perm::from_cycles(4, "").unwrap(), Perm::identity(4));
        assert_eq!(Perm::from_cycles(4, "()").unwrap(), Perm::identity(4));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(Perm::from_cycles(3, "(0 3)").is_err());
        assert!(Perm::from_cycles(3, "(0 0)").is_err());
        assert!(Perm::from_cycles(3, "(0 1").is_err());
        assert!(Perm::new(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn identity_is_lex_minimal() {
        // canonical element ids depend on this
        let id = Perm::identity(4);
        let other = Perm::from_cycles(4, "(2 3)").unwrap();
        assert!(id < other);
    }
}
