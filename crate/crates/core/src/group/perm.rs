use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `{0, .., n-1}` stored by images. Products follow the
/// left-to-right convention: `a.then(b)` applies `a` first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u32).collect() }
    }

    /// From zero-based images; rejects non-bijections.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(Error::invalid(format!("image list {:?} is not a permutation", images)));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// From one-based images, the form used in input documents.
    pub fn from_one_based(images: &[i64]) -> Result<Self> {
        let mut v = Vec::with_capacity(images.len());
        for &i in images {
            if i < 1 || i as usize > images.len() {
                return Err(Error::invalid(format!("image {} out of range 1..={}", i, images.len())));
            }
            v.push((i - 1) as u32);
        }
        Self::from_images(v)
    }

    /// Parse cycle notation with one-based points, e.g. `(1 2 3)(4 5)`.
    /// Points may be separated by spaces or commas; `()` is the identity.
    pub fn parse_cycles(s: &str) -> Result<Self> {
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = s.trim();
        if rest.is_empty() {
            return Err(Error::invalid("empty permutation string"));
        }
        while !rest.is_empty() {
            let Some(body) = rest.strip_prefix('(') else {
                return Err(Error::invalid(format!("expected '(' in permutation {:?}", s)));
            };
            let Some(close) = body.find(')') else {
                return Err(Error::invalid(format!("unclosed cycle in permutation {:?}", s)));
            };
            let mut cycle = Vec::new();
            for tok in body[..close].split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
                let p: usize = tok
                    .parse()
                    .map_err(|_| Error::invalid(format!("bad point {:?} in permutation {:?}", tok, s)))?;
                if p == 0 {
                    return Err(Error::invalid(format!("points are numbered from 1 in {:?}", s)));
                }
                cycle.push(p - 1);
            }
            cycles.push(cycle);
            rest = body[close + 1..].trim_start();
        }
        let degree = cycles.iter().flatten().map(|&p| p + 1).max().unwrap_or(0);
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut moved = vec![false; degree];
        for cycle in &cycles {
            for (i, &p) in cycle.iter().enumerate() {
                if moved[p] {
                    return Err(Error::invalid(format!("point {} repeated in permutation {:?}", p + 1, s)));
                }
                moved[p] = true;
                images[p] = cycle[(i + 1) % cycle.len()] as u32;
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, p: usize) -> usize {
        self.images.get(p).map_or(p, |&i| i as usize)
    }

    /// Extend with fixed points up to `degree`.
    pub fn padded(&self, degree: usize) -> Self {
        let mut images = self.images.clone();
        images.extend(self.images.len() as u32..degree as u32);
        Permutation { images }
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        let n = self.degree().max(other.degree());
        Permutation { images: (0..n).map(|p| other.apply(self.apply(p)) as u32).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.degree()];
        for (p, &i) in self.images.iter().enumerate() {
            images[i as usize] = p as u32;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(p, &i)| p as u32 == i)
    }

    /// Disjoint cycles of length at least two, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut c = vec![start];
            seen[start] = true;
            let mut p = self.apply(start);
            while p != start {
                seen[p] = true;
                c.push(p);
                p = self.apply(p);
            }
            out.push(c);
        }
        out
    }
}

/// One-based cycle notation, `()` for the identity.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let p = Permutation::parse_cycles("(1 2 3)(4,5)").unwrap();
        assert_eq!(p.images(), &[1, 2, 0, 4, 3]);
        assert_eq!(p.to_string(), "(1 2 3)(4 5)");
        assert!(Permutation::parse_cycles("()").unwrap().is_identity());
        assert!(Permutation::parse_cycles("(1 2 1)").is_err());
        assert!(Permutation::parse_cycles("(0 1)").is_err());
        assert!(Permutation::parse_cycles("1 2").is_err());
    }

    #[test]
    fn composition_is_left_to_right() {
        let a = Permutation::parse_cycles("(1 2)").unwrap();
        let b = Permutation::parse_cycles("(2 3)").unwrap();
        // 1 -> 2 -> 3, 3 -> 3 -> 2, 2 -> 1 -> 1
        assert_eq!(a.then(&b).to_string(), "(1 3 2)");
        assert!(a.then(&a.inverse()).is_identity());
        assert!(Permutation::from_one_based(&[2, 3, 1]).is_ok());
        assert!(Permutation::from_one_based(&[2, 2, 1]).is_err());
    }
}
