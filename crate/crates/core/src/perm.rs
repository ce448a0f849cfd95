//! Permutations of `{0, .., degree - 1}`.
//!
//! Products are read left to right: `a.then(&b)` maps `x` to `b(a(x))`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u16>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n > u16::MAX as usize {
            return Err(Error::InvalidPermutation(format!("degree {n} too large")));
        }
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection on 0..{n}"
                )));
            }
            seen[i] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|i| i as u16).collect(),
        })
    }

    pub(crate) fn from_raw(images: Vec<u16>) -> Self {
        debug_assert!({
            let mut s = images.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &v)| i == v as usize)
        });
        Permutation { images }
    }

    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u16).collect(),
        }
    }

    /// Builds a permutation from disjoint or overlapping cycles, applied left to right.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut acc = Permutation::identity(degree);
        for cycle in cycles {
            let mut images: Vec<usize> = (0..degree).collect();
            for (k, &a) in cycle.iter().enumerate() {
                if a >= degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {a} outside 0..{degree}"
                    )));
                }
                images[a] = cycle[(k + 1) % cycle.len()];
            }
            let c = Permutation::new(images)?;
            acc = acc.then(&c);
        }
        Ok(acc)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u16] {
        &self.images
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u16; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v as usize] = i as u16;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    /// Disjoint cycles of length at least two, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, x) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Parses a whitespace-separated list of cycles such as `(0 1 2)(3 4)`.
///
/// `offset` is added to reported error positions so callers can point into a larger text.
pub fn parse_cycle_list(degree: usize, text: &str, offset: usize) -> Result<Permutation> {
    let mut cycles = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    let err = |pos: usize, message: String| Error::Parse {
        position: offset + pos,
        message,
    };
    while i < bytes.len() {
        match bytes[i] {
            b' ' | b'\t' | b'\n' | b'\r' | b',' => i += 1,
            b'(' => {
                let close = text[i..]
                    .find(')')
                    .map(|k| i + k)
                    .ok_or_else(|| err(i, "unterminated cycle".into()))?;
                let mut cycle = Vec::new();
                let mut pos = i + 1;
                for tok in text[i + 1..close].split(|c: char| c.is_whitespace() || c == ',') {
                    if tok.is_empty() {
                        pos += 1;
                        continue;
                    }
                    let v: usize = tok
                        .parse()
                        .map_err(|_| err(pos, format!("expected a point, found {tok:?}")))?;
                    if v >= degree {
                        return Err(err(pos, format!("point {v} outside 0..{degree}")));
                    }
                    if cycle.contains(&v) {
                        return Err(err(pos, format!("point {v} repeated in cycle")));
                    }
                    cycle.push(v);
                    pos += tok.len() + 1;
                }
                if !cycle.is_empty() {
                    cycles.push(cycle);
                }
                i = close + 1;
            }
            c => return Err(err(i, format!("unexpected character {:?}", c as char))),
        }
    }
    Permutation::from_cycles(degree, &cycles)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_bijection() {
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
        assert!(Permutation::new(vec![0, 3, 1]).is_err());
        assert!(Permutation::new(vec![2, 0, 1]).is_ok());
    }

    #[test]
    fn composition_reads_left_to_right() {
        let a = Permutation::from_cycles(3, &[vec![0, 1]]).unwrap();
        let b = Permutation::from_cycles(3, &[vec![1, 2]]).unwrap();
        // 0 -a-> 1 -b-> 2
        assert_eq!(a.then(&b).apply(0), 2);
        assert!(a.then(&a.inverse()).is_identity());
    }

    #[test]
    fn cycle_roundtrip() {
        let p = parse_cycle_list(6, "(0 1 2)(4 5)", 0).unwrap();
        assert_eq!(p.to_string(), "(0 1 2)(4 5)");
        assert_eq!(parse_cycle_list(3, "", 0).unwrap(), Permutation::identity(3));
    }

    #[test]
    fn parse_errors_carry_positions() {
        match parse_cycle_list(3, "(0 5)", 10) {
            Err(Error::Parse { position, .. }) => assert!(position >= 10),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_cycle_list(3, "(0 1", 0).is_err());
        assert!(parse_cycle_list(3, "x", 0).is_err());
    }
}
