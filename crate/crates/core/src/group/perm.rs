use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::tableaux::Partition;

/// A permutation of {1, …, m}. Products compose right to left:
/// `(σ * τ)(i) = σ(τ(i))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    // 0-based images
    images: Vec<u8>,
}

impl Permutation {
    pub const MAX_DEGREE: usize = 255;

    pub fn identity(m: usize) -> Self {
        Permutation {
            images: (0..m as u8).collect(),
        }
    }

    /// From 1-based images `[σ(1), …, σ(m)]`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let m = images.len();
        if m > Self::MAX_DEGREE {
            return Err(Error::InvalidPermutation(format!("degree {m} too large")));
        }
        let mut seen = vec![false; m];
        for &x in images {
            if x == 0 || x > m || seen[x - 1] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
            seen[x - 1] = true;
        }
        Ok(Permutation {
            images: images.iter().map(|&x| (x - 1) as u8).collect(),
        })
    }

    /// From disjoint or overlapping cycles of 1-based points; cycles are
    /// multiplied left to right as written, i.e. the rightmost acts first.
    pub fn from_cycles(m: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut p = Permutation::identity(m);
        for c in cycles.iter().rev() {
            if c.iter().any(|&x| x == 0 || x > m) {
                return Err(Error::InvalidPermutation(format!("cycle {c:?} outside 1..={m}")));
            }
            let mut seen = c.clone();
            seen.sort_unstable();
            seen.dedup();
            if seen.len() != c.len() {
                return Err(Error::InvalidPermutation(format!("cycle {c:?} repeats a point")));
            }
            let mut img: Vec<u8> = (0..m as u8).collect();
            for (i, &x) in c.iter().enumerate() {
                img[x - 1] = (c[(i + 1) % c.len()] - 1) as u8;
            }
            p = &Permutation { images: img } * &p;
        }
        Ok(p)
    }

    /// The transposition (i j), 1-based.
    pub fn transposition(m: usize, i: usize, j: usize) -> Self {
        let mut images: Vec<u8> = (0..m as u8).collect();
        images.swap(i - 1, j - 1);
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// σ(i) for 1-based i.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] as usize + 1
    }

    /// 0-based image table.
    pub fn images0(&self) -> &[u8] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = Permutation::identity(self.degree());
        for _ in 0..e.unsigned_abs() {
            out = &base * &out;
        }
        out
    }

    /// Disjoint cycles of length > 1, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let m = self.degree();
        let mut seen = vec![false; m];
        let mut out = Vec::new();
        for s in 0..m {
            if seen[s] {
                continue;
            }
            let mut c = Vec::new();
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                c.push(x + 1);
                x = self.images[x] as usize;
            }
            if c.len() > 1 {
                out.push(c);
            }
        }
        out
    }

    pub fn cycle_type(&self) -> Partition {
        let mut lens: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        let fixed = self.degree() - lens.iter().sum::<usize>();
        lens.extend(std::iter::repeat_n(1, fixed));
        lens.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(lens).expect("cycle lengths form a partition")
    }

    pub fn sign(&self) -> i64 {
        let odd = self.cycles().iter().filter(|c| c.len() % 2 == 0).count();
        if odd % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Indices `i` (1-based, i < m) with σ = s_{w_1} ⋯ s_{w_r}, s_i = (i i+1),
    /// of minimal length.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut p = self.images.clone();
        let mut word = Vec::new();
        // peel right descents: σ = (σ s_i) s_i
        loop {
            let Some(i) = (0..p.len().saturating_sub(1)).find(|&i| p[i] > p[i + 1]) else {
                break;
            };
            p.swap(i, i + 1);
            word.push(i + 1);
        }
        word.reverse();
        word
    }

    /// A representative of the conjugacy class with the given cycle type:
    /// cycles on consecutive points.
    pub fn class_representative(cycle_type: &Partition) -> Self {
        let m = cycle_type.size();
        let mut images: Vec<u8> = (0..m as u8).collect();
        let mut start = 0;
        for &len in cycle_type.parts() {
            for i in 0..len {
                images[start + i] = (start + (i + 1) % len) as u8;
            }
            start += len;
        }
        Permutation { images }
    }

    /// All of S_m in lexicographic order of image tables.
    pub fn all(m: usize) -> Vec<Permutation> {
        let mut cur: Vec<u8> = (0..m as u8).collect();
        let mut out = vec![Permutation { images: cur.clone() }];
        loop {
            let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
            out.push(Permutation { images: cur.clone() });
        }
        out
    }
}

impl<'a> Mul<&'a Permutation> for &'a Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree(), "permutation degree mismatch");
        Permutation {
            images: rhs.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }
}

impl Mul for Permutation {
    type Output = Permutation;

    fn mul(self, rhs: Permutation) -> Permutation {
        &self * &rhs
    }
}

/// Cycle notation, e.g. `(1 3)(2 4)`; the identity prints as `()`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let s: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", s.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses cycle notation for a given degree: `"4:(1 3)(2 4)"` or, with the
/// degree taken as the largest point, `"(1 3)(2 4)"`.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (m, body) = match s.split_once(':') {
            Some((m, b)) => (
                Some(
                    m.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::InvalidPermutation(format!("bad degree in `{s}`")))?,
                ),
                b,
            ),
            None => (None, s),
        };
        let mut cycles = Vec::new();
        for chunk in body.split('(').skip(1) {
            let inner = chunk
                .split_once(')')
                .ok_or_else(|| Error::InvalidPermutation(format!("unclosed cycle in `{s}`")))?
                .0;
            let pts = inner
                .split(|c: char| c == ' ' || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::InvalidPermutation(format!("bad point `{t}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            if !pts.is_empty() {
                cycles.push(pts);
            }
        }
        let max = cycles.iter().flatten().copied().max().unwrap_or(0);
        let m = m.unwrap_or(max);
        Permutation::from_cycles(m, &cycles)
    }
}
