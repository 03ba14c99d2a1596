use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `0..len`, stored as its image table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(len: usize) -> Self {
        Perm((0..len).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidOrigami(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Perm(images))
    }

    /// Builds a permutation of `0..len` from cycles of 0-based labels.
    pub fn from_cycles(len: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<Option<usize>> = vec![None; len];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                let y = cycle[(k + 1) % cycle.len()];
                if x >= len || y >= len || images[x].is_some() {
                    return Err(Error::InvalidOrigami(format!("bad cycle {cycle:?} for degree {len}")));
                }
                images[x] = Some(y);
            }
        }
        Perm::from_images(images.iter().enumerate().map(|(i, y)| y.unwrap_or(i)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Perm(inv)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&x| self.0[x]).collect())
    }

    /// Relabels by `map`: the result sends `map(x)` to `map(self(x))`.
    pub fn conjugate_by(&self, map: &Perm) -> Perm {
        let mut out = vec![0; self.len()];
        for (x, &y) in self.0.iter().enumerate() {
            out[map.apply(x)] = map.apply(y);
        }
        Perm(out)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.0[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> usize {
        self.cycles()
            .iter()
            .fold(1, |acc, c| num_integer::lcm(acc, c.len()))
    }
}

/// Cycle notation with 1-based labels, fixed points omitted, `()` for the
/// identity.
impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for cycle in self.cycles().into_iter().filter(|c| c.len() > 1) {
            any = true;
            write!(f, "(")?;
            for (k, x) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// Parses cycle notation; the degree is taken as the largest label seen.
/// Use [`parse_cycles`] when the degree is known.
impl FromStr for Perm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let cycles = cycle_lists(s)?;
        let len = cycles.iter().flatten().map(|&x| x + 1).max().unwrap_or(0);
        Perm::from_cycles(len, &cycles)
    }
}

pub fn parse_cycles(s: &str, len: usize) -> Result<Perm> {
    Perm::from_cycles(len, &cycle_lists(s)?)
}

fn cycle_lists(s: &str) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .and_then(|r| r.split_once(')'))
            .ok_or_else(|| Error::Parse(format!("malformed cycle notation {s:?}")))?;
        let (inner, tail) = body;
        if !inner.trim().is_empty() {
            let cycle = inner
                .split(',')
                .map(|t| match t.trim().parse::<usize>() {
                    Ok(v) if v >= 1 => Ok(v - 1),
                    _ => Err(Error::Parse(format!("bad label {t:?} in {s:?}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            out.push(cycle);
        }
        rest = tail.trim_start();
    }
    Ok(out)
}
