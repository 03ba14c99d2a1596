use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::perm::{parse_cycles, Perm};
use crate::error::{Error, Result};

/// A cyclic group of square permutations of order `degree`, generated by `perm`.
/// `kind` is the derivative of the generator; when both square permutations
/// are involutions the permutation alone cannot tell.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Deck {
    pub perm: Perm,
    pub degree: u32,
    pub kind: DeckKind,
}

/// How an automorphism of the squares acts on the flat structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DeckKind {
    /// Derivative `+I`: commutes with both square permutations.
    Translation,
    /// Derivative `−I`: conjugates each square permutation to its inverse.
    HalfTurn,
}

/// A square-tiled surface: `sigma_h(i)` is the square to the right of `i`,
/// `sigma_v(i)` the square above it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Origami {
    sigma_h: Perm,
    sigma_v: Perm,
    deck: Option<Deck>,
}

/// Canonical representative of an origami together with the relabelling that
/// produced it (`relabel(old) = new`).
#[derive(Debug, Clone)]
pub struct Canonical {
    pub origami: Origami,
    pub relabel: Perm,
}

impl Origami {
    pub fn new(sigma_h: Perm, sigma_v: Perm) -> Result<Self> {
        if sigma_h.is_empty() || sigma_h.len() != sigma_v.len() {
            return Err(Error::InvalidOrigami(format!(
                "permutations of sizes {} and {}",
                sigma_h.len(),
                sigma_v.len()
            )));
        }
        let o = Origami { sigma_h, sigma_v, deck: None };
        if !o.is_connected() {
            return Err(Error::InvalidOrigami("square permutations do not act transitively".into()));
        }
        Ok(o)
    }

    pub fn with_deck(mut self, deck: Deck) -> Result<Self> {
        if deck.perm.len() != self.degree() {
            return Err(Error::InvalidOrigami("deck permutation has the wrong size".into()));
        }
        self.deck = Some(deck);
        Ok(self)
    }

    pub fn from_cycle_strings(degree: usize, h: &str, v: &str) -> Result<Self> {
        Origami::new(parse_cycles(h, degree)?, parse_cycles(v, degree)?)
    }

    /// One square with both sides glued to itself.
    pub fn torus() -> Self {
        Origami::new(Perm::identity(1), Perm::identity(1)).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.sigma_h.len()
    }

    pub fn sigma_h(&self) -> &Perm {
        &self.sigma_h
    }

    pub fn sigma_v(&self) -> &Perm {
        &self.sigma_v
    }

    pub fn deck(&self) -> Option<&Deck> {
        self.deck.as_ref()
    }

    pub fn without_deck(&self) -> Origami {
        Origami { deck: None, ..self.clone() }
    }

    fn is_connected(&self) -> bool {
        let d = self.degree();
        let mut seen = vec![false; d];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for p in [&self.sigma_h, &self.sigma_v] {
                for y in [p.apply(x), p.inverse().apply(x)] {
                    if !seen[y] {
                        seen[y] = true;
                        count += 1;
                        stack.push(y);
                    }
                }
            }
        }
        count == d
    }

    /// `κ = σ_v⁻¹ σ_h⁻¹ σ_v σ_h`: walking once around the top-right corner of
    /// square `i` lands back at the top-right corner of `κ(i)`.
    pub fn corner_commutator(&self) -> Perm {
        let hi = self.sigma_h.inverse();
        let vi = self.sigma_v.inverse();
        vi.compose(&hi).compose(&self.sigma_v).compose(&self.sigma_h)
    }

    /// Vertices as cycles of [`corner_commutator`](Self::corner_commutator);
    /// a cycle of length `k` is a cone point of angle `2πk`.
    pub fn vertex_cycles(&self) -> Vec<Vec<usize>> {
        self.corner_commutator().cycles()
    }

    /// Genus from `V − E + F = V − 2d + d`.
    pub fn genus(&self) -> usize {
        let v = self.vertex_cycles().len();
        (self.degree() + 2 - v) / 2
    }

    /// Orders of the zeros of the abelian differential `dz`, descending.
    pub fn stratum(&self) -> Vec<usize> {
        let mut orders: Vec<usize> = self
            .vertex_cycles()
            .iter()
            .map(|c| c.len() - 1)
            .filter(|&k| k > 0)
            .collect();
        orders.sort_unstable_by(|a, b| b.cmp(a));
        orders
    }

    /// Whether `perm` is an automorphism with derivative `+I` (translation)
    /// or `−I` (half-turn).
    pub fn is_automorphism(&self, perm: &Perm, kind: DeckKind) -> bool {
        let ok = |s: &Perm| match kind {
            DeckKind::Translation => perm.compose(s) == s.compose(perm),
            DeckKind::HalfTurn => perm.compose(s) == s.inverse().compose(perm),
        };
        ok(&self.sigma_h) && ok(&self.sigma_v)
    }

    /// Classifies `perm` as a translation or half-turn automorphism, if it is
    /// either; translation wins when both fit.
    pub fn automorphism_kind(&self, perm: &Perm) -> Option<DeckKind> {
        [DeckKind::Translation, DeckKind::HalfTurn]
            .into_iter()
            .find(|&k| self.is_automorphism(perm, k))
    }

    /// The deck has order exactly `degree`, is a flat automorphism of its
    /// stated kind and acts freely on squares.
    pub fn deck_check(&self) -> bool {
        let Some(deck) = &self.deck else {
            return false;
        };
        let n = deck.degree as usize;
        deck.perm.order() == n
            && self.is_automorphism(&deck.perm, deck.kind)
            && deck.perm.cycles().iter().all(|c| c.len() == n)
    }

    /// Breadth-first relabelling from `start`, visiting right then up
    /// neighbours.
    fn bfs_relabel(&self, start: usize) -> Perm {
        let d = self.degree();
        let mut label = vec![usize::MAX; d];
        let mut queue = VecDeque::from([start]);
        label[start] = 0;
        let mut next = 1;
        while let Some(x) = queue.pop_front() {
            for y in [self.sigma_h.apply(x), self.sigma_v.apply(x)] {
                if label[y] == usize::MAX {
                    label[y] = next;
                    next += 1;
                    queue.push_back(y);
                }
            }
        }
        debug_assert_eq!(next, d);
        Perm::from_images(label).expect("connected origami")
    }

    /// Lexicographically least relabelling over all breadth-first starts. Two
    /// origamis are isomorphic iff their canonical forms are equal.
    pub fn canonical(&self) -> Canonical {
        let mut best: Option<(Vec<usize>, Vec<usize>, Perm)> = None;
        for start in 0..self.degree() {
            let map = self.bfs_relabel(start);
            let h = self.sigma_h.conjugate_by(&map);
            let v = self.sigma_v.conjugate_by(&map);
            let better = match &best {
                None => true,
                Some((bh, bv, _)) => (h.images(), v.images()) < (bh.as_slice(), bv.as_slice()),
            };
            if better {
                best = Some((h.images().to_vec(), v.images().to_vec(), map));
            }
        }
        let (h, v, relabel) = best.expect("non-empty origami");
        Canonical {
            origami: Origami {
                sigma_h: Perm::from_images(h).unwrap(),
                sigma_v: Perm::from_images(v).unwrap(),
                deck: None,
            },
            relabel,
        }
    }

    pub fn is_isomorphic(&self, other: &Origami) -> bool {
        self.degree() == other.degree() && self.canonical().origami == other.canonical().origami
    }

    /// Image under `[[1,1],[0,1]]`: `(σ_h, σ_v σ_h⁻¹)`, same square labels.
    pub fn sheared_horizontally(&self) -> Origami {
        Origami {
            sigma_h: self.sigma_h.clone(),
            sigma_v: self.sigma_v.compose(&self.sigma_h.inverse()),
            deck: None,
        }
    }

    /// Image under `[[1,0],[1,1]]`: `(σ_h σ_v⁻¹, σ_v)`.
    pub fn sheared_vertically(&self) -> Origami {
        Origami {
            sigma_h: self.sigma_h.compose(&self.sigma_v.inverse()),
            sigma_v: self.sigma_v.clone(),
            deck: None,
        }
    }

    /// Image under the quarter turn `[[0,-1],[1,0]]`: `(σ_v⁻¹, σ_h)`.
    pub fn rotated(&self) -> Origami {
        Origami {
            sigma_h: self.sigma_v.inverse(),
            sigma_v: self.sigma_h.clone(),
            deck: None,
        }
    }
}

/// Text form: the degree, then `sigma_h` and `sigma_v` in 1-based cycle
/// notation, then optionally `<order> <cycles> [translation|half-turn]` for
/// the deck. Lines starting with `#` are ignored.
impl fmt::Display for Origami {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.degree())?;
        writeln!(f, "{}", self.sigma_h)?;
        writeln!(f, "{}", self.sigma_v)?;
        if let Some(deck) = &self.deck {
            writeln!(f, "{} {} {}", deck.degree, deck.perm, deck.kind)?;
        }
        Ok(())
    }
}

impl FromStr for Origami {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let mut next = |what: &str| {
            lines
                .next()
                .ok_or_else(|| Error::Parse(format!("origami text is missing the {what} line")))
        };
        let degree: usize = next("degree")?
            .parse()
            .map_err(|_| Error::Parse("origami degree is not an integer".into()))?;
        let h = parse_cycles(next("sigma_h")?, degree)?;
        let v = parse_cycles(next("sigma_v")?, degree)?;
        let o = Origami::new(h, v)?;
        match lines.next() {
            None => Ok(o),
            Some(line) => {
                let (order, rest) = line.split_once(char::is_whitespace).unwrap_or((line, "()"));
                let degree_n: u32 = order
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad deck line {line:?}")))?;
                let rest = rest.trim();
                let (cycles, kind) = match rest.rsplit_once(char::is_whitespace) {
                    Some((c, k)) if k.parse::<DeckKind>().is_ok() => (c.trim(), k.parse().ok()),
                    _ => match rest.parse::<DeckKind>() {
                        Ok(k) => ("()", Some(k)),
                        Err(_) => (rest, None),
                    },
                };
                let perm = parse_cycles(cycles, degree)?;
                if lines.next().is_some() {
                    return Err(Error::Parse("trailing content after deck line".into()));
                }
                let kind = kind
                    .or_else(|| o.automorphism_kind(&perm))
                    .unwrap_or(DeckKind::Translation);
                o.with_deck(Deck { perm, degree: degree_n, kind })
            }
        }
    }
}

impl fmt::Display for DeckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DeckKind::Translation => "translation",
            DeckKind::HalfTurn => "half-turn",
        })
    }
}

impl FromStr for DeckKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "translation" => Ok(DeckKind::Translation),
            "half-turn" => Ok(DeckKind::HalfTurn),
            _ => Err(Error::Parse(format!("unknown deck kind {s:?}"))),
        }
    }
}
