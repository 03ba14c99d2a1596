//! Action of `SL(2,Z)` generators and of square automorphisms on homology.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::homology::HomologyModel;
use super::intmat::IntMatrix;
use crate::error::{Error, Result};
use crate::flat::{Canonical, DeckKind, Origami, Perm};

pub type Sl2 = [[i64; 2]; 2];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Generator {
    /// Horizontal shear `[[1,1],[0,1]]`.
    T,
    /// Vertical shear `[[1,0],[1,1]]`.
    L,
    /// Quarter turn `[[0,-1],[1,0]]`.
    S,
}

impl Generator {
    pub const ALL: [Generator; 3] = [Generator::T, Generator::L, Generator::S];

    pub fn sl2(self) -> Sl2 {
        match self {
            Generator::T => [[1, 1], [0, 1]],
            Generator::L => [[1, 0], [1, 1]],
            Generator::S => [[0, -1], [1, 0]],
        }
    }

    /// Image origami with the same square labels.
    pub fn apply(self, o: &Origami) -> Origami {
        match self {
            Generator::T => o.sheared_horizontally(),
            Generator::L => o.sheared_vertically(),
            Generator::S => o.rotated(),
        }
    }

    /// Chain map from the centre graph of `o` to that of `self.apply(o)`.
    fn chain_map(self, o: &Origami) -> IntMatrix {
        let d = o.degree();
        let sh = o.sigma_h();
        let sv = o.sigma_v();
        let mut c = IntMatrix::zeros(2 * d, 2 * d);
        for i in 0..d {
            match self {
                Generator::T => {
                    c[(i, i)] = 1;
                    c[(i, d + i)] += 1;
                    c[(d + sh.apply(i), d + i)] += 1;
                }
                Generator::L => {
                    c[(d + i, d + i)] = 1;
                    c[(d + i, i)] += 1;
                    c[(sv.apply(i), i)] += 1;
                }
                Generator::S => {
                    c[(d + i, i)] = 1;
                    c[(sv.apply(i), d + i)] = -1;
                }
            }
        }
        c
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Generator::T => "T",
            Generator::L => "L",
            Generator::S => "S",
        };
        f.write_str(name)
    }
}

pub fn sl2_mul(a: &Sl2, b: &Sl2) -> Sl2 {
    let mut out = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

fn sl2_matrix(m: &Sl2) -> IntMatrix {
    IntMatrix::from_row_slice(2, 2, &[m[0][0], m[0][1], m[1][0], m[1][1]])
}

/// Edge permutation induced by relabelling squares (`relabel(old) = new`).
fn relabel_edges(relabel: &Perm) -> IntMatrix {
    let d = relabel.len();
    let mut r = IntMatrix::zeros(2 * d, 2 * d);
    for i in 0..d {
        let j = relabel.apply(i);
        r[(j, i)] = 1;
        r[(d + j, d + i)] = 1;
    }
    r
}

/// Matrix of `gen` from `src` (in `src_model`'s basis) to the canonical image
/// `tgt` (in `tgt_model`'s basis).
pub(crate) fn action_matrix(
    src: &Origami,
    src_model: &HomologyModel,
    gen: Generator,
    tgt: &Canonical,
    tgt_model: &HomologyModel,
) -> IntMatrix {
    tgt_model.coords() * relabel_edges(&tgt.relabel) * gen.chain_map(src) * src_model.basis()
}

#[derive(Debug, Clone, Serialize)]
pub struct HomologyAction {
    pub generator: Generator,
    pub source: Origami,
    pub target: Origami,
    pub sl2: Sl2,
    /// `2g × 2g`, source basis to target basis.
    pub matrix: IntMatrix,
    /// Restriction to the zero parts, in their own bases.
    pub zero_block: IntMatrix,
}

/// Outcome of the exact integrity checks on one action.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ActionChecks {
    pub symplectic: bool,
    pub taut_block_is_sl2: bool,
    pub zero_part_preserved: bool,
}

impl ActionChecks {
    pub fn all(&self) -> bool {
        self.symplectic && self.taut_block_is_sl2 && self.zero_part_preserved
    }
}

pub(crate) fn zero_block(src_model: &HomologyModel, matrix: &IntMatrix, tgt_model: &HomologyModel) -> IntMatrix {
    tgt_model.zero_coords() * matrix * src_model.zero_basis()
}

/// Checks `Mᵀ J M = J`, `M·taut = taut·sl2` and `hol(M·zero) = 0` exactly.
pub fn check_action(src_model: &HomologyModel, matrix: &IntMatrix, sl2: &Sl2, tgt_model: &HomologyModel) -> ActionChecks {
    let symplectic = matrix.transpose() * tgt_model.intersection() * matrix == *src_model.intersection();
    let taut_block_is_sl2 = matrix * src_model.taut_basis() == tgt_model.taut_basis() * sl2_matrix(sl2);
    let zero_part_preserved = (tgt_model.holonomy() * matrix * src_model.zero_basis())
        .iter()
        .all(|&x| x == 0);
    ActionChecks { symplectic, taut_block_is_sl2, zero_part_preserved }
}

/// Action of one generator, landing on the canonical form of the image.
pub fn generator_action(o: &Origami, gen: Generator) -> HomologyAction {
    let source = o.without_deck();
    let src_model = HomologyModel::new(&source);
    let canon = gen.apply(&source).canonical();
    let tgt_model = HomologyModel::new(&canon.origami);
    let matrix = action_matrix(&source, &src_model, gen, &canon, &tgt_model);
    let zero_block = zero_block(&src_model, &matrix, &tgt_model);
    HomologyAction { generator: gen, source, target: canon.origami, sl2: gen.sl2(), matrix, zero_block }
}

impl HomologyAction {
    pub fn checks(&self) -> ActionChecks {
        check_action(
            &HomologyModel::new(&self.source),
            &self.matrix,
            &self.sl2,
            &HomologyModel::new(&self.target),
        )
    }
}

/// Matrix of a square automorphism on homology, in the model's basis.
pub fn perm_action(o: &Origami, model: &HomologyModel, perm: &Perm, kind: DeckKind) -> IntMatrix {
    let d = o.degree();
    let mut c = IntMatrix::zeros(2 * d, 2 * d);
    for i in 0..d {
        match kind {
            DeckKind::Translation => {
                c[(perm.apply(i), i)] = 1;
                c[(d + perm.apply(i), d + i)] = 1;
            }
            DeckKind::HalfTurn => {
                c[(perm.apply(o.sigma_h().apply(i)), i)] = -1;
                c[(d + perm.apply(o.sigma_v().apply(i)), d + i)] = -1;
            }
        }
    }
    model.coords() * c * model.basis()
}

/// Matrix of the deck generator on homology.
pub fn automorphism_action(o: &Origami, model: &HomologyModel) -> Result<IntMatrix> {
    let deck = o.deck().ok_or(Error::MissingDeck)?;
    if !o.deck_check() {
        return Err(Error::InvalidOrigami("deck is not a free flat automorphism of the stated order".into()));
    }
    Ok(perm_action(o, model, &deck.perm, deck.kind))
}

/// Deck action restricted to the zero part, in the zero basis.
pub fn automorphism_zero_block(o: &Origami, model: &HomologyModel) -> Result<IntMatrix> {
    let m = automorphism_action(o, model)?;
    Ok(model.zero_coords() * m * model.zero_basis())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::intmat::charpoly;
    use crate::cyclic::CoverParams;
    use crate::flat::PillowComplex;

    fn cover_origami(n: u32, a: [i64; 4]) -> Origami {
        PillowComplex::build(&CoverParams::new(n, a).unwrap()).to_origami().unwrap()
    }

    fn l_shape() -> Origami {
        Origami::from_cycle_strings(3, "(1,2,3)", "(1,2)").unwrap()
    }

    #[test]
    fn torus_shear() {
        let a = generator_action(&Origami::torus(), Generator::T);
        assert_eq!(a.sl2, [[1, 1], [0, 1]]);
        assert_eq!(a.matrix, IntMatrix::from_row_slice(2, 2, &[1, 1, 0, 1]));
        let s = generator_action(&Origami::torus(), Generator::S);
        assert_eq!(s.matrix, IntMatrix::from_row_slice(2, 2, &[0, -1, 1, 0]));
    }

    #[test]
    fn generators_pass_checks() {
        for o in [l_shape(), cover_origami(4, [1, 1, 1, 1]), cover_origami(6, [1, 1, 1, 3])] {
            for g in Generator::ALL {
                let a = generator_action(&o, g);
                assert!(a.checks().all(), "{g} on\n{o}");
                let r = a.matrix.nrows();
                assert_eq!(a.zero_block.shape(), (r - 2, r - 2));
            }
        }
    }

    /// Four quarter turns return to the start, so the composite must be the
    /// action of the automorphism relating the two labellings.
    #[test]
    fn four_quarter_turns_compose_to_an_automorphism() {
        let o = l_shape().canonical().origami;
        let model = HomologyModel::new(&o);
        let mut cur = o.clone();
        let mut total = IntMatrix::identity(model.rank(), model.rank());
        for _ in 0..4 {
            let a = generator_action(&cur, Generator::S);
            total = &a.matrix * total;
            cur = a.target;
        }
        assert_eq!(cur, o);
        // Here the composite relabelling is trivial, hence so is the map.
        assert_eq!(total, IntMatrix::identity(model.rank(), model.rank()));
    }

    #[test]
    fn deck_of_the_genus_three_example() {
        let o = cover_origami(4, [1, 1, 1, 1]);
        let model = HomologyModel::new(&o);
        let m = automorphism_action(&o, &model).unwrap();
        let r = model.rank();
        let mut p = IntMatrix::identity(r, r);
        for _ in 0..4 {
            p = &m * p;
        }
        assert_eq!(p, IntMatrix::identity(r, r));
        assert_eq!(m.transpose() * model.intersection() * &m, *model.intersection());
        // Four eigenvalues ±i on the zero part.
        let z = automorphism_zero_block(&o, &model).unwrap();
        assert_eq!(charpoly(&z), vec![1, 0, 2, 0, 1]);
    }

    #[test]
    fn missing_deck_is_an_error() {
        let o = l_shape();
        let model = HomologyModel::new(&o);
        assert!(matches!(automorphism_action(&o, &model), Err(Error::MissingDeck)));
    }
}
