//! Flat geometry of the cover: the slit model over the pillowcase and the
//! square-tiled surface it becomes when the quadratic differential is a square.

mod complex;
mod origami;
mod perm;

pub use complex::{
    ConePoint, Corner, Gluing, GluingKind, Half, PillowComplex, Side, StratumSignature,
};
pub use origami::{Canonical, Deck, DeckKind, Origami};
pub use perm::{parse_cycles, Perm};

use crate::cyclic::CoverParams;
use crate::error::Result;

pub fn build_cover_complex(p: &CoverParams) -> PillowComplex {
    PillowComplex::build(p)
}

pub fn stratum_signature(c: &PillowComplex) -> StratumSignature {
    c.stratum_signature()
}

pub fn holonomy_orientable(c: &PillowComplex) -> bool {
    c.holonomy_orientable()
}

pub fn to_origami(c: &PillowComplex) -> Result<Origami> {
    c.to_origami()
}

pub fn origami_genus(o: &Origami) -> usize {
    o.genus()
}

pub fn deck_check(o: &Origami) -> bool {
    o.deck_check()
}
