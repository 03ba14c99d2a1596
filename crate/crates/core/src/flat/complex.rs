//! Slit model of `M_N(a)` over the pillowcase.
//!
//! The pillowcase is the front square `[0,1]²` and the back square `[1,2]×[0,1]`
//! of the quotient of `R²/(2Z)²` by `z ↦ −z`. Its corners are the branch points
//! `x₁=(0,0)`, `x₂=(1,0)`, `x₃=(1,1)`, `x₄=(0,1)`. The four seams between the
//! squares are the segments `x₁x₂` (bottom, half-turn), `x₂x₃` (middle,
//! translation), `x₃x₄` (top, half-turn) and `x₄x₁` (outer, translation).
//!
//! The cover stacks `N` pillowcases; crossing a seam from front to back moves
//! up by the seam's level shift. With the outer seam unshifted, the shifts
//! `bottom = −a₁`, `middle = −a₁−a₂`, `top = a₄` give monodromy `a_μ` around
//! each `x_μ`.

use serde::{Deserialize, Serialize};

use super::origami::{Deck, DeckKind, Origami};
use super::perm::Perm;
use crate::cyclic::CoverParams;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Bottom,
    Right,
    Top,
    Left,
}

impl Side {
    const ALL: [Side; 4] = [Side::Bottom, Side::Right, Side::Top, Side::Left];

    /// Endpoints in counter-clockwise order along the square's boundary.
    fn endpoints(self) -> (Corner, Corner) {
        match self {
            Side::Bottom => (Corner::BottomLeft, Corner::BottomRight),
            Side::Right => (Corner::BottomRight, Corner::TopRight),
            Side::Top => (Corner::TopRight, Corner::TopLeft),
            Side::Left => (Corner::TopLeft, Corner::BottomLeft),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Corner {
    BottomLeft,
    BottomRight,
    TopRight,
    TopLeft,
}

impl Corner {
    const ALL: [Corner; 4] = [
        Corner::BottomLeft,
        Corner::BottomRight,
        Corner::TopRight,
        Corner::TopLeft,
    ];

    fn index(self) -> usize {
        self as usize
    }

    /// The side crossed when turning counter-clockwise out of this corner.
    fn ccw_exit(self) -> Side {
        match self {
            Corner::BottomLeft => Side::Left,
            Corner::BottomRight => Side::Bottom,
            Corner::TopRight => Side::Right,
            Corner::TopLeft => Side::Top,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GluingKind {
    Translation,
    HalfTurn,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gluing {
    pub cell: usize,
    pub side: Side,
    pub kind: GluingKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Half {
    Front,
    Back,
}

/// A point of the cover lying over a corner of the pillowcase.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConePoint {
    /// Branch point index `μ ∈ 0..4`.
    pub branch: usize,
    /// Number of square corners meeting here; the cone angle is `corners · π/2`.
    pub corners: usize,
}

impl ConePoint {
    /// Order of the quadratic differential at this point (`−1` is a simple pole).
    pub fn quadratic_order(&self) -> i64 {
        self.corners as i64 / 2 - 2
    }
}

/// `2N` unit squares, cell `2ℓ + h` being level `ℓ` of the front (`h = 0`) or
/// back (`h = 1`) square.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PillowComplex {
    params: CoverParams,
    /// Level shift when crossing each seam front-to-back:
    /// `[bottom, middle, top, outer]`.
    seam_shifts: [u32; 4],
    gluings: Vec<[Gluing; 4]>,
    cone_points: Vec<ConePoint>,
    /// Cone point of each `(cell, corner)`.
    corner_vertex: Vec<[usize; 4]>,
}

impl PillowComplex {
    pub fn build(p: &CoverParams) -> Self {
        let n = p.n();
        let [a1, a2, _, a4] = p.a();
        let neg = |x: u32| (n - x % n) % n;
        let seam_shifts = [neg(a1), neg((a1 + a2) % n), a4 % n, 0];
        let cell = |level: u32, half: Half| 2 * level as usize + matches!(half, Half::Back) as usize;
        let mut gluings = vec![
            [Gluing { cell: 0, side: Side::Bottom, kind: GluingKind::Translation }; 4];
            2 * n as usize
        ];
        // (front side, back side, seam, kind)
        let seams = [
            (Side::Bottom, Side::Bottom, 0, GluingKind::HalfTurn),
            (Side::Right, Side::Left, 1, GluingKind::Translation),
            (Side::Top, Side::Top, 2, GluingKind::HalfTurn),
            (Side::Left, Side::Right, 3, GluingKind::Translation),
        ];
        for level in 0..n {
            for &(front_side, back_side, seam, kind) in &seams {
                let f = cell(level, Half::Front);
                let b = cell((level + seam_shifts[seam]) % n, Half::Back);
                gluings[f][front_side as usize] = Gluing { cell: b, side: back_side, kind };
                gluings[b][back_side as usize] = Gluing { cell: f, side: front_side, kind };
            }
        }
        let mut complex = PillowComplex {
            params: *p,
            seam_shifts,
            gluings,
            cone_points: Vec::new(),
            corner_vertex: Vec::new(),
        };
        complex.find_cone_points();
        complex
    }

    pub fn params(&self) -> &CoverParams {
        &self.params
    }

    pub fn cell_count(&self) -> usize {
        self.gluings.len()
    }

    pub fn seam_shifts(&self) -> [u32; 4] {
        self.seam_shifts
    }

    pub fn gluing(&self, cell: usize, side: Side) -> Gluing {
        self.gluings[cell][side as usize]
    }

    pub fn level_and_half(cell: usize) -> (u32, Half) {
        ((cell / 2) as u32, if cell.is_multiple_of(2) { Half::Front } else { Half::Back })
    }

    /// Total area in unit squares; the area-one normalisation is this factor.
    pub fn area_scale(&self) -> usize {
        self.cell_count()
    }

    /// Branch point under a corner of a front or back square.
    fn branch_of(cell: usize, corner: Corner) -> usize {
        match (Self::level_and_half(cell).1, corner) {
            (Half::Front, c) => c.index(),
            (Half::Back, Corner::BottomLeft) => 1,
            (Half::Back, Corner::BottomRight) => 0,
            (Half::Back, Corner::TopRight) => 3,
            (Half::Back, Corner::TopLeft) => 2,
        }
    }

    /// One counter-clockwise step around the vertex at `corner` of `cell`.
    fn rotate(&self, cell: usize, corner: Corner) -> (usize, Corner) {
        let g = self.gluing(cell, corner.ccw_exit());
        // Glued sides run in opposite directions: our end meets their start.
        (g.cell, g.side.endpoints().0)
    }

    fn find_cone_points(&mut self) {
        let cells = self.cell_count();
        let mut vertex = vec![[usize::MAX; 4]; cells];
        for c in 0..cells {
            for corner in Corner::ALL {
                if vertex[c][corner.index()] != usize::MAX {
                    continue;
                }
                let id = self.cone_points.len();
                let (mut x, mut k, mut count) = (c, corner, 0);
                loop {
                    vertex[x][k.index()] = id;
                    count += 1;
                    (x, k) = self.rotate(x, k);
                    if (x, k) == (c, corner) {
                        break;
                    }
                }
                self.cone_points.push(ConePoint { branch: Self::branch_of(c, corner), corners: count });
            }
        }
        self.corner_vertex = vertex;
    }

    pub fn cone_points(&self) -> &[ConePoint] {
        &self.cone_points
    }

    /// Genus from `χ = V − E + F` with `E = 4N`, `F = 2N`.
    pub fn genus(&self) -> i64 {
        let f = self.cell_count() as i64;
        let chi = self.cone_points.len() as i64 - 2 * f + f;
        (2 - chi) / 2
    }

    pub fn is_connected(&self) -> bool {
        self.coloring_walk(|_| GluingKind::Translation).is_some()
    }

    /// Level change along one counter-clockwise loop around `x_μ` on the sphere.
    pub fn loop_monodromy(&self, branch: usize) -> u32 {
        let n = self.params.n();
        let start = Corner::ALL[branch];
        let (mut x, mut k) = self.rotate(0, start);
        while !(Self::level_and_half(x).1 == Half::Front && k == start) {
            (x, k) = self.rotate(x, k);
        }
        Self::level_and_half(x).0 % n
    }

    /// Breadth-first 2-colouring where `parity(kind)` says whether a gluing
    /// flips the colour. Returns `None` on a conflict.
    fn coloring_walk(&self, parity: impl Fn(GluingKind) -> GluingKind) -> Option<Vec<bool>> {
        let cells = self.cell_count();
        let mut color: Vec<Option<bool>> = vec![None; cells];
        color[0] = Some(false);
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            let cx = color[x].unwrap();
            for side in Side::ALL {
                let g = self.gluing(x, side);
                let want = match parity(g.kind) {
                    GluingKind::Translation => cx,
                    GluingKind::HalfTurn => !cx,
                };
                match color[g.cell] {
                    None => {
                        color[g.cell] = Some(want);
                        stack.push(g.cell);
                    }
                    Some(c) if c != want => return None,
                    Some(_) => {}
                }
            }
        }
        color.into_iter().collect()
    }

    /// Squares to turn upside down so every gluing becomes a translation.
    pub fn orientation(&self) -> Option<Vec<bool>> {
        self.coloring_walk(|k| k)
    }

    /// Whether the `±1` holonomy of the flat structure is trivial.
    pub fn holonomy_orientable(&self) -> bool {
        self.orientation().is_some()
    }

    /// Quadratic orders at cone points (regular points dropped), and abelian
    /// orders when the differential is a square.
    pub fn stratum_signature(&self) -> StratumSignature {
        let mut quadratic: Vec<i64> = self
            .cone_points
            .iter()
            .map(ConePoint::quadratic_order)
            .filter(|&k| k != 0)
            .collect();
        quadratic.sort_unstable_by(|a, b| b.cmp(a));
        let abelian = self
            .holonomy_orientable()
            .then(|| quadratic.iter().map(|k| k / 2).collect());
        StratumSignature { quadratic_orders: quadratic, abelian_orders: abelian }
    }

    pub fn to_origami(&self) -> Result<Origami> {
        self.to_origami_oriented(false)
    }

    /// Like [`to_origami`](Self::to_origami) with the opposite choice of which
    /// squares keep their orientation when `flip` is set.
    pub fn to_origami_oriented(&self, flip: bool) -> Result<Origami> {
        let upside_down = self
            .orientation()
            .ok_or_else(|| Error::NotOrientable(self.params.to_string()))?;
        let cells = self.cell_count();
        let mut right = Vec::with_capacity(cells);
        let mut up = Vec::with_capacity(cells);
        for (c, &turned) in upside_down.iter().enumerate() {
            let (r, u) = if turned != flip { (Side::Left, Side::Bottom) } else { (Side::Right, Side::Top) };
            right.push(self.gluing(c, r).cell);
            up.push(self.gluing(c, u).cell);
        }
        let n = self.params.n() as usize;
        let deck = (0..cells).map(|c| (c + 2) % (2 * n)).collect();
        Origami::new(Perm::from_images(right)?, Perm::from_images(up)?)?.with_deck(Deck {
            perm: Perm::from_images(deck)?,
            degree: n as u32,
            kind: DeckKind::HalfTurn,
        })
    }
}

/// Orders of zeros (and poles, `−1`) of the quadratic differential and, when
/// it is a global square, of its square root.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumSignature {
    pub quadratic_orders: Vec<i64>,
    pub abelian_orders: Option<Vec<i64>>,
}

impl StratumSignature {
    pub fn total_quadratic_order(&self) -> i64 {
        self.quadratic_orders.iter().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::{genus, square_root_index};

    fn complex(n: u32, a: [i64; 4]) -> PillowComplex {
        PillowComplex::build(&CoverParams::new(n, a).unwrap())
    }

    #[test]
    fn every_edge_glued_once_and_symmetrically() {
        let c = complex(6, [1, 1, 1, 3]);
        for cell in 0..c.cell_count() {
            for side in Side::ALL {
                let g = c.gluing(cell, side);
                let back = c.gluing(g.cell, g.side);
                assert_eq!((back.cell, back.side), (cell, side));
                assert_eq!(back.kind, g.kind);
            }
        }
    }

    #[test]
    fn torus_cover() {
        let c = complex(2, [1, 1, 1, 1]);
        assert_eq!(c.cell_count(), 4);
        assert_eq!(c.genus(), 1);
        assert!(c.stratum_signature().quadratic_orders.is_empty());
        assert!(c.holonomy_orientable());
    }

    #[test]
    fn example_complex() {
        let c = complex(6, [1, 1, 1, 3]);
        assert_eq!(c.cell_count(), 12);
        assert_eq!(c.area_scale(), 12);
        assert_eq!(c.genus(), 4);
        let s = c.stratum_signature();
        assert_eq!(s.quadratic_orders, vec![4, 4, 4]);
        assert_eq!(s.abelian_orders, Some(vec![2, 2, 2]));
        assert_eq!(s.total_quadratic_order(), 4 * 4 - 4);
    }

    #[test]
    fn genus_three_complex() {
        let s = complex(4, [1, 1, 1, 1]).stratum_signature();
        assert_eq!(s.abelian_orders, Some(vec![1, 1, 1, 1]));
    }

    #[test]
    fn odd_cone_orders_block_orientation() {
        let c = complex(3, [1, 1, 2, 2]);
        assert!(!c.holonomy_orientable());
        assert_eq!(c.stratum_signature().abelian_orders, None);
        assert!(matches!(c.to_origami(), Err(Error::NotOrientable(_))));
        assert_eq!(square_root_index(c.params()), None);
    }

    #[test]
    fn monodromy_and_cone_angles_match_branch_data() {
        for p in [
            CoverParams::new(6, [1, 1, 1, 3]).unwrap(),
            CoverParams::new(12, [1, 4, 9, 10]).unwrap(),
            CoverParams::new(5, [1, 2, 3, 4]).unwrap(),
        ] {
            let c = PillowComplex::build(&p);
            assert!(c.is_connected());
            assert_eq!(c.genus(), genus(&p) as i64);
            for mu in 0..4 {
                assert_eq!(c.loop_monodromy(mu), p.a()[mu], "{p} around x{}", mu + 1);
            }
            for v in c.cone_points() {
                assert_eq!(v.corners, 2 * p.ramification()[v.branch] as usize);
            }
        }
    }

    #[test]
    fn example_origami() {
        let c = complex(6, [1, 1, 1, 3]);
        let o = c.to_origami().unwrap();
        assert_eq!(o.degree(), 12);
        assert_eq!(o.genus(), 4);
        assert_eq!(o.stratum(), vec![2, 2, 2]);
        assert!(o.deck_check());
        let flipped = c.to_origami_oriented(true).unwrap();
        assert!(o.is_isomorphic(&flipped));
    }

    #[test]
    fn torus_origami_commutes() {
        let o = complex(2, [1, 1, 1, 1]).to_origami().unwrap();
        assert_eq!(o.degree(), 4);
        assert_eq!(o.sigma_h().compose(o.sigma_v()), o.sigma_v().compose(o.sigma_h()));
        assert_eq!(o.genus(), 1);
        assert!(o.deck_check());
        assert_eq!(o.deck().unwrap().perm.order(), 2);
    }
}
