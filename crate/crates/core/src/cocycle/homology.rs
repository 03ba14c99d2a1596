//! Integral first homology of a square-tiled surface.
//!
//! Cycles are written on the graph through square centres: edge `i` is the
//! horizontal segment from the centre of square `i` to the centre of
//! `σ_h(i)`, edge `d + i` the vertical one to `σ_v(i)`. The faces of this graph
//! are the cone points. A spanning tree of squares and a spanning tree of
//! faces using the remaining edges leave exactly `2g` edges; their fundamental
//! cycles are a `Z`-basis of `H₁(M; Z)`.
//!
//! Intersection numbers are computed by pushing one cycle onto the square
//! edges (same coefficients), where it meets the centre graph transversally at
//! edge midpoints.

use std::collections::VecDeque;

use serde::Serialize;

use super::intmat::{column_reduce, det, IntMatrix};
use crate::flat::Origami;

#[derive(Debug, Clone, Serialize)]
pub struct HomologyModel {
    degree: usize,
    genus: usize,
    /// `2d × 2g`: chains of the basis cycles.
    basis: IntMatrix,
    /// `2g × 2d`: coordinates of any cycle in the basis.
    coords: IntMatrix,
    /// `2g × 2g` intersection form on the basis.
    intersection: IntMatrix,
    /// `2 × 2g`: holonomy vector of each basis cycle.
    holonomy: IntMatrix,
    /// `2g × 2`: the horizontal and vertical tautological cycles.
    taut_basis: IntMatrix,
    /// `2g × (2g−2)`: a `Z`-basis of the kernel of the holonomy.
    zero_basis: IntMatrix,
    /// `(2g−2) × 2g`: coordinates in `zero_basis`, valid on that kernel.
    zero_coords: IntMatrix,
    /// Boundaries of the faces (cone points) as chains, one column each.
    face_boundaries: IntMatrix,
}

fn h_edge(i: usize) -> usize {
    i
}

fn v_edge(d: usize, i: usize) -> usize {
    d + i
}

impl HomologyModel {
    pub fn new(o: &Origami) -> Self {
        let d = o.degree();
        let edges = 2 * d;
        let sh = o.sigma_h();
        let sv = o.sigma_v();
        let endpoints = |e: usize| {
            if e < d {
                (e, sh.apply(e))
            } else {
                (e - d, sv.apply(e - d))
            }
        };

        // Spanning tree of squares: parent edge and whether it points parent → child.
        let mut parent: Vec<Option<(usize, usize, bool)>> = vec![None; d];
        let mut in_tree = vec![false; edges];
        let mut reached = vec![false; d];
        reached[0] = true;
        let mut queue = VecDeque::from([0]);
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); d];
        for e in 0..edges {
            let (a, b) = endpoints(e);
            incident[a].push(e);
            if b != a {
                incident[b].push(e);
            }
        }
        while let Some(x) = queue.pop_front() {
            for &e in &incident[x] {
                let (a, b) = endpoints(e);
                let (y, forward) = if a == x { (b, true) } else { (a, false) };
                if !reached[y] {
                    reached[y] = true;
                    in_tree[e] = true;
                    parent[y] = Some((x, e, forward));
                    queue.push_back(y);
                }
            }
        }
        let path_to_root = |mut x: usize| {
            let mut chain = vec![0i64; edges];
            while let Some((p, e, forward)) = parent[x] {
                chain[e] += if forward { -1 } else { 1 };
                x = p;
            }
            chain
        };

        // Faces: cycles of the corner commutator.
        let kappa = o.corner_commutator();
        let hi = sh.inverse();
        let faces = kappa.cycles();
        let mut face_boundaries = IntMatrix::zeros(edges, faces.len());
        for (f, cycle) in faces.iter().enumerate() {
            for &j in cycle {
                let over = hi.apply(sv.apply(sh.apply(j)));
                face_boundaries[(h_edge(j), f)] += 1;
                face_boundaries[(v_edge(d, sh.apply(j)), f)] += 1;
                face_boundaries[(h_edge(over), f)] -= 1;
                face_boundaries[(v_edge(d, kappa.apply(j)), f)] -= 1;
            }
        }
        let mut edge_faces: Vec<Vec<(usize, i64)>> = vec![Vec::new(); edges];
        for f in 0..faces.len() {
            for e in 0..edges {
                let c = face_boundaries[(e, f)];
                if c != 0 {
                    edge_faces[e].push((f, c));
                }
            }
        }

        // Spanning tree of faces through edges not in the square tree.
        let mut face_parent: Vec<Option<(usize, usize)>> = vec![None; faces.len()];
        let mut face_order = vec![0];
        let mut in_cotree = vec![false; edges];
        let mut face_reached = vec![false; faces.len()];
        face_reached[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(f) = queue.pop_front() {
            for e in 0..edges {
                if in_tree[e] || edge_faces[e].len() != 2 {
                    continue;
                }
                let [(f1, _), (f2, _)] = [edge_faces[e][0], edge_faces[e][1]];
                let other = if f1 == f { f2 } else if f2 == f { f1 } else { continue };
                if !face_reached[other] {
                    face_reached[other] = true;
                    in_cotree[e] = true;
                    face_parent[other] = Some((f, e));
                    face_order.push(other);
                    queue.push_back(other);
                }
            }
        }
        let leftover: Vec<usize> = (0..edges).filter(|&e| !in_tree[e] && !in_cotree[e]).collect();
        let rank = leftover.len();
        let genus = o.genus();
        assert_eq!(rank, 2 * genus, "tree–cotree leftover must have 2g edges");

        let mut basis = IntMatrix::zeros(edges, rank);
        for (k, &e) in leftover.iter().enumerate() {
            let (tail, head) = endpoints(e);
            let to_head = path_to_root(head);
            let to_tail = path_to_root(tail);
            for i in 0..edges {
                basis[(i, k)] = to_head[i] - to_tail[i];
            }
            basis[(e, k)] += 1;
        }

        // Coordinates: subtract face boundaries until the cotree edges vanish,
        // then read the leftover edges.
        let coef = |e: usize, f: usize| face_boundaries[(e, f)];
        let mut coords = IntMatrix::zeros(rank, edges);
        for unit in 0..edges {
            let mut z = vec![0i64; edges];
            z[unit] = 1;
            let mut potential = vec![0i64; faces.len()];
            for &f in face_order.iter().skip(1) {
                let (pf, e) = face_parent[f].unwrap();
                potential[f] = (z[e] - potential[pf] * coef(e, pf)) * coef(e, f);
            }
            for (k, &e) in leftover.iter().enumerate() {
                let correction: i64 = (0..faces.len()).map(|f| potential[f] * coef(e, f)).sum();
                coords[(k, unit)] = z[e] - correction;
            }
        }

        let mut crossing = IntMatrix::zeros(edges, edges);
        for i in 0..d {
            crossing[(h_edge(i), v_edge(d, sh.apply(i)))] += 1;
            crossing[(v_edge(d, i), h_edge(sv.apply(i)))] -= 1;
        }
        let intersection = basis.transpose() * &crossing * &basis;

        let mut hol_chain = IntMatrix::zeros(2, edges);
        for i in 0..d {
            hol_chain[(0, h_edge(i))] = 1;
            hol_chain[(1, v_edge(d, i))] = 1;
        }
        let holonomy = &hol_chain * &basis;
        let taut_chains = hol_chain.transpose();
        let taut_basis = &coords * &taut_chains;

        let (u, u_inv, hol_rank) = column_reduce(&holonomy);
        assert_eq!(hol_rank, 2, "holonomy of an origami spans the plane");
        let zero_basis = u.columns(2, rank - 2).into_owned();
        let zero_coords = u_inv.rows(2, rank - 2).into_owned();

        HomologyModel {
            degree: d,
            genus,
            basis,
            coords,
            intersection,
            holonomy,
            taut_basis,
            zero_basis,
            zero_coords,
            face_boundaries,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn rank(&self) -> usize {
        2 * self.genus
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn coords(&self) -> &IntMatrix {
        &self.coords
    }

    pub fn intersection(&self) -> &IntMatrix {
        &self.intersection
    }

    pub fn holonomy(&self) -> &IntMatrix {
        &self.holonomy
    }

    pub fn taut_basis(&self) -> &IntMatrix {
        &self.taut_basis
    }

    pub fn zero_basis(&self) -> &IntMatrix {
        &self.zero_basis
    }

    pub fn zero_coords(&self) -> &IntMatrix {
        &self.zero_coords
    }

    pub fn face_boundaries(&self) -> &IntMatrix {
        &self.face_boundaries
    }

    /// Coordinates of a cycle given as a chain on the centre graph.
    pub fn coordinates(&self, chain: &IntMatrix) -> IntMatrix {
        &self.coords * chain
    }

    /// Whether the intersection form is antisymmetric with determinant one.
    pub fn is_unimodular(&self) -> bool {
        self.intersection.transpose() == -&self.intersection && det(&self.intersection) == 1
    }

    /// Intersection form restricted to the kernel of the holonomy.
    pub fn zero_intersection(&self) -> IntMatrix {
        self.zero_basis.transpose() * &self.intersection * &self.zero_basis
    }
}

pub fn homology_model(o: &Origami) -> HomologyModel {
    HomologyModel::new(o)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::CoverParams;
    use crate::flat::PillowComplex;

    fn cover_origami(n: u32, a: [i64; 4]) -> Origami {
        PillowComplex::build(&CoverParams::new(n, a).unwrap()).to_origami().unwrap()
    }

    fn samples() -> Vec<Origami> {
        vec![
            Origami::torus(),
            Origami::from_cycle_strings(3, "(1,2,3)", "(1,2)").unwrap(),
            Origami::from_cycle_strings(4, "(1,2,3,4)", "(1,3)").unwrap(),
            cover_origami(2, [1, 1, 1, 1]),
            cover_origami(4, [1, 1, 1, 1]),
            cover_origami(6, [1, 1, 1, 3]),
            cover_origami(8, [1, 1, 1, 5]),
        ]
    }

    #[test]
    fn torus_model() {
        let m = HomologyModel::new(&Origami::torus());
        assert_eq!(m.rank(), 2);
        assert_eq!(m.intersection(), &IntMatrix::from_row_slice(2, 2, &[0, 1, -1, 0]));
        assert_eq!(m.zero_basis().ncols(), 0);
    }

    #[test]
    fn ranks_of_examples() {
        let m = HomologyModel::new(&cover_origami(6, [1, 1, 1, 3]));
        assert_eq!((m.rank(), m.zero_basis().ncols()), (8, 6));
        let m = HomologyModel::new(&cover_origami(4, [1, 1, 1, 1]));
        assert_eq!((m.rank(), m.zero_basis().ncols()), (6, 4));
    }

    #[test]
    fn structural_invariants() {
        for o in samples() {
            let m = HomologyModel::new(&o);
            let r = m.rank();
            assert_eq!(r, 2 * o.genus());
            // Coordinates invert the basis and kill face boundaries.
            assert_eq!(m.coords() * m.basis(), IntMatrix::identity(r, r));
            assert!((m.coords() * m.face_boundaries()).iter().all(|&x| x == 0));
            assert!(m.is_unimodular(), "{o}");
            // The zero part is orthogonal to the tautological plane.
            let cross = m.taut_basis().transpose() * m.intersection() * m.zero_basis();
            assert!(cross.iter().all(|&x| x == 0));
            assert!((m.holonomy() * m.zero_basis()).iter().all(|&x| x == 0));
            assert_eq!(m.zero_coords() * m.zero_basis(), IntMatrix::identity(r - 2, r - 2));
            // The tautological pair meets with multiplicity d.
            let tt = m.taut_basis().transpose() * m.intersection() * m.taut_basis();
            assert_eq!(tt[(0, 1)], o.degree() as i64);
        }
    }
}
