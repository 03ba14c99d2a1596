//! Finite `SL(2,Z)` orbit of an origami, with the homology action on every
//! edge of its Schreier graph.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use super::action::{action_matrix, check_action, zero_block, ActionChecks, Generator, HomologyAction};
use super::homology::HomologyModel;
use super::intmat::IntMatrix;
use crate::flat::Origami;

#[derive(Debug, Clone, Serialize)]
pub struct Transition {
    pub generator: Generator,
    pub target: usize,
    pub matrix: IntMatrix,
    pub zero_block: IntMatrix,
}

#[derive(Debug, Clone, Serialize)]
pub struct Orbit {
    points: Vec<Origami>,
    models: Vec<HomologyModel>,
    /// Indexed by point, then by position in [`Generator::ALL`].
    transitions: Vec<Vec<Transition>>,
}

fn slot(g: Generator) -> usize {
    Generator::ALL.iter().position(|&x| x == g).unwrap()
}

impl Orbit {
    /// Breadth-first closure of `o` under `T` and `S`; the first point is the
    /// canonical form of `o`.
    pub fn new(o: &Origami) -> Self {
        Orbit::closure(o, &[Generator::T, Generator::S])
    }

    fn closure(o: &Origami, gens: &[Generator]) -> Self {
        let start = o.without_deck().canonical().origami;
        let mut points = vec![start.clone()];
        let mut index = HashMap::from([(start, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for &g in gens {
                let image = g.apply(&points[i]).canonical().origami;
                if !index.contains_key(&image) {
                    index.insert(image.clone(), points.len());
                    queue.push_back(points.len());
                    points.push(image);
                }
            }
        }
        let models: Vec<HomologyModel> = points.iter().map(HomologyModel::new).collect();
        let transitions = points
            .iter()
            .enumerate()
            .map(|(i, p)| {
                Generator::ALL
                    .iter()
                    .map(|&g| {
                        let canon = g.apply(p).canonical();
                        let target = *index
                            .get(&canon.origami)
                            .expect("orbit is closed under every generator");
                        let matrix = action_matrix(p, &models[i], g, &canon, &models[target]);
                        let zero_block = zero_block(&models[i], &matrix, &models[target]);
                        Transition { generator: g, target, matrix, zero_block }
                    })
                    .collect()
            })
            .collect();
        Orbit { points, models, transitions }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Origami] {
        &self.points
    }

    pub fn model(&self, i: usize) -> &HomologyModel {
        &self.models[i]
    }

    pub fn genus(&self) -> usize {
        self.models[0].genus()
    }

    pub fn index_of(&self, o: &Origami) -> Option<usize> {
        let c = o.without_deck().canonical().origami;
        self.points.iter().position(|p| *p == c)
    }

    pub fn transition(&self, i: usize, g: Generator) -> &Transition {
        &self.transitions[i][slot(g)]
    }

    pub fn action(&self, i: usize, g: Generator) -> HomologyAction {
        let t = self.transition(i, g);
        HomologyAction {
            generator: g,
            source: self.points[i].clone(),
            target: self.points[t.target].clone(),
            sl2: g.sl2(),
            matrix: t.matrix.clone(),
            zero_block: t.zero_block.clone(),
        }
    }

    /// Exact checks on every transition.
    pub fn check_all(&self) -> Vec<(usize, Generator, ActionChecks)> {
        (0..self.len())
            .flat_map(|i| {
                Generator::ALL.iter().map(move |&g| {
                    let t = self.transition(i, g);
                    (i, g, check_action(&self.models[i], &t.matrix, &g.sl2(), &self.models[t.target]))
                })
            })
            .collect()
    }

    /// Follows `word` (applied left to right) from point `i`; returns the end
    /// point and the composite matrix.
    pub fn walk(&self, i: usize, word: &[Generator]) -> (usize, IntMatrix) {
        let r = self.models[i].rank();
        let mut m = IntMatrix::identity(r, r);
        let mut at = i;
        for &g in word {
            let t = self.transition(at, g);
            m = &t.matrix * m;
            at = t.target;
        }
        (at, m)
    }

    /// Length of the cycle of `g` through point `i`.
    pub fn cycle_length(&self, i: usize, g: Generator) -> usize {
        let mut at = self.transition(i, g).target;
        let mut len = 1;
        while at != i {
            at = self.transition(at, g).target;
            len += 1;
        }
        len
    }
}

pub fn orbit(o: &Origami) -> Orbit {
    Orbit::new(o)
}
