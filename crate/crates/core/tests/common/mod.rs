//! Independent oracles shared by the integration and acceptance targets.
#![allow(dead_code)]

use kzcover::cocycle::intmat::{cyclotomic, poly_div_exact, poly_mul, Poly};
use kzcover::cyclic::{eigenspace_dims, CoverParams};
use kzcover::flat::{Origami, PillowComplex};

pub fn cover(n: u32, a: [i64; 4]) -> CoverParams {
    CoverParams::new(n, a).unwrap()
}

pub fn cover_origami(p: &CoverParams) -> Origami {
    PillowComplex::build(p).to_origami().unwrap()
}

/// The 3-square surface in the stratum with one double zero.
pub fn l_shape() -> Origami {
    Origami::from_cycle_strings(3, "(1,2,3)", "(1,2)").unwrap()
}

/// Every valid parameter tuple (not just class representatives) with `N ≤ n_max`.
pub fn all_covers(n_max: u32) -> Vec<CoverParams> {
    let mut out = Vec::new();
    for n in 2..=n_max {
        for a1 in 1..n {
            for a2 in 1..n {
                for a3 in 1..n {
                    let a4 = (4 * n - a1 - a2 - a3) % n;
                    if let Ok(p) = CoverParams::new(n, [a1, a2, a3, a4].map(i64::from)) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

pub fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Characteristic polynomial of the deck on the zero part, predicted from the
/// eigenspace dimensions alone: `ε^i` occurs in `H¹` with multiplicity
/// `dim L_i + dim L_{N−i}`, and the tautological pair (eigenvalue `−1` for a
/// half-turn deck) is removed.
pub fn predicted_zero_charpoly(p: &CoverParams) -> Poly {
    let n = p.n();
    let dims = eigenspace_dims(p);
    let mut poly: Poly = vec![1];
    for d in (1..=n).filter(|d| n.is_multiple_of(*d)) {
        let members: Vec<u32> = (1..n).filter(|&i| n / gcd(i, n) == d).collect();
        let mults: Vec<u32> = members.iter().map(|&i| dims.get(i) + dims.get(n - i)).collect();
        if let Some(&m) = mults.first() {
            assert!(mults.iter().all(|&x| x == m), "multiplicity is Galois invariant");
            for _ in 0..m {
                poly = poly_mul(&poly, &cyclotomic(d));
            }
        }
    }
    poly_div_exact(&poly, &[1, 2, 1]).expect("the tautological pair has eigenvalue −1")
}

const PRIME: u64 = 2_305_843_009_213_693_951; // 2^61 − 1

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn inv_mod(a: u64) -> u64 {
    let (mut base, mut e, mut acc) = (a, PRIME - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        e >>= 1;
    }
    acc
}

/// Rank over `F_p`, `p = 2⁶¹ − 1`, by Gaussian elimination.
pub fn rank_mod_p(mut m: Vec<Vec<u64>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        let inv = inv_mod(m[rank][c]);
        for r in 0..rows {
            if r != rank && m[r][c] != 0 {
                let f = mul_mod(m[r][c], inv);
                for k in 0..cols {
                    let sub = mul_mod(f, m[rank][k]);
                    m[r][k] = (m[r][k] + PRIME - sub) % PRIME;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// A matrix with random non-zero entries exactly on `support`.
pub fn random_on_support(support: &[Vec<bool>], rng: &mut impl rand::Rng) -> Vec<Vec<u64>> {
    support
        .iter()
        .map(|row| {
            row.iter()
                .map(|&allowed| if allowed { rng.random_range(1..PRIME) } else { 0 })
                .collect()
        })
        .collect()
}
