//! Shared fixtures and comparison helpers for the integration test targets.
#![allow(dead_code)]

pub mod criteria;
pub mod props;

use itertools::Itertools;
use nefpart_core::geometry::*;
use nefpart_core::goodpair::GoodPair;
use nefpart_core::linalg::*;
use nefpart_core::toric::*;
use num_traits::ToPrimitive;

pub fn pt(v: &[i64]) -> QVec {
    qvec_from_i64(v)
}

pub fn fr(p: i64, q: i64) -> Rat {
    Rat::new(Int::from(p), Int::from(q))
}

pub fn iv(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

pub fn hull(points: &[QVec], dim: usize) -> RationalPolytope {
    convex_hull(points, dim).unwrap()
}

/// Ambient of a (fake) weighted projective space together with the map
/// `perm[i]` = index of the i-th weight's ray in the ambient's ray order.
pub fn wps_ambient(w: &[i64]) -> (ToricAmbient, Vec<usize>) {
    let wi: Vec<Int> = iv(w);
    let rays = wps_rays(&wi);
    let pts: Vec<QVec> = rays.iter().map(|r| int_to_qvec(r)).collect();
    let dp = convex_hull(&pts, w.len() - 1).unwrap();
    let delta = polar(&dp).unwrap();
    let a = ambient_from_polytope(&delta).unwrap();
    let perm: Vec<usize> = rays
        .iter()
        .map(|r| a.rays.iter().position(|x| x == r).unwrap())
        .collect();
    (a, perm)
}

/// Exponent vector in the ambient's ray order from (variable, exponent)
/// pairs in the weight order.
pub fn mono(perm: &[usize], r: usize, exps: &[(usize, i64)]) -> Vec<Int> {
    let mut e = vec![Int::from(0); r];
    for &(v, x) in exps {
        e[perm[v]] = Int::from(x);
    }
    e
}

fn sorted_supports(supports: &[Vec<Vec<Int>>]) -> Vec<Vec<Vec<Int>>> {
    supports
        .iter()
        .map(|s| {
            let mut s = s.clone();
            s.sort();
            s
        })
        .collect()
}

fn try_column_permutation(a: &[Vec<Vec<Int>>], b: &[Vec<Vec<Int>>]) -> bool {
    if a.len() != b.len() || a.iter().zip(b).any(|(x, y)| x.len() != y.len()) {
        return false;
    }
    let cols = a[0][0].len();
    let b_sorted = sorted_supports(b);
    for perm in (0..cols).permutations(cols) {
        let remapped: Vec<Vec<Vec<Int>>> = a
            .iter()
            .map(|eq| {
                let mut eq: Vec<Vec<Int>> = eq
                    .iter()
                    .map(|m| {
                        let mut e = vec![Int::from(0); cols];
                        for (j, x) in m.iter().enumerate() {
                            e[perm[j]] = x.clone();
                        }
                        e
                    })
                    .collect();
                eq.sort();
                eq
            })
            .collect();
        if remapped == b_sorted {
            return true;
        }
    }
    false
}

/// Do two systems of supports agree after renaming (permuting) variables,
/// optionally also after swapping the two equations?
pub fn supports_match_up_to_permutation(
    a: &[Vec<Vec<Int>>],
    b: &[Vec<Vec<Int>>],
    allow_swap: bool,
) -> bool {
    if try_column_permutation(a, b) {
        return true;
    }
    if allow_swap && a.len() == 2 {
        let swapped = vec![a[1].clone(), a[0].clone()];
        return try_column_permutation(&swapped, b);
    }
    false
}

/// The distinguished (marked) monomial of each block of a good pair: the
/// product of the block's variables, in the ambient's ray order.
pub fn marked_of_pair(p: &GoodPair, a: &ToricAmbient) -> Vec<Vec<Int>> {
    let rmap: Vec<usize> = p
        .outer
        .delta_polar
        .vertices
        .iter()
        .map(|v| a.rays.iter().position(|r| int_to_qvec(r) == *v).unwrap())
        .collect();
    p.outer
        .partition
        .blocks
        .iter()
        .map(|block| {
            let mut e = vec![Int::from(0); a.num_rays()];
            for &rho in block {
                e[rmap[rho]] = Int::from(1);
            }
            e
        })
        .collect()
}

/// HNF basis of the lattice of exponent vectors invariant under the grading
/// `w` together with the cyclic gradings `1/k(q_1, ..., q_r)`.
pub fn grading_kernel(w: &[i64], quots: &[(i64, Vec<i64>)]) -> Vec<Vec<Int>> {
    let r = w.len();
    let t = quots.len();
    let mut rows: Vec<Vec<Int>> = Vec::new();
    let mut row0 = iv(w);
    row0.extend(std::iter::repeat(Int::from(0)).take(t));
    rows.push(row0);
    for (j, (k, q)) in quots.iter().enumerate() {
        assert_eq!(q.len(), r);
        let mut row = iv(q);
        for jj in 0..t {
            row.push(if jj == j { Int::from(-*k) } else { Int::from(0) });
        }
        rows.push(row);
    }
    let ker = kernel_z(&rows, r + t);
    let proj: Vec<Vec<Int>> = ker.iter().map(|v| v[..r].to_vec()).collect();
    lattice_hnf(&proj, r)
}

/// Do a fake-weighted-projective-space presentation and an expected one
/// define the same quotient, up to a weight-preserving renaming of the
/// variables? Equality of the invariant-monomial lattices is the invariant
/// comparison; the expected quotients are given as `(order, residues)`.
pub fn gradings_match(fake: &FakeWpsData, exp_w: &[i64], exp_quots: &[(i64, Vec<i64>)]) -> bool {
    let fw: Vec<i64> = fake.weights.iter().map(|x| x.to_i64().unwrap()).collect();
    if fw.len() != exp_w.len() {
        return false;
    }
    let fq: Vec<(i64, Vec<i64>)> = fake
        .quotient_gradings
        .iter()
        .map(|q| {
            (
                q.order.to_i64().unwrap(),
                q.residues.iter().map(|x| x.to_i64().unwrap()).collect(),
            )
        })
        .collect();
    let mut sa = fw.clone();
    sa.sort();
    let mut sb = exp_w.to_vec();
    sb.sort();
    if sa != sb {
        return false;
    }
    let kf = grading_kernel(&fw, &fq);
    let r = fw.len();
    for perm in (0..r).permutations(r) {
        if (0..r).any(|i| exp_w[perm[i]] != fw[i]) {
            continue;
        }
        let pw: Vec<i64> = (0..r).map(|i| exp_w[perm[i]]).collect();
        let pq: Vec<(i64, Vec<i64>)> = exp_quots
            .iter()
            .map(|(k, res)| (*k, (0..r).map(|i| res[perm[i]]).collect()))
            .collect();
        if grading_kernel(&pw, &pq) == kf {
            return true;
        }
    }
    false
}
