//! Randomized property suites shared by the `properties` and `acceptance`
//! test targets. Every suite is deterministic (fixed ChaCha seeds) and runs
//! at least 200 cases.

use super::*;
use itertools::Itertools;
use nefpart_core::geometry::*;
use nefpart_core::gnp::*;
use nefpart_core::goodpair::*;
use nefpart_core::linalg::*;
use nefpart_core::regularity::*;
use nefpart_core::toric::*;
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const CASES: usize = 200;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random full-dimensional lattice polytope in dimension `d` with the
/// origin in its interior.
fn random_interior_origin_polytope(rng: &mut ChaCha8Rng, d: usize) -> RationalPolytope {
    loop {
        let k = rng.gen_range(d + 1..=d + 4);
        let pts: Vec<QVec> = (0..k)
            .map(|_| {
                let coords: Vec<i64> = (0..d).map(|_| rng.gen_range(-2..=2)).collect();
                pt(&coords)
            })
            .collect();
        let Ok(p) = convex_hull(&pts, d) else { continue };
        if p.dim == d as i64 && p.interior_contains(&zero_vec(d)) {
            return p;
        }
    }
}

/// A random full-dimensional rational polytope (not necessarily containing
/// the origin), with small denominators.
fn random_rational_polytope(rng: &mut ChaCha8Rng, d: usize) -> RationalPolytope {
    loop {
        let k = rng.gen_range(d + 1..=d + 3);
        let pts: Vec<QVec> = (0..k)
            .map(|_| {
                (0..d)
                    .map(|_| fr(rng.gen_range(-6..=6), rng.gen_range(1..=3)))
                    .collect()
            })
            .collect();
        let Ok(p) = convex_hull(&pts, d) else { continue };
        if p.dim == d as i64 {
            return p;
        }
    }
}

/// A random reflexive polytope (lattice polytope whose polar is lattice).
fn random_reflexive_polytope(rng: &mut ChaCha8Rng, d: usize) -> RationalPolytope {
    loop {
        let p = random_interior_origin_polytope(rng, d);
        if polar(&p).unwrap().is_lattice() {
            return p;
        }
    }
}

/// A random partition of `0..n` into exactly `s` nonempty blocks.
fn random_partition(rng: &mut ChaCha8Rng, n: usize, s: usize) -> VertexPartition {
    loop {
        let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); s];
        for i in 0..n {
            blocks[rng.gen_range(0..s)].push(i);
        }
        if blocks.iter().all(|b| !b.is_empty()) {
            return VertexPartition { blocks };
        }
    }
}

/// A random GNP on a random polytope (rejection-sampled).
fn random_gnp(rng: &mut ChaCha8Rng, d: usize) -> GeneralizedNefPartition {
    loop {
        let delta = random_interior_origin_polytope(rng, d);
        let nv = polar(&delta).unwrap().vertices.len();
        let s = rng.gen_range(2..=3.min(nv));
        let partition = random_partition(rng, nv, s);
        if let Ok(GnpResult::Gnp(g, _)) = is_gnp(&delta, &partition) {
            return g;
        }
    }
}

/// Suite 1: the polar of the polar is the original polytope.
pub fn polar_involution() {
    let mut rng = rng(101);
    for case in 0..CASES {
        let d = if case % 3 == 0 { 3 } else { 2 };
        let p = random_interior_origin_polytope(&mut rng, d);
        let q = polar(&p).unwrap();
        let r = polar(&q).unwrap();
        assert_eq!(r.vertices, p.vertices, "case {case}: {:?}", p.vertices);
    }
}

/// Suite 2: rebuilding a polytope from its own facet system recovers the
/// vertex description exactly.
pub fn vh_round_trip() {
    let mut rng = rng(102);
    for case in 0..CASES {
        let d = if case % 3 == 0 { 3 } else { 2 };
        let p = random_rational_polytope(&mut rng, d);
        let q = h_to_v(&p.facets, &p.equations, d).unwrap();
        assert_eq!(q.vertices, p.vertices, "case {case}: {:?}", p.vertices);
        assert_eq!(q.dim, p.dim);
    }
}

fn support_value(p: &RationalPolytope, u: &[Rat]) -> Rat {
    p.vertices.iter().map(|v| dot(v, u)).max().unwrap()
}

/// Suite 3: Minkowski sums are associative and their support functions add.
pub fn minkowski_identities() {
    let mut rng = rng(103);
    for case in 0..CASES {
        let d = 2;
        let a = random_rational_polytope(&mut rng, d);
        let b = random_rational_polytope(&mut rng, d);
        let c = random_rational_polytope(&mut rng, d);
        let s1 = minkowski_sum_all(&[a.clone(), b.clone(), c.clone()], d).unwrap();
        let ab = minkowski_sum_all(&[a.clone(), b.clone()], d).unwrap();
        let s2 = minkowski_sum_all(&[ab, c.clone()], d).unwrap();
        assert_eq!(s1.vertices, s2.vertices, "case {case}");
        for _ in 0..4 {
            let u = pt(&[rng.gen_range(-5..=5), rng.gen_range(-5..=5)]);
            assert_eq!(
                support_value(&s1, &u),
                support_value(&a, &u) + support_value(&b, &u) + support_value(&c, &u),
                "case {case}: direction {u:?}"
            );
        }
    }
}

/// Suite 4: a partition is a GNP exactly when its parts Minkowski-sum back
/// to the polytope.
pub fn gnp_iff_sum() {
    let mut rng = rng(104);
    for case in 0..CASES {
        let delta = random_interior_origin_polytope(&mut rng, 2);
        let dp = polar(&delta).unwrap();
        let nv = dp.vertices.len();
        let s = rng.gen_range(2..=3.min(nv));
        let partition = random_partition(&mut rng, nv, s);
        let verdict = matches!(is_gnp(&delta, &partition).unwrap(), GnpResult::Gnp(..));
        let parts = parts_from_partition(&delta, &dp, &partition).unwrap();
        let sums_back = if parts.iter().any(|p| p.is_empty()) {
            false
        } else {
            let sum = minkowski_sum_all(&parts, 2).unwrap();
            sum.vertices == delta.vertices
        };
        assert_eq!(verdict, sums_back, "case {case}: {partition:?}");
    }
}

/// Suite 5: dualizing a GNP twice gives back the GNP on the nose.
pub fn dual_involution() {
    let mut rng = rng(105);
    for case in 0..CASES {
        let g = random_gnp(&mut rng, 2);
        let d = dual_gnp(&g).unwrap();
        let dd = dual_gnp(&d).unwrap();
        assert_eq!(dd.delta.vertices, g.delta.vertices, "case {case}");
        assert_eq!(dd.partition, g.partition, "case {case}");
        assert_eq!(dd.parts, g.parts, "case {case}");
    }
}

/// Suite 6: irreducibility is preserved under duality.
pub fn irreducibility_duality() {
    let mut rng = rng(106);
    for case in 0..CASES {
        let g = random_gnp(&mut rng, 2);
        let d = dual_gnp(&g).unwrap();
        assert_eq!(
            is_irreducible(&g).unwrap().0,
            is_irreducible(&d).unwrap().0,
            "case {case}: {:?}",
            g.partition
        );
    }
}

/// Suite 7: the pair matrix of the dual pair is the transpose, labels
/// included.
pub fn pair_matrix_transpose() {
    let mut rng = rng(107);
    let mut done = 0;
    while done < CASES {
        let delta = random_reflexive_polytope(&mut rng, 2);
        let dp = polar(&delta).unwrap();
        let nv = dp.vertices.len();
        let s = rng.gen_range(2..=3.min(nv));
        let partition = random_partition(&mut rng, nv, s);
        let Ok(GnpResult::Gnp(g, _)) = is_gnp(&delta, &partition) else {
            continue;
        };
        let Ok(pair) = saturate_pair(&g) else { continue };
        let m = pair_matrix(&pair);
        let dual = dual_good_pair(&pair).unwrap();
        assert_eq!(pair_matrix(&dual), transpose(&m), "{partition:?}");
        done += 1;
    }
}

/// Independent brute-force oracle for dependence: some nonempty subset of
/// the nonempty slots spans, by vertex differences, a space of rank < size.
fn dependent_oracle(polys: &[Option<RationalPolytope>]) -> (bool, Option<Vec<usize>>) {
    let nonempty: Vec<usize> = (0..polys.len()).filter(|&i| polys[i].is_some()).collect();
    let mut witnesses: Vec<Vec<usize>> = Vec::new();
    for l in 1..=nonempty.len() {
        for combo in nonempty.iter().copied().combinations(l) {
            let mut diffs: Vec<QVec> = Vec::new();
            for &i in &combo {
                let p = polys[i].as_ref().unwrap();
                for v in &p.vertices[1..] {
                    diffs.push(sub(v, &p.vertices[0]));
                }
            }
            if rank(&diffs) + 1 <= l {
                witnesses.push(combo);
            }
        }
        if !witnesses.is_empty() {
            break;
        }
    }
    witnesses.sort();
    match witnesses.into_iter().next() {
        Some(w) => (true, Some(w)),
        None => (false, None),
    }
}

/// Suite 8: `is_dependent` agrees with the exhaustive oracle, witness
/// included (minimum size, then lexicographically least).
pub fn dependence_oracle() {
    let mut rng = rng(108);
    for case in 0..CASES {
        let d = rng.gen_range(2..=3);
        let n = rng.gen_range(1..=6);
        let polys: Vec<Option<RationalPolytope>> = (0..n)
            .map(|_| {
                if rng.gen_range(0..5) == 0 {
                    None
                } else {
                    let k = rng.gen_range(1..=3);
                    let pts: Vec<QVec> = (0..k)
                        .map(|_| {
                            let coords: Vec<i64> =
                                (0..d).map(|_| rng.gen_range(-2..=2)).collect();
                            pt(&coords)
                        })
                        .collect();
                    Some(convex_hull(&pts, d).unwrap())
                }
            })
            .collect();
        let got = is_dependent(&polys);
        let want = dependent_oracle(&polys);
        assert_eq!(got, want, "case {case}");
    }
}

/// Suite 9: `lattice_points` agrees with a bounding-box scan.
pub fn lattice_point_oracle() {
    let mut rng = rng(109);
    for case in 0..CASES {
        let d = if case % 3 == 0 { 3 } else { 2 };
        let p = random_rational_polytope(&mut rng, d);
        let mut lo = vec![i64::MAX; d];
        let mut hi = vec![i64::MIN; d];
        for v in &p.vertices {
            for i in 0..d {
                lo[i] = lo[i].min(v[i].floor().to_integer().try_into().unwrap());
                hi[i] = hi[i].max(v[i].ceil().to_integer().try_into().unwrap());
            }
        }
        let mut expected: Vec<QVec> = Vec::new();
        let mut cur = lo.clone();
        'scan: loop {
            let q = pt(&cur);
            if p.contains(&q) {
                expected.push(q);
            }
            for i in 0..d {
                if cur[i] < hi[i] {
                    cur[i] += 1;
                    continue 'scan;
                }
                cur[i] = lo[i];
            }
            break;
        }
        expected.sort();
        let mut got = lattice_points(&p);
        got.sort();
        assert_eq!(got, expected, "case {case}: {:?}", p.vertices);
    }
}

/// All exponent vectors of the given weighted degree.
fn monomials_of_degree(w: &[i64], d: i64) -> Vec<Vec<i64>> {
    fn rec(w: &[i64], d: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if w.len() == 1 {
            if d % w[0] == 0 {
                let mut m = cur.clone();
                m.push(d / w[0]);
                out.push(m);
            }
            return;
        }
        let mut e = 0;
        while e * w[0] <= d {
            cur.push(e);
            rec(&w[1..], d - e * w[0], cur, out);
            cur.pop();
            e += 1;
        }
    }
    let mut out = Vec::new();
    rec(w, d, &mut Vec::new(), &mut out);
    out
}

fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |a, &b| num_integer::gcd(a, b))
}

/// Suite 10: on weighted projective spaces the s = 2 counting test agrees
/// with the Cayley-trick quasismoothness verdict.
pub fn counting_test_agrees() {
    let mut rng = rng(110);
    let mut done = 0;
    while done < CASES {
        // A well-formed P(w): gcd of all weights 1 and of each 3-subset 1.
        let w: Vec<i64> = (0..4).map(|_| rng.gen_range(1..=3)).collect();
        if gcd_all(&w) != 1 {
            continue;
        }
        if (0..4).any(|i| {
            let rest: Vec<i64> = (0..4).filter(|&j| j != i).map(|j| w[j]).collect();
            gcd_all(&rest) != 1
        }) {
            continue;
        }
        let (a, perm) = wps_ambient(&w);
        let mut supports: Vec<Vec<Vec<Int>>> = Vec::new();
        let mut ok = true;
        for _ in 0..2 {
            let d = rng.gen_range(2..=6);
            let pool = monomials_of_degree(&w, d);
            if pool.len() < 2 {
                ok = false;
                break;
            }
            let chosen: Vec<Vec<Int>> = pool
                .iter()
                .filter(|_| rng.gen_bool(0.5))
                .map(|m| {
                    let pairs: Vec<(usize, i64)> =
                        m.iter().enumerate().map(|(i, &e)| (i, e)).collect();
                    mono(&perm, 4, &pairs)
                })
                .collect();
            if chosen.is_empty() {
                ok = false;
                break;
            }
            supports.push(chosen);
        }
        if !ok {
            continue;
        }
        let Ok(system) = cox_system(&a, &supports) else {
            continue;
        };
        // Skip systems with a torus-fixed constant monomial: the counting
        // test rejects those inputs outright.
        if system
            .supports
            .iter()
            .any(|s| s.iter().any(|m| m.iter().all(|x| x.is_zero())))
        {
            continue;
        }
        let verdict = is_quasismooth_ci(&a, &system, DEFAULT_BUDGET).unwrap();
        let count = qs_sufficient_s2(&a, &system, DEFAULT_BUDGET).unwrap();
        match (&verdict, &count) {
            (QsVerdict::Quasismooth, QsSufficiency::SufficientPass) => {}
            (QsVerdict::NotQuasismooth { .. }, QsSufficiency::NecessaryFail { .. }) => {}
            _ => panic!("disagreement on P({w:?}): {verdict:?} vs {count:?}"),
        }
        done += 1;
    }
}

/// Run all ten suites; used as acceptance criterion 9.
pub fn run_all() {
    polar_involution();
    vh_round_trip();
    minkowski_identities();
    gnp_iff_sum();
    dual_involution();
    irreducibility_duality();
    pair_matrix_transpose();
    dependence_oracle();
    lattice_point_oracle();
    counting_test_agrees();
}
