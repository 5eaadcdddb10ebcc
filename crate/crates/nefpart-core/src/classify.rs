//! Classification of codimension-two K3 families in (fake) weighted
//! projective 4-spaces: for a vector (m, n, w1..w5), enumerate all Delsarte
//! good pairs of generalized nef partitions compatible with the degrees,
//! keep the quasismooth ones, and record their duals.

use crate::geometry::*;
use crate::gnp::*;
use crate::goodpair::*;
use crate::linalg::*;
use crate::regularity::*;
use crate::toric::*;
use itertools::Itertools;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error("geometry error: {0}")]
    Geometry(#[from] GeomError),
    #[error("toric error: {0}")]
    Toric(#[from] ToricError),
    #[error("gnp error: {0}")]
    Gnp(#[from] GnpError),
    #[error("pair error: {0}")]
    Pair(#[from] PairError),
    #[error("regularity error: {0}")]
    Regularity(#[from] RegError),
    #[error("{0}")]
    BadInput(String),
}

/// One classified family: a quasismooth Delsarte good pair together with its
/// dual. Supports are vertex monomials (exponent vectors in the ambient's
/// lexicographic ray order); the full family additionally contains every
/// non-vertex lattice point of the inner parts.
#[derive(Debug, Clone)]
pub struct ClassificationRow {
    pub weights: Vec<i64>,
    pub degrees: (i64, i64),
    /// Content hash of the canonical form; stable across runs and identical
    /// for the dual of the dual.
    pub pair_id: String,
    /// Canonical form used for deduplication and ordering.
    pub canonical_key: String,
    /// Outer partition: ray indices per block, in the ambient's ray order.
    pub outer_blocks: Vec<Vec<usize>>,
    /// Vertex monomials of each equation, marked monomial included.
    pub vertex_supports: Vec<Vec<Vec<Int>>>,
    pub marked: Vec<Vec<Int>>,
    pub irreducible: bool,
    pub quasismooth: bool,
    /// Integer gradings and quotient gradings of the dual ambient, when it
    /// is a fake weighted projective space (always, for Delsarte pairs).
    pub dual_ambient: Option<FakeWpsData>,
    pub dual_vertex_supports: Vec<Vec<Vec<Int>>>,
    pub dual_marked: Vec<Vec<Int>>,
    pub dual_quasismooth: bool,
    /// True when a quasismoothness check ran out of budget; such rows carry
    /// an undetermined verdict instead of being dropped.
    pub budget_exceeded: bool,
}

/// FNV-1a, used for stable content hashes.
pub fn fnv64(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// Fraction-free determinant (Bareiss) over i128.
fn det_int(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign: i128 = 1;
    let mut prev: i128 = 1;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| m[i][k] != 0) else {
                return 0;
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// Do the given lattice points form a (dim)-simplex containing the origin
/// strictly in its interior? Exact test via Cramer signs.
fn simplex_with_interior_origin(pts: &[&Vec<i64>], dim: usize) -> bool {
    debug_assert_eq!(pts.len(), dim + 1);
    // Columns: the points, with an appended row of ones; the barycentric
    // coordinates of 0 are det(A_j)/det(A) and must all be positive.
    let build = |replace: Option<usize>| -> Vec<Vec<i128>> {
        (0..=dim)
            .map(|row| {
                (0..=dim)
                    .map(|col| {
                        if Some(col) == replace {
                            if row == dim {
                                1
                            } else {
                                0
                            }
                        } else if row == dim {
                            1
                        } else {
                            pts[col][row] as i128
                        }
                    })
                    .collect()
            })
            .collect()
    };
    let d = det_int(build(None));
    if d == 0 {
        return false;
    }
    (0..=dim).all(|j| {
        let dj = det_int(build(Some(j)));
        dj != 0 && (dj > 0) == (d > 0)
    })
}

/// All permutations of the ray indices preserving the weight labelling.
fn weight_symmetries(weight_of: &[i64]) -> Vec<Vec<usize>> {
    let r = weight_of.len();
    (0..r)
        .permutations(r)
        .filter(|p| (0..r).all(|i| weight_of[p[i]] == weight_of[i]))
        .collect()
}

/// Candidate inner data in Cox-exponent coordinates: per block, the marked
/// monomial followed by the exponent vectors of the chosen extra vertices.
type ExpBlocks = Vec<Vec<Vec<i64>>>;

fn permute_exps(blocks: &ExpBlocks, perm: &[usize]) -> ExpBlocks {
    blocks
        .iter()
        .map(|block| {
            let mut b: Vec<Vec<i64>> = block
                .iter()
                .map(|e| {
                    let mut out = vec![0i64; e.len()];
                    for (j, &x) in e.iter().enumerate() {
                        out[perm[j]] = x;
                    }
                    out
                })
                .collect();
            b.sort();
            b
        })
        .collect()
}

/// Canonical serialized form of a candidate under the weight symmetries,
/// optionally including the block swap (allowed when the degrees coincide).
fn canonical_form(blocks: &ExpBlocks, syms: &[Vec<usize>], allow_swap: bool) -> String {
    let mut best: Option<String> = None;
    for perm in syms {
        let p = permute_exps(blocks, perm);
        let mut variants = vec![p.clone()];
        if allow_swap && blocks.len() == 2 {
            variants.push(vec![p[1].clone(), p[0].clone()]);
        }
        for v in variants {
            let s = format!("{:?}", v);
            if best.as_ref().map(|b| s < *b).unwrap_or(true) {
                best = Some(s);
            }
        }
    }
    best.expect("symmetry group is nonempty")
}

/// Classify all Delsarte good pairs of generalized nef partitions defining
/// quasismooth codimension-two K3 families in P(w1..w5) with equation
/// degrees (m, n), up to coordinate permutations of equal weights (and
/// swapping the two equations when m = n). Rows whose quasismoothness check
/// exceeded the budget are kept and flagged.
pub fn classify_vector(
    m: i64,
    n: i64,
    weights: &[i64],
    budget: u64,
) -> Result<Vec<ClassificationRow>, ClassifyError> {
    if weights.len() != 5 || weights.iter().any(|&w| w <= 0) {
        return Err(ClassifyError::BadInput(
            "expected 5 positive weights".into(),
        ));
    }
    if m <= 0 || n <= 0 {
        return Err(ClassifyError::BadInput("degrees must be positive".into()));
    }
    let dim = 4usize;
    if m + n != weights.iter().sum::<i64>() {
        // The equations cannot sum to the anticanonical degree: no family.
        return Ok(Vec::new());
    }
    let wi: Vec<Int> = weights.iter().map(|&w| Int::from(w)).collect();
    let rays = wps_rays(&wi);
    let ray_pts: Vec<QVec> = rays.iter().map(|r| int_to_qvec(r)).collect();
    let delta_polar = convex_hull(&ray_pts, dim)?;
    let delta = polar(&delta_polar)?;
    let ambient = ambient_from_polytope(&delta)?;
    // Weight of each ambient ray (ambient rays are the same set, lex-sorted).
    let weight_of: Vec<i64> = ambient
        .rays
        .iter()
        .map(|ar| {
            let j = rays
                .iter()
                .position(|r| r == ar)
                .expect("ambient ray must be a weight ray");
            weights[j]
        })
        .collect();
    let syms = weight_symmetries(&weight_of);
    let allow_swap = m == n;

    // Outer partitions with block degrees (m, n), up to symmetry.
    let mut outer_reps: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut seen_outer: BTreeSet<String> = BTreeSet::new();
    for mask in 1u32..(1 << 5) - 1 {
        let b1: Vec<usize> = (0..5).filter(|i| mask >> i & 1 == 1).collect();
        let b2: Vec<usize> = (0..5).filter(|i| mask >> i & 1 == 0).collect();
        let d1: i64 = b1.iter().map(|&i| weight_of[i]).sum();
        if d1 != m {
            continue;
        }
        let key = {
            let mut best: Option<String> = None;
            for perm in &syms {
                let mut p1: Vec<usize> = b1.iter().map(|&i| perm[i]).collect();
                let mut p2: Vec<usize> = b2.iter().map(|&i| perm[i]).collect();
                p1.sort();
                p2.sort();
                let mut variants = vec![(p1.clone(), p2.clone())];
                if allow_swap {
                    variants.push((p2, p1));
                }
                for v in variants {
                    let s = format!("{:?}", v);
                    if best.as_ref().map(|b| s < *b).unwrap_or(true) {
                        best = Some(s);
                    }
                }
            }
            best.unwrap()
        };
        if seen_outer.insert(key) {
            outer_reps.push(vec![b1, b2]);
        }
    }

    let mut rows: Vec<ClassificationRow> = Vec::new();
    for blocks in outer_reps {
        let partition = VertexPartition {
            blocks: blocks.clone(),
        };
        let outer = match is_gnp_with_polar(&delta, &delta_polar, &partition)? {
            GnpResult::Gnp(g, _) => g,
            GnpResult::NotGnp(_) => continue,
        };
        // Indicator (marked) exponent vectors of the two blocks.
        let indicators: Vec<Vec<i64>> = blocks
            .iter()
            .map(|b| {
                let mut c = vec![0i64; 5];
                for &i in b {
                    c[i] = 1;
                }
                c
            })
            .collect();
        // Pools: nonzero lattice points of the outer parts, with their
        // Cox-exponent vectors.
        let mut pools: Vec<Vec<(Vec<i64>, Vec<i64>)>> = Vec::new();
        for (i, part) in outer.parts.iter().enumerate() {
            let mut pool = Vec::new();
            for q in lattice_points(part) {
                if is_zero_vec(&q) {
                    continue;
                }
                let u: Vec<i64> = to_int_vec(&q)
                    .expect("lattice point")
                    .iter()
                    .map(|x| x.to_i64().expect("coordinate fits in i64"))
                    .collect();
                let exps: Vec<i64> = (0..5)
                    .map(|rho| {
                        let p: i64 = ambient.rays[rho]
                            .iter()
                            .zip(&u)
                            .map(|(a, b)| a.to_i64().unwrap() * b)
                            .sum();
                        p + indicators[i][rho]
                    })
                    .collect();
                debug_assert!(exps.iter().all(|&e| e >= 0));
                pool.push((u, exps));
            }
            pool.sort();
            pools.push(pool);
        }

        // Enumerate vertex choices S1, S2 with |S1| + |S2| = dim + 1 whose
        // union is a simplex with the origin strictly inside, canonicalized
        // under the weight symmetries.
        let mut seen: BTreeSet<String> = BTreeSet::new();
        let mut unique: Vec<(String, Vec<Vec<i64>>, Vec<Vec<i64>>)> = Vec::new();
        for a in 1..=dim {
            let b = dim + 1 - a;
            if b < 1 || a > pools[0].len() || b > pools[1].len() {
                continue;
            }
            for s1 in pools[0].iter().combinations(a) {
                for s2 in pools[1].iter().combinations(b) {
                    let pts: Vec<&Vec<i64>> = s1
                        .iter()
                        .map(|p| &p.0)
                        .chain(s2.iter().map(|p| &p.0))
                        .collect();
                    // Cheap necessary test: every coordinate must change sign.
                    let ok = (0..dim).all(|c| {
                        pts.iter().any(|p| p[c] > 0) && pts.iter().any(|p| p[c] < 0)
                    });
                    if !ok || !simplex_with_interior_origin(&pts, dim) {
                        continue;
                    }
                    let exp_blocks: ExpBlocks = vec![
                        std::iter::once(indicators[0].clone())
                            .chain(s1.iter().map(|p| p.1.clone()))
                            .collect(),
                        std::iter::once(indicators[1].clone())
                            .chain(s2.iter().map(|p| p.1.clone()))
                            .collect(),
                    ];
                    let key = canonical_form(&exp_blocks, &syms, allow_swap);
                    if seen.insert(key.clone()) {
                        unique.push((
                            key,
                            s1.iter().map(|p| p.0.clone()).collect(),
                            s2.iter().map(|p| p.0.clone()).collect(),
                        ));
                    }
                }
            }
        }

        // Expensive validation of the unique candidates.
        let candidate_rows: Vec<Result<Option<ClassificationRow>, ClassifyError>> = unique
            .par_iter()
            .map(|(key, s1, s2)| {
                validate_candidate(
                    m, n, weights, &ambient, &outer, &blocks, key, s1, s2, budget,
                )
            })
            .collect();
        for r in candidate_rows {
            if let Some(row) = r? {
                rows.push(row);
            }
        }
    }
    rows.sort_by(|a, b| a.canonical_key.cmp(&b.canonical_key));
    rows.dedup_by(|a, b| a.canonical_key == b.canonical_key);
    Ok(rows)
}

/// Vertex monomials and marked monomials of a pair, in the ambient of its
/// outer polytope.
fn pair_vertex_supports(
    pair: &GoodPair,
) -> Result<(ToricAmbient, Vec<Vec<Vec<Int>>>, Vec<Vec<Int>>), ClassifyError> {
    let a = ambient_from_polytope(&pair.outer.delta)?;
    let rmap: Vec<usize> = pair
        .outer
        .delta_polar
        .vertices
        .iter()
        .map(|v| {
            a.rays
                .iter()
                .position(|r| int_to_qvec(r) == *v)
                .expect("polar vertex must be an ambient ray")
        })
        .collect();
    let mut supports = Vec::new();
    let mut marked = Vec::new();
    for (i, part) in pair.inner.parts.iter().enumerate() {
        let mut coeffs = vec![Int::from(0); a.num_rays()];
        for &rho in &pair.outer.partition.blocks[i] {
            coeffs[rmap[rho]] = Int::from(1);
        }
        let pts: Vec<Vec<Int>> = part
            .vertices
            .iter()
            .map(|q| to_int_vec(q).expect("inner part vertex is a lattice point"))
            .collect();
        let mut exps = homogenize_wrt(&a, &pts, &coeffs)?;
        exps.sort();
        supports.push(exps);
        marked.push(coeffs);
    }
    Ok((a, supports, marked))
}

#[allow(clippy::too_many_arguments)]
fn validate_candidate(
    m: i64,
    n: i64,
    weights: &[i64],
    ambient: &ToricAmbient,
    outer: &GeneralizedNefPartition,
    blocks: &[Vec<usize>],
    key: &str,
    s1: &[Vec<i64>],
    s2: &[Vec<i64>],
    budget: u64,
) -> Result<Option<ClassificationRow>, ClassifyError> {
    let dim = ambient.dim;
    let mut parts = Vec::new();
    for s in [s1, s2] {
        let mut pts: Vec<QVec> = vec![zero_vec(dim)];
        for u in s {
            pts.push(u.iter().map(|&x| Rat::from_integer(Int::from(x))).collect());
        }
        let hull = convex_hull(&pts, dim)?;
        // The chosen points and the origin must all be vertices, so that
        // each Delsarte candidate is enumerated by exactly one choice.
        if hull.vertices.len() != s.len() + 1 {
            return Ok(None);
        }
        parts.push(hull);
    }
    let Ok(inner) = gnp_from_parts(&parts, dim) else {
        return Ok(None);
    };
    let Ok(pair) = GoodPair::new(inner, outer.clone()) else {
        return Ok(None);
    };
    if !is_delsarte(&pair) {
        return Ok(None);
    }
    let (_, system) = equations_from_pair(&pair)?;
    let verdict = is_quasismooth_ci(ambient, &system, budget)?;
    let (quasismooth, mut budget_exceeded) = match verdict {
        QsVerdict::Quasismooth => (true, false),
        QsVerdict::NotQuasismooth { .. } => return Ok(None),
        QsVerdict::BudgetExceeded => (false, true),
    };
    let (irreducible, _) = is_irreducible(&pair.inner)?;
    let dual = dual_good_pair(&pair)?;
    let (dual_ambient_data, dual_supports, dual_marked) = {
        let (a_d, supports, marked) = pair_vertex_supports(&dual)?;
        (fake_wps_data(&a_d), supports, marked)
    };
    let (a_d_full, dual_system) = equations_from_pair(&dual)?;
    let dual_quasismooth = match is_quasismooth_ci(&a_d_full, &dual_system, budget)? {
        QsVerdict::Quasismooth => true,
        QsVerdict::NotQuasismooth { .. } => false,
        QsVerdict::BudgetExceeded => {
            budget_exceeded = true;
            false
        }
    };
    let (_, vertex_supports, marked) = pair_vertex_supports(&pair)?;
    if !budget_exceeded && !quasismooth {
        return Ok(None);
    }
    Ok(Some(ClassificationRow {
        weights: weights.to_vec(),
        degrees: (m, n),
        pair_id: format!("{:016x}", fnv64(key.as_bytes())),
        canonical_key: key.to_string(),
        outer_blocks: blocks.to_vec(),
        vertex_supports,
        marked,
        irreducible,
        quasismooth,
        dual_ambient: dual_ambient_data,
        dual_vertex_supports: dual_supports,
        dual_marked,
        dual_quasismooth,
        budget_exceeded,
    }))
}

/// CSV rendering of classification rows (header + one line per row).
pub fn classification_csv(rows: &[ClassificationRow]) -> String {
    let mut out = String::from(
        "weights,m,n,pair_id,outer_blocks,supports,irreducible,quasismooth,\
         dual_weights,dual_quotients,dual_supports,dual_quasismooth,budget_exceeded\n",
    );
    let fmt_supports = |s: &Vec<Vec<Vec<Int>>>| {
        s.iter()
            .map(|eq| {
                eq.iter()
                    .map(|e| e.iter().map(|x| x.to_string()).join(" "))
                    .join("|")
            })
            .join(" ; ")
    };
    for r in rows {
        let dual_w = r
            .dual_ambient
            .as_ref()
            .map(|d| d.weights.iter().map(|x| x.to_string()).join(" "))
            .unwrap_or_default();
        let dual_q = r
            .dual_ambient
            .as_ref()
            .map(|d| {
                d.quotient_gradings
                    .iter()
                    .map(|q| {
                        format!(
                            "1/{}({})",
                            q.order,
                            q.residues.iter().map(|x| x.to_string()).join(" ")
                        )
                    })
                    .join("+")
            })
            .unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},\"{}\",\"{}\",{},{},\"{}\",\"{}\",\"{}\",{},{}\n",
            r.weights.iter().map(|x| x.to_string()).join(" "),
            r.degrees.0,
            r.degrees.1,
            r.pair_id,
            r.outer_blocks
                .iter()
                .map(|b| b.iter().map(|x| x.to_string()).join(" "))
                .join(" ; "),
            fmt_supports(&r.vertex_supports),
            r.irreducible,
            r.quasismooth,
            dual_w,
            dual_q,
            fmt_supports(&r.dual_vertex_supports),
            r.dual_quasismooth,
            r.budget_exceeded,
        ));
    }
    out
}
