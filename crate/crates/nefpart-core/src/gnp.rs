//! Generalized nef partitions: construction from vertex partitions of the
//! polar polytope, verification, exhaustive enumeration, duality and
//! irreducibility analysis.

use crate::geometry::*;
use crate::linalg::*;
use crate::toric::{class_of, divisor_polytope, ClassElement, ToricAmbient};
use num_traits::{One, Zero};
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GnpError {
    #[error("{0}")]
    Geometry(#[from] GeomError),
    #[error("partition does not cover the polar vertex indices exactly once")]
    BadPartition,
    #[error("polar vertex cap exceeded: {0} vertices (cap {1})")]
    CapExceeded(usize, usize),
    #[error("input polytope must be a lattice polytope")]
    NotLattice,
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

/// A partition of the vertex indices of a polar polytope into blocks.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct VertexPartition {
    pub blocks: Vec<Vec<usize>>,
}

impl VertexPartition {
    pub fn s(&self) -> usize {
        self.blocks.len()
    }

    /// Canonical form: indices sorted within blocks, blocks ordered by their
    /// smallest index.
    pub fn canonical(&self) -> VertexPartition {
        let mut blocks: Vec<Vec<usize>> = self
            .blocks
            .iter()
            .map(|b| {
                let mut b = b.clone();
                b.sort();
                b
            })
            .collect();
        blocks.sort();
        VertexPartition { blocks }
    }

    /// Check the blocks are nonempty, disjoint and cover `0..n`.
    pub fn covers(&self, n: usize) -> bool {
        let mut seen = vec![false; n];
        for b in &self.blocks {
            if b.is_empty() {
                return false;
            }
            for &i in b {
                if i >= n || seen[i] {
                    return false;
                }
                seen[i] = true;
            }
        }
        seen.into_iter().all(|x| x)
    }
}

/// A generalized nef partition: `delta = sum(parts)` with `parts[i]` cut out
/// by the indicator offsets of `partition.blocks[i]` on `Vert(delta_polar)`.
/// Block order is preserved under duality (block `i` maps to dual block `i`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralizedNefPartition {
    pub delta: RationalPolytope,
    pub delta_polar: RationalPolytope,
    pub partition: VertexPartition,
    pub parts: Vec<RationalPolytope>,
}

impl GeneralizedNefPartition {
    pub fn s(&self) -> usize {
        self.partition.s()
    }
}

/// A certificate for Prop.-style verification: for every facet of the polar
/// polytope (indexed by the corresponding vertex of `delta`) and every part,
/// a part vertex pairing to the exact indicator values on the facet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GnpCertificate {
    /// Vertex-index sets of the polar facets, one per vertex of delta.
    pub facets: Vec<Vec<usize>>,
    /// witness[facet][part] = the vertex m_{i,sigma}.
    pub witnesses: Vec<Vec<QVec>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GnpWitness {
    pub part: usize,
    /// Polar-vertex indices of the facet with no admissible part vertex.
    pub facet: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GnpResult {
    Gnp(GeneralizedNefPartition, GnpCertificate),
    NotGnp(GnpWitness),
}

/// The parts `Delta_i = {m : <m, n_rho> >= -1_i(n_rho)}` of a partition.
pub fn parts_from_partition(
    _delta: &RationalPolytope,
    delta_polar: &RationalPolytope,
    partition: &VertexPartition,
) -> Result<Vec<RationalPolytope>, GnpError> {
    let nv = delta_polar.vertices.len();
    if !partition.covers(nv) {
        return Err(GnpError::BadPartition);
    }
    let mut parts = Vec::with_capacity(partition.s());
    for block in &partition.blocks {
        parts.push(part_polytope(delta_polar, block)?);
    }
    Ok(parts)
}

fn part_polytope(
    delta_polar: &RationalPolytope,
    block: &[usize],
) -> Result<RationalPolytope, GnpError> {
    let facets: Vec<Halfspace> = delta_polar
        .vertices
        .iter()
        .enumerate()
        .map(|(rho, n)| {
            let offset = if block.contains(&rho) {
                Rat::one()
            } else {
                Rat::zero()
            };
            halfspace_from_rational(n, &offset)
        })
        .collect();
    Ok(h_to_v(&facets, &[], delta_polar.ambient_dim)?)
}

/// Vertex-index sets of the polar facets, one per vertex of `delta`
/// (the facet `{n in delta_polar : <v, n> = -1}`).
pub fn polar_facet_vertex_sets(
    delta: &RationalPolytope,
    delta_polar: &RationalPolytope,
) -> Vec<Vec<usize>> {
    let minus_one = -Rat::one();
    delta
        .vertices
        .iter()
        .map(|v| {
            (0..delta_polar.vertices.len())
                .filter(|&rho| dot(v, &delta_polar.vertices[rho]) == minus_one)
                .collect()
        })
        .collect()
}

/// The per-block facet-certificate condition: for every polar facet there is
/// a vertex of the block's part polytope pairing to the exact indicator
/// values on the facet's vertices. Returns the witness vertices or the
/// failing facet.
fn block_certificate(
    delta_polar: &RationalPolytope,
    part: &RationalPolytope,
    block: &[usize],
    facet_sets: &[Vec<usize>],
) -> Result<Vec<QVec>, Vec<usize>> {
    let mut out = Vec::with_capacity(facet_sets.len());
    'facets: for fs in facet_sets {
        for m in &part.vertices {
            let ok = fs.iter().all(|&rho| {
                let target = if block.contains(&rho) {
                    -Rat::one()
                } else {
                    Rat::zero()
                };
                dot(m, &delta_polar.vertices[rho]) == target
            });
            if ok {
                out.push(m.clone());
                continue 'facets;
            }
        }
        return Err(fs.clone());
    }
    Ok(out)
}

/// Check whether a partition of `Vert(delta_polar)` is a generalized nef
/// partition, via the facet-certificate test cross-checked against the
/// Minkowski-sum equality (the two are equivalent; disagreement panics).
pub fn is_gnp(delta: &RationalPolytope, partition: &VertexPartition) -> Result<GnpResult, GnpError> {
    let delta_polar = polar(delta)?;
    is_gnp_with_polar(delta, &delta_polar, partition)
}

pub fn is_gnp_with_polar(
    delta: &RationalPolytope,
    delta_polar: &RationalPolytope,
    partition: &VertexPartition,
) -> Result<GnpResult, GnpError> {
    let parts = parts_from_partition(delta, delta_polar, partition)?;
    let facet_sets = polar_facet_vertex_sets(delta, delta_polar);
    let mut witnesses: Vec<Vec<QVec>> = vec![Vec::new(); facet_sets.len()];
    let mut failure: Option<GnpWitness> = None;
    'parts: for (i, (part, block)) in parts.iter().zip(&partition.blocks).enumerate() {
        match block_certificate(delta_polar, part, block, &facet_sets) {
            Ok(ws) => {
                for (f, m) in ws.into_iter().enumerate() {
                    witnesses[f].push(m);
                }
            }
            Err(facet) => {
                failure = Some(GnpWitness { part: i, facet });
                break 'parts;
            }
        }
    }
    // Cross-check with the Minkowski-sum equality.
    let sum = minkowski_sum_all(&parts, delta.ambient_dim)?;
    let sum_equal = &sum == delta;
    match failure {
        None => {
            assert!(
                sum_equal,
                "facet certificate succeeded but Minkowski sum differs: kernel bug"
            );
            Ok(GnpResult::Gnp(
                GeneralizedNefPartition {
                    delta: delta.clone(),
                    delta_polar: delta_polar.clone(),
                    partition: partition.clone(),
                    parts,
                },
                GnpCertificate {
                    facets: facet_sets,
                    witnesses,
                },
            ))
        }
        Some(w) => {
            assert!(
                !sum_equal,
                "facet certificate failed but Minkowski sum equals delta: kernel bug"
            );
            Ok(GnpResult::NotGnp(w))
        }
    }
}

/// All generalized nef partitions of `delta`, optionally with a fixed number
/// of blocks, in canonical partition order. The per-block certificate test is
/// memoized over block masks, pruning all partitions refining a bad block.
pub fn all_gnps(
    delta: &RationalPolytope,
    s: Option<usize>,
    cap: usize,
) -> Result<Vec<GeneralizedNefPartition>, GnpError> {
    let delta_polar = polar(delta)?;
    let nv = delta_polar.vertices.len();
    if nv > cap {
        return Err(GnpError::CapExceeded(nv, cap));
    }
    let facet_sets = polar_facet_vertex_sets(delta, &delta_polar);
    let mut memo: HashMap<u64, bool> = HashMap::new();
    let mut block_good = |mask: u64| -> Result<bool, GnpError> {
        if let Some(&g) = memo.get(&mask) {
            return Ok(g);
        }
        let block: Vec<usize> = (0..nv).filter(|&i| mask >> i & 1 == 1).collect();
        let part = part_polytope(&delta_polar, &block)?;
        let good = block_certificate(&delta_polar, &part, &block, &facet_sets).is_ok();
        memo.insert(mask, good);
        Ok(good)
    };

    // Enumerate set partitions via restricted growth strings.
    let mut results: Vec<VertexPartition> = Vec::new();
    let mut assignment = vec![0usize; nv];
    fn rec(
        assignment: &mut Vec<usize>,
        pos: usize,
        nblocks: usize,
        nv: usize,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if pos == nv {
            let mut blocks = vec![Vec::new(); nblocks];
            for (i, &b) in assignment.iter().enumerate() {
                blocks[b].push(i);
            }
            out.push(blocks);
            return;
        }
        for b in 0..=nblocks {
            assignment[pos] = b;
            rec(assignment, pos + 1, nblocks.max(b + 1), nv, out);
        }
    }
    let mut raw: Vec<Vec<Vec<usize>>> = Vec::new();
    rec(&mut assignment, 0, 0, nv, &mut raw);
    'cand: for blocks in raw {
        if let Some(target) = s {
            if blocks.len() != target {
                continue;
            }
        }
        for block in &blocks {
            let mask = block.iter().fold(0u64, |m, &i| m | 1 << i);
            if !block_good(mask)? {
                continue 'cand;
            }
        }
        results.push(VertexPartition { blocks }.canonical());
    }
    results.sort();
    results.dedup();
    let mut out = Vec::with_capacity(results.len());
    for p in results {
        let parts = parts_from_partition(delta, &delta_polar, &p)?;
        // The per-block test is equivalent to the GNP condition; assert the
        // Minkowski-sum identity as a cross-check.
        let sum = minkowski_sum_all(&parts, delta.ambient_dim)?;
        assert_eq!(&sum, delta, "block memo accepted a non-GNP: kernel bug");
        out.push(GeneralizedNefPartition {
            delta: delta.clone(),
            delta_polar: delta_polar.clone(),
            partition: p,
            parts,
        });
    }
    Ok(out)
}

/// The dual generalized nef partition: `nabla_j = Conv(0, I_j)` on
/// `nabla = sum_j nabla_j`, with dual blocks `J_i = Vert(Delta_i) \ {0}`
/// indexed into `Vert(nabla_polar)`. Block order is preserved, making the
/// construction an exact involution.
pub fn dual_gnp(g: &GeneralizedNefPartition) -> Result<GeneralizedNefPartition, GnpError> {
    let n = g.delta.ambient_dim;
    let zero = zero_vec(n);
    // nabla_j = Conv(0, I_j), cross-checked against the halfspace definition.
    let mut nabla_parts = Vec::with_capacity(g.s());
    for (j, block) in g.partition.blocks.iter().enumerate() {
        let mut pts: Vec<QVec> = vec![zero.clone()];
        for &rho in block {
            pts.push(g.delta_polar.vertices[rho].clone());
        }
        let conv = convex_hull(&pts, n)?;
        // H-form definition: {n : <m, n> >= -delta_{ij} for all m in Delta_i}.
        let mut facets = Vec::new();
        for (i, part) in g.parts.iter().enumerate() {
            let offset = if i == j { Rat::one() } else { Rat::zero() };
            for m in &part.vertices {
                if !is_zero_vec(m) {
                    facets.push(halfspace_from_rational(m, &offset));
                }
            }
        }
        let hform = h_to_v(&facets, &[], n)?;
        if hform != conv {
            return Err(GnpError::Internal(
                "nabla_j: Conv(0, I_j) differs from its halfspace definition".into(),
            ));
        }
        nabla_parts.push(conv);
    }
    let nabla = minkowski_sum_all(&nabla_parts, n)?;
    // Cross-check nabla = intersection of the Delta_i polars.
    let mut facets = Vec::new();
    for part in &g.parts {
        for m in &part.vertices {
            if !is_zero_vec(m) {
                facets.push(halfspace_from_rational(m, &Rat::one()));
            }
        }
    }
    let inter = h_to_v(&facets, &[], n)?;
    if inter != nabla {
        return Err(GnpError::Internal(
            "nabla differs from the intersection of the part polars".into(),
        ));
    }
    let nabla_polar = polar(&nabla)?;
    // Dual blocks J_i = Vert(Delta_i) \ {0} as indices into Vert(nabla_polar).
    let mut blocks = Vec::with_capacity(g.s());
    for part in &g.parts {
        let mut block = Vec::new();
        for v in &part.vertices {
            if is_zero_vec(v) {
                continue;
            }
            let idx = nabla_polar
                .vertices
                .iter()
                .position(|w| w == v)
                .ok_or_else(|| {
                    GnpError::Internal(
                        "part vertex is not a vertex of the dual polar polytope".into(),
                    )
                })?;
            block.push(idx);
        }
        block.sort();
        blocks.push(block);
    }
    let partition = VertexPartition { blocks };
    if !partition.covers(nabla_polar.vertices.len()) {
        return Err(GnpError::Internal(
            "dual blocks do not partition the dual polar vertices".into(),
        ));
    }
    // The parts of the dual partition must be exactly the nabla_j.
    let check = parts_from_partition(&nabla, &nabla_polar, &partition)?;
    if check != nabla_parts {
        return Err(GnpError::Internal(
            "dual partition does not reproduce the nabla parts".into(),
        ));
    }
    Ok(GeneralizedNefPartition {
        delta: nabla,
        delta_polar: nabla_polar,
        partition,
        parts: nabla_parts,
    })
}

/// Irreducibility: no proper nonempty subset of the parts Minkowski-sums to a
/// polytope with the origin in its relative interior.
pub fn is_irreducible(g: &GeneralizedNefPartition) -> Result<(bool, Option<Vec<usize>>), GnpError> {
    let s = g.s();
    let zero = zero_vec(g.delta.ambient_dim);
    // Subsets by increasing size, then lexicographically.
    for size in 1..s {
        let mut found: Vec<Vec<usize>> = Vec::new();
        subsets_of_size(s, size, &mut |subset| found.push(subset.to_vec()));
        for subset in found {
            let parts: Vec<RationalPolytope> =
                subset.iter().map(|&i| g.parts[i].clone()).collect();
            let sum = minkowski_sum_all(&parts, g.delta.ambient_dim)?;
            let reducible = sum.relative_interior_contains(&zero);
            if sum.is_lattice() && g.delta_polar.is_lattice() {
                // Cross-check the l* = 1 reformulation, with l* counting
                // relative-interior lattice points. It is specific to the
                // reflexive case: integral pairings against the polar
                // vertices pin every relative-interior lattice point of the
                // sum to the origin. On a rational polar polytope a lattice
                // part may contain further lattice points in its relative
                // interior, so the reformulation does not apply.
                let lstar = lattice_points(&sum)
                    .iter()
                    .filter(|m| sum.relative_interior_contains(m))
                    .count();
                assert_eq!(
                    reducible,
                    lstar == 1 && sum.relative_interior_contains(&zero),
                    "relative-interior and l* reducibility tests disagree"
                );
            }
            if reducible {
                return Ok((false, Some(subset)));
            }
        }
    }
    Ok((true, None))
}

fn subsets_of_size(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    let mut cur = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i + 1, cur, f);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut cur, f);
}

/// Recover a GNP from its parts: each polar vertex is assigned to the unique
/// part whose minimum pairing against it is exactly -1.
pub fn gnp_from_parts(
    parts: &[RationalPolytope],
    ambient_dim: usize,
) -> Result<GeneralizedNefPartition, GnpError> {
    let delta = minkowski_sum_all(parts, ambient_dim)?;
    let delta_polar = polar(&delta)?;
    let minus_one = -Rat::one();
    let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); parts.len()];
    for (rho, n) in delta_polar.vertices.iter().enumerate() {
        let mut owners = Vec::new();
        for (i, part) in parts.iter().enumerate() {
            let min = part
                .vertices
                .iter()
                .map(|m| dot(m, n))
                .min()
                .expect("part has vertices");
            if min == minus_one {
                owners.push(i);
            }
        }
        if owners.len() != 1 {
            return Err(GnpError::Internal(format!(
                "polar vertex {rho} pairs to -1 with {} parts, expected exactly 1",
                owners.len()
            )));
        }
        blocks[owners[0]].push(rho);
    }
    let partition = VertexPartition { blocks };
    if !partition.covers(delta_polar.vertices.len()) {
        return Err(GnpError::Internal("recovered blocks do not cover".into()));
    }
    let check = parts_from_partition(&delta, &delta_polar, &partition)?;
    if &check[..] != parts {
        return Err(GnpError::Internal(
            "recovered partition does not reproduce the given parts".into(),
        ));
    }
    Ok(GeneralizedNefPartition {
        delta,
        delta_polar,
        partition,
        parts: parts.to_vec(),
    })
}

/// Decompose a GNP on a lattice polytope into its direct sum of irreducible
/// GNPs on complementary sublattices.
pub fn decompose_direct_sum(
    g: &GeneralizedNefPartition,
) -> Result<Vec<GeneralizedNefPartition>, GnpError> {
    if !g.delta.is_lattice() {
        return Err(GnpError::NotLattice);
    }
    let (irr, _) = is_irreducible(g)?;
    if irr {
        return Ok(vec![g.clone()]);
    }
    let s = g.s();
    let zero = zero_vec(g.delta.ambient_dim);
    let mut remaining: Vec<usize> = (0..s).collect();
    let mut components: Vec<Vec<usize>> = Vec::new();
    while !remaining.is_empty() {
        let mut found: Option<Vec<usize>> = None;
        'sizes: for size in 1..=remaining.len() {
            let mut subsets: Vec<Vec<usize>> = Vec::new();
            subsets_of_size(remaining.len(), size, &mut |sub| {
                subsets.push(sub.iter().map(|&i| remaining[i]).collect())
            });
            for subset in subsets {
                let parts: Vec<RationalPolytope> =
                    subset.iter().map(|&i| g.parts[i].clone()).collect();
                let sum = minkowski_sum_all(&parts, g.delta.ambient_dim)?;
                if sum.relative_interior_contains(&zero) {
                    found = Some(subset);
                    break 'sizes;
                }
            }
        }
        let comp = found.ok_or_else(|| {
            GnpError::Internal("no component with 0 in its relative interior".into())
        })?;
        remaining.retain(|i| !comp.contains(i));
        components.push(comp);
    }
    // Project each component to its sublattice and rebuild the GNP there.
    let mut out = Vec::with_capacity(components.len());
    for comp in components {
        let parts: Vec<RationalPolytope> = comp.iter().map(|&i| g.parts[i].clone()).collect();
        let sum = minkowski_sum_all(&parts, g.delta.ambient_dim)?;
        let eq_rows: Vec<Vec<Int>> = sum.equations.iter().map(|e| e.normal.clone()).collect();
        let k = sum.dim as usize;
        let basis = if eq_rows.is_empty() {
            (0..g.delta.ambient_dim)
                .map(|i| {
                    (0..g.delta.ambient_dim)
                        .map(|j| Int::from((i == j) as i64))
                        .collect()
                })
                .collect::<Vec<Vec<Int>>>()
        } else {
            kernel_z(&eq_rows, g.delta.ambient_dim)
        };
        let a: Vec<QVec> = (0..g.delta.ambient_dim)
            .map(|i| {
                (0..basis.len())
                    .map(|j| Rat::from_integer(basis[j][i].clone()))
                    .collect()
            })
            .collect();
        let project = |p: &RationalPolytope| -> Result<RationalPolytope, GnpError> {
            let coords: Vec<QVec> = p
                .vertices
                .iter()
                .map(|v| {
                    solve(&a, v).ok_or_else(|| {
                        GnpError::Internal("component part leaves the component lattice".into())
                    })
                })
                .collect::<Result<_, _>>()?;
            Ok(convex_hull(&coords, k)?)
        };
        let proj_parts: Vec<RationalPolytope> =
            parts.iter().map(|p| project(p)).collect::<Result<_, _>>()?;
        out.push(gnp_from_parts(&proj_parts, k)?);
    }
    Ok(out)
}

/// The nef divisors `N_i = sum_{rho in I_i} D_rho` of a GNP on an ambient
/// built from the same polytope (so ray order = lex order of the polar
/// vertices); verifies `Delta_i = Delta(N_i)`.
pub fn nef_divisors(
    a: &ToricAmbient,
    g: &GeneralizedNefPartition,
) -> Result<Vec<(Vec<Int>, ClassElement)>, GnpError> {
    if a.rays.len() != g.delta_polar.vertices.len() {
        return Err(GnpError::Internal(
            "ambient ray count differs from polar vertex count".into(),
        ));
    }
    // Map polar vertex index -> ambient ray index.
    let ray_index: Vec<usize> = g
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
    let mut out = Vec::with_capacity(g.s());
    for (i, block) in g.partition.blocks.iter().enumerate() {
        let mut coeffs = vec![Int::zero(); a.rays.len()];
        for &rho in block {
            coeffs[ray_index[rho]] = Int::one();
        }
        let qcoeffs: Vec<Rat> = coeffs.iter().map(|c| Rat::from_integer(c.clone())).collect();
        let poly = divisor_polytope(a, &qcoeffs)?;
        if poly != g.parts[i] {
            return Err(GnpError::Internal(format!(
                "Delta_{} differs from the divisor polytope of N_{}",
                i, i
            )));
        }
        let class = class_of(a, &coeffs);
        out.push((coeffs, class));
    }
    Ok(out)
}
