//! Good pairs of generalized nef partitions, their duality, the pair matrix
//! A_P, Delsarte pairs, and the translation between pairs and equation
//! systems (supports with marked monomials).

use crate::geometry::*;
use crate::gnp::*;
use crate::linalg::*;
use crate::toric::*;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PairError {
    #[error("the two partitions have different numbers of blocks")]
    SMismatch,
    #[error("{0}")]
    Geometry(#[from] GeomError),
    #[error("{0}")]
    Gnp(#[from] GnpError),
    #[error("{0}")]
    Toric(#[from] ToricError),
    #[error("marked-monomial assumption violated: {0}")]
    Assumption2(String),
    #[error("origin-interior assumption violated: {0}")]
    Assumption3(String),
    #[error("equation degrees are not Q-Cartier nef: {0}")]
    NotNef(String),
    #[error("not a good pair: {0}")]
    NotGoodPair(String),
}

/// A pair of nested generalized nef partitions `(Pi(Delta^1), Pi(Delta^2))`
/// with block `i` of the inner aligned to block `i` of the outer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodPair {
    pub inner: GeneralizedNefPartition,
    pub outer: GeneralizedNefPartition,
}

/// Outcome of the good-pair test; `diagnosis` names the first failing
/// condition when `good` is false.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodPairCheck {
    pub good: bool,
    pub diagnosis: Option<String>,
}

pub fn is_good_pair(
    inner: &GeneralizedNefPartition,
    outer: &GeneralizedNefPartition,
) -> Result<GoodPairCheck, PairError> {
    if inner.s() != outer.s() {
        return Err(PairError::SMismatch);
    }
    let fail = |msg: String| GoodPairCheck {
        good: false,
        diagnosis: Some(msg),
    };
    for (i, part) in inner.parts.iter().enumerate() {
        if !part.is_lattice() {
            return Ok(fail(format!("inner part {i} not lattice")));
        }
    }
    for (i, (ip, op)) in inner.parts.iter().zip(&outer.parts).enumerate() {
        if !ip.vertices.iter().all(|v| op.contains(v)) {
            return Ok(fail(format!("inner part {i} not contained in outer part {i}")));
        }
    }
    let zero = zero_vec(inner.delta.ambient_dim);
    if !inner.delta.is_lattice() {
        return Ok(fail("inner polytope not lattice".into()));
    }
    if !inner.delta.interior_contains(&zero) {
        return Ok(fail("origin not interior to the inner polytope".into()));
    }
    let outer_polar = &outer.delta_polar;
    if !outer_polar.is_lattice() {
        return Ok(fail("outer polar polytope not lattice".into()));
    }
    if !outer_polar.interior_contains(&zero) {
        return Ok(fail("origin not interior to the outer polar polytope".into()));
    }
    Ok(GoodPairCheck {
        good: true,
        diagnosis: None,
    })
}

impl GoodPair {
    pub fn new(
        inner: GeneralizedNefPartition,
        outer: GeneralizedNefPartition,
    ) -> Result<GoodPair, PairError> {
        let check = is_good_pair(&inner, &outer)?;
        if !check.good {
            return Err(PairError::NotGoodPair(check.diagnosis.unwrap()));
        }
        Ok(GoodPair { inner, outer })
    }

    pub fn s(&self) -> usize {
        self.inner.s()
    }
}

/// The dual pair `P* = (Pi(nabla^2), Pi(nabla^1))`; an involution.
pub fn dual_good_pair(p: &GoodPair) -> Result<GoodPair, PairError> {
    let inner = dual_gnp(&p.outer)?;
    let outer = dual_gnp(&p.inner)?;
    GoodPair::new(inner, outer)
}

/// Row/column label: (block index, None for the zero label or the vertex).
pub type PairLabel = (usize, Option<QVec>);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairMatrix {
    pub entries: Vec<Vec<Int>>,
    pub row_labels: Vec<PairLabel>,
    pub col_labels: Vec<PairLabel>,
}

/// The matrix `A_P`: block `(i,j)` has entries `<m, n> + delta_{ij}` over
/// the row list `[0, nonzero vertices of Delta^1_i]` and the column list
/// `[0, polar vertices in block I_j]`, both lexicographically sorted.
pub fn pair_matrix(p: &GoodPair) -> PairMatrix {
    let s = p.s();
    let mut row_labels: Vec<PairLabel> = Vec::new();
    for (i, part) in p.inner.parts.iter().enumerate() {
        row_labels.push((i, None));
        for v in &part.vertices {
            if !is_zero_vec(v) {
                row_labels.push((i, Some(v.clone())));
            }
        }
    }
    let mut col_labels: Vec<PairLabel> = Vec::new();
    for (j, block) in p.outer.partition.blocks.iter().enumerate() {
        col_labels.push((j, None));
        let mut verts: Vec<QVec> = block
            .iter()
            .map(|&rho| p.outer.delta_polar.vertices[rho].clone())
            .collect();
        verts.sort();
        for n in verts {
            col_labels.push((j, Some(n)));
        }
    }
    let _ = s;
    let entries: Vec<Vec<Int>> = row_labels
        .iter()
        .map(|(i, m)| {
            col_labels
                .iter()
                .map(|(j, n)| {
                    let pairing = match (m, n) {
                        (Some(m), Some(n)) => dot(m, n),
                        _ => Rat::zero(),
                    };
                    let delta = if i == j { Rat::one() } else { Rat::zero() };
                    let val = pairing + delta;
                    assert!(val.is_integer(), "pair matrix entry not integral");
                    val.to_integer()
                })
                .collect()
        })
        .collect();
    PairMatrix {
        entries,
        row_labels,
        col_labels,
    }
}

pub fn transpose(m: &PairMatrix) -> PairMatrix {
    let rows = m.entries.len();
    let cols = if rows > 0 { m.entries[0].len() } else { 0 };
    PairMatrix {
        entries: (0..cols)
            .map(|j| (0..rows).map(|i| m.entries[i][j].clone()).collect())
            .collect(),
        row_labels: m.col_labels.clone(),
        col_labels: m.row_labels.clone(),
    }
}

/// A Delsarte pair: the outer polytope and the hull of the inner parts are
/// both simplices. When true, the vertex count identity
/// `sum_i #Vert(Delta^1_i) = n + s + 1` is asserted.
pub fn is_delsarte(p: &GoodPair) -> bool {
    if !p.outer.delta.is_simplex() {
        return false;
    }
    let mut pts: Vec<QVec> = Vec::new();
    for part in &p.inner.parts {
        pts.extend(part.vertices.iter().cloned());
    }
    let hull = convex_hull(&pts, p.inner.delta.ambient_dim).expect("nonempty");
    if !hull.is_simplex() {
        return false;
    }
    let total: usize = p.inner.parts.iter().map(|q| q.vertices.len()).sum();
    assert_eq!(
        total,
        p.inner.delta.ambient_dim + p.s() + 1,
        "Delsarte vertex-count identity failed"
    );
    true
}

/// Map the outer partition's polar-vertex indices to ambient ray indices.
fn ray_indices(a: &ToricAmbient, outer: &GeneralizedNefPartition) -> Vec<usize> {
    outer
        .delta_polar
        .vertices
        .iter()
        .map(|v| {
            a.rays
                .iter()
                .position(|r| int_to_qvec(r) == *v)
                .expect("outer polar vertex must be an ambient ray")
        })
        .collect()
}

/// The equation system of a good pair: the ambient of `Delta^2` and, per
/// block, the homogenization of the vertices of `Delta^1_i` together with
/// the origin with respect to `N_i = sum_{rho in I_i} D_rho`.
pub fn equations_from_pair(p: &GoodPair) -> Result<(ToricAmbient, CoxSystem), PairError> {
    let a = ambient_from_polytope(&p.outer.delta)?;
    let rmap = ray_indices(&a, &p.outer);
    let mut supports = Vec::with_capacity(p.s());
    for (i, part) in p.inner.parts.iter().enumerate() {
        let mut coeffs = vec![Int::zero(); a.num_rays()];
        for &rho in &p.outer.partition.blocks[i] {
            coeffs[rmap[rho]] = Int::one();
        }
        // The linear subsystem attached to a part is spanned by the monomials
        // at its vertices together with the distinguished monomial at the
        // origin (the block's indicator monomial); interior lattice points do
        // not enlarge the Newton polytope and are omitted.
        let mut pts: Vec<Vec<Int>> = part
            .vertices
            .iter()
            .map(|q| to_int_vec(q).unwrap())
            .collect();
        let origin = vec![Int::zero(); p.outer.delta.ambient_dim];
        if !pts.contains(&origin) {
            pts.push(origin);
        }
        pts.sort();
        let exps = homogenize_wrt(&a, &pts, &coeffs)?;
        supports.push(exps);
    }
    let system = cox_system(&a, &supports)?;
    Ok((a, system))
}

/// All tuples of marked monomials: one monomial per support whose exponent
/// vectors sum to the all-ones vector (squarefree total product).
pub fn enumerate_marked_choices(a: &ToricAmbient, system: &CoxSystem) -> Vec<Vec<Vec<Int>>> {
    let r = a.num_rays();
    let mut out = Vec::new();
    let mut current: Vec<Vec<Int>> = Vec::new();
    fn rec(
        supports: &[Vec<Vec<Int>>],
        idx: usize,
        acc: &mut Vec<Int>,
        current: &mut Vec<Vec<Int>>,
        out: &mut Vec<Vec<Vec<Int>>>,
    ) {
        if idx == supports.len() {
            if acc.iter().all(|x| x.is_one()) {
                out.push(current.clone());
            }
            return;
        }
        for m in &supports[idx] {
            if m.iter().zip(acc.iter()).all(|(e, a)| e + a <= Int::one()) {
                for (a, e) in acc.iter_mut().zip(m) {
                    *a += e;
                }
                current.push(m.clone());
                rec(supports, idx + 1, acc, current, out);
                current.pop();
                for (a, e) in acc.iter_mut().zip(m) {
                    *a -= e;
                }
            }
        }
    }
    let mut acc = vec![Int::zero(); r];
    rec(&system.supports, 0, &mut acc, &mut current, &mut out);
    out
}

/// Build the good pair induced by a system with marked monomials: the outer
/// partition groups the rays by the marked variables, the inner parts are
/// the Newton polytopes of the dehomogenized supports.
pub fn pair_from_equations(
    a: &ToricAmbient,
    system: &CoxSystem,
    marked: &[Vec<Int>],
) -> Result<GoodPair, PairError> {
    let s = system.supports.len();
    let r = a.num_rays();
    if marked.len() != s {
        return Err(PairError::Assumption2(
            "need exactly one marked monomial per support".into(),
        ));
    }
    for (i, m) in marked.iter().enumerate() {
        if !system.supports[i].contains(m) {
            return Err(PairError::Assumption2(format!(
                "marked monomial {i} is not in support {i}"
            )));
        }
    }
    let mut total = vec![Int::zero(); r];
    for m in marked {
        for (t, e) in total.iter_mut().zip(m) {
            *t += e;
        }
    }
    if total.iter().any(|x| !x.is_one()) {
        return Err(PairError::Assumption2(
            "marked monomials must multiply to the squarefree product of all variables".into(),
        ));
    }
    // Outer GNP from the induced ray partition.
    let ones: Vec<Rat> = vec![Rat::one(); r];
    let delta2 = divisor_polytope(a, &ones)?;
    let delta2_polar = polar(&delta2)?;
    // Polar-vertex index per ray.
    let polar_idx: Vec<usize> = a
        .rays
        .iter()
        .map(|ray| {
            delta2_polar
                .vertices
                .iter()
                .position(|v| *v == int_to_qvec(ray))
                .expect("ray must be a polar vertex")
        })
        .collect();
    let blocks: Vec<Vec<usize>> = marked
        .iter()
        .map(|m| {
            let mut b: Vec<usize> = (0..r).filter(|&i| m[i].is_one()).map(|i| polar_idx[i]).collect();
            b.sort();
            b
        })
        .collect();
    let partition = VertexPartition { blocks };
    let outer = match is_gnp_with_polar(&delta2, &delta2_polar, &partition)? {
        GnpResult::Gnp(g, _) => g,
        GnpResult::NotGnp(w) => {
            return Err(PairError::NotNef(format!(
                "outer partition is not a GNP; witness part {} on facet {:?}",
                w.part, w.facet
            )));
        }
    };
    // Inner parts: Newton polytopes of the dehomogenized supports.
    let mut parts = Vec::with_capacity(s);
    for (i, support) in system.supports.iter().enumerate() {
        let laurent = dehomogenize(a, support, &marked[i])?;
        let pts: Vec<QVec> = laurent.iter().map(|u| int_to_qvec(u)).collect();
        parts.push(convex_hull(&pts, a.dim)?);
    }
    let delta1 = minkowski_sum_all(&parts, a.dim)?;
    if !delta1.interior_contains(&zero_vec(a.dim)) {
        return Err(PairError::Assumption3(
            "origin is not interior to the inner polytope".into(),
        ));
    }
    let inner = gnp_from_parts(&parts, a.dim).map_err(|e| match e {
        GnpError::Internal(msg) => {
            PairError::Assumption3(format!("inner partition is not a GNP: {msg}"))
        }
        other => PairError::Gnp(other),
    })?;
    GoodPair::new(inner, outer)
}

/// The lattice-point saturation of a pair's outer GNP: replaces each inner
/// part by the convex hull of all lattice points of the outer part.
pub fn saturate_pair(outer: &GeneralizedNefPartition) -> Result<GoodPair, PairError> {
    let mut parts = Vec::with_capacity(outer.s());
    for op in &outer.parts {
        let pts = lattice_points(op);
        if pts.is_empty() {
            return Err(PairError::NotGoodPair(
                "an outer part has no lattice points".into(),
            ));
        }
        parts.push(convex_hull(&pts, outer.delta.ambient_dim)?);
    }
    let inner = gnp_from_parts(&parts, outer.delta.ambient_dim).map_err(|e| match e {
        GnpError::Internal(msg) => {
            PairError::NotGoodPair(format!("saturated parts do not form a GNP: {msg}"))
        }
        other => PairError::Gnp(other),
    })?;
    GoodPair::new(inner, outer.clone())
}
