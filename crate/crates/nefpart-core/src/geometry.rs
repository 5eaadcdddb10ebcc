//! Exact polytope kernel over the rationals: convex hulls by the double
//! description method, H/V conversion, polarity, Minkowski sums, faces and
//! lattice-point enumeration.

use crate::linalg::*;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeomError {
    #[error("empty input")]
    EmptyInput,
    #[error("ambient dimension mismatch")]
    DimensionMismatch,
    #[error("unbounded halfspace system")]
    Unbounded,
    #[error("origin is not strictly interior: not polarizable")]
    NotPolarizable,
    #[error("{0}")]
    Invalid(String),
}

/// The halfspace `{x : <normal, x> >= -offset}`; an equation when used in
/// `RationalPolytope::equations`, where it means `<normal, x> = -offset`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Halfspace {
    pub normal: Vec<Int>,
    pub offset: Rat,
}

impl Halfspace {
    pub fn eval(&self, x: &[Rat]) -> Rat {
        dot_int(x, &self.normal) + &self.offset
    }
}

/// A bounded rational polytope carried in canonical V-form (lexicographically
/// sorted irredundant vertices) and H-form (irredundant facets with primitive
/// integer inward normals, plus affine-hull equations). `dim = -1` is the
/// empty polytope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPolytope {
    pub ambient_dim: usize,
    pub vertices: Vec<QVec>,
    pub facets: Vec<Halfspace>,
    pub equations: Vec<Halfspace>,
    pub dim: i64,
}

/// A face of a polytope, recorded by the vertices lying on it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FaceDescriptor {
    pub vertex_indices: Vec<usize>,
    pub dim: i64,
}

// ---------------------------------------------------------------------------
// Double description
// ---------------------------------------------------------------------------

type BitSet = Vec<u64>;

fn bs_new(n: usize) -> BitSet {
    vec![0u64; (n + 63) / 64]
}

fn bs_set(b: &mut BitSet, i: usize) {
    b[i / 64] |= 1 << (i % 64);
}

fn bs_and(a: &BitSet, b: &BitSet) -> BitSet {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn bs_subset(a: &BitSet, b: &BitSet) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

/// Extreme rays of the pointed cone `{x : <row, x> >= 0 for all rows}`.
/// The rows must span the ambient space (otherwise the cone has lineality
/// and is not pointed). Rays are returned as primitive integer vectors.
pub fn extreme_rays(rows_in: &[Vec<Int>]) -> Result<Vec<Vec<Int>>, GeomError> {
    let mut rows: Vec<Vec<Int>> = Vec::new();
    for r in rows_in {
        if let Some(p) = primitive_int(r) {
            if !rows.contains(&p) {
                rows.push(p);
            }
        }
    }
    if rows.is_empty() {
        return Err(GeomError::Invalid("no constraints".into()));
    }
    let d = rows[0].len();
    // Pick d linearly independent rows by greedy elimination.
    let mut chosen: Vec<usize> = Vec::new();
    let mut echelon: Vec<QVec> = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        let mut m = echelon.clone();
        m.push(int_to_qvec(r));
        if rank(&m) > echelon.len() {
            echelon = m;
            chosen.push(i);
            if chosen.len() == d {
                break;
            }
        }
    }
    if chosen.len() < d {
        return Err(GeomError::Invalid("constraint matrix not full rank".into()));
    }
    let basis: Vec<QVec> = chosen.iter().map(|&i| int_to_qvec(&rows[i])).collect();
    let inv = invert(&basis).expect("chosen rows are independent");
    // Initial rays: the columns of the inverse of the chosen row matrix.
    let mut rays: Vec<Vec<Int>> = (0..d)
        .map(|j| {
            let col: QVec = (0..d).map(|i| inv[i][j].clone()).collect();
            primitive(&col).expect("inverse column is nonzero")
        })
        .collect();
    let chosen_set: BTreeSet<usize> = chosen.iter().copied().collect();
    let mut processed: Vec<usize> = chosen.clone();

    for cur in 0..rows.len() {
        if chosen_set.contains(&cur) {
            continue;
        }
        let vals: Vec<Int> = rays.iter().map(|r| dot_ii(&rows[cur], r)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        let zero: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_zero()).collect();
        if neg.is_empty() {
            processed.push(cur);
            continue;
        }
        // Tight sets with respect to the rows processed so far.
        let tights: Vec<BitSet> = rays
            .iter()
            .map(|r| {
                let mut b = bs_new(rows.len());
                for &i in &processed {
                    if dot_ii(&rows[i], r).is_zero() {
                        bs_set(&mut b, i);
                    }
                }
                b
            })
            .collect();
        let mut new_rays: Vec<Vec<Int>> = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common = bs_and(&tights[p], &tights[n]);
                let adjacent = (0..rays.len())
                    .all(|q| q == p || q == n || !bs_subset(&common, &tights[q]));
                if adjacent {
                    let r: Vec<Int> = (0..d)
                        .map(|j| &vals[p] * &rays[n][j] - &vals[n] * &rays[p][j])
                        .collect();
                    let r = primitive_int(&r).expect("combination of adjacent rays is nonzero");
                    if !new_rays.contains(&r) {
                        new_rays.push(r);
                    }
                }
            }
        }
        let mut kept: Vec<Vec<Int>> = pos
            .iter()
            .chain(zero.iter())
            .map(|&i| rays[i].clone())
            .collect();
        for r in new_rays {
            if !kept.contains(&r) {
                kept.push(r);
            }
        }
        rays = kept;
        processed.push(cur);
    }
    rays.sort();
    Ok(rays)
}

// ---------------------------------------------------------------------------
// Convex hull
// ---------------------------------------------------------------------------

impl RationalPolytope {
    pub fn empty(ambient_dim: usize) -> Self {
        RationalPolytope {
            ambient_dim,
            vertices: vec![],
            facets: vec![],
            equations: vec![],
            dim: -1,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.dim < 0
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        !self.is_empty()
            && self.equations.iter().all(|e| e.eval(x).is_zero())
            && self.facets.iter().all(|f| !f.eval(x).is_negative())
    }

    /// Strict containment relative to the affine hull.
    pub fn relative_interior_contains(&self, x: &[Rat]) -> bool {
        if self.is_empty() {
            return false;
        }
        if self.dim == 0 {
            return self.vertices[0] == x;
        }
        self.equations.iter().all(|e| e.eval(x).is_zero())
            && self.facets.iter().all(|f| f.eval(x).is_positive())
    }

    /// Strict interior containment (full-dimensional sense).
    pub fn interior_contains(&self, x: &[Rat]) -> bool {
        (self.dim as usize) == self.ambient_dim && self.relative_interior_contains(x)
    }

    pub fn is_lattice(&self) -> bool {
        self.vertices.iter().all(|v| is_integral(v))
    }

    pub fn is_simplex(&self) -> bool {
        !self.is_empty() && self.vertices.len() as i64 == self.dim + 1
    }
}

/// Normalize a rational (normal, offset) pair so the normal is a primitive
/// integer vector; the positive scaling factor also multiplies the offset.
pub fn halfspace_from_rational(normal: &[Rat], offset: &Rat) -> Halfspace {
    normalize_halfspace(normal, offset)
}

fn normalize_halfspace(normal: &[Rat], offset: &Rat) -> Halfspace {
    let p = primitive(normal).expect("nonzero normal");
    // Scaling factor t with t * normal = p.
    let j = normal.iter().position(|x| !x.is_zero()).unwrap();
    let t = Rat::from_integer(p[j].clone()) / &normal[j];
    debug_assert!(t.is_positive());
    Halfspace {
        normal: p,
        offset: offset * &t,
    }
}

/// Affine-hull equations of a point set: primitive integer normals with the
/// first nonzero coordinate positive.
fn hull_equations(v0: &[Rat], diffs: &[QVec], n: usize) -> Vec<Halfspace> {
    let mut eqs: Vec<Halfspace> = nullspace(diffs, n)
        .iter()
        .map(|w| {
            let mut p = primitive(w).expect("nullspace vector is nonzero");
            let j = p.iter().position(|x| !x.is_zero()).unwrap();
            if p[j].is_negative() {
                p = p.iter().map(|x| -x).collect();
            }
            let offset = -dot_int(v0, &p);
            Halfspace { normal: p, offset }
        })
        .collect();
    eqs.sort();
    eqs
}

/// Convex hull of a nonempty point set, in canonical V- and H-form.
pub fn convex_hull(points: &[QVec], ambient_dim: usize) -> Result<RationalPolytope, GeomError> {
    if points.is_empty() {
        return Err(GeomError::EmptyInput);
    }
    if points.iter().any(|p| p.len() != ambient_dim) {
        return Err(GeomError::DimensionMismatch);
    }
    let mut pts: Vec<QVec> = points.to_vec();
    pts.sort();
    pts.dedup();
    let v0 = pts[0].clone();
    let diffs: Vec<QVec> = pts.iter().map(|p| sub(p, &v0)).collect();
    let k = rank(&diffs);
    let equations = hull_equations(&v0, &diffs, ambient_dim);
    if k == 0 {
        return Ok(RationalPolytope {
            ambient_dim,
            vertices: vec![v0],
            facets: vec![],
            equations,
            dim: 0,
        });
    }

    // Coordinates of the points in the affine hull: either the points
    // themselves (full-dimensional case) or coordinates with respect to a
    // saturated integer basis of the hull's direction lattice.
    let (coords, lattice_basis): (Vec<QVec>, Option<Vec<Vec<Int>>>) = if k == ambient_dim {
        (pts.clone(), None)
    } else {
        let eq_rows: Vec<Vec<Int>> = equations.iter().map(|e| e.normal.clone()).collect();
        let basis = kernel_z(&eq_rows, ambient_dim);
        debug_assert_eq!(basis.len(), k);
        // Solve basis_matrix * c = p - v0 for each point.
        let a: Vec<QVec> = (0..ambient_dim)
            .map(|i| (0..k).map(|j| Rat::from_integer(basis[j][i].clone())).collect())
            .collect();
        let coords = diffs
            .iter()
            .map(|d| solve(&a, d).expect("point lies in affine hull"))
            .collect();
        (coords, Some(basis))
    };

    // Facets of the full-dimensional hull in coordinates, via the dual cone
    // of the homogenization.
    let rows: Vec<Vec<Int>> = coords
        .iter()
        .map(|q| {
            let mut r = q.clone();
            r.push(Rat::one());
            primitive(&r).expect("homogenized point is nonzero")
        })
        .collect();
    let rays = extreme_rays(&rows)
        .map_err(|e| GeomError::Invalid(format!("hull kernel failure: {e}")))?;
    let mut coord_facets: Vec<(Vec<Int>, Rat)> = Vec::new();
    for ray in rays {
        let a = &ray[..k];
        if a.iter().all(|x| x.is_zero()) {
            continue;
        }
        let g = a.iter().fold(Int::zero(), |acc, x| acc.gcd(x));
        let normal: Vec<Int> = a.iter().map(|x| x / &g).collect();
        let offset = Rat::new(ray[k].clone(), g);
        coord_facets.push((normal, offset));
    }

    // Vertices: points where the tight facet normals span the hull.
    let mut vertices: Vec<QVec> = Vec::new();
    for (idx, q) in coords.iter().enumerate() {
        let tight: Vec<QVec> = coord_facets
            .iter()
            .filter(|(nrm, off)| (dot_int(q, nrm) + off).is_zero())
            .map(|(nrm, _)| int_to_qvec(nrm))
            .collect();
        if rank(&tight) == k {
            vertices.push(pts[idx].clone());
        }
    }
    vertices.sort();

    // Lift facets back to the ambient space.
    let mut facets: Vec<Halfspace> = Vec::new();
    match &lattice_basis {
        None => {
            for (nrm, off) in coord_facets {
                facets.push(Halfspace {
                    normal: nrm,
                    offset: off,
                });
            }
        }
        Some(basis) => {
            // w = B (B^T B)^{-1} a satisfies <w, v0 + B c> = <w, v0> + <a, c>.
            let m: Vec<QVec> = (0..k)
                .map(|i| {
                    (0..k)
                        .map(|j| Rat::from_integer(dot_ii(&basis[i], &basis[j])))
                        .collect()
                })
                .collect();
            for (nrm, off) in coord_facets {
                let a: QVec = int_to_qvec(&nrm);
                let y = solve(&m, &a).expect("Gram matrix is invertible");
                let w: QVec = (0..ambient_dim)
                    .map(|i| {
                        (0..k)
                            .map(|j| &y[j] * Rat::from_integer(basis[j][i].clone()))
                            .sum()
                    })
                    .collect();
                let offset = &off - dot(&w, &v0);
                facets.push(normalize_halfspace(&w, &offset));
            }
        }
    }
    facets.sort();
    Ok(RationalPolytope {
        ambient_dim,
        vertices,
        facets,
        equations,
        dim: k as i64,
    })
}

use num_integer::Integer as _;

/// V-form to H-form conversion (the canonical polytope already carries both).
pub fn v_to_h(p: &RationalPolytope) -> RationalPolytope {
    p.clone()
}

/// Build a polytope from a halfspace/equation system. Returns the empty
/// polytope when the system is infeasible; errors on unbounded systems.
pub fn h_to_v(
    facets: &[Halfspace],
    equations: &[Halfspace],
    ambient_dim: usize,
) -> Result<RationalPolytope, GeomError> {
    // Particular solution of the equations.
    let (x0, basis): (QVec, Vec<Vec<Int>>) = if equations.is_empty() {
        (
            zero_vec(ambient_dim),
            (0..ambient_dim)
                .map(|i| {
                    (0..ambient_dim)
                        .map(|j| Int::from((i == j) as i64))
                        .collect()
                })
                .collect(),
        )
    } else {
        let a: Vec<QVec> = equations.iter().map(|e| int_to_qvec(&e.normal)).collect();
        let b: Vec<Rat> = equations.iter().map(|e| -e.offset.clone()).collect();
        let Some(x0) = solve(&a, &b) else {
            return Ok(RationalPolytope::empty(ambient_dim));
        };
        let rows: Vec<Vec<Int>> = equations.iter().map(|e| e.normal.clone()).collect();
        (x0, kernel_z(&rows, ambient_dim))
    };
    let k = basis.len();
    if k == 0 {
        if facets.iter().all(|f| !f.eval(&x0).is_negative()) {
            return convex_hull(&[x0], ambient_dim);
        }
        return Ok(RationalPolytope::empty(ambient_dim));
    }
    // Substitute x = x0 + B y and homogenize: rows (g B, <g,x0> + o) and t >= 0.
    let mut rows: Vec<QVec> = Vec::new();
    for f in facets {
        let mut row: QVec = (0..k)
            .map(|j| Rat::from_integer(dot_ii(&f.normal, &basis[j])))
            .collect();
        row.push(f.eval(&x0));
        rows.push(row);
    }
    let mut t_row = zero_vec(k + 1);
    t_row[k] = Rat::one();
    rows.push(t_row);

    let lineality = nullspace(&rows, k + 1);
    if !lineality.is_empty() {
        // The homogenization cone has lineality; a feasible system is then
        // unbounded. Split off the lineality space and test feasibility.
        if lineality.iter().any(|v| !v[k].is_zero()) {
            return Err(GeomError::Unbounded);
        }
        let mut ext = rows.clone();
        for l in &lineality {
            ext.push(l.clone());
            ext.push(neg(l));
        }
        let int_rows: Vec<Vec<Int>> = ext.iter().map(|r| primitive(r).unwrap()).collect();
        let rays = extreme_rays(&int_rows)?;
        if rays.iter().any(|r| r[k].is_positive()) {
            return Err(GeomError::Unbounded);
        }
        return Ok(RationalPolytope::empty(ambient_dim));
    }
    let int_rows: Vec<Vec<Int>> = rows
        .iter()
        .filter_map(|r| primitive(r))
        .collect();
    let rays = extreme_rays(&int_rows)?;
    let mut vertices: Vec<QVec> = Vec::new();
    let mut recession = false;
    for r in &rays {
        if r[k].is_positive() {
            let t = Rat::from_integer(r[k].clone());
            let y: QVec = (0..k).map(|j| Rat::from_integer(r[j].clone()) / &t).collect();
            let x: QVec = (0..ambient_dim)
                .map(|i| {
                    &x0[i]
                        + (0..k)
                            .map(|j| &y[j] * Rat::from_integer(basis[j][i].clone()))
                            .sum::<Rat>()
                })
                .collect();
            vertices.push(x);
        } else if r[..k].iter().any(|c| !c.is_zero()) {
            recession = true;
        }
    }
    if vertices.is_empty() {
        return Ok(RationalPolytope::empty(ambient_dim));
    }
    if recession {
        return Err(GeomError::Unbounded);
    }
    convex_hull(&vertices, ambient_dim)
}

// ---------------------------------------------------------------------------
// Polarity, Minkowski sums
// ---------------------------------------------------------------------------

/// Polar polytope `{n : <m, n> >= -1 for all m in P}`; requires the origin
/// strictly interior to the full-dimensional `P`.
pub fn polar(p: &RationalPolytope) -> Result<RationalPolytope, GeomError> {
    if p.is_empty()
        || (p.dim as usize) != p.ambient_dim
        || p.facets.iter().any(|f| !f.offset.is_positive())
    {
        return Err(GeomError::NotPolarizable);
    }
    let verts: Vec<QVec> = p
        .facets
        .iter()
        .map(|f| {
            f.normal
                .iter()
                .map(|c| Rat::from_integer(c.clone()) / &f.offset)
                .collect()
        })
        .collect();
    convex_hull(&verts, p.ambient_dim)
}

pub fn minkowski_sum(
    p: &RationalPolytope,
    q: &RationalPolytope,
) -> Result<RationalPolytope, GeomError> {
    if p.ambient_dim != q.ambient_dim {
        return Err(GeomError::DimensionMismatch);
    }
    if p.is_empty() || q.is_empty() {
        return Ok(RationalPolytope::empty(p.ambient_dim));
    }
    let mut sums: Vec<QVec> = Vec::new();
    for a in &p.vertices {
        for b in &q.vertices {
            sums.push(add(a, b));
        }
    }
    convex_hull(&sums, p.ambient_dim)
}

pub fn minkowski_sum_all(
    parts: &[RationalPolytope],
    ambient_dim: usize,
) -> Result<RationalPolytope, GeomError> {
    let mut acc = convex_hull(&[zero_vec(ambient_dim)], ambient_dim)?;
    for p in parts {
        acc = minkowski_sum(&acc, p)?;
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Lattice points
// ---------------------------------------------------------------------------

fn enumerate_box<F: FnMut(&QVec)>(lo: &[Int], hi: &[Int], f: &mut F) {
    let n = lo.len();
    let mut cur: Vec<Int> = lo.to_vec();
    if n == 0 {
        f(&vec![]);
        return;
    }
    'outer: loop {
        let q: QVec = cur.iter().map(|x| Rat::from_integer(x.clone())).collect();
        f(&q);
        for i in (0..n).rev() {
            if cur[i] < hi[i] {
                cur[i] += 1;
                for j in (i + 1)..n {
                    cur[j] = lo[j].clone();
                }
                continue 'outer;
            }
        }
        break;
    }
}

fn bounding_box(p: &RationalPolytope) -> (Vec<Int>, Vec<Int>) {
    let n = p.ambient_dim;
    let mut lo = Vec::with_capacity(n);
    let mut hi = Vec::with_capacity(n);
    for i in 0..n {
        let mut mn = p.vertices[0][i].clone();
        let mut mx = mn.clone();
        for v in &p.vertices {
            if v[i] < mn {
                mn = v[i].clone();
            }
            if v[i] > mx {
                mx = v[i].clone();
            }
        }
        lo.push(mn.ceil().to_integer());
        hi.push(mx.floor().to_integer());
    }
    (lo, hi)
}

/// All lattice points of a bounded polytope, lexicographically sorted.
pub fn lattice_points(p: &RationalPolytope) -> Vec<QVec> {
    if p.is_empty() {
        return vec![];
    }
    let (lo, hi) = bounding_box(p);
    if lo.iter().zip(&hi).any(|(a, b)| a > b) {
        return vec![];
    }
    let mut out = Vec::new();
    enumerate_box(&lo, &hi, &mut |q| {
        if p.contains(q) {
            out.push(q.clone());
        }
    });
    out
}

/// Lattice points in the relative interior.
pub fn interior_lattice_points(p: &RationalPolytope) -> Vec<QVec> {
    if p.is_empty() {
        return vec![];
    }
    let (lo, hi) = bounding_box(p);
    if lo.iter().zip(&hi).any(|(a, b)| a > b) {
        return vec![];
    }
    let mut out = Vec::new();
    enumerate_box(&lo, &hi, &mut |q| {
        if p.relative_interior_contains(q) {
            out.push(q.clone());
        }
    });
    out
}

/// ℓ*: the number of lattice points in the relative interior.
pub fn interior_lattice_count(p: &RationalPolytope) -> usize {
    interior_lattice_points(p).len()
}

// ---------------------------------------------------------------------------
// Faces
// ---------------------------------------------------------------------------

fn affine_dim_of(p: &RationalPolytope, idxs: &[usize]) -> i64 {
    if idxs.is_empty() {
        return -1;
    }
    let v0 = &p.vertices[idxs[0]];
    let diffs: Vec<QVec> = idxs.iter().map(|&i| sub(&p.vertices[i], v0)).collect();
    rank(&diffs) as i64
}

/// All faces of dimension `k`, each given by its exact vertex set.
pub fn faces(p: &RationalPolytope, k: i64) -> Vec<FaceDescriptor> {
    if p.is_empty() || k < 0 || k > p.dim {
        return vec![];
    }
    let nv = p.vertices.len();
    let all: BTreeSet<usize> = (0..nv).collect();
    let mut family: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    family.insert(all);
    let facet_sets: Vec<BTreeSet<usize>> = p
        .facets
        .iter()
        .map(|f| {
            (0..nv)
                .filter(|&i| f.eval(&p.vertices[i]).is_zero())
                .collect()
        })
        .collect();
    // Close the facet vertex-sets under intersection.
    let mut frontier: Vec<BTreeSet<usize>> = vec![(0..nv).collect()];
    while let Some(s) = frontier.pop() {
        for fs in &facet_sets {
            let inter: BTreeSet<usize> = s.intersection(fs).copied().collect();
            if !inter.is_empty() && !family.contains(&inter) {
                family.insert(inter.clone());
                frontier.push(inter);
            }
        }
    }
    let mut out: Vec<FaceDescriptor> = family
        .into_iter()
        .map(|s| {
            let idxs: Vec<usize> = s.into_iter().collect();
            let dim = affine_dim_of(p, &idxs);
            FaceDescriptor {
                vertex_indices: idxs,
                dim,
            }
        })
        .filter(|f| f.dim == k)
        .collect();
    out.sort();
    out
}

// ---------------------------------------------------------------------------
// Predicates
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolytopePredicates {
    pub is_lattice: bool,
    pub is_canonical: bool,
    pub is_reflexive: bool,
    pub is_qfano: bool,
}

pub fn polytope_predicates(p: &RationalPolytope) -> PolytopePredicates {
    let is_lattice = p.is_lattice();
    let full = !p.is_empty() && (p.dim as usize) == p.ambient_dim;
    let origin_interior = full && p.interior_contains(&zero_vec(p.ambient_dim));
    let is_canonical = is_lattice && origin_interior && {
        let interior = interior_lattice_points(p);
        interior.len() == 1
    };
    let is_reflexive = is_lattice
        && origin_interior
        && polar(p).map(|q| q.is_lattice()).unwrap_or(false);
    let is_qfano = is_lattice
        && origin_interior
        && p.vertices.iter().all(|v| {
            to_int_vec(v)
                .and_then(|iv| primitive_int(&iv).map(|pv| pv == iv))
                .unwrap_or(false)
        });
    PolytopePredicates {
        is_lattice,
        is_canonical,
        is_reflexive,
        is_qfano,
    }
}
