//! Toric ambients from normal fans: rays, maximal cones, the divisor class
//! group with torsion, divisor polytopes, homogenization and fake weighted
//! projective space recognition.

use crate::geometry::*;
use crate::linalg::*;
use num_integer::Integer;
use num_traits::{One, Signed};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ToricError {
    #[error("polar polytope is not Q-Fano (vertices must be primitive lattice points)")]
    NotQFano,
    #[error("{0}")]
    Geometry(#[from] GeomError),
    #[error("monomial degree mismatch: {0}")]
    DegreeMismatch(String),
}

/// A cyclic quotient grading `1/k(a_1, ..., a_r)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct QuotientGrading {
    pub order: Int,
    pub residues: Vec<Int>,
}

/// An element of the divisor class group, in the SNF-derived presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassElement {
    pub free: Vec<Int>,
    /// Residues, one per quotient grading, reduced mod the grading order.
    pub torsion: Vec<Int>,
}

/// A complete toric variety presented by the normal fan of a polytope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToricAmbient {
    pub dim: usize,
    /// Primitive ray generators; for an ambient built from a polytope these
    /// are the lexicographically sorted vertices of the polar polytope.
    pub rays: Vec<Vec<Int>>,
    /// One maximal cone per vertex of the polytope, as sorted ray-index sets.
    pub max_cones: Vec<Vec<usize>>,
    /// Rows spanning the free part of Cl(Z) acting on the variables.
    pub free_gradings: Vec<Vec<Int>>,
    /// Cyclic factors of Cl(Z); residues are the acting rows mod the order.
    pub quotient_gradings: Vec<QuotientGrading>,
}

impl ToricAmbient {
    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }
}

/// Compute the class-group presentation (free rows and cyclic factors) of
/// the cokernel of `M -> Z^r`, `m -> (<m, ray_i>)_i`.
fn class_group(rays: &[Vec<Int>], dim: usize) -> (Vec<Vec<Int>>, Vec<QuotientGrading>) {
    let r = rays.len();
    // Ray matrix P: r x n, rows are the rays. U P V = D.
    let (u, d, _v) = smith_normal_form(rays);
    let mut quotient = Vec::new();
    for i in 0..dim.min(r) {
        let di = &d[i][i];
        if di > &Int::one() {
            let residues: Vec<Int> = u[i].iter().map(|x| x.mod_floor(di)).collect();
            quotient.push(QuotientGrading {
                order: di.clone(),
                residues,
            });
        }
    }
    let free: Vec<Vec<Int>> = (dim..r).map(|i| u[i].clone()).collect();
    quotient.sort();
    (free, quotient)
}

/// Ambient toric variety of the normal fan of a full-dimensional polytope
/// `delta` with the origin interior; requires the polar to be Q-Fano.
pub fn ambient_from_polytope(delta: &RationalPolytope) -> Result<ToricAmbient, ToricError> {
    let n = delta.ambient_dim;
    let dp = polar(delta)?;
    let preds = polytope_predicates(&dp);
    if !preds.is_qfano {
        return Err(ToricError::NotQFano);
    }
    let rays: Vec<Vec<Int>> = dp.vertices.iter().map(|v| to_int_vec(v).unwrap()).collect();
    let minus_one = -Rat::one();
    let max_cones: Vec<Vec<usize>> = delta
        .vertices
        .iter()
        .map(|v| {
            (0..rays.len())
                .filter(|&i| dot_int(v, &rays[i]) == minus_one)
                .collect()
        })
        .collect();
    let (free_gradings, quotient_gradings) = class_group(&rays, n);
    Ok(ToricAmbient {
        dim: n,
        rays,
        max_cones,
        free_gradings,
        quotient_gradings,
    })
}

/// Class of a torus-invariant divisor `sum a_i D_i` with integer coefficients.
pub fn class_of(a: &ToricAmbient, coeffs: &[Int]) -> ClassElement {
    let free = a
        .free_gradings
        .iter()
        .map(|row| dot_ii(row, coeffs))
        .collect();
    let torsion = a
        .quotient_gradings
        .iter()
        .map(|q| dot_ii(&q.residues, coeffs).mod_floor(&q.order))
        .collect();
    ClassElement { free, torsion }
}

/// Class of a Cox monomial given by its exponent vector.
pub fn class_of_monomial(a: &ToricAmbient, exps: &[Int]) -> ClassElement {
    class_of(a, exps)
}

pub fn classes_equal(c1: &ClassElement, c2: &ClassElement) -> bool {
    c1 == c2
}

pub fn anticanonical_class(a: &ToricAmbient) -> ClassElement {
    class_of(a, &vec![Int::one(); a.num_rays()])
}

/// Canonical representative of a quotient grading: residues reduced mod the
/// order, then the lexicographically least vector over all unit multiples.
pub fn canonical_quotient(q: &QuotientGrading) -> QuotientGrading {
    let k = &q.order;
    let mut best: Option<Vec<Int>> = None;
    let mut u = Int::one();
    while &u < k {
        if u.gcd(k).is_one() {
            let cand: Vec<Int> = q.residues.iter().map(|x| (x * &u).mod_floor(k)).collect();
            if best.as_ref().map(|b| &cand < b).unwrap_or(true) {
                best = Some(cand);
            }
        }
        u += 1;
    }
    QuotientGrading {
        order: k.clone(),
        residues: best.unwrap_or_else(|| q.residues.clone()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FakeWpsData {
    pub weights: Vec<Int>,
    pub quotient_gradings: Vec<QuotientGrading>,
}

/// Recognize a fake weighted projective space: a simplex fan (r = n + 1).
/// Returns the positive primitive weight vector and the canonicalized
/// quotient gradings, or `None` when the fan is not a simplex.
pub fn fake_wps_data(a: &ToricAmbient) -> Option<FakeWpsData> {
    if a.num_rays() != a.dim + 1 {
        return None;
    }
    // Weights: the primitive integer relation among the rays.
    let cols = a.num_rays();
    let mat: Vec<Vec<Int>> = (0..a.dim)
        .map(|j| (0..cols).map(|i| a.rays[i][j].clone()).collect())
        .collect();
    let kernel = kernel_z(&mat, cols);
    if kernel.len() != 1 {
        return None;
    }
    let mut w = kernel[0].clone();
    if w.iter().any(|x| x.is_negative()) {
        w = w.iter().map(|x| -x).collect();
    }
    if w.iter().any(|x| !x.is_positive()) {
        return None;
    }
    let mut quot: Vec<QuotientGrading> = a
        .quotient_gradings
        .iter()
        .map(canonical_quotient)
        .collect();
    quot.sort();
    Some(FakeWpsData {
        weights: w,
        quotient_gradings: quot,
    })
}

/// Fan rays of the well-formed weighted projective space with the given
/// positive primitive weights, as the images of the standard basis of Z^r
/// in Z^r / Z·w.
pub fn wps_rays(weights: &[Int]) -> Vec<Vec<Int>> {
    let r = weights.len();
    let col: Vec<Vec<Int>> = weights.iter().map(|w| vec![w.clone()]).collect();
    let (u, d, _) = smith_normal_form(&col);
    assert!(d[0][0].is_one(), "weights must be primitive");
    // Ray i = rows 1..r of U applied to e_i, i.e. column i of U below row 0.
    (0..r)
        .map(|i| (1..r).map(|j| u[j][i].clone()).collect())
        .collect()
}

/// `Delta(D) = {m : <m, n_i> >= -a_i}` for a Q-divisor `D = sum a_i D_i`.
pub fn divisor_polytope(a: &ToricAmbient, coeffs: &[Rat]) -> Result<RationalPolytope, GeomError> {
    let facets: Vec<Halfspace> = a
        .rays
        .iter()
        .zip(coeffs)
        .map(|(ray, c)| Halfspace {
            normal: ray.clone(),
            offset: c.clone(),
        })
        .collect();
    h_to_v(&facets, &[], a.dim)
}

/// Homogenize a Laurent support: `a_i = -min_u <u, n_i>` over the support and
/// the exponent of `x_i` at `u` is `<u, n_i> + a_i`. Returns the exponent
/// vectors together with the divisor coefficients `a`.
pub fn homogenize(a: &ToricAmbient, support: &[Vec<Int>]) -> (Vec<Vec<Int>>, Vec<Int>) {
    assert!(!support.is_empty());
    let pairings: Vec<Vec<Int>> = support
        .iter()
        .map(|u| a.rays.iter().map(|n| dot_ii(u, n)).collect())
        .collect();
    let coeffs: Vec<Int> = (0..a.num_rays())
        .map(|i| -pairings.iter().map(|p| p[i].clone()).min().unwrap())
        .collect();
    let exps: Vec<Vec<Int>> = pairings
        .iter()
        .map(|p| p.iter().zip(&coeffs).map(|(x, c)| x + c).collect())
        .collect();
    (exps, coeffs)
}

/// Homogenize a Laurent support with respect to a fixed divisor
/// `D = sum c_i D_i`: the exponent of `x_i` at `u` is `<u, n_i> + c_i`,
/// which must be a nonnegative integer (i.e. the support lies in Delta(D)).
pub fn homogenize_wrt(
    a: &ToricAmbient,
    support: &[Vec<Int>],
    coeffs: &[Int],
) -> Result<Vec<Vec<Int>>, ToricError> {
    let mut out = Vec::with_capacity(support.len());
    for u in support {
        let mut e = Vec::with_capacity(a.num_rays());
        for (n, c) in a.rays.iter().zip(coeffs) {
            let v = dot_ii(u, n) + c;
            if v.is_negative() {
                return Err(ToricError::DegreeMismatch(format!(
                    "support point {:?} lies outside Delta(D)",
                    u
                )));
            }
            e.push(v);
        }
        out.push(e);
    }
    Ok(out)
}

/// Dehomogenize Cox monomials with respect to `D = sum a_i D_i`: solve
/// `<u, n_i> = e_i - a_i` for a lattice point `u` per monomial.
pub fn dehomogenize(
    a: &ToricAmbient,
    exps: &[Vec<Int>],
    coeffs: &[Int],
) -> Result<Vec<Vec<Int>>, ToricError> {
    let mut out = Vec::new();
    for e in exps {
        let rows: Vec<QVec> = a.rays.iter().map(|r| int_to_qvec(r)).collect();
        let rhs: Vec<Rat> = e
            .iter()
            .zip(coeffs)
            .map(|(x, c)| Rat::from_integer(x - c))
            .collect();
        let Some(u) = solve(&rows, &rhs) else {
            return Err(ToricError::DegreeMismatch(format!(
                "monomial {:?} does not have degree [D]",
                e
            )));
        };
        let Some(ui) = to_int_vec(&u) else {
            return Err(ToricError::DegreeMismatch(format!(
                "monomial {:?} dehomogenizes to a non-lattice point",
                e
            )));
        };
        out.push(ui);
    }
    Ok(out)
}

/// A system of monomial supports with symbolic general coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxSystem {
    /// One set of exponent vectors (length = number of rays) per equation,
    /// sorted lexicographically.
    pub supports: Vec<Vec<Vec<Int>>>,
    pub degrees: Vec<ClassElement>,
}

/// Validate and canonicalize a system of supports: every support nonempty
/// with nonnegative exponents, all monomials of one support of equal degree,
/// and no variable dividing every monomial of a support.
pub fn cox_system(a: &ToricAmbient, supports: &[Vec<Vec<Int>>]) -> Result<CoxSystem, ToricError> {
    let r = a.num_rays();
    let mut out = Vec::with_capacity(supports.len());
    let mut degrees = Vec::with_capacity(supports.len());
    for (i, support) in supports.iter().enumerate() {
        if support.is_empty() {
            return Err(ToricError::DegreeMismatch(format!("support {i} is empty")));
        }
        let mut s = support.clone();
        s.sort();
        s.dedup();
        for e in &s {
            if e.len() != r || e.iter().any(|x| x.is_negative()) {
                return Err(ToricError::DegreeMismatch(format!(
                    "support {i} has an invalid exponent vector"
                )));
            }
        }
        let deg = class_of(a, &s[0]);
        for e in &s[1..] {
            if class_of(a, e) != deg {
                return Err(ToricError::DegreeMismatch(format!(
                    "support {i} mixes degrees"
                )));
            }
        }
        for v in 0..r {
            if s.iter().all(|e| e[v].is_positive()) {
                return Err(ToricError::DegreeMismatch(format!(
                    "variable {v} divides every monomial of support {i}"
                )));
            }
        }
        out.push(s);
        degrees.push(deg);
    }
    Ok(CoxSystem {
        supports: out,
        degrees,
    })
}
