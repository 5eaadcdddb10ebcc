//! Quasismoothness (via the Cayley trick), well-formedness, and
//! Calabi-Yau verification for complete intersections defined by monomial
//! supports with general coefficients.

use crate::geometry::*;
use crate::linalg::*;
use crate::toric::*;
use itertools::Itertools;
use num_traits::Signed;
use rayon::prelude::*;
use thiserror::Error;

/// Default cap on the number of candidate strata scanned.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Debug, Error)]
pub enum RegError {
    #[error("geometry error: {0}")]
    Geometry(#[from] GeomError),
    #[error("toric error: {0}")]
    Toric(#[from] ToricError),
    #[error("stratum budget exceeded: {0} candidates")]
    BudgetExceeded(u64),
    #[error("{0}")]
    BadInput(String),
}

/// The Cayley hypersurface `F = t_1 g_1 + ... + t_s g_s` living in the
/// projective bundle over the ambient, with homogeneous coordinates
/// `x_1, ..., x_r, t_1, ..., t_s`.
#[derive(Debug, Clone)]
pub struct CayleySystem {
    pub ambient: ToricAmbient,
    pub base: CoxSystem,
    pub r: usize,
    pub s: usize,
    /// Exponent vectors of the monomials of F (length r + s each),
    /// sorted lexicographically. Each has exactly one t-exponent, equal to 1.
    pub f_support: Vec<Vec<Int>>,
    /// Degree of each of the r + s variables in Cl(Z) ⊕ ℤ: the x-variables
    /// have extra coordinate 0; t_i has base degree d - d_i and extra 1.
    pub gradings: Vec<(ClassElement, Int)>,
}

pub fn cayley_system(a: &ToricAmbient, system: &CoxSystem) -> Result<CayleySystem, RegError> {
    let r = a.num_rays();
    let s = system.supports.len();
    if s == 0 {
        return Err(RegError::BadInput("empty system".into()));
    }
    let mut f_support = Vec::new();
    for (i, support) in system.supports.iter().enumerate() {
        for m in support {
            if m.len() != r {
                return Err(RegError::BadInput(format!(
                    "exponent vector of length {} in a system over {} rays",
                    m.len(),
                    r
                )));
            }
            let mut e = m.clone();
            for j in 0..s {
                e.push(if j == i { Int::from(1) } else { Int::from(0) });
            }
            f_support.push(e);
        }
    }
    f_support.sort();
    f_support.dedup();
    let mut gradings = Vec::with_capacity(r + s);
    for j in 0..r {
        let mut e = vec![Int::from(0); r];
        e[j] = Int::from(1);
        gradings.push((class_of(a, &e), Int::from(0)));
    }
    for i in 0..s {
        // d - d_i = sum of the degrees of the other equations; compute it on
        // a representative coefficient vector since class_of is linear.
        let mut c = vec![Int::from(0); r];
        for (j, support) in system.supports.iter().enumerate() {
            if j != i {
                for (k, x) in support[0].iter().enumerate() {
                    c[k] += x;
                }
            }
        }
        gradings.push((class_of(a, &c), Int::from(1)));
    }
    Ok(CayleySystem {
        ambient: a.clone(),
        base: system.clone(),
        r,
        s,
        f_support,
        gradings,
    })
}

/// A toric stratum `{y_ρ = 0 : ρ ∈ indices}` of the characteristic space.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Stratum {
    pub indices: Vec<usize>,
    pub relevant: bool,
}

/// Is the coordinate subspace with the given vanishing x-variables nonempty
/// in the characteristic open set of the ambient?
fn x_relevant(a: &ToricAmbient, xs: &[usize]) -> bool {
    if xs.is_empty() {
        return true;
    }
    a.max_cones
        .iter()
        .any(|c| xs.iter().all(|i| c.contains(i)))
}

/// The sets of variables appearing in each monomial of a support.
fn variable_sets(support: &[Vec<Int>]) -> Vec<Vec<usize>> {
    support
        .iter()
        .map(|m| {
            m.iter()
                .enumerate()
                .filter(|(_, x)| x.is_positive())
                .map(|(i, _)| i)
                .collect()
        })
        .collect()
}

fn hits_all(indices: &[usize], varsets: &[Vec<usize>]) -> bool {
    varsets
        .iter()
        .all(|vs| vs.iter().any(|v| indices.binary_search(v).is_ok()))
}

/// Enumerate subsets of `0..k` as sorted index vectors, guarded by `budget`.
fn enumerate_subsets(k: usize, budget: u64) -> Result<Vec<Vec<usize>>, RegError> {
    if k >= 63 || (1u64 << k) > budget {
        return Err(RegError::BudgetExceeded(budget));
    }
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << k) {
        let indices: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).collect();
        out.push(indices);
    }
    out.sort();
    Ok(out)
}

/// All relevant toric strata of the ambient contained in the base locus of
/// the given support: subsets `I` of the variables such that every monomial
/// contains a variable indexed in `I` and the corresponding coordinate
/// subspace is nonempty in the characteristic open set.
pub fn base_locus_strata(
    a: &ToricAmbient,
    support: &[Vec<Int>],
    budget: u64,
) -> Result<Vec<Stratum>, RegError> {
    let varsets = variable_sets(support);
    if varsets.iter().any(|vs| vs.is_empty()) {
        // A constant monomial never vanishes: empty base locus.
        return Ok(Vec::new());
    }
    let subsets = enumerate_subsets(a.num_rays(), budget)?;
    Ok(subsets
        .into_iter()
        .filter(|indices| x_relevant(a, indices) && hits_all(indices, &varsets))
        .map(|indices| Stratum {
            indices,
            relevant: true,
        })
        .collect())
}

/// All relevant strata of the Cayley bundle contained in the base locus of F.
/// Variables `0..r` are the x's, `r..r+s` the t's; a stratum is relevant iff
/// its x-part lies in some maximal cone and its t-part is a proper subset.
pub fn cayley_strata(cs: &CayleySystem, budget: u64) -> Result<Vec<Vec<usize>>, RegError> {
    let varsets = variable_sets(&cs.f_support);
    let subsets = enumerate_subsets(cs.r + cs.s, budget)?;
    Ok(subsets
        .into_iter()
        .filter(|indices| {
            let xs: Vec<usize> = indices.iter().cloned().filter(|&i| i < cs.r).collect();
            let t_count = indices.len() - xs.len();
            t_count < cs.s && x_relevant(&cs.ambient, &xs) && hits_all(indices, &varsets)
        })
        .collect())
}

/// For each ρ ∈ I (in increasing order), the Newton polytope — in the
/// coordinates outside I — of the monomials `m / y_ρ` where m runs over the
/// monomials of F divisible by y_ρ exactly once and by no other I-variable.
/// Monomials divisible by two I-variables (or by y_ρ twice) restrict to zero
/// on the stratum under every decomposition F = Σ y_ρ F^ρ, so this canonical
/// assignment is decomposition-independent.
pub fn restricted_polytopes(
    cs: &CayleySystem,
    stratum: &[usize],
) -> Result<Vec<(usize, Option<RationalPolytope>)>, RegError> {
    let total = cs.r + cs.s;
    let out_coords: Vec<usize> = (0..total)
        .filter(|i| stratum.binary_search(i).is_err())
        .collect();
    let mut out = Vec::with_capacity(stratum.len());
    for &rho in stratum {
        let mut pts: Vec<QVec> = Vec::new();
        'mono: for m in &cs.f_support {
            if m[rho] != Int::from(1) {
                continue;
            }
            for &tau in stratum {
                if tau != rho && m[tau].is_positive() {
                    continue 'mono;
                }
            }
            pts.push(
                out_coords
                    .iter()
                    .map(|&i| Rat::from_integer(m[i].clone()))
                    .collect(),
            );
        }
        if pts.is_empty() {
            out.push((rho, None));
        } else {
            out.push((rho, Some(convex_hull(&pts, out_coords.len())?)));
        }
    }
    Ok(out)
}

/// A set of polytopes is dependent if it contains a nonempty collection of
/// l > 0 polytopes that can all be translated into an (l-1)-dimensional
/// subspace. Returns the witness subset (indices into the input list) of the
/// least size, lexicographically least, when dependent.
pub fn is_dependent(polys: &[Option<RationalPolytope>]) -> (bool, Option<Vec<usize>>) {
    let nonempty: Vec<usize> = (0..polys.len()).filter(|&i| polys[i].is_some()).collect();
    for l in 1..=nonempty.len() {
        for combo in nonempty.iter().combinations(l) {
            let mut diffs: Vec<QVec> = Vec::new();
            for &&i in &combo {
                let p = polys[i].as_ref().unwrap();
                let v0 = &p.vertices[0];
                for v in &p.vertices[1..] {
                    diffs.push(sub(v, v0));
                }
            }
            if rank(&diffs) + 1 <= l {
                return (true, Some(combo.into_iter().cloned().collect()));
            }
        }
    }
    (false, None)
}

/// Verdict of the quasismoothness test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QsVerdict {
    Quasismooth,
    /// Lexicographically least stratum whose restricted polytopes are not
    /// a dependent collection.
    NotQuasismooth { witness: Vec<usize> },
    BudgetExceeded,
}

/// Combinatorial quasismoothness of the complete intersection cut out by the
/// system's supports with general coefficients, via the Cayley hypersurface:
/// quasismooth iff for every relevant stratum contained in the base locus of
/// F the restricted polytopes form a dependent collection.
pub fn is_quasismooth_ci(
    a: &ToricAmbient,
    system: &CoxSystem,
    budget: u64,
) -> Result<QsVerdict, RegError> {
    let cs = cayley_system(a, system)?;
    let strata = match cayley_strata(&cs, budget) {
        Ok(s) => s,
        Err(RegError::BudgetExceeded(_)) => return Ok(QsVerdict::BudgetExceeded),
        Err(e) => return Err(e),
    };
    let failing: Result<Vec<Vec<usize>>, RegError> = strata
        .par_iter()
        .filter_map(|stratum| match restricted_polytopes(&cs, stratum) {
            Ok(polys) => {
                let slots: Vec<Option<RationalPolytope>> =
                    polys.into_iter().map(|(_, p)| p).collect();
                if is_dependent(&slots).0 {
                    None
                } else {
                    Some(Ok(stratum.clone()))
                }
            }
            Err(e) => Some(Err(e)),
        })
        .collect();
    let failing = failing?;
    match failing.into_iter().min() {
        Some(witness) => Ok(QsVerdict::NotQuasismooth { witness }),
        None => Ok(QsVerdict::Quasismooth),
    }
}

/// Verdict of the counting-based sufficient test for s = 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QsSufficiency {
    SufficientPass,
    /// The counting conditions fail on the listed strata, but the ambient is
    /// not a fake weighted projective space, so the test is inconclusive.
    Inconclusive { strata: Vec<Vec<usize>> },
    /// On a fake weighted projective space the condition is also necessary.
    NecessaryFail { witness: Vec<usize> },
}

/// Number of ρ ∈ J whose canonical cofactor of the support restricts to a
/// nonzero polynomial on the stratum {x_ρ = 0 : ρ ∈ J}.
fn k_count(support: &[Vec<Int>], stratum: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    for &rho in stratum {
        let ok = support.iter().any(|m| {
            m[rho] == Int::from(1)
                && stratum
                    .iter()
                    .all(|&tau| tau == rho || !m[tau].is_positive())
        });
        if ok {
            out.push(rho);
        }
    }
    out
}

/// The sufficient (and, on fake weighted projective spaces, necessary)
/// counting test for quasismoothness of codimension-2 complete intersections.
pub fn qs_sufficient_s2(
    a: &ToricAmbient,
    system: &CoxSystem,
    budget: u64,
) -> Result<QsSufficiency, RegError> {
    if system.supports.len() != 2 {
        return Err(RegError::BadInput("qs_sufficient_s2 requires s = 2".into()));
    }
    let n = a.dim;
    let vs1 = variable_sets(&system.supports[0]);
    let vs2 = variable_sets(&system.supports[1]);
    if vs1.iter().any(|v| v.is_empty()) || vs2.iter().any(|v| v.is_empty()) {
        return Err(RegError::BadInput("constant monomial in a support".into()));
    }
    let fake = fake_wps_data(a).is_some();
    let subsets = enumerate_subsets(a.num_rays(), budget)?;
    let mut failing: Vec<Vec<usize>> = Vec::new();
    for stratum in subsets {
        if !x_relevant(a, &stratum) {
            continue;
        }
        let in_b1 = hits_all(&stratum, &vs1);
        let in_b2 = hits_all(&stratum, &vs2);
        if !in_b1 && !in_b2 {
            continue;
        }
        let d_j: i64 = if fake {
            n as i64 - stratum.len() as i64
        } else {
            // Upper bound on the stratum dimension for a general ambient.
            let rows: Vec<QVec> = stratum.iter().map(|&i| int_to_qvec(&a.rays[i])).collect();
            n as i64 - rank(&rows) as i64
        };
        let k1 = k_count(&system.supports[0], &stratum).len() as i64;
        let k2 = k_count(&system.supports[1], &stratum).len() as i64;
        let pass = if in_b1 && in_b2 {
            let mut both: Vec<usize> = k_count(&system.supports[0], &stratum);
            both.extend(k_count(&system.supports[1], &stratum));
            both.sort();
            both.dedup();
            let k12 = both.len() as i64;
            k1 >= d_j + 1 && k2 >= d_j + 1 && k12 >= d_j + 2
        } else if in_b1 {
            k1 >= d_j
        } else {
            k2 >= d_j
        };
        if !pass {
            failing.push(stratum);
        }
    }
    if failing.is_empty() {
        Ok(QsSufficiency::SufficientPass)
    } else if fake {
        Ok(QsSufficiency::NecessaryFail {
            witness: failing.into_iter().min().unwrap(),
        })
    } else {
        failing.sort();
        Ok(QsSufficiency::Inconclusive { strata: failing })
    }
}

/// Well-formedness: no singular toric stratum of the ambient of dimension
/// dim(X) - 1 = n - s - 1 is contained in the complete intersection. Returns
/// the ray set of the lexicographically least offending cone when it fails.
pub fn is_well_formed(
    a: &ToricAmbient,
    system: &CoxSystem,
) -> Result<(bool, Option<Vec<usize>>), RegError> {
    let n = a.dim;
    let s = system.supports.len();
    let cone_dim = s + 1;
    if cone_dim > n {
        return Ok((true, None));
    }
    let ray_pts: Vec<QVec> = a.rays.iter().map(|r| int_to_qvec(r)).collect();
    let delta_polar = convex_hull(&ray_pts, n)?;
    // The ambient rays are lexicographically sorted and are exactly the
    // vertices of their hull, so face vertex indices are ray indices.
    debug_assert_eq!(delta_polar.vertices.len(), a.num_rays());
    let mut witnesses: Vec<Vec<usize>> = Vec::new();
    for face in faces(&delta_polar, cone_dim as i64 - 1) {
        let rays_of_cone = face.vertex_indices.clone();
        let singular = if rays_of_cone.len() != cone_dim {
            true
        } else {
            let m: Vec<Vec<Int>> = rays_of_cone.iter().map(|&i| a.rays[i].clone()).collect();
            let (_, d, _) = smith_normal_form(&m);
            (0..cone_dim).any(|i| d[i][i] != Int::from(1) && d[i][i] != Int::from(-1))
        };
        if !singular {
            continue;
        }
        let contained = system.supports.iter().all(|support| {
            support
                .iter()
                .all(|m| rays_of_cone.iter().any(|&rho| m[rho].is_positive()))
        });
        if contained {
            witnesses.push(rays_of_cone);
        }
    }
    match witnesses.into_iter().min() {
        Some(w) => Ok((false, Some(w))),
        None => Ok((true, None)),
    }
}

/// Number of lattice points in the relative interior of a polytope.
pub fn relative_interior_lattice_count(p: &RationalPolytope) -> usize {
    lattice_points(p)
        .iter()
        .filter(|x| p.relative_interior_contains(x))
        .count()
}

/// Per-condition report of the Calabi-Yau family verification.
#[derive(Debug, Clone)]
pub struct CyReport {
    /// None when the quasismoothness budget was exceeded.
    pub quasismooth: Option<bool>,
    pub well_formed: bool,
    pub cy: bool,
    /// Witness stratum when not quasismooth, or witness cone ray set when
    /// not well-formed.
    pub witness: Option<Vec<usize>>,
    pub checks: Vec<(String, bool)>,
    pub budget_exceeded: bool,
}

/// Verify that the system defines a family of Calabi-Yau complete
/// intersections. The marked monomials fix the torus translation of the
/// Newton polytopes Δ_i used in the lattice-point hypotheses.
pub fn is_cy_family(
    a: &ToricAmbient,
    system: &CoxSystem,
    marked: &[Vec<Int>],
    budget: u64,
) -> Result<CyReport, RegError> {
    let s = system.supports.len();
    let n = a.dim;
    if marked.len() != s {
        return Err(RegError::BadInput(format!(
            "expected {} marked monomials, got {}",
            s,
            marked.len()
        )));
    }
    for (i, m) in marked.iter().enumerate() {
        if !system.supports[i].contains(m) {
            return Err(RegError::BadInput(format!(
                "marked monomial {} is not in support {}",
                i, i
            )));
        }
    }
    let mut checks: Vec<(String, bool)> = Vec::new();
    checks.push(("n_ge_s_plus_1".into(), n >= s + 1));
    let mut total = vec![Int::from(0); a.num_rays()];
    for support in &system.supports {
        for (k, x) in support[0].iter().enumerate() {
            total[k] += x;
        }
    }
    checks.push((
        "anticanonical_degree".into(),
        classes_equal(&class_of(a, &total), &anticanonical_class(a)),
    ));
    let mut parts: Vec<RationalPolytope> = Vec::new();
    for (i, support) in system.supports.iter().enumerate() {
        let pts = dehomogenize(a, support, &marked[i])?;
        let q: Vec<QVec> = pts.iter().map(|p| int_to_qvec(p)).collect();
        parts.push(convex_hull(&q, n)?);
    }
    checks.push((
        "dim_parts_positive".into(),
        parts.iter().all(|p| p.dim > 0),
    ));
    let sum = minkowski_sum_all(&parts, n)?;
    checks.push(("dim_sum_is_n".into(), sum.dim == n as i64));
    checks.push((
        "interior_sum_is_one".into(),
        relative_interior_lattice_count(&sum) == 1,
    ));
    let mut partial_ok = true;
    for subset in (0..s).powerset() {
        if subset.is_empty() || subset.len() == s {
            continue;
        }
        let sel: Vec<RationalPolytope> = subset.iter().map(|&i| parts[i].clone()).collect();
        let psum = minkowski_sum_all(&sel, n)?;
        if relative_interior_lattice_count(&psum) != 0 {
            partial_ok = false;
            break;
        }
    }
    checks.push(("interior_partial_sums_zero".into(), partial_ok));
    let qs = is_quasismooth_ci(a, system, budget)?;
    let (quasismooth, mut witness, budget_exceeded) = match qs {
        QsVerdict::Quasismooth => (Some(true), None, false),
        QsVerdict::NotQuasismooth { witness } => (Some(false), Some(witness), false),
        QsVerdict::BudgetExceeded => (None, None, true),
    };
    checks.push(("quasismooth".into(), quasismooth == Some(true)));
    let (well_formed, wf_witness) = is_well_formed(a, system)?;
    checks.push(("well_formed".into(), well_formed));
    if witness.is_none() {
        witness = wf_witness;
    }
    let cy = checks.iter().all(|(_, ok)| *ok);
    Ok(CyReport {
        quasismooth,
        well_formed,
        cy,
        witness,
        checks,
        budget_exceeded,
    })
}
