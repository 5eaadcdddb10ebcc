//! The worked-example verification suites shared by the `examples` and
//! `acceptance` test targets. Each function panics on the first failed
//! assertion.

use super::*;
use nefpart_core::classify::*;
use nefpart_core::geometry::*;
use nefpart_core::gnp::*;
use nefpart_core::goodpair::*;
use nefpart_core::json::system_from_json;
use nefpart_core::linalg::*;
use nefpart_core::regularity::*;
use nefpart_core::toric::*;
use num_traits::ToPrimitive;

fn expect_gnp(delta: &RationalPolytope, blocks: Vec<Vec<usize>>) -> GeneralizedNefPartition {
    let partition = VertexPartition { blocks };
    match is_gnp(delta, &partition).unwrap() {
        GnpResult::Gnp(g, _) => g,
        GnpResult::NotGnp(w) => panic!("expected a GNP, got witness {w:?}"),
    }
}

fn support_sizes(s: &CoxSystem) -> Vec<usize> {
    s.supports.iter().map(|x| x.len()).collect()
}

fn monos(ms: &[&[i64]]) -> Vec<Vec<Int>> {
    ms.iter().map(|m| iv(m)).collect()
}

/// Suite 1: the quadric in P(1,1,3).
pub fn p113_suite() {
    let delta = hull(&[pt(&[-1, -3]), pt(&[-1, 2]), vec![fr(2, 3), fr(1, 3)]], 2);
    let dp = polar(&delta).unwrap();
    assert_eq!(dp.vertices, vec![pt(&[-2, 1]), pt(&[-1, -1]), pt(&[1, 0])]);

    // The split {n1} | {n2, n3} (polar indices 2 | 0,1) is a GNP with the
    // expected parts.
    let g = expect_gnp(&delta, vec![vec![2], vec![0, 1]]);
    assert_eq!(
        g.parts[0].vertices,
        hull(&[pt(&[0, 0]), pt(&[-1, -2]), pt(&[-1, 1])], 2).vertices
    );
    assert_eq!(
        g.parts[1].vertices,
        hull(&[pt(&[0, -1]), pt(&[0, 1]), vec![fr(2, 3), fr(1, 3)]], 2).vertices
    );

    // Every vertex partition of the polar triangle is a GNP: 1 + 3 + 1.
    assert_eq!(all_gnps(&delta, Some(1), 16).unwrap().len(), 1);
    assert_eq!(all_gnps(&delta, Some(2), 16).unwrap().len(), 3);
    assert_eq!(all_gnps(&delta, Some(3), 16).unwrap().len(), 1);

    // The finest partition: its single-vertex blocks give rational parts.
    let g3 = expect_gnp(&delta, vec![vec![0], vec![1], vec![2]]);
    assert_eq!(
        g3.parts[0].vertices,
        hull(&[pt(&[0, 0]), pt(&[0, -1]), vec![fr(1, 3), fr(-1, 3)]], 2).vertices
    );
    assert_eq!(
        g3.parts[1].vertices,
        hull(&[pt(&[0, 0]), pt(&[0, 1]), vec![fr(1, 3), fr(2, 3)]], 2).vertices
    );

    // The dual of the 2-block GNP.
    let d = dual_gnp(&g).unwrap();
    assert_eq!(d.parts[0].vertices, hull(&[pt(&[0, 0]), pt(&[1, 0])], 2).vertices);
    assert_eq!(
        d.parts[1].vertices,
        hull(&[pt(&[0, 0]), pt(&[-1, -1]), pt(&[-2, 1])], 2).vertices
    );
    assert_eq!(
        d.delta.vertices,
        hull(
            &[
                pt(&[1, 0]),
                pt(&[-1, -1]),
                pt(&[-2, 1]),
                pt(&[-1, 1]),
                pt(&[0, -1]),
            ],
            2
        )
        .vertices
    );
    // Dual blocks as coordinate sets: J1 = nonzero vertices of Delta_1, etc.
    let block_coords = |g: &GeneralizedNefPartition, j: usize| -> Vec<QVec> {
        let mut v: Vec<QVec> = g.partition.blocks[j]
            .iter()
            .map(|&rho| g.delta_polar.vertices[rho].clone())
            .collect();
        v.sort();
        v
    };
    let mut j1 = vec![pt(&[-1, -2]), pt(&[-1, 1])];
    j1.sort();
    let mut j2 = vec![pt(&[0, -1]), pt(&[0, 1]), vec![fr(2, 3), fr(1, 3)]];
    j2.sort();
    assert_eq!(block_coords(&d, 0), j1);
    assert_eq!(block_coords(&d, 1), j2);

    // Duality is an involution on the nose.
    let dd = dual_gnp(&d).unwrap();
    assert_eq!(dd.delta.vertices, g.delta.vertices);
    assert_eq!(dd.partition, g.partition);
    assert_eq!(dd.parts, g.parts);
}

/// Suite 2: the blow-up of P^2 at a point.
pub fn blp2_suite() {
    let delta = hull(
        &[pt(&[2, 1]), pt(&[-1, 1]), pt(&[-1, -1]), pt(&[0, -1])],
        2,
    );
    let dp = polar(&delta).unwrap();
    assert_eq!(
        dp.vertices,
        vec![pt(&[-1, 1]), pt(&[0, -1]), pt(&[0, 1]), pt(&[1, 0])]
    );

    let g = expect_gnp(&delta, vec![vec![0, 2], vec![1, 3]]);

    // {0,3} | {1,2} fails: part 1 has no admissible vertex on the polar
    // facet spanned by vertices 2 and 3.
    let bad = VertexPartition {
        blocks: vec![vec![0, 3], vec![1, 2]],
    };
    match is_gnp(&delta, &bad).unwrap() {
        GnpResult::NotGnp(w) => {
            assert_eq!(w.part, 1);
            assert_eq!(w.facet, vec![2, 3]);
        }
        GnpResult::Gnp(..) => panic!("{bad:?} must not be a GNP"),
    }

    assert_eq!(all_gnps(&delta, Some(2), 16).unwrap().len(), 5);

    // Nef divisor classes in the (H, E)-basis obtained from the ambient's
    // free gradings by the fixed change of basis e = (f1, f0 - f1).
    let a = ambient_from_polytope(&delta).unwrap();
    let ebasis = |c: &ClassElement| -> (i64, i64) {
        assert!(c.torsion.is_empty());
        let f0 = c.free[0].to_i64().unwrap();
        let f1 = c.free[1].to_i64().unwrap();
        (f1, f0 - f1)
    };
    let classes_of = |blocks: Vec<Vec<usize>>| -> Vec<(i64, i64)> {
        let g = expect_gnp(&delta, blocks);
        nef_divisors(&a, &g)
            .unwrap()
            .iter()
            .map(|(_, c)| ebasis(c))
            .collect()
    };
    assert_eq!(classes_of(vec![vec![0, 2], vec![1, 3]]), vec![(1, 0), (2, -1)]);
    assert_eq!(classes_of(vec![vec![1], vec![0, 2, 3]]), vec![(1, 0), (2, -1)]);
    assert_eq!(classes_of(vec![vec![0], vec![1, 2, 3]]), vec![(1, -1), (2, 0)]);

    // The trivial partition is irreducible; the 2-block GNP is too.
    assert!(is_irreducible(&g).unwrap().0);
    let g1 = expect_gnp(&delta, vec![vec![0, 1, 2, 3]]);
    assert!(is_irreducible(&g1).unwrap().0);
}

fn nested_pair() -> GoodPair {
    let delta = hull(
        &[pt(&[2, 1]), pt(&[-1, 1]), pt(&[-1, -1]), pt(&[0, -1])],
        2,
    );
    let outer = expect_gnp(&delta, vec![vec![0, 2], vec![1, 3]]);
    let p1 = hull(&[pt(&[0, 0]), pt(&[0, -1]), pt(&[1, 0])], 2);
    let p2 = hull(&[pt(&[0, 0]), pt(&[-1, 0]), pt(&[0, 1])], 2);
    let inner = gnp_from_parts(&[p1, p2], 2).unwrap();
    GoodPair::new(inner, outer).unwrap()
}

/// Suite 3: the pair matrix of the nested pair on the blow-up of P^2.
pub fn matrix_suite() {
    let p = nested_pair();
    assert!(is_good_pair(&p.inner, &p.outer).unwrap().good);
    assert!(!is_delsarte(&p));

    let m = pair_matrix(&p);
    let expected: Vec<Vec<Int>> = [
        [1, 1, 1, 0, 0, 0],
        [1, 0, 0, 0, 1, 0],
        [1, 0, 1, 0, 0, 1],
        [0, 0, 0, 1, 1, 1],
        [0, 1, 0, 1, 1, 0],
        [0, 1, 1, 1, 0, 1],
    ]
    .iter()
    .map(|r| iv(r))
    .collect();
    assert_eq!(m.entries, expected);
    // Labels: per block, the zero label first, then the nonzero vertices.
    assert_eq!(m.row_labels[0], (0, None));
    assert_eq!(m.row_labels[3], (1, None));
    assert_eq!(m.col_labels[0], (0, None));
    assert_eq!(m.col_labels[3], (1, None));

    // The matrix of the dual pair is the transpose, label for label.
    let d = dual_good_pair(&p).unwrap();
    assert_eq!(pair_matrix(&d), transpose(&m));
    // And the dual of the dual brings the matrix back.
    let dd = dual_good_pair(&d).unwrap();
    assert_eq!(pair_matrix(&dd), m);

    // The equation system attached to the pair.
    let (a, s) = equations_from_pair(&p).unwrap();
    assert_eq!(
        a.rays,
        vec![iv(&[-1, 1]), iv(&[0, -1]), iv(&[0, 1]), iv(&[1, 0])]
    );
    assert_eq!(
        s.supports[0],
        monos(&[&[0, 0, 1, 1], &[0, 1, 0, 0], &[1, 0, 1, 0]])
    );
    assert_eq!(
        s.supports[1],
        monos(&[&[0, 1, 0, 1], &[1, 0, 1, 1], &[1, 1, 0, 0]])
    );
    let marked = marked_of_pair(&p, &a);
    assert_eq!(marked, monos(&[&[1, 0, 1, 0], &[0, 1, 0, 1]]));
    for (i, m) in marked.iter().enumerate() {
        assert!(s.supports[i].contains(m));
    }

    // Equations -> pair round trip.
    let q = pair_from_equations(&a, &s, &marked).unwrap();
    assert_eq!(q.outer.delta.vertices, p.outer.delta.vertices);
    assert_eq!(q.outer.partition, p.outer.partition);
    assert_eq!(q.inner.parts, p.inner.parts);

    // The dual ambient is P^1 x P^1 (4 rays, no simplex fan, no torsion).
    let (da, ds) = equations_from_pair(&d).unwrap();
    assert_eq!(da.num_rays(), 4);
    assert!(fake_wps_data(&da).is_none());
    assert!(da.quotient_gradings.is_empty());
    assert_eq!(support_sizes(&ds), vec![3, 3]);
}

fn k3_pair() -> GoodPair {
    let d2_1 = hull(
        &[
            pt(&[-1, 0, -1, -2]),
            pt(&[-1, 0, -1, 2]),
            pt(&[-1, 0, 3, -2]),
            pt(&[1, 0, 1, 0]),
            vec![fr(1, 3), fr(-4, 3), fr(1, 3), fr(-2, 3)],
        ],
        4,
    );
    let d2_2 = hull(
        &[
            pt(&[-1, 1, -2, -1]),
            pt(&[-1, 1, -2, 3]),
            pt(&[-1, 1, 2, -1]),
            pt(&[1, 1, 0, 1]),
            vec![fr(1, 3), fr(-1, 3), fr(-2, 3), fr(1, 3)],
        ],
        4,
    );
    let d1_1 = hull(
        &[
            pt(&[0, -1, 0, -1]),
            pt(&[-1, 0, 3, -2]),
            pt(&[1, 0, 1, 0]),
            pt(&[0, 0, 0, 0]),
        ],
        4,
    );
    let d1_2 = hull(&[pt(&[-1, 1, -2, 3]), pt(&[0, 1, -1, 0]), pt(&[0, 0, 0, 0])], 4);
    let outer = gnp_from_parts(&[d2_1, d2_2], 4).unwrap();
    let inner = gnp_from_parts(&[d1_1, d1_2], 4).unwrap();
    GoodPair::new(inner, outer).unwrap()
}

/// Suite 4: the K3 family of bidegree (4, 5) in P(1,1,1,2,3) and its dual.
pub fn k3_suite() {
    let pair = k3_pair();
    assert_eq!(pair.outer.partition.blocks, vec![vec![0, 3, 4], vec![1, 2]]);
    assert!(is_delsarte(&pair));

    let (a, s) = equations_from_pair(&pair).unwrap();
    let fa = fake_wps_data(&a).unwrap();
    assert!(gradings_match(&fa, &[1, 1, 1, 2, 3], &[]));
    assert_eq!(
        s.supports[0],
        monos(&[
            &[0, 0, 0, 0, 2],
            &[0, 0, 1, 1, 0],
            &[0, 4, 0, 0, 0],
            &[1, 0, 0, 1, 1],
        ])
    );
    assert_eq!(
        s.supports[1],
        monos(&[&[0, 0, 0, 2, 1], &[0, 1, 1, 0, 0], &[4, 0, 0, 0, 0]])
    );
    assert_eq!(
        is_quasismooth_ci(&a, &s, DEFAULT_BUDGET).unwrap(),
        QsVerdict::Quasismooth
    );

    // The dual pair lives in P(1,2,2,3,4)/(Z/3) with the expected action.
    let dual = dual_good_pair(&pair).unwrap();
    let (ad, sd) = equations_from_pair(&dual).unwrap();
    let fd = fake_wps_data(&ad).unwrap();
    assert!(gradings_match(
        &fd,
        &[1, 2, 2, 3, 4],
        &[(3, vec![0, 1, 2, 1, 0])]
    ));
    assert_eq!(
        sd.supports[0],
        monos(&[
            &[0, 0, 0, 1, 2],
            &[0, 0, 1, 2, 0],
            &[0, 4, 0, 0, 0],
            &[1, 0, 1, 0, 1],
        ])
    );
    assert_eq!(
        sd.supports[1],
        monos(&[&[0, 0, 1, 0, 0], &[0, 1, 0, 1, 0], &[4, 0, 0, 0, 0]])
    );
    // The dual equations agree with the expected dual system after renaming
    // the variables (ordered there by the weights (3,1,4,2,2)).
    let printed_dual = vec![
        monos(&[
            &[2, 0, 0, 0, 1],
            &[1, 1, 1, 0, 0],
            &[0, 0, 1, 0, 2],
            &[0, 0, 0, 4, 0],
        ]),
        monos(&[&[0, 4, 0, 0, 0], &[0, 0, 1, 0, 0], &[0, 0, 0, 1, 1]]),
    ];
    assert!(supports_match_up_to_permutation(
        &sd.supports,
        &printed_dual,
        false
    ));
    assert_eq!(
        is_quasismooth_ci(&ad, &sd, DEFAULT_BUDGET).unwrap(),
        QsVerdict::Quasismooth
    );

    // The saturated pair: every lattice point of the outer parts joins the
    // inner parts. The resulting family contains the family above as the
    // locus where the extra coefficients vanish, and it is quasismooth.
    let sat = saturate_pair(&pair.outer).unwrap();
    let (sa, ss) = equations_from_pair(&sat).unwrap();
    assert_eq!(support_sizes(&ss), vec![8, 7]);
    assert_eq!(
        is_quasismooth_ci(&sa, &ss, DEFAULT_BUDGET).unwrap(),
        QsVerdict::Quasismooth
    );
    let dsat = dual_good_pair(&sat).unwrap();
    let (dsa, dss) = equations_from_pair(&dsat).unwrap();
    assert_eq!(support_sizes(&dss), vec![4, 3]);
    assert_eq!(
        is_quasismooth_ci(&dsa, &dss, DEFAULT_BUDGET).unwrap(),
        QsVerdict::Quasismooth
    );
}

const LT_SYSTEM: &str = r#"{
  "rays": [[1,0,0,0,0],[0,1,0,0,0],[0,0,1,0,0],[0,0,0,1,0],[0,0,0,0,1],[-1,-1,-1,-1,-1]],
  "supports": [
    [[1,1,1,0,0,0],[0,0,0,3,0,0],[0,0,0,0,3,0],[0,0,0,0,0,3]],
    [[0,0,0,1,1,1],[3,0,0,0,0,0],[0,3,0,0,0,0],[0,0,3,0,0,0]]
  ],
  "marked": [[1,1,1,0,0,0],[0,0,0,1,1,1]]
}"#;

/// Suite 5: the (3,3) complete intersection in P^5 (Libgober-Teitelbaum).
pub fn lt_suite() {
    let v: serde_json::Value = serde_json::from_str(LT_SYSTEM).unwrap();
    let si = system_from_json(&v, "").unwrap();
    let marked = si.marked.clone().unwrap();
    let pair = pair_from_equations(&si.ambient, &si.system, &marked).unwrap();
    assert!(is_delsarte(&pair));

    // Equations -> pair -> equations is exact.
    let (a, s) = equations_from_pair(&pair).unwrap();
    let orig = sorted_eqs(&si.system.supports);
    assert_eq!(sorted_eqs(&s.supports), orig);
    assert_eq!(
        is_quasismooth_ci(&a, &s, DEFAULT_BUDGET).unwrap(),
        QsVerdict::Quasismooth
    );
    let rep = is_cy_family(&a, &s, &marked_of_pair(&pair, &a), DEFAULT_BUDGET).unwrap();
    assert!(rep.cy, "checks: {:?}", rep.checks);

    // The dual family lives in P^5 / (Z/3 x Z/3 x Z/9) with the expected
    // actions, and its equations have the same monomial pattern.
    let dual = dual_good_pair(&pair).unwrap();
    let (da, ds) = equations_from_pair(&dual).unwrap();
    let fd = fake_wps_data(&da).unwrap();
    assert!(gradings_match(
        &fd,
        &[1, 1, 1, 1, 1, 1],
        &[
            (3, vec![0, 2, 1, 1, 1, 1]),
            (3, vec![0, 0, 0, 1, 2, 0]),
            (9, vec![0, 3, 3, 8, 2, 8]),
        ]
    ));
    assert_eq!(support_sizes(&ds), vec![4, 4]);
    assert!(supports_match_up_to_permutation(
        &ds.supports,
        &si.system.supports,
        true
    ));
    assert_eq!(
        is_quasismooth_ci(&da, &ds, DEFAULT_BUDGET).unwrap(),
        QsVerdict::Quasismooth
    );
    let rep = is_cy_family(&da, &ds, &marked_of_pair(&dual, &da), DEFAULT_BUDGET).unwrap();
    assert!(rep.cy, "checks: {:?}", rep.checks);
}

fn sorted_eqs(s: &[Vec<Vec<Int>>]) -> Vec<Vec<Vec<Int>>> {
    s.iter()
        .map(|eq| {
            let mut eq = eq.clone();
            eq.sort();
            eq
        })
        .collect()
}

const SCHOEN_SYSTEM: &str = r#"{
  "rays": [[1,0,0,0,0],[0,1,0,0,0],[-1,-1,0,0,0],[0,0,1,0,0],[0,0,0,1,0],[0,0,-1,-1,0],[0,0,0,0,1],[0,0,0,0,-1]],
  "supports": [
    [[3,0,0,0,0,0,1,0],[0,3,0,0,0,0,1,0],[0,0,3,0,0,0,1,0],[1,1,1,0,0,0,1,0],[1,1,1,0,0,0,0,1]],
    [[0,0,0,1,1,1,1,0],[0,0,0,3,0,0,0,1],[0,0,0,0,3,0,0,1],[0,0,0,0,0,3,0,1],[0,0,0,1,1,1,0,1]]
  ],
  "marked": [[1,1,1,0,0,0,1,0],[0,0,0,1,1,1,0,1]]
}"#;

/// Suite 6: the fibre product of two rational elliptic surfaces (Schoen).
pub fn schoen_suite() {
    let v: serde_json::Value = serde_json::from_str(SCHOEN_SYSTEM).unwrap();
    let si = system_from_json(&v, "").unwrap();
    let marked = si.marked.clone().unwrap();

    // Exactly two admissible choices of marked monomials.
    assert_eq!(enumerate_marked_choices(&si.ambient, &si.system).len(), 2);

    let pair = pair_from_equations(&si.ambient, &si.system, &marked).unwrap();
    let (a, s) = equations_from_pair(&pair).unwrap();
    assert_eq!(support_sizes(&s), vec![5, 5]);
    assert_eq!(sorted_eqs(&s.supports), sorted_eqs(&si.system.supports));
    assert_eq!(
        is_quasismooth_ci(&a, &s, DEFAULT_BUDGET).unwrap(),
        QsVerdict::Quasismooth
    );

    // Self-duality: the dual equations are the original ones after renaming
    // the variables, and the dual ambient is a (Z/3)^2 quotient.
    let dual = dual_good_pair(&pair).unwrap();
    let (da, ds) = equations_from_pair(&dual).unwrap();
    let mut orders: Vec<i64> = da
        .quotient_gradings
        .iter()
        .map(|q| q.order.to_i64().unwrap())
        .collect();
    orders.sort();
    assert_eq!(orders, vec![3, 3]);
    assert!(supports_match_up_to_permutation(
        &ds.supports,
        &si.system.supports,
        true
    ));
    assert_eq!(
        is_quasismooth_ci(&da, &ds, DEFAULT_BUDGET).unwrap(),
        QsVerdict::Quasismooth
    );
}

fn p1112_system() -> (ToricAmbient, CoxSystem, Vec<usize>) {
    let (a, perm) = wps_ambient(&[1, 1, 1, 2]);
    let r = 4;
    let g1 = vec![
        mono(&perm, r, &[(0, 1), (1, 1)]),
        mono(&perm, r, &[(2, 2)]),
        mono(&perm, r, &[(3, 1)]),
    ];
    let g2 = vec![
        mono(&perm, r, &[(0, 3)]),
        mono(&perm, r, &[(2, 3)]),
        mono(&perm, r, &[(1, 1), (3, 1)]),
        mono(&perm, r, &[(1, 2), (2, 1)]),
        mono(&perm, r, &[(2, 1), (3, 1)]),
    ];
    let system = cox_system(&a, &[g1, g2]).unwrap();
    (a, system, perm)
}

/// Project a full Cayley exponent vector to the coordinates outside I.
fn project(m: &[i64], stratum: &[usize]) -> QVec {
    (0..m.len())
        .filter(|i| stratum.binary_search(i).is_err())
        .map(|i| Rat::from_integer(Int::from(m[i])))
        .collect()
}

/// Full Cayley exponent vector from weight-order variable exponents plus a
/// t-index.
fn cayley_mono(perm: &[usize], exps: &[(usize, i64)], t: usize) -> Vec<i64> {
    let mut e = vec![0i64; 6];
    for &(v, x) in exps {
        e[perm[v]] = x;
    }
    e[4 + t] = 1;
    e
}

/// Suite 7: the worked base-locus/restricted-polytope example in P(1,1,1,2)
/// for g1 = x1 x2 + x3^2 + x4, g2 = x1^3 + x3^3 + x2 x4 + x2^2 x3 + x3 x4.
pub fn p1112_suite() {
    let (a, system, perm) = p1112_system();

    // Base locus of g1: exactly the strata {x1,x3,x4} and {x2,x3,x4}.
    let strata = base_locus_strata(&a, &system.supports[0], DEFAULT_BUDGET).unwrap();
    let mut expected: Vec<Vec<usize>> = vec![
        vec![perm[0], perm[2], perm[3]],
        vec![perm[1], perm[2], perm[3]],
    ];
    for e in &mut expected {
        e.sort();
    }
    expected.sort();
    let got: Vec<Vec<usize>> = strata.iter().map(|s| s.indices.clone()).collect();
    assert_eq!(got, expected);

    let cs = cayley_system(&a, &system).unwrap();

    // Stratum D1: I = {x1, x3, x4}; restricted polytopes are the points of
    // t1 x2 and t2 x2^2 and the segment conv{t1, t2 x2} - dependent.
    let mut i1 = vec![perm[0], perm[2], perm[3]];
    i1.sort();
    let rp = restricted_polytopes(&cs, &i1).unwrap();
    let by_rho = |rp: &Vec<(usize, Option<RationalPolytope>)>, rho: usize| {
        rp.iter().find(|(r, _)| *r == rho).unwrap().1.clone()
    };
    assert_eq!(
        by_rho(&rp, perm[0]).unwrap().vertices,
        vec![project(&cayley_mono(&perm, &[(1, 1)], 0), &i1)]
    );
    assert_eq!(
        by_rho(&rp, perm[2]).unwrap().vertices,
        vec![project(&cayley_mono(&perm, &[(1, 2)], 1), &i1)]
    );
    let p_x4 = by_rho(&rp, perm[3]).unwrap();
    let mut seg = vec![
        project(&cayley_mono(&perm, &[], 0), &i1),
        project(&cayley_mono(&perm, &[(1, 1)], 1), &i1),
    ];
    seg.sort();
    assert_eq!(p_x4.vertices, seg);
    assert_eq!(p_x4.dim, 1);
    let slots: Vec<Option<RationalPolytope>> = rp.into_iter().map(|(_, p)| p).collect();
    assert!(is_dependent(&slots).0);

    // Stratum D2: I = {x1, x2, x3, t1} -> [empty, t2 x4, t2 x4, x4].
    let mut i2 = vec![perm[0], perm[1], perm[2], 4];
    i2.sort();
    let rp = restricted_polytopes(&cs, &i2).unwrap();
    assert!(by_rho(&rp, perm[0]).is_none());
    let t2x4 = vec![project(&cayley_mono(&perm, &[(3, 1)], 1), &i2)];
    assert_eq!(by_rho(&rp, perm[1]).unwrap().vertices, t2x4);
    assert_eq!(by_rho(&rp, perm[2]).unwrap().vertices, t2x4);
    assert_eq!(
        by_rho(&rp, 4).unwrap().vertices,
        vec![project(&cayley_mono(&perm, &[(3, 1)], 0), &i2)]
    );

    // Stratum D3: I = {x2, x3, x4, t2} -> [t1 x1, empty, t1, x1^3].
    let mut i3 = vec![perm[1], perm[2], perm[3], 5];
    i3.sort();
    let rp = restricted_polytopes(&cs, &i3).unwrap();
    assert_eq!(
        by_rho(&rp, perm[1]).unwrap().vertices,
        vec![project(&cayley_mono(&perm, &[(0, 1)], 0), &i3)]
    );
    assert!(by_rho(&rp, perm[2]).is_none());
    assert_eq!(
        by_rho(&rp, perm[3]).unwrap().vertices,
        vec![project(&cayley_mono(&perm, &[], 0), &i3)]
    );
    assert_eq!(
        by_rho(&rp, 5).unwrap().vertices,
        vec![project(&cayley_mono(&perm, &[(0, 3)], 1), &i3)]
    );

    // The full system is quasismooth and well-formed.
    assert_eq!(
        is_quasismooth_ci(&a, &system, DEFAULT_BUDGET).unwrap(),
        QsVerdict::Quasismooth
    );
}

/// Suite 8: classification of the (2,3) complete intersections in P^4.
pub fn classification_suite() {
    let rows = classify_vector(2, 3, &[1, 1, 1, 1, 1], DEFAULT_BUDGET).unwrap();
    assert_eq!(rows.len(), 4, "expected exactly 4 families");
    for r in &rows {
        assert!(r.irreducible);
        assert!(r.quasismooth);
        assert!(r.dual_quasismooth);
        assert!(!r.budget_exceeded);
    }
    // The four dual ambients, up to weight-preserving renaming.
    let expected: Vec<(Vec<i64>, Vec<(i64, Vec<i64>)>)> = vec![
        (vec![2, 2, 2, 3, 3], vec![(6, vec![0, 1, 5, 3, 0])]),
        (vec![15, 9, 8, 10, 12], vec![]),
        (vec![1, 1, 1, 1, 1], vec![(8, vec![0, 2, 6, 3, 1])]),
        (
            vec![1, 1, 1, 1, 1],
            vec![(2, vec![0, 0, 1, 1, 0]), (6, vec![0, 4, 2, 5, 5])],
        ),
    ];
    let mut used = vec![false; rows.len()];
    for (w, quots) in &expected {
        let matches: Vec<usize> = rows
            .iter()
            .enumerate()
            .filter(|(_, r)| {
                gradings_match(r.dual_ambient.as_ref().unwrap(), w, quots)
            })
            .map(|(i, _)| i)
            .collect();
        assert_eq!(
            matches.len(),
            1,
            "expected exactly one row with dual ambient P({w:?}) {quots:?}, got {matches:?}"
        );
        assert!(!used[matches[0]], "row matched twice");
        used[matches[0]] = true;
    }
}
