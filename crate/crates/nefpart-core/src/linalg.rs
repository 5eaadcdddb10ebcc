//! Exact rational and integer linear algebra: vector arithmetic, Gaussian
//! elimination, integer kernels and the Smith normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;
/// A point of `M_Q` or `N_Q`, represented by its rational coordinates.
pub type QVec = Vec<Rat>;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

pub fn qvec_from_i64(v: &[i64]) -> QVec {
    v.iter().map(|&x| rat(x)).collect()
}

pub fn zero_vec(n: usize) -> QVec {
    vec![Rat::zero(); n]
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

pub fn dot_int(a: &[Rat], b: &[Int]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * Rat::from_integer(y.clone());
    }
    acc
}

pub fn dot_ii(a: &[Int], b: &[Int]) -> Int {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Int::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

pub fn add(a: &[Rat], b: &[Rat]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rat], b: &[Rat]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Rat], c: &Rat) -> QVec {
    a.iter().map(|x| x * c).collect()
}

pub fn neg(a: &[Rat]) -> QVec {
    a.iter().map(|x| -x).collect()
}

pub fn is_zero_vec(a: &[Rat]) -> bool {
    a.iter().all(|x| x.is_zero())
}

pub fn is_integral(a: &[Rat]) -> bool {
    a.iter().all(|x| x.is_integer())
}

pub fn to_int_vec(a: &[Rat]) -> Option<Vec<Int>> {
    if is_integral(a) {
        Some(a.iter().map(|x| x.to_integer()).collect())
    } else {
        None
    }
}

pub fn int_to_qvec(a: &[Int]) -> QVec {
    a.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

/// Scale a nonzero rational vector by a positive rational so that it becomes
/// an integer vector with coordinate gcd 1. Returns `None` on the zero vector.
pub fn primitive(a: &[Rat]) -> Option<Vec<Int>> {
    if is_zero_vec(a) {
        return None;
    }
    let mut lcm = Int::one();
    for x in a {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<Int> = a
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    let mut g = Int::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    Some(ints.iter().map(|x| x / &g).collect())
}

/// Primitive form of a nonzero integer vector (divide by the gcd, keep sign).
pub fn primitive_int(a: &[Int]) -> Option<Vec<Int>> {
    let mut g = Int::zero();
    for x in a {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return None;
    }
    Some(a.iter().map(|x| x / &g).collect())
}

/// Row-reduce a rational matrix in place; returns the pivot columns.
/// The matrix ends in (non-normalized) row echelon form.
fn row_echelon(m: &mut Vec<QVec>) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let mut piv = None;
        for i in r..rows {
            if !m[i][c].is_zero() {
                piv = Some(i);
                break;
            }
        }
        let Some(p) = piv else { continue };
        m.swap(r, p);
        for i in (r + 1)..rows {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for j in c..cols {
                    let t = &m[r][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

pub fn rank(rows: &[QVec]) -> usize {
    let mut m: Vec<QVec> = rows.to_vec();
    row_echelon(&mut m).len()
}

/// Solve `A x = b` over the rationals. Returns one solution or `None` if the
/// system is inconsistent. `a` has one row per equation.
pub fn solve(a: &[QVec], b: &[Rat]) -> Option<QVec> {
    assert_eq!(a.len(), b.len());
    if a.is_empty() {
        return Some(vec![]);
    }
    let cols = a[0].len();
    let mut m: Vec<QVec> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = row_echelon(&mut m);
    // Inconsistent iff a pivot lands in the augmented column.
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = zero_vec(cols);
    for (r, &c) in pivots.iter().enumerate().rev() {
        let mut s = m[r][cols].clone();
        for j in (c + 1)..cols {
            s -= &m[r][j] * &x[j];
        }
        x[c] = s / &m[r][c];
    }
    Some(x)
}

/// Basis of the rational null space `{x : A x = 0}`.
pub fn nullspace(a: &[QVec], cols: usize) -> Vec<QVec> {
    let mut m: Vec<QVec> = a.to_vec();
    let pivots = row_echelon(&mut m);
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let free: Vec<usize> = (0..cols).filter(|c| !pivot_set.contains(c)).collect();
    let mut basis = Vec::new();
    for &f in &free {
        let mut x = zero_vec(cols);
        x[f] = Rat::one();
        for (r, &c) in pivots.iter().enumerate().rev() {
            if c >= f {
                continue;
            }
            let mut s = Rat::zero();
            for j in (c + 1)..cols {
                s -= &m[r][j] * &x[j];
            }
            x[c] = s / &m[r][c];
        }
        basis.push(x);
    }
    basis
}

/// Invert a square rational matrix. Returns `None` if singular.
pub fn invert(a: &[QVec]) -> Option<Vec<QVec>> {
    let n = a.len();
    let mut m: Vec<QVec> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            for j in 0..n {
                r.push(if i == j { Rat::one() } else { Rat::zero() });
            }
            r
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, piv);
        let d = m[c][c].clone();
        for j in 0..2 * n {
            m[c][j] = &m[c][j] / &d;
        }
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..2 * n {
                    let t = &m[c][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Smith normal form: returns `(u, d, v)` with `u * a * v = d`, where `u`
/// and `v` are unimodular and `d` is diagonal with `d[i] | d[i+1]`.
pub fn smith_normal_form(a: &[Vec<Int>]) -> (Vec<Vec<Int>>, Vec<Vec<Int>>, Vec<Vec<Int>>) {
    let rows = a.len();
    let cols = if rows > 0 { a[0].len() } else { 0 };
    let mut d: Vec<Vec<Int>> = a.to_vec();
    let mut u: Vec<Vec<Int>> = (0..rows)
        .map(|i| (0..rows).map(|j| Int::from((i == j) as i64)).collect())
        .collect();
    let mut v: Vec<Vec<Int>> = (0..cols)
        .map(|i| (0..cols).map(|j| Int::from((i == j) as i64)).collect())
        .collect();

    let swap_rows = |d: &mut Vec<Vec<Int>>, u: &mut Vec<Vec<Int>>, i: usize, j: usize| {
        d.swap(i, j);
        u.swap(i, j);
    };
    let swap_cols = |d: &mut Vec<Vec<Int>>, v: &mut Vec<Vec<Int>>, i: usize, j: usize| {
        for row in d.iter_mut() {
            row.swap(i, j);
        }
        for row in v.iter_mut() {
            row.swap(i, j);
        }
    };
    // row[i] -= f * row[j]
    let add_row = |d: &mut Vec<Vec<Int>>, u: &mut Vec<Vec<Int>>, i: usize, j: usize, f: &Int| {
        for c in 0..cols {
            let t = &d[j][c] * f;
            d[i][c] -= t;
        }
        for c in 0..rows {
            let t = &u[j][c] * f;
            u[i][c] -= t;
        }
    };
    // col[i] -= f * col[j]
    let add_col = |d: &mut Vec<Vec<Int>>, v: &mut Vec<Vec<Int>>, i: usize, j: usize, f: &Int| {
        for r in 0..d.len() {
            let t = &d[r][j] * f;
            d[r][i] -= t;
        }
        for r in 0..v.len() {
            let t = &v[r][j] * f;
            v[r][i] -= t;
        }
    };

    let n = rows.min(cols);
    let mut k = 0;
    while k < n {
        // Find a minimal nonzero pivot in the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if !d[i][j].is_zero()
                    && best
                        .map(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs())
                        .unwrap_or(true)
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        swap_rows(&mut d, &mut u, k, bi);
        swap_cols(&mut d, &mut v, k, bj);

        loop {
            let mut done = true;
            for i in (k + 1)..rows {
                if !d[i][k].is_zero() {
                    let f = d[i][k].div_floor(&d[k][k]);
                    add_row(&mut d, &mut u, i, k, &f);
                    if !d[i][k].is_zero() {
                        swap_rows(&mut d, &mut u, k, i);
                        done = false;
                    }
                }
            }
            for j in (k + 1)..cols {
                if !d[k][j].is_zero() {
                    let f = d[k][j].div_floor(&d[k][k]);
                    add_col(&mut d, &mut v, j, k, &f);
                    if !d[k][j].is_zero() {
                        swap_cols(&mut d, &mut v, k, j);
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        // Enforce divisibility of the remaining block by d[k][k].
        let mut redo = false;
        'outer: for i in (k + 1)..rows {
            for j in (k + 1)..cols {
                if !(&d[i][j] % &d[k][k]).is_zero() {
                    // Add row i to row k, then restart elimination at k.
                    let minus_one = -Int::one();
                    add_row(&mut d, &mut u, k, i, &minus_one);
                    redo = true;
                    break 'outer;
                }
            }
        }
        if redo {
            continue;
        }
        if d[k][k].is_negative() {
            for c in 0..cols {
                d[k][c] = -d[k][c].clone();
            }
            for c in 0..rows {
                u[k][c] = -u[k][c].clone();
            }
        }
        k += 1;
    }
    (u, d, v)
}

/// Basis of the integer kernel `{x in Z^cols : A x = 0}` (saturated: the
/// basis spans the full lattice of integer solutions).
pub fn kernel_z(a: &[Vec<Int>], cols: usize) -> Vec<Vec<Int>> {
    if a.is_empty() {
        return (0..cols)
            .map(|i| (0..cols).map(|j| Int::from((i == j) as i64)).collect())
            .collect();
    }
    let (_, d, v) = smith_normal_form(a);
    let rows = a.len();
    let r = (0..rows.min(cols)).filter(|&i| !d[i][i].is_zero()).count();
    // Kernel basis: columns r..cols of v.
    (r..cols)
        .map(|j| (0..cols).map(|i| v[i][j].clone()).collect())
        .collect()
}

/// Column-style Hermite normal form of the lattice spanned by the given
/// generator columns; used as a canonical form for lattice comparison.
pub fn lattice_hnf(generators: &[Vec<Int>], dim: usize) -> Vec<Vec<Int>> {
    // Work on a matrix whose columns are the generators.
    let mut cols: Vec<Vec<Int>> = generators.to_vec();
    cols.retain(|c| c.iter().any(|x| !x.is_zero()));
    if cols.is_empty() {
        return vec![];
    }
    let mut pivot_row = 0;
    let mut pivot_col = 0;
    while pivot_row < dim && pivot_col < cols.len() {
        loop {
            // Find column (>= pivot_col) with minimal nonzero entry in pivot_row.
            let mut best: Option<usize> = None;
            for j in pivot_col..cols.len() {
                if !cols[j][pivot_row].is_zero()
                    && best
                        .map(|b| cols[j][pivot_row].abs() < cols[b][pivot_row].abs())
                        .unwrap_or(true)
                {
                    best = Some(j);
                }
            }
            let Some(b) = best else { break };
            cols.swap(pivot_col, b);
            let mut all_zero = true;
            for j in (pivot_col + 1)..cols.len() {
                if !cols[j][pivot_row].is_zero() {
                    let f = cols[j][pivot_row].div_floor(&cols[pivot_col][pivot_row]);
                    for i in 0..dim {
                        let t = &cols[pivot_col][i] * &f;
                        cols[j][i] -= t;
                    }
                    if !cols[j][pivot_row].is_zero() {
                        all_zero = false;
                    }
                }
            }
            if all_zero {
                break;
            }
        }
        if cols[pivot_col][pivot_row].is_zero() {
            pivot_row += 1;
            continue;
        }
        if cols[pivot_col][pivot_row].is_negative() {
            for i in 0..dim {
                cols[pivot_col][i] = -cols[pivot_col][i].clone();
            }
        }
        // Reduce earlier columns modulo the pivot.
        for j in 0..pivot_col {
            if !cols[j][pivot_row].is_zero() {
                let f = cols[j][pivot_row].div_floor(&cols[pivot_col][pivot_row]);
                for i in 0..dim {
                    let t = &cols[pivot_col][i] * &f;
                    cols[j][i] -= t;
                }
            }
        }
        pivot_row += 1;
        pivot_col += 1;
    }
    cols.truncate(pivot_col);
    cols
}
