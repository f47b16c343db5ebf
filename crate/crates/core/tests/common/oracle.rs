//! Brute-force reference computations that share no code with the library
//! beyond the rational type: dense `[i][j][k]` arrays, explicit index loops,
//! and a fraction-free (Bareiss) rank over the integers.

#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use invder::qlinalg::Rational;

pub type Q = Rational;

/// Rank by Bareiss elimination after scaling every row to integers.
pub fn rank(rows: &[Vec<Q>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            row.iter().map(|q| q.numer() * (&l / q.denom())).collect()
        })
        .collect();
    let nrows = a.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..nrows {
            for j in c + 1..cols {
                let num = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                let (q, rem) = num.div_rem(&prev);
                assert!(rem.is_zero(), "Bareiss division must be exact");
                a[i][j] = q;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// `c[i][j][k]` as a nested array.
pub fn dense(c: &invder::StructureConstants) -> Vec<Vec<Vec<Q>>> {
    let n = c.dim();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| c.get(i, j, k).clone()).collect()).collect())
        .collect()
}

/// dim Der(L): unknowns D[a][b] (row a, column b), one equation per (i,j,k):
/// Σ_a D[k][a] c[i][j][a] - Σ_a D[a][i] c[a][j][k] - Σ_a D[a][j] c[i][a][k] = 0.
pub fn derivation_dim(c: &[Vec<Vec<Q>>]) -> usize {
    let n = c.len();
    let mut eqs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut row = vec![Q::zero(); n * n];
                for a in 0..n {
                    row[k * n + a] += &c[i][j][a];
                    row[a * n + i] -= &c[a][j][k];
                    row[a * n + j] -= &c[i][a][k];
                }
                eqs.push(row);
            }
        }
    }
    n * n - rank(&eqs)
}

/// Everything the second cohomology depends on, as plain arrays.
/// `delta[a][b]` and `rho[x][a][b]` are row `a`, column `b`.
pub struct Setting {
    pub c: Vec<Vec<Vec<Q>>>,
    pub delta: Vec<Vec<Q>>,
    pub rho: Vec<Vec<Vec<Q>>>,
    pub delta_v: Vec<Vec<Q>>,
}

impl Setting {
    pub fn from_rep(r: &invder::representation::Representation) -> Self {
        let mat = |m: &invder::Matrix| m.to_rows();
        Setting {
            c: dense(r.source().algebra().constants()),
            delta: mat(r.source().delta()),
            rho: r.rho().iter().map(mat).collect(),
            delta_v: mat(r.delta_v()),
        }
    }

    fn n(&self) -> usize {
        self.c.len()
    }

    fn m(&self) -> usize {
        self.delta_v.len()
    }
}

fn apply(m: &[Vec<Q>], v: &[Q]) -> Vec<Q> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

fn add_into(acc: &mut [Q], v: &[Q], s: i64) {
    let s = Q::from_integer(s.into());
    for (a, b) in acc.iter_mut().zip(v) {
        *a += &s * b;
    }
}

/// A 2-cochain as a full antisymmetric array `f[i][j][t]`.
type Two = Vec<Vec<Vec<Q>>>;
/// A 1-cochain as `h[i][t]`.
type One1 = Vec<Vec<Q>>;

fn two_on(f: &Two, x: &[Q], y: &[Q], m: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); m];
    for (i, xi) in x.iter().enumerate() {
        for (j, yj) in y.iter().enumerate() {
            if xi.is_zero() || yj.is_zero() {
                continue;
            }
            let s = xi * yj;
            for t in 0..m {
                out[t] += &s * &f[i][j][t];
            }
        }
    }
    out
}

fn one_on(h: &One1, x: &[Q], m: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); m];
    for (i, xi) in x.iter().enumerate() {
        for t in 0..m {
            out[t] += xi * &h[i][t];
        }
    }
    out
}

fn unit(n: usize, i: usize) -> Vec<Q> {
    (0..n).map(|k| if k == i { Q::one() } else { Q::zero() }).collect()
}

fn col(m: &[Vec<Q>], j: usize) -> Vec<Q> {
    m.iter().map(|row| row[j].clone()).collect()
}

fn rho_of(s: &Setting, x: &[Q]) -> Vec<Vec<Q>> {
    let m = s.m();
    let mut out = vec![vec![Q::zero(); m]; m];
    for (i, xi) in x.iter().enumerate() {
        for a in 0..m {
            for b in 0..m {
                out[a][b] += xi * &s.rho[i][a][b];
            }
        }
    }
    out
}

/// Coordinates of the image of `D¹` on `h`, listed as
/// (∂h on pairs i<j) ++ (-Δh on basis) ++ (-Δh on basis).
fn d1_image(s: &Setting, h: &One1) -> Vec<Q> {
    let (n, m) = (s.n(), s.m());
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut v = apply(&s.rho[i], &h[j]);
            add_into(&mut v, &apply(&s.rho[j], &h[i]), -1);
            add_into(&mut v, &one_on(h, &s.c[i][j], m), -1);
            out.extend(v);
        }
    }
    let mut delta_part = Vec::new();
    for i in 0..n {
        // -(h(δ e_i) - δ_V h(e_i))
        let mut v = apply(&s.delta_v, &h[i]);
        add_into(&mut v, &one_on(h, &col(&s.delta, i), m), -1);
        delta_part.extend(v);
    }
    out.extend(delta_part.clone());
    out.extend(delta_part);
    out
}

/// Coordinates of `D²(f, g, h)`.
fn d2_image(s: &Setting, f: &Two, g: &One1, h: &One1) -> Vec<Q> {
    let (n, m) = (s.n(), s.m());
    let br = |i: usize, j: usize| s.c[i][j].clone();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let mut v = apply(&s.rho[i], &f[j][k]);
                add_into(&mut v, &apply(&s.rho[j], &f[i][k]), -1);
                add_into(&mut v, &apply(&s.rho[k], &f[i][j]), 1);
                add_into(&mut v, &two_on(f, &br(i, j), &unit(n, k), m), -1);
                add_into(&mut v, &two_on(f, &br(i, k), &unit(n, j), m), 1);
                add_into(&mut v, &two_on(f, &br(j, k), &unit(n, i), m), -1);
                out.extend(v);
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let (di, dj) = (col(&s.delta, i), col(&s.delta, j));
            // ∂g
            let mut v = apply(&s.rho[i], &g[j]);
            add_into(&mut v, &apply(&s.rho[j], &g[i]), -1);
            add_into(&mut v, &one_on(g, &br(i, j), m), -1);
            // Δ²f
            add_into(&mut v, &two_on(f, &di, &unit(n, j), m), 1);
            add_into(&mut v, &two_on(f, &unit(n, i), &dj, m), 1);
            add_into(&mut v, &apply(&s.delta_v, &f[i][j]), -1);
            out.extend(v);
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let (di, dj) = (col(&s.delta, i), col(&s.delta, j));
            let b = br(i, j);
            // φ¹h
            let mut v = apply(&s.delta_v, &one_on(h, &b, m));
            add_into(&mut v, &one_on(h, &apply(&s.delta, &b), m), 1);
            add_into(&mut v, &apply(&rho_of(s, &di), &h[j]), -1);
            add_into(&mut v, &apply(&rho_of(s, &dj), &h[i]), 1);
            // -Δ²_Inv f
            add_into(&mut v, &two_on(f, &di, &dj, m), -1);
            let dv2 = apply(&s.delta_v, &apply(&s.delta_v, &f[i][j]));
            add_into(&mut v, &dv2, 1);
            out.extend(v);
        }
    }
    out
}

/// (dim Z², dim B², dim H²) from columns assembled by explicit loops.
pub fn second_cohomology_dims(s: &Setting) -> (usize, usize, usize) {
    let (n, m) = (s.n(), s.m());
    let zero_two = || vec![vec![vec![Q::zero(); m]; n]; n];
    let zero_one = || vec![vec![Q::zero(); m]; n];
    let mut d1_cols = Vec::new();
    for i in 0..n {
        for t in 0..m {
            let mut h = zero_one();
            h[i][t] = Q::one();
            d1_cols.push(d1_image(s, &h));
        }
    }
    let mut d2_cols = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for t in 0..m {
                let mut f = zero_two();
                f[i][j][t] = Q::one();
                f[j][i][t] = -Q::one();
                d2_cols.push(d2_image(s, &f, &zero_one(), &zero_one()));
            }
        }
    }
    for which in 0..2 {
        for i in 0..n {
            for t in 0..m {
                let mut e = zero_one();
                e[i][t] = Q::one();
                let (g, h) = if which == 0 { (e, zero_one()) } else { (zero_one(), e) };
                d2_cols.push(d2_image(s, &zero_two(), &g, &h));
            }
        }
    }
    let c2 = d2_cols.len();
    // column rank = row rank of the transposed column lists
    let z2 = c2 - rank(&d2_cols);
    let b2 = rank(&d1_cols);
    (z2, b2, z2 - b2)
}
