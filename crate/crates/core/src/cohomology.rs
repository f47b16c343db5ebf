//! The cochain complex of an InvDer Lie algebra with coefficients in a
//! representation, in degrees 1 and 2.
//!
//! Degree-1 cochains are linear maps `L → V`. Degree-2 InvDer cochains are
//! triples `(f, g, h)` with `f: ∧²L → V` and `g, h: L → V`, and the
//! differentials are
//!
//! ```text
//! D¹(f)       = (∂¹f, -Δ¹f, -Δ¹f)
//! D²(f, g, h) = (∂²f, ∂¹g + Δ²f, φ¹h - Δ²_Inv f)
//! ```
//!
//! where `∂` is the Chevalley–Eilenberg differential and
//!
//! ```text
//! Δ¹f        = f∘δ - δ_V∘f
//! Δ²f(x,y)   = f(δx,y) + f(x,δy) - δ_V f(x,y)
//! Δ²_Inv f   = f(δx,δy) - δ_V² f(x,y)
//! φ¹h(x,y)   = δ_V h([x,y]) + h(δ[x,y]) - ρ(δx)h(y) + ρ(δy)h(x)
//! ```
//!
//! The operator used for the third slot of `D¹` is the same `Δ¹`.
//!
//! Coordinates: a cochain of degree `k` is stored as an `m × C(n,k)` matrix
//! whose columns are the values on sorted basis tuples in lexicographic order.
//! Flattening walks the columns in order and each column top to bottom, and
//! a triple flattens as the `f` block, then `g`, then `h`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::qlinalg::{
    axpy, is_zero_vector, kernel_basis, sub_vectors, zero_vector, Matrix, Rational,
    SubspaceReducer, Vector,
};
use crate::representation::Representation;

/// All `k`-element subsets of `0..n`, sorted, in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Sorts `idx` and returns the permutation sign, or `None` on a repeat.
fn sort_with_sign(idx: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut v = idx.to_vec();
    let mut negative = false;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                negative = !negative;
            } else if v[j] == v[j + 1] {
                return None;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, negative))
}

/// An alternating `k`-linear map `L^k → V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    degree: usize,
    source_dim: usize,
    tuples: Vec<Vec<usize>>,
    values: Matrix,
}

impl Cochain {
    pub fn zero(degree: usize, source_dim: usize, target_dim: usize) -> Self {
        let tuples = combinations(source_dim, degree);
        let values = Matrix::zeros(target_dim, tuples.len());
        Cochain {
            degree,
            source_dim,
            tuples,
            values,
        }
    }

    /// `values` is `m × C(n, degree)`, one column per sorted basis tuple.
    pub fn from_values(degree: usize, source_dim: usize, values: Matrix) -> Result<Self> {
        let tuples = combinations(source_dim, degree);
        if values.cols() != tuples.len() {
            return Err(Error::Shape(format!(
                "a degree-{degree} cochain on dimension {source_dim} needs {} columns, got {}",
                tuples.len(),
                values.cols()
            )));
        }
        Ok(Cochain {
            degree,
            source_dim,
            tuples,
            values,
        })
    }

    /// A linear map `L → V` given as an `m × n` matrix.
    pub fn from_map(map: Matrix) -> Self {
        let n = map.cols();
        Cochain::from_values(1, n, map).expect("a map has one column per basis vector")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.values.rows()
    }

    pub fn values(&self) -> &Matrix {
        &self.values
    }

    pub fn tuples(&self) -> &[Vec<usize>] {
        &self.tuples
    }

    /// For a degree-1 cochain, the underlying `m × n` matrix.
    pub fn as_map(&self) -> &Matrix {
        debug_assert_eq!(self.degree, 1);
        &self.values
    }

    fn column_of(&self, sorted: &[usize]) -> usize {
        self.tuples.binary_search_by(|t| t.as_slice().cmp(sorted)).expect("sorted tuple is a basis tuple")
    }

    /// Value on basis vectors `e_{idx[0]}, …` in any order.
    pub fn at(&self, idx: &[usize]) -> Vector {
        assert_eq!(idx.len(), self.degree, "wrong number of arguments");
        match sort_with_sign(idx) {
            None => zero_vector(self.target_dim()),
            Some((sorted, negative)) => {
                let col = self.values.column(self.column_of(&sorted));
                if negative {
                    col.into_iter().map(|x| -x).collect()
                } else {
                    col
                }
            }
        }
    }

    /// Value with a general first argument and basis vectors for the rest.
    pub fn eval_first(&self, x: &[Rational], rest: &[usize]) -> Vector {
        let mut out = zero_vector(self.target_dim());
        let mut idx = Vec::with_capacity(self.degree);
        for (l, xl) in x.iter().enumerate() {
            if xl.is_zero() || rest.contains(&l) {
                continue;
            }
            idx.clear();
            idx.push(l);
            idx.extend_from_slice(rest);
            axpy(&mut out, xl, &self.at(&idx));
        }
        out
    }

    /// Value on general vectors.
    pub fn eval(&self, args: &[&[Rational]]) -> Vector {
        assert_eq!(args.len(), self.degree, "wrong number of arguments");
        let mut out = zero_vector(self.target_dim());
        let mut idx = vec![0usize; self.degree];
        self.eval_rec(args, 0, Rational::one(), &mut idx, &mut out);
        out
    }

    fn eval_rec(&self, args: &[&[Rational]], pos: usize, coeff: Rational, idx: &mut Vec<usize>, out: &mut Vector) {
        if pos == args.len() {
            axpy(out, &coeff, &self.at(idx));
            return;
        }
        for (l, x) in args[pos].iter().enumerate() {
            if x.is_zero() || idx[..pos].contains(&l) {
                continue;
            }
            idx[pos] = l;
            self.eval_rec(args, pos + 1, &coeff * x, idx, out);
        }
    }

    pub fn flatten(&self) -> Vector {
        self.values.transpose().entries().to_vec()
    }

    pub fn unflatten(degree: usize, source_dim: usize, target_dim: usize, v: &[Rational]) -> Result<Self> {
        let cols = binomial(source_dim, degree);
        if v.len() != cols * target_dim {
            return Err(Error::Shape(format!(
                "flat cochain has length {}, expected {}",
                v.len(),
                cols * target_dim
            )));
        }
        let values = Matrix::from_fn(target_dim, cols, |r, c| v[c * target_dim + r].clone());
        Cochain::from_values(degree, source_dim, values)
    }

    /// Builds a cochain from its values on sorted basis tuples.
    pub fn from_fn(degree: usize, source_dim: usize, target_dim: usize, mut f: impl FnMut(&[usize]) -> Vector) -> Self {
        let tuples = combinations(source_dim, degree);
        let columns: Vec<Vector> = tuples.iter().map(|t| f(t)).collect();
        let values = Matrix::from_columns(target_dim, &columns);
        Cochain {
            degree,
            source_dim,
            tuples,
            values,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_zero()
    }

    fn same_shape(&self, other: &Cochain) -> bool {
        self.degree == other.degree
            && self.source_dim == other.source_dim
            && self.target_dim() == other.target_dim()
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        assert!(self.same_shape(other), "cochain shape mismatch");
        Cochain {
            values: &self.values + &other.values,
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        assert!(self.same_shape(other), "cochain shape mismatch");
        Cochain {
            values: &self.values - &other.values,
            ..self.clone()
        }
    }

    pub fn neg(&self) -> Cochain {
        Cochain {
            values: -&self.values,
            ..self.clone()
        }
    }

    /// `A ∘ f` for a linear map `A` on `V`.
    pub fn compose_left(&self, a: &Matrix) -> Cochain {
        Cochain {
            values: a * &self.values,
            ..self.clone()
        }
    }
}

fn check_cochain(r: &Representation, f: &Cochain, degree: usize) -> Result<()> {
    let (n, m) = (r.source().dim(), r.target_dim());
    if f.degree != degree || f.source_dim != n || f.target_dim() != m {
        return Err(Error::Shape(format!(
            "expected a degree-{degree} cochain {n} → {m}, got degree {} {} → {}",
            f.degree,
            f.source_dim,
            f.target_dim()
        )));
    }
    Ok(())
}

/// Chevalley–Eilenberg differential in degrees 1 and 2.
pub fn ce_differential(r: &Representation, f: &Cochain) -> Result<Cochain> {
    let k = f.degree;
    if k != 1 && k != 2 {
        return Err(Error::UnsupportedDegree(k));
    }
    check_cochain(r, f, k)?;
    Ok(ce_any_degree(r, f))
}

/// `∂f(x_0..x_k) = Σ_a (-1)^a ρ(x_a) f(..x̂_a..) + Σ_{a<b} (-1)^{a+b} f([x_a,x_b], ..x̂_a..x̂_b..)`
/// on sorted basis tuples (indices counted from zero, which leaves the
/// signs of the one-based formula unchanged).
fn ce_any_degree(r: &Representation, f: &Cochain) -> Cochain {
    let k = f.degree;
    let (n, m) = (r.source().dim(), r.target_dim());
    let l = r.source().algebra();
    Cochain::from_fn(k + 1, n, m, |x| {
        let mut out = zero_vector(m);
        for a in 0..=k {
            let rest: Vec<usize> = x.iter().enumerate().filter(|&(p, _)| p != a).map(|(_, &i)| i).collect();
            let term = r.rho()[x[a]].mul_vec(&f.at(&rest));
            let sign = if a % 2 == 0 { Rational::one() } else { -Rational::one() };
            axpy(&mut out, &sign, &term);
        }
        for a in 0..=k {
            for b in a + 1..=k {
                let rest: Vec<usize> = x
                    .iter()
                    .enumerate()
                    .filter(|&(p, _)| p != a && p != b)
                    .map(|(_, &i)| i)
                    .collect();
                let term = f.eval_first(l.basis_bracket(x[a], x[b]), &rest);
                let sign = if (a + b) % 2 == 0 { Rational::one() } else { -Rational::one() };
                axpy(&mut out, &sign, &term);
            }
        }
        out
    })
}

/// `Δ¹f = f∘δ - δ_V∘f`.
pub fn delta1(r: &Representation, f: &Cochain) -> Result<Cochain> {
    check_cochain(r, f, 1)?;
    let map = &(f.as_map() * r.source().delta()) - &(r.delta_v() * f.as_map());
    Ok(Cochain::from_map(map))
}

/// `Δ²f(x,y) = f(δx,y) + f(x,δy) - δ_V f(x,y)`.
pub fn delta2(r: &Representation, f: &Cochain) -> Result<Cochain> {
    check_cochain(r, f, 2)?;
    let (n, m) = (r.source().dim(), r.target_dim());
    let d = r.source().delta();
    Ok(Cochain::from_fn(2, n, m, |t| {
        let (i, j) = (t[0], t[1]);
        let mut out = f.eval_first(&d.column(i), &[j]);
        axpy(&mut out, &-Rational::one(), &f.eval_first(&d.column(j), &[i]));
        sub_vectors(&out, &r.delta_v().mul_vec(&f.at(&[i, j])))
    }))
}

/// `Δ²_Inv f(x,y) = f(δx,δy) - δ_V² f(x,y)`.
pub fn delta2_inv(r: &Representation, f: &Cochain) -> Result<Cochain> {
    check_cochain(r, f, 2)?;
    let (n, m) = (r.source().dim(), r.target_dim());
    let d = r.source().delta();
    let dv2 = r.delta_v() * r.delta_v();
    Ok(Cochain::from_fn(2, n, m, |t| {
        let (di, dj) = (d.column(t[0]), d.column(t[1]));
        sub_vectors(&f.eval(&[&di, &dj]), &dv2.mul_vec(&f.at(t)))
    }))
}

/// `φ¹h(x,y) = δ_V h([x,y]) + h(δ[x,y]) - ρ(δx)h(y) + ρ(δy)h(x)`.
pub fn phi1(r: &Representation, h: &Cochain) -> Result<Cochain> {
    check_cochain(r, h, 1)?;
    let (n, m) = (r.source().dim(), r.target_dim());
    let l = r.source().algebra();
    let d = r.source().delta();
    let hm = h.as_map();
    Ok(Cochain::from_fn(2, n, m, |t| {
        let (i, j) = (t[0], t[1]);
        let br = l.basis_bracket(i, j);
        let mut out = r.delta_v().mul_vec(&hm.mul_vec(br));
        axpy(&mut out, &Rational::one(), &hm.mul_vec(&d.mul_vec(br)));
        axpy(&mut out, &-Rational::one(), &r.rho_of(&d.column(i)).mul_vec(&hm.column(j)));
        axpy(&mut out, &Rational::one(), &r.rho_of(&d.column(j)).mul_vec(&hm.column(i)));
        out
    }))
}

/// An element `(f, g, h)` of the degree-2 InvDer cochains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvDerCochain2 {
    pub f: Cochain,
    pub g: Cochain,
    pub h: Cochain,
}

impl InvDerCochain2 {
    pub fn new(f: Cochain, g: Cochain, h: Cochain) -> Result<Self> {
        let ok = f.degree == 2
            && g.degree == 1
            && h.degree == 1
            && f.source_dim == g.source_dim
            && g.source_dim == h.source_dim
            && f.target_dim() == g.target_dim()
            && g.target_dim() == h.target_dim();
        if !ok {
            return Err(Error::Shape("components of a degree-2 InvDer cochain disagree".into()));
        }
        Ok(InvDerCochain2 { f, g, h })
    }

    pub fn zero(n: usize, m: usize) -> Self {
        InvDerCochain2 {
            f: Cochain::zero(2, n, m),
            g: Cochain::zero(1, n, m),
            h: Cochain::zero(1, n, m),
        }
    }

    pub fn flatten(&self) -> Vector {
        let mut v = self.f.flatten();
        v.extend(self.g.flatten());
        v.extend(self.h.flatten());
        v
    }

    pub fn unflatten(n: usize, m: usize, v: &[Rational]) -> Result<Self> {
        let fl = m * binomial(n, 2);
        if v.len() != fl + 2 * m * n {
            return Err(Error::Shape(format!("flat triple has length {}, expected {}", v.len(), fl + 2 * m * n)));
        }
        Ok(InvDerCochain2 {
            f: Cochain::unflatten(2, n, m, &v[..fl])?,
            g: Cochain::unflatten(1, n, m, &v[fl..fl + m * n])?,
            h: Cochain::unflatten(1, n, m, &v[fl + m * n..])?,
        })
    }

    pub fn add(&self, o: &Self) -> Self {
        InvDerCochain2 {
            f: self.f.add(&o.f),
            g: self.g.add(&o.g),
            h: self.h.add(&o.h),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        InvDerCochain2 {
            f: self.f.sub(&o.f),
            g: self.g.sub(&o.g),
            h: self.h.sub(&o.h),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero() && self.g.is_zero() && self.h.is_zero()
    }
}

/// An element `(a, b, c)` of the degree-3 InvDer cochains `C³ ⊕ C² ⊕ C²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvDerCochain3 {
    pub a: Cochain,
    pub b: Cochain,
    pub c: Cochain,
}

impl InvDerCochain3 {
    pub fn flatten(&self) -> Vector {
        let mut v = self.a.flatten();
        v.extend(self.b.flatten());
        v.extend(self.c.flatten());
        v
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero()
    }
}

pub fn d1(r: &Representation, f: &Cochain) -> Result<InvDerCochain2> {
    let del = delta1(r, f)?.neg();
    Ok(InvDerCochain2 {
        f: ce_differential(r, f)?,
        g: del.clone(),
        h: del,
    })
}

pub fn d2(r: &Representation, w: &InvDerCochain2) -> Result<InvDerCochain3> {
    Ok(InvDerCochain3 {
        a: ce_differential(r, &w.f)?,
        b: ce_differential(r, &w.g)?.add(&delta2(r, &w.f)?),
        c: phi1(r, &w.h)?.sub(&delta2_inv(r, &w.f)?),
    })
}

/// Which differential to assemble. `LieDer` drops the third component of
/// both `D¹` and `D²`, which is the complex of the underlying Lie algebra
/// with a derivation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ComplexMode {
    #[default]
    InvDer,
    LieDer,
}

/// Coordinate realization of `D¹` and `D²` for a fixed representation.
#[derive(Clone, Debug)]
pub struct CochainComplex<'a> {
    rep: &'a Representation,
    mode: ComplexMode,
}

impl<'a> CochainComplex<'a> {
    pub fn new(rep: &'a Representation) -> Self {
        CochainComplex {
            rep,
            mode: ComplexMode::InvDer,
        }
    }

    pub fn with_mode(rep: &'a Representation, mode: ComplexMode) -> Self {
        CochainComplex { rep, mode }
    }

    pub fn representation(&self) -> &Representation {
        self.rep
    }

    fn nm(&self) -> (usize, usize) {
        (self.rep.source().dim(), self.rep.target_dim())
    }

    /// Dimension of the degree-1 cochains, `mn`.
    pub fn c1_dim(&self) -> usize {
        let (n, m) = self.nm();
        m * n
    }

    /// `m·C(n,2) + 2mn` (or `+ mn` in LieDer mode).
    pub fn c2_dim(&self) -> usize {
        let (n, m) = self.nm();
        m * binomial(n, 2) + self.blocks() * m * n
    }

    /// `m·C(n,3) + 2m·C(n,2)` (or `+ m·C(n,2)` in LieDer mode).
    pub fn c3_dim(&self) -> usize {
        let (n, m) = self.nm();
        m * binomial(n, 3) + self.blocks() * m * binomial(n, 2)
    }

    fn blocks(&self) -> usize {
        match self.mode {
            ComplexMode::InvDer => 2,
            ComplexMode::LieDer => 1,
        }
    }

    fn truncate(&self, mut v: Vector, full_len: usize, tail: usize) -> Vector {
        if self.mode == ComplexMode::LieDer {
            v.truncate(full_len - tail);
        }
        v
    }

    fn flat_d1(&self, f: &Cochain) -> Vector {
        let (n, m) = self.nm();
        let v = d1(self.rep, f).expect("basis cochains have the right shape").flatten();
        self.truncate(v, m * binomial(n, 2) + 2 * m * n, m * n)
    }

    fn flat_d2(&self, w: &InvDerCochain2) -> Vector {
        let (n, m) = self.nm();
        let v = d2(self.rep, w).expect("basis cochains have the right shape").flatten();
        self.truncate(v, m * binomial(n, 3) + 2 * m * binomial(n, 2), m * binomial(n, 2))
    }

    /// Matrix of `D¹`, one column per flattened basis cochain.
    pub fn d1_matrix(&self) -> Matrix {
        let (n, m) = self.nm();
        let cols: Vec<Vector> = (0..self.c1_dim())
            .map(|k| {
                let mut e = zero_vector(self.c1_dim());
                e[k] = Rational::one();
                self.flat_d1(&Cochain::unflatten(1, n, m, &e).expect("basis vector"))
            })
            .collect();
        Matrix::from_columns(self.c2_dim(), &cols)
    }

    /// Matrix of `D²`, one column per flattened basis element of the
    /// degree-2 cochains.
    pub fn d2_matrix(&self) -> Matrix {
        let (n, m) = self.nm();
        let full = m * binomial(n, 2) + 2 * m * n;
        let cols: Vec<Vector> = (0..self.c2_dim())
            .map(|k| {
                let mut e = zero_vector(full);
                e[k] = Rational::one();
                self.flat_d2(&InvDerCochain2::unflatten(n, m, &e).expect("basis vector"))
            })
            .collect();
        Matrix::from_columns(self.c3_dim(), &cols)
    }
}

pub fn d1_matrix(r: &Representation) -> Matrix {
    CochainComplex::new(r).d1_matrix()
}

pub fn d2_matrix(r: &Representation) -> Matrix {
    CochainComplex::new(r).d2_matrix()
}

/// The 1-cocycles `ker D¹`.
#[derive(Clone, Debug)]
pub struct FirstCohomology {
    pub dim: usize,
    pub basis: Vec<Cochain>,
}

pub fn h1(r: &Representation) -> FirstCohomology {
    let (n, m) = (r.source().dim(), r.target_dim());
    let basis: Vec<Cochain> = kernel_basis(&d1_matrix(r))
        .into_iter()
        .map(|v| Cochain::unflatten(1, n, m, &v).expect("kernel vectors have length mn"))
        .collect();
    FirstCohomology {
        dim: basis.len(),
        basis,
    }
}

/// `Z² / B²` with canonical coset representatives.
#[derive(Clone, Debug)]
pub struct SecondCohomology {
    pub z2_dim: usize,
    pub b2_dim: usize,
    pub h2_dim: usize,
    /// Kernel basis of the `D²` matrix, flattened.
    pub z2_basis: Vec<Vector>,
    /// Independent columns of the `D¹` matrix, flattened.
    pub b2_basis: Vec<Vector>,
    /// One representative per class in a basis of `H²`, each reduced against
    /// the echelonized coboundaries.
    pub representatives: Vec<Vector>,
}

impl SecondCohomology {
    pub fn representative_triples(&self, n: usize, m: usize) -> Vec<InvDerCochain2> {
        self.representatives
            .iter()
            .map(|v| InvDerCochain2::unflatten(n, m, v).expect("representatives have the triple shape"))
            .collect()
    }
}

pub fn h2(r: &Representation) -> Result<SecondCohomology> {
    let cx = CochainComplex::new(r);
    let dm1 = cx.d1_matrix();
    let dm2 = cx.d2_matrix();
    let len = cx.c2_dim();
    let z2_basis = kernel_basis(&dm2);
    let mut b2_red = SubspaceReducer::new(&[], len);
    let mut b2_basis = Vec::new();
    for c in 0..dm1.cols() {
        let col = dm1.column(c);
        if !is_zero_vector(&dm2.mul_vec(&col)) {
            return Err(Error::Internal(format!("coboundary column {c} is not a cocycle")));
        }
        if b2_red.insert(&col) {
            b2_basis.push(col);
        }
    }
    let mut classes = b2_red.clone();
    let mut representatives = Vec::new();
    for z in &z2_basis {
        let rep = b2_red.reduce(z);
        if classes.insert(&rep) {
            representatives.push(rep);
        }
    }
    let (z2_dim, b2_dim) = (z2_basis.len(), b2_basis.len());
    if representatives.len() + b2_dim != z2_dim {
        return Err(Error::Internal("coboundaries are not contained in the cocycles".into()));
    }
    Ok(SecondCohomology {
        z2_dim,
        b2_dim,
        h2_dim: z2_dim - b2_dim,
        z2_basis,
        b2_basis,
        representatives,
    })
}

pub fn is_cocycle(r: &Representation, w: &InvDerCochain2) -> Result<bool> {
    Ok(d2(r, w)?.is_zero())
}

/// Some `f` with `D¹ f = w`, if `w` is a coboundary.
pub fn coboundary_preimage(r: &Representation, w: &InvDerCochain2) -> Option<Cochain> {
    let (n, m) = (r.source().dim(), r.target_dim());
    let x = crate::qlinalg::solve(&d1_matrix(r), &w.flatten())?;
    Some(Cochain::unflatten(1, n, m, &x).expect("solution has length mn"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{abelian_identity, heisenberg_sample};
    use crate::lie::{InvDerStructure, LieAlgebra};
    use crate::qlinalg::{rat, unit_vector};
    use crate::representation::{adjoint_rep, trivial_rep};

    #[test]
    fn combinatorics() {
        assert_eq!(combinations(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(combinations(1, 2).len(), 0);
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(sort_with_sign(&[2, 0, 1]), Some((vec![0, 1, 2], false)));
        assert_eq!(sort_with_sign(&[1, 0]), Some((vec![0, 1], true)));
        assert_eq!(sort_with_sign(&[1, 1]), None);
    }

    #[test]
    fn cochain_alternates() {
        let f = Cochain::from_fn(2, 3, 1, |t| vec![rat((t[0] * 3 + t[1]) as i64)]);
        assert_eq!(f.at(&[1, 0]), vec![rat(-1)]);
        assert_eq!(f.at(&[2, 2]), vec![rat(0)]);
        let x = vec![rat(1), rat(2), rat(0)];
        let y = vec![rat(0), rat(1), rat(1)];
        // f(x,y) = Σ_{i<j} (x_i y_j - x_j y_i) f_ij
        let expected = rat(1) * rat(1) + rat(1) * rat(2) + (rat(2) * rat(1)) * rat(5);
        assert_eq!(f.eval(&[&x, &y]), vec![expected]);
        assert_eq!(Cochain::unflatten(2, 3, 1, &f.flatten()).unwrap(), f);
    }

    #[test]
    fn ce_on_abelian_trivial_vanishes() {
        let s = abelian_identity(3);
        let r = trivial_rep(&s, 2, Matrix::identity(2)).unwrap();
        let f = Cochain::from_fn(1, 3, 2, |t| vec![rat(t[0] as i64 + 1), rat(2)]);
        assert!(ce_differential(&r, &f).unwrap().is_zero());
        let g = Cochain::from_fn(2, 3, 2, |t| vec![rat(t[1] as i64), rat(-1)]);
        assert!(ce_differential(&r, &g).unwrap().is_zero());
    }

    #[test]
    fn ce_of_identity_on_heisenberg_adjoint() {
        let r = adjoint_rep(&heisenberg_sample());
        let id = Cochain::from_map(Matrix::identity(3));
        let df = ce_differential(&r, &id).unwrap();
        assert_eq!(df.at(&[0, 1]), unit_vector(3, 2));
        assert_eq!(df.at(&[0, 2]), zero_vector(3));
        assert!(ce_differential(&r, &df).unwrap().is_zero());
        let three = Cochain::zero(3, 3, 3);
        assert_eq!(ce_differential(&r, &three), Err(Error::UnsupportedDegree(3)));
    }

    #[test]
    fn delta_operators_with_identities() {
        let s = abelian_identity(2);
        let r = trivial_rep(&s, 1, Matrix::identity(1)).unwrap();
        let f = Cochain::from_map(Matrix::from_i64(&[&[3, -4]]));
        assert!(delta1(&r, &f).unwrap().is_zero());
        let g = Cochain::from_values(2, 2, Matrix::from_i64(&[&[5]])).unwrap();
        assert_eq!(delta2(&r, &g).unwrap(), g);
        assert!(delta2_inv(&r, &g).unwrap().is_zero());
        assert!(delta2(&r, &Cochain::zero(2, 2, 1)).unwrap().is_zero());
    }

    #[test]
    fn delta2_inv_scalar_case() {
        let s = InvDerStructure::new(LieAlgebra::abelian(3), Matrix::scalar(3, rat(2))).unwrap();
        let r = trivial_rep(&s, 2, Matrix::identity(2)).unwrap();
        let f = Cochain::from_fn(2, 3, 2, |t| vec![rat(t[0] as i64 - 4), rat(7 * t[1] as i64)]);
        let expected = Cochain::from_values(2, 3, f.values().scale(&rat(3))).unwrap();
        assert_eq!(delta2_inv(&r, &f).unwrap(), expected);
    }

    #[test]
    fn phi1_examples() {
        let s = heisenberg_sample();
        let r = trivial_rep(&s, 1, Matrix::identity(1)).unwrap();
        let h = Cochain::from_map(Matrix::from_i64(&[&[0, 0, 1]]));
        let p = phi1(&r, &h).unwrap();
        assert_eq!(p.at(&[0, 1]), vec![rat(2)]);
        assert_eq!(p.at(&[0, 2]), vec![rat(0)]);
        assert!(phi1(&r, &Cochain::zero(1, 3, 1)).unwrap().is_zero());
        let a = abelian_identity(2);
        let ra = trivial_rep(&a, 1, Matrix::identity(1)).unwrap();
        assert!(phi1(&ra, &Cochain::from_map(Matrix::from_i64(&[&[1, 1]]))).unwrap().is_zero());
    }

    #[test]
    fn d2_on_abelian_identity_is_f_in_middle() {
        let s = abelian_identity(2);
        let r = trivial_rep(&s, 1, Matrix::identity(1)).unwrap();
        let f = Cochain::from_values(2, 2, Matrix::from_i64(&[&[3]])).unwrap();
        let g = Cochain::from_map(Matrix::from_i64(&[&[1, 2]]));
        let h = Cochain::from_map(Matrix::from_i64(&[&[-1, 5]]));
        let out = d2(&r, &InvDerCochain2::new(f.clone(), g, h).unwrap()).unwrap();
        assert!(out.a.is_zero());
        assert_eq!(out.b, f);
        assert!(out.c.is_zero());
    }

    #[test]
    fn matrix_shapes() {
        let s = abelian_identity(1);
        let r = trivial_rep(&s, 1, Matrix::identity(1)).unwrap();
        let m1 = d1_matrix(&r);
        assert_eq!((m1.rows(), m1.cols()), (2, 1));
        assert!(m1.is_zero());
        assert!(d2_matrix(&r).is_zero());
        let rh = adjoint_rep(&heisenberg_sample());
        let cx = CochainComplex::new(&rh);
        assert_eq!(cx.c1_dim(), 9);
        assert_eq!(cx.c2_dim(), 3 * 3 + 18);
        assert_eq!(cx.c3_dim(), 3 + 9 + 9);
        assert!((&cx.d2_matrix() * &cx.d1_matrix()).is_zero());
    }

    #[test]
    fn small_cohomology_dimensions() {
        let r1 = trivial_rep(&abelian_identity(1), 1, Matrix::identity(1)).unwrap();
        assert_eq!(h1(&r1).dim, 1);
        let c = h2(&r1).unwrap();
        assert_eq!((c.z2_dim, c.b2_dim, c.h2_dim), (2, 0, 2));
        let r2 = trivial_rep(&abelian_identity(2), 1, Matrix::identity(1)).unwrap();
        let c = h2(&r2).unwrap();
        assert_eq!((c.z2_dim, c.b2_dim, c.h2_dim), (4, 0, 4));
        for t in c.representative_triples(2, 1) {
            assert!(t.f.is_zero());
        }
    }

    #[test]
    fn operator_identities_on_sample_adjoint() {
        let r = adjoint_rep(&heisenberg_sample());
        for k in 0..9 {
            let f = Cochain::unflatten(1, 3, 3, &unit_vector(9, k)).unwrap();
            let df = ce_differential(&r, &f).unwrap();
            let inv = phi1(&r, &delta1(&r, &f).unwrap()).unwrap().add(&delta2_inv(&r, &df).unwrap());
            assert!(inv.is_zero(), "phi/Delta_Inv identity fails on basis cochain {k}");
            let lieder = delta2(&r, &df).unwrap().sub(&ce_differential(&r, &delta1(&r, &f).unwrap()).unwrap());
            assert!(lieder.is_zero(), "Delta/CE commutation fails on basis cochain {k}");
            assert!(d2(&r, &d1(&r, &f).unwrap()).unwrap().is_zero());
        }
    }

    #[test]
    fn lieder_mode_keeps_first_components() {
        // diag(1,1,2) is a derivation of h3 but not an Inv-derivation
        let s = InvDerStructure::new_unchecked(crate::fixtures::heisenberg(), Matrix::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 2]]));
        let r = adjoint_rep(&s);
        let full = CochainComplex::new(&r);
        let lieder = CochainComplex::with_mode(&r, ComplexMode::LieDer);
        let (f1, l1) = (full.d1_matrix(), lieder.d1_matrix());
        assert_eq!(l1, f1.block(0, 0, l1.rows(), l1.cols()));
        let (f2, l2) = (full.d2_matrix(), lieder.d2_matrix());
        assert_eq!(l2, f2.block(0, 0, l2.rows(), l2.cols()));
        assert!((&l2 * &l1).is_zero());
    }

    #[test]
    fn shape_errors() {
        let r = trivial_rep(&abelian_identity(2), 1, Matrix::identity(1)).unwrap();
        assert!(matches!(delta1(&r, &Cochain::zero(1, 3, 1)), Err(Error::Shape(_))));
        assert!(matches!(phi1(&r, &Cochain::zero(1, 2, 2)), Err(Error::Shape(_))));
        assert!(InvDerCochain2::new(Cochain::zero(2, 2, 1), Cochain::zero(1, 2, 2), Cochain::zero(1, 2, 1)).is_err());
    }
}
