//! Lie algebras given by structure constants, derivations, Inv-derivations,
//! the twisted bracket `δ∘[-,-]` and δ-derivations.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::qlinalg::{
    axpy, is_zero_vector, kernel_basis, sub_vectors, unit_vector, zero_vector, Matrix, Rational,
    Vector,
};
use crate::report::{Identity, Report, Residual, Violation};

/// Dense structure constants `c[i][j][k]`, meaning `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
///
/// Both the `(i, j)` and `(j, i)` entries are stored; nothing here
/// symmetrizes them, so antisymmetry is something to validate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    dim: usize,
    data: Vec<Rational>,
}

impl StructureConstants {
    pub fn zeros(dim: usize) -> Self {
        StructureConstants {
            dim,
            data: vec![Rational::zero(); dim * dim * dim],
        }
    }

    /// Wraps a flat `n·n·n` array indexed as `(i·n + j)·n + k`.
    pub fn from_dense(dim: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != dim * dim * dim {
            return Err(Error::Shape(format!(
                "structure constants for dimension {dim} need {} entries, got {}",
                dim * dim * dim,
                data.len()
            )));
        }
        Ok(StructureConstants { dim, data })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.data[(i * self.dim + j) * self.dim + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, value: Rational) {
        let n = self.dim;
        self.data[(i * n + j) * n + k] = value;
    }

    /// Sets `[e_i, e_j] = v` and `[e_j, e_i] = -v`.
    pub fn set_bracket(&mut self, i: usize, j: usize, v: &[Rational]) {
        assert_eq!(v.len(), self.dim, "bracket value has the wrong length");
        for (k, x) in v.iter().enumerate() {
            self.set(i, j, k, x.clone());
            self.set(j, i, k, -x.clone());
        }
    }

    /// The vector `[e_i, e_j]`.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[Rational] {
        let start = (i * self.dim + j) * self.dim;
        &self.data[start..start + self.dim]
    }

    /// Bilinear evaluation `Σ x_i y_j c[i][j][·]`.
    pub fn eval(&self, x: &[Rational], y: &[Rational]) -> Vector {
        let mut out = zero_vector(self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                axpy(&mut out, &(xi * yj), self.basis_bracket(i, j));
            }
        }
        out
    }

    /// New constants with every bracket vector passed through `f`.
    pub fn map_brackets(&self, mut f: impl FnMut(&[Rational]) -> Vector) -> StructureConstants {
        let mut out = StructureConstants::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                for (k, x) in f(self.basis_bracket(i, j)).into_iter().enumerate() {
                    out.set(i, j, k, x);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    /// Entry-wise sum of two constant arrays of equal dimension.
    pub fn add(&self, other: &StructureConstants) -> StructureConstants {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        StructureConstants {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &StructureConstants) -> StructureConstants {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        StructureConstants {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    /// Antisymmetry violations, one per `(i, j, k)` with `i <= j`.
    pub fn antisymmetry_report(&self) -> Report {
        let n = self.dim;
        let mut report = Report::new();
        report.check(Identity::Antisymmetry);
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    let s = self.get(i, j, k) + self.get(j, i, k);
                    if !s.is_zero() {
                        report.push(Violation::new(
                            Identity::Antisymmetry,
                            vec![i, j, k],
                            Residual::Vector(vec![s]),
                        ));
                    }
                }
            }
        }
        report
    }
}

/// A finite-dimensional Lie algebra whose axioms have been checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    constants: StructureConstants,
    basis_names: Option<Vec<String>>,
}

/// Checks antisymmetry and the Jacobi identity on basis triples.
pub fn validate_lie(constants: StructureConstants) -> Result<LieAlgebra> {
    lie_report(&constants).into_result()?;
    Ok(LieAlgebra {
        constants,
        basis_names: None,
    })
}

/// Antisymmetry and Jacobi violations of a constant array.
pub fn lie_report(c: &StructureConstants) -> Report {
    let mut report = c.antisymmetry_report();
    report.merge(jacobi_report(c));
    report
}

fn jacobi_report(c: &StructureConstants) -> Report {
    let n = c.dim();
    let mut report = Report::new();
    report.check(Identity::Jacobi);
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (ei, ej, ek) = (unit_vector(n, i), unit_vector(n, j), unit_vector(n, k));
                let mut r = c.eval(c.basis_bracket(i, j), &ek);
                let t = c.eval(c.basis_bracket(j, k), &ei);
                axpy(&mut r, &Rational::one(), &t);
                let t = c.eval(c.basis_bracket(k, i), &ej);
                axpy(&mut r, &Rational::one(), &t);
                if !is_zero_vector(&r) {
                    report.push(Violation::new(Identity::Jacobi, vec![i, j, k], Residual::Vector(r)));
                }
            }
        }
    }
    report
}

impl LieAlgebra {
    /// Validates a flat `n³` constant array.
    pub fn new(dim: usize, data: Vec<Rational>) -> Result<Self> {
        validate_lie(StructureConstants::from_dense(dim, data)?)
    }

    /// Builds from the nonzero brackets `[e_i, e_j] = v` with `i < j`.
    pub fn from_brackets(dim: usize, brackets: &[(usize, usize, Vector)]) -> Result<Self> {
        let mut c = StructureConstants::zeros(dim);
        for (i, j, v) in brackets {
            if *i >= dim || *j >= dim || v.len() != dim {
                return Err(Error::Shape(format!("bracket ({i},{j}) does not fit dimension {dim}")));
            }
            c.set_bracket(*i, *j, v);
        }
        validate_lie(c)
    }

    pub fn abelian(dim: usize) -> Self {
        LieAlgebra {
            constants: StructureConstants::zeros(dim),
            basis_names: None,
        }
    }

    pub fn with_basis_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.dim() {
            return Err(Error::Shape(format!(
                "{} basis names for a {}-dimensional algebra",
                names.len(),
                self.dim()
            )));
        }
        self.basis_names = Some(names);
        Ok(self)
    }

    pub fn basis_names(&self) -> Option<&[String]> {
        self.basis_names.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.constants.dim()
    }

    pub fn constants(&self) -> &StructureConstants {
        &self.constants
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> &[Rational] {
        self.constants.basis_bracket(i, j)
    }

    /// `[x, y]` for coordinate vectors of length `dim`.
    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Result<Vector> {
        let n = self.dim();
        if x.len() != n || y.len() != n {
            return Err(Error::Shape(format!(
                "bracket arguments of length {} and {} in dimension {n}",
                x.len(),
                y.len()
            )));
        }
        Ok(self.constants.eval(x, y))
    }

    pub(crate) fn br(&self, x: &[Rational], y: &[Rational]) -> Vector {
        self.constants.eval(x, y)
    }

    /// Matrix of `y ↦ [x, y]` or, for [`AdSide::Right`], `y ↦ [y, x]`.
    pub fn ad(&self, x: &[Rational], side: AdSide) -> Result<Matrix> {
        let n = self.dim();
        if x.len() != n {
            return Err(Error::Shape(format!("ad of a length-{} vector in dimension {n}", x.len())));
        }
        let cols: Vec<Vector> = (0..n)
            .map(|j| {
                let ej = unit_vector(n, j);
                match side {
                    AdSide::Left => self.br(x, &ej),
                    AdSide::Right => self.br(&ej, x),
                }
            })
            .collect();
        Ok(Matrix::from_columns(n, &cols))
    }

    pub fn ad_basis(&self, i: usize) -> Matrix {
        self.ad(&unit_vector(self.dim(), i), AdSide::Left)
            .expect("basis vector has the right length")
    }
}

/// Which slot the fixed vector occupies in an adjoint map.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdSide {
    /// `y ↦ [x, y]`
    Left,
    /// `y ↦ [y, x]`
    Right,
}

pub fn bracket(l: &LieAlgebra, x: &[Rational], y: &[Rational]) -> Result<Vector> {
    l.bracket(x, y)
}

pub fn ad_map(l: &LieAlgebra, x: &[Rational], side: AdSide) -> Result<Matrix> {
    l.ad(x, side)
}

fn check_square(l: &LieAlgebra, d: &Matrix, what: &str) -> Result<()> {
    let n = l.dim();
    if d.rows() != n || d.cols() != n {
        return Err(Error::Shape(format!(
            "{what} is {}x{} but the algebra has dimension {n}",
            d.rows(),
            d.cols()
        )));
    }
    Ok(())
}

/// Residual of `d[e_i,e_j] - [d e_i, e_j] - [e_i, d e_j]`.
fn leibniz_residual(l: &LieAlgebra, d: &Matrix, i: usize, j: usize) -> Vector {
    let lhs = d.mul_vec(l.basis_bracket(i, j));
    let (di, dj) = (d.column(i), d.column(j));
    let n = l.dim();
    let mut rhs = l.br(&di, &unit_vector(n, j));
    let t = l.br(&unit_vector(n, i), &dj);
    axpy(&mut rhs, &Rational::one(), &t);
    sub_vectors(&lhs, &rhs)
}

/// Leibniz rule on every basis pair `i < j`.
pub fn derivation_report(l: &LieAlgebra, d: &Matrix) -> Result<Report> {
    check_square(l, d, "map")?;
    let n = l.dim();
    let mut report = Report::new();
    report.check(Identity::Leibniz);
    for i in 0..n {
        for j in i + 1..n {
            let r = leibniz_residual(l, d, i, j);
            if !is_zero_vector(&r) {
                report.push(Violation::new(Identity::Leibniz, vec![i, j], Residual::Vector(r)));
            }
        }
    }
    Ok(report)
}

pub fn is_derivation(l: &LieAlgebra, d: &Matrix) -> bool {
    derivation_report(l, d).is_ok_and(|r| r.passed())
}

/// Residual of `[d e_i, d e_j] - d²[e_i, e_j]`.
fn inv_residual(l: &LieAlgebra, d: &Matrix, d2: &Matrix, i: usize, j: usize) -> Vector {
    let lhs = l.br(&d.column(i), &d.column(j));
    sub_vectors(&lhs, &d2.mul_vec(l.basis_bracket(i, j)))
}

/// Full Inv-derivation check: Leibniz rule, invertibility, then the Inv
/// condition `[δx, δy] = δ²[x, y]`, in that order. A non-square map yields a
/// single shape violation.
pub fn check_invder(l: &LieAlgebra, d: &Matrix) -> Report {
    let mut report = match derivation_report(l, d) {
        Ok(r) => r,
        Err(e) => {
            let mut r = Report::new();
            r.push(Violation::new(Identity::Shape, vec![], Residual::None));
            debug_assert!(matches!(e, Error::Shape(_)));
            return r;
        }
    };
    report.check(Identity::Invertible);
    if !d.is_invertible() {
        report.push(Violation::new(Identity::Invertible, vec![], Residual::None));
    }
    report.check(Identity::InvCondition);
    let n = l.dim();
    let d2 = d * d;
    for i in 0..n {
        for j in i + 1..n {
            let r = inv_residual(l, d, &d2, i, j);
            if !is_zero_vector(&r) {
                report.push(Violation::new(Identity::InvCondition, vec![i, j], Residual::Vector(r)));
            }
        }
    }
    report
}

pub fn is_invder(l: &LieAlgebra, d: &Matrix) -> bool {
    check_invder(l, d).passed()
}

/// Inverts `d` and tests the Leibniz rule for the inverse.
pub fn inverse_is_derivation(l: &LieAlgebra, d: &Matrix) -> Result<bool> {
    check_square(l, d, "map")?;
    let inv = d
        .inverse()
        .ok_or_else(|| Error::Singular("the map has zero determinant".into()))?;
    Ok(derivation_report(l, &inv)?.passed())
}

/// Basis (in the kernel's canonical form) of the `n×n` matrices `D` whose
/// image under the linear `constraint` vanishes. Unknowns are the entries of
/// `D` in row-major order.
pub fn linear_maps_satisfying(n: usize, constraint: impl Fn(&Matrix) -> Vector) -> Vec<Matrix> {
    let columns: Vec<Vector> = (0..n * n)
        .map(|idx| {
            let mut e = Matrix::zeros(n, n);
            e[(idx / n, idx % n)] = Rational::one();
            constraint(&e)
        })
        .collect();
    let rows = columns.first().map_or(0, Vec::len);
    let system = Matrix::from_columns(rows, &columns);
    kernel_basis(&system)
        .into_iter()
        .map(|v| Matrix::from_fn(n, n, |r, c| v[r * n + c].clone()))
        .collect()
}

/// Basis of `Der(L)`.
pub fn derivation_space(l: &LieAlgebra) -> Vec<Matrix> {
    let n = l.dim();
    linear_maps_satisfying(n, |d| {
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                out.extend(leibniz_residual(l, d, i, j));
            }
        }
        out
    })
}

/// A Lie algebra together with an Inv-derivation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvDerStructure {
    algebra: LieAlgebra,
    delta: Matrix,
}

impl InvDerStructure {
    pub fn new(algebra: LieAlgebra, delta: Matrix) -> Result<Self> {
        check_square(&algebra, &delta, "delta")?;
        check_invder(&algebra, &delta).into_result()?;
        Ok(InvDerStructure { algebra, delta })
    }

    /// Skips every check. Used for degenerate fixtures (e.g. a singular map
    /// satisfying the Leibniz and Inv identities) where only the identities
    /// themselves matter.
    pub fn new_unchecked(algebra: LieAlgebra, delta: Matrix) -> Self {
        assert_eq!(delta.rows(), algebra.dim());
        assert_eq!(delta.cols(), algebra.dim());
        InvDerStructure { algebra, delta }
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn delta(&self) -> &Matrix {
        &self.delta
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn check(&self) -> Report {
        check_invder(&self.algebra, &self.delta)
    }
}

/// The twisted algebra `(L, δ∘[-,-])`.
pub fn twist(s: &InvDerStructure) -> Result<LieAlgebra> {
    let c = s.algebra.constants().map_brackets(|v| s.delta.mul_vec(v));
    let mut twisted = validate_lie(c).map_err(|e| Error::Internal(format!("twisted bracket is not Lie: {e}")))?;
    twisted.basis_names = s.algebra.basis_names.clone();
    Ok(twisted)
}

/// The twisted algebra paired with the same δ, which is again an Inv-derivation.
pub fn twisted_structure(s: &InvDerStructure) -> Result<InvDerStructure> {
    let twisted = twist(s)?;
    InvDerStructure::new(twisted, s.delta.clone())
        .map_err(|e| Error::Internal(format!("delta is not an Inv-derivation of the twist: {e}")))
}

/// Compares `cyc [x,[y,z]_δ]` with `cyc [δx,[y,z]]` on every basis triple and
/// checks both vanish.
pub fn check_cyclic_identity(s: &InvDerStructure) -> Report {
    let l = &s.algebra;
    let d = &s.delta;
    let n = l.dim();
    let one = Rational::one();
    let mut report = Report::new();
    report.check(Identity::CyclicAgreement);
    report.check(Identity::CyclicVanishing);
    let e: Vec<Vector> = (0..n).map(|i| unit_vector(n, i)).collect();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut lhs = zero_vector(n);
                let mut rhs = zero_vector(n);
                for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                    let twisted = d.mul_vec(l.basis_bracket(b, c));
                    axpy(&mut lhs, &one, &l.br(&e[a], &twisted));
                    axpy(&mut rhs, &one, &l.br(&d.column(a), l.basis_bracket(b, c)));
                }
                let diff = sub_vectors(&lhs, &rhs);
                if !is_zero_vector(&diff) {
                    report.push(Violation::new(
                        Identity::CyclicAgreement,
                        vec![i, j, k],
                        Residual::Vector(diff),
                    ));
                }
                if !is_zero_vector(&lhs) || !is_zero_vector(&rhs) {
                    let mut both = lhs;
                    both.extend(rhs);
                    report.push(Violation::new(
                        Identity::CyclicVanishing,
                        vec![i, j, k],
                        Residual::Vector(both),
                    ));
                }
            }
        }
    }
    report
}

fn delta_derivation_constraint(s: &InvDerStructure, dmap: &Matrix) -> Vector {
    let l = &s.algebra;
    let d = &s.delta;
    let n = l.dim();
    let d2 = d * d;
    let commute = &(dmap * d) - &(&d2 * dmap);
    let mut out: Vector = commute.entries().to_vec();
    for i in 0..n {
        for j in i + 1..n {
            let lhs = dmap.mul_vec(l.basis_bracket(i, j));
            let mut rhs = l.br(&dmap.column(i), &d.column(j));
            axpy(&mut rhs, &Rational::one(), &l.br(&d.column(i), &dmap.column(j)));
            out.extend(sub_vectors(&lhs, &rhs));
        }
    }
    out
}

/// True when `D δ = δ² D` and `D[x,y] = [Dx, δy] + [δx, Dy]`.
pub fn is_delta_derivation(s: &InvDerStructure, dmap: &Matrix) -> bool {
    dmap.rows() == s.dim() && dmap.cols() == s.dim() && is_zero_vector(&delta_derivation_constraint(s, dmap))
}

/// Basis of the δ-derivations.
pub fn delta_derivation_space(s: &InvDerStructure) -> Vec<Matrix> {
    linear_maps_satisfying(s.dim(), |dmap| delta_derivation_constraint(s, dmap))
}

/// Checks that `phi` preserves brackets and intertwines the two derivations.
pub fn is_homomorphism(s1: &InvDerStructure, s2: &InvDerStructure, phi: &Matrix) -> Result<Report> {
    let (n1, n2) = (s1.dim(), s2.dim());
    if phi.rows() != n2 || phi.cols() != n1 {
        return Err(Error::Shape(format!(
            "map is {}x{} but should be {n2}x{n1}",
            phi.rows(),
            phi.cols()
        )));
    }
    let mut report = Report::new();
    report.check(Identity::BracketPreserved);
    for i in 0..n1 {
        for j in i + 1..n1 {
            let lhs = phi.mul_vec(s1.algebra.basis_bracket(i, j));
            let rhs = s2.algebra.br(&phi.column(i), &phi.column(j));
            let r = sub_vectors(&lhs, &rhs);
            if !is_zero_vector(&r) {
                report.push(Violation::new(Identity::BracketPreserved, vec![i, j], Residual::Vector(r)));
            }
        }
    }
    report.check(Identity::DeltaIntertwined);
    let r = &(phi * &s1.delta) - &(&s2.delta * phi);
    if !r.is_zero() {
        report.push(Violation::new(Identity::DeltaIntertwined, vec![], Residual::Matrix(r)));
    }
    Ok(report)
}

/// Matrix commutator `ab - ba`.
pub fn commutator(a: &Matrix, b: &Matrix) -> Matrix {
    &(a * b) - &(b * a)
}
