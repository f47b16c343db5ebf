//! Central extensions `0 → V → L̂ → L → 0` of an InvDer Lie algebra by an
//! abelian one `(V, δ_V)`.
//!
//! The total space is `L ⊕ V` with the `L` coordinates first. A pair
//! `(γ, χ)` with `γ: ∧²L → V` and `χ: L → V` gives
//!
//! ```text
//! [x+u, y+v] = [x,y] + γ(x,y)
//! δ̂(x+u)     = δx + χ(x) + δ_V u
//! ```
//!
//! and is an InvDer structure exactly when `(γ, χ, χ)` is a 2-cocycle for the
//! trivial representation on `V`.

use num_traits::One;

use crate::cohomology::{d1_matrix, d2, Cochain, InvDerCochain2};
use crate::error::{Error, Result};
use crate::lie::{is_homomorphism, InvDerStructure, LieAlgebra, StructureConstants};
use crate::qlinalg::{axpy, is_zero_vector, solve, sub_vectors, unit_vector, Matrix, Rational, Vector};
use crate::report::{Identity, Report, Residual, Violation};
use crate::representation::{block_diagonal, trivial_rep};

/// The data `(γ, χ)` together with `δ_V` on `V = Q^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionCocycle {
    gamma: Cochain,
    chi: Cochain,
    delta_v: Matrix,
}

impl ExtensionCocycle {
    pub fn new(gamma: Cochain, chi: Cochain, delta_v: Matrix) -> Result<Self> {
        let m = delta_v.rows();
        let ok = gamma.degree() == 2
            && chi.degree() == 1
            && delta_v.is_square()
            && gamma.target_dim() == m
            && chi.target_dim() == m
            && gamma.source_dim() == chi.source_dim();
        if !ok {
            return Err(Error::Shape("gamma, chi and delta_v disagree on dimensions".into()));
        }
        Ok(ExtensionCocycle { gamma, chi, delta_v })
    }

    /// `γ = 0`, `χ = 0`.
    pub fn zero(n: usize, delta_v: Matrix) -> Self {
        let m = delta_v.rows();
        ExtensionCocycle {
            gamma: Cochain::zero(2, n, m),
            chi: Cochain::zero(1, n, m),
            delta_v,
        }
    }

    pub fn gamma(&self) -> &Cochain {
        &self.gamma
    }

    pub fn chi(&self) -> &Cochain {
        &self.chi
    }

    pub fn delta_v(&self) -> &Matrix {
        &self.delta_v
    }

    pub fn v_dim(&self) -> usize {
        self.delta_v.rows()
    }

    pub fn base_dim(&self) -> usize {
        self.chi.source_dim()
    }

    /// `(γ, χ, χ)` as a degree-2 InvDer cochain.
    pub fn as_triple(&self) -> InvDerCochain2 {
        InvDerCochain2 {
            f: self.gamma.clone(),
            g: self.chi.clone(),
            h: self.chi.clone(),
        }
    }

    /// `(γ + ∂Φ, χ - Δ¹Φ)` for the trivial action, i.e. adds `D¹Φ`.
    pub fn shifted_by(&self, s: &InvDerStructure, phi: &Matrix) -> Result<ExtensionCocycle> {
        let r = trivial_rep(s, self.v_dim(), self.delta_v.clone())?;
        let d = crate::cohomology::d1(&r, &Cochain::from_map(phi.clone()))?;
        Ok(ExtensionCocycle {
            gamma: self.gamma.add(&d.f),
            chi: self.chi.add(&d.g),
            delta_v: self.delta_v.clone(),
        })
    }
}

fn check_shapes(s: &InvDerStructure, e: &ExtensionCocycle) -> Result<()> {
    if e.base_dim() != s.dim() {
        return Err(Error::Shape(format!(
            "cocycle is defined on dimension {}, base has dimension {}",
            e.base_dim(),
            s.dim()
        )));
    }
    if !e.delta_v.is_invertible() {
        return Err(Error::Singular("delta_v is not invertible".into()));
    }
    Ok(())
}

/// Checks the three cocycle equations
///
/// ```text
/// γ([x,y],z) + γ([y,z],x) + γ([z,x],y) = 0
/// χ([x,y]) + δ_V γ(x,y) - γ(δx,y) - γ(x,δy) = 0
/// χ(δ[x,y]) + δ_V χ([x,y]) + δ_V² γ(x,y) - γ(δx,δy) = 0
/// ```
///
/// directly, and separately tests `D²(γ, χ, χ) = 0` for the trivial
/// representation. The two verdicts must agree.
pub fn check_extension_cocycle(s: &InvDerStructure, e: &ExtensionCocycle) -> Result<Report> {
    check_shapes(s, e)?;
    let report = cocycle_equations(s, e);
    let r = trivial_rep(s, e.v_dim(), e.delta_v.clone())?;
    let in_z2 = d2(&r, &e.as_triple())?.is_zero();
    if in_z2 != report.passed() {
        return Err(Error::Internal(format!(
            "cocycle equations say {}, cocycle space membership says {}",
            report.passed(),
            in_z2
        )));
    }
    Ok(report)
}

pub fn is_extension_cocycle(s: &InvDerStructure, e: &ExtensionCocycle) -> Result<bool> {
    Ok(check_extension_cocycle(s, e)?.passed())
}

fn cocycle_equations(s: &InvDerStructure, e: &ExtensionCocycle) -> Report {
    let n = s.dim();
    let l = s.algebra();
    let d = s.delta();
    let dv = &e.delta_v;
    let dv2 = dv * dv;
    let chi = e.chi.as_map();
    let g = &e.gamma;
    let one = Rational::one();
    let mut report = Report::new();
    for id in [Identity::CocycleJacobi, Identity::CocycleLeibniz, Identity::CocycleInv] {
        report.check(id);
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let mut r = g.eval_first(l.basis_bracket(i, j), &[k]);
                axpy(&mut r, &one, &g.eval_first(l.basis_bracket(j, k), &[i]));
                axpy(&mut r, &one, &g.eval_first(l.basis_bracket(k, i), &[j]));
                if !is_zero_vector(&r) {
                    report.push(Violation::new(Identity::CocycleJacobi, vec![i, j, k], Residual::Vector(r)));
                }
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let br = l.basis_bracket(i, j);
            let (di, dj) = (d.column(i), d.column(j));
            let (ei, ej) = (unit_vector(n, i), unit_vector(n, j));
            let gij = g.at(&[i, j]);
            let mut r = chi.mul_vec(br);
            axpy(&mut r, &one, &dv.mul_vec(&gij));
            axpy(&mut r, &-one.clone(), &g.eval(&[&di, &ej]));
            axpy(&mut r, &-one.clone(), &g.eval(&[&ei, &dj]));
            if !is_zero_vector(&r) {
                report.push(Violation::new(Identity::CocycleLeibniz, vec![i, j], Residual::Vector(r)));
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let br = l.basis_bracket(i, j);
            let (di, dj) = (d.column(i), d.column(j));
            let mut r = chi.mul_vec(&d.mul_vec(br));
            axpy(&mut r, &one, &dv.mul_vec(&chi.mul_vec(br)));
            axpy(&mut r, &one, &dv2.mul_vec(&g.at(&[i, j])));
            axpy(&mut r, &-one.clone(), &g.eval(&[&di, &dj]));
            if !is_zero_vector(&r) {
                report.push(Violation::new(Identity::CocycleInv, vec![i, j], Residual::Vector(r)));
            }
        }
    }
    report
}

/// An InvDer structure on `L ⊕ V` extending a base by a central `V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralExtension {
    total: InvDerStructure,
    base: InvDerStructure,
    delta_v: Matrix,
}

impl CentralExtension {
    /// Validates `total` as a central extension of `base` by `(Q^m, δ_V)`
    /// with the block layout `L ⊕ V`.
    pub fn new(total: InvDerStructure, base: InvDerStructure, delta_v: Matrix) -> Result<Self> {
        let (n, m) = (base.dim(), delta_v.rows());
        if total.dim() != n + m || !delta_v.is_square() {
            return Err(Error::Shape(format!(
                "total dimension {} is not {n} + {m}",
                total.dim()
            )));
        }
        let ext = CentralExtension { total, base, delta_v };
        ext.check()?.into_result()?;
        Ok(ext)
    }

    pub fn total(&self) -> &InvDerStructure {
        &self.total
    }

    pub fn base(&self) -> &InvDerStructure {
        &self.base
    }

    pub fn delta_v(&self) -> &Matrix {
        &self.delta_v
    }

    pub fn base_dim(&self) -> usize {
        self.base.dim()
    }

    pub fn v_dim(&self) -> usize {
        self.delta_v.rows()
    }

    /// `i: V → L ⊕ V`, an `(n+m) × m` matrix.
    pub fn injection(&self) -> Matrix {
        let (n, m) = (self.base_dim(), self.v_dim());
        Matrix::zeros(n, m).vstack(&Matrix::identity(m))
    }

    /// `p: L ⊕ V → L`, an `n × (n+m)` matrix.
    pub fn projection(&self) -> Matrix {
        let (n, m) = (self.base_dim(), self.v_dim());
        Matrix::identity(n).hstack(&Matrix::zeros(n, m))
    }

    /// Centrality of `V`, `δ̂|_V = δ_V`, and `p` being a homomorphism.
    pub fn check(&self) -> Result<Report> {
        let (n, m) = (self.base_dim(), self.v_dim());
        let mut report = self.total.check();
        report.check(Identity::CentralBlock);
        for a in n..n + m {
            for k in 0..n + m {
                let v = self.total.algebra().basis_bracket(a, k);
                if !is_zero_vector(v) {
                    report.push(Violation::new(Identity::CentralBlock, vec![a, k], Residual::Vector(v.to_vec())));
                }
            }
        }
        report.check(Identity::DeltaRestriction);
        let restricted = &(self.total.delta() * &self.injection()) - &(&self.injection() * &self.delta_v);
        if !restricted.is_zero() {
            report.push(Violation::new(Identity::DeltaRestriction, vec![], Residual::Matrix(restricted)));
        }
        report.check(Identity::ProjectionHomomorphism);
        let hom = is_homomorphism(&self.total, &self.base, &self.projection())?;
        if !hom.passed() {
            report.push(Violation::new(Identity::ProjectionHomomorphism, vec![], Residual::None));
            report.merge(hom);
        }
        Ok(report)
    }
}

/// Builds `L ⊕ V` with bracket `[x,y] + γ(x,y)` and `δ̂ = δ + χ + δ_V`.
pub fn build_extension(s: &InvDerStructure, e: &ExtensionCocycle) -> Result<CentralExtension> {
    check_extension_cocycle(s, e)?.into_result()?;
    let (n, m) = (s.dim(), e.v_dim());
    let mut c = StructureConstants::zeros(n + m);
    for i in 0..n {
        for j in i + 1..n {
            let mut v = s.algebra().basis_bracket(i, j).to_vec();
            v.extend(e.gamma.at(&[i, j]));
            c.set_bracket(i, j, &v);
        }
    }
    let mut delta = block_diagonal(s.delta(), &e.delta_v);
    for j in 0..n {
        for a in 0..m {
            delta[(n + a, j)] = e.chi.as_map()[(a, j)].clone();
        }
    }
    let mut algebra = LieAlgebra::new(n + m, c.entries().to_vec())
        .map_err(|err| Error::Internal(format!("extension bracket is not a Lie algebra: {err}")))?;
    if let Some(names) = s.algebra().basis_names() {
        let mut names = names.to_vec();
        names.extend((1..=m).map(|a| format!("v{a}")));
        algebra = algebra.with_basis_names(names)?;
    }
    let total = InvDerStructure::new(algebra, delta)
        .map_err(|err| Error::Internal(format!("extension derivation is not an Inv-derivation: {err}")))?;
    CentralExtension::new(total, s.clone(), e.delta_v.clone())
        .map_err(|err| Error::Internal(format!("built extension fails its own checks: {err}")))
}

/// A right inverse `s` of the projection, as an `(n+m) × n` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    matrix: Matrix,
}

impl Section {
    pub fn new(ext: &CentralExtension, matrix: Matrix) -> Result<Self> {
        let (n, m) = (ext.base_dim(), ext.v_dim());
        if matrix.rows() != n + m || matrix.cols() != n {
            return Err(Error::Shape(format!("a section must be {}x{n}", n + m)));
        }
        let ps = &ext.projection() * &matrix;
        if ps != Matrix::identity(n) {
            let mut report = Report::new();
            report.push(Violation::new(
                Identity::SectionIdentity,
                vec![],
                Residual::Matrix(&ps - &Matrix::identity(n)),
            ));
            return Err(Error::Failed(report));
        }
        Ok(Section { matrix })
    }

    /// `s(x) = x + 0`.
    pub fn canonical(ext: &CentralExtension) -> Self {
        let (n, m) = (ext.base_dim(), ext.v_dim());
        Section {
            matrix: Matrix::identity(n).vstack(&Matrix::zeros(m, n)),
        }
    }

    /// `s(x) = x + Φ(x)` for `Φ: L → V`.
    pub fn shifted(ext: &CentralExtension, phi: &Matrix) -> Result<Self> {
        let n = ext.base_dim();
        Section::new(ext, Matrix::identity(n).vstack(phi))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }
}

fn v_part(n: usize, w: Vector, report: &mut Report, indices: Vec<usize>) -> Vector {
    if !is_zero_vector(&w[..n]) {
        report.push(Violation::new(Identity::ValuesInKernel, indices, Residual::Vector(w.clone())));
    }
    w[n..].to_vec()
}

/// `γ(x,y) = [s x, s y] - s[x,y]` and `χ(x) = δ̂ s x - s δ x`.
pub fn extract_cocycle(ext: &CentralExtension, s: &Section) -> Result<ExtensionCocycle> {
    let (n, m) = (ext.base_dim(), ext.v_dim());
    let sm = &s.matrix;
    if sm.rows() != n + m || sm.cols() != n {
        return Err(Error::Shape("section does not match the extension".into()));
    }
    let total = ext.total.algebra();
    let base = ext.base.algebra();
    let mut report = Report::new();
    report.check(Identity::ValuesInKernel);
    let mut gamma_cols = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let w = sub_vectors(&total.br(&sm.column(i), &sm.column(j)), &sm.mul_vec(base.basis_bracket(i, j)));
            gamma_cols.push(v_part(n, w, &mut report, vec![i, j]));
        }
    }
    let chi_map = &(ext.total.delta() * sm) - &(sm * ext.base.delta());
    let mut chi_cols = Vec::new();
    for j in 0..n {
        chi_cols.push(v_part(n, chi_map.column(j), &mut report, vec![j]));
    }
    report.into_result()?;
    let gamma = Cochain::from_values(2, n, Matrix::from_columns(m, &gamma_cols))?;
    let chi = Cochain::from_map(Matrix::from_columns(m, &chi_cols));
    let e = ExtensionCocycle::new(gamma, chi, ext.delta_v.clone())?;
    if !check_extension_cocycle(&ext.base, &e)?.passed() {
        return Err(Error::Internal("extracted data is not a cocycle".into()));
    }
    Ok(e)
}

/// Some `Φ: L → V` with `(γ₁,χ₁,χ₁) = (γ₂,χ₂,χ₂) + D¹Φ`, if the two cocycles
/// are cohomologous.
pub fn same_class(s: &InvDerStructure, e1: &ExtensionCocycle, e2: &ExtensionCocycle) -> Result<Option<Matrix>> {
    if e1.delta_v != e2.delta_v {
        return Err(Error::Invalid("the two cocycles use different (V, delta_v)".into()));
    }
    check_shapes(s, e1)?;
    check_shapes(s, e2)?;
    let (n, m) = (s.dim(), e1.v_dim());
    let r = trivial_rep(s, m, e1.delta_v.clone())?;
    let rhs = e1.as_triple().sub(&e2.as_triple()).flatten();
    Ok(solve(&d1_matrix(&r), &rhs).map(|x| {
        Cochain::unflatten(1, n, m, &x)
            .expect("solution has length mn")
            .as_map()
            .clone()
    }))
}

/// `ξ(x+u) = x + Φ(x) + u` from the extension built on `e1` to the one built
/// on `e2`. Fails with the violated identities unless `ξ` is an InvDer
/// homomorphism with `ξ∘i₁ = i₂` and `p₂∘ξ = p₁`.
pub fn extension_isomorphism(
    s: &InvDerStructure,
    e1: &ExtensionCocycle,
    e2: &ExtensionCocycle,
    phi: &Matrix,
) -> Result<Matrix> {
    let (n, m) = (s.dim(), e1.v_dim());
    if phi.rows() != m || phi.cols() != n {
        return Err(Error::Shape(format!("phi must be {m}x{n}")));
    }
    let x1 = build_extension(s, e1)?;
    let x2 = build_extension(s, e2)?;
    let xi = Matrix::identity(n)
        .hstack(&Matrix::zeros(n, m))
        .vstack(&phi.hstack(&Matrix::identity(m)));
    let mut report = is_homomorphism(x1.total(), x2.total(), &xi)?;
    report.check(Identity::InjectionCommutes);
    let inj = &(&xi * &x1.injection()) - &x2.injection();
    if !inj.is_zero() {
        report.push(Violation::new(Identity::InjectionCommutes, vec![], Residual::Matrix(inj)));
    }
    report.check(Identity::ProjectionCommutes);
    let proj = &(&x2.projection() * &xi) - &x1.projection();
    if !proj.is_zero() {
        report.push(Violation::new(Identity::ProjectionCommutes, vec![], Residual::Matrix(proj)));
    }
    report.into_result()?;
    Ok(xi)
}

/// The cocycle with `γ(e_1, e_2) = 1` on a two-dimensional base, `V = Q`.
pub fn symplectic_cocycle(delta_v: Rational) -> ExtensionCocycle {
    let gamma = Cochain::from_values(2, 2, Matrix::from_i64(&[&[1]])).expect("one pair");
    ExtensionCocycle {
        gamma,
        chi: Cochain::zero(1, 2, 1),
        delta_v: Matrix::scalar(1, delta_v),
    }
}
