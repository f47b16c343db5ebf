//! Truncated one-parameter formal deformations `μ_t = Σ μ_i tⁱ`,
//! `δ_t = Σ δ_i tⁱ` of an InvDer Lie algebra.
//!
//! The per-order equations checked for every `n ≤ N` are
//!
//! ```text
//! (i)   cyc Σ_{i+j=n} μ_i(x, μ_j(y,z)) = 0
//! (ii)  Σ_{i+j=n} δ_i μ_j(x,y) - μ_i(δ_j x, y) - μ_i(x, δ_j y) = 0
//! (iii) Σ_{i+j+k=n} δ_i δ_j μ_k(x,y) - μ_i(δ_j x, δ_k y) = 0
//! ```
//!
//! At order 0 they are Jacobi, Leibniz and the Inv condition of the base.

use num_traits::{One, Zero};

use crate::cohomology::{d1, d2, Cochain, InvDerCochain2};
use crate::error::{Error, Result};
use crate::lie::{InvDerStructure, StructureConstants};
use crate::qlinalg::{axpy, is_zero_vector, sub_vectors, zero_vector, Matrix, Rational, Vector};
use crate::report::{Identity, Report, Residual, Violation};
use crate::representation::adjoint_rep;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deformation {
    base: InvDerStructure,
    mu: Vec<StructureConstants>,
    delta: Vec<Matrix>,
}

impl Deformation {
    /// Builds a deformation from the higher coefficients `μ_1..μ_N`,
    /// `δ_1..δ_N`; order 0 is taken from `base`.
    pub fn new(base: InvDerStructure, mu: Vec<StructureConstants>, delta: Vec<Matrix>) -> Result<Self> {
        if mu.len() != delta.len() {
            return Err(Error::Shape(format!(
                "{} bracket coefficients but {} derivation coefficients",
                mu.len(),
                delta.len()
            )));
        }
        let n = base.dim();
        for (i, m) in mu.iter().enumerate() {
            if m.dim() != n {
                return Err(Error::Shape(format!("mu_{} has dimension {}, expected {n}", i + 1, m.dim())));
            }
            if !m.antisymmetry_report().passed() {
                return Err(Error::Invalid(format!("mu_{} is not antisymmetric", i + 1)));
            }
        }
        for (i, d) in delta.iter().enumerate() {
            if d.rows() != n || d.cols() != n {
                return Err(Error::Shape(format!("delta_{} is not {n}x{n}", i + 1)));
            }
        }
        let mut all_mu = vec![base.algebra().constants().clone()];
        all_mu.extend(mu);
        let mut all_delta = vec![base.delta().clone()];
        all_delta.extend(delta);
        Ok(Deformation {
            base,
            mu: all_mu,
            delta: all_delta,
        })
    }

    /// Builds a deformation from full coefficient lists `μ_0..μ_N`,
    /// `δ_0..δ_N`, requiring order 0 to match `base`.
    pub fn from_full(base: InvDerStructure, mut mu: Vec<StructureConstants>, mut delta: Vec<Matrix>) -> Result<Self> {
        if mu.is_empty() || delta.is_empty() {
            return Err(Error::Shape("coefficient lists must include order 0".into()));
        }
        if &mu[0] != base.algebra().constants() {
            return Err(Error::Invalid("mu_0 differs from the base bracket".into()));
        }
        if &delta[0] != base.delta() {
            return Err(Error::Invalid("delta_0 differs from the base derivation".into()));
        }
        mu.remove(0);
        delta.remove(0);
        Deformation::new(base, mu, delta)
    }

    /// All higher coefficients zero.
    pub fn trivial(base: InvDerStructure, order: usize) -> Self {
        let n = base.dim();
        Deformation::new(base, vec![StructureConstants::zeros(n); order], vec![Matrix::zeros(n, n); order])
            .expect("zero coefficients are well formed")
    }

    pub fn base(&self) -> &InvDerStructure {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.mu.len() - 1
    }

    pub fn mu(&self) -> &[StructureConstants] {
        &self.mu
    }

    pub fn delta(&self) -> &[Matrix] {
        &self.delta
    }

    /// Same data cut down to orders `0..=n`.
    pub fn truncate(&self, n: usize) -> Deformation {
        let n = n.min(self.order());
        Deformation {
            base: self.base.clone(),
            mu: self.mu[..=n].to_vec(),
            delta: self.delta[..=n].to_vec(),
        }
    }
}

fn jacobi_residual(d: &Deformation, n: usize, x: usize, y: usize, z: usize) -> Vector {
    let dim = d.base.dim();
    let mut out = zero_vector(dim);
    let one = Rational::one();
    for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
        let ea = crate::qlinalg::unit_vector(dim, a);
        for i in 0..=n {
            let inner = d.mu[n - i].basis_bracket(b, c);
            axpy(&mut out, &one, &d.mu[i].eval(&ea, inner));
        }
    }
    out
}

fn leibniz_residual(d: &Deformation, n: usize, x: usize, y: usize) -> Vector {
    let dim = d.base.dim();
    let mut out = zero_vector(dim);
    let one = Rational::one();
    let (ex, ey) = (crate::qlinalg::unit_vector(dim, x), crate::qlinalg::unit_vector(dim, y));
    for i in 0..=n {
        let j = n - i;
        let t = d.delta[i].mul_vec(d.mu[j].basis_bracket(x, y));
        axpy(&mut out, &one, &t);
        axpy(&mut out, &-one.clone(), &d.mu[i].eval(&d.delta[j].column(x), &ey));
        axpy(&mut out, &-one.clone(), &d.mu[i].eval(&ex, &d.delta[j].column(y)));
    }
    out
}

fn inv_residual(d: &Deformation, n: usize, x: usize, y: usize) -> Vector {
    let dim = d.base.dim();
    let mut out = zero_vector(dim);
    let one = Rational::one();
    for i in 0..=n {
        for j in 0..=n - i {
            let k = n - i - j;
            let t = d.delta[i].mul_vec(&d.delta[j].mul_vec(d.mu[k].basis_bracket(x, y)));
            axpy(&mut out, &one, &t);
            let s = d.mu[i].eval(&d.delta[j].column(x), &d.delta[k].column(y));
            axpy(&mut out, &-one.clone(), &s);
        }
    }
    out
}

/// Checks the three equation families at every order up to the
/// deformation's own order. Violations are sorted by order, then equation,
/// then basis indices.
pub fn check_deformation(d: &Deformation) -> Report {
    check_deformation_up_to(d, d.order())
}

/// Same as [`check_deformation`] but only for orders `0..=max_order`.
pub fn check_deformation_up_to(d: &Deformation, max_order: usize) -> Report {
    let dim = d.base.dim();
    let mut report = Report::new();
    for id in [Identity::Invertible, Identity::DeformJacobi, Identity::DeformLeibniz, Identity::DeformInv] {
        report.check(id);
    }
    if !d.delta[0].is_invertible() {
        report.push(Violation::new(Identity::Invertible, vec![], Residual::None).at_order(0));
    }
    for n in 0..=max_order.min(d.order()) {
        for x in 0..dim {
            for y in x + 1..dim {
                for z in y + 1..dim {
                    let r = jacobi_residual(d, n, x, y, z);
                    if !is_zero_vector(&r) {
                        report.push(Violation::new(Identity::DeformJacobi, vec![x, y, z], Residual::Vector(r)).at_order(n));
                    }
                }
            }
        }
        for (id, f) in [
            (Identity::DeformLeibniz, leibniz_residual as fn(&Deformation, usize, usize, usize) -> Vector),
            (Identity::DeformInv, inv_residual),
        ] {
            for x in 0..dim {
                for y in x + 1..dim {
                    let r = f(d, n, x, y);
                    if !is_zero_vector(&r) {
                        report.push(Violation::new(id, vec![x, y], Residual::Vector(r)).at_order(n));
                    }
                }
            }
        }
    }
    report
}

/// Antisymmetric bilinear map as a degree-2 cochain with values in `L`.
pub fn bracket_cochain(c: &StructureConstants) -> Cochain {
    let n = c.dim();
    Cochain::from_fn(2, n, n, |t| c.basis_bracket(t[0], t[1]).to_vec())
}

/// Inverse of [`bracket_cochain`] for cochains `∧²L → L`.
pub fn cochain_bracket(f: &Cochain) -> Result<StructureConstants> {
    let n = f.source_dim();
    if f.degree() != 2 || f.target_dim() != n {
        return Err(Error::Shape("expected a degree-2 cochain from L to L".into()));
    }
    let mut c = StructureConstants::zeros(n);
    for i in 0..n {
        for j in i + 1..n {
            c.set_bracket(i, j, &f.at(&[i, j]));
        }
    }
    Ok(c)
}

/// The order-1 data `(μ₁, δ₁, δ₁)` as a cochain over the adjoint
/// representation. Fails unless orders 0 and 1 pass, and checks that the
/// result is a cocycle.
pub fn infinitesimal(d: &Deformation) -> Result<InvDerCochain2> {
    let n = d.base.dim();
    if d.order() == 0 {
        return Ok(InvDerCochain2::zero(n, n));
    }
    check_deformation_up_to(d, 1).into_result()?;
    let w = infinitesimal_unchecked(d);
    if !d2(&adjoint_rep(&d.base), &w)?.is_zero() {
        return Err(Error::Internal("order-1 data passed its equations but is not a 2-cocycle".into()));
    }
    Ok(w)
}

/// `(μ₁, δ₁, δ₁)` without any checks.
pub fn infinitesimal_unchecked(d: &Deformation) -> InvDerCochain2 {
    let n = d.base.dim();
    if d.order() == 0 {
        return InvDerCochain2::zero(n, n);
    }
    let g = Cochain::from_map(d.delta[1].clone());
    InvDerCochain2 {
        f: bracket_cochain(&d.mu[1]),
        g: g.clone(),
        h: g,
    }
}

fn check_square(s: &InvDerStructure, psi: &Matrix) -> Result<()> {
    let n = s.dim();
    if psi.rows() != n || psi.cols() != n {
        return Err(Error::Shape(format!("psi must be {n}x{n}")));
    }
    Ok(())
}

/// The coboundary `D¹ψ₁` by which the order-1 data of two deformations
/// related through `ψ_t = id + ψ₁t` differ.
pub fn equivalence_diff(s: &InvDerStructure, psi1: &Matrix) -> Result<InvDerCochain2> {
    check_square(s, psi1)?;
    d1(&adjoint_rep(s), &Cochain::from_map(psi1.clone()))
}

/// Applies `ψ_t = id + ψ₁t` and truncates at order 1:
///
/// ```text
/// μ'_1(x,y) = μ_1(x,y) + [ψ₁x,y] + [x,ψ₁y] - ψ₁[x,y]
/// δ'_1      = δ_1 + δψ₁ - ψ₁δ
/// ```
pub fn apply_order1_equivalence(d: &Deformation, psi1: &Matrix) -> Result<Deformation> {
    let s = &d.base;
    check_square(s, psi1)?;
    if d.order() < 1 {
        return Err(Error::Invalid("an order-1 equivalence needs a deformation of order at least 1".into()));
    }
    check_deformation_up_to(d, 1).into_result()?;
    let n = s.dim();
    let l = s.algebra();
    let mut mu1 = d.mu[1].clone();
    for i in 0..n {
        for j in i + 1..n {
            let (ei, ej) = (crate::qlinalg::unit_vector(n, i), crate::qlinalg::unit_vector(n, j));
            let mut v = mu1.basis_bracket(i, j).to_vec();
            let one = Rational::one();
            axpy(&mut v, &one, &l.br(&psi1.column(i), &ej));
            axpy(&mut v, &one, &l.br(&ei, &psi1.column(j)));
            let v = sub_vectors(&v, &psi1.mul_vec(l.basis_bracket(i, j)));
            mu1.set_bracket(i, j, &v);
        }
    }
    let delta1 = &(&d.delta[1] + &(s.delta() * psi1)) - &(psi1 * s.delta());
    Deformation::new(s.clone(), vec![mu1], vec![delta1])
}

/// True when every coefficient above order 0 vanishes.
pub fn is_trivial(d: &Deformation) -> bool {
    d.mu[1..].iter().all(StructureConstants::is_zero) && d.delta[1..].iter().all(|m| m.entries().iter().all(Zero::is_zero))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{abelian_identity, heisenberg_sample};
    use crate::qlinalg::rat;

    fn abelian3_with(mu1: StructureConstants, delta1: Matrix) -> Deformation {
        Deformation::new(abelian_identity(3), vec![mu1], vec![delta1]).unwrap()
    }

    #[test]
    fn trivial_deformation_passes_every_order() {
        for n in 0..4 {
            let d = Deformation::trivial(heisenberg_sample(), n);
            assert!(check_deformation(&d).passed());
            assert!(is_trivial(&d));
            assert!(infinitesimal(&d).unwrap().is_zero());
        }
    }

    #[test]
    fn nonzero_mu1_with_identity_delta_breaks_leibniz() {
        let mut mu1 = StructureConstants::zeros(3);
        mu1.set_bracket(0, 1, &[rat(0), rat(0), rat(1)]);
        let d = abelian3_with(mu1, Matrix::zeros(3, 3));
        let rep = check_deformation(&d);
        assert!(rep.holds(Identity::DeformJacobi));
        assert!(rep.holds(Identity::DeformInv));
        let fails: Vec<_> = rep.failures_of(Identity::DeformLeibniz).collect();
        assert_eq!(fails.len(), 1);
        assert_eq!(fails[0].order, Some(1));
        assert_eq!(fails[0].indices, vec![0, 1]);
        assert_eq!(fails[0].residual, Residual::Vector(vec![rat(0), rat(0), rat(-1)]));
        assert!(matches!(infinitesimal(&d), Err(Error::Failed(_))));
    }

    #[test]
    fn arbitrary_delta1_on_abelian_identity_passes() {
        let delta1 = Matrix::from_i64(&[&[1, 2, 3], &[0, -1, 5], &[7, 0, 2]]);
        let d = abelian3_with(StructureConstants::zeros(3), delta1.clone());
        assert!(check_deformation(&d).passed());
        let w = infinitesimal(&d).unwrap();
        assert!(w.f.is_zero());
        assert_eq!(w.g.as_map(), &delta1);
        assert_eq!(w.g, w.h);
    }

    #[test]
    fn order_zero_is_the_base_axioms() {
        let base = InvDerStructure::new_unchecked(
            crate::fixtures::heisenberg(),
            Matrix::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 2]]),
        );
        let d = Deformation::trivial(base, 0);
        let rep = check_deformation(&d);
        assert!(rep.holds(Identity::DeformLeibniz));
        let inv: Vec<_> = rep.failures_of(Identity::DeformInv).collect();
        assert_eq!(inv.len(), 1);
        assert_eq!(inv[0].residual, Residual::Vector(vec![rat(0), rat(0), rat(3)]));
    }

    #[test]
    fn equivalence_diff_matches_displayed_formulas() {
        let s = heisenberg_sample();
        let psi = s.delta().clone();
        let w = equivalence_diff(&s, &psi).unwrap();
        let l = s.algebra();
        for i in 0..3 {
            for j in i + 1..3 {
                let (ei, ej) = (crate::qlinalg::unit_vector(3, i), crate::qlinalg::unit_vector(3, j));
                let mut expect = l.br(&psi.column(i), &ej);
                axpy(&mut expect, &rat(1), &l.br(&ei, &psi.column(j)));
                let expect = sub_vectors(&expect, &psi.mul_vec(l.basis_bracket(i, j)));
                assert_eq!(w.f.at(&[i, j]), expect);
            }
        }
        // ψ = δ commutes with δ
        assert!(w.g.is_zero() && w.h.is_zero());
        assert!(equivalence_diff(&s, &Matrix::zeros(3, 3)).unwrap().is_zero());
    }

    #[test]
    fn equivalence_shifts_infinitesimal_by_coboundary() {
        let s = heisenberg_sample();
        let psi = Matrix::from_i64(&[&[1, 0, 2], &[-1, 3, 0], &[0, 1, 1]]);
        let d = Deformation::trivial(s.clone(), 1);
        let d2 = apply_order1_equivalence(&d, &psi).unwrap();
        assert!(check_deformation(&d2).passed());
        let diff = infinitesimal(&d2).unwrap().sub(&infinitesimal(&d).unwrap());
        assert_eq!(diff, equivalence_diff(&s, &psi).unwrap());
        let same = apply_order1_equivalence(&d, &Matrix::zeros(3, 3)).unwrap();
        assert_eq!(same, d);
    }

    #[test]
    fn bracket_cochain_round_trip() {
        let c = heisenberg_sample().algebra().constants().clone();
        assert_eq!(cochain_bracket(&bracket_cochain(&c)).unwrap(), c);
    }

    #[test]
    fn malformed_inputs() {
        let s = heisenberg_sample();
        let mut bad = StructureConstants::zeros(3);
        bad.set(0, 1, 2, rat(1));
        assert!(matches!(
            Deformation::new(s.clone(), vec![bad], vec![Matrix::zeros(3, 3)]),
            Err(Error::Invalid(_))
        ));
        assert!(Deformation::new(s.clone(), vec![], vec![Matrix::zeros(3, 3)]).is_err());
        assert!(Deformation::from_full(s.clone(), vec![StructureConstants::zeros(3)], vec![s.delta().clone()]).is_err());
        let d = Deformation::trivial(s, 0);
        assert!(apply_order1_equivalence(&d, &Matrix::zeros(3, 3)).is_err());
    }
}
