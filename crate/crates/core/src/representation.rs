//! Representations `(V; ρ, δ_V)` of an InvDer Lie algebra, the adjoint and
//! trivial representations, and the semidirect product `L ⋉ V`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lie::{commutator, InvDerStructure, StructureConstants};
use crate::qlinalg::{Matrix, Rational};
use crate::report::{Identity, Report, Residual, Violation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    source: InvDerStructure,
    rho: Vec<Matrix>,
    delta_v: Matrix,
}

impl Representation {
    /// Checks shapes and that `δ_V` is invertible. The three compatibility
    /// equations are left to [`check_representation`].
    pub fn new(source: InvDerStructure, rho: Vec<Matrix>, delta_v: Matrix) -> Result<Self> {
        let r = Self::shaped(source, rho, delta_v)?;
        if !r.delta_v.is_invertible() {
            return Err(Error::Singular("delta_v has zero determinant".into()));
        }
        Ok(r)
    }

    /// Shape checks only; `δ_V` may be singular.
    pub fn new_unchecked(source: InvDerStructure, rho: Vec<Matrix>, delta_v: Matrix) -> Result<Self> {
        Self::shaped(source, rho, delta_v)
    }

    fn shaped(source: InvDerStructure, rho: Vec<Matrix>, delta_v: Matrix) -> Result<Self> {
        let n = source.dim();
        if rho.len() != n {
            return Err(Error::Shape(format!("{} action matrices for a {n}-dimensional algebra", rho.len())));
        }
        if !delta_v.is_square() {
            return Err(Error::Shape("delta_v must be square".into()));
        }
        let m = delta_v.rows();
        if let Some(i) = rho.iter().position(|a| a.rows() != m || a.cols() != m) {
            return Err(Error::Shape(format!("rho[{i}] is not {m}x{m}")));
        }
        Ok(Representation { source, rho, delta_v })
    }

    pub fn source(&self) -> &InvDerStructure {
        &self.source
    }

    pub fn target_dim(&self) -> usize {
        self.delta_v.rows()
    }

    pub fn rho(&self) -> &[Matrix] {
        &self.rho
    }

    pub fn delta_v(&self) -> &Matrix {
        &self.delta_v
    }

    /// `ρ(x) = Σ x_i ρ(e_i)`.
    pub fn rho_of(&self, x: &[Rational]) -> Matrix {
        let m = self.target_dim();
        let mut out = Matrix::zeros(m, m);
        for (xi, a) in x.iter().zip(&self.rho) {
            if !xi.is_zero() {
                out = &out + &a.scale(xi);
            }
        }
        out
    }

    /// `ρ(δ e_i)`.
    pub(crate) fn rho_delta(&self, i: usize) -> Matrix {
        self.rho_of(&self.source.delta().column(i))
    }

    pub fn is_trivial_action(&self) -> bool {
        self.rho.iter().all(Matrix::is_zero)
    }
}

/// Verifies invertibility of `δ_V` and the three compatibility equations:
/// `ρ(δx)δ_V = δ_V²ρ(x)` and `δ_V ρ(x) = ρ(δx) + ρ(x)δ_V` on basis vectors,
/// `ρ([x,y])δ_V = ρ(δx)ρ(y) - ρ(δy)ρ(x)` on basis pairs.
pub fn check_representation(r: &Representation) -> Report {
    let n = r.source.dim();
    let dv = &r.delta_v;
    let dv2 = dv * dv;
    let mut report = Report::new();
    report.check(Identity::RepInvertible);
    if !dv.is_invertible() {
        report.push(Violation::new(Identity::RepInvertible, vec![], Residual::None));
    }
    report.check(Identity::RepSquare);
    let rho_d: Vec<Matrix> = (0..n).map(|i| r.rho_delta(i)).collect();
    for (i, (rd, rho)) in rho_d.iter().zip(&r.rho).enumerate() {
        let res = &(rd * dv) - &(&dv2 * rho);
        if !res.is_zero() {
            report.push(Violation::new(Identity::RepSquare, vec![i], Residual::Matrix(res)));
        }
    }
    report.check(Identity::RepBracket);
    let l = r.source.algebra();
    for i in 0..n {
        for j in i + 1..n {
            let lhs = &r.rho_of(l.basis_bracket(i, j)) * dv;
            let rhs = &(&rho_d[i] * &r.rho[j]) - &(&rho_d[j] * &r.rho[i]);
            let res = &lhs - &rhs;
            if !res.is_zero() {
                report.push(Violation::new(Identity::RepBracket, vec![i, j], Residual::Matrix(res)));
            }
        }
    }
    report.check(Identity::RepLeibniz);
    for (i, (rd, rho)) in rho_d.iter().zip(&r.rho).enumerate() {
        let res = &(&(dv * rho) - rd) - &(rho * dv);
        if !res.is_zero() {
            report.push(Violation::new(Identity::RepLeibniz, vec![i], Residual::Matrix(res)));
        }
    }
    report
}

/// `ρ = ad`, `δ_V = δ`.
pub fn adjoint_rep(s: &InvDerStructure) -> Representation {
    let l = s.algebra();
    let rho = (0..l.dim()).map(|i| l.ad_basis(i)).collect();
    Representation {
        source: s.clone(),
        rho,
        delta_v: s.delta().clone(),
    }
}

/// `ρ = 0` on an `m`-dimensional space with the given invertible `δ_V`.
pub fn trivial_rep(s: &InvDerStructure, m: usize, delta_v: Matrix) -> Result<Representation> {
    if delta_v.rows() != m || delta_v.cols() != m {
        return Err(Error::Shape(format!("delta_v must be {m}x{m}")));
    }
    Representation::new(s.clone(), vec![Matrix::zeros(m, m); s.dim()], delta_v)
}

/// Outcome of the two `gl(V)` criteria and their direct counterparts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlCriteria {
    /// `ρ(x) δ_V ρ(y) = ρ(y) δ_V ρ(x)` for all basis pairs.
    pub der_identity: bool,
    /// `ρ(x) δ_V² ρ(y) = ρ(y) δ_V² ρ(x)` for all basis pairs.
    pub invder_identity: bool,
    /// `A ↦ δ_V A` satisfies the Leibniz rule on all pairs of generators `ρ(e_i)`.
    pub direct_der: bool,
    /// `A ↦ δ_V A` satisfies Leibniz and `δ_V²[A,B] = [δ_V A, δ_V B]` on generator pairs.
    pub direct_invder: bool,
}

impl GlCriteria {
    pub fn flags(&self) -> (bool, bool) {
        (self.der_identity, self.invder_identity)
    }
}

pub fn check_gl_derivation_criteria(r: &Representation) -> GlCriteria {
    let n = r.source.dim();
    let dv = &r.delta_v;
    let dv2 = dv * dv;
    let mut crit = GlCriteria {
        der_identity: true,
        invder_identity: true,
        direct_der: true,
        direct_invder: true,
    };
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (&r.rho[i], &r.rho[j]);
            if a * &(dv * b) != b * &(dv * a) {
                crit.der_identity = false;
            }
            if a * &(&dv2 * b) != b * &(&dv2 * a) {
                crit.invder_identity = false;
            }
            let (ok_der, ok_inv) = left_mult_identities(dv, &dv2, a, b);
            crit.direct_der &= ok_der;
            crit.direct_invder &= ok_der && ok_inv;
        }
    }
    crit
}

/// Leibniz and Inv identities of `A ↦ δ_V A` on the pair `(a, b)`.
fn left_mult_identities(dv: &Matrix, dv2: &Matrix, a: &Matrix, b: &Matrix) -> (bool, bool) {
    let ab = commutator(a, b);
    let (da, db) = (dv * a, dv * b);
    let der = dv * &ab == &commutator(&da, b) + &commutator(a, &db);
    let inv = dv2 * &ab == commutator(&da, &db);
    (der, inv)
}

/// The same two identities for `A ↦ δ_V A`, tested on every pair of
/// elementary matrices of `gl(V)` rather than on the generators only.
pub fn gl_exhaustive_criteria(delta_v: &Matrix) -> (bool, bool) {
    let m = delta_v.rows();
    let dv2 = delta_v * delta_v;
    let basis: Vec<Matrix> = (0..m * m)
        .map(|idx| {
            let mut e = Matrix::zeros(m, m);
            e[(idx / m, idx % m)] = Rational::from_integer(1.into());
            e
        })
        .collect();
    let (mut der, mut inv) = (true, true);
    for a in &basis {
        for b in &basis {
            let (d, i) = left_mult_identities(delta_v, &dv2, a, b);
            der &= d;
            inv &= d && i;
        }
    }
    (der, inv)
}

/// `L ⋉ V` with `[x+a, y+b] = [x,y] + ρ(x)b - ρ(y)a` and `δ ⊕ δ_V`. Basis
/// order: the `n` basis vectors of `L`, then the `m` of `V`.
pub fn semidirect(r: &Representation) -> Result<InvDerStructure> {
    check_representation(r).into_result()?;
    let (n, m) = (r.source.dim(), r.target_dim());
    let total = n + m;
    let l = r.source.algebra();
    let mut c = StructureConstants::zeros(total);
    for i in 0..n {
        for j in 0..n {
            for (k, x) in l.basis_bracket(i, j).iter().enumerate() {
                c.set(i, j, k, x.clone());
            }
        }
        for a in 0..m {
            for b in 0..m {
                let x = &r.rho[i][(b, a)];
                if !x.is_zero() {
                    c.set(i, n + a, n + b, x.clone());
                    c.set(n + a, i, n + b, -x.clone());
                }
            }
        }
    }
    let algebra = crate::lie::validate_lie(c)
        .map_err(|e| Error::Internal(format!("semidirect bracket is not Lie: {e}")))?;
    let delta = block_diagonal(r.source.delta(), &r.delta_v);
    InvDerStructure::new(algebra, delta)
        .map_err(|e| Error::Internal(format!("semidirect map is not an Inv-derivation: {e}")))
}

pub(crate) fn block_diagonal(a: &Matrix, b: &Matrix) -> Matrix {
    let (n, m) = (a.rows(), b.rows());
    Matrix::from_fn(n + m, n + m, |r, c| {
        if r < n && c < n {
            a[(r, c)].clone()
        } else if r >= n && c >= n {
            b[(r - n, c - n)].clone()
        } else {
            Rational::zero()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{abelian2_sample, heisenberg_sample};
    use crate::lie::{is_invder, twisted_structure};
    use crate::qlinalg::{rat, unit_vector};

    #[test]
    fn adjoint_of_sample_passes() {
        let r = adjoint_rep(&heisenberg_sample());
        let report = check_representation(&r);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn adjoint_of_twist_passes() {
        let t = twisted_structure(&heisenberg_sample()).unwrap();
        assert!(check_representation(&adjoint_rep(&t)).passed());
    }

    #[test]
    fn adjoint_of_abelian_is_zero() {
        let r = adjoint_rep(&abelian2_sample());
        assert!(r.is_trivial_action());
        assert!(check_representation(&r).passed());
    }

    #[test]
    fn trivial_reps() {
        let s = heisenberg_sample();
        assert!(check_representation(&trivial_rep(&s, 1, Matrix::identity(1)).unwrap()).passed());
        let rot = Matrix::from_i64(&[&[0, 1], &[-1, 0]]);
        assert!(check_representation(&trivial_rep(&s, 2, rot).unwrap()).passed());
        assert!(matches!(trivial_rep(&s, 1, Matrix::zeros(1, 1)), Err(Error::Singular(_))));
    }

    #[test]
    fn doubled_delta_v_breaks_square_equation() {
        let s = heisenberg_sample();
        let ad = adjoint_rep(&s);
        let r = Representation::new(s.clone(), ad.rho().to_vec(), s.delta().scale(&rat(2))).unwrap();
        let report = check_representation(&r);
        assert!(!report.holds(Identity::RepSquare));
        // ρ(δe1)·2δ - 4δ²ρ(e1) = ad(e2)·2δ - 4δ² ad(e1)
        let v = report.failures_of(Identity::RepSquare).next().unwrap();
        assert_eq!(v.indices, vec![0]);
        let expected = &(&s.algebra().ad_basis(1) * &s.delta().scale(&rat(2)))
            - &(&(s.delta() * s.delta()).scale(&rat(4)) * &s.algebra().ad_basis(0));
        assert_eq!(v.residual, Residual::Matrix(expected));
    }

    #[test]
    fn gl_criteria_on_simple_cases() {
        let s = heisenberg_sample();
        let t = trivial_rep(&s, 2, Matrix::identity(2)).unwrap();
        assert_eq!(check_gl_derivation_criteria(&t).flags(), (true, true));
        assert_eq!(check_gl_derivation_criteria(&adjoint_rep(&abelian2_sample())).flags(), (true, true));
        let ad = check_gl_derivation_criteria(&adjoint_rep(&s));
        assert_eq!(ad.der_identity, ad.direct_der);
        assert_eq!(gl_exhaustive_criteria(&Matrix::zeros(2, 2)), (true, true));
        assert!(!gl_exhaustive_criteria(&Matrix::identity(2)).0);
    }

    #[test]
    fn semidirect_with_trivial_rep_is_direct_sum() {
        let s = heisenberg_sample();
        let dv = Matrix::from_i64(&[&[0, 1], &[-1, 0]]);
        let p = semidirect(&trivial_rep(&s, 2, dv.clone()).unwrap()).unwrap();
        assert_eq!(p.dim(), 5);
        assert_eq!(p.algebra().basis_bracket(0, 1), &unit_vector(5, 2)[..]);
        for a in 3..5 {
            for b in 0..5 {
                assert!(p.algebra().basis_bracket(a, b).iter().all(Zero::is_zero));
            }
        }
        assert_eq!(p.delta(), &block_diagonal(s.delta(), &dv));
    }

    #[test]
    fn semidirect_of_sample_adjoint() {
        let p = semidirect(&adjoint_rep(&heisenberg_sample())).unwrap();
        assert_eq!(p.dim(), 6);
        assert!(is_invder(p.algebra(), p.delta()));
        // [e1, v2] = ad(e1) v2 = v3
        assert_eq!(p.algebra().basis_bracket(0, 4), &unit_vector(6, 5)[..]);
        assert!(p.algebra().basis_bracket(3, 4).iter().all(Zero::is_zero));
    }

    #[test]
    fn shape_errors() {
        let s = heisenberg_sample();
        assert!(matches!(Representation::new(s.clone(), vec![], Matrix::identity(1)), Err(Error::Shape(_))));
        assert!(matches!(
            Representation::new(s, vec![Matrix::zeros(2, 2); 3], Matrix::identity(1)),
            Err(Error::Shape(_))
        ));
    }
}
