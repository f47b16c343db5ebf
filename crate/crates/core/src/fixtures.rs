//! Standard small algebras used throughout the tests, the CLI fixtures and
//! the documentation.

use crate::lie::{InvDerStructure, LieAlgebra};
use crate::qlinalg::{rat, unit_vector, Matrix};

/// Heisenberg algebra: `[e1, e2] = e3`, all other brackets zero.
pub fn heisenberg() -> LieAlgebra {
    LieAlgebra::from_brackets(3, &[(0, 1, unit_vector(3, 2))]).expect("Heisenberg algebra is Lie")
}

/// `sl2` in the basis `(h, e, f)`: `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`.
pub fn sl2() -> LieAlgebra {
    LieAlgebra::from_brackets(
        3,
        &[
            (0, 1, vec![rat(0), rat(2), rat(0)]),
            (0, 2, vec![rat(0), rat(0), rat(-2)]),
            (1, 2, vec![rat(1), rat(0), rat(0)]),
        ],
    )
    .expect("sl2 is Lie")
}

/// `e1 ↦ e2`, `e2 ↦ -e1 + e2`, `e3 ↦ e3` (columns are images).
pub fn heisenberg_sample_delta() -> Matrix {
    Matrix::from_i64(&[&[0, -1, 0], &[1, 1, 0], &[0, 0, 1]])
}

pub fn heisenberg_sample() -> InvDerStructure {
    InvDerStructure::new(heisenberg(), heisenberg_sample_delta()).expect("sample delta is an Inv-derivation")
}

/// `e1 ↦ e2`, `e2 ↦ -e1 + e2` on the abelian plane.
pub fn abelian2_sample_delta() -> Matrix {
    Matrix::from_i64(&[&[0, -1], &[1, 1]])
}

pub fn abelian2_sample() -> InvDerStructure {
    InvDerStructure::new(LieAlgebra::abelian(2), abelian2_sample_delta()).expect("any invertible map works")
}

/// Abelian algebra with the identity map.
pub fn abelian_identity(n: usize) -> InvDerStructure {
    InvDerStructure::new(LieAlgebra::abelian(n), Matrix::identity(n)).expect("identity on an abelian algebra")
}

/// `sl2` with `δ = ad_e`. It satisfies the Leibniz rule and `[δx,δy] = δ²[x,y]`
/// but is singular; `sl2` has no invertible derivation at all. Only useful
/// where invertibility plays no role (the cochain identities).
pub fn sl2_ad_e() -> InvDerStructure {
    let s = sl2();
    let ad_e = s.ad_basis(1);
    InvDerStructure::new_unchecked(s, ad_e)
}
