//! Structured pass/fail reports for identity checks.

use std::fmt;

use crate::qlinalg::{format_rational, Matrix, Vector};

/// Every identity the library knows how to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Identity {
    Shape,
    Antisymmetry,
    Jacobi,
    Leibniz,
    Invertible,
    InvCondition,
    InverseLeibniz,
    CyclicAgreement,
    CyclicVanishing,
    BracketPreserved,
    DeltaIntertwined,
    RepInvertible,
    RepSquare,
    RepBracket,
    RepLeibniz,
    DeformJacobi,
    DeformLeibniz,
    DeformInv,
    CocycleJacobi,
    CocycleLeibniz,
    CocycleInv,
    CentralBlock,
    DeltaRestriction,
    ProjectionHomomorphism,
    SectionIdentity,
    ValuesInKernel,
    InjectionCommutes,
    ProjectionCommutes,
}

impl Identity {
    pub fn label(self) -> &'static str {
        use Identity::*;
        match self {
            Shape => "shape",
            Antisymmetry => "antisymmetry",
            Jacobi => "jacobi",
            Leibniz => "leibniz",
            Invertible => "invertible",
            InvCondition => "inv-condition",
            InverseLeibniz => "inverse-leibniz",
            CyclicAgreement => "cyclic-agreement",
            CyclicVanishing => "cyclic-vanishing",
            BracketPreserved => "bracket-preserved",
            DeltaIntertwined => "delta-intertwined",
            RepInvertible => "rep-invertible",
            RepSquare => "rep-square",
            RepBracket => "rep-bracket",
            RepLeibniz => "rep-leibniz",
            DeformJacobi => "deform-jacobi",
            DeformLeibniz => "deform-leibniz",
            DeformInv => "deform-inv",
            CocycleJacobi => "cocycle-jacobi",
            CocycleLeibniz => "cocycle-leibniz",
            CocycleInv => "cocycle-inv",
            CentralBlock => "central-block",
            DeltaRestriction => "delta-restriction",
            ProjectionHomomorphism => "projection-homomorphism",
            SectionIdentity => "section-identity",
            ValuesInKernel => "values-in-kernel",
            InjectionCommutes => "injection-commutes",
            ProjectionCommutes => "projection-commutes",
        }
    }

    pub fn formula(self) -> &'static str {
        use Identity::*;
        match self {
            Shape => "input shapes agree",
            Antisymmetry => "c[i][j][k] = -c[j][i][k]",
            Jacobi => "[[x,y],z] + [[y,z],x] + [[z,x],y] = 0",
            Leibniz => "d[x,y] = [dx,y] + [x,dy]",
            Invertible => "det d != 0",
            InvCondition => "[dx,dy] = d^2[x,y]",
            InverseLeibniz => "d^-1[x,y] = [d^-1 x,y] + [x,d^-1 y]",
            CyclicAgreement => "cyc [x,[y,z]_d] = cyc [dx,[y,z]]",
            CyclicVanishing => "cyc [x,[y,z]_d] = 0 and cyc [dx,[y,z]] = 0",
            BracketPreserved => "phi[x,y] = [phi x, phi y]",
            DeltaIntertwined => "phi d1 = d2 phi",
            RepInvertible => "det dV != 0",
            RepSquare => "rho(dx) dV = dV^2 rho(x)",
            RepBracket => "rho([x,y]) dV = rho(dx) rho(y) - rho(dy) rho(x)",
            RepLeibniz => "dV rho(x) = rho(dx) + rho(x) dV",
            DeformJacobi => "cyc sum_{i+j=n} mu_i(x, mu_j(y,z)) = 0",
            DeformLeibniz => "sum_{i+j=n} d_i mu_j(x,y) - mu_i(d_j x,y) - mu_i(x,d_j y) = 0",
            DeformInv => "sum_{i+j+k=n} d_i d_j mu_k(x,y) - mu_i(d_j x, d_k y) = 0",
            CocycleJacobi => "g([x,y],z) + g([y,z],x) + g([z,x],y) = 0",
            CocycleLeibniz => "chi([x,y]) + dV g(x,y) - g(dx,y) - g(x,dy) = 0",
            CocycleInv => "chi(d[x,y]) + dV chi([x,y]) + dV^2 g(x,y) - g(dx,dy) = 0",
            CentralBlock => "[V, total] = 0",
            DeltaRestriction => "total delta restricted to V equals dV",
            ProjectionHomomorphism => "projection is a homomorphism onto the base",
            SectionIdentity => "p s = id",
            ValuesInKernel => "cocycle values lie in V",
            InjectionCommutes => "xi i1 = i2",
            ProjectionCommutes => "p2 xi = p1",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Residual {
    None,
    Vector(Vector),
    Matrix(Matrix),
}

impl fmt::Display for Residual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Residual::None => Ok(()),
            Residual::Vector(v) => {
                let parts: Vec<String> = v.iter().map(format_rational).collect();
                write!(f, "({})", parts.join(", "))
            }
            Residual::Matrix(m) => {
                let rows: Vec<String> = (0..m.rows())
                    .map(|r| {
                        let parts: Vec<String> = m.row(r).iter().map(format_rational).collect();
                        format!("[{}]", parts.join(", "))
                    })
                    .collect();
                write!(f, "[{}]", rows.join(", "))
            }
        }
    }
}

/// One failed instance of an identity. Indices are 0-based basis indices.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub identity: Identity,
    /// Deformation order, for the per-order equations.
    pub order: Option<usize>,
    pub indices: Vec<usize>,
    pub residual: Residual,
}

impl Violation {
    pub fn new(identity: Identity, indices: Vec<usize>, residual: Residual) -> Self {
        Violation {
            identity,
            order: None,
            indices,
            residual,
        }
    }

    pub fn at_order(mut self, n: usize) -> Self {
        self.order = Some(n);
        self
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.identity)?;
        if let Some(n) = self.order {
            write!(f, " at order {n}")?;
        }
        if !self.indices.is_empty() {
            let idx: Vec<String> = self.indices.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, " on ({})", idx.join(","))?;
        }
        if self.residual != Residual::None {
            write!(f, ": residual {}", self.residual)?;
        }
        Ok(())
    }
}

/// The identities that were checked plus every violation found.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub checked: Vec<Identity>,
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    /// Records that `identity` was examined (idempotent).
    pub fn check(&mut self, identity: Identity) {
        if !self.checked.contains(&identity) {
            self.checked.push(identity);
        }
    }

    pub fn push(&mut self, v: Violation) {
        self.check(v.identity);
        self.violations.push(v);
    }

    pub fn merge(&mut self, other: Report) {
        for id in other.checked {
            self.check(id);
        }
        self.violations.extend(other.violations);
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// True when `identity` was checked and had no violations.
    pub fn holds(&self, identity: Identity) -> bool {
        self.checked.contains(&identity) && self.violations.iter().all(|v| v.identity != identity)
    }

    pub fn first_failure(&self) -> Option<&Violation> {
        self.violations.first()
    }

    pub fn failures_of(&self, identity: Identity) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(move |v| v.identity == identity)
    }

    pub fn into_result(self) -> Result<(), crate::Error> {
        if self.passed() {
            Ok(())
        } else {
            Err(crate::Error::Failed(self))
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for id in &self.checked {
            let status = if self.holds(*id) { "pass" } else { "FAIL" };
            writeln!(f, "{status} {id}: {}", id.formula())?;
        }
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}
