#![allow(dead_code)]

pub mod oracle;

use std::path::PathBuf;

use invder::cohomology::{binomial, CochainComplex, InvDerCochain2};
use invder::fixtures::{abelian2_sample, abelian_identity, heisenberg, heisenberg_sample};
use invder::lie::LieAlgebra;
use invder::qlinalg::{kernel_basis, ratio, Matrix, Rational, Vector};
use invder::representation::Representation;
use invder::InvDerStructure;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small rationals, mostly integers in [-3, 3].
pub fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let num = rng.gen_range(-3i64..=3);
    let den = [1i64, 1, 1, 2, 3][rng.gen_range(0..5)];
    ratio(num, den)
}

pub fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vector {
    (0..n).map(|_| random_rational(rng)).collect()
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| random_rational(rng))
}

pub fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    loop {
        let m = random_matrix(rng, n, n);
        if m.is_invertible() {
            return m;
        }
    }
}

/// Abelian algebra of dimension 1..=4 with a random invertible map.
pub fn random_abelian(rng: &mut ChaCha8Rng) -> InvDerStructure {
    let n = rng.gen_range(1..=4);
    InvDerStructure::new(LieAlgebra::abelian(n), random_invertible(rng, n)).unwrap()
}

/// A random Inv-derivation of the Heisenberg algebra. Derivations have the
/// form [[a,b,0],[c,d,0],[x,y,a+d]] and the Inv condition reads
/// ad - bc = (a+d)², so c is solved from a, b, d with b != 0.
pub fn random_heisenberg(rng: &mut ChaCha8Rng) -> InvDerStructure {
    loop {
        let (a, d) = (random_rational(rng), random_rational(rng));
        let b = random_rational(rng);
        let t = &a + &d;
        if b == ratio(0, 1) || t == ratio(0, 1) {
            continue;
        }
        let c = (&a * &d - &t * &t) / &b;
        let (x, y) = (random_rational(rng), random_rational(rng));
        let z = ratio(0, 1);
        let delta = Matrix::from_rows(vec![
            vec![a, b, z.clone()],
            vec![c, d, z],
            vec![x, y, t],
        ])
        .unwrap();
        return InvDerStructure::new(heisenberg(), delta).unwrap();
    }
}

pub struct Fixture {
    pub name: &'static str,
    pub s: InvDerStructure,
}

/// The hand-picked structures every criterion runs on.
pub fn named_fixtures() -> Vec<Fixture> {
    let mut r = rng(7);
    vec![
        Fixture { name: "h3-sample", s: heisenberg_sample() },
        Fixture { name: "abelian2-sample", s: abelian2_sample() },
        Fixture { name: "abelian1-identity", s: abelian_identity(1) },
        Fixture { name: "abelian2-identity", s: abelian_identity(2) },
        Fixture { name: "abelian3-identity", s: abelian_identity(3) },
        Fixture { name: "h3-random-a", s: random_heisenberg(&mut r) },
        Fixture { name: "h3-random-b", s: random_heisenberg(&mut r) },
    ]
}

/// The 50-structure abelian corpus.
pub fn abelian_corpus() -> Vec<InvDerStructure> {
    let mut r = rng(2024);
    (0..50).map(|_| random_abelian(&mut r)).collect()
}

/// Representation with the `sl2`-derived singular `δ = ad_e`, both for the
/// adjoint action and for the given trivial space.
pub fn sl2_adjoint() -> Representation {
    let s = invder::fixtures::sl2_ad_e();
    let l = s.algebra();
    let rho = (0..3).map(|i| l.ad_basis(i)).collect();
    Representation::new_unchecked(s.clone(), rho, s.delta().clone()).unwrap()
}

/// Basis of `Z² ∩ {g = h}` for a representation, as flat vectors.
pub fn cocycles_with_equal_tails(r: &Representation) -> Vec<Vector> {
    let cx = CochainComplex::new(r);
    let d2 = cx.d2_matrix();
    let (n, m) = (r.source().dim(), r.target_dim());
    let fl = m * binomial(n, 2);
    let mn = m * n;
    let tie = Matrix::from_fn(mn, cx.c2_dim(), |row, col| {
        if col == fl + row {
            ratio(1, 1)
        } else if col == fl + mn + row {
            ratio(-1, 1)
        } else {
            ratio(0, 1)
        }
    });
    kernel_basis(&d2.vstack(&tie))
}

pub fn random_combination(rng: &mut ChaCha8Rng, basis: &[Vector], len: usize) -> Vector {
    let mut out = vec![ratio(0, 1); len];
    for b in basis {
        let c = random_rational(rng);
        invder::qlinalg::axpy(&mut out, &c, b);
    }
    out
}

pub fn triple(r: &Representation, v: &[Rational]) -> InvDerCochain2 {
    InvDerCochain2::unflatten(r.source().dim(), r.target_dim(), v).unwrap()
}

pub fn workspace_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

pub fn fixture_path(name: &str) -> String {
    workspace_root().join("fixtures").join(name).display().to_string()
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// (golden file, argv after the program name). Fixture names are resolved
/// against the fixtures directory.
pub fn golden_cases() -> Vec<(&'static str, Vec<String>)> {
    let f = fixture_path;
    let cases: Vec<(&str, Vec<String>)> = vec![
        ("validate_h3", vec!["validate".into(), f("h3.json")]),
        ("validate_sl2", vec!["validate".into(), f("sl2.json")]),
        ("validate_h3_diag", vec!["validate".into(), f("h3_diag.json")]),
        ("derivations_h3", vec!["derivations".into(), f("h3.json")]),
        ("derivations_sl2", vec!["derivations".into(), f("sl2.json")]),
        ("delta_derivations_h3", vec!["delta-derivations".into(), f("h3.json")]),
        ("twist_h3", vec!["twist".into(), f("h3.json")]),
        ("check_rep_h3_adjoint", vec!["check-rep".into(), f("h3.json"), "--rep".into(), "adjoint".into()]),
        (
            "check_rep_h3_file",
            vec!["check-rep".into(), f("h3.json"), "--rep".into(), format!("file:{}", f("h3_adjoint_rep.json"))],
        ),
        ("semidirect_h3_adjoint", vec!["semidirect".into(), f("h3.json")]),
        (
            "cohomology_abelian1_trivial",
            vec![
                "cohomology".into(),
                f("abelian1.json"),
                "--rep".into(),
                "trivial".into(),
                "--vdim".into(),
                "1".into(),
                "--degree".into(),
                "2".into(),
            ],
        ),
        (
            "cohomology_abelian2_identity_trivial",
            vec!["cohomology".into(), f("abelian2_identity.json"), "--rep".into(), "trivial".into()],
        ),
        ("cohomology_h3_trivial", vec!["cohomology".into(), f("h3.json"), "--rep".into(), "trivial".into()]),
        ("cohomology_h3_adjoint_h1", vec!["cohomology".into(), f("h3.json"), "--degree".into(), "1".into()]),
        ("deform_check_h3", vec!["deform-check".into(), f("h3.json"), "--deformation".into(), f("h3_deformation.json")]),
        (
            "deform_check_h3_bad",
            vec!["deform-check".into(), f("h3.json"), "--deformation".into(), f("invalid/h3_bad_deformation.json")],
        ),
        (
            "deform_equiv_h3",
            vec![
                "deform-equiv".into(),
                f("h3.json"),
                "--deformation".into(),
                f("h3_deformation.json"),
                "--psi".into(),
                f("psi.json"),
            ],
        ),
        ("ext_check_symplectic", vec!["ext-check".into(), f("abelian2.json"), "--cocycle".into(), f("symplectic.json")]),
        (
            "ext_check_wrong_delta_v",
            vec!["ext-check".into(), f("abelian2.json"), "--cocycle".into(), f("invalid/symplectic_wrong_delta_v.json")],
        ),
        ("ext_build_symplectic", vec!["ext-build".into(), f("abelian2.json"), "--cocycle".into(), f("symplectic.json")]),
        (
            "ext_extract_h3",
            vec!["ext-extract".into(), f("h3.json"), "--base".into(), f("abelian2.json"), "--vdim".into(), "1".into()],
        ),
        (
            "ext_extract_h3_shifted",
            vec![
                "ext-extract".into(),
                f("h3.json"),
                "--base".into(),
                f("abelian2.json"),
                "--vdim".into(),
                "1".into(),
                "--section".into(),
                f("section_shifted.json"),
            ],
        ),
        (
            "ext_classify_same",
            vec![
                "ext-classify".into(),
                f("abelian2.json"),
                "--cocycle".into(),
                f("symplectic_shifted.json"),
                "--cocycle2".into(),
                f("symplectic.json"),
            ],
        ),
        (
            "ext_classify_different",
            vec![
                "ext-classify".into(),
                f("abelian2.json"),
                "--cocycle".into(),
                f("symplectic_double.json"),
                "--cocycle2".into(),
                f("symplectic.json"),
            ],
        ),
    ];
    cases
}

/// Runs a CLI case in-process with the program name prepended.
pub fn run_cli(args: &[String]) -> invder::cli::Outcome {
    let mut argv = vec!["invder".to_string()];
    argv.extend(args.iter().cloned());
    invder::cli::run(argv)
}

/// Compares every golden case; returns the names that differ or are missing.
/// With `UPDATE_GOLDEN` set, rewrites the files instead.
pub fn golden_mismatches() -> Vec<String> {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let dir = golden_dir();
    let mut bad = Vec::new();
    for (name, args) in golden_cases() {
        let out = run_cli(&args);
        let text = format!("exit {}\n{}", out.code, out.stdout);
        let path = dir.join(format!("{name}.out"));
        if update {
            std::fs::create_dir_all(&dir).unwrap();
            std::fs::write(&path, &text).unwrap();
            continue;
        }
        match std::fs::read_to_string(&path) {
            Ok(expected) if expected == text => {}
            _ => bad.push(name.to_string()),
        }
    }
    bad
}

/// Negative corpus: (argv, expected exit code).
pub fn exit_code_cases() -> Vec<(Vec<String>, i32)> {
    let f = fixture_path;
    vec![
        (vec!["validate".into(), f("h3.json")], 0),
        (vec!["validate".into(), f("h3_diag.json")], 1),
        (vec!["validate".into(), f("invalid/not_lie.json")], 1),
        (vec!["validate".into(), f("invalid/singular_delta.json")], 1),
        (vec!["validate".into(), f("invalid/bracket_order.json")], 2),
        (vec!["validate".into(), f("invalid/index_range.json")], 2),
        (vec!["validate".into(), f("invalid/zero_denominator.json")], 2),
        (vec!["validate".into(), f("invalid/truncated.json")], 2),
        (vec!["validate".into(), f("does_not_exist.json")], 2),
        (vec!["twist".into(), f("sl2.json")], 2),
        (vec!["ext-build".into(), f("abelian2.json"), "--cocycle".into(), f("invalid/symplectic_wrong_delta_v.json")], 1),
        (vec!["deform-check".into(), f("h3.json"), "--deformation".into(), f("invalid/h3_bad_deformation.json")], 1),
        (vec!["cohomology".into(), f("h3.json"), "--degree".into(), "3".into()], 2),
        (vec!["cohomology".into(), f("h3.json"), "--rep".into(), "coadjoint".into()], 2),
        (vec!["frobnicate".into()], 2),
        (vec!["validate".into()], 2),
    ]
}
