//! The `invder` command line. [`run`] does all the work and returns what
//! should be printed, so the binary is a thin wrapper and tests can drive
//! commands in-process.
//!
//! Exit codes: 0 when every check passes, 1 for a mathematical failure
//! (the report is printed), 2 for unreadable or malformed input.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::cohomology::{d1, h1, h2, Cochain};
use crate::deformation::{apply_order1_equivalence, check_deformation_up_to};
use crate::error::{Error, Result};
use crate::extension::{
    build_extension, check_extension_cocycle, extension_isomorphism, extract_cocycle, same_class, CentralExtension,
    Section,
};
use crate::io::{
    algebra_from_file, cocycle_from_file, deformation_from_file, emit_algebra_file, emit_cocycle_file,
    emit_deformation_file, matrix_from_rows, matrix_to_rows, parse_algebra, rational_strings, read_json,
    report_json, representation_from_file, to_json, AlgebraFile, DeformationFile,
};
use crate::lie::{
    check_invder, delta_derivation_space, derivation_space, lie_report, twisted_structure, InvDerStructure,
};
use crate::qlinalg::Matrix;
use crate::report::Report;
use crate::representation::{adjoint_rep, check_representation, semidirect, trivial_rep, Representation};

#[derive(Parser, Debug)]
#[command(name = "invder", version, about = "Exact computations for Lie algebras with invertible derivations")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the Lie axioms and, when the file has a delta, the Inv-derivation axioms.
    Validate { algebra: PathBuf },
    /// Basis of the derivation algebra.
    Derivations { algebra: PathBuf },
    /// Basis of the delta-derivations.
    DeltaDerivations { algebra: PathBuf },
    /// The twisted bracket [x,y]_d = d[x,y], with the same delta.
    Twist { algebra: PathBuf },
    /// Check the representation equations.
    CheckRep {
        algebra: PathBuf,
        #[command(flatten)]
        rep: RepArgs,
    },
    /// The semidirect product with a representation.
    Semidirect {
        algebra: PathBuf,
        #[command(flatten)]
        rep: RepArgs,
    },
    /// Cocycles in degree 1, or the second cohomology.
    Cohomology {
        algebra: PathBuf,
        #[command(flatten)]
        rep: RepArgs,
        #[arg(long, default_value_t = 2)]
        degree: usize,
    },
    /// Check the order-by-order deformation equations.
    DeformCheck {
        algebra: PathBuf,
        #[arg(long)]
        deformation: PathBuf,
        /// Highest order to check (default: the file's order).
        #[arg(long)]
        order: Option<usize>,
    },
    /// Apply id + t·psi to a deformation, truncated at order 1.
    DeformEquiv {
        algebra: PathBuf,
        #[arg(long)]
        deformation: PathBuf,
        /// Matrix file for psi_1.
        #[arg(long)]
        psi: PathBuf,
    },
    /// Check the central extension cocycle equations.
    ExtCheck {
        algebra: PathBuf,
        #[arg(long)]
        cocycle: PathBuf,
    },
    /// Build the central extension of a cocycle.
    ExtBuild {
        algebra: PathBuf,
        #[arg(long)]
        cocycle: PathBuf,
    },
    /// Read a cocycle off a central extension through a section.
    ExtExtract {
        /// Algebra file of the total space, base coordinates first.
        total: PathBuf,
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        vdim: usize,
        /// Matrix file for the section (default: the canonical one).
        #[arg(long)]
        section: Option<PathBuf>,
    },
    /// Decide whether two cocycles define isomorphic extensions.
    ExtClassify {
        algebra: PathBuf,
        #[arg(long)]
        cocycle: PathBuf,
        #[arg(long)]
        cocycle2: PathBuf,
    },
}

#[derive(Args, Debug, Clone)]
pub struct RepArgs {
    /// adjoint, trivial, or file:<path>
    #[arg(long, default_value = "adjoint")]
    pub rep: String,
    /// Dimension of V for the trivial representation.
    #[arg(long, default_value_t = 1)]
    pub vdim: usize,
    /// Matrix file for delta_V of the trivial representation (default: identity).
    #[arg(long)]
    pub delta_v: Option<PathBuf>,
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Rendered {
    json: String,
    text: String,
    passed: bool,
}

impl Rendered {
    fn data<T: Serialize>(value: &T) -> Self {
        let json = to_json(value);
        Rendered {
            text: json.clone(),
            json,
            passed: true,
        }
    }

    fn report(r: &Report) -> Self {
        let verdict = if r.passed() { "all checks pass\n" } else { "some checks FAIL\n" };
        Rendered {
            json: to_json(&report_json(r)),
            text: format!("{r}{verdict}"),
            passed: r.passed(),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let format = cli.format;
    match dispatch(cli.command) {
        Ok(r) => Outcome {
            code: if r.passed { 0 } else { 1 },
            stdout: if format == Format::Json { r.json } else { r.text },
            stderr: String::new(),
        },
        Err(Error::Failed(report)) => {
            let r = Rendered::report(&report);
            Outcome {
                code: 1,
                stdout: if format == Format::Json { r.json } else { r.text },
                stderr: String::new(),
            }
        }
        Err(e) if e.is_mathematical() || matches!(e, Error::Internal(_)) => Outcome {
            code: 1,
            stdout: to_json(&serde_json::json!({ "error": e.to_string() })),
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn read_matrix(path: &Path) -> Result<Matrix> {
    let rows: Vec<Vec<String>> = read_json(path)?;
    matrix_from_rows(&rows, &path.display().to_string())
}

fn representation(s: &InvDerStructure, args: &RepArgs) -> Result<Representation> {
    match args.rep.as_str() {
        "adjoint" => Ok(adjoint_rep(s)),
        "trivial" => {
            let dv = match &args.delta_v {
                Some(p) => read_matrix(p)?,
                None => Matrix::identity(args.vdim),
            };
            if dv.rows() != args.vdim || dv.cols() != args.vdim {
                return Err(Error::Shape(format!("delta_v must be {0}x{0}", args.vdim)));
            }
            trivial_rep(s, args.vdim, dv)
        }
        other => match other.strip_prefix("file:") {
            Some(path) => representation_from_file(s, &read_json(Path::new(path))?),
            None => Err(Error::Parse(format!("unknown representation {other:?}; use adjoint, trivial or file:<path>"))),
        },
    }
}

#[derive(Serialize)]
struct MapBasis {
    dim: usize,
    basis: Vec<Vec<Vec<String>>>,
}

impl MapBasis {
    fn new(maps: &[Matrix]) -> Self {
        MapBasis {
            dim: maps.len(),
            basis: maps.iter().map(matrix_to_rows).collect(),
        }
    }
}

#[derive(Serialize)]
struct FirstCohomologyJson {
    h1_dim: usize,
    h1_basis: Vec<Vec<Vec<String>>>,
}

#[derive(Serialize)]
struct SecondCohomologyJson {
    z2_dim: usize,
    b2_dim: usize,
    h2_dim: usize,
    h2_basis: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct EquivalenceJson {
    deformation: DeformationFile,
    coboundary: Vec<String>,
}

#[derive(Serialize)]
struct ClassifyJson {
    same_class: bool,
    phi: Option<Vec<Vec<String>>>,
    xi: Option<Vec<Vec<String>>>,
}

fn dispatch(command: Command) -> Result<Rendered> {
    match command {
        Command::Validate { algebra } => {
            let file: AlgebraFile = read_json(&algebra)?;
            let constants = crate::io::constants_from_entries(file.dim, &file.brackets)?;
            let mut report = lie_report(&constants);
            if !report.passed() {
                return Ok(Rendered::report(&report));
            }
            let (l, delta) = algebra_from_file(&file)?;
            if let Some(d) = delta {
                report.merge(check_invder(&l, &d));
            }
            Ok(Rendered::report(&report))
        }
        Command::Derivations { algebra } => {
            let (l, _) = crate::io::read_algebra(&algebra)?;
            Ok(Rendered::data(&MapBasis::new(&derivation_space(&l))))
        }
        Command::DeltaDerivations { algebra } => {
            let s = parse_algebra(&algebra)?;
            Ok(Rendered::data(&MapBasis::new(&delta_derivation_space(&s))))
        }
        Command::Twist { algebra } => {
            let s = parse_algebra(&algebra)?;
            Ok(Rendered::data(&emit_algebra_file(&twisted_structure(&s)?)))
        }
        Command::CheckRep { algebra, rep } => {
            let s = parse_algebra(&algebra)?;
            let r = representation(&s, &rep)?;
            Ok(Rendered::report(&check_representation(&r)))
        }
        Command::Semidirect { algebra, rep } => {
            let s = parse_algebra(&algebra)?;
            let r = representation(&s, &rep)?;
            check_representation(&r).into_result()?;
            Ok(Rendered::data(&emit_algebra_file(&semidirect(&r)?)))
        }
        Command::Cohomology { algebra, rep, degree } => {
            let s = parse_algebra(&algebra)?;
            let r = representation(&s, &rep)?;
            check_representation(&r).into_result()?;
            match degree {
                1 => {
                    let c = h1(&r);
                    let out = FirstCohomologyJson {
                        h1_dim: c.dim,
                        h1_basis: c.basis.iter().map(|f| matrix_to_rows(f.as_map())).collect(),
                    };
                    let mut rendered = Rendered::data(&out);
                    rendered.text = format!("h1_dim: {}\n", c.dim);
                    Ok(rendered)
                }
                2 => {
                    let c = h2(&r)?;
                    let out = SecondCohomologyJson {
                        z2_dim: c.z2_dim,
                        b2_dim: c.b2_dim,
                        h2_dim: c.h2_dim,
                        h2_basis: c.representatives.iter().map(|v| rational_strings(v)).collect(),
                    };
                    let mut rendered = Rendered::data(&out);
                    rendered.text = format!("z2_dim: {}\nb2_dim: {}\nh2_dim: {}\n", c.z2_dim, c.b2_dim, c.h2_dim);
                    Ok(rendered)
                }
                other => Err(Error::UnsupportedDegree(other)),
            }
        }
        Command::DeformCheck { algebra, deformation, order } => {
            let s = parse_algebra(&algebra)?;
            let d = deformation_from_file(&s, &read_json(&deformation)?)?;
            let max = order.unwrap_or(d.order());
            if max > d.order() {
                return Err(Error::Invalid(format!("order {max} exceeds the deformation's order {}", d.order())));
            }
            Ok(Rendered::report(&check_deformation_up_to(&d, max)))
        }
        Command::DeformEquiv { algebra, deformation, psi } => {
            let s = parse_algebra(&algebra)?;
            let d = deformation_from_file(&s, &read_json(&deformation)?)?;
            let psi = read_matrix(&psi)?;
            let out = apply_order1_equivalence(&d, &psi)?;
            let cob = d1(&adjoint_rep(&s), &Cochain::from_map(psi))?;
            Ok(Rendered::data(&EquivalenceJson {
                deformation: emit_deformation_file(&out),
                coboundary: rational_strings(&cob.flatten()),
            }))
        }
        Command::ExtCheck { algebra, cocycle } => {
            let s = parse_algebra(&algebra)?;
            let e = cocycle_from_file(s.dim(), &read_json(&cocycle)?)?;
            Ok(Rendered::report(&check_extension_cocycle(&s, &e)?))
        }
        Command::ExtBuild { algebra, cocycle } => {
            let s = parse_algebra(&algebra)?;
            let e = cocycle_from_file(s.dim(), &read_json(&cocycle)?)?;
            Ok(Rendered::data(&emit_algebra_file(build_extension(&s, &e)?.total())))
        }
        Command::ExtExtract { total, base, vdim, section } => {
            let t = parse_algebra(&total)?;
            let b = parse_algebra(&base)?;
            let n = b.dim();
            if t.dim() != n + vdim {
                return Err(Error::Shape(format!("total dimension {} is not {n} + {vdim}", t.dim())));
            }
            let dv = t.delta().block(n, n, vdim, vdim);
            let ext = CentralExtension::new(t, b, dv)?;
            let sec = match section {
                Some(p) => Section::new(&ext, read_matrix(&p)?)?,
                None => Section::canonical(&ext),
            };
            Ok(Rendered::data(&emit_cocycle_file(&extract_cocycle(&ext, &sec)?)))
        }
        Command::ExtClassify { algebra, cocycle, cocycle2 } => {
            let s = parse_algebra(&algebra)?;
            let e1 = cocycle_from_file(s.dim(), &read_json(&cocycle)?)?;
            let e2 = cocycle_from_file(s.dim(), &read_json(&cocycle2)?)?;
            for e in [&e1, &e2] {
                check_extension_cocycle(&s, e)?.into_result()?;
            }
            let out = match same_class(&s, &e1, &e2)? {
                Some(phi) => {
                    let xi = extension_isomorphism(&s, &e1, &e2, &phi)?;
                    ClassifyJson {
                        same_class: true,
                        phi: Some(matrix_to_rows(&phi)),
                        xi: Some(matrix_to_rows(&xi)),
                    }
                }
                None => ClassifyJson {
                    same_class: false,
                    phi: None,
                    xi: None,
                },
            };
            Ok(Rendered::data(&out))
        }
    }
}
