//! Command-line surface: every computation behind a subcommand with
//! deterministic output, a `--json` mode with a stable schema, and the exit
//! code convention 0 = success, 1 = contract/usage error, 2 = data required,
//! 3 = verification failure.

use crate::error::{Error, Result};
use crate::gralg::{PolyF2, DEFAULT_CAP};
use crate::gysin::{delta, GysinDatum};
use crate::primitive::{builtin_mu_odd_capped, TwistStructure};
use crate::quadbundle::{degeneration_boundary, model_triple, LocalTriple, Scalar};
use crate::rings::{
    self, load_even_presentation_capped, verify_even_datum, EvenGODatum,
};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use std::path::{Path, PathBuf};

/// Environment variable naming the default data directory for presentation
/// files.
pub const DATA_DIR_ENV: &str = "CHARCLASS_DATA";

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(
    name = "charclass",
    version,
    about = "Mod-2 characteristic classes of quadric bundles: rings, primitives, \
             Gysin boundaries, and degenerating forms over k[t]"
)]
pub struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print a ring presentation, its Poincare series, or a degree basis.
    Ring {
        /// Ring family: BO, BGL, BGm, BSO, or BGO.
        family: String,
        /// Rank parameter.
        n: usize,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        max_degree: usize,
        /// Print dim H^0 .. dim H^max-degree.
        #[arg(long)]
        poincare: bool,
        /// Print the monomial basis of one degree.
        #[arg(long)]
        basis: Option<usize>,
        /// Presentation file (required for even-rank BGO).
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Print a basis of the primitive classes in one degree.
    Primitive {
        /// Ring family; only BGO carries a twist structure.
        family: String,
        n: usize,
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        max_degree: usize,
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Apply the degeneration map to a primitive class of rank n.
    Delta {
        n: usize,
        /// The class, in the polynomial expression grammar.
        #[arg(long)]
        alpha: String,
        /// Gysin datum of the rank n-1 pair (presentation file for even
        /// targets; odd targets are built in when omitted).
        #[arg(long)]
        target_file: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        max_degree: usize,
    },
    /// Verify an even-rank presentation file against the exactness oracle.
    Verify {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        max_degree: usize,
    },
    /// Concrete calculus on symmetric matrices over k[t].
    Quad {
        #[command(subcommand)]
        op: QuadOp,
    },
}

#[derive(Args, Debug)]
pub struct TripleArg {
    /// Triple file: {"field":"Q"|"Fp","p":...,"n":...,"entries":[[...]]}.
    #[arg(long)]
    pub triple: PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum QuadOp {
    /// Generic and special ranks, and the mildness diagnosis.
    Profile(TripleArg),
    /// Degeneration multiplicity (t-adic valuation of the discriminant).
    Mult(TripleArg),
    /// Associated nondegenerate triple of the special fiber.
    Reduce(TripleArg),
    /// Build the standard model diag(t) (+) q from a constant matrix q.
    Model(TripleArg),
    /// Evaluate the boundary formula on a family.
    Boundary {
        #[command(flatten)]
        triple: TripleArg,
        /// Primitive class of rank n, in the expression grammar.
        #[arg(long)]
        alpha: String,
        /// Gysin datum of the rank n-1 pair.
        #[arg(long)]
        target_file: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        max_degree: usize,
    },
}

/// Structured result of one invocation.
#[derive(Debug, Serialize)]
pub struct CommandResult {
    pub exit_code: i32,
    pub payload: Payload,
}

#[derive(Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Ring(RingReport),
    Primitive(PrimitiveReport),
    Delta(DeltaReport),
    Verify(VerifyPayload),
    QuadProfile(ProfileReport),
    QuadMult(MultReport),
    QuadReduce(ReduceReport),
    QuadModel(ModelReport),
    QuadBoundary(BoundaryReport),
}

#[derive(Debug, Serialize)]
pub struct RingReport {
    pub basis: Option<Vec<String>>,
    pub basis_degree: Option<usize>,
    pub generators: Vec<(String, usize)>,
    pub poincare: Option<Vec<usize>>,
    pub ring: String,
}

#[derive(Debug, Serialize)]
pub struct PrimitiveReport {
    pub basis: Vec<String>,
    pub degree: usize,
    pub ring: String,
}

#[derive(Debug, Serialize)]
pub struct DeltaReport {
    pub alpha: String,
    pub delta: String,
    pub source_rank: usize,
    pub target_rank: usize,
}

#[derive(Debug, Serialize)]
pub struct VerifyPayload {
    pub checked_to: usize,
    pub clean: bool,
    pub failures: Vec<String>,
    pub file: String,
}

#[derive(Debug, Serialize)]
pub struct ProfileReport {
    pub diagnosis: String,
    pub generic_rank: usize,
    pub mild: bool,
    pub n: usize,
    pub special_rank: usize,
}

#[derive(Debug, Serialize)]
pub struct MultReport {
    pub discriminant: String,
    pub multiplicity: usize,
}

#[derive(Debug, Serialize)]
pub struct ReduceReport {
    pub diag: Vec<String>,
    pub discriminant: String,
    pub rank: usize,
    pub square_class: String,
}

#[derive(Debug, Serialize)]
pub struct ModelReport {
    pub multiplicity: usize,
    pub triple: serde_json::Value,
}

#[derive(Debug, Serialize)]
pub struct BoundaryReport {
    pub boundary_class: String,
    pub delta_class: String,
    pub multiplicity: usize,
    pub parity: u8,
    pub reduced_diag: Vec<String>,
    pub reduced_rank: usize,
    pub reduced_square_class: String,
}

/// Resolve a data path: as given if it exists or is absolute, otherwise
/// relative to the directory named by `CHARCLASS_DATA`.
pub fn resolve_data_path(path: &Path) -> PathBuf {
    if path.is_absolute() || path.exists() {
        return path.to_path_buf();
    }
    if let Ok(dir) = std::env::var(DATA_DIR_ENV) {
        let candidate = PathBuf::from(dir).join(path);
        if candidate.exists() {
            return candidate;
        }
    }
    path.to_path_buf()
}

fn load_even(path: &Path, cap: usize) -> Result<EvenGODatum> {
    load_even_presentation_capped(&resolve_data_path(path), cap)
}

fn even_file_required(n: usize) -> Error {
    Error::DataRequired(format!(
        "rank {n} is even: supply a presentation file (--file / --target-file), \
         JSON with fields family=\"BGO_even\", n, generators, relations, res, mu, \
         d_table, provenance"
    ))
}

fn ring_for(
    family: &str,
    n: usize,
    cap: usize,
    file: Option<&Path>,
) -> Result<crate::gralg::GradedAlgebraPresentation> {
    let id = rings::RingId::parse(family, n)?;
    match id.family {
        rings::RingFamily::BO => rings::bo_capped(id.n, cap),
        rings::RingFamily::BGL => rings::bgl_capped(id.n, cap),
        rings::RingFamily::BGm => rings::bgm_capped("c", cap),
        rings::RingFamily::BSOOdd => rings::bso_odd_capped(id.n, cap),
        rings::RingFamily::BGOOdd => rings::bgo_odd_capped(id.n, cap),
        rings::RingFamily::BGOEven => match file {
            Some(path) => Ok(load_even(path, cap)?.presentation),
            None => Err(even_file_required(id.n)),
        },
    }
}

fn twist_for(
    family: &str,
    n: usize,
    cap: usize,
    file: Option<&Path>,
) -> Result<TwistStructure> {
    let id = rings::RingId::parse(family, n)?;
    match id.family {
        rings::RingFamily::BGOOdd => builtin_mu_odd_capped(id.n, cap),
        rings::RingFamily::BGOEven => match file {
            Some(path) => TwistStructure::from_even_datum(&load_even(path, cap)?),
            None => Err(even_file_required(id.n)),
        },
        _ => Err(Error::contract(format!(
            "family `{family}` has no twist structure; primitives live in BGO rings"
        ))),
    }
}

fn target_datum(n: usize, target_file: Option<&Path>, cap: usize) -> Result<GysinDatum> {
    let target_rank = n
        .checked_sub(1)
        .filter(|&m| m >= 1)
        .ok_or_else(|| Error::contract("rank must be at least 2"))?;
    match target_file {
        Some(path) => load_even(path, cap)?.gysin_datum(),
        None if target_rank % 2 == 1 => crate::gysin::odd_pair_datum_capped(target_rank, cap),
        None => Err(even_file_required(target_rank)),
    }
}

fn parse_alpha(ring: &crate::gralg::GradedAlgebraPresentation, text: &str) -> Result<PolyF2> {
    ring.parse_poly(text)
}

pub fn run(cli: &Cli) -> Result<CommandResult> {
    match &cli.command {
        Command::Ring {
            family,
            n,
            max_degree,
            poincare,
            basis,
            file,
        } => {
            let ring = ring_for(family, *n, *max_degree, file.as_deref())?;
            let generators = ring
                .generators()
                .iter()
                .map(|g| (g.name.clone(), g.degree))
                .collect();
            let poincare_out = if *poincare {
                Some(ring.poincare_series(*max_degree)?)
            } else {
                None
            };
            let (basis_out, basis_degree) = match basis {
                Some(d) => {
                    let b = ring.basis(*d)?;
                    (
                        Some(b.iter().map(|m| ring.monomial_string(m)).collect()),
                        Some(*d),
                    )
                }
                None => (None, None),
            };
            Ok(CommandResult {
                exit_code: 0,
                payload: Payload::Ring(RingReport {
                    basis: basis_out,
                    basis_degree,
                    generators,
                    poincare: poincare_out,
                    ring: format!("{family}({n})"),
                }),
            })
        }
        Command::Primitive {
            family,
            n,
            degree,
            max_degree,
            file,
        } => {
            let twist = twist_for(family, *n, *max_degree, file.as_deref())?;
            let basis = twist
                .primitive_basis(*degree)?
                .iter()
                .map(|p| twist.ring().poly_string(p))
                .collect();
            Ok(CommandResult {
                exit_code: 0,
                payload: Payload::Primitive(PrimitiveReport {
                    basis,
                    degree: *degree,
                    ring: format!("{family}({n})"),
                }),
            })
        }
        Command::Delta {
            n,
            alpha,
            target_file,
            max_degree,
        } => {
            if n % 2 == 0 {
                return Err(Error::DataRequired(format!(
                    "rank {n} is even: restriction images to rank {} are external data \
                     not covered by the shipped schema",
                    n - 1
                )));
            }
            let ring = rings::bgo_odd_capped(*n, *max_degree)?;
            let alpha_poly = parse_alpha(&ring, alpha)?;
            let target = target_datum(*n, target_file.as_deref(), *max_degree)?;
            let value = delta(*n, &alpha_poly, &target)?;
            Ok(CommandResult {
                exit_code: 0,
                payload: Payload::Delta(DeltaReport {
                    alpha: ring.poly_string(&alpha_poly),
                    delta: target.ring().poly_string(&value),
                    source_rank: *n,
                    target_rank: *n - 1,
                }),
            })
        }
        Command::Verify { file, max_degree } => {
            let datum = load_even(file, *max_degree)?;
            let report = verify_even_datum(&datum, *max_degree)?;
            let failures: Vec<String> = report.failures.iter().map(|f| f.to_string()).collect();
            Ok(CommandResult {
                exit_code: if failures.is_empty() { 0 } else { 3 },
                payload: Payload::Verify(VerifyPayload {
                    checked_to: report.checked_to,
                    clean: failures.is_empty(),
                    failures,
                    file: file.display().to_string(),
                }),
            })
        }
        Command::Quad { op } => run_quad(op),
    }
}

fn load_triple(path: &Path) -> Result<LocalTriple> {
    let text = std::fs::read_to_string(resolve_data_path(path))?;
    LocalTriple::from_json_str(&text)
}

fn run_quad(op: &QuadOp) -> Result<CommandResult> {
    match op {
        QuadOp::Profile(arg) => {
            let triple = load_triple(&arg.triple)?;
            let m = triple.mildness();
            Ok(CommandResult {
                exit_code: 0,
                payload: Payload::QuadProfile(ProfileReport {
                    diagnosis: m.diagnosis,
                    generic_rank: m.generic_rank,
                    mild: m.mild,
                    n: m.n,
                    special_rank: m.special_rank,
                }),
            })
        }
        QuadOp::Mult(arg) => {
            let triple = load_triple(&arg.triple)?;
            let field = triple.field();
            let multiplicity = triple.multiplicity()?;
            Ok(CommandResult {
                exit_code: 0,
                payload: Payload::QuadMult(MultReport {
                    discriminant: triple.discriminant().display(&field),
                    multiplicity,
                }),
            })
        }
        QuadOp::Reduce(arg) => {
            let triple = load_triple(&arg.triple)?;
            let reduced = triple.reduced_triple()?;
            Ok(CommandResult {
                exit_code: 0,
                payload: Payload::QuadReduce(ReduceReport {
                    diag: reduced.diagonal().iter().map(Scalar::to_string).collect(),
                    discriminant: reduced.discriminant().to_string(),
                    rank: reduced.rank(),
                    square_class: reduced.square_class(),
                }),
            })
        }
        QuadOp::Model(arg) => {
            let q_input = load_triple(&arg.triple)?;
            let field = q_input.field();
            // the input must be constant in t
            let m = q_input.n();
            let mut q: Vec<Vec<Scalar>> = vec![vec![field.zero(); m]; m];
            for i in 0..m {
                for j in 0..m {
                    let p = q_input.entry(i, j);
                    if p.degree().is_some_and(|d| d > 0) {
                        return Err(Error::contract(
                            "model input must be a constant symmetric matrix over k",
                        ));
                    }
                    q[i][j] = p.at_zero(&field);
                }
            }
            let model = model_triple(field, &q)?;
            Ok(CommandResult {
                exit_code: 0,
                payload: Payload::QuadModel(ModelReport {
                    multiplicity: model.multiplicity()?,
                    triple: model.to_json_value(),
                }),
            })
        }
        QuadOp::Boundary {
            triple,
            alpha,
            target_file,
            max_degree,
        } => {
            let family = load_triple(&triple.triple)?;
            let n = family.n();
            if n % 2 == 0 {
                return Err(Error::DataRequired(format!(
                    "rank {n} is even: restriction images to rank {} are external data \
                     not covered by the shipped schema",
                    n - 1
                )));
            }
            let ring = rings::bgo_odd_capped(n, *max_degree)?;
            let alpha_poly = parse_alpha(&ring, alpha)?;
            let target = target_datum(n, target_file.as_deref(), *max_degree)?;
            let out = degeneration_boundary(&alpha_poly, &family, &target)?;
            Ok(CommandResult {
                exit_code: 0,
                payload: Payload::QuadBoundary(BoundaryReport {
                    boundary_class: target.ring().poly_string(&out.boundary_class),
                    delta_class: target.ring().poly_string(&out.delta_class),
                    multiplicity: out.multiplicity,
                    parity: out.parity,
                    reduced_diag: out
                        .reduced
                        .diagonal()
                        .iter()
                        .map(Scalar::to_string)
                        .collect(),
                    reduced_rank: out.reduced.rank(),
                    reduced_square_class: out.reduced.square_class(),
                }),
            })
        }
    }
}

/// Human-readable rendering of a payload, one logical line per fact.
pub fn render_text(payload: &Payload) -> String {
    let mut out = String::new();
    match payload {
        Payload::Ring(r) => {
            let gens: Vec<String> = r
                .generators
                .iter()
                .map(|(name, degree)| format!("{name}:{degree}"))
                .collect();
            out.push_str(&format!("ring {} = F2[{}]\n", r.ring, gens.join(", ")));
            if let Some(series) = &r.poincare {
                let s: Vec<String> = series.iter().map(usize::to_string).collect();
                out.push_str(&format!("poincare: {}\n", s.join(",")));
            }
            if let (Some(basis), Some(d)) = (&r.basis, r.basis_degree) {
                out.push_str(&format!("basis degree {d}: {}\n", basis.join(", ")));
            }
        }
        Payload::Primitive(p) => {
            if p.basis.is_empty() {
                out.push_str(&format!("no primitive classes in degree {}\n", p.degree));
            } else {
                for b in &p.basis {
                    out.push_str(b);
                    out.push('\n');
                }
            }
        }
        Payload::Delta(d) => {
            out.push_str(&format!("delta({}) = {}\n", d.alpha, d.delta));
        }
        Payload::Verify(v) => {
            if v.clean {
                out.push_str(&format!(
                    "ok: datum verified to degree {} ({})\n",
                    v.checked_to, v.file
                ));
            } else {
                out.push_str(&format!(
                    "verification failed for {} ({} failures to degree {}):\n",
                    v.file,
                    v.failures.len(),
                    v.checked_to
                ));
                for f in &v.failures {
                    out.push_str(&format!("  {f}\n"));
                }
            }
        }
        Payload::QuadProfile(p) => {
            out.push_str(&format!(
                "n = {}, generic rank = {}, special rank = {}, mildly degenerating: {}\n{}\n",
                p.n, p.generic_rank, p.special_rank, p.mild, p.diagnosis
            ));
        }
        Payload::QuadMult(m) => {
            out.push_str(&format!(
                "multiplicity = {} (discriminant {})\n",
                m.multiplicity, m.discriminant
            ));
        }
        Payload::QuadReduce(r) => {
            out.push_str(&format!(
                "reduced triple: rank {}, diag = [{}], disc = {} (square class: {})\n",
                r.rank,
                r.diag.join(", "),
                r.discriminant,
                r.square_class
            ));
        }
        Payload::QuadModel(m) => {
            out.push_str(&format!("multiplicity = {}\n{}\n", m.multiplicity, m.triple));
        }
        Payload::QuadBoundary(b) => {
            out.push_str(&format!("nu = {}, parity = {}\n", b.multiplicity, b.parity));
            out.push_str(&format!("delta(alpha) = {}\n", b.delta_class));
            out.push_str(&format!("boundary class = {}\n", b.boundary_class));
            out.push_str(&format!(
                "reduced triple: rank {}, diag = [{}] (square class: {})\n",
                b.reduced_rank,
                b.reduced_diag.join(", "),
                b.reduced_square_class
            ));
        }
    }
    out
}

/// JSON envelope with sorted, versioned fields.
#[derive(Serialize)]
struct Envelope<'a> {
    payload: &'a Payload,
    schema_version: u32,
    status: &'a str,
}

pub fn render_json(payload: &Payload, ok: bool) -> String {
    serde_json::to_string_pretty(&Envelope {
        payload,
        schema_version: SCHEMA_VERSION,
        status: if ok { "ok" } else { "error" },
    })
    .expect("payloads serialize")
}

/// JSON error envelope for failed invocations.
pub fn render_json_error(error: &Error) -> String {
    #[derive(Serialize)]
    struct ErrorEnvelope {
        error: String,
        schema_version: u32,
        status: &'static str,
    }
    serde_json::to_string_pretty(&ErrorEnvelope {
        error: error.to_string(),
        schema_version: SCHEMA_VERSION,
        status: "error",
    })
    .expect("errors serialize")
}

/// Exit code for an error per the CLI convention.
pub fn exit_code_for(error: &Error) -> i32 {
    match error {
        Error::DataRequired(_) | Error::Underdetermined(_) => 2,
        _ => 1,
    }
}
