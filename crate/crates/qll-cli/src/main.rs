//! qll — exact-arithmetic tooling for quaternionic lattice lifts: lattice
//! and class-set enumeration, lift coefficients, Hecke equivariance and
//! Dirichlet-identity verification, theta checks, and Satake/CAP reports.
//!
//! Exit codes: 0 all pass, 1 verification failure, 2 usage or configuration
//! error, 3 inconclusive-only.

mod coeff_file;
mod output;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use std::path::PathBuf;

use coeff_file::CoefficientFile;
use output::{emit, reports_exit_code, Emitted, Format};
use qll_core::hecke::{coset_counts, enumerate_cp, CosetShape};
use qll_core::lattice::{enumerate_by_norm, primitive_decompose, s_membership};
use qll_core::lift::{
    lift_coeff, lift_coeff_numeric, EpsilonSpec, HeckeGeneratedSource, SeedMode, Shape,
};
use qll_core::quat::Quat;
use qll_core::report::VerificationReport;
use qll_core::satake::{cap_match, satake_odd, satake_two, verify_hecke_satake_odd};
use qll_core::theta::evaluate::eval_lift;
use qll_core::theta::harmonic::harmonic_basis;
use qll_core::theta::series::{theta_coeffs, verify_transformation};
use qll_core::verify::{self, SuiteBounds, DEFAULT_SEED};

#[derive(Parser)]
#[command(name = "qll", version, about = "Quaternionic lattice lift toolkit")]
struct Cli {
    /// Report output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Norm-p class sets C_p
    Cp {
        #[command(subcommand)]
        action: CpAction,
    },
    /// Lattice S membership, decomposition and enumeration
    Lattice {
        #[command(subcommand)]
        action: LatticeAction,
    },
    /// Lift coefficients A(β)
    Lift {
        #[command(subcommand)]
        action: LiftAction,
    },
    /// Theta series: eigenbasis, coefficients, transformation checks
    Theta {
        #[command(subcommand)]
        action: ThetaAction,
    },
    /// Satake parameters and temperedness
    Satake(SatakeArgs),
    /// CAP comparison of Satake parameters with the induced representation
    Capmatch {
        #[arg(short, long)]
        p: u64,
        #[arg(long, allow_negative_numbers = true)]
        lambda: f64,
    },
    /// Evaluate the lifted form numerically
    Eval {
        /// Base point x as "a+bi+cj+dk" (halves allowed)
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: f64,
        /// Norm truncation for the β-sum
        #[arg(long, default_value_t = 400)]
        bound: u64,
        #[arg(long)]
        coeffs: PathBuf,
    },
    /// Verification suites
    Verify {
        #[command(subcommand)]
        suite: VerifySuite,
    },
    /// Generate synthetic inputs
    Gen {
        #[command(subcommand)]
        what: GenWhat,
    },
}

#[derive(Subcommand)]
enum CpAction {
    /// Enumerate the p+1 right-unit classes of norm-p order elements
    Enumerate {
        #[arg(short, long)]
        p: u64,
    },
}

#[derive(Subcommand)]
enum LatticeAction {
    /// Test membership of a quaternion in S
    Member {
        #[arg(long)]
        beta: String,
    },
    /// Primitive decomposition β = ϖ₂ᵘ·d·β₀
    Decompose {
        #[arg(long)]
        beta: String,
    },
    /// All lattice points of the given norm
    Enumerate {
        #[arg(long)]
        norm: u64,
    },
}

#[derive(Subcommand)]
enum LiftAction {
    /// A(β), exact-symbolic by default or numeric from a coefficient file
    Coeff {
        #[arg(long)]
        beta: String,
        /// Numeric mode: read coefficients from this file
        #[arg(long)]
        coeffs: Option<PathBuf>,
        /// Active odd primes for the symbolic Hecke recursion
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
        /// Activate the p = 2 newform recursion
        #[arg(long)]
        newform: bool,
    },
}

#[derive(Subcommand)]
enum ThetaAction {
    /// Harmonic eigenbasis of the given even degree
    Basis {
        #[arg(short, long)]
        l: u32,
    },
    /// Table of theta coefficients b(2m)
    Coeffs {
        #[arg(short, long)]
        l: u32,
        #[arg(long)]
        nu: usize,
        #[arg(long)]
        max: u64,
    },
    /// Numeric check of the transformation formula at a point
    CheckTransform {
        #[arg(short, long)]
        l: u32,
        #[arg(long, default_value_t = 0)]
        nu: usize,
        /// Evaluation point, e.g. "0.3+0.8i"
        #[arg(long)]
        z: String,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Truncation; raised automatically when 0
        #[arg(long, default_value_t = 0)]
        max: u64,
        /// Detection control: corrupt the expected sign; the check must fail
        #[arg(long)]
        corrupt_sign: bool,
    },
}

#[derive(Args)]
struct SatakeArgs {
    #[arg(short, long)]
    p: u64,
    /// Hecke eigenvalue λ_p (odd p)
    #[arg(long, allow_negative_numbers = true)]
    lambda: Option<f64>,
    /// Atkin-Lehner sign (p = 2)
    #[arg(long, allow_negative_numbers = true)]
    epsilon: Option<i8>,
    /// Check the eigenvalue identities symbolically instead of numerically
    #[arg(long)]
    symbolic: bool,
}

#[derive(Subcommand)]
enum VerifySuite {
    /// Everything, at full or quick bounds
    All {
        #[arg(long)]
        quick: bool,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Hecke equivariance for one operator
    Equivariance {
        #[arg(short, long)]
        p: u64,
        #[arg(long, default_value = "b")]
        shape: String,
        #[arg(long, default_value_t = 240)]
        bound: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// The divisibility-counting dichotomy over primitive β
    Fundlemma {
        #[arg(short, long)]
        p: u64,
        #[arg(long, default_value_t = 400)]
        bound: u64,
    },
    /// Coset-count lemma vs oracle
    Cosets,
    /// The Dirichlet identity for every degree-l eigenvector
    Dirichlet {
        #[arg(short, long)]
        l: u32,
        #[arg(short = 'N', long, default_value_t = 200)]
        n: u64,
    },
    /// Satake-Hecke consistency, CAP matching, temperedness
    Satake {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// S = ϖ₂O, generator-word round trips, coset counts
    Structure {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        words: usize,
    },
}

#[derive(Subcommand)]
enum GenWhat {
    /// Synthetic coefficient file
    Coeffs {
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 1.0)]
        r: f64,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        epsilon: i8,
        #[arg(short, long)]
        out: PathBuf,
    },
}

fn main() {
    configure_threads();
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            2
        }
    };
    std::process::exit(code);
}

/// QLL_THREADS caps the worker pool used by the concurrent suites.
fn configure_threads() {
    if let Ok(v) = std::env::var("QLL_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build_global();
        }
    }
}

fn parse_quat(s: &str) -> Result<Quat, String> {
    Quat::parse(s).map_err(|e| e.to_string())
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let t = t.strip_suffix('i').ok_or("expected X+Yi")?;
    // split before the sign of the imaginary part
    let split = t[1..]
        .rfind(['+', '-'])
        .map(|k| k + 1)
        .ok_or("expected X+Yi")?;
    let re: f64 = t[..split].parse().map_err(|_| "bad real part")?;
    let im: f64 = t[split..].parse().map_err(|_| "bad imaginary part")?;
    if im <= 0.0 {
        return Err("Im z must be positive".into());
    }
    Ok(Complex64::new(re, im))
}

fn print_artifact(artifact: &Emitted, format: Format) -> Result<(), String> {
    let text = emit(artifact, format)?;
    print!("{text}");
    Ok(())
}

fn run(cli: Cli) -> Result<i32, String> {
    let format = cli.format;
    match cli.command {
        Command::Cp { action } => match action {
            CpAction::Enumerate { p } => {
                let classes = enumerate_cp(p).map_err(|e| e.to_string())?;
                let obj = serde_json::json!({
                    "schema": qll_core::report::REPORT_SCHEMA,
                    "p": p,
                    "class_count": classes.representatives.len(),
                    "raw_count": classes.raw_count,
                    "representatives": classes.representatives.iter().map(|q| q.to_json()).collect::<Vec<_>>(),
                });
                print_artifact(&Emitted::Object(obj), format)?;
                Ok(0)
            }
        },
        Command::Lattice { action } => match action {
            LatticeAction::Member { beta } => {
                let q = parse_quat(&beta)?;
                let member = s_membership(&q);
                let obj = serde_json::json!({
                    "schema": qll_core::report::REPORT_SCHEMA,
                    "beta": q.to_json(),
                    "member": member,
                });
                print_artifact(&Emitted::Object(obj), format)?;
                Ok(0)
            }
            LatticeAction::Decompose { beta } => {
                let q = parse_quat(&beta)?;
                let dec = primitive_decompose(&q).map_err(|e| e.to_string())?;
                let obj = serde_json::json!({
                    "schema": qll_core::report::REPORT_SCHEMA,
                    "beta": q.to_json(),
                    "u": dec.u,
                    "d": dec.d,
                    "beta0": dec.beta0.to_json(),
                });
                print_artifact(&Emitted::Object(obj), format)?;
                Ok(0)
            }
            LatticeAction::Enumerate { norm } => {
                let points = enumerate_by_norm(norm);
                let rows: Vec<Vec<String>> = points
                    .iter()
                    .map(|q| {
                        vec![
                            q.to_string(),
                            format!("{:?}", q.t.iter().map(|x| *x as i64).collect::<Vec<_>>()),
                        ]
                    })
                    .collect();
                print_artifact(
                    &Emitted::Table {
                        name: format!("lattice-norm-{norm}"),
                        headers: vec!["beta".into(), "doubled".into()],
                        rows,
                    },
                    format,
                )?;
                Ok(0)
            }
        },
        Command::Lift { action } => match action {
            LiftAction::Coeff {
                beta,
                coeffs,
                primes,
                newform,
            } => {
                let q = parse_quat(&beta)?;
                let obj = match coeffs {
                    Some(path) => {
                        let file = CoefficientFile::load(&path).map_err(|e| e.to_string())?;
                        let value = lift_coeff_numeric(&file.to_source(), &q);
                        serde_json::json!({
                            "schema": qll_core::report::REPORT_SCHEMA,
                            "beta": q.to_json(),
                            "value": value,
                            "mode": "numeric",
                        })
                    }
                    None => {
                        let src = HeckeGeneratedSource::new(
                            EpsilonSpec::Symbolic,
                            newform,
                            primes
                                .iter()
                                .map(|p| (*p, qll_core::lift::LambdaSpec::Symbolic))
                                .collect(),
                            SeedMode::Auto,
                        );
                        let a = lift_coeff(&src, &q).map_err(|e| e.to_string())?;
                        serde_json::json!({
                            "schema": qll_core::report::REPORT_SCHEMA,
                            "beta": q.to_json(),
                            "value": a.value.to_json(),
                            "value_text": a.value.to_string(),
                            "mode": "symbolic",
                        })
                    }
                };
                print_artifact(&Emitted::Object(obj), format)?;
                Ok(0)
            }
        },
        Command::Theta { action } => match action {
            ThetaAction::Basis { l } => {
                let basis = harmonic_basis(l).map_err(|e| e.to_string())?;
                let rows: Vec<Vec<String>> = basis
                    .iter()
                    .enumerate()
                    .map(|(i, p)| {
                        vec![i.to_string(), p.eigenvalue.to_string(), p.to_string()]
                    })
                    .collect();
                print_artifact(
                    &Emitted::Table {
                        name: format!("harmonic-basis-l{l}"),
                        headers: vec!["nu".into(), "eigenvalue".into(), "polynomial".into()],
                        rows,
                    },
                    format,
                )?;
                Ok(0)
            }
            ThetaAction::Coeffs { l, nu, max } => {
                let basis = harmonic_basis(l).map_err(|e| e.to_string())?;
                let p = basis
                    .get(nu)
                    .ok_or_else(|| format!("nu must be < {}", basis.len()))?;
                let coeffs = theta_coeffs(p, max);
                let rows: Vec<Vec<String>> = coeffs
                    .iter()
                    .enumerate()
                    .map(|(m, c)| {
                        let z = c.to_complex();
                        vec![
                            m.to_string(),
                            c.to_string(),
                            format!("{}", z.re),
                            format!("{}", z.im),
                        ]
                    })
                    .collect();
                print_artifact(
                    &Emitted::Table {
                        name: format!("theta-coeffs-l{l}-nu{nu}"),
                        headers: vec!["m".into(), "b(2m)".into(), "re".into(), "im".into()],
                        rows,
                    },
                    format,
                )?;
                Ok(0)
            }
            ThetaAction::CheckTransform { l, nu, z, tol, max, corrupt_sign } => {
                let basis = harmonic_basis(l).map_err(|e| e.to_string())?;
                let p = basis
                    .get(nu)
                    .ok_or_else(|| format!("nu must be < {}", basis.len()))?;
                let z = parse_complex(&z)?;
                let max_m = if max == 0 { 240 } else { max };
                let report = verify_transformation(p, z, max_m, tol, corrupt_sign);
                let code = reports_exit_code(std::slice::from_ref(&report));
                print_artifact(&Emitted::Reports(vec![report]), format)?;
                Ok(code)
            }
        },
        Command::Satake(args) => run_satake(args, format),
        Command::Capmatch { p, lambda } => {
            let matched = cap_match(p, lambda);
            let mut report = VerificationReport::new("capmatch");
            report.param("p", p.to_string());
            report.param("lambda", lambda.to_string());
            if !matched {
                report.fail("induced parameters do not match the Satake multiset".into());
            }
            let code = reports_exit_code(std::slice::from_ref(&report));
            print_artifact(&Emitted::Reports(vec![report]), format)?;
            Ok(code)
        }
        Command::Eval {
            x,
            y,
            bound,
            coeffs,
        } => {
            let file = CoefficientFile::load(&coeffs).map_err(|e| e.to_string())?;
            let q = parse_quat(&x)?;
            let result = eval_lift(&file.to_source(), &q.to_f64(), y, bound)
                .map_err(|e| e.to_string())?;
            let obj = serde_json::json!({
                "schema": qll_core::report::REPORT_SCHEMA,
                "x": q.to_json(),
                "y": y,
                "bound": bound,
                "value": result.value,
                "imag_residue": result.imag_residue,
                "tail_estimate": result.tail_estimate,
                "terms": result.terms,
            });
            print_artifact(&Emitted::Object(obj), format)?;
            Ok(0)
        }
        Command::Verify { suite } => run_verify(suite, format),
        Command::Gen { what } => match what {
            GenWhat::Coeffs {
                count,
                seed,
                r,
                epsilon,
                out,
            } => {
                if epsilon != 1 && epsilon != -1 {
                    return Err("epsilon must be 1 or -1".into());
                }
                let src = verify::synthetic_file_source(seed, count, r, epsilon);
                let file = CoefficientFile {
                    r,
                    atkin_lehner: epsilon,
                    coefficients: src.values.into_iter().collect(),
                };
                file.save(&out).map_err(|e| e.to_string())?;
                println!("wrote {}", out.display());
                Ok(0)
            }
        },
    }
}

fn run_satake(args: SatakeArgs, format: Format) -> Result<i32, String> {
    if args.symbolic {
        if args.p == 2 {
            return Err("symbolic consistency is the odd-p check; p = 2 is exact already".into());
        }
        let report = verify_hecke_satake_odd(args.p);
        let code = reports_exit_code(std::slice::from_ref(&report));
        print_artifact(&Emitted::Reports(vec![report]), format)?;
        return Ok(code);
    }
    let params = if args.p == 2 {
        let eps = args.epsilon.ok_or("p = 2 requires --epsilon 1|-1")?;
        if eps != 1 && eps != -1 {
            return Err("epsilon must be 1 or -1".into());
        }
        satake_two(eps)
    } else {
        let lambda = args.lambda.ok_or("odd p requires --lambda")?;
        satake_odd(args.p, lambda)
    };
    let mut obj = params.to_json();
    if args.p != 2 {
        obj["cap_match"] = serde_json::json!(cap_match(args.p, args.lambda.unwrap()));
    }
    obj["schema"] = serde_json::json!(qll_core::report::REPORT_SCHEMA);
    print_artifact(&Emitted::Object(obj), format)?;
    Ok(0)
}

fn run_verify(suite: VerifySuite, format: Format) -> Result<i32, String> {
    let reports: Vec<VerificationReport> = match suite {
        VerifySuite::All { quick, seed } => {
            let bounds = if quick {
                SuiteBounds::quick()
            } else {
                SuiteBounds::full()
            };
            verify::run_all(bounds, seed)
        }
        VerifySuite::Equivariance {
            p,
            shape,
            bound,
            seed,
        } => {
            let mut reports = if p == 2 {
                verify::suite_equivariance_two(bound)
            } else {
                let shape = Shape::parse(&shape).ok_or("shape must be a, b or c")?;
                vec![verify::suite_equivariance_odd(p, shape, bound)]
            };
            for r in &mut reports {
                r.param("seed", seed.to_string());
            }
            reports
        }
        VerifySuite::Fundlemma { p, bound } => vec![verify::suite_fundlemma(&[p], bound)],
        VerifySuite::Cosets => {
            let started = std::time::Instant::now();
            let mut report = VerificationReport::new("coset-counts");
            for p in [3u64, 5, 7] {
                for shape in [CosetShape::OddA, CosetShape::OddB, CosetShape::OddC] {
                    match coset_counts(shape, p) {
                        Ok((lemma, oracle)) => {
                            report.param(
                                &format!("{}-p{p}", shape.label()),
                                format!("{lemma}/{oracle}"),
                            );
                            if lemma != oracle {
                                report.fail(format!(
                                    "{} at p = {p}: {lemma} ≠ {oracle}",
                                    shape.label()
                                ));
                            }
                        }
                        Err(e) => report.fail(e.to_string()),
                    }
                }
            }
            match coset_counts(CosetShape::Even, 2) {
                Ok((lemma, oracle)) => {
                    report.param("even-p2", format!("{lemma}/{oracle}"));
                    if (lemma, oracle) != (5, 5) {
                        report.fail(format!("even at p = 2: ({lemma}, {oracle}) ≠ (5, 5)"));
                    }
                }
                Err(e) => report.fail(e.to_string()),
            }
            report.finish(started);
            vec![report]
        }
        VerifySuite::Dirichlet { l, n } => verify::suite_dirichlet(l, n),
        VerifySuite::Satake { seed } => vec![verify::suite_satake(seed)],
        VerifySuite::Structure { seed, words } => {
            vec![verify::suite_structure(seed, words, 30)]
        }
    };
    let code = reports_exit_code(&reports);
    print_artifact(&Emitted::Reports(reports), format)?;
    Ok(code)
}
