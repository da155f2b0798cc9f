use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use lieper::cohomology::{cartan_map, ce_differential, eta_d, is_coboundary2, solve_exactness};
use lieper::connection::{verify_second_derivative, ConnectionPatch, PolynomialSpec, VectorField};
use lieper::error::{Error, Result};
use lieper::exact::parse_scalar;
use lieper::invariants::{centroid, induced_map_on_v, universal_form, MapMode};
use lieper::json;
use lieper::lattice::{is_discrete_with_epsilon, torus_example, TorusInput, DEFAULT_EPSILON};
use lieper::lie::{normalized_killing, LieAlgebra, LinearMap, SymBilinearForm};
use lieper::periods::{period_3form, twisted_loop_period, LoopFamily, SampledSphereMap, DEFAULT_S3_RESOLUTION};
use lieper::reproduce::{criterion_id, format_table, reproduce, CRITERIA};
use lieper::twisted_loop::{cocycle_identity_check, coker_equals_fixed_for_finite_order, cokernel, omega_phi};

/// Invariant forms, cocycles, loop periods and discreteness certificates.
#[derive(Parser)]
#[command(name = "lieper", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Universal invariant form V(k) of an algebra (preset name or JSON file).
    Vform { algebra: String },
    /// Basis of the centroid of an algebra.
    Centroid { algebra: String },
    /// Cartan 3-cocycle of a form: closedness and exactness; optionally the
    /// 2-cocycle of a derivation.
    CocycleCheck {
        algebra: String,
        /// normalized, killing, universal or a form JSON file.
        #[arg(long, default_value = "universal")]
        form: String,
        /// Matrix JSON file of a derivation D.
        #[arg(long)]
        derivation: Option<String>,
    },
    /// Period of the Cartan 3-form of su(2) over z -> z^k on S^3.
    PeriodS3 {
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        degree: i32,
        #[arg(long, default_value_t = DEFAULT_S3_RESOLUTION)]
        res: usize,
        #[arg(long, default_value_t = 1e-3)]
        tol: f64,
    },
    /// Both sides of the loop-period relation for the suspension generator.
    PeriodLoop {
        /// Matrix JSON file of a rotation of su(2) used as the twist.
        #[arg(long)]
        twist: Option<String>,
        /// Nodes in (t, theta, phi), comma separated.
        #[arg(long, default_value = "32,32,64")]
        grid: String,
        #[arg(long, default_value_t = 1e-2)]
        tol: f64,
    },
    /// coker(phi - id) and its comparison with the fixed vectors.
    Coker {
        matrix: String,
        #[arg(long, default_value_t = 24)]
        order_bound: u32,
    },
    /// omega_phi on sampled twisted sections and the cocycle residual.
    LoopCocycle {
        #[arg(long)]
        algebra: String,
        /// Matrix JSON file of the automorphism phi of the algebra.
        #[arg(long)]
        twist: String,
        /// Sections JSON file.
        #[arg(long)]
        sections: String,
        /// universal (V(k) with the induced twist), normalized, killing or a form file.
        #[arg(long, default_value = "universal")]
        form: String,
        /// Matrix JSON file of phi on V (identity by default for non-universal forms).
        #[arg(long)]
        twist_v: Option<String>,
    },
    /// Discreteness of a finitely generated subgroup of R^n.
    Discrete {
        #[arg(long)]
        generators: String,
        /// Decide numerically from the constant values.
        #[arg(long)]
        numeric: bool,
        /// Values of the constants as name=value pairs, comma separated.
        #[arg(long)]
        constants: Option<String>,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
    },
    /// Second derivative of the commutator-loop holonomy against curvature.
    Holonomy {
        /// u1, su2 or a polynomial connection JSON file.
        #[arg(long, default_value = "su2")]
        patch: String,
        #[arg(long, default_value_t = 0.1)]
        t_max: f64,
        #[arg(long, default_value_t = 8)]
        samples: usize,
    },
    /// Discreteness of Z + Z * integral for a rational value, a symbolic
    /// name, or sampled values.
    TorusExample {
        value: Option<String>,
        /// JSON array of samples of h on a uniform grid of [0, 1].
        #[arg(long, conflicts_with = "value")]
        samples: Option<String>,
    },
    /// Runs the acceptance table.
    Reproduce {
        /// Criterion slugs or ids, comma separated.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        #[arg(long)]
        json: bool,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Vform { .. } => "vform",
            Command::Centroid { .. } => "centroid",
            Command::CocycleCheck { .. } => "cocycle-check",
            Command::PeriodS3 { .. } => "period-s3",
            Command::PeriodLoop { .. } => "period-loop",
            Command::Coker { .. } => "coker",
            Command::LoopCocycle { .. } => "loop-cocycle",
            Command::Discrete { .. } => "discrete",
            Command::Holonomy { .. } => "holonomy",
            Command::TorusExample { .. } => "torus-example",
            Command::Reproduce { .. } => "reproduce",
        }
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn kappa_for(arg: &str, alg: &LieAlgebra) -> Result<SymBilinearForm> {
    if arg == "universal" {
        Ok(universal_form(alg).kappa().clone())
    } else {
        json::load_form(arg, alg)
    }
}

fn vform(algebra: &str) -> Result<Value> {
    let u = universal_form(&json::load_algebra(algebra)?);
    Ok(json!({
        "algebra_dim": u.algebra().dim(),
        "sym_square_dim": u.sym_square_dim(),
        "relation_rank": u.space().relation_rank(),
        "quotient_dim": u.quotient_dim(),
        "kappa_u": json::form_to_json(u.kappa()),
    }))
}

fn centroid_cmd(algebra: &str) -> Result<Value> {
    let basis = centroid(&json::load_algebra(algebra)?);
    Ok(json!({"dim": basis.len(), "basis": basis.iter().map(|m| json::matrix_to_json(&m.matrix)).collect::<Vec<_>>()}))
}

fn cocycle_check(algebra: &str, form: &str, derivation: Option<&str>) -> Result<Value> {
    let alg = json::load_algebra(algebra)?;
    let kappa = kappa_for(form, &alg)?;
    let c = cartan_map(&alg, &kappa)?;
    let mut out = json!({
        "cartan": json::cochain_to_json(&c),
        "closed": ce_differential(&c, &alg)?.is_zero(),
        "exactness": to_value(&solve_exactness(&c, &alg)?),
    });
    if let Some(path) = derivation {
        let eta = eta_d(&alg, &kappa, &json::load_matrix(path)?)?;
        let verdict = is_coboundary2(&eta, &alg)?;
        out["eta"] = json::cochain_to_json(&eta);
        out["eta_closed"] = json!(ce_differential(&eta, &alg)?.is_zero());
        out["eta_coboundary"] = to_value(&verdict);
        out["eta_witness"] = verdict.witness().map_or(Value::Null, json::cochain_to_json);
    }
    Ok(out)
}

fn period_s3(degree: i32, res: usize, tol: f64) -> Result<Value> {
    let kappa = normalized_killing(&LieAlgebra::su2());
    let r = period_3form(&kappa, &SampledSphereMap::power_s3(res, degree), tol)?;
    let scale = 8.0 * std::f64::consts::PI.powi(2);
    Ok(json!({"degree": degree, "period": to_value(&r), "value_over_8pi2": r.value[0] / scale}))
}

fn parse_grid(grid: &str) -> Result<(usize, usize, usize)> {
    let parts: Vec<usize> = grid
        .split(',')
        .map(|p| p.trim().parse().map_err(|_| Error::Parse(format!("bad grid {grid:?}"))))
        .collect::<Result<_>>()?;
    match parts[..] {
        [a, b, c] => Ok((a, b, c)),
        _ => Err(Error::Parse("grid needs three comma-separated sizes".into())),
    }
}

fn period_loop(twist: Option<&str>, grid: &str, tol: f64) -> Result<Value> {
    let kappa = normalized_killing(&LieAlgebra::su2());
    let phi = match twist {
        Some(path) => json::load_matrix(path)?,
        None => LinearMap::identity(3),
    };
    let r = twisted_loop_period(&kappa, &LoopFamily::suspension_generator(), &phi, parse_grid(grid)?, tol)?;
    let scale = 4.0 * std::f64::consts::PI.powi(2);
    Ok(json!({"result": to_value(&r), "lhs_over_4pi2": r.lhs.value[0] / scale, "rhs_over_4pi2": r.rhs.value[0] / scale}))
}

fn coker_cmd(matrix: &str, bound: u32) -> Result<Value> {
    let phi = json::load_matrix(matrix)?;
    let c = cokernel(&phi)?;
    let finite = match coker_equals_fixed_for_finite_order(&phi, bound) {
        Ok(r) => json!({"holds": r.holds(), "report": to_value(&r)}),
        Err(Error::OrderBoundExceeded(b)) => json!({"order_bound_exceeded": b}),
        Err(e) => return Err(e),
    };
    Ok(json!({
        "dim": c.dim(),
        "ambient_dim": c.ambient_dim(),
        "projection": json::matrix_to_json(&c.projection().matrix),
        "section": json::matrix_to_json(&c.section().matrix),
        "finite_order": finite,
    }))
}

fn loop_cocycle(algebra: &str, twist: &str, sections: &str, form: &str, twist_v: Option<&str>) -> Result<Value> {
    let alg = json::load_algebra(algebra)?;
    let phi = json::load_matrix(twist)?;
    let (kappa, phi_v) = if form == "universal" {
        let u = universal_form(&alg);
        let phi_v = induced_map_on_v(&u, &phi, MapMode::Automorphism)?;
        (u.kappa().clone(), phi_v)
    } else {
        let kappa = json::load_form(form, &alg)?;
        let phi_v = match twist_v {
            Some(p) => json::load_matrix(p)?,
            None => LinearMap::identity(kappa.value_dim()),
        };
        (kappa, phi_v)
    };
    let coker = cokernel(&phi_v)?;
    let secs = json::sections_from_json(&json::read_json(Path::new(sections))?, &phi)?;
    let omega = secs
        .iter()
        .map(|f| secs.iter().map(|g| omega_phi(f, g, &kappa, &coker)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let residual = match &secs[..] {
        [f, g, h, ..] => Some(cocycle_identity_check(&alg, f, g, h, &kappa, &coker)?),
        _ => None,
    };
    Ok(json!({"coker_dim": coker.dim(), "sections": secs.len(), "omega": omega, "cocycle_residual": residual}))
}

fn discrete(generators: &str, numeric: bool, constants: Option<&str>, epsilon: f64) -> Result<Value> {
    let mut g = json::generators_from_json(&json::read_json(Path::new(generators))?)?;
    if let Some(c) = constants {
        let values = json::parse_constant_values(c, g.constants())?;
        g = g.with_values(values)?;
    }
    if numeric {
        g = g.into_numeric()?;
    }
    Ok(to_value(&is_discrete_with_epsilon(&g, epsilon)?))
}

fn holonomy(patch: &str, t_max: f64, samples: usize) -> Result<Value> {
    let patch = match patch {
        "u1" => ConnectionPatch::u1_x_dy(),
        "su2" => ConnectionPatch::su2_test(),
        path => {
            let spec: PolynomialSpec = serde_json::from_value(json::read_json(Path::new(path))?).map_err(|e| Error::Parse(format!("connection: {e}")))?;
            ConnectionPatch::from_polynomial(&spec)?
        }
    };
    let dx: VectorField<'_> = &|_, _| [1.0, 0.0];
    let dy: VectorField<'_> = &|_, _| [0.0, 1.0];
    Ok(to_value(&verify_second_derivative(&patch, dx, dy, t_max, samples)?))
}

fn torus(value: Option<&str>, samples: Option<&str>) -> Result<Value> {
    let input = match (value, samples) {
        (_, Some(path)) => {
            let v = json::read_json(Path::new(path))?;
            let h = v
                .as_array()
                .ok_or_else(|| Error::Parse("samples must be a JSON array".into()))?
                .iter()
                .map(|x| x.as_f64().ok_or_else(|| Error::Parse("samples must be numbers".into())))
                .collect::<Result<Vec<_>>>()?;
            TorusInput::Sampled(h)
        }
        (Some(v), None) => match parse_scalar(v) {
            Ok(q) => TorusInput::Rational(q),
            Err(_) if v.chars().next().is_some_and(char::is_alphabetic) && v.chars().all(|c| c.is_alphanumeric() || c == '_') => TorusInput::Symbolic(v.to_string()),
            Err(e) => return Err(e),
        },
        (None, None) => return Err(Error::Parse("give a value or --samples".into())),
    };
    Ok(to_value(&torus_example(&input)?))
}

fn run(command: &Command) -> Result<Value> {
    match command {
        Command::Vform { algebra } => vform(algebra),
        Command::Centroid { algebra } => centroid_cmd(algebra),
        Command::CocycleCheck { algebra, form, derivation } => cocycle_check(algebra, form, derivation.as_deref()),
        Command::PeriodS3 { degree, res, tol } => period_s3(*degree, *res, *tol),
        Command::PeriodLoop { twist, grid, tol } => period_loop(twist.as_deref(), grid, *tol),
        Command::Coker { matrix, order_bound } => coker_cmd(matrix, *order_bound),
        Command::LoopCocycle {
            algebra,
            twist,
            sections,
            form,
            twist_v,
        } => loop_cocycle(algebra, twist, sections, form, twist_v.as_deref()),
        Command::Discrete {
            generators,
            numeric,
            constants,
            epsilon,
        } => discrete(generators, *numeric, constants.as_deref(), *epsilon),
        Command::Holonomy { patch, t_max, samples } => holonomy(patch, *t_max, *samples),
        Command::TorusExample { value, samples } => torus(value.as_deref(), samples.as_deref()),
        Command::Reproduce { .. } => unreachable!("handled separately"),
    }
}

/// SHA-256 over the arguments and the contents of every argument naming a file.
fn inputs_digest(args: &[String]) -> String {
    let mut h = Sha256::new();
    for a in args {
        h.update(a.as_bytes());
        h.update([0]);
        if let Ok(bytes) = std::fs::read(a) {
            h.update(&bytes);
            h.update([0]);
        }
    }
    hex::encode(h.finalize())
}

fn exit_with_error(e: &Error) -> ExitCode {
    println!("{}", json!({"error": {"code": e.code(), "message": e.to_string()}}));
    ExitCode::from(if matches!(e, Error::Parse(_)) { 2 } else { 1 })
}

fn configure_threads() {
    if let Some(n) = std::env::var("LIEPER_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // Ignored if a pool already exists.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    if let Command::Reproduce { only, json } = &cli.command {
        let mut ids = Vec::new();
        for key in only {
            match criterion_id(key) {
                Some(id) => ids.push(id),
                None => {
                    let names: Vec<&str> = CRITERIA.iter().map(|c| c.0).collect();
                    return exit_with_error(&Error::Parse(format!("unknown criterion {key:?}; expected one of {}", names.join(", "))));
                }
            }
        }
        let results = reproduce(&ids);
        if *json {
            println!("{}", serde_json::to_string_pretty(&results).expect("serializable"));
        } else {
            print!("{}", format_table(&results));
        }
        return if results.iter().all(|r| r.pass) { ExitCode::SUCCESS } else { ExitCode::from(1) };
    }
    let args: Vec<String> = std::env::args().skip(1).collect();
    let start = Instant::now();
    match run(&cli.command) {
        Ok(outputs) => {
            let report = json!({
                "subcommand": cli.command.name(),
                "inputs_digest": inputs_digest(&args),
                "outputs": outputs,
                "timings": {"total_seconds": start.elapsed().as_secs_f64()},
                "version": env!("CARGO_PKG_VERSION"),
            });
            println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
            ExitCode::SUCCESS
        }
        Err(e) => exit_with_error(&e),
    }
}
