use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use logtorelli::geometry::DEFAULT_SMOOTHNESS_RETRIES;
use logtorelli::logsheaf::{jumping_line_rank, normalizing_twist};
use logtorelli::rational::{format_rational, int, parse_rational};
use logtorelli::sweep::{sweep, CSV_HEADER};
use logtorelli::torelli::{
    cayleyan_discriminant_identity, cayleyan_parameter, diagonal_invariants,
};
use logtorelli::{
    cayleyan_cubic, cayleyan_hesse_param, check_involution, chern_data, counterexample_check,
    forward_invariants, hesse_cubic, hessian_curve, is_jumping_cubic, is_smooth_cubic, is_stable,
    j_invariant_hesse, jacobi_degree3, jumping_line_test, parse_form, reconstruct,
    reconstruct_candidates, splitting_type, BasisOrder, Error, HesseCubic, HyperplaneNormal,
    Rational, SheafInvariants, Space, TernaryForm, UniPoly,
};

#[derive(Parser)]
#[command(
    name = "logtorelli",
    version,
    about = "Logarithmic sheaves of plane cubics: jumping lines, Cayleyan, Torelli"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized subroutines.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Smoothness, Hessian, Cayleyan, J(f)_3 and stability of a cubic.
    Analyze(CubicInput),
    /// The Cayleyan (jumping-line) curve of a cubic, in dual coordinates.
    Cayleyan(CubicInput),
    /// Whether the line a0 z0 + a1 z1 + a2 z2 = 0 is a jumping line.
    JumpLine {
        #[command(flatten)]
        input: CubicInput,
        /// Line coefficients `a0,a1,a2`.
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true, value_parser = rational_arg)]
        alpha: Vec<Rational>,
    },
    /// The jumping-cubic hyperplane J(f)_3.
    Jacobi {
        #[command(flatten)]
        input: CubicInput,
        /// Also test whether this cubic is a jumping cubic.
        #[arg(long)]
        test: Option<String>,
    },
    /// Recover t from the Cayleyan and J(f)_3.
    Reconstruct(ReconstructInput),
    /// Invariants of a z0^3 + b z1^3 + c z2^3 and the refusal to reconstruct.
    Counterexample {
        #[arg(long, allow_hyphen_values = true, value_parser = rational_arg)]
        a: Rational,
        #[arg(long, allow_hyphen_values = true, value_parser = rational_arg)]
        b: Rational,
        #[arg(long, allow_hyphen_values = true, value_parser = rational_arg)]
        c: Rational,
    },
    /// Numeric check that the Hessian map s is a fixed-point-free involution.
    Involution {
        #[command(flatten)]
        input: CubicInput,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Check the exact identities of the Hesse pencil.
    VerifyIdentities,
    /// Chern classes of the twisted sheaf.
    Chern {
        #[arg(long)]
        d: i64,
        #[arg(
            long,
            default_value_t = 0,
            allow_hyphen_values = true,
            conflicts_with = "normalize"
        )]
        k: i64,
        /// Use the twist that brings c1 into {0, -1}.
        #[arg(long)]
        normalize: bool,
    },
    /// Tabulate smoothness, j, s, Cayleyan smoothness and stability over t.
    Sweep {
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true, value_parser = rational_arg)]
        t: Vec<Rational>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct CubicInput {
    /// Cubic in z0, z1, z2, e.g. "z0^3 + z1^3 + z2^3 - 6*z0*z1*z2".
    #[arg(long)]
    form: Option<String>,
    /// Hesse pencil member z0^3 + z1^3 + z2^3 - 3t z0 z1 z2.
    #[arg(long, allow_hyphen_values = true, value_parser = rational_arg)]
    hesse_t: Option<Rational>,
}

#[derive(Args)]
struct ReconstructInput {
    /// Self-test: compute the invariants of f_t, then invert them.
    #[arg(
        long,
        allow_hyphen_values = true,
        value_parser = rational_arg,
        required_unless_present = "cayleyan_file",
        conflicts_with = "cayleyan_file"
    )]
    hesse_t: Option<Rational>,
    /// Cayleyan as a dual cubic in a0, a1, a2, or 10 coefficients.
    #[arg(long, requires = "hyperplane_file")]
    cayleyan_file: Option<PathBuf>,
    /// Ten rationals, whitespace or comma separated.
    #[arg(long, requires = "cayleyan_file")]
    hyperplane_file: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// Output of a command: JSON payload, text rendering, and whether the check it
/// performed passed.
struct Report {
    json: Value,
    text: String,
    ok: bool,
}

impl Report {
    fn ok(json: Value, text: String) -> Self {
        Report {
            json,
            text,
            ok: true,
        }
    }
}

fn rationals(v: &[Rational]) -> Value {
    v.iter().map(format_rational).collect()
}

fn form_json(f: &TernaryForm) -> Value {
    let coeffs = f
        .coefficient_vector(&BasisOrder::new(f.degree()))
        .expect("own degree");
    json!({
        "degree": f.degree(),
        "space": f.space().to_string(),
        "coeffs": rationals(&coeffs),
        "text": f.to_string(),
    })
}

fn error_json(e: &Error) -> Value {
    json!({ "category": e.category(), "message": e.to_string() })
}

fn result_json<T>(r: &Result<T, Error>, ok: impl FnOnce(&T) -> Value) -> Value {
    match r {
        Ok(v) => ok(v),
        Err(e) => json!({ "error": error_json(e) }),
    }
}

fn result_text<T>(r: &Result<T, Error>, ok: impl FnOnce(&T) -> String) -> String {
    match r {
        Ok(v) => ok(v),
        Err(e) => format!("n/a ({}: {e})", e.category()),
    }
}

impl CubicInput {
    fn cubic(&self) -> Result<TernaryForm, Error> {
        let f = match (&self.form, &self.hesse_t) {
            (Some(text), _) => parse_form(text, Space::Primal)?,
            (None, Some(t)) => hesse_cubic(t),
            (None, None) => unreachable!("clap enforces one input"),
        };
        if f.degree() != 3 {
            return Err(Error::DegreeMismatch {
                expected: 3,
                got: f.degree(),
            });
        }
        Ok(f)
    }

    fn echo(&self) -> Value {
        match (&self.form, &self.hesse_t) {
            (Some(text), _) => json!({ "form": text }),
            (_, Some(t)) => json!({ "hesse_t": format_rational(t) }),
            _ => Value::Null,
        }
    }
}

fn analyze(input: &CubicInput, seed: u64) -> Result<Report, Error> {
    let f = input.cubic()?;
    let smooth = is_smooth_cubic(&f, DEFAULT_SMOOTHNESS_RETRIES, seed)?;
    let hesse = HesseCubic::recognize(&f);
    let j = hesse.as_ref().map(|h| j_invariant_hesse(&h.t));
    let hessian = hessian_curve(&f);
    let cayleyan = cayleyan_cubic(&f);
    let hyperplane = jacobi_degree3(&f);
    let stable = is_stable(&f);
    let chern = chern_data(3, 0)?;

    let json = json!({
        "form": form_json(&f),
        "smoothness": smooth,
        "hesse_t": hesse.as_ref().map(|h| format_rational(&h.t)),
        "j": j.as_ref().map(|j| result_json(j, |j| json!(format_rational(j)))),
        "hessian": result_json(&hessian, form_json),
        "cayleyan": result_json(&cayleyan, form_json),
        "hyperplane": result_json(&hyperplane, |h| rationals(h.entries())),
        "stable": result_json(&stable, |b| json!(b)),
        "chern": chern,
    });
    let mut text = format!("cubic:      {f}\n");
    text += &format!(
        "smoothness: {}\n",
        serde_json::to_value(smooth.status)
            .expect("enum")
            .as_str()
            .unwrap_or("")
    );
    if let Some(h) = &hesse {
        text += &format!("hesse t:    {}\n", format_rational(&h.t));
    }
    if let Some(j) = &j {
        text += &format!("j:          {}\n", result_text(j, format_rational));
    }
    text += &format!("hessian:    {}\n", result_text(&hessian, |h| h.to_string()));
    text += &format!(
        "cayleyan:   {}\n",
        result_text(&cayleyan, |c| c.to_string())
    );
    text += &format!(
        "J(f)_3:     {}\n",
        result_text(&hyperplane, |h| h.to_string())
    );
    text += &format!("stable:     {}\n", result_text(&stable, |b| b.to_string()));
    text += &format!("chern:      c1 = {}, c2 = {}", chern.c1, chern.c2);
    Ok(Report::ok(
        json!({ "input": input.echo(), "analysis": json }),
        text,
    ))
}

fn cayleyan(input: &CubicInput) -> Result<Report, Error> {
    let c = cayleyan_cubic(&input.cubic()?)?;
    Ok(Report::ok(
        json!({ "input": input.echo(), "cayleyan": form_json(&c) }),
        c.to_string(),
    ))
}

fn jump_line(input: &CubicInput, alpha: &[Rational]) -> Result<Report, Error> {
    let f = input.cubic()?;
    let line = TernaryForm::from_coefficients(&BasisOrder::new(1), Space::Primal, alpha)?;
    let rank = jumping_line_rank(&f, &line)?;
    let split = splitting_type(&f, &line)?;
    let jumping = jumping_line_test(&f, &line)?;
    let json = json!({
        "input": input.echo(),
        "alpha": rationals(alpha),
        "rank": rank,
        "jumping": jumping,
        "splitting_type": [split.0, split.1],
    });
    let text = format!(
        "line {line} = 0: rank {rank}, {}, restriction {split}",
        if jumping { "jumping" } else { "not jumping" }
    );
    Ok(Report::ok(json, text))
}

fn jacobi(input: &CubicInput, test: Option<&str>) -> Result<Report, Error> {
    let f = input.cubic()?;
    let normal = jacobi_degree3(&f)?;
    let basis: Vec<String> = BasisOrder::new(3)
        .monomials()
        .iter()
        .map(|m| TernaryForm::monomial(*m, int(1), Space::Primal).to_string())
        .collect();
    let mut json =
        json!({ "input": input.echo(), "basis": basis, "normal": rationals(normal.entries()) });
    let mut text = format!(
        "J(f)_3 normal: {normal}\nbasis:         [{}]",
        basis.join(", ")
    );
    if let Some(g) = test {
        let g = parse_form(g, Space::Primal)?;
        let member = is_jumping_cubic(&f, &g)?;
        json["test"] = json!({ "form": form_json(&g), "jumping_cubic": member });
        text += &format!(
            "\n{g}: {}",
            if member {
                "jumping cubic"
            } else {
                "not a jumping cubic"
            }
        );
    }
    Ok(Report::ok(json, text))
}

fn read_rationals(path: &PathBuf) -> Result<Vec<Rational>, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(parse_rational)
        .collect()
}

fn read_cayleyan(path: &PathBuf) -> Result<TernaryForm, Error> {
    if let Ok(coeffs) = read_rationals(path) {
        if coeffs.len() == 10 {
            return TernaryForm::from_coefficients(&BasisOrder::new(3), Space::Dual, &coeffs);
        }
    }
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    parse_form(&text, Space::Dual)
}

fn candidate_text(roots: &[Rational], residual: &UniPoly) -> String {
    let roots: Vec<String> = roots.iter().map(format_rational).collect();
    let mut text = format!("{{{}}}", roots.join(", "));
    if residual.degree().unwrap_or(0) > 0 {
        text += &format!(" ∪ roots of {residual}");
    }
    text
}

fn reconstruct_cmd(input: &ReconstructInput) -> Result<Report, Error> {
    let (echo, inv) = match (&input.hesse_t, &input.cayleyan_file, &input.hyperplane_file) {
        (Some(t), _, _) => (
            json!({ "hesse_t": format_rational(t) }),
            forward_invariants(t)?,
        ),
        (None, Some(c), Some(h)) => {
            let inv = SheafInvariants {
                cayleyan: read_cayleyan(c)?,
                hyperplane: HyperplaneNormal::new(read_rationals(h)?)?,
            };
            (
                json!({ "cayleyan_file": c.display().to_string(), "hyperplane_file": h.display().to_string() }),
                inv,
            )
        }
        _ => unreachable!("clap enforces the input group"),
    };
    let s = cayleyan_parameter(&inv.cayleyan)?;
    let t = reconstruct(&inv)?;
    let cands = reconstruct_candidates(&s);
    let json = json!({
        "input": echo,
        "invariants": { "cayleyan": form_json(&inv.cayleyan), "hyperplane": rationals(inv.hyperplane.entries()) },
        "s": format_rational(&s),
        "candidates": { "exact_roots": rationals(&cands.exact_roots), "residual_coeffs": rationals(cands.residual.coeffs()) },
        "t": format_rational(&t),
    });
    let text = format!(
        "s = {}\ncandidates: {}\nt = {}",
        format_rational(&s),
        candidate_text(&cands.exact_roots, &cands.residual),
        format_rational(&t)
    );
    Ok(Report::ok(json, text))
}

fn counterexample(a: &Rational, b: &Rational, c: &Rational) -> Result<Report, Error> {
    let holds = counterexample_check(a, b, c)?;
    let inv = diagonal_invariants(a, b, c)?;
    let refusal = match reconstruct(&inv) {
        Ok(t) => json!({ "t": format_rational(&t) }),
        Err(e) => error_json(&e),
    };
    let refused = refusal.get("category").and_then(Value::as_str) == Some("cayleyan-singular");
    let json = json!({
        "input": { "a": format_rational(a), "b": format_rational(b), "c": format_rational(c) },
        "invariants": { "cayleyan": form_json(&inv.cayleyan), "hyperplane": rationals(inv.hyperplane.entries()) },
        "invariants_independent_of_coefficients": holds,
        "reconstruction": refusal,
    });
    let text = format!(
        "cayleyan:   {}\nJ(f)_3:     {}\nindependent of (a, b, c): {holds}\nreconstruction refused:   {refused}",
        inv.cayleyan, inv.hyperplane
    );
    Ok(Report {
        json,
        text,
        ok: holds && refused,
    })
}

fn involution(input: &CubicInput, samples: usize, tol: f64, seed: u64) -> Result<Report, Error> {
    let r = check_involution(&input.cubic()?, samples, tol, seed)?;
    let json = json!({
        "input": input.echo(),
        "report": {
            "samples": r.samples,
            "requested": r.requested,
            "max_err": r.max_double_apply_error,
            "min_fix_dist": r.min_fixed_point_distance,
            "tolerance": r.tolerance,
            "pass": r.pass,
        },
    });
    let text = format!(
        "samples {}/{}, max |s(s(q)) - q| = {:.3e}, min |s(q) - q| = {:.3e}, tol {:e}: {}",
        r.samples,
        r.requested,
        r.max_double_apply_error,
        r.min_fixed_point_distance,
        r.tolerance,
        if r.pass { "pass" } else { "FAIL" }
    );
    Ok(Report {
        json,
        text,
        ok: r.pass,
    })
}

fn verify_identities() -> Result<Report, Error> {
    let (lhs, rhs) = cayleyan_discriminant_identity();
    let j_zero = [0, -2].map(|t| j_invariant_hesse(&int(t)).map(|j| j == int(0)));
    let s_minus_two = cayleyan_hesse_param(&int(-2))?;
    let chern = chern_data(3, 0)?;
    let checks = [
        ("(t^3 + 2)^3 - (3t)^3 = (t^3 - 1)^2 (t^3 + 8)", lhs == rhs),
        ("j(0) = 0", j_zero[0].clone()?),
        ("j(-2) = 0", j_zero[1].clone()?),
        ("s(-2) = 1", s_minus_two == int(1)),
        ("c1 = 0, c2 = 3 for a cubic", (chern.c1, chern.c2) == (0, 3)),
    ];
    let ok = checks.iter().all(|(_, b)| *b);
    let json = json!({
        "identity": { "lhs": rationals(lhs.coeffs()), "rhs": rationals(rhs.coeffs()) },
        "checks": checks.iter().map(|(name, b)| json!({ "check": name, "holds": b })).collect::<Vec<_>>(),
        "pass": ok,
    });
    let text = checks
        .iter()
        .map(|(name, b)| format!("[{}] {name}", if *b { "ok" } else { "FAIL" }))
        .chain([format!("expanded: {lhs}")])
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Report { json, text, ok })
}

fn chern(d: i64, k: i64, normalize: bool) -> Result<Report, Error> {
    let k = if normalize { normalizing_twist(d) } else { k };
    let c = chern_data(d, k)?;
    Ok(Report::ok(
        json!({ "chern": c }),
        format!("d = {d}, k = {k}: c1 = {}, c2 = {}", c.c1, c.c2),
    ))
}

fn sweep_cmd(ts: &[Rational], format: Format, as_json: bool) -> Result<Report, Error> {
    let rows = sweep(ts)?;
    let json = json!({ "rows": rows });
    let text = match format {
        Format::Json if !as_json => serde_json::to_string_pretty(&json).expect("plain values"),
        _ => std::iter::once(CSV_HEADER.to_string())
            .chain(rows.iter().map(|r| r.to_csv()))
            .collect::<Vec<_>>()
            .join("\n"),
    };
    Ok(Report::ok(json, text))
}

fn run(cli: &Cli) -> Result<Report, Error> {
    match &cli.command {
        Command::Analyze(input) => analyze(input, cli.seed),
        Command::Cayleyan(input) => cayleyan(input),
        Command::JumpLine { input, alpha } => jump_line(input, alpha),
        Command::Jacobi { input, test } => jacobi(input, test.as_deref()),
        Command::Reconstruct(input) => reconstruct_cmd(input),
        Command::Counterexample { a, b, c } => counterexample(a, b, c),
        Command::Involution {
            input,
            samples,
            tol,
        } => involution(input, *samples, *tol, cli.seed),
        Command::VerifyIdentities => verify_identities(),
        Command::Chern { d, k, normalize } => chern(*d, *k, *normalize),
        Command::Sweep { t, format } => sweep_cmd(t, *format, cli.json),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Analyze(_) => "analyze",
        Command::Cayleyan(_) => "cayleyan",
        Command::JumpLine { .. } => "jump-line",
        Command::Jacobi { .. } => "jacobi",
        Command::Reconstruct(_) => "reconstruct",
        Command::Counterexample { .. } => "counterexample",
        Command::Involution { .. } => "involution",
        Command::VerifyIdentities => "verify-identities",
        Command::Chern { .. } => "chern",
        Command::Sweep { .. } => "sweep",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Command::JumpLine { alpha, .. } = &cli.command {
        if alpha.len() != 3 {
            Cli::command()
                .error(
                    ErrorKind::WrongNumberOfValues,
                    format!("--alpha takes 3 values, got {}", alpha.len()),
                )
                .exit();
        }
    }
    let start = Instant::now();
    let outcome = run(&cli);
    let name = command_name(&cli.command);
    match outcome {
        Ok(report) => {
            let status = if report.ok { "ok" } else { "check-failed" };
            if cli.json {
                let mut out = json!({ "command": name, "seed": cli.seed, "status": status });
                if let (Value::Object(out), Value::Object(body)) = (&mut out, report.json) {
                    out.extend(body);
                }
                println!(
                    "{}",
                    serde_json::to_string_pretty(&out).expect("plain values")
                );
            } else {
                println!("{}", report.text);
                eprintln!("{name}: {status} in {:.3?}", start.elapsed());
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            if cli.json {
                let out = json!({ "command": name, "seed": cli.seed, "status": "error", "error": error_json(&e) });
                println!(
                    "{}",
                    serde_json::to_string_pretty(&out).expect("plain values")
                );
            } else {
                eprintln!("error[{}]: {e}", e.category());
            }
            ExitCode::from(1)
        }
    }
}
