//! Command-line front end: expression commands, verification suites and the
//! cubic obstruction report.
//!
//! Exit codes: 0 success, 2 parse error, 3 domain error, 4 verification
//! failure.

pub mod obstruction;
pub mod report;
pub mod suites;
pub mod volume;

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use quatshear::bidegree::is_bf;
use quatshear::calc::{dhat, div_op, has_divergence, has_rotor, rot_op};
use quatshear::expr::{self, format, format_field, format_quaternion, ParseError};
use quatshear::flow::{flow_jet, verify_flow, MapJet, DEFAULT_ORDER};
use quatshear::mat2::Mat2;
use quatshear::ncalg::{ExactBindings, Letter, NCPoly};
use quatshear::vfield::shear_decompose;
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "quatshear", version, about = "Exact calculus for polynomial maps and vector fields in two quaternionic variables")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct GlobalOpts {
    /// Print {"input", "result", "paper_anchor"} JSON instead of text
    #[arg(long, global = true)]
    pub json: bool,
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
    /// Degree bound for seeded suites (each suite has its own default)
    #[arg(long, global = true)]
    pub max_degree: Option<usize>,
    /// Worker threads for verification suites
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum Var {
    Z,
    W,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum Hole {
    H1,
    H2,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Normalize a polynomial, or evaluate it exactly
    Eval {
        expr: String,
        #[arg(long)]
        z: Option<String>,
        #[arg(long)]
        w: Option<String>,
        #[arg(long)]
        t: Option<String>,
    },
    /// Slot-insertion derivative
    Dhat {
        expr: String,
        #[arg(long, value_enum, default_value_t = Var::Z)]
        var: Var,
        #[arg(long, value_enum, default_value_t = Hole::H1)]
        hole: Hole,
    },
    /// Divergence of a field "f ; g"
    Div { field: String },
    /// Rotor of a field "f ; g"
    Rot { field: String },
    /// Bidegree-full test
    Bf { expr: String },
    /// Split a field into overshear and shear fields
    Sheardecomp {
        field: String,
        #[arg(long)]
        zero_div: bool,
    },
    /// Flow jet of a field
    Flow {
        field: String,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: u32,
    },
    /// Dieudonne determinant of [[a, b], [c, d]]
    Detd { matrix: String },
    /// Run verification suites
    Verify {
        #[arg(default_value = "all", value_parser = suite_names())]
        suite: String,
    },
    /// Cubic obstruction report for a map with identity linear part
    Obstruction {
        /// Target map "f ; g"; default (z e^{zw}, e^{-zw} w)
        #[arg(long)]
        target: Option<String>,
        #[arg(long, default_value_t = 3)]
        order: usize,
    },
    /// Volume class of the time-one map of a field
    Volume { field: String },
}

fn suite_names() -> clap::builder::PossibleValuesParser {
    std::iter::once("all").chain(suites::SUITES).collect::<Vec<_>>().into()
}

/// Outcome of a command before printing.
struct Output {
    input: Value,
    text: String,
    result: Value,
    anchor: &'static str,
    code: i32,
}

enum Failure {
    Parse(String),
    Domain { message: String, input: Value, anchor: &'static str },
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Parse(e.to_string())
    }
}

fn domain<'a>(input: &'a Value, anchor: &'static str) -> impl Fn(quatshear::Error) -> Failure + 'a {
    move |e| Failure::Domain { message: e.to_string(), input: input.clone(), anchor }
}

/// Witness text: positive terms first, holes as `h` when only the first
/// increment occurs.
fn show_h(p: &NCPoly) -> String {
    use num::Signed;
    let pos = p.filter(|w| p.coeff(w).is_positive());
    let mut s = if pos.is_zero() && p.is_zero() {
        "0".to_string()
    } else if pos.is_zero() {
        String::new()
    } else {
        format(&pos)
    };
    for (w, c) in p.terms().filter(|(_, c)| c.is_negative()) {
        let t = format(&NCPoly::term(w.clone(), -c.clone()));
        s = if s.is_empty() { format!("-{t}") } else { format!("{s} - {t}") };
    }
    if p.contains_letter(Letter::H2) {
        s
    } else {
        s.replace("h1", "h")
    }
}

/// Parse `args` (including the program name), run, print to `out` / `err`
/// and return the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_PARSE
                }
            };
        }
    };
    let json = cli.global.json;
    match execute(&cli.command, &cli.global, err) {
        Ok(o) => {
            if json {
                let v = json!({"input": o.input, "result": o.result, "paper_anchor": o.anchor});
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("serializable"));
            } else {
                let _ = write!(out, "{}", o.text);
            }
            o.code
        }
        Err(Failure::Parse(msg)) => {
            let _ = writeln!(err, "parse error: {msg}");
            EXIT_PARSE
        }
        Err(Failure::Domain { message, input, anchor }) => {
            if json {
                let v = json!({"input": input, "result": {"error": message}, "paper_anchor": anchor});
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("serializable"));
            } else {
                let _ = writeln!(out, "{message}");
            }
            EXIT_DOMAIN
        }
    }
}

fn ok(input: Value, text: String, result: Value, anchor: &'static str) -> Result<Output, Failure> {
    Ok(Output { input, text, result, anchor, code: EXIT_OK })
}

fn execute(cmd: &Command, g: &GlobalOpts, err: &mut dyn Write) -> Result<Output, Failure> {
    match cmd {
        Command::Eval { expr: e, z, w, t } => {
            const ANCHOR: &str = "canonical form in the free algebra over the quaternions";
            let p = expr::parse(e)?;
            let input = json!({"expr": e, "z": z, "w": w, "t": t});
            if z.is_none() && w.is_none() && t.is_none() {
                let s = format(&p);
                return ok(input, format!("{s}\n"), json!(s), ANCHOR);
            }
            let mut at = ExactBindings::new();
            if let Some(z) = z {
                at = at.with(Letter::Z, expr::parse_quaternion(z)?);
            }
            if let Some(w) = w {
                at = at.with(Letter::W, expr::parse_quaternion(w)?);
            }
            if let Some(t) = t {
                at = at.with_t(expr::parse_rational(t)?);
            }
            let v = format_quaternion(&p.eval_exact(&at).map_err(domain(&input, ANCHOR))?);
            ok(input, format!("{v}\n"), json!(v), ANCHOR)
        }
        Command::Dhat { expr: e, var, hole } => {
            const ANCHOR: &str = "slot-insertion derivative";
            let p = expr::parse(e)?;
            let var = match var {
                Var::Z => Letter::Z,
                Var::W => Letter::W,
            };
            let hole = match hole {
                Hole::H1 => Letter::H1,
                Hole::H2 => Letter::H2,
            };
            let input = json!({"expr": e, "var": var.name(), "hole": hole.name()});
            let d = format(&dhat(&p, var, hole).map_err(domain(&input, ANCHOR))?);
            ok(input, format!("{d}\n"), json!(d), ANCHOR)
        }
        Command::Div { field } => {
            const ANCHOR: &str = "divergence Div X[h] = dhat_z f[h] + dhat_w g[h], left h-linear";
            let x = expr::parse_field(field)?;
            let input = json!(field);
            let op = div_op(&x);
            match has_divergence(&x).divergence() {
                Some(d) => ok(input, format!("{}\n", format(d)), json!({"divergence": format(d), "operator": show_h(&op)}), ANCHOR),
                None => Err(Failure::Domain {
                    message: format!("no divergence: Div X[h] = {} is not left h-linear", show_h(&op)),
                    input,
                    anchor: ANCHOR,
                }),
            }
        }
        Command::Rot { field } => {
            const ANCHOR: &str = "rotor Rot X[h] = -dhat_z g[h] + dhat_w f[h], left h-linear";
            let x = expr::parse_field(field)?;
            let input = json!(field);
            let op = rot_op(&x);
            match has_rotor(&x).rotor() {
                Some(r) => ok(input, format!("{}\n", format(r)), json!({"rotor": format(r), "operator": show_h(&op)}), ANCHOR),
                None => Err(Failure::Domain {
                    message: format!("no rotor: Rot X[h] = {} is not left h-linear", show_h(&op)),
                    input,
                    anchor: ANCHOR,
                }),
            }
        }
        Command::Bf { expr: e } => {
            const ANCHOR: &str = "bidegree-full polynomials sum S_{p,q} a_{p,q}";
            let p = expr::parse(e)?;
            let input = json!(e);
            match is_bf(&p) {
                Ok(dec) => {
                    let terms: Vec<String> =
                        dec.coeffs.iter().map(|((a, b), c)| format!("S_{{{a},{b}}}*({})", format_quaternion(c))).collect();
                    let s = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
                    ok(input, format!("BF: {s}\n"), json!({"bf": true, "terms": terms}), ANCHOR)
                }
                Err(e) => Err(Failure::Domain { message: format!("not BF: {e}"), input, anchor: ANCHOR }),
            }
        }
        Command::Sheardecomp { field, zero_div } => {
            const ANCHOR: &str = "fields with divergence as sums of overshear and shear fields";
            let x = expr::parse_field(field)?;
            let input = json!({"field": field, "zero_div": zero_div});
            let dec = shear_decompose(&x, *zero_div).map_err(domain(&input, ANCHOR))?;
            let overshears: Vec<String> = dec.overshears.iter().map(|s| s.to_string()).collect();
            let shears: Vec<String> = dec.shears.iter().map(|s| s.to_string()).collect();
            let exact = dec.reconstruct() == x;
            let mut text = String::new();
            for s in overshears.iter().chain(&shears) {
                text.push_str(&format!("{s}\n"));
            }
            text.push_str(&format!("reconstruction: {}\n", if exact { "exact" } else { "MISMATCH" }));
            let mut o = ok(input, text, json!({"overshears": overshears, "shears": shears, "reconstructs": exact}), ANCHOR)?;
            if !exact {
                o.code = EXIT_VERIFY;
            }
            Ok(o)
        }
        Command::Flow { field, order } => {
            const ANCHOR: &str = "flow jet of dPhi/dt = X(Phi) by graded Picard iteration";
            let x = expr::parse_field(field)?;
            let input = json!({"field": field, "order": order});
            let phi = flow_jet(&x, *order);
            let (r1, r2) = verify_flow(&x, &phi);
            let mut text = String::new();
            let mut coeffs = Vec::new();
            for n in 0..=*order {
                let (a, b) = phi.t_coeff(n);
                let s = format!("{} ; {}", format(&a), format(&b));
                text.push_str(&format!("t^{n}: {s}\n"));
                coeffs.push(s);
            }
            let residual = format!("{} ; {}", format(&r1), format(&r2));
            text.push_str(&format!("residual mod t^{order}: {residual}\n"));
            let mut o = ok(input, text, json!({"coefficients": coeffs, "residual": residual}), ANCHOR)?;
            if !(r1.is_zero() && r2.is_zero()) {
                o.code = EXIT_VERIFY;
            }
            Ok(o)
        }
        Command::Detd { matrix } => {
            const ANCHOR: &str = "Dieudonne determinant of a 2x2 quaternionic matrix";
            let m = Mat2::from_rows(expr::parse_matrix(matrix)?);
            let rep = format_quaternion(&m.dieudonne_representative());
            let cayley = format_quaternion(&m.cayley_det());
            let det = m.dieudonne_det();
            let text = format!("det_D = {det}\nrepresentative = {rep}\ncayley ad - cb = {cayley}\n");
            ok(json!(matrix), text, json!({"det_d": det, "representative": rep, "cayley": cayley}), ANCHOR)
        }
        Command::Verify { suite } => {
            const ANCHOR: &str = "property suites over the algebraic identities";
            let names: Vec<&str> = if suite == "all" { suites::SUITES.to_vec() } else { vec![suite.as_str()] };
            let opts = suites::SuiteOptions { max_degree: g.max_degree, seed: g.seed };
            let input = json!({"suite": suite, "seed": g.seed, "max_degree": g.max_degree});
            let mut text = format!("{}\n", report::SCOPE_NOTE);
            let mut reports = Vec::new();
            let mut failed = false;
            for name in names {
                let r = suites::run_suite(name, opts, g.jobs).map_err(domain(&input, ANCHOR))?;
                let _ = writeln!(err, "suite {name}: wall time {:.2} s", r.wall_time.as_secs_f64());
                failed |= !r.passed();
                text.push_str(&r.render());
                reports.push(r.to_json());
            }
            text.push_str(if failed { "verification FAILED\n" } else { "verification passed\n" });
            let mut o = ok(input, text, json!({"scope": report::SCOPE_NOTE, "reports": reports}), ANCHOR)?;
            if failed {
                o.code = EXIT_VERIFY;
            }
            Ok(o)
        }
        Command::Obstruction { target, order } => {
            const ANCHOR: &str = "non-BF cubic terms versus compositions of real shears";
            let input = json!({"target": target, "order": order, "seed": g.seed});
            let report = match target {
                None => obstruction::obstruction_analysis(
                    &obstruction::exponential_target(6),
                    *order,
                    g.seed,
                    Some(&obstruction::exponential_reference),
                ),
                Some(t) => {
                    let x = expr::parse_field(t)?;
                    let d = g.max_degree.unwrap_or(x.degree().max(0) as usize);
                    obstruction::obstruction_analysis(&MapJet::new(x.f, x.g, d), *order, g.seed, None)
                }
            }
            .map_err(domain(&input, ANCHOR))?;
            let result = json!({
                "order": report.order,
                "order_term": format_field(&report.order_term),
                "examined": report.examined,
                "coordinates": report.examined_coords.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "achievable_rank": report.achievable_rank,
                "residual": report.residual.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "blocking_words": report.blocking_words,
                "identities_checked": report.identity_checks.len(),
                "identities_failed": report.identity_checks.iter().filter(|c| !c.passed).map(|c| c.name.clone()).collect::<Vec<_>>(),
                "function_rank": report.function_rank,
                "reference_error": report.reference_error,
            });
            let mut o = ok(input, obstruction::render(&report), result, ANCHOR)?;
            if !report.identities_hold() {
                o.code = EXIT_VERIFY;
            }
            Ok(o)
        }
        Command::Volume { field } => {
            const ANCHOR: &str = "automorphisms with volume and with volume 1";
            let x = expr::parse_field(field)?;
            let class = volume::aut_volume_report(&x);
            let div = match &class {
                volume::VolumeClass::AutV(d) => Some(format(d)),
                volume::VolumeClass::Aut1 => Some("0".to_string()),
                volume::VolumeClass::Neither => None,
            };
            ok(json!(field), format!("{class}\n"), json!({"class": class.label(), "divergence": div}), ANCHOR)
        }
    }
}
