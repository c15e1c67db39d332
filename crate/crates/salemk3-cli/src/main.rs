//! Command-line front end for the Salem / lattice-classification library.
//!
//! Exit codes: 0 when a result was computed (whatever the verdict), 1 for
//! usage errors (bad flags, malformed input), 2 when a computation could
//! not be completed (budget exhausted, invalid mathematical input).

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::process::ExitCode;

use salemk3::arith::{rat_int, small_primes};
use salemk3::classify::{
    bir_finiteness, classify_hk_sm, classify_k3_salem_automorphism, classify_k3_sm, entropy,
    quad_norm_solvable, rm_hk_exists, rm_k3_exists, HKType, RmFieldSpec, RmWitness,
};
use salemk3::numfield::{Involution, NumberField};
use salemk3::periods::{
    companion_isometry_check, period_from_rm, period_from_salem, verify_period, PeriodError,
};
use salemk3::qforms::{equivalent_over_q, named_form, NamedForm};
use salemk3::salem::{
    find_alpha_with_signature, salem_lambda, split_status, validate_salem, SalemPolynomial,
    SplitStatus,
};
use salemk3::selftest;
use salemk3::transfer::{
    check_transfer_det, check_transfer_det_reciprocal, transfer_hermitian_rank1,
    transfer_quadratic, DiagonalFormOverField, FieldKind,
};

mod input;
mod render;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Computation(String),
}

fn comp<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Computation(e.to_string())
}

#[derive(Parser)]
#[command(
    name = "salemk3",
    version,
    about = "Salem polynomials, trace-form transfers, and existence tests \
             for real and Salem multiplication on K3 and hyperkahler lattices"
)]
struct Cli {
    /// Emit machine-readable JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Largest prime enumerated when no explicit prime list is given
    #[arg(long, global = true, default_value_t = 50)]
    prime_bound: u64,

    /// Seeds tried in order when randomized period sampling fails
    #[arg(long, global = true, default_value_t = 1)]
    search_budget: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certify Salem polynomials and compute their invariants
    #[command(subcommand)]
    Salem(SalemCmd),
    /// Invariants and equivalence of rational quadratic forms
    #[command(subcommand)]
    Form(FormCmd),
    /// Trace-form transfers from number fields to Q
    #[command(subcommand)]
    Transfer(TransferCmd),
    /// Existence tests for real or Salem multiplication
    #[command(subcommand)]
    Classify(ClassifyCmd),
    /// Local solvability of x^2 - d y^2 = n over Q(sqrt d)
    Norm(NormArgs),
    /// Period points with exact residual certificates
    #[command(subcommand)]
    Period(PeriodCmd),
    /// Enclosure of the topological entropy log(lambda)
    Entropy(EntropyArgs),
    /// Run every built-in acceptance check
    Selftest,
}

#[derive(Subcommand)]
enum SalemCmd {
    /// Check the Salem conditions; lists each failed condition
    Validate {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Isolating interval for the Salem number lambda
    Lambda {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[arg(long, default_value_t = 64)]
        bits: u32,
    },
    /// Square class of the field discriminant from S(1) and S(-1)
    Disc {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Split / non-split behavior of the Salem field at finite primes
    Split {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        /// Comma-separated primes (default: all primes up to --prime-bound)
        #[arg(long)]
        primes: Option<String>,
    },
}

#[derive(Subcommand)]
enum FormCmd {
    /// Dimension, determinant class, signature, and Hasse set
    Invariants {
        #[arg(allow_hyphen_values = true)]
        form: String,
    },
    /// Rational equivalence via the complete invariant system
    Equiv {
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
    },
    /// Gram matrix and invariants of a named form
    Named {
        #[arg(allow_hyphen_values = true)]
        name: String,
        /// Parameter for families: I, -I, H^, BBF(kummer), BBF(k3n)
        #[arg(long)]
        n: Option<u32>,
    },
}

#[derive(Subcommand)]
enum TransferCmd {
    /// Transfer of a diagonal form over a totally real field
    Quad {
        /// Defining polynomial of the field
        #[arg(long)]
        field: String,
        /// Diagonal entries, e.g. "x,x,-x,-1" or "[1/2,1/26]"
        #[arg(long, allow_hyphen_values = true)]
        diag: String,
    },
    /// Transfer of the twisted hermitian rank-1 form over a Salem field
    Salem {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        /// Twist element fixed by x -> 1/x (default: signature (3, 2d-3))
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
    },
}

#[derive(Subcommand)]
enum ClassifyCmd {
    /// Salem multiplication on K3 surfaces, both flavors
    K3 {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Salem multiplication on a hyperkahler deformation type
    Hk {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        /// k3, kummer, k3n, og6, og10 (parenthesized parameter allowed)
        #[arg(long = "type")]
        hk_type: String,
        #[arg(long)]
        n: Option<u32>,
    },
    /// Real multiplication on K3 surfaces by degree and multiplicity
    RmK3 {
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        m: u32,
    },
    /// Real multiplication on a hyperkahler deformation type
    RmHk {
        #[arg(long = "type")]
        hk_type: String,
        #[arg(long)]
        n: Option<u32>,
        /// Real quadratic field Q(sqrt d), d squarefree
        #[arg(long, conflicts_with = "degree")]
        disc: Option<u64>,
        /// Unspecified totally real field of this degree
        #[arg(long)]
        degree: Option<u32>,
        #[arg(long)]
        m: u32,
        /// JSON file {"field": {"coeffs": [...]}, "alpha": [...]}
        #[arg(long)]
        witness: Option<String>,
    },
}

#[derive(Args)]
struct NormArgs {
    /// Squarefree d defining Q(sqrt d)
    #[arg(long)]
    disc: u64,
    /// Target rational value n
    #[arg(long, allow_hyphen_values = true)]
    value: String,
    /// Require n totally positive as well
    #[arg(long)]
    totally_positive: bool,
}

#[derive(Subcommand)]
enum PeriodCmd {
    /// Hodge period of a Salem-field twist, with exact residuals
    Salem {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(long, default_value_t = 53)]
        bits: u32,
    },
    /// Sampled period for a diagonal form over a totally real field
    Rm {
        #[arg(long)]
        field: String,
        #[arg(long, allow_hyphen_values = true)]
        diag: String,
        /// Index of the real embedding carrying the positive 2-plane
        #[arg(long)]
        sigma: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 64)]
        bits: u32,
    },
}

#[derive(Args)]
struct EntropyArgs {
    #[arg(allow_hyphen_values = true)]
    poly: String,
    #[arg(long, default_value_t = 64)]
    bits: u32,
}

struct Output {
    human: String,
    json: Value,
    exit: u8,
}

impl Output {
    fn ok(human: String, json: Value) -> Output {
        Output {
            human,
            json,
            exit: 0,
        }
    }
}

fn certify(arg: &str) -> Result<SalemPolynomial, CliError> {
    let p = input::resolve_poly(arg)?;
    validate_salem(&p).map_err(|defects| {
        let reasons: Vec<String> = defects.iter().map(|d| d.to_string()).collect();
        CliError::Computation(format!("not a Salem polynomial: {}", reasons.join("; ")))
    })
}

fn field_of(arg: &str) -> Result<NumberField, CliError> {
    NumberField::new(input::resolve_poly(arg)?).map_err(comp)
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Salem(cmd) => run_salem(cmd, cli),
        Command::Form(cmd) => run_form(cmd),
        Command::Transfer(cmd) => run_transfer(cmd),
        Command::Classify(cmd) => run_classify(cmd),
        Command::Norm(args) => run_norm(args),
        Command::Period(cmd) => run_period(cmd, cli),
        Command::Entropy(args) => run_entropy(args),
        Command::Selftest => run_selftest(),
    }
}

fn run_salem(cmd: &SalemCmd, cli: &Cli) -> Result<Output, CliError> {
    match cmd {
        SalemCmd::Validate { poly } => {
            let p = input::resolve_poly(poly)?;
            match validate_salem(&p) {
                Ok(s) => {
                    let lambda = salem_lambda(&s, 64);
                    let human = format!(
                        "valid Salem polynomial of degree {}\nlambda in {}\ndisc class {}\n",
                        s.degree(),
                        render::interval_human(&lambda),
                        s.disc_class()
                    );
                    Ok(Output::ok(
                        human,
                        json!({
                            "valid": true,
                            "poly": render::poly_json(s.poly()),
                            "degree": s.degree(),
                            "lambda": render::interval_json(&lambda),
                            "disc_class": render::square_class_json(s.disc_class()),
                        }),
                    ))
                }
                Err(defects) => {
                    let reasons: Vec<String> = defects.iter().map(|d| d.to_string()).collect();
                    let mut human = String::from("not a Salem polynomial:\n");
                    for r in &reasons {
                        let _ = writeln!(human, "  - {r}");
                    }
                    Ok(Output::ok(
                        human,
                        json!({ "valid": false, "reasons": reasons }),
                    ))
                }
            }
        }
        SalemCmd::Lambda { poly, bits } => {
            let s = certify(poly)?;
            let lambda = salem_lambda(&s, *bits);
            Ok(Output::ok(
                format!("lambda in {}\n", render::interval_human(&lambda)),
                json!({ "lambda": render::interval_json(&lambda), "bits": bits }),
            ))
        }
        SalemCmd::Disc { poly } => {
            let s = certify(poly)?;
            let one = s.poly().eval_rat(&rat_int(1));
            let minus_one = s.poly().eval_rat(&rat_int(-1));
            Ok(Output::ok(
                format!(
                    "S(1) = {}\nS(-1) = {}\ndisc class {}\n",
                    one,
                    minus_one,
                    s.disc_class()
                ),
                json!({
                    "s_at_1": one.to_string(),
                    "s_at_minus_1": minus_one.to_string(),
                    "disc_class": render::square_class_json(s.disc_class()),
                }),
            ))
        }
        SalemCmd::Split { poly, primes } => {
            let s = certify(poly)?;
            let ps: Vec<u64> = match primes {
                Some(list) => input::parse_primes(list)?,
                None => small_primes()
                    .iter()
                    .copied()
                    .take_while(|p| *p <= cli.prime_bound)
                    .collect(),
            };
            let mut rows = Vec::new();
            let mut human = String::new();
            for p in ps {
                let status = split_status(&s, &p.into()).map_err(comp)?;
                let word = match status {
                    SplitStatus::Split => "split",
                    SplitStatus::NonSplit => "nonsplit",
                    SplitStatus::Indeterminate => "indeterminate",
                };
                let _ = writeln!(human, "{p}: {word}");
                rows.push(json!({ "p": p, "status": word }));
            }
            Ok(Output::ok(human, Value::Array(rows)))
        }
    }
}

fn run_form(cmd: &FormCmd) -> Result<Output, CliError> {
    match cmd {
        FormCmd::Invariants { form } => {
            let f = input::resolve_form(form)?;
            let inv = f.invariants().map_err(comp)?;
            Ok(Output::ok(
                format!("{}\n", render::invariants_human(&inv)),
                render::invariants_json(&inv),
            ))
        }
        FormCmd::Equiv { left, right } => {
            let a = input::resolve_form(left)?;
            let b = input::resolve_form(right)?;
            let eq = equivalent_over_q(&a, &b).map_err(comp)?;
            let ia = a.invariants().map_err(comp)?;
            let ib = b.invariants().map_err(comp)?;
            let human = format!(
                "equivalent over Q: {}\nleft:  {}\nright: {}\n",
                if eq { "yes" } else { "no" },
                render::invariants_human(&ia),
                render::invariants_human(&ib)
            );
            Ok(Output::ok(
                human,
                json!({
                    "equivalent": eq,
                    "left": render::invariants_json(&ia),
                    "right": render::invariants_json(&ib),
                }),
            ))
        }
        FormCmd::Named { name, n } => {
            let full;
            let spec = match n {
                Some(k) => {
                    full = if name.eq_ignore_ascii_case("h") {
                        format!("H^{k}")
                    } else if name.to_ascii_lowercase().starts_with("bbf") && !name.contains('(') {
                        return Err(CliError::Usage(
                            "BBF families need the full name, e.g. BBF(kummer,2)".into(),
                        ));
                    } else {
                        format!("{name}({k})")
                    };
                    &full
                }
                None => name,
            };
            let named = NamedForm::parse(spec).map_err(|e| CliError::Usage(e.to_string()))?;
            let form = named_form(&named).map_err(comp)?;
            let inv = form.invariants().map_err(comp)?;
            let gram = form.gram();
            let human = format!(
                "{}\n{}",
                render::invariants_human(&inv),
                render::gram_human(&gram)
            );
            Ok(Output::ok(
                human,
                json!({
                    "gram": render::gram_json(&gram),
                    "invariants": render::invariants_json(&inv),
                }),
            ))
        }
    }
}

fn run_transfer(cmd: &TransferCmd) -> Result<Output, CliError> {
    match cmd {
        TransferCmd::Quad { field, diag } => {
            let f = field_of(field)?;
            let entries = input::parse_elements(&f, diag)?;
            let w = DiagonalFormOverField::new(f, entries).map_err(comp)?;
            let t = transfer_quadratic(&w).map_err(comp)?;
            let det_ok = check_transfer_det(&w, &t).map_err(comp)?;
            let gram = t.form.gram();
            let human = format!(
                "transfer of a rank-{} form over a degree-{} field\n{}\nclosed-form signature {}\ndeterminant check {}\n{}",
                w.rank(),
                w.field().degree(),
                render::invariants_human(&t.invariants),
                render::signature_human(t.closed_form_signature),
                if det_ok { "ok" } else { "FAILED" },
                render::gram_human(&gram)
            );
            Ok(Output::ok(
                human,
                json!({
                    "rank": w.rank(),
                    "field_degree": w.field().degree(),
                    "gram": render::gram_json(&gram),
                    "invariants": render::invariants_json(&t.invariants),
                    "closed_form_signature": render::signature_json(t.closed_form_signature),
                    "det_check": det_ok,
                }),
            ))
        }
        TransferCmd::Salem { poly, alpha } => {
            let s = certify(poly)?;
            let e = s.field().map_err(comp)?;
            let a = match alpha {
                Some(text) => input::parse_element(&e, text)?,
                None => find_alpha_with_signature(&s, 1).map_err(comp)?,
            };
            let t = transfer_hermitian_rank1(&s, &a).map_err(comp)?;
            let det_ok = check_transfer_det_reciprocal(&s, &t).map_err(comp)?;
            let gram = t.form.gram();
            let human = format!(
                "alpha = {}\n{}\nclosed-form signature {}\ndeterminant check {}\n{}",
                render::element_human(&a),
                render::invariants_human(&t.invariants),
                render::signature_human(t.closed_form_signature),
                if det_ok { "ok" } else { "FAILED" },
                render::gram_human(&gram)
            );
            Ok(Output::ok(
                human,
                json!({
                    "alpha": render::element_json(&a),
                    "gram": render::gram_json(&gram),
                    "invariants": render::invariants_json(&t.invariants),
                    "closed_form_signature": render::signature_json(t.closed_form_signature),
                    "det_check": det_ok,
                }),
            ))
        }
    }
}

fn hk_type_of(name: &str, n: Option<u32>) -> Result<HKType, CliError> {
    let full;
    let spec = match n {
        Some(k) => {
            full = format!("{name}({k})");
            &full
        }
        None => name,
    };
    HKType::parse(spec).map_err(|e| CliError::Usage(e.to_string()))
}

fn run_classify(cmd: &ClassifyCmd) -> Result<Output, CliError> {
    match cmd {
        ClassifyCmd::K3 { poly } => {
            let s = certify(poly)?;
            let sm = classify_k3_sm(&s);
            let auto = classify_k3_salem_automorphism(&s);
            let (_, note) = bir_finiteness(FieldKind::SM, false).map_err(comp)?;
            let human = format!(
                "salem multiplication:\n{}\nintegral automorphism:\n{}\nnote: {}\n",
                render::verdict_human(&sm),
                render::verdict_human(&auto),
                note
            );
            Ok(Output::ok(
                human,
                json!({
                    "sm": render::verdict_json(&sm),
                    "automorphism": render::verdict_json(&auto),
                }),
            ))
        }
        ClassifyCmd::Hk { poly, hk_type, n } => {
            let s = certify(poly)?;
            let t = hk_type_of(hk_type, *n)?;
            let v = classify_hk_sm(&s, &t).map_err(comp)?;
            Ok(Output::ok(
                format!("type {t}, rank {}\n{}", t.capacity(), render::verdict_human(&v)),
                render::verdict_json(&v),
            ))
        }
        ClassifyCmd::RmK3 { degree, m } => {
            let v = rm_k3_exists(*degree, *m).map_err(comp)?;
            Ok(Output::ok(render::verdict_human(&v), render::verdict_json(&v)))
        }
        ClassifyCmd::RmHk {
            hk_type,
            n,
            disc,
            degree,
            m,
            witness,
        } => {
            let t = hk_type_of(hk_type, *n)?;
            let field = match (disc, degree) {
                (Some(d), None) => RmFieldSpec::Quadratic(*d),
                (None, Some(k)) => RmFieldSpec::Degree(*k),
                _ => {
                    return Err(CliError::Usage(
                        "give exactly one of --disc or --degree".into(),
                    ))
                }
            };
            let w = match witness {
                Some(path) => {
                    let (f, coords) = input::resolve_witness(path)?;
                    let alpha = f.from_coords(coords);
                    Some(RmWitness { field: f, alpha })
                }
                None => None,
            };
            let v = rm_hk_exists(&t, &field, *m, w.as_ref()).map_err(comp)?;
            Ok(Output::ok(render::verdict_human(&v), render::verdict_json(&v)))
        }
    }
}

fn run_norm(args: &NormArgs) -> Result<Output, CliError> {
    let n = input::parse_rational(&args.value)?;
    let v = quad_norm_solvable(args.disc, &n, args.totally_positive).map_err(comp)?;
    Ok(Output::ok(render::verdict_human(&v), render::verdict_json(&v)))
}

fn run_period(cmd: &PeriodCmd, cli: &Cli) -> Result<Output, CliError> {
    match cmd {
        PeriodCmd::Salem { poly, alpha, bits } => {
            let s = certify(poly)?;
            let e = s.field().map_err(comp)?;
            let a = match alpha {
                Some(text) => input::parse_element(&e, text)?,
                None => find_alpha_with_signature(&s, 1).map_err(comp)?,
            };
            let p = period_from_salem(&s, &a, *bits).map_err(comp)?;
            let gram = e
                .trace_form_gram(&a, Involution::Reciprocal)
                .map_err(comp)?;
            let report = verify_period(&p, &gram, 1e-9);
            let isometry = companion_isometry_check(&s, &a).map_err(comp)?;
            let human = format!(
                "alpha = {}\n{}{}companion isometry: {}\n",
                render::element_human(&a),
                render::period_human(&p),
                render::report_human(&report),
                if isometry { "exact" } else { "FAILED" }
            );
            Ok(Output::ok(
                human,
                json!({
                    "alpha": render::element_json(&a),
                    "period": render::period_json(&p),
                    "checks": render::report_json(&report),
                    "companion_isometry": isometry,
                }),
            ))
        }
        PeriodCmd::Rm {
            field,
            diag,
            sigma,
            seed,
            bits,
        } => {
            let f = field_of(field)?;
            let entries = input::parse_elements(&f, diag)?;
            let w = DiagonalFormOverField::new(f, entries).map_err(comp)?;
            let attempts = cli.search_budget.max(1);
            let mut last: Option<PeriodError> = None;
            let mut found = None;
            for k in 0..attempts {
                match period_from_rm(&w, *sigma, seed + k, *bits) {
                    Ok(p) => {
                        found = Some((p, seed + k));
                        break;
                    }
                    Err(e @ PeriodError::SamplingFailed { .. }) => last = Some(e),
                    Err(e) => return Err(comp(e)),
                }
            }
            let (p, used_seed) =
                found.ok_or_else(|| comp(last.expect("at least one attempt runs")))?;
            let t = transfer_quadratic(&w).map_err(comp)?;
            let report = verify_period(&p, &t.form.gram(), 1e-9);
            let human = format!(
                "seed {}\n{}{}",
                used_seed,
                render::period_human(&p),
                render::report_human(&report)
            );
            Ok(Output::ok(
                human,
                json!({
                    "seed": used_seed,
                    "period": render::period_json(&p),
                    "checks": render::report_json(&report),
                }),
            ))
        }
    }
}

fn run_entropy(args: &EntropyArgs) -> Result<Output, CliError> {
    let s = certify(&args.poly)?;
    let h = entropy(&s, args.bits);
    Ok(Output::ok(
        format!("log lambda in {}\n", render::interval_human(&h)),
        json!({ "entropy": render::interval_json(&h), "bits": args.bits }),
    ))
}

fn run_selftest() -> Result<Output, CliError> {
    let outcomes = selftest::run_all();
    let all_pass = outcomes.iter().all(|o| o.pass);
    let rows: Vec<Value> = outcomes
        .iter()
        .map(|o| json!({ "name": o.name, "pass": o.pass, "detail": o.detail }))
        .collect();
    Ok(Output {
        human: selftest::render(&outcomes),
        json: json!({ "pass": all_pass, "checks": rows }),
        exit: if all_pass { 0 } else { 2 },
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", out.json);
            } else {
                print!("{}", out.human);
                if !out.human.ends_with('\n') {
                    println!();
                }
            }
            ExitCode::from(out.exit)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Computation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
