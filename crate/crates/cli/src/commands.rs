//! One function per subcommand.

use std::io::Write;

use bwb_core::charring::{evaluate_at_torus, freudenthal_multiplicities, FormalCharacter};
use bwb_core::dsl::{eval_str, Value as DslValue};
use bwb_core::index::{gh_index, gh_oracle_index, kostant_pairing, ShellOracle};
use bwb_core::mckean::{t_independence_report, Supertrace};
use bwb_core::weight::{parse_rational, parse_weight};
use bwb_core::weyl::enumerate_weyl_group_with;
use bwb_core::{bwb_index, Error as CoreError, IndexResult, Rational, Subsystem, Weight};
use bwb_dirac::{DiracModel, KernelInfo};
use serde_json::{json, Value};

use crate::config::Format;
use crate::render::{emit, rational};
use crate::{Command, Context, Failure};

type Outcome = Result<(), Failure>;

fn io(e: std::io::Error) -> Failure {
    Failure::domain(format!("write failed: {e}"))
}

fn print(out: &mut dyn Write, ctx: &Context, value: &Value) -> Outcome {
    writeln!(out, "{}", emit(value, ctx.format)).map_err(io)
}

/// Parses `--mu`-style labels. Malformed text is a usage error; a value of
/// the wrong rank or a non-integral value is a domain error.
fn weight_arg(ctx: &Context, flag: &str, text: &str) -> Result<Weight, Failure> {
    let w = parse_weight(text).map_err(|_| Failure::usage(format!("--{flag}: cannot parse '{text}' as comma-separated labels")))?;
    w.check_rank(ctx.rs.rank())?;
    if !w.is_integral() {
        return Err(CoreError::NonIntegral.into());
    }
    Ok(w)
}

fn radius_arg(ctx: &Context, text: Option<&str>, mu: &Weight) -> Result<Rational, Failure> {
    match text {
        Some(t) => parse_rational(t).map_err(|_| Failure::usage(format!("--radius-sq: cannot parse '{t}'"))),
        None => Ok(ctx.rs.norm_sq(&(mu + ctx.rs.rho()))?),
    }
}

fn floats_arg(flag: &str, text: &str) -> Result<Vec<f64>, Failure> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| Failure::usage(format!("--{flag}: cannot parse '{s}' as a number")))
        })
        .collect()
}

pub fn dispatch(cmd: &Command, ctx: &Context, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Rootsys { .. } => rootsys(ctx, out),
        Command::Index { mu, .. } => index(ctx, mu, out),
        Command::Verify { box_size, .. } => verify(ctx, *box_size, out),
        Command::Pairing { lambda, mu, .. } => pairing(ctx, lambda, mu, out),
        Command::Supertrace { mu, ts, theta, radius_sq, .. } => {
            supertrace(ctx, mu, ts, theta.as_deref(), radius_sq.as_deref(), out)
        }
        Command::Dirac { mu, lambda, radius_sq, .. } => {
            dirac(ctx, mu, lambda.as_deref(), radius_sq.as_deref(), out, err)
        }
        Command::GhIndex { sub, mu, check, .. } => gh(ctx, sub, mu, *check, out),
        Command::Eval { expr, .. } => eval(ctx, expr, out),
    }
}

fn rootsys(ctx: &Context, out: &mut dyn Write) -> Outcome {
    let rs = &ctx.rs;
    let style = ctx.style();
    let order = match enumerate_weyl_group_with(rs, &ctx.config.limits()) {
        Ok(group) => json!(group.len()),
        Err(CoreError::CapExceeded { .. }) => Value::Null,
        Err(e) => return Err(e.into()),
    };
    let value = json!({
        "type": rs.cartan_type().to_string(),
        "rank": rs.rank(),
        "cartan_matrix": rs.cartan_matrix(),
        "gram": rs.gram().iter().map(|row| row.iter().map(rational).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "simple_root_norms": rs.simple_root_norms().iter().map(rational).collect::<Vec<_>>(),
        "positive_roots": rs.positive_roots().iter().map(|a| style.weight(a)).collect::<Vec<_>>(),
        "positive_root_count": rs.positive_roots().len(),
        "rho": style.weight(rs.rho()),
        "dimension": rs.rank() + 2 * rs.positive_roots().len(),
        "weyl_group_order": order,
    });
    print(out, ctx, &value)
}

fn index(ctx: &Context, mu: &str, out: &mut dyn Write) -> Outcome {
    let mu = weight_arg(ctx, "mu", mu)?;
    let r = bwb_index(&ctx.rs, &mu)?;
    print(out, ctx, &ctx.style().index(&r))
}

/// All integral weights with labels in `[-n, n]`, last coordinate fastest.
fn label_box(rank: usize, n: i64) -> Vec<Weight> {
    let mut out = Vec::new();
    let mut labels = vec![-n; rank];
    loop {
        out.push(Weight::from_ints(&labels));
        let mut k = rank;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if labels[k] < n {
                labels[k] += 1;
                break;
            }
            labels[k] = -n;
        }
    }
}

fn verify(ctx: &Context, n: i64, out: &mut dyn Write) -> Outcome {
    if n < 0 {
        return Err(Failure::usage("--box must be non-negative"));
    }
    let rs = &ctx.rs;
    let style = ctx.style();
    let mut oracle = ShellOracle::with_limits(rs, ctx.config.limits())?;
    let weights = label_box(rs.rank(), n);
    let mut mismatches = 0usize;
    for mu in &weights {
        let closed = bwb_index(rs, mu)?;
        let brute = match oracle.index(mu) {
            Ok(r) => r,
            Err(e) if e.is_consistency() => {
                mismatches += 1;
                writeln!(out, "mismatch at mu={}: {e}", style.weight(mu)).map_err(io)?;
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        if closed != brute {
            mismatches += 1;
            writeln!(
                out,
                "mismatch at mu={}: closed form {} oracle {}",
                style.weight(mu),
                style.index(&closed),
                style.index(&brute)
            )
            .map_err(io)?;
        }
    }
    if mismatches == 0 {
        writeln!(out, "checked {} weights: all match", weights.len()).map_err(io)
    } else {
        writeln!(out, "checked {} weights: {} mismatches", weights.len(), mismatches).map_err(io)?;
        Err(Failure::consistency(format!("{mismatches} weights disagree with the oracle")))
    }
}

fn pairing(ctx: &Context, lambda: &str, mu: &str, out: &mut dyn Write) -> Outcome {
    let lambda = weight_arg(ctx, "lambda", lambda)?;
    let mu = weight_arg(ctx, "mu", mu)?;
    let (plus, minus) = kostant_pairing(&ctx.rs, &lambda, &mu)?;
    let value = json!({ "plus": plus, "minus": minus, "difference": plus - minus });
    print(out, ctx, &value)
}

fn supertrace(
    ctx: &Context,
    mu: &str,
    ts: &str,
    theta: Option<&str>,
    radius_sq: Option<&str>,
    out: &mut dyn Write,
) -> Outcome {
    let rs = &ctx.rs;
    let mu = weight_arg(ctx, "mu", mu)?;
    let ts = floats_arg("ts", ts)?;
    if ts.iter().any(|&t| t <= 0.0) {
        return Err(Failure::domain("times must be positive"));
    }
    let theta = match theta {
        Some(text) => floats_arg("theta", text)?,
        None => vec![0.0; rs.rank()],
    };
    if theta.len() != rs.rank() {
        return Err(CoreError::DimensionMismatch { expected: rs.rank(), found: theta.len() }.into());
    }
    let radius = radius_arg(ctx, radius_sq, &mu)?;
    let (values, deviation) = if ts.len() >= 2 {
        let report = t_independence_report(rs, &mu, &theta, &ts, radius)?;
        (report.values, report.max_relative_deviation)
    } else {
        let st = Supertrace::new(rs, &mu, radius)?;
        (vec![st.evaluate(&theta, ts[0])?], 0.0)
    };
    let expected = match bwb_index(rs, &mu)? {
        IndexResult::Zero => evaluate_at_torus(&FormalCharacter::zero(rs.rank()), &theta)?,
        IndexResult::Irreducible { sign, lambda, .. } => {
            evaluate_at_torus(&freudenthal_multiplicities(rs, &lambda)?, &theta)? * sign as f64
        }
    };
    let tol = ctx.config.supertrace_tol;
    let scale = expected.norm().max(1.0);
    let worst = values.iter().map(|v| (v - expected).norm() / scale).fold(0.0, f64::max);
    let rows: Vec<Value> = ts
        .iter()
        .zip(&values)
        .map(|(t, v)| json!({ "t": t, "value_re": v.re, "value_im": v.im }))
        .collect();
    let value = json!({
        "mu": ctx.style().weight(&mu),
        "radius_sq": rational(&radius),
        "rows": rows,
        "max_relative_deviation": deviation,
        "expected_re": expected.re,
        "expected_im": expected.im,
    });
    print(out, ctx, &value)?;
    if deviation > tol {
        return Err(Failure::consistency(format!("supertrace varies with t: relative deviation {deviation:e}")));
    }
    if worst > tol {
        return Err(Failure::consistency(format!("supertrace differs from the index character by {worst:e}")));
    }
    Ok(())
}

fn kernel_json(k: &KernelInfo) -> Value {
    json!({ "dim": k.dim, "parity": k.parity(), "degrees": k.degrees })
}

#[allow(clippy::too_many_arguments)]
fn dirac_row(
    ctx: &Context,
    lambda: &Weight,
    space_dim: usize,
    even_dim: usize,
    odd_dim: usize,
    scalar: &Rational,
    max_dev: f64,
    kernel: &KernelInfo,
) -> Value {
    json!({
        "lambda": ctx.style().weight(lambda),
        "space_dim": space_dim,
        "even_dim": even_dim,
        "odd_dim": odd_dim,
        "scalar": scalar.to_string(),
        "max_dev": max_dev,
        "kernel": kernel_json(kernel),
    })
}

fn dirac(
    ctx: &Context,
    mu: &str,
    lambda: Option<&str>,
    radius_sq: Option<&str>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    let rs = &ctx.rs;
    let mu = weight_arg(ctx, "mu", mu)?;
    let model = DiracModel::new(rs)?
        .with_dim_cap(ctx.config.matrix_dim_cap)
        .with_kernel_tolerance(ctx.config.kernel_tol);
    let tol = ctx.config.hermiticity_tol;
    let mut problems = Vec::new();
    let mut rows = Vec::new();
    let mut check = |lambda: &Weight, herm: f64, odd: f64, dev: f64, kernel: &KernelInfo| {
        let at = ctx.style().weight(lambda);
        if herm > tol {
            problems.push(format!("lambda={at}: D is not Hermitian ({herm:e})"));
        }
        if odd > tol {
            problems.push(format!("lambda={at}: D is not odd ({odd:e})"));
        }
        if dev > tol {
            problems.push(format!("lambda={at}: D^2 deviates from a scalar by {dev:e}"));
        }
        if !kernel.borderline.is_empty() {
            let _ = writeln!(err, "warning: lambda={at}: singular values {:?} near the kernel threshold", kernel.borderline);
        }
    };

    if let Some(text) = lambda {
        let lambda = weight_arg(ctx, "lambda", text)?;
        let dm = model.dirac(&lambda, &mu)?;
        let scalar = model.predicted_square(&lambda, &mu)?;
        let dev = dm.square_deviation(rational_f64(&scalar));
        let kernel = dm.kernel_with(ctx.config.kernel_tol);
        check(&lambda, dm.hermitian_defect(), dm.grading_defect(), dev, &kernel);
        rows.push(dirac_row(ctx, &lambda, dm.space_dim, dm.even_dim, dm.odd_dim, &scalar, dev, &kernel));
    } else {
        let radius = radius_arg(ctx, radius_sq, &mu)?;
        let report = model.kernel_report(&mu, radius)?;
        for e in &report.entries {
            check(&e.lambda, e.hermitian_dev, e.odd_dev, e.max_dev, &e.kernel);
            rows.push(dirac_row(ctx, &e.lambda, e.space_dim, e.even_dim, e.odd_dim, &e.scalar, e.max_dev, &e.kernel));
        }
        let expected = bwb_index(rs, &mu)?;
        let want = expected.dimension().unwrap_or(0);
        if report.total_kernel_dim != want {
            problems.push(format!("total kernel dimension {} but the index has dimension {want}", report.total_kernel_dim));
        }
        if let Some(length) = expected.length() {
            let slot = if length % 2 == 0 { "even" } else { "odd" };
            for e in report.entries.iter().filter(|e| e.kernel.dim > 0) {
                let at = ctx.style().weight(&e.lambda);
                if e.kernel.parity() != slot {
                    problems.push(format!("lambda={at}: kernel parity {} but length {length}", e.kernel.parity()));
                }
                if e.kernel.degrees.iter().any(|&d| d != length) {
                    problems.push(format!("lambda={at}: kernel degrees {:?} but length {length}", e.kernel.degrees));
                }
            }
        }
    }
    match ctx.format {
        Format::Json => {
            for row in &rows {
                print(out, ctx, row)?;
            }
        }
        Format::Table => print(out, ctx, &Value::Array(rows))?,
    }
    if problems.is_empty() {
        Ok(())
    } else {
        Err(Failure::consistency(problems.join("; ")))
    }
}

fn rational_f64(q: &Rational) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

fn gh(ctx: &Context, sub: &str, mu: &str, check: bool, out: &mut dyn Write) -> Outcome {
    let rs = &ctx.rs;
    let mut simple = Vec::new();
    for part in sub.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match part.parse::<usize>() {
            Ok(i) if (1..=rs.rank()).contains(&i) => simple.push(i - 1),
            _ => {
                return Err(Failure::usage(format!(
                    "--sub: '{part}' is not a simple root index in 1..={}",
                    rs.rank()
                )))
            }
        }
    }
    let sub = if simple.is_empty() { Subsystem::torus() } else { Subsystem::levi(rs, &simple)? };
    let mu = weight_arg(ctx, "mu", mu)?;
    let r = gh_index(rs, &sub, &mu)?;
    print(out, ctx, &ctx.style().index(&r))?;
    if check {
        let oracle = gh_oracle_index(rs, &sub, &mu)?;
        if oracle != r {
            return Err(Failure::consistency(format!(
                "closed form {} disagrees with the H-oracle {}",
                ctx.style().index(&r),
                ctx.style().index(&oracle)
            )));
        }
    }
    Ok(())
}

fn eval(ctx: &Context, expr: &str, out: &mut dyn Write) -> Outcome {
    let v = eval_str(&ctx.rs, expr)?;
    let style = ctx.style();
    let value = match &v {
        DslValue::Character(c) => style.character(c),
        DslValue::Integer(n) => json!(n),
        DslValue::Index(r) => style.index(r),
    };
    print(out, ctx, &json!({ "result_kind": v.kind(), "value": value }))
}
