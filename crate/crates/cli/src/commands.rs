use std::fs;
use std::path::Path;

use fpoly::admissible::{
    d3_decompose, d3_decompose_components, d3_split, kernel_equals_sigma_check,
    level_via_derivations, levelder_decompose, monomials_up_to, LevelDerOutcome,
};
use fpoly::bounded::{
    c_membership, cleared_span_element, cusp_counterexample_check, BoundedSubring, CMembership,
};
use fpoly::demo::{flat_gap, intro_example};
use fpoly::frobfactor::{f4_decompose, frobenius, level, phi, sigma};
use fpoly::hahn::{aleph1_failure_check, hahn_invert_truncated, shift_into_a_check};
use fpoly::parse::{parse_field, parse_field_list, parse_gamma, parse_hahn, parse_poly};
use fpoly::{random, Coefficient, FieldCtx, GammaExp, HahnElement, HasseDerivative, Prime, RatFunc, XPoly};
use serde_json::{json, Value};

use crate::report::{Report, EXIT_INCONCLUSIVE, EXIT_NEGATIVE};
use crate::{Cli, Command, DemoCommand, GlobalOpts, HahnCommand, RingArg};
use crate::{MAX_HAHN_INDEX, MAX_TVARS, MAX_XVARS};

type CResult<T> = Result<T, String>;

/// Random samples drawn for `check-c` when no file is given.
const DEFAULT_SAMPLES: usize = 5;

pub fn run(cli: &Cli) -> CResult<Report> {
    let g = &cli.global;
    match &cli.command {
        Command::Phi { expr } => unary(g, "phi", expr, phi),
        Command::Sigma { expr } => unary(g, "sigma", expr, sigma),
        Command::Frobenius { expr } => unary(g, "frobenius", expr, frobenius),
        Command::Level { expr } => {
            let src = read_expr(g, expr)?;
            let (ctx, n) = setup(g, &[&src], 0, 0)?;
            let f = poly(&ctx, n, &src)?;
            let lev = level(&f);
            let mut r = Report::new("level", src, lev.to_string());
            if level_via_derivations(&f) != lev {
                r = r.diagnostic("derivative test disagrees with sigma preimages");
            }
            Ok(r)
        }
        Command::Hasse { var, order, expr } => {
            let src = read_expr(g, expr)?;
            let (ctx, n) = setup(g, &[&src], 0, *var)?;
            if *var == 0 {
                return Err("--var must be at least 1".into());
            }
            let f = poly(&ctx, n, &src)?;
            let d = HasseDerivative::new(*var).apply(*order, &f);
            Ok(Report::new("hasse", src, d.to_string()))
        }
        Command::D3 { expr, eps } => d3(g, expr, eps),
        Command::F4 { expr, eps } => {
            let src = read_expr(g, expr)?;
            let (ctx, n) = setup(g, &[&src, eps], 0, 0)?;
            let f = poly(&ctx, n, &src)?;
            let eps_v = field_list(&ctx, eps)?;
            let input = json!({"expr": src, "eps": eps});
            Ok(match f4_decompose(&f, &eps_v) {
                Ok(parts) => parts
                    .iter()
                    .enumerate()
                    .fold(Report::new("f4", input, "member"), |r, (j, h)| {
                        r.witness(&format!("h{}", j + 1), h.to_string())
                    }),
                Err(e) => Report::new("f4", input, "not-member")
                    .diagnostic(e.to_string())
                    .exit(EXIT_NEGATIVE),
            })
        }
        Command::Levelder { expr, eps, r } => {
            let src = read_expr(g, expr)?;
            let (ctx, n) = setup(g, &[&src, eps], 0, 0)?;
            let f = poly(&ctx, n, &src)?;
            let eps_v = field_list(&ctx, eps)?;
            let input = json!({"expr": src, "eps": eps, "r": r});
            Ok(match levelder_decompose(&f, &eps_v, *r).map_err(|e| e.to_string())? {
                LevelDerOutcome::Witness { c, b } => b.iter().enumerate().fold(
                    Report::new("levelder", input, "member").witness("c", c.to_string()),
                    |rep, (j, bj)| rep.witness(&format!("b{}", j + 1), bj.to_string()),
                ),
                LevelDerOutcome::HypothesisFailed { var } => {
                    Report::new("levelder", input, "hypothesis-failed")
                        .diagnostic(format!("derivative in x{var} is outside sum eps_j R^p"))
                        .exit(EXIT_NEGATIVE)
                }
            })
        }
        Command::KernelCheck { vars, deg, coeffs } => {
            let pool_src = coeffs.clone().unwrap_or_default();
            let (ctx, _) = setup(g, &[&pool_src], 0, *vars)?;
            let pool = match coeffs {
                Some(c) => field_list(&ctx, c)?,
                None => (0..ctx.p.get() as i64).map(|i| ctx.int(i)).collect(),
            };
            let support = monomials_up_to(*vars, *deg);
            let input = json!({"vars": vars, "deg": deg, "coeffs": pool.iter().map(|c| c.to_string()).collect::<Vec<_>>()});
            let rep = kernel_equals_sigma_check(&ctx, &support, &pool, g.cap as u128)
                .map_err(|e| e.to_string())?;
            let mut out = Report::new("kernel-check", input, if rep.holds() { "holds" } else { "fails" })
                .witness("checked", rep.checked.to_string());
            if let Some(f) = rep.counterexample {
                out = out
                    .diagnostic(format!("kernel and image differ on {f}"))
                    .exit(EXIT_NEGATIVE);
            }
            Ok(out)
        }
        Command::CheckC {
            ring,
            n,
            b,
            eps,
            sample,
        } => check_c(g, *ring, *n, b, eps, sample.as_deref()),
        Command::CuspWitness { n, b } => {
            let p = prime(g)?;
            if *n == 0 || *n + 1 > MAX_TVARS {
                return Err(format!("--n must lie in 1..={}", MAX_TVARS - 1));
            }
            let ctx = FieldCtx::new(p, *n);
            let bv = field(&ctx, b)?;
            let ok = cusp_counterexample_check(*n, &bv).map_err(|e| e.to_string())?;
            let input = json!({"n": n, "b": b});
            let target = format!("t{}", n + 1);
            Ok(if ok {
                Report::new("cusp-witness", input, "confirmed")
                    .witness("b_times_t", format!("{bv}*{target}"))
                    .diagnostic(format!("{target}^{p} is not in b^-{p} A^{p}"))
            } else {
                Report::new("cusp-witness", input, "not-confirmed").exit(EXIT_NEGATIVE)
            })
        }
        Command::Hahn { command } => hahn(g, command),
        Command::Demo { command } => demo(g, command),
    }
}

fn unary(g: &GlobalOpts, name: &str, expr: &Option<String>, op: fn(&XPoly) -> XPoly) -> CResult<Report> {
    let src = read_expr(g, expr)?;
    let (ctx, n) = setup(g, &[&src], 0, 0)?;
    let f = poly(&ctx, n, &src)?;
    Ok(Report::new(name, src, op(&f).to_string()))
}

fn d3(g: &GlobalOpts, expr: &Option<String>, eps: &str) -> CResult<Report> {
    let src = read_expr(g, expr)?;
    let (ctx, n) = setup(g, &[&src, eps], 0, 0)?;
    let f = poly(&ctx, n, &src)?;
    let eps_v = field_list(&ctx, eps)?;
    let input = json!({"expr": src, "eps": eps});
    let (witness, note) = if f.is_homogeneous() {
        (d3_decompose(&f, &eps_v).map_err(|e| e.to_string())?, None)
    } else {
        (
            d3_decompose_components(&f, &eps_v),
            Some("input split into homogeneous components".to_string()),
        )
    };
    let mut rep = match witness {
        Some(w) => w.g.iter().enumerate().fold(
            Report::new("d3", input, "member").witness("h", w.h.to_string()),
            |r, (j, gj)| r.witness(&format!("g{}", j + 1), gj.to_string()),
        ),
        None => {
            let m = d3_split(&f, &eps_v).err();
            let msg = m.map_or_else(
                || "no decomposition".to_string(),
                |m| format!("coefficient of {m} is outside the k^p-span of eps"),
            );
            Report::new("d3", input, "not-member")
                .diagnostic(msg)
                .exit(EXIT_NEGATIVE)
        }
    };
    if let (Some(note), None) = (note, &rep.diagnostic) {
        rep = rep.diagnostic(note);
    }
    Ok(rep)
}

fn check_c(
    g: &GlobalOpts,
    ring: RingArg,
    n: usize,
    b: &str,
    eps: &str,
    sample: Option<&Path>,
) -> CResult<Report> {
    let sample_text = match sample {
        Some(path) => fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?,
        None => String::new(),
    };
    let (ctx, _) = setup(g, &[b, eps, &sample_text], n, 0)?;
    let ring_v = match ring {
        RingArg::Poly => BoundedSubring::poly(n),
        RingArg::Cusp => BoundedSubring::cusp(n),
    };
    let bv = field(&ctx, b)?;
    let eps_v = field_list(&ctx, eps)?;
    let samples: Vec<RatFunc> = if sample.is_some() {
        sample_text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| field(&ctx, l))
            .collect::<CResult<_>>()?
    } else {
        random_samples(g.seed, &ctx, &ring_v, &eps_v)
    };
    let mut verdicts = Vec::new();
    let mut exit = 0;
    for a in &samples {
        let out = c_membership(&ring_v, &eps_v, a, &bv, g.cap as usize).map_err(|e| e.to_string())?;
        exit = exit.max(match out.exit_code() {
            1 => 2,
            3 => 1,
            _ => 0,
        });
        let entry = match &out {
            CMembership::Verified(l) => json!({"a": a.to_string(), "lambda": l.iter().map(|x| x.to_string()).collect::<Vec<_>>()}),
            CMembership::Refuted => json!({"a": a.to_string(), "verdict": "refuted"}),
            CMembership::Inconclusive => json!({"a": a.to_string(), "verdict": "inconclusive"}),
        };
        verdicts.push(entry);
    }
    let (result, code) = match exit {
        0 => ("verified", 0),
        1 => ("inconclusive", EXIT_INCONCLUSIVE),
        _ => ("refuted", EXIT_NEGATIVE),
    };
    let input = json!({"ring": format!("{}", ring_v.kind), "n": n, "b": b, "eps": eps});
    Ok(Report::new("check-c", input, result)
        .witness("samples", Value::Array(verdicts))
        .exit(code))
}

/// Elements of `A ∩ Σ ε_j K^p`: a cleared span element, multiplied by
/// `(t1..tn)^{2p}` for the cusp ring.
fn random_samples(seed: u64, ctx: &FieldCtx, ring: &BoundedSubring, eps: &[RatFunc]) -> Vec<RatFunc> {
    let mut rng = random::seeded(seed);
    let small = FieldCtx::new(ctx.p, ring.n);
    let p = ctx.p.get();
    let mut push = ctx.one();
    for i in 1..=ring.n {
        push = &push * &ctx.t(i).expect("n <= m").pow(2 * p);
    }
    let mut out = Vec::new();
    while out.len() < DEFAULT_SAMPLES {
        let mu: Vec<RatFunc> = eps
            .iter()
            .map(|_| {
                random::ratfunc(&mut rng, &small, 2)
                    .with_nvars(ctx.m)
                    .expect("fewer variables")
            })
            .collect();
        let a = cleared_span_element(ctx, eps, &mu);
        if a.is_zero() {
            continue;
        }
        out.push(if matches!(ring.kind, fpoly::bounded::RingKind::Cusp) {
            &a * &push
        } else {
            a
        });
    }
    out
}

fn hahn(g: &GlobalOpts, command: &HahnCommand) -> CResult<Report> {
    let p = prime(g)?;
    if g.hahn_index == 0 || g.hahn_index > MAX_HAHN_INDEX {
        return Err(format!("--hahn-index must lie in 1..={MAX_HAHN_INDEX}"));
    }
    let parse = |src: &str| -> CResult<HahnElement> {
        let h = parse_hahn(p, src).map_err(|e| e.to_string())?;
        check_index(h.max_index(), g.hahn_index)?;
        Ok(h)
    };
    match command {
        HahnCommand::Invert { expr, terms } => {
            let src = read_expr(g, expr)?;
            let h = parse(&src)?;
            let inv = hahn_invert_truncated(&h, *terms).map_err(|e| e.to_string())?;
            let err = inv
                .error_valuation
                .as_ref()
                .map_or("none".to_string(), GammaExp::to_string);
            let adequate = inv.is_adequate();
            Ok(Report::new("hahn invert", json!({"g": src, "terms": terms}), inv.value.to_string())
                .witness("residual", inv.residual.to_string())
                .witness("error_valuation", err)
                .witness("adequate", adequate)
                .exit(if adequate { 0 } else { EXIT_NEGATIVE }))
        }
        HahnCommand::ShiftCheck { expr, delta, terms } => {
            let src = read_expr(g, expr)?;
            let h = parse(&src)?;
            let d = parse_gamma(delta).map_err(|e| e.to_string())?;
            check_index(d.top_index().unwrap_or(0), g.hahn_index)?;
            let ok = shift_into_a_check(&h, &d, *terms).map_err(|e| e.to_string())?;
            let input = json!({"g": src, "delta": delta, "terms": terms});
            Ok(Report::new("hahn shift-check", input, if ok { "in-A" } else { "not-in-A" })
                .exit(if ok { 0 } else { EXIT_NEGATIVE }))
        }
        HahnCommand::Aleph1Check { expr, j } => {
            let src = read_expr(g, expr)?;
            let h = parse(&src)?;
            check_index(*j, g.hahn_index)?;
            let ok = aleph1_failure_check(&h, *j).map_err(|e| e.to_string())?;
            let input = json!({"b": src, "j": j});
            Ok(Report::new("hahn aleph1-check", input, if ok { "fails" } else { "holds" })
                .exit(if ok { 0 } else { EXIT_NEGATIVE }))
        }
    }
}

fn demo(g: &GlobalOpts, command: &DemoCommand) -> CResult<Report> {
    let p = prime(g)?;
    match command {
        DemoCommand::IntroExample { n } => {
            check_vars(*n, MAX_TVARS.min(MAX_XVARS))?;
            let r = intro_example(p, *n).map_err(|e| e.to_string())?;
            let ok = r.ok();
            Ok(Report::new("demo intro-example", json!({"n": n}), if ok { "verified" } else { "failed" })
                .witness("f", r.f.to_string())
                .witness("sigma_preimage", r.preimage.map_or("none".into(), |x| x.to_string()))
                .witness("derivatives_vanish", r.derivatives_vanish)
                .witness("not_a_pth_power", r.not_a_pth_power)
                .exit(if ok { 0 } else { EXIT_NEGATIVE }))
        }
        DemoCommand::FlatGap { n } => {
            check_vars(*n, MAX_TVARS.min(MAX_XVARS))?;
            let r = flat_gap(p, *n).map_err(|e| e.to_string())?;
            let ok = r.ok();
            let non_a: Vec<String> = r.non_a_coefficients.iter().map(|i| format!("t{i}")).collect();
            Ok(Report::new("demo flat-gap", json!({"n": n}), if ok { "verified" } else { "failed" })
                .witness("g", r.g.to_string())
                .witness("pth_root", r.root.to_string())
                .witness("root_verified", r.root_verified)
                .witness("coefficients_outside_A", non_a)
                .witness("denominator_fails", r.denominator_fails)
                .exit(if ok { 0 } else { EXIT_NEGATIVE }))
        }
    }
}

fn prime(g: &GlobalOpts) -> CResult<Prime> {
    Prime::new(g.p).map_err(|e| e.to_string())
}

fn check_vars(n: usize, cap: usize) -> CResult<()> {
    if n == 0 || n > cap {
        return Err(format!("--n must lie in 1..={cap}"));
    }
    Ok(())
}

fn check_index(i: usize, size: usize) -> CResult<()> {
    if i > size {
        return Err(format!("index {i} is outside the Hahn index set 1..={size}"));
    }
    Ok(())
}

/// Builds the coefficient field and x-variable count, inferring counts
/// from the texts when the flags are absent.
fn setup(g: &GlobalOpts, texts: &[&str], min_t: usize, min_x: usize) -> CResult<(FieldCtx, usize)> {
    let p = prime(g)?;
    let infer = |letter| texts.iter().map(|s| max_index(s, letter)).max().unwrap_or(0);
    let m = g.tvars.unwrap_or_else(|| infer('t').max(min_t));
    let n = g.xvars.unwrap_or_else(|| infer('x').max(min_x).max(1));
    if m > MAX_TVARS {
        return Err(format!("at most {MAX_TVARS} t-variables are supported"));
    }
    if n > MAX_XVARS {
        return Err(format!("at most {MAX_XVARS} x-variables are supported"));
    }
    if m < min_t {
        return Err(format!("need at least {min_t} t-variables"));
    }
    Ok((FieldCtx::new(p, m), n))
}

/// Largest index of a variable named `letter` in `src`; a bare letter
/// counts as index 1.
fn max_index(src: &str, letter: char) -> usize {
    let chars: Vec<char> = src.chars().collect();
    let mut best = 0;
    for (i, &c) in chars.iter().enumerate() {
        if c != letter || (i > 0 && chars[i - 1].is_ascii_alphanumeric()) {
            continue;
        }
        let digits: String = chars[i + 1..].iter().take_while(|c| c.is_ascii_digit()).collect();
        best = best.max(digits.parse().unwrap_or(1));
    }
    best
}

fn read_expr(g: &GlobalOpts, expr: &Option<String>) -> CResult<String> {
    match (&g.file, expr) {
        (Some(_), Some(_)) => Err("give the expression either inline or with --file".into()),
        (Some(path), None) => fs::read_to_string(path)
            .map(|s| s.trim().to_string())
            .map_err(|e| format!("{}: {e}", path.display())),
        (None, Some(e)) => Ok(e.clone()),
        (None, None) => Err("missing expression".into()),
    }
}

fn poly(ctx: &FieldCtx, n: usize, src: &str) -> CResult<XPoly> {
    parse_poly(ctx, n, src).map_err(|e| format!("{src:?}: {e}"))
}

fn field(ctx: &FieldCtx, src: &str) -> CResult<RatFunc> {
    parse_field(ctx, src).map_err(|e| format!("{src:?}: {e}"))
}

fn field_list(ctx: &FieldCtx, src: &str) -> CResult<Vec<RatFunc>> {
    parse_field_list(ctx, src).map_err(|e| format!("{src:?}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_inference() {
        assert_eq!(max_index("t*x1^2", 't'), 1);
        assert_eq!(max_index("t3 + t12*x2", 't'), 12);
        assert_eq!(max_index("x1 + x4", 'x'), 4);
        assert_eq!(max_index("2", 't'), 0);
    }
}
