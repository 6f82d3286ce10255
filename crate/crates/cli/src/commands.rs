use bec_core::analysis::{
    curve_csv, estimate_pstar, estimate_theta, exact_fr_rational, exact_weight_table,
    transition_width, BisectionConfig, CurveEstimate, McConfig, MonteCarlo, ThresholdEstimate,
};
use bec_core::codes::{
    dr_bruteforce, format_code, load_code, min_distance_bruteforce, rm_code, rm_dr_lower_bound,
    wei_point, BoundKind, SupportWeightResult,
};
use bec_core::exact::{parse_grid, to_f64};
use bec_core::verify::{
    compute_gamma, verify_area_bound, verify_bitcapacity, verify_bittoblock, verify_margulis_russo,
    verify_ratiorm, verify_rmbounds, verify_rmcapacity_preconditions, verify_straightshot,
    verify_tz_identity, BitCapacityConfig, BitToBlockConfig, Epsilon, GammaSource, NoiseLevel,
};
use bec_core::{Budgets, Error, LinearCode, Result};
use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::args::{
    Cli, CodeCmd, CodeSource, ExactCmd, Global, Group, McCmd, OptionalSource, VerifyCmd, WeightsCmd,
};
use crate::output::{emit, Product};

fn budgets(g: &Global) -> Result<Budgets> {
    let subspaces = g
        .budget_subspaces
        .parse::<BigUint>()
        .map_err(|_| Error::Input(format!("bad --budget-subspaces {:?}", g.budget_subspaces)))?;
    Ok(Budgets {
        exhaustive_bits: g.budget_exhaustive,
        subspaces,
        ..Budgets::default()
    })
}

fn load(src: &CodeSource, b: &Budgets) -> Result<LinearCode> {
    match (&src.code, src.rm) {
        (Some(path), _) => load_code(path).map_err(|e| file_error(path, e)),
        (None, Some(params)) => rm_code(params, b),
        (None, None) => Err(Error::Input("one of --code or --rm is required".into())),
    }
}

fn file_error(path: &std::path::Path, e: Error) -> Error {
    match e {
        Error::Io(io) => Error::Input(format!("cannot read {}: {io}", path.display())),
        other => other,
    }
}

fn grid_f64(spec: &str) -> Result<Vec<f64>> {
    Ok(parse_grid(spec)?.iter().map(to_f64).collect())
}

fn list<T: std::str::FromStr>(spec: &str, what: &str) -> Result<Vec<T>> {
    spec.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| Error::Input(format!("bad {what} {s:?}")))
        })
        .collect()
}

fn mc_cfg(g: &Global) -> Result<McConfig> {
    McConfig::new(g.trials, g.seed)
}

fn bisection(g: &Global, tolerance: f64) -> Result<BisectionConfig> {
    BisectionConfig::new(g.trials, g.seed, tolerance)
}

fn csv(rows: Vec<CurveEstimate>) -> Product {
    Product::Csv {
        csv: curve_csv(&rows, &[]),
        json: json!({ "rows": rows }),
    }
}

fn threshold_product(label: &str, est: &ThresholdEstimate) -> Product {
    Product::Value {
        text: format!(
            "{label} = {} (bracket tolerance {}, 4-sigma range [{}, {}], {} probes)\n",
            est.p_hat, est.p_tolerance, est.p_low, est.p_high, est.probes
        ),
        json: serde_json::to_value(est).expect("serializable"),
    }
}

fn weight_json(w: &SupportWeightResult) -> Value {
    let kind = match w.kind {
        BoundKind::Exact => "exact",
        BoundKind::LowerBound => "lower-bound",
    };
    let witness = w
        .witness
        .as_ref()
        .map(|m| (0..m.rows()).map(|i| m.row_string(i)).collect::<Vec<_>>());
    json!({"r": w.r.to_string(), "value": w.value.to_string(), "kind": kind, "witness": witness})
}

fn dmin(code: &LinearCode, b: &Budgets) -> Result<usize> {
    match min_distance_bruteforce(code, b) {
        Err(e) if e.is_resource_limit() => match code.rm_params() {
            // minimum distance of RM(n, d) is 2^(n-d)
            Some(p) if p.n - p.d < usize::BITS as usize => Ok(1 << (p.n - p.d)),
            _ => Err(e),
        },
        other => other,
    }
}

/// Runs a parsed command and returns its exit status.
pub fn run(cli: &Cli, command: &str) -> Result<u8> {
    let g = &cli.global;
    let b = budgets(g)?;
    let product = match &cli.command {
        Group::Code(cmd) => match code_cmd(cmd, g, &b)? {
            Ok(p) => p,
            Err(status) => return Ok(status),
        },
        Group::Exact(cmd) => exact_cmd(cmd, &b)?,
        Group::Mc(cmd) => mc_cmd(cmd, g, &b)?,
        Group::Weights(cmd) => weights_cmd(cmd, &b)?,
        Group::Verify(cmd) => verify_cmd(cmd, g, &b)?,
    };
    emit(product, command, g)
}

fn code_cmd(cmd: &CodeCmd, g: &Global, b: &Budgets) -> Result<std::result::Result<Product, u8>> {
    Ok(Ok(match cmd {
        CodeCmd::Rm { n, d } => {
            let code = rm_code(bec_core::RmParams::new(*n, *d)?, b)?;
            Product::Code {
                text: format_code(&code, &[]),
            }
        }
        CodeCmd::Info { path, source } => {
            let OptionalSource { code, rm } = source;
            let src = CodeSource {
                code: path.clone().or_else(|| code.clone()),
                rm: *rm,
            };
            let code = load(&src, b)?;
            let d = dmin(&code, b)?;
            let mut info = json!({"N": code.len(), "k": code.dim(), "dmin": d});
            if let Some(p) = code.rm_params() {
                info["family"] = json!(p.to_string());
            }
            Product::Value {
                text: format!("N={} k={} dmin={d}\n", code.len(), code.dim()),
                json: info,
            }
        }
        CodeCmd::LoadCheck { path } => match load_code(path) {
            Ok(code) => Product::Value {
                text: format!("ok: N={} k={}\n", code.len(), code.dim()),
                json: json!({"ok": true, "N": code.len(), "k": code.dim()}),
            },
            Err(Error::Io(io)) => return Err(file_error(path, Error::Io(io))),
            Err(e) => {
                if g.json {
                    println!("{}", json!({"ok": false, "error": e.to_string()}));
                } else {
                    println!("invalid: {e}");
                }
                return Ok(Err(1));
            }
        },
    }))
}

fn exact_cmd(cmd: &ExactCmd, b: &Budgets) -> Result<Product> {
    Ok(match cmd {
        ExactCmd::Table { source, rmax } => {
            let table = exact_weight_table(&load(source, b)?, *rmax, b)?;
            let json = table.to_json();
            Product::Value {
                text: serde_json::to_string_pretty(&json).expect("json") + "\n",
                json,
            }
        }
        ExactCmd::Curve { source, rmax, p } => {
            let table = exact_weight_table(&load(source, b)?, *rmax, b)?;
            let mut rows = Vec::new();
            for p in parse_grid(p)? {
                for r in 1..=*rmax {
                    let f = exact_fr_rational(&table, r, &p)?;
                    rows.push(CurveEstimate::exact(to_f64(&p), r, to_f64(&f)));
                }
            }
            csv(rows)
        }
        ExactCmd::VerifyTz { source, r, p } => Product::Report(verify_tz_identity(
            &load(source, b)?,
            *r,
            &parse_grid(p)?,
            b,
        )?),
        ExactCmd::VerifyArea { source, r } => area(source, *r, b)?,
        ExactCmd::VerifyRusso { source, r, p } => Product::Report(verify_margulis_russo(
            &load(source, b)?,
            *r,
            &parse_grid(p)?,
            b,
        )?),
    })
}

fn area(source: &CodeSource, r: usize, b: &Budgets) -> Result<Product> {
    let code = load(source, b)?;
    let dr = bec_core::codes::support_weight(&code, r, b)?;
    Ok(Product::Report(verify_area_bound(&code, r, &dr, b)?))
}

fn mc_cmd(cmd: &McCmd, g: &Global, b: &Budgets) -> Result<Product> {
    Ok(match cmd {
        McCmd::Curve { source, r, p } => {
            let mc = MonteCarlo::new(&load(source, b)?);
            let rs: Vec<usize> = list(r, "r")?;
            let mut rows = Vec::new();
            for p in grid_f64(p)? {
                for &r in &rs {
                    rows.push(mc.fr(p, r, mc_cfg(g)?)?);
                }
            }
            csv(rows)
        }
        McCmd::Bit { source, i, p } => {
            let mc = MonteCarlo::new(&load(source, b)?);
            let rows = grid_f64(p)?
                .into_iter()
                .map(|p| mc.bit_error(p, *i, mc_cfg(g)?))
                .collect::<Result<Vec<_>>>()?;
            csv(rows)
        }
        McCmd::Block { source, p } => {
            let mc = MonteCarlo::new(&load(source, b)?);
            let rows = grid_f64(p)?
                .into_iter()
                .map(|p| mc.fr(p, 1, mc_cfg(g)?))
                .collect::<Result<Vec<_>>>()?;
            csv(rows)
        }
        McCmd::Pstar {
            source,
            i,
            tolerance,
        } => {
            let est = estimate_pstar(&load(source, b)?, *i, bisection(g, *tolerance)?)?;
            threshold_product("p*", &est)
        }
        McCmd::Theta {
            source,
            r,
            alpha,
            tolerance,
        } => {
            let est = estimate_theta(&load(source, b)?, *r, *alpha, bisection(g, *tolerance)?)?;
            threshold_product(&format!("theta_{r}({alpha})"), &est)
        }
        McCmd::Width {
            source,
            r,
            lo,
            hi,
            tolerance,
        } => {
            let w = transition_width(&load(source, b)?, *r, *lo, *hi, bisection(g, *tolerance)?)?;
            Product::Value {
                text: format!(
                    "width = {} (range [{}, {}]; theta({lo}) = {}, theta({hi}) = {})\n",
                    w.width, w.width_low, w.width_high, w.lower.p_hat, w.upper.p_hat
                ),
                json: serde_json::to_value(&w).expect("serializable"),
            }
        }
    })
}

fn weights_cmd(cmd: &WeightsCmd, b: &Budgets) -> Result<Product> {
    Ok(match cmd {
        WeightsCmd::Dmin { source } => {
            let d = min_distance_bruteforce(&load(source, b)?, b)?;
            Product::Value {
                text: format!("dmin={d}\n"),
                json: json!({ "dmin": d }),
            }
        }
        WeightsCmd::DrBrute { source, r } => {
            let w = dr_bruteforce(&load(source, b)?, *r, b)?;
            Product::Value {
                text: format!("d_{r}={}\n", w.value),
                json: weight_json(&w),
            }
        }
        WeightsCmd::Wei { n, d } => {
            let mut text = String::from("t,dim,support\n");
            let mut points = Vec::new();
            for t in 0..=*d {
                let (dim, support) = wei_point(*n, *d, t)?;
                text.push_str(&format!("{t},{dim},{support}\n"));
                points
                    .push(json!({"t": t, "dim": dim.to_string(), "support": support.to_string()}));
            }
            Product::Value {
                text,
                json: json!({"n": n, "d": d, "points": points}),
            }
        }
        WeightsCmd::DrBound { n, d, r } => {
            let rs: Vec<BigUint> = list(r, "r")?;
            let mut text = String::new();
            let mut bounds = Vec::new();
            for r in &rs {
                let w = rm_dr_lower_bound(*n, *d, r)?;
                text.push_str(&format!("d_{r} >= {}\n", w.value));
                bounds.push(weight_json(&w));
            }
            Product::Value {
                text,
                json: json!({"n": n, "d": d, "bounds": bounds}),
            }
        }
        WeightsCmd::Gamma { source, n0 } => {
            let value = match (&source.code, source.rm) {
                (None, Some(params)) => compute_gamma(GammaSource::Rm(params), *n0, b)?,
                _ => compute_gamma(GammaSource::Code(&load(source, b)?), *n0, b)?,
            };
            Product::Value {
                text: format!(
                    "gamma={} gamma^2={} ({:?})\n",
                    value.gamma,
                    bec_core::exact::format_rational(&value.gamma_sq),
                    value.kind
                ),
                json: value.to_json(),
            }
        }
    })
}

fn parse_level(s: &str) -> Result<NoiseLevel> {
    let s = s.trim();
    let bad = || Error::Input(format!("bad noise level {s:?}"));
    match s.strip_prefix("pstar-") {
        Some(x) => Ok(NoiseLevel::BelowPstar(x.parse().map_err(|_| bad())?)),
        None => Ok(NoiseLevel::Absolute(s.parse().map_err(|_| bad())?)),
    }
}

fn verify_cmd(cmd: &VerifyCmd, g: &Global, b: &Budgets) -> Result<Product> {
    let report = match cmd {
        VerifyCmd::Straightshot {
            source,
            n0,
            alpha,
            tolerance,
        } => verify_straightshot(&load(source, b)?, *n0, *alpha, bisection(g, *tolerance)?, b)?,
        VerifyCmd::Bittoblock {
            source,
            p,
            coordinates,
        } => {
            let cfg = BitToBlockConfig {
                trials: g.trials,
                seed: g.seed,
                coordinates: *coordinates,
            };
            verify_bittoblock(&load(source, b)?, *p, cfg, b)?
        }
        VerifyCmd::Bitcapacity {
            source,
            i,
            p,
            pstar_trials,
            tolerance,
            spread_coordinates,
        } => {
            let levels = p.split(',').map(parse_level).collect::<Result<Vec<_>>>()?;
            let cfg = BitCapacityConfig {
                pstar: BisectionConfig::new(*pstar_trials, g.seed, *tolerance)?,
                trials: g.trials,
                seed: g.seed,
                spread_coordinates: *spread_coordinates,
                spread_trials: g.trials,
            };
            verify_bitcapacity(&load(source, b)?, &levels, *i, cfg)?
        }
        VerifyCmd::Rmbounds { n, d, t } => {
            let ts: Option<Vec<usize>> = t.as_deref().map(|t| list(t, "t")).transpose()?;
            verify_rmbounds(*n, *d, ts.as_deref())?
        }
        VerifyCmd::Ratiorm {
            n,
            d,
            eps,
            r,
            outside_hypotheses,
        } => {
            let rs: Option<Vec<BigUint>> = r.as_deref().map(|r| list(r, "r")).transpose()?;
            verify_ratiorm(
                *n,
                *d,
                &Epsilon::parse(eps)?,
                rs.as_deref(),
                *outside_hypotheses,
            )?
        }
        VerifyCmd::RmcapacityPre { n, d, eps } => {
            verify_rmcapacity_preconditions(*n, *d, &Epsilon::parse(eps)?)?
        }
        VerifyCmd::Area { source, r } => return area(source, *r, b),
    };
    Ok(Product::Report(report))
}
