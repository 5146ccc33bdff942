use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use toroidal_core::geom::{fixed_restriction, symplectic_pair_check, tangent_character};
use toroidal_core::partitions::{enumerate, pairs_of_weight, Partition};
use toroidal_core::rmatrix::{f_eigen, f_eigen_series, k_elem, r_block};
use toroidal_core::shuffle::{make_f, shuffle_product, wheel_check};
use toroidal_core::symfun::{load_table, macdonald_p, save_table};
use toroidal_core::verify::{verify_c_identity, verify_poles, verify_ybe, VerificationReport};

const CACHE_ENV: &str = "TOROIDAL_CACHE_DIR";

#[derive(Parser)]
#[command(name = "toroidal", about = "Exact tables for the Fock-space R-matrix")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Human-readable lines instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Largest accepted weight or degree.
    #[arg(long, global = true, default_value_t = 4)]
    cap: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Power-sum coefficients of every P_lambda of a degree.
    Macdonald {
        #[arg(long)]
        degree: u32,
    },
    /// Every R-matrix entry of one weight.
    Rblock {
        #[arg(long)]
        weight: u32,
    },
    /// Eigenvalue box product of f_lambda (or f*_lambda), optionally as a series.
    Eigen {
        #[arg(long, default_value = "0")]
        alpha: Partition,
        #[arg(long)]
        star: bool,
        #[arg(long)]
        order: Option<u32>,
    },
    /// Every K-matrix entry of one weight.
    Kmatrix {
        #[arg(long)]
        weight: u32,
    },
    VerifyYbe {
        #[arg(long)]
        weight: u32,
    },
    VerifyPoles {
        #[arg(long)]
        weight: u32,
    },
    VerifyC {
        #[arg(long)]
        weight: u32,
    },
    /// F_m * F_n in wheel form, with the wheel check when m + n >= 3.
    Shuffle {
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// Tangent character at a fixed point, partitions separated by ';'.
    Tangent {
        #[arg(long, default_value = "1")]
        lambdas: String,
    },
}

fn check_cap(n: u32, cap: u32) -> Result<()> {
    if n > cap {
        bail!("weight {n} exceeds the cap {cap}");
    }
    Ok(())
}

fn with_cache<T>(max_degree: u32, f: impl FnOnce() -> T) -> Result<T> {
    let dir = std::env::var_os(CACHE_ENV).map(PathBuf::from);
    if let Some(d) = &dir {
        for n in 0..=max_degree {
            load_table(d, n).with_context(|| format!("reading cache for degree {n}"))?;
        }
    }
    let out = f();
    if let Some(d) = &dir {
        for n in 0..=max_degree {
            save_table(d, n).with_context(|| format!("writing cache for degree {n}"))?;
        }
    }
    Ok(out)
}

fn string_map<'a>(it: impl Iterator<Item = (String, String)> + 'a) -> Value {
    Value::Object(it.map(|(k, v)| (k, Value::String(v))).collect::<Map<_, _>>())
}

fn report(r: VerificationReport) -> (Value, bool) {
    let ok = r.passed();
    (r.to_json(), ok)
}

fn run(cmd: &Command, cap: u32) -> Result<(Value, bool)> {
    Ok(match cmd {
        Command::Macdonald { degree } => {
            check_cap(*degree, cap)?;
            let polys = with_cache(*degree, || {
                enumerate(*degree).iter().map(|l| macdonald_p(l).to_json(Some(l))).collect::<Vec<_>>()
            })?;
            (json!({ "degree": degree, "basis": "p", "polynomials": polys }), true)
        }
        Command::Rblock { weight } => {
            check_cap(*weight, cap)?;
            (with_cache(*weight, || r_block(*weight).to_json())?, true)
        }
        Command::Eigen { alpha, star, order } => {
            check_cap(alpha.size(), cap)?;
            let f = f_eigen(alpha, *star);
            let mut v = json!({ "lambda": alpha, "star": star, "normalized": f.to_string() });
            if let Some(m) = order {
                let s = f_eigen_series(alpha, *star, *m)?;
                let coeffs: Vec<String> = (0..=*m as i32).map(|r| s.coeff(r).to_string()).collect();
                v["series"] = json!({ "variable": if *star { "u" } else { "u^-1" }, "order": m, "coeffs": coeffs });
            }
            (v, true)
        }
        Command::Kmatrix { weight } => {
            check_cap(*weight, cap)?;
            let pairs = pairs_of_weight(*weight);
            let mut entries = Vec::new();
            for (a, b) in &pairs {
                for (c, d) in &pairs {
                    let k = k_elem(a, b, c, d);
                    if !k.is_zero() {
                        entries.push((format!("<{a}|{b}>-><{c}|{d}>"), k.to_string()));
                    }
                }
            }
            (json!({ "weight": weight, "entries": string_map(entries.into_iter()) }), true)
        }
        Command::VerifyYbe { weight } => {
            check_cap(*weight, cap)?;
            report(with_cache(*weight, || verify_ybe(*weight))??)
        }
        Command::VerifyPoles { weight } => {
            check_cap(*weight, cap)?;
            report(with_cache(*weight, || verify_poles(*weight))?)
        }
        Command::VerifyC { weight } => {
            check_cap(*weight, cap)?;
            report(verify_c_identity(*weight))
        }
        Command::Shuffle { m, n } => {
            check_cap((m + n) as u32, cap)?;
            let a = shuffle_product(&make_f(*m), &make_f(*n))?;
            let b = shuffle_product(&make_f(*n), &make_f(*m))?;
            let toroidal_core::shuffle::Kind::Wheel { scalar, f } = &a.kind else { unreachable!() };
            let wheel = if m + n >= 3 { Some(wheel_check(&a)?) } else { None };
            let commutes = a.value_eq(&b);
            let v = json!({
                "m": m, "n": n, "nvars": a.nvars,
                "scalar": scalar.to_string(), "wheel_numerator": f.to_string(),
                "commutes": commutes, "wheel_check": wheel,
            });
            (v, commutes && wheel != Some(false))
        }
        Command::Tangent { lambdas } => {
            let lams: Vec<Partition> = lambdas
                .split(';')
                .map(|s| s.trim().parse().map_err(|e| anyhow::anyhow!("bad partition {s:?}: {e}")))
                .collect::<Result<_>>()?;
            let n: u32 = lams.iter().map(|l| l.size()).sum();
            check_cap(n, cap)?;
            let ch = tangent_character(&lams);
            let paired = symplectic_pair_check(&ch);
            let restriction: Vec<String> = lams.iter().map(|l| fixed_restriction(l).to_string()).collect();
            let v = json!({
                "lambdas": lams, "dimension": ch.len(), "weights": ch.to_json(),
                "symplectic_pairing": paired, "restrictions": restriction,
            });
            (v, paired)
        }
    })
}

fn pretty(v: &Value, prefix: &str, out: &mut String) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                pretty(x, &p, out);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in a.iter().enumerate() {
                pretty(x, &format!("{prefix}[{i}]"), out);
            }
        }
        Value::String(s) => out.push_str(&format!("{prefix} = {s}\n")),
        other => out.push_str(&format!("{prefix} = {other}\n")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (value, ok) = match run(&cli.command, cli.common.cap) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let text = if cli.common.pretty {
        let mut s = String::new();
        pretty(&value, "", &mut s);
        s
    } else {
        serde_json::to_string_pretty(&value).unwrap() + "\n"
    };
    match &cli.common.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, text) {
                eprintln!("error: cannot write {}: {e}", p.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
