use std::ops::RangeInclusive;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use qgroth::inflate::{brito_chari_nu, IncreasingMap, QuantumInflation};
use qgroth::klbasis::canonical_basis_element;
use qgroth::qchar::fundamental_qchar;
use qgroth::torus::json::{coeff_to_json, element_to_terms, monomial_to_json};
use qgroth::verify::{self, Report};
use qgroth::{TorusElement, YMonomial};
use serde_json::json;

#[derive(Parser)]
#[command(name = "qgroth", version, about = "Quantum Grothendieck rings of type A")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fundamental q-character χ_q(L(Y_{i,p})).
    Fund {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: usize,
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long)]
        json: bool,
    },
    /// Canonical element χ_{q,t}(L(m)) and its standard expansion.
    Canon {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: String,
        #[arg(long)]
        json: bool,
    },
    /// Image of χ_{q,t}(L(m)) under a quantum inflation.
    Inflate {
        #[command(flatten)]
        maps: MapArgs,
        #[arg(long)]
        m: String,
        #[arg(long)]
        json: bool,
    },
    /// Run a verification suite.
    Verify {
        #[command(subcommand)]
        suite: Suite,
        #[arg(long, global = true)]
        json: bool,
    },
}

#[derive(Args, Clone)]
struct MapArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    nn: usize,
    /// Comma-separated values ν(1),…,ν(n); defaults to ñi/n when n divides ñ.
    #[arg(long, value_delimiter = ',')]
    nu: Option<Vec<usize>>,
    /// Offset of the source height function ξ(i) = i + 2c.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    c: i64,
    /// Offset of the target height function.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    cc: i64,
}

#[derive(Subcommand)]
enum Suite {
    /// Ψ(χ_{q,t}(L(m))) = χ_{q,t}(L(ψ(m))) on a window of dominant monomials.
    Inflation {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        nn: usize,
        /// Restrict to one ν; all increasing maps otherwise.
        #[arg(long, value_delimiter = ',')]
        nu: Option<Vec<usize>>,
        #[arg(long, default_value = "-3..5", allow_hyphen_values = true, value_parser = parse_range)]
        window: RangeInclusive<i64>,
        #[arg(long, default_value_t = 2)]
        max_factors: usize,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        c: i64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        cc: i64,
    },
    /// R1/R2 for the Υ_ν images over all ν and the given levels.
    Relations {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        nn: usize,
        #[arg(long, default_value = "-1..1", allow_hyphen_values = true, value_parser = parse_range)]
        k: RangeInclusive<i64>,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        cc: i64,
    },
    /// ψ(Y_{i,p}) = Y_{ñi/n, ñp/n} and agreement of t = 1 characters.
    BritoChari {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        nn: usize,
        /// Monomials to compare; Y[1,1] and Y[1,1]Y[1,3] by default.
        #[arg(long)]
        m: Vec<String>,
        #[arg(long, default_value = "-4..5", allow_hyphen_values = true, value_parser = parse_range)]
        window: RangeInclusive<i64>,
    },
    /// c̃-based 𝒩 against the closed formula for all ranks 2..=n.
    Pairing {
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long, default_value_t = 30)]
        kmax: i64,
    },
    /// Fundamental q-characters against the tableau formula for all ranks 2..=n.
    Characters {
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long, default_value = "-4..5", allow_hyphen_values = true, value_parser = parse_range)]
        window: RangeInclusive<i64>,
    },
}

fn parse_range(s: &str) -> Result<RangeInclusive<i64>, String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected a..b, got {s:?}"))?;
    let a: i64 = a.trim().parse().map_err(|_| format!("bad lower bound in {s:?}"))?;
    let b: i64 = b.trim().parse().map_err(|_| format!("bad upper bound in {s:?}"))?;
    if a > b {
        return Err(format!("empty range {s:?}"));
    }
    Ok(a..=b)
}

fn parse_monomial(n: usize, s: &str) -> Result<YMonomial> {
    YMonomial::parse(n, s).with_context(|| format!("invalid monomial {s:?}"))
}

fn element_json(x: &TorusElement) -> serde_json::Value {
    json!({ "rank": x.rank(), "terms": element_to_terms(x) })
}

fn inflation(maps: &MapArgs) -> Result<QuantumInflation> {
    let nu = match &maps.nu {
        Some(values) => IncreasingMap::new(maps.nn, values.clone())?,
        None => brito_chari_nu(maps.n, maps.nn).context("--nu is required when n does not divide nn")?,
    };
    if nu.source() != maps.n {
        bail!("--nu has {} values but --n is {}", nu.source(), maps.n);
    }
    Ok(QuantumInflation::with_offsets(nu, maps.c, maps.cc)?)
}

fn fund(n: usize, i: usize, p: i64, as_json: bool) -> Result<()> {
    let f = fundamental_qchar(n, i, p)?;
    if as_json {
        println!("{}", element_json(&f.body));
    } else {
        println!("chi_q(L(Y[{i},{p}])) in rank {n}, {} monomials:", f.body.len());
        for m in f.body.monomials() {
            println!("  {m}");
        }
    }
    Ok(())
}

fn canon(n: usize, m: &str, as_json: bool) -> Result<()> {
    let m = parse_monomial(n, m)?;
    let l = canonical_basis_element(&m)?;
    let exp = l.standard_expansion()?;
    if as_json {
        let expansion: Vec<_> = exp
            .coords
            .iter()
            .map(|(m, c)| json!({ "monomial": monomial_to_json(m), "coeff": coeff_to_json(c) }))
            .collect();
        let doc = json!({
            "rank": n,
            "top": monomial_to_json(&m),
            "body": element_to_terms(&l.body),
            "expansion": expansion,
        });
        println!("{doc}");
    } else {
        println!("L({m}) = {}", l.body);
        println!("in the standard basis:");
        for (m, c) in &exp.coords {
            println!("  E_t({m}): {c}");
        }
    }
    Ok(())
}

fn inflate(maps: &MapArgs, m: &str, as_json: bool) -> Result<bool> {
    let q = inflation(maps)?;
    let m = parse_monomial(maps.n, m)?;
    let image = q.psi_dominant(&m)?;
    let lhs = q.inflate_ring_element(&canonical_basis_element(&m)?.body)?;
    let rhs = canonical_basis_element(&image)?.body;
    let ok = lhs == rhs;
    if as_json {
        let doc = json!({
            "source": monomial_to_json(&m),
            "image": monomial_to_json(&image),
            "inflated": element_json(&lhs),
            "canonical_of_image": ok,
        });
        println!("{doc}");
    } else {
        println!("psi({m}) = {image}");
        println!("Psi(L({m})) = {lhs}");
        println!("equals L({image}): {ok}");
    }
    Ok(ok)
}

fn run_suite(suite: &Suite) -> Result<Report> {
    Ok(match suite {
        Suite::Inflation { n, nn, nu, window, max_factors, c, cc } => {
            let nus = match nu {
                Some(v) => vec![IncreasingMap::new(*nn, v.clone())?],
                None => IncreasingMap::all(*n, *nn)?,
            };
            let qs = nus
                .into_iter()
                .map(|nu| QuantumInflation::with_offsets(nu, *c, *cc))
                .collect::<qgroth::Result<Vec<_>>>()?;
            let ms = verify::dominant_monomials(*n, *window.start(), *window.end(), *max_factors)?;
            verify::inflation_suite(&qs, &ms)?
        }
        Suite::Relations { n, nn, k, cc } => {
            let ks: Vec<i64> = k.clone().collect();
            verify::relations_suite(*n, *nn, &ks, *cc)?
        }
        Suite::BritoChari { n, nn, m, window } => {
            let ms = if m.is_empty() {
                vec![parse_monomial(*n, "Y[1,1]")?, parse_monomial(*n, "Y[1,1]Y[1,3]")?]
            } else {
                m.iter().map(|s| parse_monomial(*n, s)).collect::<Result<_>>()?
            };
            verify::brito_chari_suite(*n, *nn, &ms, *window.start(), *window.end())?
        }
        Suite::Pairing { n, kmax } => {
            let ns: Vec<usize> = (2..=*n).collect();
            verify::pairing_suite(&ns, *kmax)?
        }
        Suite::Characters { n, window } => {
            let ns: Vec<usize> = (2..=*n).collect();
            verify::characters_suite(&ns, *window.start(), *window.end())?
        }
    })
}

fn print_report(r: &Report, as_json: bool) {
    if as_json {
        println!("{}", serde_json::to_string(r).expect("plain data"));
        return;
    }
    for c in &r.cases {
        let status = if c.passed { "PASS" } else { "FAIL" };
        if c.detail.is_empty() {
            println!("{status} {}", c.label);
        } else {
            println!("{status} {}: {}", c.label, c.detail);
        }
    }
    println!("{}: {} passed, {} failed", r.suite, r.passed(), r.failed());
}

fn run(cli: &Cli) -> Result<bool> {
    Ok(match &cli.command {
        Command::Fund { n, i, p, json } => fund(*n, *i, *p, *json).map(|_| true)?,
        Command::Canon { n, m, json } => canon(*n, m, *json).map(|_| true)?,
        Command::Inflate { maps, m, json } => inflate(maps, m, *json)?,
        Command::Verify { suite, json } => {
            let report = run_suite(suite)?;
            print_report(&report, *json);
            report.all_passed()
        }
    })
}

fn main() -> ExitCode {
    match run(&Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::parse_range;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("-3..5").unwrap(), -3..=5);
        assert_eq!(parse_range("2..2").unwrap(), 2..=2);
        assert!(parse_range("3").is_err());
        assert!(parse_range("4..1").is_err());
        assert!(parse_range("a..1").is_err());
    }
}
