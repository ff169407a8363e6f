//! Implementations of the CLI subcommands.

use std::fs;
use std::path::Path;

use spheroidal_core::contragenics::{self, ContragenicIndex};
use spheroidal_core::exact::{QPoly, SpheroidShape};
use spheroidal_core::harmonics::{self, HarmonicIndex, Parity};
use spheroidal_core::integrate;
use spheroidal_core::monogenics::{self, MonogenicIndex};
use spheroidal_core::numeval::{self, BasisSelector};
use spheroidal_core::verify::{self, CheckResult};
use spheroidal_core::{Error, Result};

use crate::OutputFormat;

fn write_output(out: Option<&Path>, content: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, content)
            .map_err(|e| Error::Domain(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{content}");
            Ok(())
        }
    }
}

fn parse_shapes(spec: &str) -> Result<Vec<SpheroidShape>> {
    spec.split(',').map(|s| SpheroidShape::parse(s.trim())).collect()
}

/// Parse an element selector like `X:2,1,-`, `V:3,0,+` or `Z:3,0`.
pub fn parse_selector(s: &str) -> Result<BasisSelector> {
    let (family, rest) = s
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("selector {s:?} must look like FAMILY:n,m[,parity]")))?;
    let parts: Vec<&str> = rest.split(',').map(str::trim).collect();
    let parse_u32 = |p: &str| -> Result<u32> {
        p.parse::<u32>().map_err(|e| Error::Parse(format!("bad index {p:?}: {e}")))
    };
    let index3 = |parts: &[&str]| -> Result<(u32, u32, Parity)> {
        if parts.len() != 3 {
            return Err(Error::Parse(format!("selector {s:?} needs n,m,parity")));
        }
        Ok((parse_u32(parts[0])?, parse_u32(parts[1])?, Parity::parse(parts[2])?))
    };
    match family.to_ascii_uppercase().as_str() {
        "U" => {
            let (n, m, p) = index3(&parts)?;
            Ok(BasisSelector::U(HarmonicIndex::new(n, m, p)?))
        }
        "V" => {
            let (n, m, p) = index3(&parts)?;
            Ok(BasisSelector::V(HarmonicIndex::new(n, m, p)?))
        }
        "X" => {
            let (n, m, p) = index3(&parts)?;
            Ok(BasisSelector::X(MonogenicIndex::new(n, m, p)?))
        }
        "Z" => match parts.len() {
            2 => {
                let (n, m) = (parse_u32(parts[0])?, parse_u32(parts[1])?);
                if m != 0 {
                    return Err(Error::Parse(format!("selector {s:?}: nonzero m needs a parity")));
                }
                Ok(BasisSelector::Z(ContragenicIndex::new(n, 0, None)?))
            }
            3 => {
                let (n, m, p) = index3(&parts)?;
                Ok(BasisSelector::Z(ContragenicIndex::new(n, m, Some(p))?))
            }
            _ => Err(Error::Parse(format!("selector {s:?} needs Z:n,0 or Z:n,m,parity"))),
        },
        other => Err(Error::Parse(format!("unknown family {other:?}; use U, V, X or Z"))),
    }
}

fn selector_qpoly(sel: &BasisSelector, shape: &SpheroidShape) -> Result<QPoly> {
    Ok(match sel {
        BasisSelector::U(i) => {
            QPoly::from_scalar(harmonics::build_u(i)?.poly.substitute_tau(shape))
        }
        BasisSelector::V(i) => {
            QPoly::from_scalar(harmonics::build_v(i)?.poly.substitute_tau(shape))
        }
        BasisSelector::X(i) => monogenics::build_x(i)?.qpoly.substitute_tau(shape),
        BasisSelector::Z(i) => contragenics::build_z(i, shape)?.qpoly,
    })
}

pub fn gen_basis(
    family: &str,
    nmax: u32,
    shape: &str,
    format: OutputFormat,
    out: Option<&Path>,
) -> Result<bool> {
    let symbolic = shape.eq_ignore_ascii_case("sym");
    let shape_val = if symbolic { None } else { Some(SpheroidShape::parse(shape)?) };
    let family = family.to_ascii_uppercase();

    enum Rendered {
        Json(serde_json::Value),
        Line(String),
    }
    let mut items: Vec<(String, Rendered)> = Vec::new();
    fn to_value<T: serde::Serialize>(v: &T) -> serde_json::Value {
        serde_json::to_value(v).expect("serializable")
    }

    match family.as_str() {
        "U" | "V" => {
            for index in harmonics::all_indices(nmax) {
                let mut el = if family == "U" {
                    harmonics::build_u(&index)?
                } else {
                    harmonics::build_v(&index)?
                };
                if let Some(s) = &shape_val {
                    el.poly = el.poly.substitute_tau(s);
                }
                items.push((
                    format!("{family}[{index}]"),
                    match format {
                        OutputFormat::Pretty => Rendered::Line(el.poly.to_string()),
                        _ => Rendered::Json(to_value(&el)),
                    },
                ));
            }
        }
        "X" => {
            for index in monogenics::all_indices(nmax) {
                let mut el = monogenics::build_x(&index)?;
                if let Some(s) = &shape_val {
                    el.qpoly = el.qpoly.substitute_tau(s);
                }
                items.push((
                    format!("X[{index}]"),
                    match format {
                        OutputFormat::Pretty => Rendered::Line(el.qpoly.to_string()),
                        _ => Rendered::Json(to_value(&el)),
                    },
                ));
            }
        }
        "Z" => {
            let s = shape_val.as_ref().ok_or_else(|| {
                Error::Domain("the Z family is shape-dependent; pass --shape <tau>".into())
            })?;
            for z in contragenics::basis_up_to(nmax, s)? {
                items.push((
                    format!("Z[{}]", z.index),
                    match format {
                        OutputFormat::Pretty => Rendered::Line(z.qpoly.to_string()),
                        _ => Rendered::Json(to_value(&z)),
                    },
                ));
            }
        }
        other => return Err(Error::Domain(format!("unknown family {other:?}; use U, V, X or Z"))),
    }

    let content = match format {
        OutputFormat::Json => {
            let values: Vec<serde_json::Value> = items
                .into_iter()
                .map(|(_, r)| match r {
                    Rendered::Json(v) => v,
                    Rendered::Line(_) => unreachable!("pretty lines only in pretty mode"),
                })
                .collect();
            serde_json::to_string_pretty(&values).expect("serializable")
        }
        OutputFormat::Pretty => items
            .into_iter()
            .map(|(label, r)| match r {
                Rendered::Line(line) => format!("{label} = {line}"),
                Rendered::Json(_) => unreachable!(),
            })
            .collect::<Vec<_>>()
            .join("\n"),
        OutputFormat::Csv => {
            return Err(Error::Domain(
                "gen-basis emits json or pretty; csv is reserved for Gram matrices".into(),
            ))
        }
    };
    write_output(out, &content)?;
    Ok(true)
}

fn print_results(results: &[CheckResult], format: OutputFormat) {
    match format {
        OutputFormat::Json => {
            println!("{}", serde_json::to_string_pretty(results).expect("serializable"));
        }
        _ => {
            for r in results {
                if r.pass {
                    println!("PASS {}", r.name);
                } else {
                    println!("FAIL {} :: {}", r.name, r.detail);
                }
            }
        }
    }
}

pub fn verify(
    suite: &str,
    nmax: u32,
    shapes: &str,
    seed: u64,
    samples: u64,
    format: OutputFormat,
) -> Result<bool> {
    let shapes = parse_shapes(shapes)?;
    let mut results = Vec::new();
    if suite == "all" {
        for s in verify::SUITES {
            results.extend(verify::run_suite(s, nmax, &shapes, seed, samples)?);
        }
    } else {
        results = verify::run_suite(suite, nmax, &shapes, seed, samples)?;
    }
    print_results(&results, format);
    Ok(verify::all_pass(&results))
}

pub fn decompose(input: &Path, nmax: u32, shape: &str, out: Option<&Path>) -> Result<bool> {
    let shape = SpheroidShape::parse(shape)?;
    let text = fs::read_to_string(input)
        .map_err(|e| Error::Domain(format!("cannot read {}: {e}", input.display())))?;
    let qpoly: QPoly =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("bad QPoly JSON: {e}")))?;
    let result = integrate::decompose(&qpoly, nmax, &shape)?;
    for (name, part) in [
        ("monogenic", &result.monogenic),
        ("antimonogenic", &result.antimonogenic),
        ("contragenic", &result.contragenic),
    ] {
        let norm = integrate::inner_product(part, part, &shape)?;
        eprintln!("|{name}|^2 = {norm}");
    }
    let content = serde_json::to_string_pretty(&result).expect("serializable");
    write_output(out, &content)?;
    Ok(true)
}

pub fn eval(
    element: &str,
    shape: &str,
    points: u64,
    seed: u64,
    out: Option<&Path>,
) -> Result<bool> {
    let shape = SpheroidShape::parse(shape)?;
    let sel = parse_selector(element)?;
    let mut rng = numeval::mc_rng(seed, 0);
    let pts: Vec<numeval::PointR3> = (0..points)
        .map(|_| numeval::random_interior_point(&shape, &mut rng))
        .collect();
    let values = numeval::eval_basis_numeric(&sel, &pts, &shape)?;
    let mut csv = String::from("x0,x1,x2,e0,e1,e2,e3\n");
    for (p, v) in pts.iter().zip(values) {
        csv.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            p.x0, p.x1, p.x2, v[0], v[1], v[2], v[3]
        ));
    }
    write_output(out, csv.trim_end())?;
    Ok(true)
}

pub fn mc(
    f: &str,
    g: &str,
    shape: &str,
    samples: u64,
    seed: u64,
    out: Option<&Path>,
) -> Result<bool> {
    let shape = SpheroidShape::parse(shape)?;
    let f = selector_qpoly(&parse_selector(f)?, &shape)?;
    let g = selector_qpoly(&parse_selector(g)?, &shape)?;
    let est = numeval::mc_inner_product(&f, &g, &shape, samples, seed)?;
    let content = serde_json::to_string_pretty(&est).expect("serializable");
    write_output(out, &content)?;
    Ok(true)
}

pub fn dims(nmax: u32, shape: &str, format: OutputFormat) -> Result<bool> {
    let shape = SpheroidShape::parse(shape)?;
    let rows = integrate::rank_dimension_report(nmax, &shape)?;
    match format {
        OutputFormat::Json => {
            println!("{}", serde_json::to_string_pretty(&rows).expect("serializable"));
        }
        _ => {
            println!(
                "{:>3} {:>14} {:>14} {:>12} {:>12} {:>12} {:>12}  status",
                "n", "Har(R)", "Har(R^3)", "M*", "M*&conj", "ambigenic", "contragenic"
            );
            for r in &rows {
                let cell = |e: &integrate::DimEntry| format!("{}/{}", e.computed, e.expected);
                println!(
                    "{:>3} {:>14} {:>14} {:>12} {:>12} {:>12} {:>12}  {}",
                    r.n,
                    cell(&r.harmonic_scalar),
                    cell(&r.harmonic_r3),
                    cell(&r.monogenic),
                    cell(&r.monogenic_constants),
                    cell(&r.ambigenic),
                    cell(&r.contragenic),
                    if r.ok() { "ok" } else { "MISMATCH" }
                );
            }
        }
    }
    Ok(rows.iter().all(|r| r.ok()))
}
