//! Command definitions and dispatch. `run` writes the report to any sink so
//! the commands can be driven from tests without spawning a process.

use crate::format::{parse_polytope, parse_system, serialize_system, PolytopeFile};
use crate::parallel::{census_parallel, enumerate_parallel, par_map};
use crate::store::{catalog_dir, load_entries, write_entries};
use clap::{Parser, Subcommand};
use coxdeform_core::catalog::{MAX_FACETS, MIN_FACETS};
use coxdeform_core::coxeter::{classify_component, coxeter_graph};
use coxdeform_core::families::{example_family, ExampleId};
use coxdeform_core::fiber::{dims, evaluate_fiber, solve_fiber, ParametricFiber};
use coxdeform_core::order::{is_orderable, OrderingCertificate};
use coxdeform_core::poly::Var;
use coxdeform_core::rational::{parse_rational, to_f64, Rational};
use coxdeform_core::region::{bisect_transition, component_count_1d, count_components, Axis, GridEvaluator};
use coxdeform_core::vinberg::check_vinberg;
use coxdeform_core::normal_type;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Parser)]
#[command(name = "coxdeform", version, about = "Orderability, Coxeter types, Vinberg checks and deformation fibers of labeled 3-polytopes")]
pub struct Cli {
    /// One record per line with a fixed field order.
    #[arg(long, global = true)]
    pub machine: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Orderable binary labelings per facet count.
    Census {
        #[arg(long)]
        max_facets: usize,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Rebuild the catalog instead of reading the bundled files.
        #[arg(long)]
        enumerate: bool,
    },
    /// Writes one polytope file per catalog entry, named by canonical code.
    Enumerate {
        #[arg(long)]
        facets: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Prints an ordering certificate or NOT ORDERABLE.
    Orderable { file: PathBuf },
    /// Normal or not-normal verdict with its reason.
    NormalType { file: PathBuf },
    /// Type of each connected component of the Coxeter graph.
    Classify { file: PathBuf },
    /// Six-line report on the Vinberg conditions.
    VinbergCheck { polytope: PathBuf, system: PathBuf },
    /// Symbolic restricted deformation fiber of a worked example.
    Fiber {
        #[arg(long)]
        example: ExampleId,
        /// Evaluate at `name=value,...` and print the reflection system.
        #[arg(long)]
        at: Option<String>,
    },
    /// Component counts of the fiber along a one-parameter path.
    Scan {
        #[arg(long)]
        example: ExampleId,
        /// `s` for the standard path, or assignments such as `d1=s,d2=2,d3=1/2`.
        #[arg(long, default_value = "s")]
        path: String,
        #[arg(long, default_value = "1:2")]
        range: String,
        #[arg(long, default_value_t = 2000)]
        steps: usize,
        /// Bracket for the free parameter, `lo:hi`.
        #[arg(long)]
        inner: Option<String>,
        /// Width below which transition brackets stop shrinking.
        #[arg(long, default_value = "1/1000000000")]
        tol: String,
        /// Also count components on a grid of this many cells in the free
        /// parameter at every path point.
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Deformation, realization and restricted-fiber dimensions.
    Dims { file: PathBuf },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Internal(_) => 2,
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Internal(format!("writing output: {e}"))
    }
}

fn input(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

fn internal(e: impl std::fmt::Display) -> CliError {
    CliError::Internal(e.to_string())
}

pub fn read_polytope(path: &Path) -> Result<PolytopeFile, CliError> {
    let text = fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    parse_polytope(&text).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn check_workers(workers: usize) -> Result<(), CliError> {
    if workers == 0 {
        return Err(input("--workers must be at least 1"));
    }
    Ok(())
}

fn check_facets(f: usize) -> Result<(), CliError> {
    if !(MIN_FACETS..=MAX_FACETS).contains(&f) {
        return Err(input(format!("facet count must lie in {MIN_FACETS}..={MAX_FACETS}, got {f}")));
    }
    Ok(())
}

/// One census row: `(facets, orderable, total)`.
pub fn census_rows(max_facets: usize, workers: usize, fresh: bool) -> Result<Vec<(usize, u64, u64)>, CliError> {
    check_facets(max_facets)?;
    check_workers(workers)?;
    let root = catalog_dir();
    let mut rows = Vec::new();
    for f in MIN_FACETS..=max_facets {
        let stored = if fresh { None } else { load_entries(&root, f).map_err(input)? };
        let polytopes = match stored {
            Some(ps) => ps,
            None => enumerate_parallel(f, workers).map_err(internal)?,
        };
        let (orderable, total) = census_parallel(&polytopes, workers);
        rows.push((f, orderable, total));
    }
    Ok(rows)
}

/// `orderable / total` to six decimals, rounding halves up.
pub fn format_ratio(orderable: u64, total: u64) -> String {
    let (o, t) = (orderable as u128, total as u128);
    let scaled = (2 * o * 1_000_000 + t) / (2 * t);
    format!("{}.{:06}", scaled / 1_000_000, scaled % 1_000_000)
}

/// The fiber of a worked example, solved in the natural facet order.
pub fn example_fiber(id: ExampleId) -> Result<ParametricFiber, CliError> {
    let r = example_family(id);
    let f = r.polytope().facet_count();
    let cert = OrderingCertificate::from_order(r.polytope(), (0..f).collect()).map_err(internal)?;
    solve_fiber(&r, &cert).map_err(internal)
}

fn parse_range(text: &str, what: &str) -> Result<(Rational, Rational), CliError> {
    let bad = || input(format!("{what} must look like lo:hi, got {text:?}"));
    let (a, b) = text.split_once(':').ok_or_else(bad)?;
    let (a, b) = (parse_rational(a).ok_or_else(bad)?, parse_rational(b).ok_or_else(bad)?);
    if a >= b {
        return Err(input(format!("{what} is empty: {text:?}")));
    }
    Ok((a, b))
}

fn var_of(fib: &ParametricFiber, name: &str) -> Result<Var, CliError> {
    fib.var(name).map_err(|e| input(format!("{e}; parameters are {}", fib.names.join(", "))))
}

/// A path through parameter space: one parameter follows `s`, the others are
/// fixed, and exactly one parameter is left for the inner direction.
struct PathSpec {
    moving: Var,
    fixed: Vec<(Var, Rational)>,
    inner: Var,
}

fn parse_path(fib: &ParametricFiber, id: ExampleId, text: &str) -> Result<PathSpec, CliError> {
    let text = match (text.trim(), id) {
        ("s", ExampleId::Ex71) => "d=s",
        ("s", ExampleId::Ex72) => "d1=s,d2=2,d3=1/2",
        (t, _) => t,
    };
    let mut moving = None;
    let mut fixed = Vec::new();
    for part in text.split(',') {
        let (name, value) = part.split_once('=').ok_or_else(|| input(format!("path entry {part:?} is not name=value")))?;
        let v = var_of(fib, name.trim())?;
        if moving == Some(v) || fixed.iter().any(|(w, _)| *w == v) {
            return Err(input(format!("parameter {name:?} assigned twice")));
        }
        if value.trim() == "s" {
            if moving.replace(v).is_some() {
                return Err(input("only one parameter may follow s"));
            }
        } else {
            let x = parse_rational(value).ok_or_else(|| input(format!("bad value {value:?}")))?;
            fixed.push((v, x));
        }
    }
    let moving = moving.ok_or_else(|| input("no parameter follows s"))?;
    let open: Vec<Var> =
        (0..fib.names.len() as Var).filter(|v| *v != moving && !fixed.iter().any(|(w, _)| w == v)).collect();
    match open.as_slice() {
        [inner] => Ok(PathSpec { moving, fixed, inner: *inner }),
        _ => Err(input(format!("path must leave exactly one parameter free, leaves {}", open.len()))),
    }
}

const DEFAULT_INNER: &str = "-1000:0";

/// Per-point results of a path scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanReport {
    pub points: Vec<(Rational, usize, Option<usize>)>,
    /// `(bracket, count before, count after)`.
    pub transitions: Vec<((Rational, Rational), usize, usize)>,
}

#[allow(clippy::too_many_arguments)]
pub fn scan_path(
    id: ExampleId,
    path: &str,
    range: &str,
    steps: usize,
    inner: Option<&str>,
    tol: &str,
    grid: Option<usize>,
    workers: usize,
) -> Result<ScanReport, CliError> {
    check_workers(workers)?;
    if steps == 0 {
        return Err(input("--steps must be at least 1"));
    }
    let tol = parse_rational(tol).filter(|t| *t > Rational::from_integer(0.into())).ok_or_else(|| input("--tol must be a positive rational"))?;
    let fib = example_fiber(id)?;
    let spec = parse_path(&fib, id, path)?;
    let (lo, hi) = parse_range(range, "--range")?;
    let (ilo, ihi) = parse_range(inner.unwrap_or(DEFAULT_INNER), "--inner")?;
    let at = |s: &Rational| {
        let mut fx = spec.fixed.clone();
        fx.push((spec.moving, s.clone()));
        fx
    };
    let count = |s: &Rational| component_count_1d(&fib, &at(s), spec.inner, (&ilo, &ihi));
    let step = (&hi - &lo) / Rational::from_integer(steps.into());
    let ss: Vec<Rational> = (0..=steps).map(|k| &lo + &step * Rational::from_integer(k.into())).collect();
    let counted = par_map(&ss, workers, |s| -> Result<_, CliError> {
        let c = count(s).map_err(input)?;
        let g = match grid {
            Some(cells) => {
                let axes = [Axis { var: spec.inner, lo: ilo.clone(), hi: ihi.clone(), steps: cells }];
                let ev = GridEvaluator::new(&fib, &at(s), &axes).map_err(input)?;
                let cells: Vec<bool> = (0..ev.len()).map(|i| ev.feasible_at(i)).collect();
                Some(count_components(&cells, &ev.shape()))
            }
            None => None,
        };
        Ok((s.clone(), c, g))
    });
    let points = counted.into_iter().collect::<Result<Vec<_>, _>>()?;
    let changes: Vec<usize> = (1..points.len()).filter(|&k| points[k].1 != points[k - 1].1).collect();
    let located = par_map(&changes, workers, |&k| -> Result<_, CliError> {
        let (a, before) = (&points[k - 1].0, points[k - 1].1);
        let (b, after) = (&points[k].0, points[k].1);
        let br = bisect_transition(a, b, &tol, |x| count(x).map(|n| n == before))
            .map_err(input)?
            .map_err(internal)?;
        Ok((br, before, after))
    });
    let transitions = located.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(ScanReport { points, transitions })
}

fn one_based(xs: &[usize]) -> String {
    xs.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(" ")
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let machine = cli.machine;
    match &cli.command {
        Command::Census { max_facets, workers, enumerate } => {
            let rows = census_rows(*max_facets, *workers, *enumerate)?;
            if !machine {
                writeln!(out, "facets orderable total ratio")?;
            }
            for (f, o, t) in rows {
                let prefix = if machine { "census " } else { "" };
                writeln!(out, "{prefix}{f} {o} {t} {}", format_ratio(o, t))?;
            }
        }
        Command::Enumerate { facets, out: dir, workers } => {
            check_facets(*facets)?;
            check_workers(*workers)?;
            let ps = enumerate_parallel(*facets, *workers).map_err(internal)?;
            let written = write_entries(dir, &ps).map_err(input)?;
            if machine {
                for p in &written {
                    writeln!(out, "entry {}", p.display())?;
                }
            } else {
                writeln!(out, "{} polytopes with {} facets written to {}", written.len(), facets, dir.display())?;
            }
        }
        Command::Orderable { file } => {
            let p = read_polytope(file)?.polytope;
            match is_orderable(&p) {
                Some(cert) => writeln!(out, "ORDERABLE {}", one_based(cert.order()))?,
                None => writeln!(out, "NOT ORDERABLE")?,
            }
        }
        Command::NormalType { file } => {
            let p = read_polytope(file)?.polytope;
            let v = normal_type(&p);
            if machine {
                writeln!(out, "normal-type {v}")?;
            } else {
                writeln!(out, "{v}")?;
            }
        }
        Command::Classify { file } => {
            let p = read_polytope(file)?.polytope;
            let g = coxeter_graph(&p);
            for c in g.components() {
                let t = classify_component(&g.subgraph(&c)).map_err(internal)?;
                if machine {
                    writeln!(out, "component {} {t}", one_based(&c).replace(' ', ","))?;
                } else {
                    writeln!(out, "facets {}: {t}", one_based(&c))?;
                }
            }
        }
        Command::VinbergCheck { polytope, system } => {
            let p = read_polytope(polytope)?.polytope;
            let text = fs::read_to_string(system).map_err(|e| input(format!("{}: {e}", system.display())))?;
            let s = parse_system(&text).map_err(|e| input(format!("{}: {e}", system.display())))?;
            if s.len() != p.facet_count() {
                return Err(input(format!("system has {} reflections, polytope has {} facets", s.len(), p.facet_count())));
            }
            writeln!(out, "{}", check_vinberg(&s, &p))?;
        }
        Command::Fiber { example, at } => {
            let fib = example_fiber(*example)?;
            match at {
                None => writeln!(out, "{fib}")?,
                Some(text) => {
                    let mut point: Vec<Option<Rational>> = vec![None; fib.names.len()];
                    for part in text.split(',') {
                        let (name, value) = part.split_once('=').ok_or_else(|| input(format!("{part:?} is not name=value")))?;
                        let v = var_of(&fib, name.trim())?;
                        point[v as usize] = Some(parse_rational(value).ok_or_else(|| input(format!("bad value {value:?}")))?);
                    }
                    let point: Vec<Rational> = point
                        .into_iter()
                        .zip(&fib.names)
                        .map(|(x, n)| x.ok_or_else(|| input(format!("no value for {n}"))))
                        .collect::<Result<_, _>>()?;
                    let s = evaluate_fiber(&fib, &point).map_err(input)?;
                    let feasible = fib.is_feasible_at(&point) == Some(true);
                    writeln!(out, "# feasible: {}", if feasible { "yes" } else { "no" })?;
                    for line in check_vinberg(&s, fib.realization.polytope()).to_string().lines() {
                        writeln!(out, "# {line}")?;
                    }
                    write!(out, "{}", serialize_system(&s))?;
                }
            }
        }
        Command::Scan { example, path, range, steps, inner, tol, grid, workers } => {
            let rep = scan_path(*example, path, range, *steps, inner.as_deref(), tol, *grid, *workers)?;
            if !machine {
                writeln!(out, "s components{}", if grid.is_some() { " grid" } else { "" })?;
            }
            for (s, c, g) in &rep.points {
                let g = g.map(|g| format!(" {g}")).unwrap_or_default();
                if machine {
                    writeln!(out, "count {s} {c}{g}")?;
                } else {
                    writeln!(out, "{:.6} {c}{g}", to_f64(s))?;
                }
            }
            for ((l, h), before, after) in &rep.transitions {
                if machine {
                    writeln!(out, "transition {:.12} {:.12} {before} {after}", to_f64(l), to_f64(h))?;
                } else {
                    writeln!(out, "transition in [{:.12}, {:.12}]: {before} -> {after}", to_f64(l), to_f64(h))?;
                }
            }
        }
        Command::Dims { file } => {
            let d = dims(&read_polytope(file)?.polytope);
            if machine {
                writeln!(out, "dims {d}")?;
            } else {
                writeln!(out, "dim C(G)={} dim RS={} dim restricted={}", d.deformation, d.realization, d.restricted)?;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_rounds_halves_up() {
        assert_eq!(format_ratio(654, 768), "0.851563");
        assert_eq!(format_ratio(64, 64), "1.000000");
        assert_eq!(format_ratio(7130, 14848), "0.480199");
        assert_eq!(format_ratio(157334, 421888), "0.372928");
        assert_eq!(format_ratio(1, 3), "0.333333");
        assert_eq!(format_ratio(2, 3), "0.666667");
    }
}
