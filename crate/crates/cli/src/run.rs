use std::collections::BTreeMap;

use serde_json::{json, Value};
use vertexlab::dt::{self, Geometry, PipelineOrders, Regime};
use vertexlab::report::Report;
use vertexlab::taut::{self, Functor, TautCheckOrders, TautOrders, ToricSurfaceData};
use vertexlab::{hilb, vertex, Error};

use crate::args::{Check, ChiArgs, Cli, Command, DtLimitArgs, FSeriesArgs, FunctorArg, GeometryArg, RegimeArg, SurfaceArg, TautCommand};
use crate::emit::{emit_report, emit_series, Format};

/// Text to print and whether every checked identity held.
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

#[derive(Debug)]
pub enum RunError {
    /// Arguments parse but make no sense; exit code 2.
    Usage(String),
    Compute(Error),
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(s) | Error::Table(s) | Error::NonGeneric(s) => RunError::Usage(s),
            e => RunError::Compute(e),
        }
    }
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunError::Usage(s) => write!(f, "usage error: {s}"),
            RunError::Compute(e) => write!(f, "{e}"),
        }
    }
}

type Orders = BTreeMap<String, Value>;

fn orders(pairs: &[(&str, Value)]) -> Orders {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn report(r: Report, command: &str, o: Orders, f: Format) -> Outcome {
    Outcome { text: emit_report(&r, command, o, f), passed: r.passed }
}

fn geometries(g: GeometryArg) -> Vec<Geometry> {
    match g {
        GeometryArg::X1 => vec![Geometry::X1],
        GeometryArg::X2 => vec![Geometry::X2],
        GeometryArg::Both => vec![Geometry::X1, Geometry::X2],
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, RunError> {
    let f = cli.common.format;
    match &cli.command {
        Command::FSeries(a) => f_series(a, f),
        Command::Verify { check } => verify(check, f),
        Command::DtLimit(a) => dt_limit(a, f),
        Command::Taut { what: TautCommand::Chi(a) } => chi(a, f),
    }
}

fn f_series(a: &FSeriesArgs, f: Format) -> Result<Outcome, RunError> {
    let mut symbolic = [false; 3];
    for &m in a.masses.iter() {
        if !(1..=3).contains(&m) {
            return Err(RunError::Usage(format!("no mass m{m}; choose from 1, 2, 3")));
        }
        symbolic[m as usize - 1] = true;
    }
    let ctx = hilb::FContext { nz: a.zorder, ny: a.yorder, symbolic };
    let s = hilb::compute_f(&ctx)?;
    Ok(Outcome { text: emit_series(&s, &hilb::hilb_vars(), f), passed: true })
}

pub fn verify(c: &Check, f: Format) -> Result<Outcome, RunError> {
    Ok(match *c {
        Check::Symmetry { zorder, yorder } => report(
            hilb::verify_symmetry(zorder, yorder)?,
            "verify symmetry",
            orders(&[("zorder", json!(zorder)), ("yorder", json!(yorder))]),
            f,
        ),
        Check::Denominator { zorder } => {
            report(hilb::verify_denominator(zorder)?, "verify denominator", orders(&[("zorder", json!(zorder))]), f)
        }
        Check::Nekrasov { order } => report(vertex::nekrasov_check(order)?, "verify nekrasov", orders(&[("order", json!(order))]), f),
        Check::EdgeTables { order } => {
            let mut r = vertex::verify_edge_tables(order)?;
            for g in [Geometry::X1, Geometry::X2] {
                r.absorb(dt::verify_edge_consistency(g, order)?);
            }
            report(r, "verify edge-tables", orders(&[("order", json!(order))]), f)
        }
        Check::Vertex { order, legs } => report(
            vertex::verify_vertex(order, legs)?,
            "verify vertex",
            orders(&[("order", json!(order)), ("legs", json!(legs))]),
            f,
        ),
        Check::SlopeIndependence { geometry, kahler_degree, qt_order } => {
            let mut r = Report::new("slope independence");
            for g in geometries(geometry) {
                r.absorb(dt::verify_slope_independence(g, kahler_degree, qt_order)?);
            }
            report(
                r,
                "verify slope-independence",
                orders(&[("kahler_degree", json!(kahler_degree)), ("qt_order", json!(qt_order))]),
                f,
            )
        }
        Check::Pipeline { u_order, v_order, m_order } => report(
            dt::substitution_pipeline(&PipelineOrders { nu: u_order, nv: v_order, m: m_order })?,
            "verify pipeline",
            orders(&[("u_order", json!(u_order)), ("v_order", json!(v_order)), ("m_order", json!(m_order))]),
            f,
        ),
        Check::Taut { order, sym_order, rank2_order, cobordism_order, plane_order } => {
            let o = TautCheckOrders { n: order, sym_k: sym_order, rank2_n: rank2_order, cobordism: cobordism_order, plane: plane_order };
            report(
                taut::verify_taut(o)?,
                "verify taut",
                orders(&[
                    ("order", json!(order)),
                    ("sym_order", json!(sym_order)),
                    ("rank2_order", json!(rank2_order)),
                    ("cobordism_order", json!(cobordism_order)),
                    ("plane_order", json!(plane_order)),
                ]),
                f,
            )
        }
    })
}

fn dt_limit(a: &DtLimitArgs, f: Format) -> Result<Outcome, RunError> {
    let x = match a.geometry {
        GeometryArg::X1 => dt::make_x1()?,
        GeometryArg::X2 => dt::make_x2()?,
        GeometryArg::Both => return Err(RunError::Usage(String::from("dt-limit takes a single geometry"))),
    };
    let reg = match a.regime {
        RegimeArg::A => Regime::A,
        RegimeArg::B => Regime::B,
    };
    let s = dt::reduced_limit_vertex_sum(&x, &reg.slope(), a.kahler_degree, a.qt_order)?;
    Ok(Outcome { text: emit_series(&s, &dt::dt_vars(), f), passed: true })
}

fn parse_bundle(a: &ChiArgs) -> Result<ToricSurfaceData, RunError> {
    let bad = |s: &str| RunError::Usage(format!("bad bundle summand {s:?}"));
    Ok(match a.surface {
        SurfaceArg::P2 => {
            let d = a.bundle.iter().map(|s| s.trim().parse::<i32>().map_err(|_| bad(s))).collect::<Result<Vec<_>, _>>()?;
            ToricSurfaceData::p2_bundle(&d)
        }
        SurfaceArg::P1p1 => {
            let mut d = Vec::new();
            for s in a.bundle.iter() {
                let (x, y) = s.split_once(':').ok_or_else(|| bad(s))?;
                d.push((x.trim().parse::<i32>().map_err(|_| bad(s))?, y.trim().parse::<i32>().map_err(|_| bad(s))?));
            }
            ToricSurfaceData::p1p1_bundle(&d)
        }
    })
}

fn chi(a: &ChiArgs, f: Format) -> Result<Outcome, RunError> {
    let x = parse_bundle(a)?;
    let functor = match a.functor {
        FunctorArg::Lambda => Functor::Lambda,
        FunctorArg::Sym => Functor::Sym,
    };
    if functor == Functor::Sym && x.rank() != 1 {
        return Err(RunError::Usage(String::from("symmetric powers are implemented for line bundles only")));
    }
    let s = taut::chi_series(&x, functor, TautOrders { z: a.zorder, k: a.korder })?;
    Ok(Outcome { text: emit_series(&s, &taut::taut_vars(), f), passed: true })
}
