use clap::{Args, Subcommand, ValueEnum};
use geodlab_core::bt::{
    covolume_suite, crossratio_abs, displacement_translation_length, farey_count, hecke_index, hecke_index_enumerated,
    horoball_ball_mass, horoball_height, lattice_index_distance, line_density, norm_form, point_ball_mass,
    quad_orbit_experiment, relative_height, transform_check, translation_length, vertex_distance, BTMatrix, Ball,
    BoundaryPoint, OrbitMode,
};
use geodlab_core::ff::{FqPoly, QPower};

use crate::error::{CliError, Context};
use crate::input::{poly, quad, ratfunc};
use crate::output::{Cell, Table};

#[derive(Subcommand, Debug)]
pub enum BtCmd {
    /// d(*, g*) or d(g*, h*), with the lattice-index oracle.
    /// Columns: distance,lattice_oracle.
    Dist(DistArgs),
    /// Height and point at infinity of the image of the horoball at infinity.
    /// Columns: height,center.
    Height(MatrixArgs),
    /// Translation length, optionally against the displacement oracle.
    /// Columns: length,oracle.
    Translen(TranslenArgs),
    /// Patterson/skinning masses of balls, or the line skinning density.
    /// Columns: mode,value,value_real.
    Measure(MeasureArgs),
    /// Absolute crossratio |a,b,c,d|. Columns: value,exponent.
    Crossratio(CrossArgs),
    /// Relative height of beta with respect to alpha. Columns: value,exponent.
    Relheight(RelArgs),
    /// Norm form |x^2 - xy tr + y^2 n|, or its transformation law under g.
    /// Columns: value,exponent  or  points,mismatches,pass.
    Normform(NormArgs),
    /// Covolume identities. Columns: q,nagao,zeta,closed_form,ideal_covol,verdict.
    Covolume(CovolArgs),
    /// Index of the Hecke congruence subgroup.
    /// Columns: ideal,formula,enumerated,pass.
    Hecke(HeckeArgs),
    /// Farey counting function and ball histogram.
    /// Columns: ball,count,fraction,target,psi,psi_closed,growth,max_rel_dev.
    Farey(FareyArgs),
    /// Orbit of a quadratic irrational binned by complexity or relative height.
    /// Columns: exponent,count,cumulative,size,monotone,powers_ok.
    QuadOrbit(OrbitArgs),
}

#[derive(Args, Debug)]
pub struct MatrixArgs {
    #[arg(long)]
    q: u32,
    /// Entries `a;b;c;d` as rational functions in Y.
    #[arg(long)]
    g: String,
}

#[derive(Args, Debug)]
pub struct DistArgs {
    #[command(flatten)]
    m: MatrixArgs,
    /// Second matrix; the distance is then d(g*, h*).
    #[arg(long)]
    h: Option<String>,
}

#[derive(Args, Debug)]
pub struct TranslenArgs {
    #[command(flatten)]
    m: MatrixArgs,
    /// Radius of the displacement oracle (0 disables it).
    #[arg(long, default_value_t = 6)]
    oracle_radius: u32,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum MeasureMode {
    PointBall,
    HoroballBall,
    LineDensity,
}

#[derive(Args, Debug)]
pub struct MeasureArgs {
    #[arg(long)]
    q: u32,
    #[arg(long, value_enum)]
    mode: MeasureMode,
    /// Ball center (ball modes).
    #[arg(long, default_value = "0")]
    center: String,
    /// The ball has radius q^-depth (ball modes).
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    depth: i64,
    /// Line endpoints and evaluation point (line-density).
    #[arg(long)]
    lminus: Option<String>,
    #[arg(long)]
    lplus: Option<String>,
    #[arg(long)]
    rho: Option<String>,
}

#[derive(Args, Debug)]
pub struct CrossArgs {
    #[arg(long)]
    q: u32,
    /// Points: rational functions, `inf`, or `quad:A;B;C` (`quad+:` for the
    /// other root).
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long, allow_hyphen_values = true)]
    b: String,
    #[arg(long, allow_hyphen_values = true)]
    c: String,
    #[arg(long, allow_hyphen_values = true)]
    d: String,
}

#[derive(Args, Debug)]
pub struct RelArgs {
    #[arg(long)]
    q: u32,
    /// `A;B;C` with A X^2 + B X + C = 0.
    #[arg(long)]
    alpha: String,
    #[arg(long)]
    alpha_upper: bool,
    #[arg(long)]
    beta: String,
    #[arg(long)]
    beta_upper: bool,
}

#[derive(Args, Debug)]
pub struct NormArgs {
    #[arg(long)]
    q: u32,
    #[arg(long)]
    alpha: String,
    #[arg(long)]
    upper: bool,
    #[arg(long, default_value = "[1]")]
    x: String,
    #[arg(long, default_value = "[]")]
    y: String,
    /// Polynomial matrix `a;b;c;d` in GL2(F_q[Y]): check the transformation
    /// law on a grid instead of evaluating at (x, y).
    #[arg(long)]
    check: Option<String>,
    /// Grid side for `--check`.
    #[arg(long, default_value_t = 5)]
    grid: usize,
}

#[derive(Args, Debug)]
pub struct CovolArgs {
    #[arg(long)]
    q: u32,
    /// Ideal generator for Haar(K_v/I).
    #[arg(long)]
    ideal: Option<String>,
}

#[derive(Args, Debug)]
pub struct HeckeArgs {
    #[arg(long)]
    q: u32,
    #[arg(long)]
    ideal: String,
    /// Skip the enumeration cross-check.
    #[arg(long)]
    no_enumerate: bool,
}

#[derive(Args, Debug)]
pub struct FareyArgs {
    #[arg(long)]
    q: u32,
    #[arg(long)]
    t: usize,
    #[arg(long, default_value_t = 1)]
    depth: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum OrbitModeArg {
    Complexity,
    RelativeHeight,
}

#[derive(Args, Debug)]
pub struct OrbitArgs {
    #[arg(long)]
    q: u32,
    #[arg(long)]
    alpha: String,
    #[arg(long)]
    upper: bool,
    #[arg(long, value_enum, default_value_t = OrbitModeArg::Complexity)]
    mode: OrbitModeArg,
    /// Maximal word length (at most 12).
    #[arg(long, default_value_t = 6)]
    len: usize,
}

fn matrix(q: u32, s: &str) -> Result<BTMatrix, CliError> {
    BTMatrix::parse(q, s).op("bruhat_tits", "parse")
}

fn point(q: u32, s: &str) -> Result<BoundaryPoint, CliError> {
    let t = s.trim();
    if t == "inf" || t == "∞" {
        return Ok(BoundaryPoint::Infinity);
    }
    if let Some(rest) = t.strip_prefix("quad:") {
        return Ok(BoundaryPoint::Quadratic(quad(q, rest, false)?));
    }
    if let Some(rest) = t.strip_prefix("quad+:") {
        return Ok(BoundaryPoint::Quadratic(quad(q, rest, true)?));
    }
    Ok(BoundaryPoint::Rational(ratfunc(q, t)?))
}

fn qpower_row(p: QPower) -> Vec<Cell> {
    vec![Cell::text(p), Cell::int(p.exp)]
}

fn grid(q: u32, side: usize) -> Vec<(FqPoly, FqPoly)> {
    let polys: Vec<FqPoly> = FqPoly::all_below_degree(q, 4).take(side).collect();
    let mut out = Vec::new();
    for x in &polys {
        for y in &polys {
            if !(x.is_zero() && y.is_zero()) {
                out.push((x.clone(), y.clone()));
            }
        }
    }
    out
}

pub fn run(c: BtCmd) -> Result<Table, CliError> {
    match c {
        BtCmd::Dist(a) => {
            let g = matrix(a.m.q, &a.m.g)?;
            let g = match &a.h {
                Some(h) => g.inv().mul(&matrix(a.m.q, h)?),
                None => g,
            };
            let mut t = Table::new(&["distance", "lattice_oracle"]);
            t.push(vec![Cell::int(vertex_distance(&g)), Cell::int(lattice_index_distance(&g))]);
            Ok(t)
        }
        BtCmd::Height(a) => {
            let (h, c) = horoball_height(&matrix(a.q, &a.g)?).op("bruhat_tits", "horoball_height")?;
            let mut t = Table::new(&["height", "center"]);
            t.push(vec![Cell::int(h), Cell::text(c)]);
            Ok(t)
        }
        BtCmd::Translen(a) => {
            let g = matrix(a.m.q, &a.m.g)?;
            let l = translation_length(&g).op("bruhat_tits", "translation_length")?;
            let oracle = if a.oracle_radius > 0 {
                Cell::int(displacement_translation_length(&g, a.oracle_radius).op("bruhat_tits", "translation_length")?)
            } else {
                Cell::Empty
            };
            let mut t = Table::new(&["length", "oracle"]);
            t.push(vec![Cell::int(l), oracle]);
            Ok(t)
        }
        BtCmd::Measure(a) => {
            let mut t = Table::new(&["mode", "value", "value_real"]);
            match a.mode {
                MeasureMode::PointBall | MeasureMode::HoroballBall => {
                    let ball = Ball::new(ratfunc(a.q, &a.center)?, a.depth);
                    let (name, v) = match a.mode {
                        MeasureMode::PointBall => ("point-ball", point_ball_mass(&ball)),
                        _ => ("horoball-ball", horoball_ball_mass(&ball)),
                    };
                    let real = num_traits::ToPrimitive::to_f64(&v).unwrap_or(f64::NAN);
                    t.push(vec![Cell::text(name), Cell::text(v), Cell::Real(real)]);
                }
                MeasureMode::LineDensity => {
                    let need = |o: &Option<String>, n: &str| {
                        o.clone().ok_or_else(|| CliError::Usage(format!("line-density needs --{n}")))
                    };
                    let (lm, lp, rho) = (need(&a.lminus, "lminus")?, need(&a.lplus, "lplus")?, need(&a.rho, "rho")?);
                    let d = line_density(&point(a.q, &lm)?, &point(a.q, &lp)?, &point(a.q, &rho)?)
                        .op("bruhat_tits", "patterson_measures")?;
                    t.push(vec![Cell::text("line-density"), Cell::text(d), Cell::Real(d.to_f64())]);
                }
            }
            Ok(t)
        }
        BtCmd::Crossratio(a) => {
            let pts: Vec<BoundaryPoint> =
                [&a.a, &a.b, &a.c, &a.d].iter().map(|s| point(a.q, s)).collect::<Result<_, _>>()?;
            let v = crossratio_abs(&pts[0], &pts[1], &pts[2], &pts[3]).op("bruhat_tits", "crossratio_abs")?;
            let mut t = Table::new(&["value", "exponent"]);
            t.push(qpower_row(v));
            Ok(t)
        }
        BtCmd::Relheight(a) => {
            let alpha = quad(a.q, &a.alpha, a.alpha_upper)?;
            let beta = quad(a.q, &a.beta, a.beta_upper)?;
            let v = relative_height(&alpha, &beta).op("bruhat_tits", "relative_height")?;
            let mut t = Table::new(&["value", "exponent"]);
            t.push(qpower_row(v));
            Ok(t)
        }
        BtCmd::Normform(a) => {
            let alpha = quad(a.q, &a.alpha, a.upper)?;
            match &a.check {
                None => {
                    let v = norm_form(&alpha, &poly(a.q, &a.x)?, &poly(a.q, &a.y)?).op("bruhat_tits", "norm_form")?;
                    let mut t = Table::new(&["value", "exponent"]);
                    t.push(qpower_row(v));
                    Ok(t)
                }
                Some(g) => {
                    let parts: Vec<&str> = g.split(';').collect();
                    if parts.len() != 4 {
                        return Err(CliError::Usage("--check needs a;b;c;d".into()));
                    }
                    let e: Vec<FqPoly> = parts.iter().map(|s| poly(a.q, s)).collect::<Result<_, _>>()?;
                    let m = [[e[0].clone(), e[1].clone()], [e[2].clone(), e[3].clone()]];
                    let r = transform_check(&alpha, &m, &grid(a.q, a.grid)).op("bruhat_tits", "transform_check")?;
                    let mut t = Table::new(&["points", "mismatches", "pass"]);
                    t.push(vec![Cell::int(r.points), Cell::int(r.mismatches), Cell::text(r.pass)]);
                    Ok(t)
                }
            }
        }
        BtCmd::Covolume(a) => {
            let ideal = a.ideal.as_deref().map(|s| poly(a.q, s)).transpose()?;
            let r = covolume_suite(a.q, ideal.as_ref()).op("bruhat_tits", "covolume_suite")?;
            let mut t = Table::new(&["q", "nagao", "zeta", "closed_form", "ideal_covol", "verdict"]);
            t.push(vec![
                Cell::int(a.q),
                Cell::text(&r.nagao_series),
                Cell::text(&r.via_zeta),
                Cell::text(&r.closed_form),
                r.ideal_covol.as_ref().map_or(Cell::Empty, Cell::text),
                Cell::text(if r.pass { "pass" } else { "fail" }),
            ]);
            Ok(t)
        }
        BtCmd::Hecke(a) => {
            let i = poly(a.q, &a.ideal)?;
            let f = hecke_index(&i).op("bruhat_tits", "hecke_index")?;
            let e = if a.no_enumerate { None } else { Some(hecke_index_enumerated(&i).op("bruhat_tits", "hecke_index")?) };
            let mut t = Table::new(&["ideal", "formula", "enumerated", "pass"]);
            let pass = e.as_ref().map_or(Cell::Empty, |e| Cell::text(*e == f));
            t.push(vec![Cell::text(&i), Cell::int(&f), e.map_or(Cell::Empty, Cell::int), pass]);
            Ok(t)
        }
        BtCmd::Farey(a) => {
            let r = farey_count(a.q, a.t, a.depth).op("bruhat_tits", "farey_count")?;
            let mut t =
                Table::new(&["ball", "count", "fraction", "target", "psi", "psi_closed", "growth", "max_rel_dev"]);
            let target = 1.0 / r.histogram.len() as f64;
            for (i, &c) in r.histogram.iter().enumerate() {
                t.push(vec![
                    Cell::int(i),
                    Cell::int(c),
                    Cell::Real(c as f64 / r.points as f64),
                    Cell::Real(target),
                    Cell::int(&r.psi),
                    Cell::int(&r.psi_closed),
                    Cell::opt_real(r.growth),
                    Cell::Real(r.max_rel_dev),
                ]);
            }
            Ok(t)
        }
        BtCmd::QuadOrbit(a) => {
            let alpha = quad(a.q, &a.alpha, a.upper)?;
            let mode = match a.mode {
                OrbitModeArg::Complexity => OrbitMode::Complexity,
                OrbitModeArg::RelativeHeight => OrbitMode::RelativeHeight,
            };
            let r = quad_orbit_experiment(&alpha, mode, a.len).op("bruhat_tits", "quad_orbit_experiment")?;
            let mut t = Table::new(&["exponent", "count", "cumulative", "size", "monotone", "powers_ok"]);
            for &(n, cum) in &r.cumulative {
                let count = r.bins.iter().find(|b| b.0 == n).map_or(0, |b| b.1);
                t.push(vec![
                    Cell::int(n),
                    Cell::int(count),
                    Cell::int(cum),
                    Cell::int(r.size),
                    Cell::text(r.monotone),
                    Cell::text(r.powers_ok),
                ]);
            }
            Ok(t)
        }
    }
}
