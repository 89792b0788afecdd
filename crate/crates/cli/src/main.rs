//! `foambound` command-line front end.
//!
//! Every subcommand writes one JSON report (stdout unless `--output` is
//! given). Exit status: 0 on success, 2 for invalid input, 3 when the
//! numerical problem has no finite answer.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use foambound::bounds::{
    compact_foam_bounds, cost_lower_bound, kelvin_cell_bound, kelvin_slicing_bound, main_theorem_bound,
    pressure_lower_bound, CostInput, MainBoundInput, PressureInput,
};
use foambound::eva::{eva_a_algorithm1_matrix, eva_a_exact_matrix, maximize_eva, EvaAResult, DEFAULT_MAX_EXACT_N};
use foambound::geometry::{reduce_distance_matrix, DensityClass, Point3};
use foambound::instance::{matrix_to_json, Instance};
use foambound::meshcheck::{
    disc_area_curve, load_mesh, plateau_angle_check, verify_main_inequality, DiscProbe, DEFAULT_ANGLE_TOL_DEG,
};
use foambound::{theta_v_pi, Error, ErrorKind};

const TIE_RULE: &str =
    "equal values (relative 1e-12) prefer the smaller subset, then the lexicographically smaller one";
const GREEDY_TIE_RULE: &str =
    "collapsed radii are all removed; otherwise the smallest radius goes, lowest index first on ties";

#[derive(Parser)]
#[command(
    name = "foambound",
    version,
    about = "Area lower bounds for foams from vertex positions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Report path; stdout when omitted.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct InstanceArgs {
    /// Instance JSON file.
    #[arg(long, short)]
    input: PathBuf,
    /// Curvature bound; overrides the value stored in the instance (default 0).
    #[arg(long)]
    h: Option<f64>,
    /// Relative tolerance used to merge vertices of the radii polytope.
    #[arg(long)]
    tol: Option<f64>,
    #[command(flatten)]
    out: Output,
}

#[derive(Clone, Copy, ValueEnum)]
enum Theta {
    Vertex,
    Edge,
    Face,
}

impl From<Theta> for DensityClass {
    fn from(t: Theta) -> Self {
        match t {
            Theta::Vertex => DensityClass::Vertex,
            Theta::Edge => DensityClass::Edge,
            Theta::Face => DensityClass::Face,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Extrinsic vertex area of the full point set.
    Eva(InstanceArgs),
    /// Best extrinsic vertex area over all nonempty subsets.
    EvaExact {
        #[command(flatten)]
        inst: InstanceArgs,
        /// Largest point count searched exhaustively.
        #[arg(long, default_value_t = DEFAULT_MAX_EXACT_N)]
        max_exact_n: usize,
    },
    /// Greedy subset search with its removal trace.
    EvaGreedy(InstanceArgs),
    /// Disc-area lower bound θ e^{-2hR} π R².
    BoundsMain {
        #[arg(long, value_enum, default_value = "vertex")]
        theta: Theta,
        /// Mean curvature bound.
        #[arg(long, default_value_t = 0.0)]
        h: f64,
        /// Probe radius.
        #[arg(long)]
        radius: f64,
        #[command(flatten)]
        out: Output,
    },
    /// Radius and area bounds for a compact foam.
    BoundsCompact {
        #[arg(long, value_enum, default_value = "vertex")]
        theta: Theta,
        /// Mean curvature bound, must be positive.
        #[arg(long)]
        h: f64,
        #[command(flatten)]
        out: Output,
    },
    /// Area bound for one Kelvin cell.
    BoundsKelvin {
        /// Edge length.
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[command(flatten)]
        out: Output,
    },
    /// Lower bound for the cost function.
    BoundsCost {
        /// Number of cells.
        #[arg(long)]
        cells: f64,
        /// Number of vertices.
        #[arg(long)]
        vertices: f64,
        /// Total volume.
        #[arg(long)]
        volume: f64,
        /// Minimum distance between vertices.
        #[arg(long)]
        min_distance: f64,
        /// Raise the vertices-per-cell factor to at least 24.
        #[arg(long)]
        periodic: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Lower bound for the cell pressure.
    BoundsPressure {
        /// External pressure.
        #[arg(long, default_value_t = 0.0)]
        p_ext: f64,
        /// Surface tension.
        #[arg(long)]
        sigma: f64,
        /// Vertices per unit volume.
        #[arg(long)]
        vertex_density: f64,
        /// Minimum distance between vertices.
        #[arg(long)]
        min_distance: f64,
        #[command(flatten)]
        out: Output,
    },
    /// Compare a mesh disc area with the closed-form bound.
    MeshVerify {
        /// Mesh file (OFF, or JSON by extension).
        #[arg(long, short)]
        input: PathBuf,
        /// Probe centre "x,y,z".
        #[arg(long, conflicts_with = "center_vertex", value_parser = parse_point)]
        center: Option<[f64; 3]>,
        /// Use a mesh vertex as probe centre.
        #[arg(long)]
        center_vertex: Option<usize>,
        /// Probe radius.
        #[arg(long)]
        radius: f64,
        #[arg(long, value_enum, default_value = "face")]
        theta: Theta,
        /// Mean curvature bound.
        #[arg(long, default_value_t = 0.0)]
        h: f64,
        /// Absolute error budget of the clipped area.
        #[arg(long, default_value_t = 1e-3)]
        eps_area: f64,
        /// Also write a CSV of (radius, bound, measured) to this path.
        #[arg(long, requires = "curve_steps")]
        curve: Option<PathBuf>,
        /// Number of radii sampled for --curve.
        #[arg(long)]
        curve_steps: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Check Plateau's angle rules on a mesh.
    MeshAngles {
        /// Mesh file (OFF, or JSON by extension).
        #[arg(long, short)]
        input: PathBuf,
        /// Allowed deviation from the Plateau angles, in degrees.
        #[arg(long, default_value_t = DEFAULT_ANGLE_TOL_DEG)]
        angle_tol: f64,
        #[command(flatten)]
        out: Output,
    },
}

fn parse_point(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected x,y,z, got {s:?}"));
    }
    let mut p = [0.0; 3];
    for (slot, part) in p.iter_mut().zip(&parts) {
        *slot = part.parse().map_err(|_| format!("bad coordinate {part:?}"))?;
    }
    Ok(p)
}

fn emit(out: &Output, report: &Value) -> Result<(), Error> {
    let mut text = serde_json::to_string_pretty(report)?;
    text.push('\n');
    match &out.output {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn units(v: f64) -> f64 {
    v / theta_v_pi::<f64>()
}

fn load_instance(args: &InstanceArgs) -> Result<(Instance<f64>, f64, f64), Error> {
    let inst = Instance::<f64>::load(&args.input)?;
    let h = args.h.or(inst.h()).unwrap_or(0.0);
    if !(h >= 0.0) || !h.is_finite() {
        return Err(Error::InvalidInput(format!(
            "curvature bound h = {h} must be finite and ≥ 0"
        )));
    }
    let tol = args.tol.unwrap_or(1e-7);
    if !(tol > 0.0) {
        return Err(Error::InvalidInput(format!("tolerance {tol} must be positive")));
    }
    Ok((inst, h, tol))
}

fn instance_header(inst: &Instance<f64>, path: &Path, h: f64) -> Value {
    json!({
        "input": path.display().to_string(),
        "points": inst.num_points(),
        "h": h,
        "labels": inst.labels(),
        "classes": inst.classes().iter().map(|c| c.name()).collect::<Vec<_>>(),
    })
}

fn run_eva(args: &InstanceArgs) -> Result<(), Error> {
    let (inst, h, _tol) = load_instance(args)?;
    let d = inst.distance_matrix()?;
    let red = reduce_distance_matrix(&d, h)?;
    let res = maximize_eva(&red, &inst.objective(h)?)?;
    let report = json!({
        "command": "eva",
        "instance": instance_header(&inst, &args.input, h),
        "formula": "eva = max over admissible radii of sum_i pi theta_i exp(-2 h r_i) r_i^2",
        "formula_tag": "extrinsic-vertex-area",
        "eva": res.value,
        "eva_over_theta_v_pi": units(res.value),
        "theta_v_pi_units": units(res.value),
        "radii": res.radii,
        "attaining_vertex": res.attaining_vertex,
        "vertex_count": res.vertex_count,
        "convexity_certified": res.convexity_certified,
        "distance_matrix": matrix_to_json(&d.rows()),
        "reduced_matrix": matrix_to_json(&red.rows()),
    });
    emit(&args.out, &report)
}

fn eva_a_report(command: &str, inst: &Instance<f64>, args: &InstanceArgs, h: f64, res: &EvaAResult<f64>) -> Value {
    let labels = inst.labels();
    let subset_labels = labels.map(|l| res.subset.iter().map(|&i| l[i].clone()).collect::<Vec<_>>());
    let trace: Vec<Value> = res
        .trace
        .iter()
        .map(|s| {
            json!({
                "survivors": s.survivors,
                "eva": s.value,
                "eva_over_theta_v_pi": units(s.value),
                "removed": s.removed,
                "tie_broken": s.tie_broken,
            })
        })
        .collect();
    json!({
        "command": command,
        "instance": instance_header(inst, &args.input, h),
        "formula": "evA = max over nonempty subsets Z of eva(Z)",
        "formula_tag": "lower-extrinsic-vertex-area",
        "method": res.method.name(),
        "evA": res.value,
        "evA_over_theta_v_pi": units(res.value),
        "theta_v_pi_units": units(res.value),
        "eva": res.full_set_eva,
        "eva_over_theta_v_pi": units(res.full_set_eva),
        "subset": res.subset,
        "subset_labels": subset_labels,
        "radii": res.radii,
        "tie_rule": if res.method.name() == "exact" { TIE_RULE } else { GREEDY_TIE_RULE },
        "trace": trace,
    })
}

fn run_eva_exact(args: &InstanceArgs, max_n: usize) -> Result<(), Error> {
    let (inst, h, _tol) = load_instance(args)?;
    let res = eva_a_exact_matrix(&inst.distance_matrix()?, &inst.objective(h)?, max_n)?;
    emit(&args.out, &eva_a_report("eva-exact", &inst, args, h, &res))
}

fn run_eva_greedy(args: &InstanceArgs) -> Result<(), Error> {
    let (inst, h, _tol) = load_instance(args)?;
    let res = eva_a_algorithm1_matrix(&inst.distance_matrix()?, &inst.objective(h)?)?;
    emit(&args.out, &eva_a_report("eva-greedy", &inst, args, h, &res))
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Eva(args) => run_eva(&args),
        Command::EvaExact { inst, max_exact_n } => run_eva_exact(&inst, max_exact_n),
        Command::EvaGreedy(args) => run_eva_greedy(&args),
        Command::BoundsMain { theta, h, radius, out } => {
            let class = DensityClass::from(theta);
            let v = main_theorem_bound(MainBoundInput {
                theta: class.theta(),
                h,
                radius,
            })?;
            emit(
                &out,
                &json!({
                    "command": "bounds-main",
                    "formula": "A(D_R(o)) >= theta exp(-2 h R) pi R^2",
                    "formula_tag": "disc-area-bound",
                    "theta_class": class.name(),
                    "theta": class.theta::<f64>(),
                    "h": h,
                    "radius": radius,
                    "bound": v,
                    "theta_v_pi_units": units(v),
                }),
            )
        }
        Command::BoundsCompact { theta, h, out } => {
            let class = DensityClass::from(theta);
            let b = compact_foam_bounds(class.theta(), h)?;
            emit(
                &out,
                &json!({
                    "command": "bounds-compact",
                    "formula": "r_max >= 1/h; A >= theta pi / (e^2 h^2)",
                    "formula_tag": "compact-foam-bound",
                    "theta_class": class.name(),
                    "theta": class.theta::<f64>(),
                    "h": h,
                    "r_max_lower": b.r_max_lower,
                    "area_lower": b.area_lower,
                    "theta_v_pi_units": units(b.area_lower),
                }),
            )
        }
        Command::BoundsKelvin { a, out } => {
            let k = kelvin_cell_bound(a)?;
            emit(
                &out,
                &json!({
                    "command": "bounds-kelvin",
                    "formula": "8 hexagon discs / 2 + 24 vertex discs / 4 + 6 square remainders / 2",
                    "formula_tag": "kelvin-cell-bound",
                    "a": a,
                    "hexagons": k.hexagons,
                    "vertices": k.vertices,
                    "squares": k.squares,
                    "total": k.total,
                    "total_over_a2": k.total / (a * a),
                    "slicing_bound": kelvin_slicing_bound(a),
                    "slicing_formula": "6 (sqrt(3/2) + 1) a^2",
                }),
            )
        }
        Command::BoundsCost {
            cells,
            vertices,
            volume,
            min_distance,
            periodic,
            out,
        } => {
            let input = CostInput {
                cells,
                vertices,
                volume,
                min_distance,
            };
            let v = cost_lower_bound(input, periodic)?;
            emit(
                &out,
                &json!({
                    "command": "bounds-cost",
                    "formula": "mu >= vbar nu^2 A0(d)^3 with A0(d) = theta_v pi (d/2)^2",
                    "formula_tag": "cost-bound",
                    "cells": cells,
                    "vertices": vertices,
                    "volume": volume,
                    "min_distance": min_distance,
                    "periodic": periodic,
                    "vertices_per_cell": input.vertices_per_cell(),
                    "vertex_density": input.vertex_density(),
                    "a0": foambound::a0_vertex(min_distance),
                    "bound": v,
                }),
            )
        }
        Command::BoundsPressure {
            p_ext,
            sigma,
            vertex_density,
            min_distance,
            out,
        } => {
            let v = pressure_lower_bound(PressureInput {
                p_ext,
                sigma,
                vertex_density,
                min_distance,
            })?;
            emit(
                &out,
                &json!({
                    "command": "bounds-pressure",
                    "formula": "p >= p_ext + (3/2) sigma nu A0(d)",
                    "formula_tag": "pressure-bound",
                    "p_ext": p_ext,
                    "sigma": sigma,
                    "vertex_density": vertex_density,
                    "min_distance": min_distance,
                    "a0": foambound::a0_vertex(min_distance),
                    "bound": v,
                }),
            )
        }
        Command::MeshVerify {
            input,
            center,
            center_vertex,
            radius,
            theta,
            h,
            eps_area,
            curve,
            curve_steps,
            out,
        } => {
            let mesh = load_mesh::<f64>(&input)?;
            let c = match (center, center_vertex) {
                (Some(p), _) => Point3::from_array(p),
                (None, Some(i)) => *mesh
                    .vertices()
                    .get(i)
                    .ok_or_else(|| Error::InvalidInput(format!("mesh has no vertex {i}")))?,
                (None, None) => return Err(Error::InvalidInput("give --center or --center-vertex".into())),
            };
            let probe = DiscProbe::new(c, radius, theta.into(), h)?;
            let rep = verify_main_inequality(&mesh, &probe, eps_area)?;
            if let (Some(path), Some(steps)) = (curve, curve_steps) {
                if steps == 0 {
                    return Err(Error::InvalidInput("--curve-steps must be positive".into()));
                }
                let radii: Vec<f64> = (1..=steps).map(|k| radius * k as f64 / steps as f64).collect();
                let mut csv = String::from("radius,bound,measured\n");
                for s in disc_area_curve(&mesh, &probe, &radii, eps_area)? {
                    csv.push_str(&format!("{},{},{}\n", s.radius, s.bound, s.measured));
                }
                fs::write(path, csv)?;
            }
            emit(
                &out,
                &json!({
                    "command": "mesh-verify",
                    "formula": "A(D_R(o)) >= theta exp(-2 h R) pi R^2",
                    "formula_tag": "disc-area-bound",
                    "input": input.display().to_string(),
                    "triangles": mesh.triangles().len(),
                    "center": c.to_array(),
                    "radius": radius,
                    "theta_class": probe.class.name(),
                    "h": h,
                    "eps_area": eps_area,
                    "measured": rep.measured,
                    "uncertainty": rep.uncertainty,
                    "lhs": rep.lhs,
                    "rhs": rep.rhs,
                    "ratio": rep.ratio,
                    "pass": rep.pass,
                    "consistent": rep.consistent,
                }),
            )
        }
        Command::MeshAngles { input, angle_tol, out } => {
            let mesh = load_mesh::<f64>(&input)?;
            let r = plateau_angle_check(&mesh, angle_tol)?;
            emit(
                &out,
                &json!({
                    "command": "mesh-angles",
                    "formula": "three wings at 120 deg per border; border angles arccos(-1/3) at four-border vertices",
                    "formula_tag": "plateau-angle-rules",
                    "input": input.display().to_string(),
                    "angle_tol_deg": angle_tol,
                    "triple_edges_checked": r.triple_edges_checked,
                    "junctions_checked": r.junctions_checked,
                    "max_edge_deviation_deg": r.max_edge_deviation_deg,
                    "max_vertex_deviation_deg": r.max_vertex_deviation_deg,
                    "max_deviation_deg": r.max_deviation_deg,
                    "worst_edge": r.worst_edge,
                    "worst_junction": r.worst_junction,
                    "junction_angles_deg": r.junction_angles_deg,
                    "pass": r.pass,
                    "warnings": r.warnings,
                }),
            )
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e.kind() {
                ErrorKind::Validation => ExitCode::from(2),
                ErrorKind::Numerical => ExitCode::from(3),
            }
        }
    }
}
