//! Acceptance checks, one line per criterion. Runs without the libtest
//! harness so the lines always reach the console; exits nonzero on failure.

mod common;

use std::f64::consts::PI;
use std::time::Instant;

use foambound::eva::{eva_a_algorithm1_matrix, eva_a_exact_matrix, maximize_eva, EvaObjective};
use foambound::geometry::{build_distance_matrix, reduce_distance_matrix, DensityClass, Point3};
use foambound::meshcheck::{clipped_area, fixtures, DiscProbe};
use foambound::polytope::{build_h_polytope, enumerate_vertices};
use foambound::{compact_foam_bounds, kelvin_cell_bound, kelvin_slicing_bound, theta_v_pi, DistanceMatrix};

type Outcome = (bool, String);
type Criterion = (&'static str, fn() -> Outcome);

fn tvp() -> f64 {
    theta_v_pi()
}

fn example_matrix() -> DistanceMatrix {
    DistanceMatrix::from_rows(&[
        vec![0.0, 1.0, 2.0, 4.0],
        vec![1.0, 0.0, 3.0, 4.0],
        vec![2.0, 3.0, 0.0, 4.0],
        vec![4.0, 4.0, 4.0, 0.0],
    ])
    .unwrap()
}

fn subset_eva(d: &DistanceMatrix, idx: &[usize]) -> f64 {
    let sub = d.subset(idx).unwrap();
    let red = reduce_distance_matrix(&sub, 0.0).unwrap();
    maximize_eva(&red, &EvaObjective::uniform(idx.len(), 0.0).unwrap())
        .unwrap()
        .value
}

fn worked_example() -> Outcome {
    let start = Instant::now();
    let d = example_matrix();
    let red = reduce_distance_matrix(&d, 0.0).unwrap();
    let reduced_ok = red.rows() == vec![vec![0.0, 1.0, 2.0], vec![1.0, 0.0, 3.0], vec![2.0, 3.0, 0.0]];
    let full = maximize_eva(&red, &EvaObjective::uniform(3, 0.0).unwrap()).unwrap();
    let eva_ok = (full.value - 28.659499).abs() <= 1e-6 && (full.value - 5.0 * tvp()).abs() <= 1e-9;
    let bc = subset_eva(&d, &[1, 2]);
    let bc_ok = (bc - 9.0 * tvp()).abs() <= 1e-9;
    let exact = eva_a_exact_matrix(&d, &EvaObjective::uniform(3, 0.0).unwrap(), 8).unwrap();
    let exact_ok = (exact.value - 16.0 * tvp()).abs() <= 1e-6;
    let singles: Vec<f64> = (0..3).map(|i| subset_eva(&d, &[i])).collect();
    let singles_ok = singles.iter().all(|&v| (v - exact.value).abs() <= 1e-9);
    let secs = start.elapsed().as_secs_f64();
    (
        reduced_ok && eva_ok && bc_ok && exact_ok && singles_ok && secs < 1.0,
        format!(
            "eva = {:.9} ({}θ_vπ), eva(B,C) = {:.3}θ_vπ, evA = {:.9} ({}θ_vπ), singletons {:?}θ_vπ, {secs:.3}s",
            full.value,
            full.value / tvp(),
            bc / tvp(),
            exact.value,
            exact.value / tvp(),
            singles.iter().map(|v| v / tvp()).collect::<Vec<_>>()
        ),
    )
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut mismatches = 0;
    let mut total_vertices = 0;
    for seed in 0..50u64 {
        let n = 1 + (seed as usize % 5);
        let h = if seed % 2 == 0 { 0.0 } else { 0.3 };
        let (pts, dom) = common::random_instance(1000 + seed, n, 5.0);
        let red = reduce_distance_matrix(&build_distance_matrix(&pts, &dom).unwrap(), h).unwrap();
        let fast = enumerate_vertices(&build_h_polytope(&red).unwrap(), 1e-7).unwrap();
        let slow = common::oracle_vertices(&red);
        total_vertices += slow.len();
        if !common::same_set(&fast.vertices, &slow, 1e-7) {
            mismatches += 1;
        }
    }
    let red = reduce_distance_matrix(&example_matrix(), 0.0).unwrap();
    let poly = build_h_polytope(&red).unwrap();
    let oracle = common::oracle_vertices(&red);
    let expected: Vec<Vec<f64>> = vec![
        vec![0.0, 0.0, 0.0],
        vec![1.0, 0.0, 0.0],
        vec![0.0, 1.0, 0.0],
        vec![0.0, 0.0, 2.0],
        vec![1.0, 0.0, 1.0],
        vec![0.0, 1.0, 2.0],
    ];
    let example_ok = common::same_set(&oracle, &expected, 1e-12)
        && common::same_set(&enumerate_vertices(&poly, 1e-7).unwrap().vertices, &expected, 1e-12);
    let odd = [0.0, 1.0, 1.0];
    let non_extreme = poly.is_feasible(&odd, 1e-9)
        && poly.active_rank(&odd, 1e-9) < 3
        && !oracle.iter().any(|v| common::max_diff(v, &odd) < 1e-9);
    let secs = start.elapsed().as_secs_f64();
    (
        mismatches == 0 && example_ok && non_extreme && secs < 30.0,
        format!(
            "50 instances, {total_vertices} oracle vertices, {mismatches} mismatches; example set ok = {example_ok}; (0,1,1) non-extreme = {non_extreme}; {secs:.2}s"
        ),
    )
}

fn kelvin() -> Outcome {
    let k = kelvin_cell_bound::<f64>(1.0).unwrap();
    let slicing = kelvin_slicing_bound(1.0);
    (
        (k.total - 12.38325).abs() <= 1e-3 && k.total < 13.3485 && k.total < slicing,
        format!("total = {:.6}, slicing bound = {:.4}", k.total, slicing),
    )
}

fn fixtures_inequality() -> Outcome {
    let start = Instant::now();
    let eps = 1e-3;
    let sphere = fixtures::icosphere::<f64>(4, 1.0).unwrap();
    let pole = sphere.vertices()[0];
    let probe = DiscProbe::new(pole, 1.0, DensityClass::Face, 1.0).unwrap();
    let a = clipped_area(&sphere, &probe, eps).unwrap().value;
    let sphere_ok = (a - PI).abs() <= 0.01 * PI && a >= PI * (-2.0f64).exp();

    let r = 0.5;
    let wedge = fixtures::triple_wedge::<f64>(120.0, 1.0, 4).unwrap();
    let wp = DiscProbe::new(Point3::origin(), r, DensityClass::Edge, 0.0).unwrap();
    let wedge_ratio = clipped_area(&wedge, &wp, eps).unwrap().value / (1.5 * PI * r * r);
    let wedge_ok = (0.99..=1.01).contains(&wedge_ratio);

    let cone = fixtures::tetrahedral_cone::<f64>(1.0, 16).unwrap();
    let cp = DiscProbe::new(Point3::origin(), r, DensityClass::Vertex, 0.0).unwrap();
    let cone_ratio = clipped_area(&cone, &cp, eps).unwrap().value / (tvp() * r * r);
    let cone_ok = (0.99..=1.01).contains(&cone_ratio);
    let secs = start.elapsed().as_secs_f64();
    (
        sphere_ok && wedge_ok && cone_ok && secs < 60.0,
        format!(
            "sphere A = {a:.6} (π = {PI:.6}, πe⁻² = {:.6}); wedge ratio = {wedge_ratio:.6}; cone ratio = {cone_ratio:.6}; {secs:.2}s",
            PI * (-2.0f64).exp()
        ),
    )
}

fn bound_chain() -> Outcome {
    let start = Instant::now();
    let mut failures = 0;
    let mut strict_gain = 0;
    for seed in 0..100u64 {
        let n = 1 + (seed as usize % 8);
        let h = if seed % 2 == 0 { 0.0 } else { 0.3 };
        let (pts, dom) = common::random_instance(2000 + seed, n, 5.0);
        let d = build_distance_matrix(&pts, &dom).unwrap();
        let obj = EvaObjective::uniform(n, h).unwrap();
        let exact = eva_a_exact_matrix(&d, &obj, 8).unwrap();
        let greedy = eva_a_algorithm1_matrix(&d, &obj).unwrap();
        let full = maximize_eva(&reduce_distance_matrix(&d, h).unwrap(), &obj)
            .unwrap()
            .value;
        let ok = greedy.value <= exact.value + 1e-9 * exact.value && exact.value >= full;
        if !ok {
            failures += 1;
        }
        if exact.value > full * (1.0 + 1e-9) {
            strict_gain += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    (
        failures == 0 && secs < 120.0,
        format!("100 instances, {failures} violations, evA > eva strictly on {strict_gain}; {secs:.2}s"),
    )
}

fn scale_covariance() -> Outcome {
    let mut worst: f64 = 0.0;
    for seed in 0..20u64 {
        let n = 1 + (seed as usize % 6);
        let h = if seed % 2 == 0 { 0.0 } else { 0.3 };
        let (pts, dom) = common::random_instance(3000 + seed, n, 5.0);
        let base = foambound::eva(&pts, &dom, h).unwrap().value;
        for lam in [0.5, 2.0, 10.0] {
            let scaled = foambound::eva(&pts.scaled(lam).unwrap(), &dom.scaled(lam), h / lam)
                .unwrap()
                .value;
            worst = worst.max((scaled - lam * lam * base).abs() / (lam * lam * base));
        }
    }
    (
        worst <= 1e-6,
        format!("20 instances × λ ∈ {{0.5, 2, 10}}, worst relative error {worst:.2e}"),
    )
}

fn compact_constants() -> Outcome {
    let mut ok = true;
    let mut worst: f64 = 0.0;
    for r2 in [0.5, 1.0, 2.5, 7.0] {
        let b = compact_foam_bounds::<f64>(1.5, 1.0 / r2).unwrap();
        let coeff = b.area_lower / (r2 * r2);
        worst = worst.max((coeff - 0.637752).abs());
        ok &= (coeff - 0.637752).abs() <= 1e-6;
        ok &= (coeff - 1.5 * PI / 2f64.exp()).abs() <= 1e-12;
    }
    for big_r in [0.3, 1.0, 4.0] {
        ok &= compact_foam_bounds(1.0, 1.0 / big_r).unwrap().area_lower <= 4.0 * PI * big_r * big_r;
    }
    (
        ok,
        format!("area/r₂² deviation from 0.637752 at most {worst:.2e}; sphere bound ≤ 4πR²"),
    )
}

fn eva_a_dominates() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for h in [0.0, 0.3] {
        let (pts, dom) = common::random_instance(0x5552, 8, 10.0);
        let d = build_distance_matrix(&pts, &dom).unwrap();
        let obj = EvaObjective::uniform(8, h).unwrap();
        let full = maximize_eva(&reduce_distance_matrix(&d, h).unwrap(), &obj)
            .unwrap()
            .value;
        let exact = eva_a_exact_matrix(&d, &obj, 8).unwrap();
        ok &= exact.value >= full;
        lines.push(format!(
            "h = {h}: eva = {:.4}θ_vπ, evA = {:.4}θ_vπ",
            full / tvp(),
            exact.value / tvp()
        ));
    }
    (ok, format!("8 points in a radius-10 ball; {}", lines.join("; ")))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("worked example", worked_example),
        ("vertex oracle equivalence", oracle_equivalence),
        ("Kelvin cell", kelvin),
        ("disc-area inequality on fixtures", fixtures_inequality),
        ("lower-bound chain", bound_chain),
        ("scale covariance", scale_covariance),
        ("compact-foam constants", compact_constants),
        ("evA dominates eva", eva_a_dominates),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let (pass, detail) = run();
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {}: {} [{name}] {detail}",
            k + 1,
            if pass { "PASS" } else { "FAIL" }
        );
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
