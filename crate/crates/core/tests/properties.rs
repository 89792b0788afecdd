mod common;

use foambound::eva::{eva_a_algorithm1_matrix, eva_a_exact_matrix, maximize_eva, EvaObjective};
use foambound::geometry::{build_distance_matrix, reduce_distance_matrix, DensityClass, Point3, PointSet};
use foambound::meshcheck::{clipped_area, fixtures, DiscProbe};
use foambound::polytope::{build_h_polytope, enumerate_vertices, enumerate_vertices_active_set};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn instance(seed: u64, n: usize, h: f64) -> (foambound::DistanceMatrix, foambound::ReducedDistanceMatrix) {
    let (pts, dom) = common::random_instance(seed, n, 4.0);
    let d = build_distance_matrix(&pts, &dom).unwrap();
    let red = reduce_distance_matrix(&d, h).unwrap();
    (d, red)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn reduced_matrix_is_symmetric_and_bounded(seed in 0u64..10_000, n in 2usize..7, h in 0.0f64..1.0) {
        let (d, red) = instance(seed, n, h);
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(red.get(i, j), red.get(j, i));
                if i != j {
                    prop_assert!(red.get(i, j) <= d.get(i, j));
                    prop_assert!(red.get(i, j) <= d.boundary(i));
                    if h > 0.0 {
                        prop_assert!(red.get(i, j) <= 1.0 / h);
                    }
                }
            }
        }
    }

    #[test]
    fn fast_and_reference_enumeration_agree(seed in 0u64..10_000, n in 1usize..6, capped in any::<bool>()) {
        let (_, red) = instance(seed, n, if capped { 0.4 } else { 0.0 });
        let p = build_h_polytope(&red).unwrap();
        let fast = enumerate_vertices(&p, 1e-7).unwrap();
        let slow = enumerate_vertices_active_set(&p, 1e-7).unwrap();
        let oracle = common::oracle_vertices(&red);
        prop_assert!(common::same_set(&fast.vertices, &slow.vertices, 1e-7));
        prop_assert!(common::same_set(&fast.vertices, &oracle, 1e-7));
        // idempotent and sorted
        prop_assert_eq!(&enumerate_vertices(&p, 1e-7).unwrap().vertices, &fast.vertices);
        for w in fast.vertices.windows(2) {
            prop_assert!(w[0] < w[1]);
        }
        for v in &fast.vertices {
            prop_assert_eq!(p.active_rank(v, 1e-9), n);
        }
    }

    #[test]
    fn eva_beats_every_vertex_and_random_feasible_point(seed in 0u64..10_000, n in 1usize..6, h in prop::sample::select(vec![0.0, 0.3, 1.0])) {
        let (_, red) = instance(seed, n, h);
        let obj = EvaObjective::uniform(n, h).unwrap();
        let res = maximize_eva(&red, &obj).unwrap();
        let p = build_h_polytope(&red).unwrap();
        prop_assert!(p.is_feasible(&res.radii, 1e-9));
        prop_assert!((res.value - common::oracle_objective(&res.radii, h)).abs() <= 1e-9 * res.value.max(1.0));
        for v in common::oracle_vertices(&red) {
            prop_assert!(res.value >= common::oracle_objective(&v, h) * (1.0 - 1e-12));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..50 {
            let r: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..1.0)).collect();
            let limit = (0..red.num_points()).map(|i| if n == 1 { red.get(0, 0) } else {
                (0..n).filter(|&j| j != i).map(|j| red.get(i, j)).fold(f64::INFINITY, f64::min)
            }).fold(f64::INFINITY, f64::min);
            let cap = if h > 0.0 { 1.0 / h } else { f64::INFINITY };
            let r: Vec<f64> = r.iter().map(|x| x * 0.5 * limit.min(cap)).collect();
            prop_assert!(p.is_feasible(&r, 1e-12));
            prop_assert!(res.value >= common::oracle_objective(&r, h) * (1.0 - 1e-12));
        }
    }

    #[test]
    fn eva_is_monotone_in_h(seed in 0u64..10_000, n in 1usize..6, h in 0.0f64..0.5, dh in 0.0f64..0.5) {
        let (d, _) = instance(seed, n, 0.0);
        let value = |h: f64| {
            let red = reduce_distance_matrix(&d, h).unwrap();
            maximize_eva(&red, &EvaObjective::uniform(n, h).unwrap()).unwrap().value
        };
        prop_assert!(value(h + dh) <= value(h) * (1.0 + 1e-12));
    }

    #[test]
    fn eva_is_permutation_invariant(seed in 0u64..10_000, n in 2usize..6, h in prop::sample::select(vec![0.0, 0.3])) {
        let (pts, dom) = common::random_instance(seed, n, 4.0);
        let base = foambound::eva(&pts, &dom, h).unwrap().value;
        let mut rev: Vec<Point3<f64>> = pts.points().to_vec();
        rev.reverse();
        let other = foambound::eva(&PointSet::new(rev).unwrap(), &dom, h).unwrap().value;
        prop_assert!((base - other).abs() <= 1e-9 * base.max(1e-12));
    }

    #[test]
    fn greedy_and_exact_order(seed in 0u64..10_000, n in 1usize..6, h in prop::sample::select(vec![0.0, 0.3])) {
        let (d, red) = instance(seed, n, h);
        let obj = EvaObjective::uniform(n, h).unwrap();
        let full = maximize_eva(&red, &obj).unwrap().value;
        let exact = eva_a_exact_matrix(&d, &obj, 8).unwrap();
        let greedy = eva_a_algorithm1_matrix(&d, &obj).unwrap();
        prop_assert!(greedy.value >= full * (1.0 - 1e-12));
        prop_assert!(greedy.value <= exact.value * (1.0 + 1e-9));
        prop_assert!(!exact.subset.is_empty());
        prop_assert_eq!(exact.radii.len(), exact.subset.len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn clipped_area_is_monotone_in_radius(theta in 0.0..std::f64::consts::TAU, phi in 0.0..std::f64::consts::PI) {
        let mesh = fixtures::icosphere::<f64>(2, 1.0).unwrap();
        let c = Point3::new(theta.cos() * phi.sin(), theta.sin() * phi.sin(), phi.cos()) * 0.7;
        let eps = 1e-3;
        let mut last = 0.0;
        for k in 1..=8 {
            let probe = DiscProbe::new(c, 0.3 * k as f64, DensityClass::Face, 0.0).unwrap();
            let a = clipped_area(&mesh, &probe, eps).unwrap();
            prop_assert!(a.value + 2.0 * eps >= last);
            prop_assert!(a.uncertainty <= eps);
            last = a.value;
        }
    }
}

#[test]
fn clipped_area_converges_when_eps_halves() {
    let mesh = fixtures::icosphere::<f64>(3, 1.0).unwrap();
    let probe = DiscProbe::new(Point3::new(0.2, 0.1, 0.95), 0.8, DensityClass::Face, 0.0).unwrap();
    let mut eps = 1e-2;
    let mut prev = clipped_area(&mesh, &probe, eps).unwrap().value;
    for _ in 0..5 {
        eps /= 2.0;
        let next = clipped_area(&mesh, &probe, eps).unwrap().value;
        assert!((next - prev).abs() <= 1.5 * 2.0 * eps, "{prev} → {next} at eps {eps}");
        prev = next;
    }
}

#[test]
fn whole_mesh_inside_large_ball() {
    let eps = 1e-6;
    for mesh in [
        fixtures::icosphere::<f64>(2, 1.3).unwrap(),
        fixtures::cylinder::<f64>(0.5, 2.0, 24, 6).unwrap(),
        fixtures::triple_wedge::<f64>(120.0, 1.0, 3).unwrap(),
        fixtures::tetrahedral_cone::<f64>(1.0, 5).unwrap(),
    ] {
        let probe = DiscProbe::new(Point3::origin(), 10.0, DensityClass::Face, 0.0).unwrap();
        let a = clipped_area(&mesh, &probe, eps).unwrap();
        assert!((a.value - mesh.total_area()).abs() <= eps);
        assert_eq!(a.uncertainty, 0.0);
    }
}

#[test]
fn sphere_disc_areas_follow_closed_form() {
    let mesh = fixtures::icosphere::<f64>(4, 1.0).unwrap();
    let pole = mesh.vertices()[0];
    let probe = DiscProbe::new(pole, 1.0, DensityClass::Face, 1.0).unwrap();
    let whole = clipped_area(&mesh, &probe.with_radius(3.0).unwrap(), 1e-4)
        .unwrap()
        .value;
    assert!((whole - mesh.total_area()).abs() <= 1e-4);
    assert!((whole - 4.0 * std::f64::consts::PI).abs() <= 0.01 * 4.0 * std::f64::consts::PI);
    for r in [0.25, 0.5, 1.0, 1.5, 1.9] {
        let a = clipped_area(&mesh, &probe.with_radius(r).unwrap(), 1e-4).unwrap().value;
        let exact = std::f64::consts::PI * r * r;
        assert!((a - exact).abs() <= 0.01 * exact, "R = {r}: {a} vs {exact}");
    }
}

#[test]
fn main_inequality_holds_on_fixtures() {
    use foambound::meshcheck::verify_main_inequality;
    let eps = 1e-3;
    let sphere = fixtures::icosphere::<f64>(4, 1.0).unwrap();
    let o = sphere.vertices()[5];
    for r in [0.3, 1.0, 1.8] {
        let rep =
            verify_main_inequality(&sphere, &DiscProbe::new(o, r, DensityClass::Face, 1.0).unwrap(), eps).unwrap();
        assert!(rep.pass, "{rep:?}");
    }
    let cyl = fixtures::cylinder::<f64>(1.0, 3.0, 96, 16).unwrap();
    let o = cyl.vertices()[8 * 96];
    for r in [0.3, 0.8, 1.5] {
        // a unit cylinder has mean curvature 1/2
        let rep = verify_main_inequality(&cyl, &DiscProbe::new(o, r, DensityClass::Face, 0.5).unwrap(), eps).unwrap();
        assert!(rep.pass, "{rep:?}");
    }
    // planar cones through the probe are equality cases
    let wedge = fixtures::triple_wedge::<f64>(120.0, 1.0, 4).unwrap();
    let rep = verify_main_inequality(
        &wedge,
        &DiscProbe::new(Point3::origin(), 0.5, DensityClass::Edge, 0.0).unwrap(),
        eps,
    )
    .unwrap();
    assert!(rep.consistent && (rep.ratio - 1.0).abs() < 1e-3, "{rep:?}");
    let cone = fixtures::tetrahedral_cone::<f64>(1.0, 16).unwrap();
    let rep = verify_main_inequality(
        &cone,
        &DiscProbe::new(Point3::origin(), 0.5, DensityClass::Vertex, 0.0).unwrap(),
        eps,
    )
    .unwrap();
    assert!(rep.consistent && (rep.ratio - 1.0).abs() < 1e-3, "{rep:?}");
    // off-centre probe on the wedge: the wings still contain a half-disc each
    let rep = verify_main_inequality(
        &wedge,
        &DiscProbe::new(Point3::new(0.0, 0.0, 0.2), 0.4, DensityClass::Edge, 0.0).unwrap(),
        eps,
    )
    .unwrap();
    assert!(rep.consistent, "{rep:?}");
}

#[test]
fn single_precision_matches_double() {
    let (pts, dom) = common::random_instance(77, 4, 4.0);
    let d64 = foambound::eva(&pts, &dom, 0.0).unwrap().value;
    let p32 =
        foambound::geometry::PointSet::<f32>::new(pts.points().iter().map(|p| p.cast::<f32>()).collect()).unwrap();
    let dom32 = foambound::geometry::Domain::<f32>::ball(Point3::origin(), 4.0).unwrap();
    let d32 = foambound::eva(&p32, &dom32, 0.0).unwrap().value as f64;
    assert!((d32 - d64).abs() <= 1e-4 * d64, "{d32} vs {d64}");
}
