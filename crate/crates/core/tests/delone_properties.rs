use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use badtri::delone::{
    chabauty_fell_distance, check_relatively_dense, check_uniform_discrete,
    orientation_discrepancy, star_discrepancy, within, Covering, PointSet, Region,
};
use badtri::gifs::{
    build_gifs, epsilon_rule, orientation_angles, triangle_depth, Angles, TileKind,
};

const TOL: f64 = 1e-9;

fn cloud(n: usize, span: f64) -> impl Strategy<Value = PointSet> {
    prop::collection::vec((-span..span, -span..span), 1..n)
        .prop_map(|v| {
            let mut pts: Vec<[f64; 2]> = v.into_iter().map(|(x, y)| [x, y]).collect();
            pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
            pts.dedup();
            pts
        })
        .prop_map(|pts| PointSet::new(pts).unwrap())
}

fn brute_nearest(pts: &[[f64; 2]], q: [f64; 2]) -> f64 {
    pts.iter()
        .map(|p| (p[0] - q[0]).hypot(p[1] - q[1]))
        .fold(f64::INFINITY, f64::min)
}

fn brute_star(xs: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mut best: f64 = 0.0;
    for &t in xs.iter().chain(std::iter::once(&1.0)) {
        let below = xs.iter().filter(|&&x| x < t).count() as f64;
        let upto = xs.iter().filter(|&&x| x <= t).count() as f64;
        best = best.max((below / n - t).abs()).max((upto / n - t).abs());
    }
    best
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn chabauty_fell_is_a_metric(a in cloud(20, 3.0), b in cloud(20, 3.0), c in cloud(20, 3.0)) {
        prop_assert_eq!(chabauty_fell_distance(&a, &a, TOL), 0.0);
        let ab = chabauty_fell_distance(&a, &b, TOL);
        prop_assert_eq!(ab, chabauty_fell_distance(&b, &a, TOL));
        prop_assert!((0.0..=1.0).contains(&ab));
        let ac = chabauty_fell_distance(&a, &c, TOL);
        let cb = chabauty_fell_distance(&c, &b, TOL);
        prop_assert!(ab <= ac + cb + 3.0 * TOL, "{ab} > {ac} + {cb}");
    }

    #[test]
    fn window_predicate_is_monotone(a in cloud(15, 2.0), b in cloud(15, 2.0)) {
        let mut seen = false;
        for k in 0..=200 {
            let ok = within(&a, &b, k as f64 / 200.0);
            prop_assert!(ok || !seen);
            seen |= ok;
        }
    }

    #[test]
    fn uniform_discreteness_matches_midpoints(a in cloud(25, 2.0), r in 0.01f64..0.6) {
        let pts = a.points();
        let mut crowded = false;
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                let m = [(pts[i][0] + pts[j][0]) / 2.0, (pts[i][1] + pts[j][1]) / 2.0];
                let inside = pts.iter().filter(|p| (p[0] - m[0]).hypot(p[1] - m[1]) < r).count();
                crowded |= inside >= 2;
            }
        }
        prop_assert_eq!(check_uniform_discrete(&a, r).certified(), !crowded);
    }

    #[test]
    fn star_discrepancy_matches_brute_force(xs in prop::collection::vec(0.0f64..1.0, 1..60)) {
        let fast = star_discrepancy(&xs).unwrap();
        prop_assert!((fast - brute_star(&xs)).abs() < 1e-12);
        prop_assert!(fast >= 0.5 / xs.len() as f64 - 1e-12);
    }

    #[test]
    fn covering_verdicts_hold_up(seed in 0u64..1000, r in 0.3f64..1.5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pts: Vec<[f64; 2]> = (0..60).map(|_| [rng.gen_range(0.0..4.0), rng.gen_range(0.0..4.0)]).collect();
        let ps = PointSet::new(pts.clone()).unwrap();
        let tri = [[1.0, 1.0], [3.0, 1.2], [1.8, 3.0]];
        match check_relatively_dense(&ps, r, &Region::Triangles(vec![tri]), 1e-3).unwrap() {
            Covering::Certified { .. } => {
                for _ in 0..2000 {
                    let (u, v): (f64, f64) = (rng.gen(), rng.gen());
                    let (u, v) = if u + v > 1.0 { (1.0 - u, 1.0 - v) } else { (u, v) };
                    let q = [
                        tri[0][0] + u * (tri[1][0] - tri[0][0]) + v * (tri[2][0] - tri[0][0]),
                        tri[0][1] + u * (tri[1][1] - tri[0][1]) + v * (tri[2][1] - tri[0][1]),
                    ];
                    prop_assert!(brute_nearest(&pts, q) <= r * (1.0 + 1e-6));
                }
            }
            Covering::Counterexample { point, .. } => {
                prop_assert!(triangle_depth(&tri, point) >= -1e-9);
                prop_assert!(brute_nearest(&pts, point) > r);
            }
            Covering::Inconclusive { .. } => {}
        }
    }
}

#[test]
fn disk_region_found_uncovered() {
    let ps = PointSet::new(vec![[0.0, 0.0], [2.0, 0.0]]).unwrap();
    let region = Region::Disk {
        center: [1.0, 0.0],
        radius: 1.0,
    };
    match check_relatively_dense(&ps, 1.2, &region, 1e-4).unwrap() {
        Covering::Counterexample { point, .. } => assert!(brute_nearest(ps.points(), point) > 1.2),
        other => panic!("{other:?}"),
    }
    assert!(check_relatively_dense(&ps, 1.5, &region, 1e-4)
        .unwrap()
        .certified());
}

#[test]
fn kronecker_sequence_has_small_discrepancy() {
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    for n in [10usize, 100, 1000, 10_000] {
        let xs: Vec<f64> = (1..=n).map(|k| (k as f64 * phi).fract()).collect();
        let d = star_discrepancy(&xs).unwrap();
        assert!(
            d <= 3.0 * (1.0 + (n as f64).ln()) / n as f64,
            "n = {n}: {d}"
        );
    }
}

#[test]
fn equilateral_orientations_stay_clustered() {
    let g = build_gifs(&Angles::equilateral()).unwrap();
    for eps in [0.05, 0.01, 0.002] {
        let p = epsilon_rule(TileKind::Scalene, eps, &g).unwrap();
        assert!(!orientation_angles(&p).is_empty());
        let d = orientation_discrepancy(&p).unwrap();
        assert!(d.dstar > 0.05, "eps = {eps}: {}", d.dstar);
    }
}
