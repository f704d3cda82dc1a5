use hgraphon::model::example_three_block;
use hgraphon::polytope::{step_membership, verify_convex_combination};
use hgraphon::random::{random_breakpoints, random_skeleton, random_step_graphon};
use hgraphon::{polytope_membership, Matrix, Rational, SkeletonGraph, Status, StepGraphon};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn exact_inputs(g: &StepGraphon) -> (Matrix<Rational>, Vec<Rational>) {
    let b = SkeletonGraph::from_step_graphon(g).incidence_matrix();
    (b, g.concentration_vector().entries().to_vec())
}

#[test]
fn rank_equals_q_minus_bipartite_components() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..200 {
        let s = random_skeleton(&mut rng, 8, 0.3);
        let b = s.incidence_matrix::<Rational>();
        assert_eq!(b.rank(), s.q() - s.bipartite_component_count(), "{s:?}");
        assert_eq!(b.rank() == s.q(), s.all_components_nonbipartite());
        if s.all_components_nonbipartite() {
            assert!(s.has_odd_cycle());
        }
    }
}

#[test]
fn incidence_columns_sum_to_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for _ in 0..100 {
        let s = random_skeleton(&mut rng, 8, 0.4);
        let b = s.incidence_matrix::<Rational>();
        for j in 0..b.cols() {
            let total: Rational = b.column(j).into_iter().sum();
            assert_eq!(total, q(1, 1));
        }
    }
}

#[test]
fn certificates_are_sound() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let mut seen = [0usize; 3];
    for _ in 0..300 {
        let g = random_step_graphon(&mut rng, 5, 12, 0.45);
        let (b, x) = exact_inputs(&g);
        let v = step_membership::<Rational>(&g);
        assert!(v.verify(&b, &x), "unverifiable verdict {v:?} for {g:?}");
        if let Some(lambda) = &v.certificate {
            assert_eq!(b.mul_vec(lambda), x);
            assert_eq!(lambda.iter().cloned().sum::<Rational>(), q(1, 1));
        }
        seen[v.status as usize] += 1;
    }
    assert!(seen.iter().all(|&c| c > 0), "status counts {seen:?}");
}

#[test]
fn verdicts_are_partition_independent() {
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    for _ in 0..100 {
        let g = random_step_graphon(&mut rng, 5, 10, 0.5);
        let status = step_membership::<Rational>(&g).status;
        let odd = SkeletonGraph::from_step_graphon(&g).has_odd_cycle();
        for _ in 0..3 {
            let r = g.refine(&random_breakpoints(&mut rng, 3, 40));
            assert_eq!(
                step_membership::<Rational>(&r).status,
                status,
                "{g:?} refined to {r:?}"
            );
            assert_eq!(SkeletonGraph::from_step_graphon(&r).has_odd_cycle(), odd);
        }
    }
}

#[test]
fn verdicts_ignore_positive_rescaling() {
    let mut rng = ChaCha8Rng::seed_from_u64(35);
    for _ in 0..100 {
        let g = random_step_graphon(&mut rng, 4, 10, 0.5);
        let scaled = g.scaled(&q(1, 3)).unwrap();
        assert_eq!(
            step_membership::<Rational>(&g).status,
            step_membership::<Rational>(&scaled).status
        );
    }
}

#[test]
fn float_mode_agrees_with_exact_mode() {
    let mut rng = ChaCha8Rng::seed_from_u64(36);
    let mut fixtures = vec![example_three_block()];
    fixtures.extend((0..200).map(|_| random_step_graphon(&mut rng, 5, 10, 0.5)));
    for g in &fixtures {
        let exact = step_membership::<Rational>(g);
        let float = step_membership::<f64>(g);
        assert_eq!(exact.status, float.status, "{g:?}");
        if let (Some(a), Some(b)) = (&exact.margin, &float.margin) {
            assert!((hgraphon::Scalar::to_f64(a) - b).abs() < 1e-9);
        }
    }
}

#[test]
fn hand_certificate_for_the_three_block_example() {
    let (b, x) = exact_inputs(&example_three_block());
    assert!(verify_convex_combination(
        &b,
        &x,
        &[q(3, 20), q(3, 10), q(3, 10), q(1, 4)]
    ));
    // brute-force the one-parameter solution family λ(s) on a fine grid: max-min is 1/5
    let best = (0..=600)
        .map(|k| q(k, 1000))
        .filter_map(|s| {
            let lambda = [
                q(3, 10) - s.clone() / q(2, 1),
                s.clone(),
                q(3, 5) - s.clone(),
                q(1, 10) + s / q(2, 1),
            ];
            verify_convex_combination(&b, &x, &lambda).then(|| lambda.iter().min().unwrap().clone())
        })
        .max()
        .unwrap();
    assert_eq!(best, q(1, 5));
    assert_eq!(
        step_membership::<Rational>(&example_three_block()).margin,
        Some(best)
    );
}

// Independent planar geometry for q <= 3.

fn cross(o: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

fn convex_hull(mut pts: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<(f64, f64)> = Vec::new();
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &(f64, f64)>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2
                && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 1e-15
            {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

fn segment_distance(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 {
        0.0
    } else {
        (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2).clamp(0.0, 1.0)
    };
    ((p.0 - a.0 - t * dx).powi(2) + (p.1 - a.1 - t * dy).powi(2)).sqrt()
}

/// Some(true) = clearly interior, Some(false) = clearly outside, None = within the band.
fn planar_oracle(hull: &[(f64, f64)], p: (f64, f64), band: f64) -> Option<bool> {
    let dist = match hull.len() {
        0 => return Some(false),
        1 => segment_distance(p, hull[0], hull[0]),
        _ => (0..hull.len())
            .map(|k| segment_distance(p, hull[k], hull[(k + 1) % hull.len()]))
            .fold(f64::INFINITY, f64::min),
    };
    if dist <= band {
        return None;
    }
    if hull.len() < 3 {
        return Some(false);
    }
    let inside = (0..hull.len()).all(|k| cross(hull[k], hull[(k + 1) % hull.len()], p) > 0.0);
    Some(inside)
}

#[test]
fn membership_matches_planar_geometry_on_a_simplex_grid() {
    const STEPS: usize = 200;
    const BAND: f64 = 0.01;
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    let mut compared = 0usize;
    for trial in 0..24 {
        let s = if trial < 8 {
            random_skeleton(&mut rng, 2, 0.6)
        } else {
            random_skeleton(&mut rng, 3, 0.5)
        };
        let q_ = s.q();
        let b = s.incidence_matrix::<f64>();
        let cols: Vec<Vec<f64>> = (0..b.cols()).map(|j| b.column(j)).collect();
        match q_ {
            1 => {
                let v = polytope_membership(&b, &[1.0]).unwrap();
                let expected = if cols.is_empty() {
                    Status::Outside
                } else {
                    Status::Interior
                };
                assert_eq!(v.status, expected);
            }
            2 => {
                let lo = cols.iter().map(|c| c[0]).fold(f64::INFINITY, f64::min);
                let hi = cols.iter().map(|c| c[0]).fold(f64::NEG_INFINITY, f64::max);
                for a in 0..=STEPS {
                    let x0 = a as f64 / STEPS as f64;
                    let v = polytope_membership(&b, &[x0, 1.0 - x0]).unwrap();
                    if cols.is_empty() || x0 < lo - BAND || x0 > hi + BAND {
                        assert_eq!(v.status, Status::Outside, "{s:?} x0={x0}");
                        compared += 1;
                    } else if hi - lo > 2.0 * BAND && x0 > lo + BAND && x0 < hi - BAND {
                        assert_eq!(v.status, Status::Interior, "{s:?} x0={x0}");
                        compared += 1;
                    }
                }
            }
            _ => {
                let hull = convex_hull(cols.iter().map(|c| (c[0], c[1])).collect());
                for a in 0..=STEPS {
                    for c in 0..=STEPS - a {
                        let p = (a as f64 / STEPS as f64, c as f64 / STEPS as f64);
                        let Some(inside) = planar_oracle(&hull, p, BAND) else {
                            continue;
                        };
                        let v = polytope_membership(&b, &[p.0, p.1, 1.0 - p.0 - p.1]).unwrap();
                        let expected = if inside {
                            Status::Interior
                        } else {
                            Status::Outside
                        };
                        assert_eq!(v.status, expected, "{s:?} at {p:?}");
                        compared += 1;
                    }
                }
            }
        }
    }
    assert!(compared > 20_000, "only {compared} grid points compared");
}
