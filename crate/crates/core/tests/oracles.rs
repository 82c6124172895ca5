//! Library results against independent computations written from scratch
//! here: no library geometry beyond the vertex accessors is used on the
//! oracle side.

use quad_incenters::barycentric::{configuration, realize, solve_n};
use quad_incenters::construct::{bicentric_d_euclidean, bicentric_d_hyperbola, InscribedTriangle};
use quad_incenters::incenters::{incenter_pair, leon_anne_residual};
use quad_incenters::sample::{
    bary_sample, cyclic_quad, inscribed_triangle, random_convex_quad, sample_rng, tangential_quad,
    BaryKind,
};
use quad_incenters::{ConvexQuadrilateral, Point};

type P = (f64, f64);

fn xy(p: Point) -> P {
    (p.x, p.y)
}

fn sub(p: P, q: P) -> P {
    (p.0 - q.0, p.1 - q.1)
}

fn cross(u: P, v: P) -> f64 {
    u.0 * v.1 - u.1 * v.0
}

fn dist(p: P, q: P) -> f64 {
    (p.0 - q.0).hypot(p.1 - q.1)
}

fn tri_area(o: P, p: P, q: P) -> f64 {
    cross(sub(p, o), sub(q, o)) / 2.0
}

/// Signed distance from `p` to line `uv`, positive on the left.
fn left_distance(p: P, u: P, v: P) -> f64 {
    cross(sub(v, u), sub(p, u)) / dist(u, v)
}

fn lerp(p: P, q: P, t: f64) -> P {
    (p.0 + t * (q.0 - p.0), p.1 + t * (q.1 - p.1))
}

fn vertices(q: &ConvexQuadrilateral) -> [P; 4] {
    q.vertices().map(xy)
}

/// The point of the Newton line equidistant (inward) from the two given
/// sides. The difference of the signed distances is affine along the line,
/// so two evaluations locate its zero.
fn newton_line_equidistant(v: &[P; 4], s1: (usize, usize), s2: (usize, usize)) -> (P, f64) {
    let m = lerp(v[0], v[2], 0.5);
    let n = lerp(v[1], v[3], 0.5);
    let h = |t: f64| {
        let p = lerp(m, n, t);
        left_distance(p, v[s1.0], v[s1.1]) - left_distance(p, v[s2.0], v[s2.1])
    };
    let (h0, h1) = (h(0.0), h(1.0));
    let p = lerp(m, n, h0 / (h0 - h1));
    (p, left_distance(p, v[s1.0], v[s1.1]).abs())
}

/// `I1` from sides `AB`, `CD`; `I2` from sides `DA`, `BC`.
fn oracle_incenters(q: &ConvexQuadrilateral) -> ((P, f64), (P, f64)) {
    let v = vertices(q);
    (
        newton_line_equidistant(&v, (0, 1), (2, 3)),
        newton_line_equidistant(&v, (3, 0), (1, 2)),
    )
}

fn shoelace(v: &[P; 4]) -> f64 {
    (0..4).map(|i| cross(v[i], v[(i + 1) % 4])).sum::<f64>() / 2.0
}

#[test]
fn incenters_match_newton_line_oracle() {
    for id in 0..300 {
        let q = random_convex_quad(&mut sample_rng(11, 1, id));
        let pair = incenter_pair(&q).unwrap();
        let ((i1, r1), (i2, r2)) = oracle_incenters(&q);
        let s = q.scale();
        assert!(dist(xy(pair.i1), i1) <= 1e-9 * s, "sample {id}: I1");
        assert!(dist(xy(pair.i2), i2) <= 1e-9 * s, "sample {id}: I2");
        assert!((pair.r1 - r1).abs() <= 1e-9 * s);
        assert!((pair.r2 - r2).abs() <= 1e-9 * s);
    }
}

#[test]
fn area_identity_with_oracle_radii() {
    for id in 0..300 {
        let q = random_convex_quad(&mut sample_rng(12, 1, id));
        let v = vertices(&q);
        let ((_, r1), (_, r2)) = oracle_incenters(&q);
        let side = |i: usize| dist(v[i], v[(i + 1) % 4]);
        let (a, b, c, d) = (side(0), side(1), side(2), side(3));
        let area = shoelace(&v);
        assert!((a + c - area / r1).abs() <= 1e-9 * (a + b + c + d));
        assert!((b + d - area / r2).abs() <= 1e-9 * (a + b + c + d));
        let r = 2.0 * r1 * r2 / (r1 + r2);
        assert!((area - (a + b + c + d) * r / 2.0).abs() <= 1e-9 * area);
    }
}

#[test]
fn leon_anne_matches_triangle_areas_and_closed_form() {
    for id in 0..100 {
        let mut rng = sample_rng(13, 1, id);
        let q = random_convex_quad(&mut rng);
        let v = vertices(&q);
        let m = lerp(v[0], v[2], 0.5);
        let n = lerp(v[1], v[3], 0.5);
        let s2 = q.scale() * q.scale();
        for k in 0..10 {
            let o = (
                m.0 + (k as f64 - 4.5) * q.scale() / 3.0,
                m.1 + (k as f64 * 1.7 - 3.0) * q.scale() / 5.0,
            );
            let direct = tri_area(o, v[0], v[1]) - tri_area(o, v[1], v[2])
                + tri_area(o, v[2], v[3])
                - tri_area(o, v[3], v[0]);
            let closed = 2.0 * cross(sub(m, o), sub(n, o));
            let lib = leon_anne_residual(&q, Point::new(o.0, o.1));
            assert!((lib - direct).abs() <= 1e-12 * s2);
            assert!((lib.abs() - closed.abs()).abs() <= 1e-12 * s2);
        }
    }
}

#[test]
fn tangential_incenters_coincide_with_oracle() {
    for id in 0..100 {
        let (q, circle) = tangential_quad(&mut sample_rng(14, 1, id));
        let ((i1, r1), (i2, r2)) = oracle_incenters(&q);
        let s = q.scale();
        assert!(dist(i1, xy(circle.center)) <= 1e-9 * s);
        assert!(dist(i2, xy(circle.center)) <= 1e-9 * s);
        assert!((r1 - circle.radius).abs() <= 1e-9 * s && (r2 - circle.radius).abs() <= 1e-9 * s);
    }
}

#[test]
fn cyclic_incenter_divides_mn_in_diagonal_ratio() {
    for id in 0..100 {
        let (q, _) = cyclic_quad(&mut sample_rng(15, 1, id));
        let v = vertices(&q);
        let (e, f) = (dist(v[0], v[2]), dist(v[1], v[3]));
        let m = lerp(v[0], v[2], 0.5);
        let n = lerp(v[1], v[3], 0.5);
        let expected = lerp(m, n, e / (e + f));
        let pair = incenter_pair(&q).unwrap();
        let s = q.scale();
        assert!(dist(xy(pair.i1), expected) <= 1e-9 * s, "sample {id}");
        assert!(dist(xy(pair.i2), expected) <= 1e-9 * s, "sample {id}");
    }
}

/// Scans the arc from `C` to `A` away from `B` for a sign change of the
/// Pitot difference and bisects it.
fn oracle_fourth_vertex(t: &InscribedTriangle) -> P {
    let o = xy(t.circle.center);
    let r = t.circle.radius;
    let ang = |p: Point| (p.y - o.1).atan2(p.x - o.0);
    let tau = std::f64::consts::TAU;
    let (ta, tb, tc) = (ang(t.a), ang(t.b), ang(t.c));
    // sweep from C in the direction that does not pass B
    let ccw = |from: f64, to: f64| (to - from).rem_euclid(tau);
    let (dir, span) = if ccw(tc, tb) > ccw(tc, ta) {
        (1.0, ccw(tc, ta))
    } else {
        (-1.0, ccw(ta, tc))
    };
    let at = |s: f64| {
        let th = tc + dir * span * s;
        (o.0 + r * th.cos(), o.1 + r * th.sin())
    };
    let (a, b, c) = (xy(t.a), xy(t.b), xy(t.c));
    let pitot = |s: f64| {
        let d = at(s);
        dist(a, b) + dist(c, d) - dist(b, c) - dist(d, a)
    };
    let steps = 4000;
    let mut lo = 1e-9;
    let mut found = None;
    for i in 1..=steps {
        let hi = (i as f64 / steps as f64).min(1.0 - 1e-9);
        if pitot(lo).signum() != pitot(hi).signum() {
            found = Some((lo, hi));
            break;
        }
        lo = hi;
    }
    let (mut lo, mut hi) = found.expect("sign change on the arc");
    for _ in 0..200 {
        let mid = (lo + hi) / 2.0;
        if pitot(mid).signum() == pitot(lo).signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    at((lo + hi) / 2.0)
}

#[test]
fn bicentric_vertex_matches_pitot_scan() {
    for id in 0..100 {
        let t = inscribed_triangle(&mut sample_rng(16, 1, id));
        let d = oracle_fourth_vertex(&t);
        let r = t.circle.radius;
        let h = bicentric_d_hyperbola(&t).unwrap();
        let e = bicentric_d_euclidean(&t);
        assert!(dist(xy(h.d), d) <= 1e-9 * r, "sample {id}: hyperbola");
        assert!(dist(xy(e.d), d) <= 1e-9 * r, "sample {id}: euclidean");
    }
}

#[test]
fn closed_form_collinearity_root_examples() {
    let tri = quad_incenters::barycentric::ReferenceTriangle::new(5.0, 4.0, 3.0).unwrap();
    // (b + c − k) / ((b − c + k) + (b − c − k)·m), evaluated by hand
    assert_eq!(solve_n(&tri, 2.0, 1.0).unwrap(), 2.5);
    assert!((solve_n(&tri, 1.0, -2.0).unwrap() - 6.0 / (2.0 + 0.0)).abs() < 1e-15);
}

#[test]
fn forced_barycentric_solutions_have_coincident_cartesian_incenters() {
    let mut convex = 0;
    for id in 0..400 {
        let mut rng = sample_rng(17, 1, id);
        let kind = [
            BaryKind::ForcedTangential,
            BaryKind::ForcedCyclicBracket,
            BaryKind::ForcedBicentric,
        ][id as usize % 3];
        let s = bary_sample(&mut rng, kind);
        let n = solve_n(&s.tri, s.k, s.m).unwrap();
        let cfg = configuration(&s.tri, s.m, n, s.k).unwrap();
        let Ok(v) = realize(&s.tri, &cfg) else {
            continue;
        };
        let Ok(q) = ConvexQuadrilateral::from_array(v) else {
            continue;
        };
        convex += 1;
        let ((i1, _), (i2, _)) = oracle_incenters(&q);
        assert!(dist(i1, i2) <= 1e-9 * q.scale(), "sample {id} ({kind:?})");
    }
    assert!(convex >= 50, "only {convex} convex realizations");
}

#[test]
fn generic_barycentric_solutions_have_distinct_cartesian_incenters() {
    for id in 0..200 {
        let s = bary_sample(&mut sample_rng(18, 1, id), BaryKind::Generic);
        let n = solve_n(&s.tri, s.k, s.m).unwrap();
        let cfg = configuration(&s.tri, s.m, n, s.k).unwrap();
        let Ok(v) = realize(&s.tri, &cfg) else {
            continue;
        };
        let Ok(q) = ConvexQuadrilateral::from_array(v) else {
            continue;
        };
        let ((i1, _), (i2, _)) = oracle_incenters(&q);
        assert!(dist(i1, i2) > 1e-9 * q.scale(), "sample {id}");
    }
}
