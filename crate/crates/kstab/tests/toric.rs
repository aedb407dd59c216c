use kstab::geometry::RationalPolytope;
use kstab::toric::{discrepancy, lct_newton, normal_fan, Fan, PolarizedToric, ToricDivisor};
use kstab::{Error, Field, Q};
use proptest::prelude::*;

fn q(n: i64, d: i64) -> Q {
    Q::from_frac(n, d)
}

fn v(c: &[i64]) -> Vec<Q> {
    c.iter().map(|&x| Q::from_int(x)).collect()
}

fn div(c: &[i64]) -> ToricDivisor<Q> {
    ToricDivisor::new(v(c))
}

fn p1() -> Fan<Q> {
    Fan::new(1, vec![v(&[1]), v(&[-1])], vec![vec![0], vec![1]]).unwrap()
}

fn p2() -> Fan<Q> {
    Fan::new(2, vec![v(&[1, 0]), v(&[0, 1]), v(&[-1, -1])], vec![vec![0, 1], vec![1, 2], vec![2, 0]]).unwrap()
}

fn p1xp1() -> Fan<Q> {
    let rays = vec![v(&[1, 0]), v(&[0, 1]), v(&[-1, 0]), v(&[0, -1])];
    Fan::new(2, rays, vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]]).unwrap()
}

fn bl_p2() -> Fan<Q> {
    let rays = vec![v(&[1, 0]), v(&[1, 1]), v(&[0, 1]), v(&[-1, -1])];
    Fan::new(2, rays, vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]]).unwrap()
}

fn p1_cubed() -> Fan<Q> {
    let mut rays = Vec::new();
    for i in 0..3 {
        for s in [1, -1] {
            let mut r = vec![0; 3];
            r[i] = s;
            rays.push(v(&r));
        }
    }
    let mut cones = Vec::new();
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                cones.push(vec![a, 2 + b, 4 + c]);
            }
        }
    }
    Fan::new(3, rays, cones).unwrap()
}

#[test]
fn normal_fans() {
    let seg = RationalPolytope::cuboid(&[(q(0, 1), q(1, 1))]).unwrap();
    let f = normal_fan(&seg).unwrap();
    let mut rays = f.rays().to_vec();
    rays.sort();
    assert_eq!(rays, vec![v(&[-1]), v(&[1])]);

    let f = normal_fan(&RationalPolytope::<Q>::standard_simplex(2).unwrap()).unwrap();
    let mut rays = f.rays().to_vec();
    rays.sort();
    assert_eq!(rays, vec![v(&[-1, -1]), v(&[0, 1]), v(&[1, 0])]);
    assert!(f.is_smooth());
    assert_eq!(f.cones().len(), 3);

    let sq = RationalPolytope::cuboid(&[(q(0, 1), q(1, 1)), (q(0, 1), q(1, 1))]).unwrap();
    let f = normal_fan(&sq).unwrap();
    assert_eq!(f.rays().len(), 4);
    assert_eq!(f.cones().len(), 4);

    let seg2 = RationalPolytope::from_vertices(2, &[v(&[0, 0]), v(&[1, 0])]).unwrap();
    assert_eq!(normal_fan(&seg2), Err(Error::NotFullDimensional));
}

#[test]
fn fan_validation() {
    let half = Fan::new(1, vec![v(&[1])], vec![vec![0]]);
    assert_eq!(half, Err(Error::NonCompleteFan));
    let singular = Fan::new(2, vec![v(&[1, 0]), v(&[1, 2]), v(&[-1, -1])], vec![vec![0, 1], vec![1, 2], vec![2, 0]]);
    assert!(!singular.unwrap().is_smooth());
}

#[test]
fn nef_and_ample() {
    assert!(p1().is_nef(&div(&[1, 0])).unwrap());
    assert!(p1().is_ample(&div(&[1, 0])).unwrap());
    let k = p2().canonical_divisor();
    assert!(p2().is_ample(&-&k).unwrap());
    assert!(!p2().is_nef(&k).unwrap());
    // Exceptional curve on the blow-up: negative kink across its walls.
    let e = div(&[0, 1, 0, 0]);
    assert!(!bl_p2().is_nef(&e).unwrap());
    // Pullback of a line is nef but not ample.
    let h = div(&[0, 0, 0, 1]);
    assert!(bl_p2().is_nef(&h).unwrap());
    assert!(!bl_p2().is_ample(&h).unwrap());
}

#[test]
fn intersection_examples() {
    let x = PolarizedToric::new(p2(), div(&[0, 0, 1])).unwrap();
    assert_eq!(x.degree().unwrap(), q(1, 1));
    let mk = -&p2().canonical_divisor();
    assert_eq!(x.intersection_number(&[mk.clone(), mk]).unwrap(), q(9, 1));

    let y = PolarizedToric::new(p1xp1(), div(&[0, 0, 1, 1])).unwrap();
    let k = p1xp1().canonical_divisor();
    assert_eq!(y.intersection_number(&[k, div(&[0, 0, 1, 1])]).unwrap(), q(-4, 1));

    let b = PolarizedToric::new(bl_p2(), div(&[0, 0, 1, 2])).unwrap();
    let e = div(&[0, 1, 0, 0]);
    assert_eq!(b.intersection_number(&[e.clone(), e]).unwrap(), q(-1, 1));
}

#[test]
fn canonical_divisors() {
    assert_eq!(p1().canonical_divisor(), div(&[-1, -1]));
    let x = PolarizedToric::new(p1(), div(&[1, 0])).unwrap();
    assert_eq!(x.dot_l(&p1().canonical_divisor()).unwrap(), q(-2, 1));
    let y = PolarizedToric::new(p2(), div(&[0, 0, 1])).unwrap();
    assert_eq!(y.dot_l(&p2().canonical_divisor()).unwrap(), q(-3, 1));
    assert_eq!(bl_p2().canonical_divisor(), div(&[-1, -1, -1, -1]));
}

#[test]
fn slope_examples() {
    let x = PolarizedToric::new(p1(), div(&[1, 0])).unwrap();
    let s = x.twisted_slope(&div(&[0, 0])).unwrap();
    assert_eq!((s.mu, s.c_alpha), (q(2, 1), q(2, 1)));
    assert_eq!(x.twisted_slope(&div(&[1, 0])).unwrap().mu, q(0, 1));
    let y = PolarizedToric::new(p2(), div(&[1, 1, 1])).unwrap();
    let half_k = p2().canonical_divisor().scale(&q(-1, 2));
    assert_eq!(y.twisted_slope(&half_k).unwrap().mu, q(0, 1));
    assert_eq!(y.twisted_slope(&div(&[0, 0, 0])).unwrap(), kstab::toric::Slope { mu: q(1, 1), c_alpha: q(2, 1) });
}

#[test]
fn discrepancy_examples() {
    let f = p2();
    assert_eq!(discrepancy(&v(&[1, 1]), &f, 0).unwrap(), q(1, 1));
    assert_eq!(discrepancy(&v(&[1, 0]), &f, 0).unwrap(), q(0, 1));
    assert_eq!(discrepancy(&v(&[2, 3]), &f, 0).unwrap(), q(4, 1));
    assert_eq!(discrepancy(&v(&[-1, 1]), &f, 0), Err(Error::RayOutsideCone));
    let singular =
        Fan::new(2, vec![v(&[1, 0]), v(&[1, 2]), v(&[-1, -1])], vec![vec![0, 1], vec![1, 2], vec![2, 0]]).unwrap();
    assert_eq!(discrepancy(&v(&[1, 1]), &singular, 0), Err(Error::NonSmoothAmbient(0)));
}

#[test]
fn lct_examples() {
    assert_eq!(lct_newton(&[v(&[1, 0]), v(&[0, 1])]).unwrap(), q(2, 1));
    assert_eq!(lct_newton(&[v(&[1, 0])]).unwrap(), q(1, 1));
    assert_eq!(lct_newton(&[v(&[2, 0]), v(&[0, 2])]).unwrap(), q(1, 1));
    assert_eq!(lct_newton(&[v(&[2, 0]), v(&[0, 3])]).unwrap(), q(5, 6));
    assert_eq!(lct_newton::<Q>(&[]), Err(Error::EmptyIdeal));
}

fn lct_brute(exps: &[(i64, i64)]) -> Q {
    let mut best: Option<Q> = None;
    for a in 0..=8i64 {
        for b in 0..=8i64 {
            if (a, b) == (0, 0) || num_integer::gcd(a, b) != 1 {
                continue;
            }
            let ord = exps.iter().map(|&(x, y)| a * x + b * y).min().unwrap();
            if ord == 0 {
                continue;
            }
            let val = q(a + b, ord);
            best = Some(best.map_or(val.clone(), |c: Q| c.min(val)));
        }
    }
    best.unwrap()
}

fn random_divisor(len: usize) -> impl Strategy<Value = ToricDivisor<Q>> {
    prop::collection::vec(-3i64..=3, len).prop_map(|c| div(&c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn intersection_symmetric_multilinear(a in random_divisor(6), b in random_divisor(6), c in random_divisor(6), d in random_divisor(6)) {
        let x = PolarizedToric::new(p1_cubed(), div(&[1, 1, 1, 1, 1, 1])).unwrap();
        let abc = x.intersection_number(&[a.clone(), b.clone(), c.clone()]).unwrap();
        prop_assert_eq!(abc.clone(), x.intersection_number(&[c.clone(), a.clone(), b.clone()]).unwrap());
        prop_assert_eq!(abc.clone(), x.intersection_number(&[b.clone(), a.clone(), c.clone()]).unwrap());
        let sum = x.intersection_number(&[&a + &d, b.clone(), c.clone()]).unwrap();
        prop_assert_eq!(sum, abc + x.intersection_number(&[d, b, c]).unwrap());
    }

    #[test]
    fn mixed_volume_route_matches_face_route(a in random_divisor(4), b in random_divisor(4)) {
        let l = div(&[0, 0, 1, 2]);
        let x = PolarizedToric::new(bl_p2(), l.clone()).unwrap();
        let mv = x.intersection_number(&[a.clone(), b.clone()]).unwrap();
        prop_assert_eq!(mv, bl_p2().intersect(&[a], &b, &l).unwrap());
    }

    #[test]
    fn nef_self_intersection_is_normalized_volume(a in 0i64..=3, b in 0i64..=3) {
        let d = div(&[0, 0, a, b]);
        let x = PolarizedToric::new(p1xp1(), div(&[0, 0, 1, 1])).unwrap();
        let vol = p1xp1().polytope(&d).unwrap().volume();
        prop_assert_eq!(x.intersection_number(&[d.clone(), d]).unwrap(), vol * q(2, 1));
    }

    #[test]
    fn slope_homogeneous(r in 1i64..=4, t in random_divisor(4)) {
        let x = PolarizedToric::new(bl_p2(), div(&[0, 0, 1, 2])).unwrap();
        let mu = x.twisted_slope(&t).unwrap().mu;
        let xr = x.with_power(&Q::from_int(r));
        prop_assert_eq!(xr.twisted_slope(&t).unwrap().mu, mu / Q::from_int(r));
    }

    #[test]
    fn exceptional_discrepancy_nonnegative(a in 1i64..=8, b in 1i64..=8) {
        prop_assume!(num_integer::gcd(a, b) == 1);
        prop_assert!(discrepancy(&v(&[a, b]), &p2(), 0).unwrap() >= q(0, 1));
    }

    #[test]
    fn lct_matches_brute_force(g in prop::collection::vec((0i64..=4, 0i64..=4), 1..=3)) {
        prop_assume!(g.iter().all(|&p| p != (0, 0)));
        let exps: Vec<Vec<Q>> = g.iter().map(|&(x, y)| v(&[x, y])).collect();
        // Monomials supported on one axis give zero order along the other axis.
        let fx = g.iter().any(|&(_, y)| y == 0);
        let fy = g.iter().any(|&(x, _)| x == 0);
        prop_assume!(fx && fy);
        prop_assert_eq!(lct_newton(&exps).unwrap(), lct_brute(&g));
    }
}
