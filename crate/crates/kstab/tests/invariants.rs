use kstab::config::{flag_blowup, toric_config, BlowupModel, MonomialFlagIdeal, ToricTestConfig};
use kstab::geometry::{AffinePiece, PLConvexFunction};
use kstab::invariants::{
    df_log, df_twisted_intersection, evaluate_config, evaluate_flag, j_functional, min_norm_intersection,
    normalization, s_coefficient, support_dimension, tilde_b0_boundary, tilde_b0_identity, uniform_margin,
    Twisting,
};
use kstab::toric::{Fan, PolarizedToric, ToricDivisor};
use kstab::weights::DEFAULT_K_MAX;
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

fn p1() -> PolarizedToric<Q> {
    let fan = Fan::new(1, vec![v(&[1]), v(&[-1])], vec![vec![0], vec![1]]).unwrap();
    PolarizedToric::new(fan, div(&[0, 1])).unwrap()
}

fn p2() -> PolarizedToric<Q> {
    let fan = Fan::new(2, vec![v(&[1, 0]), v(&[0, 1]), v(&[-1, -1])], vec![vec![0, 1], vec![1, 2], vec![2, 0]]).unwrap();
    PolarizedToric::new(fan, div(&[0, 0, 1])).unwrap()
}

fn f1() -> PolarizedToric<Q> {
    let rays = vec![v(&[1, 0]), v(&[0, 1]), v(&[-1, -1]), v(&[0, -1])];
    let fan = Fan::new(2, rays, vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]]).unwrap();
    PolarizedToric::new(fan, div(&[0, 0, 2, 1])).unwrap()
}

fn cfg(x: &PolarizedToric<Q>, pieces: &[(&[i64], Q)], c: Q, r: u64) -> ToricTestConfig<Q> {
    let ps = pieces.iter().map(|(g, c)| AffinePiece::new(v(g), c.clone())).collect();
    toric_config(x.clone(), PLConvexFunction::new(ps, x.moment_polytope().clone()).unwrap(), c, r).unwrap()
}

fn flagship(r: u64) -> ToricTestConfig<Q> {
    cfg(&p1(), &[(&[0], q(0, 1)), (&[2], q(-1, 1))], q(1, 1), r)
}

fn model(x: &PolarizedToric<Q>, n: u64, levels: &[&[&[i64]]]) -> BlowupModel<Q> {
    let fl = MonomialFlagIdeal::new(n, levels.iter().map(|l| l.iter().map(|e| v(e)).collect()).collect()).unwrap();
    flag_blowup(x, &fl, 1).unwrap()
}

#[test]
fn flagship_invariants() {
    let rep = evaluate_config(&flagship(1), None, DEFAULT_K_MAX).unwrap();
    assert_eq!(rep.df_untwisted, q(1, 4));
    assert_eq!(rep.min_norm, q(1, 4));
    assert_eq!(rep.min_norm_routes.components, Some(q(1, 4)));
    assert_eq!(rep.min_norm_routes.j_l, Some(q(1, 4)));
    assert_eq!(rep.min_norm_routes.intersection, Some(q(1, 4)));
    assert_eq!(rep.l2_norm, q(5, 48));
    assert_eq!(rep.uniform_margin, Some(q(1, 1)));
    assert_eq!(rep.slope, q(2, 1));
    assert!(!rep.trivial);
}

#[test]
fn product_and_trivial_configurations() {
    let x = p1();
    let rep = evaluate_config(&cfg(&x, &[(&[1], q(0, 1))], q(1, 1), 1), None, DEFAULT_K_MAX).unwrap();
    assert_eq!((rep.df_untwisted.clone(), rep.min_norm.clone(), rep.l2_norm.clone()), (q(0, 1), q(1, 2), q(1, 12)));
    assert_eq!(rep.uniform_margin, Some(q(0, 1)));

    let zero = PLConvexFunction::constant(q(0, 1), x.moment_polytope().clone());
    let triv = toric_config(x, zero, q(1, 1), 1).unwrap();
    let rep = evaluate_config(&triv, None, DEFAULT_K_MAX).unwrap();
    assert!(rep.trivial);
    assert_eq!((rep.df_untwisted, rep.min_norm, rep.l2_norm), (q(0, 1), q(0, 1), q(0, 1)));
    assert_eq!(rep.uniform_margin, None);
    assert!(rep.warnings.iter().any(|w| w.contains("trivial")));
    assert_eq!(uniform_margin(&q(0, 1), &q(0, 1)), Err(Error::TrivialConfiguration));
}

#[test]
fn affine_functions_on_surfaces() {
    let y = p2();
    let rep = evaluate_config(&cfg(&y, &[(&[1, 0], q(0, 1))], q(1, 1), 1), None, DEFAULT_K_MAX).unwrap();
    assert_eq!(rep.df_untwisted, q(0, 1));
    assert!(rep.min_norm > q(0, 1));
    let w = f1();
    let rep = evaluate_config(&cfg(&w, &[(&[0, 1], q(0, 1))], q(1, 1), 1), None, DEFAULT_K_MAX).unwrap();
    assert_ne!(rep.df_untwisted, q(0, 1));
    assert!(rep.min_norm > q(0, 1));
}

#[test]
fn normal_cone_dual_path() {
    let m = model(&p1(), 1, &[&[&[1, 0]]]);
    let rep = evaluate_flag(&m, None, DEFAULT_K_MAX).unwrap();
    let zero = div(&[0, 0]);
    assert_eq!(df_twisted_intersection(&m, &zero).unwrap(), rep.df_untwisted);
    assert_eq!(rep.min_norm, q(1, 2));
    assert_eq!(j_functional(&m, &div(&[0, 1])).unwrap(), min_norm_intersection(&m).unwrap());
    assert_eq!(j_functional(&m, &zero).unwrap(), q(0, 1));
    assert_eq!(normalization::<Q>(1), q(2, 1));
    assert_eq!(normalization::<Q>(2), q(4, 1));
}

#[test]
fn calabi_yau_twist_reduces_to_relative_canonical() {
    let m = model(&p1(), 1, &[&[&[1, 0]]]);
    let t = ToricDivisor::new(vec![q(1, 2), q(1, 2)]);
    let expected = m.power_dot(m.k_rel()).unwrap() / normalization::<Q>(1);
    assert_eq!(df_twisted_intersection(&m, &t).unwrap(), expected);
}

#[test]
fn log_df_examples() {
    let m = model(&p1(), 1, &[&[&[1, 0]]]);
    let tw = df_twisted_intersection(&m, &div(&[1, 0])).unwrap();
    let lg = df_log(&m, &div(&[1, 0]), &div(&[2, 0])).unwrap();
    assert!(lg < tw);
    let tw = df_twisted_intersection(&m, &div(&[0, 1])).unwrap();
    assert_eq!(df_log(&m, &div(&[0, 1]), &div(&[0, 2])).unwrap(), tw);
    let rep = evaluate_flag(&m, None, DEFAULT_K_MAX).unwrap();
    assert_eq!(df_log(&m, &div(&[0, 0]), &div(&[0, 0])).unwrap(), rep.df_untwisted);
    assert_eq!(df_log(&m, &div(&[0, 1]), &div(&[0, 1])), Err(Error::NotInLinearSystem));
    assert_eq!(df_log(&m, &div(&[0, 1]), &div(&[0, 2, 0])), Err(Error::NotInvariant));
}

#[test]
fn log_df_in_report() {
    let m = model(&p2(), 1, &[&[&[1, 0, 0], &[0, 1, 0]]]);
    let inside = Twisting { t: div(&[1, 0, 0]), d: Some(div(&[2, 0, 0])) };
    let rep = evaluate_flag(&m, Some(&inside), DEFAULT_K_MAX).unwrap();
    assert_eq!(rep.component_in_divisor, Some(true));
    assert!(rep.df_log.clone().unwrap() < rep.df_twisted.clone().unwrap());
    let outside = Twisting { t: div(&[0, 0, 1]), d: Some(div(&[0, 0, 2])) };
    let rep = evaluate_flag(&m, Some(&outside), DEFAULT_K_MAX).unwrap();
    assert_eq!(rep.component_in_divisor, Some(false));
    assert_eq!(rep.df_log, rep.df_twisted);
}

#[test]
fn s_coefficient_examples() {
    let m = model(&p1(), 1, &[&[&[1, 0]]]);
    assert_eq!(support_dimension(&m), 0);
    assert_eq!(s_coefficient(&m).unwrap(), q(1, 1));
    let m = model(&p2(), 1, &[&[&[1, 0, 0], &[0, 1, 0]]]);
    assert_eq!(support_dimension(&m), 0);
    assert_eq!(s_coefficient(&m).unwrap(), q(2, 1));
    let m = model(&p2(), 1, &[&[&[1, 0, 0]]]);
    assert_eq!(support_dimension(&m), 1);
}

#[test]
fn min_norm_scaling() {
    let base = evaluate_config(&flagship(1), None, DEFAULT_K_MAX).unwrap().min_norm;
    for s in 1..=3i64 {
        let rep = evaluate_config(&flagship(s as u64), None, DEFAULT_K_MAX).unwrap();
        assert_eq!(rep.min_norm, base.clone() * Q::from_int(s * s));
    }
}

#[test]
fn boundary_oracle_matches_identity() {
    let y = p2();
    let c = cfg(&y, &[(&[0, 0], q(1, 3)), (&[1, 0], q(0, 1)), (&[0, 1], q(0, 1))], q(1, 1), 2);
    let comps = c.central_components().unwrap();
    assert_eq!(tilde_b0_boundary(&c).unwrap(), tilde_b0_identity(&comps, 2));
}

#[test]
fn minimum_away_from_every_kink() {
    // The extreme weight of each component is taken over all of P; taken
    // over the cell alone it would give 11/8.
    let fan = Fan::new(1, vec![v(&[1]), v(&[-1])], vec![vec![0], vec![1]]).unwrap();
    let x = PolarizedToric::new(fan, div(&[0, 2])).unwrap();
    let c = cfg(&x, &[(&[-2], q(5, 2)), (&[-1], q(2, 1))], q(7, 2), 1);
    let rep = evaluate_config(&c, None, DEFAULT_K_MAX).unwrap();
    assert_eq!(rep.min_norm, q(17, 8));
    assert_eq!(rep.min_norm_routes.intersection, Some(q(17, 8)));
    assert_eq!(rep.min_norm_routes.j_l, Some(q(17, 8)));
    let comps = c.central_components().unwrap();
    assert_eq!(comps.iter().map(|c| c.lambda.clone()).collect::<Vec<_>>(), vec![q(-5, 2), q(-2, 1)]);
    assert_eq!(tilde_b0_boundary(&c).unwrap(), tilde_b0_identity(&comps, 1));
}

#[test]
fn twisted_report_on_config() {
    let tw = Twisting { t: div(&[0, 1]), d: None };
    let rep = evaluate_config(&flagship(1), Some(&tw), DEFAULT_K_MAX).unwrap();
    assert_eq!(rep.df_twisted.clone().unwrap() - rep.df_untwisted.clone(), rep.min_norm);
    assert_eq!(rep.slope, q(0, 1));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn j_is_additive(a in -2i64..=2, b in -2i64..=2, c in -2i64..=2, d in -2i64..=2) {
        let m = model(&p2(), 1, &[&[&[1, 0, 0], &[0, 1, 0]]]);
        let t1 = div(&[a, b, 0]);
        let t2 = div(&[0, c, d]);
        let both = &t1 + &t2;
        prop_assert_eq!(
            j_functional(&m, &both).unwrap(),
            j_functional(&m, &t1).unwrap() + j_functional(&m, &t2).unwrap()
        );
    }

    #[test]
    fn triviality_equivalence(s1 in 0i64..=3, s2 in 0i64..=3, c in 0i64..=2) {
        let x = p1();
        let g = cfg(&x, &[(&[-s1], q(c, 1)), (&[s2], q(0, 1))], Q::from_int(s1 + s2 + c + 1), 1);
        let rep = evaluate_config(&g, None, DEFAULT_K_MAX).unwrap();
        prop_assert_eq!(rep.min_norm == q(0, 1) , rep.l2_norm == q(0, 1) );
        prop_assert_eq!(rep.min_norm == q(0, 1) , g.is_trivial());
        prop_assert!(rep.l2_norm >= q(0, 1));
    }
}
