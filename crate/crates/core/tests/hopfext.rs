use std::collections::BTreeSet;

use ellvb_core::exactalg::{FGAbGroup, LocalizedHomology, Poly};
use ellvb_core::hopfext::*;
use ellvb_core::Error;
use num_bigint::BigInt;
use proptest::prelude::*;

fn k(n: usize, c: i64) -> Poly {
    Poly::constant(n, BigInt::from(c))
}

/// Independent oracle for the right unit: push `x ↦ x + r`, `y ↦ y + s·x + t`
/// through the long Weierstraß equation and read off the new coefficients.
/// Variables: a1 a2 a3 a4 a6 r s t x y.
fn substituted_coefficients() -> Vec<Poly> {
    let n = 10;
    let v = |i| Poly::var(n, i);
    let (a1, a2, a3, a4, a6, r, s, t, x, y) = (v(0), v(1), v(2), v(3), v(4), v(5), v(6), v(7), v(8), v(9));
    let xx = &x + &r;
    let yy = &(&y + &(&s * &x)) + &t;
    let lhs = &(&(&yy * &yy) + &(&(&a1 * &xx) * &yy)) + &(&a3 * &yy);
    let rhs = &(&(&(&(&xx * &xx) * &xx) + &(&a2 * &(&xx * &xx))) + &(&a4 * &xx)) + &a6;
    let eq = &lhs - &rhs;
    // eq = y² + a1'xy + a3'y − x³ − a2'x² − a4'x − a6'
    let coeff_of = |ex: u16, ey: u16| -> Poly {
        let mut out = Poly::zero(8);
        for (m, c) in eq.terms() {
            if m.0[8] == ex && m.0[9] == ey {
                let mut e = m.0[..8].to_vec();
                e.truncate(8);
                out.add_term(ellvb_core::exactalg::Monomial(e), c.clone());
            }
        }
        out
    };
    vec![coeff_of(1, 1), -&coeff_of(2, 0), coeff_of(0, 1), -&coeff_of(1, 0), -&coeff_of(0, 0)]
}

#[test]
fn right_unit_matches_coordinate_change() {
    let alg = build_algebroid().unwrap();
    let oracle = substituted_coefficients();
    assert_eq!(alg.right_unit(), &oracle[..]);
    // η_R(a1) = a1 + 2s
    let a1 = Poly::var(8, 0);
    let s = Poly::var(8, 6);
    assert_eq!(alg.right_unit()[0], &a1 + &(&k(8, 2) * &s));
}

#[test]
fn coproduct_matches_composition() {
    // compose (r1,s1,t1) then (r2,s2,t2) on x, y and read the composite
    let n = 8;
    let v = |i| Poly::var(n, i);
    let (r1, s1, t1, r2, s2, t2, x, y) = (v(0), v(1), v(2), v(3), v(4), v(5), v(6), v(7));
    // first: x = x' + r1, y = y' + s1 x' + t1; second: x' = x + r2, y' = y + s2 x + t2
    let x1 = &x + &r2;
    let y1 = &(&y + &(&s2 * &x)) + &t2;
    let xc = &x1 + &r1;
    let yc = &(&y1 + &(&s1 * &x1)) + &t1;
    let r = &xc - &x;
    let s_minus = &yc - &y;
    // s is the coefficient of x in yc − y, t the constant part
    let mut sc = Poly::zero(n);
    let mut tc = Poly::zero(n);
    for (m, c) in s_minus.terms() {
        let mut e = m.0.clone();
        if e[6] == 1 {
            e[6] = 0;
            sc.add_term(ellvb_core::exactalg::Monomial(e), c.clone());
        } else {
            tc.add_term(m.clone(), c.clone());
        }
    }
    // relabel (r1 s1 t1 r2 s2 t2) into A[x1,x2] = (a.., r1 s1 t1, r2 s2 t2)
    let map: Vec<usize> = vec![5, 6, 7, 8, 9, 10, 11, 12];
    let alg = build_algebroid().unwrap();
    let to = |p: &Poly| p.relabel(&map, 13).substitute(&(0..13).map(|i| Poly::var(11, i.min(10))).collect::<Vec<_>>());
    assert_eq!(alg.coproduct()[0], to(&r));
    assert_eq!(alg.coproduct()[1], to(&sc));
    assert_eq!(alg.coproduct()[2], to(&tc));
    // Ψ(t) = t⊗1 + 1⊗t + s⊗r
    let h = |i| Poly::var(11, i);
    assert_eq!(alg.coproduct()[2], &(&h(7) + &h(10)) + &(&h(6) * &h(8)));
}

#[test]
fn structure_identities() {
    for alg in [HopfAlgebroid::weierstrass().unwrap(), HopfAlgebroid::short_weierstrass().unwrap()] {
        assert!(alg.coassociativity_holds());
        assert!(alg.right_unit_compatible());
        alg.check_cosimplicial(4).unwrap();
        // ε = 0 on the cover generators, ε∘η_R = id
        for c in alg.counit() {
            assert!(c.is_zero());
        }
        let na = alg.na();
        let mut eps: Vec<Poly> = (0..na).map(|a| Poly::var(na, a)).collect();
        eps.extend(alg.counit().iter().cloned());
        for (a, p) in alg.right_unit().iter().enumerate() {
            assert_eq!(p.substitute(&eps), Poly::var(na, a));
        }
        // η_R(Δ) = η_L(Δ)
        let d0 = alg.coface(0, 0);
        assert_eq!(alg.discriminant().substitute(&d0), alg.widen(alg.discriminant(), 1));
    }
}

#[test]
fn discriminant_of_known_curves() {
    let alg = build_algebroid().unwrap();
    let at = |vals: [i64; 5]| -> BigInt {
        let imgs: Vec<Poly> = vals.iter().map(|&v| k(0, v)).collect();
        alg.discriminant().substitute(&imgs).coeff(&ellvb_core::exactalg::Monomial::one(0))
    };
    // y² = x³ − x
    assert_eq!(at([0, 0, 0, -1, 0]), BigInt::from(64));
    // y² + y = x³ − x²  (conductor 11)
    assert_eq!(at([0, -1, 1, 0, 0]), BigInt::from(-11));
    // y² + xy + y = x³ + 4x − 6  (conductor 14)
    assert_eq!(at([1, 0, 1, 4, -6]), BigInt::from(-21952));
    // on y² = f(x) the discriminant is 16·disc(f)
    let short = HopfAlgebroid::short_weierstrass().unwrap();
    let v = |i| Poly::var(3, i);
    let (a2, a4, a6) = (v(0), v(1), v(2));
    let disc = &(&(&(&(&(&a2 * &a2) * &(&a4 * &a4)) - &(&k(3, 4) * &(&(&a4 * &a4) * &a4)))
        - &(&k(3, 4) * &(&(&(&a2 * &a2) * &a2) * &a6)))
        - &(&k(3, 27) * &(&a6 * &a6)))
        + &(&k(3, 18) * &(&(&a2 * &a4) * &a6));
    assert_eq!(short.discriminant(), &(&k(3, 16) * &disc));
}

#[test]
fn cobar_examples() {
    let c = cobar(2, 8).unwrap();
    assert_eq!(c.dim(0, 2), 2);
    let names: BTreeSet<String> =
        c.basis(0, 2).iter().map(|m| build_algebroid().unwrap().render(&Poly::monomial(m.clone(), 1.into()), 0)).collect();
    assert_eq!(names, ["a1^2".to_string(), "a2".to_string()].into_iter().collect());
    assert_eq!(c.dim(1, 0), 0);
    let dd = c.differential(1, 6).mul(c.differential(0, 6)).unwrap();
    assert!(dd.is_zero());
    c.verify_d_squared().unwrap();
}

#[test]
fn cap_is_enforced() {
    let full = build_algebroid().unwrap();
    match CobarComplex::build(&full, 3, 20, DEFAULT_BASIS_CAP) {
        Err(Error::ResourceCap { size, cap, .. }) => assert!(size > cap),
        other => panic!("expected a cap error, got {other:?}"),
    }
    assert!(matches!(ext_chart_with_cap(2, 12, 3, 10), Err(Error::ResourceCap { .. })));
}

#[test]
fn d_squared_vanishes_explicitly() {
    let short = HopfAlgebroid::short_weierstrass().unwrap();
    CobarComplex::build(&short, 3, 20, DEFAULT_BASIS_CAP).unwrap().verify_d_squared().unwrap();
    let full = build_algebroid().unwrap();
    assert!(verify_d_squared_symbolic(&full, 3, 12, DEFAULT_BASIS_CAP).unwrap() > 1000);
}

/// `#{(a,b,c) : 4a + 6b + 12c = n, b ∈ {0,1}}` by direct enumeration.
fn modular_form_count(n: usize) -> usize {
    let mut count = 0;
    for c in 0..=n / 12 {
        for b in 0..=1 {
            for a in 0..=n / 4 {
                if 4 * a + 6 * b + 12 * c == n {
                    count += 1;
                }
            }
        }
    }
    count
}

#[test]
fn ext0_matches_modular_forms() {
    let chart = ext_chart(0, 24, 3).unwrap();
    for n in 0..=24 {
        let g = chart.group(0, n).unwrap();
        assert!(g.torsion().is_empty());
        assert_eq!(g.free_rank(), modular_form_count(n), "n = {n}");
    }
    let full = ExtChart::compute(build_algebroid().unwrap(), 0, 12, 3, DEFAULT_BASIS_CAP).unwrap();
    for n in 0..=12 {
        assert_eq!(full.integral_group(0, n).unwrap().free_rank(), modular_form_count(n), "n = {n}");
    }
}

#[test]
fn short_and_long_forms_agree_away_from_two() {
    for p in [3u64, 5] {
        let short = ext_chart(2, 10, p).unwrap();
        let full = ExtChart::compute(build_algebroid().unwrap(), 2, 10, p, DEFAULT_BASIS_CAP).unwrap();
        for s in 0..=2 {
            for n in 0..=10 {
                assert_eq!(short.group(s, n).unwrap(), full.group(s, n).unwrap(), "p={p} ({s},{n})");
            }
        }
    }
}

#[test]
fn modular_engine_matches_integral_engine() {
    let chart = ext_chart(2, 20, 3).unwrap();
    let c = chart.complex();
    for s in 1..=2 {
        for n in 0..=20 {
            let fast = LocalizedHomology::compute(c.differential(s, n), c.differential(s - 1, n), 3).unwrap();
            let slow = LocalizedHomology::exact(c.differential(s, n), c.differential(s - 1, n), 3).unwrap();
            assert_eq!(fast.group(), slow.group(), "({s},{n})");
            for g in 0..fast.group().ngens() {
                let z = fast.generator(g);
                assert!(!slow.is_zero(&z).unwrap());
            }
        }
    }
}

#[test]
fn chart_at_three() {
    let chart = ext_chart(3, 20, 3).unwrap();
    let z3 = FGAbGroup::cyclic(3);
    assert_eq!(chart.group(1, 2).unwrap(), &z3);
    assert_eq!(chart.group(2, 6).unwrap(), &z3);
    assert_eq!(chart.names_at(1, 2), vec!["alpha".to_string()]);
    assert_eq!(chart.names_at(2, 6), vec!["beta".to_string()]);
    assert_eq!(chart.names_at(0, 12), vec!["Delta".to_string()]);
    let alpha = chart.class("alpha").unwrap();
    let beta = chart.class("beta").unwrap();
    let unit = chart.class("1").unwrap();
    // named classes are cycles and nonzero
    for c in chart.named().values() {
        assert!(!chart.is_zero(c).unwrap());
        let d = cobar_differential(chart.algebroid(), c.s, &c.cocycle);
        assert!(d.is_zero());
    }
    assert!(chart.is_zero(&chart.product(alpha, alpha).unwrap()).unwrap());
    assert!(!chart.is_zero(&chart.product(beta, alpha).unwrap()).unwrap());
    assert!(!chart.is_zero(&chart.product(alpha, beta).unwrap()).unwrap());
    for c in [alpha, beta] {
        assert_eq!(chart.coordinates(&chart.product(unit, c).unwrap()).unwrap(), chart.coordinates(c).unwrap());
        assert_eq!(chart.coordinates(&chart.product(c, unit).unwrap()).unwrap(), chart.coordinates(c).unwrap());
    }
    assert!(matches!(chart.product(beta, beta), Err(Error::OutOfRange(_))));
    assert!(chart.flags().is_empty(), "{:?}", chart.flags());
}

#[test]
fn products_are_associative_on_named_triples() {
    let chart = ext_chart(3, 20, 3).unwrap();
    let named: Vec<_> = chart.named().values().cloned().collect();
    let mut tried = 0;
    for x in &named {
        for y in &named {
            for z in &named {
                if x.s + y.s + z.s > 3 || x.n + y.n + z.n > 20 {
                    continue;
                }
                let left = chart.product(&chart.product(x, y).unwrap(), z).unwrap();
                let right = chart.product(x, &chart.product(y, z).unwrap()).unwrap();
                assert_eq!(chart.coordinates(&left).unwrap(), chart.coordinates(&right).unwrap());
                tried += 1;
            }
        }
    }
    assert!(tried > 10);
}

#[test]
fn delta_periodicity() {
    let chart = ext_chart(2, 37, 3).unwrap();
    let z3 = FGAbGroup::cyclic(3);
    assert_eq!(delta_stabilize(&chart, 1, 2).unwrap(), z3);
    assert_eq!(delta_stabilize(&chart, 1, 4).unwrap(), FGAbGroup::trivial());
    assert_eq!(delta_stabilize(&chart, 2, 6).unwrap(), z3);
    for n in (1..=13).filter(|&n| n != 2) {
        assert!(delta_stabilize(&chart, 1, n).unwrap().is_trivial(), "n = {n}");
    }
    // Ext^0 grows with n, so Δ· is not onto there
    assert!(matches!(delta_stabilize(&chart, 0, 0), Err(Error::NotStabilized { s: 0, n: 0 })));
    assert!(matches!(delta_stabilize(&chart, 1, 20), Err(Error::OutOfRange(_))));
    // Δ· is injective on every positive-degree class in range
    for s in 1..=2 {
        for n in 0..=25 {
            let (m, src, tgt) = chart.delta_map(s, n).unwrap();
            assert!(ellvb_core::exactalg::homology::hom_is_injective(&src, &tgt, &m).unwrap());
        }
    }
}

#[test]
fn bad_prime_is_rejected() {
    assert!(matches!(ext_chart(1, 4, 4), Err(Error::InvalidArgument(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_cochains_square_to_zero(s in 0usize..2, n in 0usize..=16, seed in any::<u64>()) {
        let alg = HopfAlgebroid::short_weierstrass().unwrap();
        let c = CobarComplex::build(&alg, 3, 16, DEFAULT_BASIS_CAP).unwrap();
        let dim = c.dim(s, n);
        let mut x = seed;
        let v: Vec<BigInt> = (0..dim).map(|_| { x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407); BigInt::from((x >> 33) as i64 % 11 - 5) }).collect();
        let once = c.differential(s, n).mul_vec(&v);
        let twice = c.differential(s + 1, n).mul_vec(&once);
        prop_assert!(twice.iter().all(|x| x == &BigInt::from(0)));
        // the matrix agrees with the symbolic differential
        let p = c.to_poly(s, n, &v);
        let dp = cobar_differential(&alg, s, &p);
        prop_assert_eq!(c.to_vector(s + 1, n, &dp).unwrap(), once);
    }

    #[test]
    fn cosimplicial_identities_on_elements(
        coeffs in proptest::collection::vec(-4i64..=4, 1..6),
        exps in proptest::collection::vec(proptest::collection::vec(0u16..3, 8), 1..6),
    ) {
        let alg = build_algebroid().unwrap();
        let s = 1;
        let mut f = Poly::zero(alg.nvars(s));
        for (c, e) in coeffs.iter().zip(&exps) {
            f.add_term(ellvb_core::exactalg::Monomial(e.clone()), BigInt::from(*c));
        }
        for j in 1..=s + 2 {
            for i in 0..j {
                let lhs = f.substitute(&alg.coface(s, i)).substitute(&alg.coface(s + 1, j));
                let rhs = f.substitute(&alg.coface(s, j - 1)).substitute(&alg.coface(s + 1, i));
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
