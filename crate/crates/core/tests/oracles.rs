//! Independent recomputations of quantities the library derives another way.

use proptest::prelude::*;

use solvdeg::groebner::{is_groebner, normal_form, reduced_gb, saturation_exponent};
use solvdeg::harness::{example1_system, koszul_oracle_pool};
use solvdeg::io::parse_system;
use solvdeg::macaulay::{sd_mac, sd_mut, SolvingDegree};
use solvdeg::random::{random_homogeneous_system, random_system};
use solvdeg::regularity::{is_d_regular, regular_up_to, Analysis};
use solvdeg::{Degree, PolySystem, Polynomial};

/// Divide every term of `g` by `y^k`; `y` is the last variable.
fn strip_y(g: &Polynomial, k: u16) -> Polynomial {
    let n = g.ring().nvars();
    let terms = g.terms().iter().map(|t| {
        let m = t.monomial.with_exp(n - 1, t.monomial.exp(n - 1) - k);
        (m, t.coeff as i64)
    });
    Polynomial::from_terms(g.ring(), terms)
}

fn y_content(g: &Polynomial) -> u16 {
    let y = g.ring().nvars() - 1;
    g.terms().iter().map(|t| t.monomial.exp(y)).min().unwrap_or(0)
}

/// Saturation index via the last-variable property of the reverse order:
/// `I : y^s` is generated by `g / y^min(s, v_y(g))` over a basis of `I`.
fn saturation_index_by_division(sys: &PolySystem) -> u32 {
    let gb = reduced_gb(sys.homogenize().unwrap().polys());
    let full: Vec<Polynomial> = gb.iter().map(|g| strip_y(g, y_content(g))).collect();
    let top = gb.iter().map(y_content).max().unwrap_or(0);
    (0..=top)
        .find(|&s| {
            let part: Vec<Polynomial> = gb.iter().map(|g| strip_y(g, y_content(g).min(s))).collect();
            let part = reduced_gb(&part);
            full.iter().all(|f| normal_form(f, &part).is_zero())
        })
        .unwrap_or(top) as u32
}

#[test]
fn saturation_index_on_fixture() {
    let sys = example1_system();
    assert_eq!(saturation_exponent(&sys).unwrap().s0, saturation_index_by_division(&sys));
}

#[test]
fn koszul_pool_agrees() {
    let pool = koszul_oracle_pool(100, 7, 6);
    let checked: Vec<_> = pool.iter().filter(|c| !c.skipped).collect();
    assert!(checked.len() >= 90, "only {} cases fit the cap", checked.len());
    for c in &checked {
        assert!(c.agrees(), "{c:?}");
    }
    // the pool has to contain cases that stop being regular
    assert!(checked.iter().any(|c| c.hilbert.contains(&false)));
    assert!(checked.iter().any(|c| c.hilbert.iter().all(|&b| b)));
}

#[test]
fn d_regular_hand_examples() {
    let sys = parse_system("ring q=7 vars=a,b\na^2\nb^2\n").unwrap();
    assert_eq!(regular_up_to(&sys).unwrap(), Degree::Infinite);
    // the syzygy b*f1 - a*f2 lives in degree 3
    let sys = parse_system("ring q=7 vars=a,b\na^2\na*b\n").unwrap();
    assert_eq!(regular_up_to(&sys).unwrap(), Degree::Finite(3));
    assert!(is_d_regular(&sys, Degree::Finite(3)).unwrap());
    assert!(!is_d_regular(&sys, Degree::Finite(4)).unwrap());
    // a repeated generator is already dependent in its own degree
    let sys = parse_system("ring q=7 vars=a,b\na^2\n2*a^2\n").unwrap();
    assert_eq!(regular_up_to(&sys).unwrap(), Degree::Finite(2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn saturation_index_matches_division(seed in any::<u64>(), n in 1usize..3, extra in 0usize..3) {
        let sys = random_system(n, &vec![2; n + extra], 31, seed).unwrap();
        prop_assert_eq!(saturation_exponent(&sys).unwrap().s0, saturation_index_by_division(&sys));
    }

    #[test]
    fn square_systems_shift_by_one(seed in any::<u64>(), n in 1usize..4) {
        let sys = random_system(n, &vec![2; n], 31, seed).unwrap();
        let a = Analysis::new(&sys).unwrap();
        if let (Degree::Finite(d), Degree::Finite(dp)) = (a.d(), a.d_prime()) {
            prop_assert_eq!(dp + 1, d);
        }
    }

    #[test]
    fn solving_degree_chain(seed in any::<u64>(), n in 1usize..4, extra in 0usize..3) {
        let sys = random_system(n, &vec![2; n + extra], 31, seed).unwrap();
        let gb = reduced_gb(sys.polys());
        prop_assert!(is_groebner(&gb));
        let floor = gb.iter().filter_map(|g| g.degree()).max().unwrap_or(0);
        let mac = sd_mac(&sys, 8).unwrap().degree;
        let mt = sd_mut(&sys, 8).unwrap().degree;
        if let (SolvingDegree::Reached(a), SolvingDegree::Reached(b)) = (mac, mt) {
            prop_assert!(floor <= b && b <= a, "floor {} mut {} mac {}", floor, b, a);
        }
    }

    #[test]
    fn homogeneous_macaulay_equals_gb_degree(seed in any::<u64>(), n in 1usize..4, extra in 0usize..2) {
        let sys = random_homogeneous_system(n, &vec![2; n + extra], 31, seed).unwrap();
        let top = reduced_gb(sys.polys()).iter().filter_map(|g| g.degree()).max().unwrap_or(0);
        let d_max = 10;
        let mac = sd_mac(&sys, d_max).unwrap().degree;
        let mt = sd_mut(&sys, d_max).unwrap().degree;
        prop_assert_eq!(mac, mt);
        if let SolvingDegree::Reached(d) = mac {
            prop_assert_eq!(d, top.max(2));
        }
    }
}
