//! Closed-form networks against the cabled diagram evaluator, and
//! isotopy invariance of braid closures.

use proptest::prelude::*;
use spintqft::recoupling::sliced::{braid_closure_diagram, tet_diagram, theta_diagram};
use spintqft::recoupling::{
    admissible, braid_closure_bracket, bracket_eval, hopf, tet, theta, JonesWenzl,
    DEFAULT_WIDTH_BOUND,
};
use spintqft::TheoryParams;

fn jw() -> JonesWenzl {
    JonesWenzl::new(&TheoryParams::new(8, 128, 1e-20).unwrap())
}

#[test]
fn theta_closed_form_matches_diagram() {
    let jw = jw();
    let p = jw.params();
    let mut n = 0;
    for a in p.colors() {
        for b in p.colors() {
            for c in p.colors() {
                if a + b + c > 10 || !admissible(p, a, b, c) {
                    continue;
                }
                let v = bracket_eval(&theta_diagram(a, b, c), &jw, DEFAULT_WIDTH_BOUND).unwrap();
                assert!(v.approx_eq(&theta(p, a, b, c), 1e-20), "theta({a},{b},{c})");
                n += 1;
            }
        }
    }
    assert!(n > 20);
}

#[test]
fn hopf_closed_form_matches_diagram() {
    let jw = jw();
    let p = jw.params();
    for i in p.colors() {
        for j in p.colors() {
            if i + j > 5 {
                continue;
            }
            let v = bracket_eval(&braid_closure_diagram(&[i, j], &[1, 1]), &jw, DEFAULT_WIDTH_BOUND).unwrap();
            assert!(v.approx_eq(&hopf(p, i, j), 1e-20), "hopf({i},{j})");
        }
    }
}

#[test]
fn tet_closed_form_matches_diagram() {
    let jw = jw();
    let p = jw.params();
    let mut n = 0;
    let cs: Vec<usize> = p.colors().filter(|&c| c <= 4).collect();
    for &a in &cs {
        for &b in &cs {
            for &e in &cs {
                if !admissible(p, a, b, e) {
                    continue;
                }
                for &c in &cs {
                    for &d in &cs {
                        if !admissible(p, c, d, e) {
                            continue;
                        }
                        for &f in &cs {
                            if a + b + c + d + e + f > 10
                                || !admissible(p, a, d, f)
                                || !admissible(p, b, c, f)
                            {
                                continue;
                            }
                            let v = bracket_eval(&tet_diagram(a, b, e, c, d, f), &jw, DEFAULT_WIDTH_BOUND)
                                .unwrap();
                            assert!(
                                v.approx_eq(&tet(p, a, b, e, c, d, f), 1e-20),
                                "tet({a},{b},{e};{c},{d},{f})"
                            );
                            n += 1;
                        }
                    }
                }
            }
        }
    }
    assert!(n > 20);
}

fn word(strands: i32, len: usize) -> impl Strategy<Value = Vec<i32>> {
    prop::collection::vec((1..strands, any::<bool>()), 0..len)
        .prop_map(|v| v.into_iter().map(|(k, s)| if s { k } else { -k }).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    // σ_k σ_k⁻¹ inserted anywhere leaves the closure unchanged
    #[test]
    fn reidemeister_two(w in word(3, 6), at in 0usize..7, k in 1i32..3, c in 1usize..3) {
        let jw = jw();
        let at = at.min(w.len());
        let mut w2 = w.clone();
        w2.splice(at..at, [k, -k]);
        let colors = [c; 3];
        let a = braid_closure_bracket(&colors, &w, &jw, 64).unwrap();
        let b = braid_closure_bracket(&colors, &w2, &jw, 64).unwrap();
        prop_assert!(a.approx_eq(&b, 1e-18));
    }

    // σ_1 σ_2 σ_1 = σ_2 σ_1 σ_2
    #[test]
    fn reidemeister_three(w in word(3, 5), at in 0usize..6, c in 1usize..3) {
        let jw = jw();
        let at = at.min(w.len());
        let mut left = w.clone();
        left.splice(at..at, [1, 2, 1]);
        let mut right = w.clone();
        right.splice(at..at, [2, 1, 2]);
        let colors = [c; 3];
        let a = braid_closure_bracket(&colors, &left, &jw, 64).unwrap();
        let b = braid_closure_bracket(&colors, &right, &jw, 64).unwrap();
        prop_assert!(a.approx_eq(&b, 1e-18));
    }

    // cyclic rotation of the word is an isotopy of the closure, and the
    // fast evaluator agrees with the sliced one on every re-slicing
    #[test]
    fn conjugation_and_reslicing(w in word(3, 6), shift in 0usize..6) {
        let jw = jw();
        let colors = [1usize; 3];
        let mut rotated = w.clone();
        if !w.is_empty() {
            rotated.rotate_left(shift % w.len());
        }
        let a = braid_closure_bracket(&colors, &w, &jw, 64).unwrap();
        let b = braid_closure_bracket(&colors, &rotated, &jw, 64).unwrap();
        let slow = bracket_eval(&braid_closure_diagram(&colors, &rotated), &jw, 64).unwrap();
        prop_assert!(a.approx_eq(&b, 1e-18));
        prop_assert!(b.approx_eq(&slow, 1e-18));
    }
}
