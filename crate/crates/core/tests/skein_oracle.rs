mod common;

use common::{bracket_jones, hecke_homfly, random_braids};
use knot_core::laurent::LaurentPoly2;
use knot_core::skein::{self, SkeinBudget, SkeinEngine};
use knot_core::{BraidWord, PDDiagram};

fn w(n: usize, l: &[i32]) -> BraidWord {
    BraidWord::new(n, l.to_vec()).unwrap()
}

fn p(s: &str) -> LaurentPoly2 {
    s.parse().unwrap()
}

#[test]
fn oracle_reproduces_golden_values() {
    let cases = [
        (BraidWord::identity(1), "1"),
        (w(2, &[]), "a*z^-1 - a^-1*z^-1"),
        (w(2, &[1, 1]), "a^-1*z^-1 - a^-3*z^-1 + a^-1*z"),
        (w(2, &[1, 1, 1]), "-a^-4 + 2*a^-2 + a^-2*z^2"),
    ];
    for (b, expect) in cases {
        assert_eq!(hecke_homfly(&b), p(expect), "{b}");
        let d = PDDiagram::from_braid(&b);
        let plain = SkeinEngine::new(SkeinBudget::default().unmemoized());
        assert_eq!(plain.homfly(&d).unwrap(), p(expect), "{b}");
        assert_eq!(plain.stats().memo_hits, 0);
        assert_eq!(skein::homfly(&d, SkeinBudget::default()).unwrap(), p(expect));
    }
}

#[test]
fn engine_matches_oracle_on_random_braids() {
    for b in random_braids(300, 4, 9, 11) {
        let d = PDDiagram::from_braid(&b);
        let expect = hecke_homfly(&b);
        assert_eq!(skein::homfly(&d, SkeinBudget::default()).unwrap(), expect, "{b}");
        assert_eq!(
            skein::homfly(&d, SkeinBudget::default().unmemoized()).unwrap(),
            expect,
            "{b}"
        );
    }
}

#[test]
fn jones_matches_bracket_state_sum() {
    assert_eq!(
        bracket_jones(&PDDiagram::from_braid(&w(2, &[1, 1, 1]))).to_string(),
        "s^2 + s^6 - s^8"
    );
    for b in random_braids(200, 4, 9, 12) {
        let d = PDDiagram::from_braid(&b);
        assert_eq!(
            skein::jones(&d, SkeinBudget::default()).unwrap(),
            bracket_jones(&d),
            "{b}"
        );
    }
}

#[test]
fn gauss_input_matches_braid_input() {
    let mut seen = 0;
    for b in random_braids(400, 4, 9, 13) {
        if b.closure_components() != 1 {
            continue;
        }
        seen += 1;
        let g = PDDiagram::from_braid(&b).to_gauss().unwrap();
        let back = g.to_diagram().unwrap();
        assert_eq!(
            skein::homfly(&back, SkeinBudget::default()).unwrap(),
            hecke_homfly(&b),
            "{g}"
        );
    }
    assert!(seen > 50);
}

#[test]
fn shared_engine_reuses_subdiagrams() {
    let engine = SkeinEngine::new(SkeinBudget::default());
    let a = engine
        .homfly(&PDDiagram::from_braid(&w(3, &[1, -2, 1, -2, 1, 2, 2])))
        .unwrap();
    let before = engine.stats();
    let again = engine
        .homfly(&PDDiagram::from_braid(&w(3, &[-2, 1, 2, 2, 1, -2, 1])))
        .unwrap();
    assert_eq!(a, again);
    assert!(engine.stats().memo_hits > before.memo_hits);
}
