mod common;

use common::random_braids;
use knot_core::laurent::LaurentPoly2;
use knot_core::skein::{self, SkeinBudget};
use knot_core::{BraidWord, PDDiagram};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// HOMFLY of the closure diagram exactly as written, without free reduction.
fn h(b: &BraidWord) -> LaurentPoly2 {
    skein::homfly(&PDDiagram::from_braid(b), SkeinBudget::default()).unwrap()
}

fn splice(b: &BraidWord, at: usize, insert: &[i32]) -> BraidWord {
    let mut l = b.letters().to_vec();
    l.splice(at..at, insert.iter().copied());
    BraidWord::new(b.strands(), l).unwrap()
}

#[test]
fn markov_moves() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for b in random_braids(200, 4, 8, 20) {
        let base = h(&b);
        assert_eq!(h(&b.markov_stabilize()), base, "stabilize {b}");
        let neg = b
            .with_strands(b.strands() + 1)
            .unwrap()
            .concat(&BraidWord::new(b.strands() + 1, vec![-(b.strands() as i32)]).unwrap())
            .unwrap();
        assert_eq!(h(&neg), base, "negative stabilize {b}");
        let g = BraidWord::random(b.strands(), rng.gen_range(1..=4), rng.gen()).unwrap();
        assert_eq!(h(&b.markov_conjugate(&g).unwrap()), base, "conjugate {b} by {g}");
    }
}

#[test]
fn braid_relations() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for b in random_braids(200, 4, 8, 23) {
        let n = b.strands() as i32;
        let base = h(&b);
        let at = rng.gen_range(0..=b.len());
        let i = rng.gen_range(1..n);
        let s = if rng.gen_bool(0.5) { 1 } else { -1 };
        assert_eq!(h(&splice(&b, at, &[s * i, -s * i])), base, "cancel {b}");
        if n >= 4 {
            let i = rng.gen_range(1..n - 2);
            let j = rng.gen_range(i + 2..n);
            let (x, y) = (s * i, if rng.gen_bool(0.5) { j } else { -j });
            assert_eq!(h(&splice(&b, at, &[x, y])), h(&splice(&b, at, &[y, x])), "commute {b}");
        }
        if n >= 3 {
            let i = rng.gen_range(1..n - 1);
            let lhs = splice(&b, at, &[s * i, s * (i + 1), s * i]);
            let rhs = splice(&b, at, &[s * (i + 1), s * i, s * (i + 1)]);
            assert_eq!(h(&lhs), h(&rhs), "Yang-Baxter {b}");
        }
    }
}

#[test]
fn skein_identity_at_random_crossings() {
    let a = LaurentPoly2::monomial(1, 1, 0);
    let a_inv = LaurentPoly2::monomial(1, -1, 0);
    let z = LaurentPoly2::monomial(1, 0, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    let mut checked = 0;
    for b in random_braids(80, 4, 9, 25) {
        if b.is_empty() {
            continue;
        }
        let d = PDDiagram::from_braid(&b);
        let c = rng.gen_range(0..d.crossing_count());
        let switched = d.switch_crossing(c).unwrap();
        let (plus, minus) = if d.crossings()[c].sign > 0 {
            (&d, &switched)
        } else {
            (&switched, &d)
        };
        let zero = d.smooth_crossing(c).unwrap();
        assert_eq!(
            zero.canonical_key(),
            switched.smooth_crossing(c).unwrap().canonical_key()
        );
        let p = |x: &PDDiagram| skein::homfly(x, SkeinBudget::default()).unwrap();
        assert_eq!(&a * &p(plus) - &a_inv * &p(minus), &z * &p(&zero), "{b} at {c}");
        checked += 1;
        if checked == 50 {
            break;
        }
    }
    assert_eq!(checked, 50);
}

#[test]
fn reduction_does_not_change_value() {
    for b in random_braids(100, 4, 10, 26) {
        assert_eq!(skein::homfly_braid(&b, SkeinBudget::default()).unwrap(), h(&b), "{b}");
    }
}

#[test]
fn figure_two_braid_closes_to_unlink() {
    let b = BraidWord::new(3, vec![1, -2, 1, -2, 2, -1, 2]).unwrap();
    assert_eq!(
        skein::homfly_braid(&b, SkeinBudget::default()).unwrap(),
        "a*z^-1 - a^-1*z^-1".parse().unwrap()
    );
}

#[test]
fn cable_of_trivial_braid_is_trivial() {
    let b = BraidWord::new(2, vec![1, -1]).unwrap();
    let c = b.cable(2).unwrap();
    assert_eq!(h(&c), h(&BraidWord::identity(4)));
}
