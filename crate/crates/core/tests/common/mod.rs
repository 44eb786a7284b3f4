//! Reference computations that share no code with the skein engine.
#![allow(dead_code)]

use std::collections::HashMap;

use knot_core::laurent::{LaurentPoly1, LaurentPoly2};
use knot_core::{BraidWord, PDDiagram};

type Perm = Vec<u8>;
type Element = HashMap<Perm, LaurentPoly2>;

fn lp2(terms: &[((i32, i32), i64)]) -> LaurentPoly2 {
    LaurentPoly2::from_terms(terms.iter().copied())
}

fn add(e: &mut Element, w: Perm, c: LaurentPoly2) {
    let slot = e.entry(w).or_insert_with(LaurentPoly2::zero);
    *slot = &*slot + &c;
}

/// `x·T_i` in the Hecke algebra with `T_i² = a⁻² + a⁻¹z·T_i`.
fn mul_t(x: &Element, i: usize) -> Element {
    let mut out = Element::new();
    for (w, c) in x {
        let mut ws = w.clone();
        ws.swap(i - 1, i);
        if w[i - 1] < w[i] {
            add(&mut out, ws, c.clone());
        } else {
            add(&mut out, w.clone(), c * &lp2(&[((-1, 1), 1)]));
            add(&mut out, ws, c * &lp2(&[((-2, 0), 1)]));
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `x·T_i⁻¹ = x·(a²T_i − az)`.
fn mul_t_inv(x: &Element, i: usize) -> Element {
    let mut out = Element::new();
    for (w, c) in mul_t(x, i) {
        add(&mut out, w, &c * &lp2(&[((2, 0), 1)]));
    }
    for (w, c) in x {
        add(&mut out, w.clone(), c * &lp2(&[((1, 1), -1)]));
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn delta() -> LaurentPoly2 {
    lp2(&[((1, -1), 1), ((-1, -1), -1)])
}

/// Trace with `Tr(x) = δ·Tr(x)` on the smaller algebra and
/// `Tr(x T_{n−1} y) = Tr(x y)`.
struct Trace {
    memo: HashMap<Perm, LaurentPoly2>,
}

impl Trace {
    fn basis(&mut self, w: &Perm) -> LaurentPoly2 {
        if let Some(v) = self.memo.get(w) {
            return v.clone();
        }
        let n = w.len();
        let v = if n <= 1 {
            LaurentPoly2::one()
        } else if w[n - 1] as usize == n {
            &delta() * &self.basis(&w[..n - 1].to_vec())
        } else {
            // w = u·s_{n−1}·s_{n−2}⋯s_j with u fixing n.
            let j = w.iter().position(|&x| x as usize == n).unwrap() + 1;
            let mut u = w.clone();
            for k in j..n {
                u.swap(k - 1, k);
            }
            let mut x = Element::new();
            x.insert(u[..n - 1].to_vec(), LaurentPoly2::one());
            for k in (j..n - 1).rev() {
                x = mul_t(&x, k);
            }
            self.element(&x)
        };
        self.memo.insert(w.clone(), v.clone());
        v
    }

    fn element(&mut self, x: &Element) -> LaurentPoly2 {
        x.iter().map(|(w, c)| c * &self.basis(w)).sum()
    }
}

/// HOMFLY-PT of the closure of `b`, as the Hecke-algebra trace of its image.
pub fn hecke_homfly(b: &BraidWord) -> LaurentPoly2 {
    let n = b.strands();
    let mut x = Element::new();
    x.insert((1..=n as u8).collect(), LaurentPoly2::one());
    for &l in b.letters() {
        let i = l.unsigned_abs() as usize;
        x = if l > 0 { mul_t(&x, i) } else { mul_t_inv(&x, i) };
    }
    Trace { memo: HashMap::new() }.element(&x)
}

/// Jones polynomial in `s = t^{1/2}` from the Kauffman bracket state sum
/// over all `2^c` smoothings, `V = (−A³)^{−w}⟨K⟩` with `s = A⁻²`.
pub fn bracket_jones(d: &PDDiagram) -> LaurentPoly1 {
    let c = d.crossing_count();
    assert!(c <= 16, "state sum is exponential");
    let labels: Vec<u32> = d.arcs();
    let idx: HashMap<u32, usize> = labels.iter().enumerate().map(|(k, &a)| (a, k)).collect();
    let loop_factor = LaurentPoly1::from_terms([(2, -1), (-2, -1)]);
    let mut bracket = LaurentPoly1::zero();
    for mask in 0u32..(1 << c) {
        let mut parent: Vec<usize> = (0..labels.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut join = |x: u32, y: u32| {
            let (rx, ry) = (find(&mut parent, idx[&x]), find(&mut parent, idx[&y]));
            parent[rx] = ry;
        };
        let mut a_count = 0i32;
        for (k, x) in d.crossings().iter().enumerate() {
            let [p, q, r, s] = x.arcs;
            if mask >> k & 1 == 0 {
                a_count += 1;
                join(p, q);
                join(r, s);
            } else {
                join(p, s);
                join(q, r);
            }
        }
        let mut roots: Vec<usize> = (0..labels.len()).map(|x| find(&mut parent, x)).collect();
        roots.sort_unstable();
        roots.dedup();
        let loops = roots.len() + d.loops();
        let b_count = c as i32 - a_count;
        let term = &LaurentPoly1::monomial(1, a_count - b_count) * &loop_factor.pow(loops as u32 - 1);
        bracket = &bracket + &term;
    }
    let w = d.writhe() as i32;
    let sign = if w % 2 == 0 { 1 } else { -1 };
    let v_in_a = &LaurentPoly1::monomial(sign, -3 * w) * &bracket;
    LaurentPoly1::from_terms(v_in_a.terms().map(|(e, k)| {
        assert_eq!(e % 2, 0, "odd power of A");
        (-e / 2, k.clone())
    }))
}

/// Braid words with at most `strands` strands and `len` letters, drawn with
/// a fixed seed sequence.
pub fn random_braids(count: usize, max_strands: usize, max_len: usize, seed: u64) -> Vec<BraidWord> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(2..=max_strands);
            let len = rng.gen_range(0..=max_len);
            BraidWord::random(n, len, rng.gen()).unwrap()
        })
        .collect()
}
