//! HOMFLY-PT polynomial by skein recursion, normalized by
//! `a·P(K₊) − a⁻¹·P(K₋) = z·P(K₀)` and `P(unknot) = 1`.
//!
//! Components are ordered by their smallest arc label and traversed from
//! that arc. The first crossing met from below is switched, and the
//! smoothing at that crossing is evaluated alongside. A diagram met entirely
//! from above at every first visit is a split unlink.

use std::sync::atomic::{AtomicUsize, Ordering};

use dashmap::DashMap;
use num_complex::Complex64;
use thiserror::Error;

use crate::braid::BraidWord;
use crate::diagram::{DiagramError, PDDiagram, Topology};
use crate::laurent::{LaurentError, LaurentPoly1, LaurentPoly2};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SkeinError {
    #[error("diagram has {crossings} crossings, budget allows {max}")]
    TooManyCrossings { crossings: usize, max: usize },
    #[error("skein recursion exceeded the budget of {0} nodes")]
    TooManyNodes(usize),
    #[error("budget bounds must be positive")]
    InvalidBudget,
    #[error("evaluation point must be nonzero")]
    ZeroParameter,
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

impl SkeinError {
    /// True for resource exhaustion as opposed to invalid input.
    pub fn is_budget(&self) -> bool {
        matches!(self, SkeinError::TooManyCrossings { .. } | SkeinError::TooManyNodes(_))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SkeinBudget {
    pub max_crossings: usize,
    pub max_nodes: usize,
    pub memo_enabled: bool,
}

impl Default for SkeinBudget {
    fn default() -> Self {
        Self {
            max_crossings: 60,
            max_nodes: 2_000_000,
            memo_enabled: true,
        }
    }
}

impl SkeinBudget {
    pub fn new(max_crossings: usize, max_nodes: usize, memo_enabled: bool) -> Result<Self, SkeinError> {
        if max_crossings == 0 || max_nodes == 0 {
            return Err(SkeinError::InvalidBudget);
        }
        Ok(Self {
            max_crossings,
            max_nodes,
            memo_enabled,
        })
    }

    pub fn unmemoized(self) -> Self {
        Self {
            memo_enabled: false,
            ..self
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SkeinStats {
    /// Recursion calls, including memo hits.
    pub nodes: usize,
    pub memo_hits: usize,
    pub memo_entries: usize,
}

/// Recursion state for one or more evaluations sharing a memo table.
pub struct SkeinEngine {
    budget: SkeinBudget,
    parallel: bool,
    memo: DashMap<String, LaurentPoly2>,
    nodes: AtomicUsize,
    hits: AtomicUsize,
}

/// Crossings below which branches are evaluated sequentially.
const PARALLEL_CUTOFF: usize = 10;

impl SkeinEngine {
    pub fn new(budget: SkeinBudget) -> Self {
        Self {
            budget,
            parallel: false,
            memo: DashMap::new(),
            nodes: AtomicUsize::new(0),
            hits: AtomicUsize::new(0),
        }
    }

    /// Evaluate the two branches of large diagrams on the rayon pool.
    pub fn parallel(mut self, on: bool) -> Self {
        self.parallel = on;
        self
    }

    pub fn stats(&self) -> SkeinStats {
        SkeinStats {
            nodes: self.nodes.load(Ordering::Relaxed),
            memo_hits: self.hits.load(Ordering::Relaxed),
            memo_entries: self.memo.len(),
        }
    }

    pub fn homfly(&self, d: &PDDiagram) -> Result<LaurentPoly2, SkeinError> {
        if d.crossing_count() > self.budget.max_crossings {
            return Err(SkeinError::TooManyCrossings {
                crossings: d.crossing_count(),
                max: self.budget.max_crossings,
            });
        }
        self.eval(d)
    }

    fn eval(&self, d: &PDDiagram) -> Result<LaurentPoly2, SkeinError> {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget.max_nodes {
            return Err(SkeinError::TooManyNodes(self.budget.max_nodes));
        }
        let topo = Topology::new(d);
        let cycles = d.component_cycles_with(&topo);
        let Some(c) = first_ascent(d, &topo, &cycles) else {
            return Ok(unlink(cycles.len() + d.loops()));
        };
        let key = if self.budget.memo_enabled {
            let key = d.canonical_key();
            if let Some(v) = self.memo.get(&key) {
                self.hits.fetch_add(1, Ordering::Relaxed);
                return Ok(v.clone());
            }
            Some(key)
        } else {
            None
        };
        let switched = d.switch_crossing(c)?;
        let smoothed = d.smooth_crossing(c)?;
        let (ps, p0) = if self.parallel && d.crossing_count() >= PARALLEL_CUTOFF {
            rayon::join(|| self.eval(&switched), || self.eval(&smoothed))
        } else {
            (self.eval(&switched), self.eval(&smoothed))
        };
        let (ps, p0) = (ps?, p0?);
        let value = if d.crossings()[c].sign > 0 {
            // P(K₊) = a⁻² P(K₋) + a⁻¹ z P(K₀)
            ps.shift(-2, 0) + p0.shift(-1, 1)
        } else {
            // P(K₋) = a² P(K₊) − a z P(K₀)
            ps.shift(2, 0) - p0.shift(1, 1)
        };
        if let Some(key) = key {
            self.memo.entry(key).or_insert_with(|| value.clone());
        }
        Ok(value)
    }
}

/// First crossing whose first visit is along the under-strand.
fn first_ascent(d: &PDDiagram, topo: &Topology, cycles: &[Vec<u32>]) -> Option<usize> {
    let mut seen = vec![false; d.crossing_count()];
    for cyc in cycles {
        for &arc in cyc {
            let (c, slot) = topo.head(arc);
            if !seen[c] {
                seen[c] = true;
                if slot == 0 {
                    return Some(c);
                }
            }
        }
    }
    None
}

/// `((a − a⁻¹) z⁻¹)^(m−1)`, the value of the `m`-component unlink.
pub fn unlink(m: usize) -> LaurentPoly2 {
    let delta = LaurentPoly2::from_terms([((1, -1), 1), ((-1, -1), -1)]);
    delta.pow(m.saturating_sub(1) as u32)
}

pub fn homfly(d: &PDDiagram, budget: SkeinBudget) -> Result<LaurentPoly2, SkeinError> {
    SkeinEngine::new(budget).homfly(d)
}

pub fn homfly_braid(b: &BraidWord, budget: SkeinBudget) -> Result<LaurentPoly2, SkeinError> {
    homfly(&PDDiagram::from_braid(&b.free_reduce()), budget)
}

pub fn jones(d: &PDDiagram, budget: SkeinBudget) -> Result<LaurentPoly1, SkeinError> {
    Ok(homfly(d, budget)?.specialize_jones()?)
}

pub fn jones_braid(b: &BraidWord, budget: SkeinBudget) -> Result<LaurentPoly1, SkeinError> {
    Ok(homfly_braid(b, budget)?.specialize_jones()?)
}

/// Jones polynomial in `s` evaluated at the principal square root of `t`.
pub fn jones_eval(v: &LaurentPoly1, t: Complex64) -> Result<Complex64, SkeinError> {
    if t == Complex64::new(0.0, 0.0) {
        return Err(SkeinError::ZeroParameter);
    }
    Ok(v.eval(t.sqrt())?)
}

pub fn jones_at(d: &PDDiagram, t: Complex64, budget: SkeinBudget) -> Result<Complex64, SkeinError> {
    if t == Complex64::new(0.0, 0.0) {
        return Err(SkeinError::ZeroParameter);
    }
    jones_eval(&jones(d, budget)?, t)
}

pub fn jones_at_braid(b: &BraidWord, t: Complex64, budget: SkeinBudget) -> Result<Complex64, SkeinError> {
    jones_at(&PDDiagram::from_braid(&b.free_reduce()), t, budget)
}

/// Coefficient of `z^k` as a Laurent polynomial in `a`.
pub fn homfly_coeff(d: &PDDiagram, k: i32, budget: SkeinBudget) -> Result<LaurentPoly1, SkeinError> {
    Ok(homfly(d, budget)?.coeff_z(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn w(n: usize, l: &[i32]) -> BraidWord {
        BraidWord::new(n, l.to_vec()).unwrap()
    }

    fn p(s: &str) -> LaurentPoly2 {
        s.parse().unwrap()
    }

    fn hb(b: &BraidWord) -> LaurentPoly2 {
        homfly_braid(b, SkeinBudget::default()).unwrap()
    }

    #[test]
    fn golden_values() {
        assert_eq!(
            homfly(&PDDiagram::unknot(), SkeinBudget::default()).unwrap(),
            LaurentPoly2::one()
        );
        assert_eq!(hb(&BraidWord::identity(1)), LaurentPoly2::one());
        assert_eq!(hb(&w(2, &[])), p("a*z^-1 - a^-1*z^-1"));
        assert_eq!(hb(&w(2, &[1, 1])), p("a^-1*z^-1 - a^-3*z^-1 + a^-1*z"));
        assert_eq!(hb(&w(2, &[1, 1, 1])), p("-a^-4 + 2*a^-2 + a^-2*z^2"));
        assert_eq!(hb(&w(3, &[1, -2, 1, -2, 2, -1, 2])), p("a*z^-1 - a^-1*z^-1"));
    }

    #[test]
    fn jones_values() {
        let j = |b: &BraidWord| jones_braid(b, SkeinBudget::default()).unwrap();
        assert!(j(&BraidWord::identity(1)).is_one());
        assert_eq!(j(&w(2, &[1, 1, 1])).to_string(), "s^2 + s^6 - s^8");
        assert_eq!(j(&w(2, &[])), LaurentPoly1::from_terms([(1, -1), (-1, -1)]));
        let t5 = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 5.0);
        let v = jones_at_braid(&w(2, &[1, 1, 1]), t5, SkeinBudget::default()).unwrap();
        let expect = -t5.powi(4) + t5.powi(3) + t5;
        assert!((v - expect).norm() < 1e-12);
        assert_eq!(
            jones_at_braid(&w(2, &[1]), Complex64::new(0.0, 0.0), SkeinBudget::default()),
            Err(SkeinError::ZeroParameter)
        );
    }

    #[test]
    fn coefficient_examples() {
        let b = SkeinBudget::default();
        assert!(homfly_coeff(&PDDiagram::unknot(), 0, b).unwrap().is_one());
        let t = PDDiagram::from_braid(&w(2, &[1, 1, 1]));
        assert_eq!(homfly_coeff(&t, 2, b).unwrap(), LaurentPoly1::monomial(1, -2));
    }

    #[test]
    fn values_at_t_one() {
        let one = Complex64::new(1.0, 0.0);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for seed in 0..150 {
            let n = rng.gen_range(2..=4);
            let len = rng.gen_range(0..=7);
            let b = BraidWord::random(n, len, seed).unwrap();
            let m = b.closure_components() as i32;
            let v = jones_at_braid(&b, one, SkeinBudget::default()).unwrap();
            assert!((v - Complex64::new((-2f64).powi(m - 1), 0.0)).norm() < 1e-9, "{b}");
        }
    }

    #[test]
    fn budget_errors_are_distinct() {
        let d = PDDiagram::from_braid(&w(2, &[1; 9]));
        let small = SkeinBudget::new(5, 100, true).unwrap();
        let e = homfly(&d, small).unwrap_err();
        assert!(e.is_budget());
        assert_eq!(e, SkeinError::TooManyCrossings { crossings: 9, max: 5 });
        let few_nodes = SkeinBudget::new(50, 3, false).unwrap();
        assert_eq!(homfly(&d, few_nodes), Err(SkeinError::TooManyNodes(3)));
        assert_eq!(SkeinBudget::new(0, 1, true), Err(SkeinError::InvalidBudget));
    }

    #[test]
    fn memo_and_parallel_agree() {
        for seed in 0..60 {
            let b = BraidWord::random(4, 10, seed).unwrap();
            let d = PDDiagram::from_braid(&b);
            let memo = homfly(&d, SkeinBudget::default()).unwrap();
            let plain = homfly(&d, SkeinBudget::default().unmemoized()).unwrap();
            let par = SkeinEngine::new(SkeinBudget::default())
                .parallel(true)
                .homfly(&d)
                .unwrap();
            assert_eq!(memo, plain);
            assert_eq!(memo, par);
        }
    }

    #[test]
    fn z_parity_matches_components() {
        for seed in 0..100 {
            let b = BraidWord::random(3, 7, seed).unwrap();
            let m = b.closure_components() as i32;
            for e in hb(&b).z_exponents() {
                assert_eq!((e - (m - 1)).rem_euclid(2), 0, "{b}");
            }
        }
    }

    #[test]
    fn mirror_property() {
        for seed in 0..80 {
            let b = BraidWord::random(3, 7, seed).unwrap();
            assert_eq!(hb(&b.mirror()), hb(&b).mirror(), "{b}");
        }
    }

    #[test]
    fn sigma_one_powers_stay_small() {
        let engine = SkeinEngine::new(SkeinBudget::default());
        let d = PDDiagram::from_braid(&w(2, &[1; 20]));
        engine.homfly(&d).unwrap();
        assert!(engine.stats().nodes < 2000, "{:?}", engine.stats());
    }
}
