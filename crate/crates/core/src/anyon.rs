//! Fibonacci anyon simulator over the fusion-path basis.
//!
//! Anyons `1..=n` stand on a line and are fused left to right. A basis path
//! records the running charges `x_0 = 1, x_1, …, x_n`, where `x_j` is the
//! total charge of anyons `1..=j` and `x_{j+1} ∈ x_j × τ`. Swapping anyons
//! `i, i+1` acts on the label `x_i` only.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;

use dashmap::DashMap;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::braid::BraidWord;
use crate::skein::{self, SkeinBudget, SkeinError};

/// Largest anyon count handled by the dense simulator.
pub const MAX_ANYONS: usize = 24;

/// Constant `C` in the sample count `⌈C·ln(2/δ)/ε²⌉` per Hadamard test.
pub const SAMPLE_CONSTANT: f64 = 8.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnyonError {
    #[error("{0} anyons exceed the simulator limit of {MAX_ANYONS}")]
    TooManyAnyons(usize),
    #[error("generator {i} out of range for {n} anyons")]
    IndexOutOfRange { i: usize, n: usize },
    #[error("braid has {braid} strands but the state holds {anyons} anyons")]
    StrandMismatch { braid: usize, anyons: usize },
    #[error("invalid qubit layout: {0}")]
    InvalidLayout(String),
    #[error("only the k = 5 path model is supported, got k = {0}")]
    UnsupportedLevel(u32),
    #[error("epsilon and delta must lie in (0, 1)")]
    InvalidAccuracy,
    #[error("calibration failed: {0}")]
    Calibration(String),
    #[error(transparent)]
    Skein(#[from] SkeinError),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Charge {
    Vacuum,
    Tau,
}

impl Charge {
    fn bit(self) -> u32 {
        match self {
            Charge::Vacuum => 0,
            Charge::Tau => 1,
        }
    }

    fn from_bit(b: u32) -> Self {
        if b == 0 {
            Charge::Vacuum
        } else {
            Charge::Tau
        }
    }

    /// Quantum dimension: 1 or φ.
    pub fn dimension(self) -> f64 {
        match self {
            Charge::Vacuum => 1.0,
            Charge::Tau => phi(),
        }
    }
}

impl fmt::Display for Charge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Charge::Vacuum => "1",
            Charge::Tau => "τ",
        })
    }
}

pub fn phi() -> f64 {
    (1.0 + 5f64.sqrt()) / 2.0
}

/// Braiding phase in the vacuum channel.
pub fn r_vacuum() -> Complex64 {
    Complex64::from_polar(1.0, -4.0 * PI / 5.0)
}

/// Braiding phase in the τ channel.
pub fn r_tau() -> Complex64 {
    Complex64::from_polar(1.0, 3.0 * PI / 5.0)
}

/// `F = [[φ⁻¹, φ^{-1/2}], [φ^{-1/2}, −φ⁻¹]]`, symmetric and involutive.
pub fn f_matrix() -> [[f64; 2]; 2] {
    let p = phi();
    [[1.0 / p, p.powf(-0.5)], [p.powf(-0.5), -1.0 / p]]
}

/// `F·diag(R₁, R_τ)·F` in the `(1, τ)` basis of the middle label.
fn braid_block() -> [[Complex64; 2]; 2] {
    let f = f_matrix();
    let r = [r_vacuum(), r_tau()];
    let mut g = [[Complex64::new(0.0, 0.0); 2]; 2];
    for (i, row) in g.iter_mut().enumerate() {
        for (j, e) in row.iter_mut().enumerate() {
            *e = (0..2).map(|k| f[i][k] * r[k] * f[k][j]).sum();
        }
    }
    g
}

/// One admissible sequence of running charges `x_0..=x_n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FusionPath {
    labels: Vec<Charge>,
}

impl FusionPath {
    pub fn labels(&self) -> &[Charge] {
        &self.labels
    }

    pub fn total(&self) -> Charge {
        *self.labels.last().expect("paths are nonempty")
    }

    fn from_bits(bits: u32, n: usize) -> Self {
        Self {
            labels: (0..=n).map(|j| Charge::from_bit(bits >> j & 1)).collect(),
        }
    }
}

impl fmt::Display for FusionPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.labels {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// How generator `σ_i` acts on one basis path.
#[derive(Clone, Copy, Debug)]
enum Local {
    Phase(Complex64),
    /// Mixes with the path whose middle label differs; `mid` is this path's.
    Block {
        partner: u32,
        mid: usize,
    },
}

/// Basis of the fusion space for `n` anyons with a fixed total charge.
#[derive(Clone, Debug)]
pub struct FusionSpace {
    n: usize,
    total: Charge,
    paths: Vec<u32>,
    /// `actions[i - 1][p]` for generator `σ_i`.
    actions: Vec<Vec<Local>>,
}

impl FusionSpace {
    pub fn new(n: usize, total: Charge) -> Result<Self, AnyonError> {
        if n > MAX_ANYONS {
            return Err(AnyonError::TooManyAnyons(n));
        }
        let mut paths = Vec::new();
        enumerate(n, total.bit(), 0, 0, &mut paths);
        let index: HashMap<u32, u32> = paths.iter().enumerate().map(|(k, &p)| (p, k as u32)).collect();
        let (r1, rt) = (r_vacuum(), r_tau());
        let actions = (1..n)
            .map(|i| {
                paths
                    .iter()
                    .map(|&p| {
                        let (l, m, r) = (p >> (i - 1) & 1, p >> i & 1, p >> (i + 1) & 1);
                        match (l, r) {
                            (0, 0) => Local::Phase(r1),
                            (0, _) => Local::Phase(rt),
                            (_, 0) => Local::Phase(rt),
                            _ => Local::Block {
                                partner: index[&(p ^ (1 << i))],
                                mid: m as usize,
                            },
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(Self {
            n,
            total,
            paths,
            actions,
        })
    }

    pub fn anyons(&self) -> usize {
        self.n
    }

    pub fn total(&self) -> Charge {
        self.total
    }

    pub fn dim(&self) -> usize {
        self.paths.len()
    }

    pub fn path(&self, k: usize) -> FusionPath {
        FusionPath::from_bits(self.paths[k], self.n)
    }

    fn label(&self, k: usize, j: usize) -> u32 {
        self.paths[k] >> j & 1
    }

    fn check_generator(&self, i: usize) -> Result<(), AnyonError> {
        if i == 0 || i >= self.n {
            Err(AnyonError::IndexOutOfRange { i, n: self.n })
        } else {
            Ok(())
        }
    }

    /// `U(σ_i^±1)·v`.
    fn apply_letter(&self, v: &[Complex64], letter: i32) -> Vec<Complex64> {
        let i = letter.unsigned_abs() as usize;
        let g = braid_block();
        let inv = letter < 0;
        self.actions[i - 1]
            .iter()
            .enumerate()
            .map(|(p, act)| match *act {
                Local::Phase(r) => v[p] * if inv { r.conj() } else { r },
                Local::Block { partner, mid } => {
                    let (a, b) = (g[mid][mid], g[mid][1 - mid]);
                    let (a, b) = if inv { (a.conj(), b.conj()) } else { (a, b) };
                    a * v[p] + b * v[partner as usize]
                }
            })
            .collect()
    }

    /// Apply the letters of `b` in order, first letter first.
    fn apply_word(&self, v: &[Complex64], letters: &[i32]) -> Vec<Complex64> {
        let mut cur = v.to_vec();
        for &l in letters {
            cur = self.apply_letter(&cur, l);
        }
        cur
    }

    /// Dense matrix of `U(σ_i)` in the path basis.
    pub fn sigma_unitary(&self, i: usize) -> Result<DMatrix<Complex64>, AnyonError> {
        self.check_generator(i)?;
        Ok(self.dense(&[i as i32]))
    }

    /// Dense matrix of the braid: the last letter's unitary is leftmost.
    pub fn braid_unitary(&self, b: &BraidWord) -> Result<DMatrix<Complex64>, AnyonError> {
        if b.strands() != self.n {
            return Err(AnyonError::StrandMismatch {
                braid: b.strands(),
                anyons: self.n,
            });
        }
        Ok(self.dense(b.letters()))
    }

    fn dense(&self, letters: &[i32]) -> DMatrix<Complex64> {
        let d = self.dim();
        let mut m = DMatrix::zeros(d, d);
        for j in 0..d {
            let mut e = vec![Complex64::new(0.0, 0.0); d];
            e[j] = Complex64::new(1.0, 0.0);
            let col = self.apply_word(&e, letters);
            m.set_column(j, &DVector::from_vec(col));
        }
        m
    }

    /// Diagonal entries `⟨p|U(b)|p⟩`.
    fn diagonal(&self, letters: &[i32]) -> Vec<Complex64> {
        (0..self.dim())
            .into_par_iter()
            .map(|j| {
                let mut e = vec![Complex64::new(0.0, 0.0); self.dim()];
                e[j] = Complex64::new(1.0, 0.0);
                self.apply_word(&e, letters)[j]
            })
            .collect()
    }

    /// Projection onto vacuum fusion of adjacent anyons `k, k+1`.
    fn project_vacuum(&self, v: &[Complex64], k: usize) -> Vec<Complex64> {
        let f = f_matrix();
        let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
        for p in 0..self.dim() {
            let (l, m, r) = (self.label(p, k - 1), self.label(p, k), self.label(p, k + 1));
            out[p] = match (l, r) {
                (0, 0) => v[p],
                (0, _) | (_, 0) => Complex64::new(0.0, 0.0),
                _ => {
                    // Rotate into the pair-channel basis, keep the vacuum
                    // component, rotate back.
                    let q = match self.actions.get(k - 1).map(|a| a[p]) {
                        Some(Local::Block { partner, .. }) => partner as usize,
                        _ => unreachable!("middle label of a τ-τ window can flip"),
                    };
                    let (own, other) = (v[p], v[q]);
                    let (x1, xt) = if m == 0 { (own, other) } else { (other, own) };
                    let vac = f[0][0] * x1 + f[1][0] * xt;
                    f[m as usize][0] * vac
                }
            };
        }
        out
    }
}

fn enumerate(n: usize, total: u32, j: usize, bits: u32, out: &mut Vec<u32>) {
    if j == n {
        if bits >> n & 1 == total {
            out.push(bits);
        }
        return;
    }
    let cur = bits >> j & 1;
    if cur == 1 {
        enumerate(n, total, j + 1, bits, out);
    }
    enumerate(n, total, j + 1, bits | 1 << (j + 1), out);
}

/// All admissible paths for `n` anyons with the given total, in
/// lexicographic order with `1 < τ`.
pub fn fusion_basis(n: usize, total: Charge) -> Result<Vec<FusionPath>, AnyonError> {
    let space = FusionSpace::new(n, total)?;
    Ok((0..space.dim()).map(|k| space.path(k)).collect())
}

/// Groups of four consecutive anyons; each qubit is read by fusing the
/// first two anyons of its group.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QubitLayout {
    quartets: Vec<[usize; 4]>,
}

impl QubitLayout {
    /// Quartets `{4j+1, …, 4j+4}` for `q` qubits.
    pub fn standard(q: usize) -> Self {
        Self {
            quartets: (0..q).map(|j| [4 * j + 1, 4 * j + 2, 4 * j + 3, 4 * j + 4]).collect(),
        }
    }

    pub fn new(quartets: Vec<[usize; 4]>) -> Result<Self, AnyonError> {
        let mut used = std::collections::BTreeSet::new();
        for q in &quartets {
            for &a in q {
                if a == 0 || !used.insert(a) {
                    return Err(AnyonError::InvalidLayout(format!("anyon {a} reused or zero")));
                }
            }
            if q[1] != q[0] + 1 {
                return Err(AnyonError::InvalidLayout(format!(
                    "measured anyons {} and {} are not adjacent",
                    q[0], q[1]
                )));
            }
        }
        Ok(Self { quartets })
    }

    pub fn qubits(&self) -> usize {
        self.quartets.len()
    }

    pub fn quartets(&self) -> &[[usize; 4]] {
        &self.quartets
    }

    fn measured(&self, qubit: usize, n: usize) -> Result<usize, AnyonError> {
        let q = self
            .quartets
            .get(qubit)
            .ok_or_else(|| AnyonError::InvalidLayout(format!("no qubit {qubit}")))?;
        if q.iter().any(|&a| a > n) {
            return Err(AnyonError::InvalidLayout(format!("quartet {q:?} exceeds {n} anyons")));
        }
        Ok(q[0])
    }
}

#[derive(Clone, Debug)]
pub struct AnyonState {
    space: FusionSpace,
    amps: Vec<Complex64>,
}

impl AnyonState {
    /// Basis state for one path of `space`.
    pub fn basis(space: FusionSpace, k: usize) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); space.dim()];
        amps[k] = Complex64::new(1.0, 0.0);
        Self { space, amps }
    }

    /// `4q` anyons created in vacuum pairs: the path `1τ1τ…1`.
    pub fn init(q: usize) -> Result<Self, AnyonError> {
        let n = 4 * q;
        let space = FusionSpace::new(n, Charge::Vacuum)?;
        let target: u32 = (0..=n).filter(|j| j % 2 == 1).map(|j| 1 << j).sum();
        let k = space
            .paths
            .iter()
            .position(|&p| p == target)
            .expect("pair path is admissible");
        Ok(Self::basis(space, k))
    }

    pub fn space(&self) -> &FusionSpace {
        &self.space
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn apply_braid(&self, b: &BraidWord) -> Result<Self, AnyonError> {
        if b.strands() != self.space.n {
            return Err(AnyonError::StrandMismatch {
                braid: b.strands(),
                anyons: self.space.n,
            });
        }
        Ok(Self {
            space: self.space.clone(),
            amps: self.space.apply_word(&self.amps, b.letters()),
        })
    }

    /// `(p0, p1)` for fusing the measured pair of `qubit`.
    pub fn fusion_probabilities(&self, qubit: usize, layout: &QubitLayout) -> Result<(f64, f64), AnyonError> {
        let k = layout.measured(qubit, self.space.n)?;
        let proj = self.space.project_vacuum(&self.amps, k);
        let p0: f64 = proj.iter().map(|a| a.norm_sqr()).sum::<f64>() / self.norm().powi(2);
        let p0 = p0.clamp(0.0, 1.0);
        Ok((p0, 1.0 - p0))
    }

    /// Measure every qubit in order, collapsing the state between
    /// measurements. Bit `1` means the pair did not annihilate.
    pub fn sample_measurement(&self, layout: &QubitLayout, seed: u64) -> Result<Vec<u8>, AnyonError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.sample_with(layout, &mut rng)
    }

    fn sample_with(&self, layout: &QubitLayout, rng: &mut impl Rng) -> Result<Vec<u8>, AnyonError> {
        let mut amps = self.amps.clone();
        let mut bits = Vec::with_capacity(layout.qubits());
        for q in 0..layout.qubits() {
            let k = layout.measured(q, self.space.n)?;
            let total: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
            let vac = self.space.project_vacuum(&amps, k);
            let p0 = vac.iter().map(|a| a.norm_sqr()).sum::<f64>() / total;
            let zero = rng.gen::<f64>() < p0;
            amps = if zero {
                vac
            } else {
                amps.iter().zip(&vac).map(|(a, v)| a - v).collect()
            };
            bits.push(u8::from(!zero));
        }
        Ok(bits)
    }

    /// Path-to-amplitude listing of nonzero entries.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for (k, a) in self.amps.iter().enumerate() {
            if a.norm() > 1e-15 {
                s.push_str(&format!("{} {:+.12} {:+.12}i\n", self.space.path(k), a.re, a.im));
            }
        }
        s
    }
}

/// Exact probability that every qubit reads 0 after braiding the initial
/// state, by successive projection of the state vector.
pub fn prob_all_zero(b: &BraidWord, layout: &QubitLayout) -> Result<f64, AnyonError> {
    check_quartets(b, layout)?;
    let s = AnyonState::init(layout.qubits())?.apply_braid(b)?;
    let mut v = s.amps.clone();
    for q in 0..layout.qubits() {
        v = s.space.project_vacuum(&v, layout.measured(q, s.space.n)?);
    }
    Ok(v.iter().map(|a| a.norm_sqr()).sum())
}

/// Same probability from dense matrices: `⟨ψ|P|ψ⟩` with `ψ = U(b)|init⟩` and
/// `P` the product of the per-qubit projector matrices.
pub fn prob_all_zero_dense(b: &BraidWord, layout: &QubitLayout) -> Result<f64, AnyonError> {
    check_quartets(b, layout)?;
    let init = AnyonState::init(layout.qubits())?;
    let space = &init.space;
    let u = space.braid_unitary(b)?;
    let psi = &u * DVector::from_column_slice(&init.amps);
    let d = space.dim();
    let mut p = DMatrix::<Complex64>::identity(d, d);
    for q in 0..layout.qubits() {
        let k = layout.measured(q, space.n)?;
        let mut pq = DMatrix::zeros(d, d);
        for j in 0..d {
            let mut e = vec![Complex64::new(0.0, 0.0); d];
            e[j] = Complex64::new(1.0, 0.0);
            pq.set_column(j, &DVector::from_vec(space.project_vacuum(&e, k)));
        }
        p = pq * p;
    }
    Ok((psi.adjoint() * p * &psi)[(0, 0)].re)
}

fn check_quartets(b: &BraidWord, layout: &QubitLayout) -> Result<(), AnyonError> {
    if layout.qubits() == 0 || b.strands() != 4 * layout.qubits() {
        return Err(AnyonError::StrandMismatch {
            braid: b.strands(),
            anyons: 4 * layout.qubits(),
        });
    }
    Ok(())
}

/// Weighted trace `Σ_p d(x_n)⟨p|U(b)|p⟩ / φⁿ` over both total charges,
/// equal to 1 on the identity.
pub fn markov_trace(b: &BraidWord, k: u32) -> Result<Complex64, AnyonError> {
    if k != 5 {
        return Err(AnyonError::UnsupportedLevel(k));
    }
    let n = b.strands();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut weight = 0.0;
    for total in [Charge::Vacuum, Charge::Tau] {
        let space = FusionSpace::new(n, total)?;
        let d = total.dimension();
        sum += space.diagonal(b.letters()).iter().sum::<Complex64>() * d;
        weight += d * space.dim() as f64;
    }
    Ok(sum / weight)
}

/// `t = e^{2πi/5}`, the evaluation point reached by the path model.
pub fn jones_point() -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI / 5.0)
}

/// Constants turning the path-model trace into the Jones value at
/// `e^{2πi/5}`: `V = α^{writhe}·δ^{n−1}·tr(U(b'))`, where `b'` is `b` or
/// its mirror.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Calibration {
    pub mirror: bool,
    pub alpha: Complex64,
    pub delta: Complex64,
}

impl Calibration {
    /// Values obtained by [`Calibration::derive`].
    pub fn frozen() -> Self {
        Self {
            mirror: FROZEN_MIRROR,
            alpha: Complex64::from_polar(1.0, FROZEN_ALPHA_ARG),
            delta: Complex64::new(-phi(), 0.0),
        }
    }

    /// Solve for `δ` on the two-component unlink (identity in `B₂`) and for
    /// `α` on the unknot (`σ₁` in `B₂`), then keep the chirality under which
    /// the trefoil `σ₁³` also matches.
    pub fn derive() -> Result<Self, AnyonError> {
        let budget = SkeinBudget::default();
        let t = jones_point();
        let b2 = |l: Vec<i32>| BraidWord::new(2, l).expect("valid B2 word");
        let (unlink, unknot, trefoil) = (b2(vec![]), b2(vec![1]), b2(vec![1, 1, 1]));
        let j_unlink = skein::jones_at_braid(&unlink, t, budget)?;
        let j_unknot = skein::jones_at_braid(&unknot, t, budget)?;
        let j_trefoil = skein::jones_at_braid(&trefoil, t, budget)?;
        let mut best: Option<(f64, Self)> = None;
        for mirror in [false, true] {
            let tr = |b: &BraidWord| markov_trace(&if mirror { b.mirror() } else { b.clone() }, 5);
            let delta = j_unlink / tr(&unlink)?;
            let alpha = j_unknot / (delta * tr(&unknot)?);
            let cal = Self { mirror, alpha, delta };
            let err = (cal.jones(&trefoil)? - j_trefoil).norm();
            if best.as_ref().is_none_or(|(e, _)| err < *e) {
                best = Some((err, cal));
            }
        }
        match best {
            Some((err, cal)) if err < 1e-9 => Ok(cal),
            Some((err, _)) => Err(AnyonError::Calibration(format!("trefoil residual {err:e}"))),
            None => unreachable!(),
        }
    }

    /// `α^{writhe}·δ^{n−1}`.
    pub fn normalization(&self, b: &BraidWord) -> Complex64 {
        self.alpha.powi(b.writhe() as i32) * self.delta.powi(b.strands() as i32 - 1)
    }

    fn oriented(&self, b: &BraidWord) -> BraidWord {
        if self.mirror {
            b.mirror()
        } else {
            b.clone()
        }
    }

    /// Jones value at `e^{2πi/5}` from the normalized path-model trace.
    pub fn jones(&self, b: &BraidWord) -> Result<Complex64, AnyonError> {
        Ok(self.normalization(b) * markov_trace(&self.oriented(b), 5)?)
    }
}

const FROZEN_MIRROR: bool = true;
const FROZEN_ALPHA_ARG: f64 = -PI / 5.0;

/// Samples per Hadamard test: `⌈C·ln(2/δ)/ε²⌉`.
pub fn sample_count(epsilon: f64, delta: f64) -> Result<usize, AnyonError> {
    if !(epsilon > 0.0 && epsilon < 1.0 && delta > 0.0 && delta < 1.0) {
        return Err(AnyonError::InvalidAccuracy);
    }
    Ok((SAMPLE_CONSTANT * (2.0 / delta).ln() / (epsilon * epsilon)).ceil() as usize)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Estimate {
    pub value: Complex64,
    /// Samples used for each of the real and imaginary parts.
    pub samples_per_part: usize,
    /// `|α^{writhe}·δ^{n−1}|`; the error bound is `ε·scale`.
    pub scale: f64,
    pub epsilon: f64,
    pub delta: f64,
    pub seed: u64,
    pub calibration: Calibration,
}

impl Estimate {
    pub fn total_samples(&self) -> usize {
        2 * self.samples_per_part
    }
}

const CHUNK: usize = 1024;

/// Outcome-0 probabilities of the Hadamard test on basis path `p`, without
/// and with an `S†` gate on the control (real and imaginary parts).
fn hadamard_test(space: &FusionSpace, letters: &[i32], p: usize) -> (f64, f64) {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut out = [0.0; 2];
    for (slot, phase) in [Complex64::new(1.0, 0.0), Complex64::new(0.0, -1.0)]
        .into_iter()
        .enumerate()
    {
        let d = space.dim();
        // Control |0⟩, register |p⟩; H on the control.
        let mut zero = vec![Complex64::new(0.0, 0.0); d];
        zero[p] = Complex64::new(h, 0.0);
        let mut one = zero.clone();
        for a in &mut one {
            *a *= phase;
        }
        // Controlled braid, then H on the control (standard unitary form).
        let one = space.apply_word(&one, letters);
        out[slot] = zero.iter().zip(&one).map(|(a, b)| ((a + b) * h).norm_sqr()).sum();
    }
    (out[0], out[1])
}

/// Monte-Carlo estimate of the Jones value at `e^{2πi/5}`.
///
/// A basis path is drawn with probability `d(x_n)/φⁿ` and a Hadamard test
/// of the braid unitary is run on it; the ±1 outcomes average to the real
/// (or imaginary) part of the normalized trace. Hoeffding's bound with
/// `ε/√2` per part gives the sample count with `C = 8`.
pub fn jones_estimate(
    b: &BraidWord,
    epsilon: f64,
    delta: f64,
    seed: u64,
    cal: &Calibration,
) -> Result<Estimate, AnyonError> {
    let m = sample_count(epsilon, delta)?;
    let word = cal.oriented(b);
    let n = word.strands();
    let spaces = [FusionSpace::new(n, Charge::Vacuum)?, FusionSpace::new(n, Charge::Tau)?];
    let mut cumulative = Vec::with_capacity(spaces[0].dim() + spaces[1].dim());
    let mut acc = 0.0;
    for (s, space) in spaces.iter().enumerate() {
        for k in 0..space.dim() {
            acc += space.total.dimension();
            cumulative.push((acc, s, k));
        }
    }
    let cache: DashMap<(usize, usize), (f64, f64)> = DashMap::new();
    let chunks = m.div_ceil(CHUNK);
    let sums: Vec<(i64, i64)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let count = CHUNK.min(m - c * CHUNK);
            let (mut re, mut im) = (0i64, 0i64);
            for _ in 0..count {
                for part in 0..2 {
                    let x = rng.gen::<f64>() * acc;
                    let pos = cumulative.partition_point(|e| e.0 <= x).min(cumulative.len() - 1);
                    let (_, s, k) = cumulative[pos];
                    let probs = *cache
                        .entry((s, k))
                        .or_insert_with(|| hadamard_test(&spaces[s], word.letters(), k));
                    let p0 = if part == 0 { probs.0 } else { probs.1 };
                    let outcome = if rng.gen::<f64>() < p0 { 1 } else { -1 };
                    if part == 0 {
                        re += outcome;
                    } else {
                        im += outcome;
                    }
                }
            }
            (re, im)
        })
        .collect();
    let (re, im) = sums.iter().fold((0, 0), |(a, b), (c, d)| (a + c, b + d));
    let trace = Complex64::new(re as f64 / m as f64, im as f64 / m as f64);
    let norm = cal.normalization(b);
    Ok(Estimate {
        value: norm * trace,
        samples_per_part: m,
        scale: norm.norm(),
        epsilon,
        delta,
        seed,
        calibration: *cal,
    })
}
