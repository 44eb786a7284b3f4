//! Unreduced Burau representation, `σ_i ↦ I_{i−1} ⊕ [[1−t, t], [1, 0]] ⊕ I_{n−i−1}`.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::braid::BraidWord;
use crate::laurent::LaurentPoly1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BurauError {
    #[error("Burau parameter t must be nonzero")]
    ZeroParameter,
}

/// Square matrix of Laurent polynomials in `t`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    n: usize,
    entries: Vec<LaurentPoly1>,
}

impl PolyMatrix {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            entries: vec![LaurentPoly1::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = LaurentPoly1::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly1>>) -> Option<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        Some(Self {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly1 {
        &self.entries[i * self.n + j]
    }

    fn get_mut(&mut self, i: usize, j: usize) -> &mut LaurentPoly1 {
        &mut self.entries[i * self.n + j]
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.n, other.n, "matrix sizes differ");
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        *out.get_mut(i, j) += &(a * b);
                    }
                }
            }
        }
        out
    }

    /// Entrywise evaluation at `t`.
    pub fn eval(&self, t: Complex64) -> Result<DMatrix<Complex64>, BurauError> {
        if t == Complex64::new(0.0, 0.0) {
            return Err(BurauError::ZeroParameter);
        }
        let n = self.n;
        Ok(DMatrix::from_fn(n, n, |i, j| {
            self.get(i, j).eval(t).expect("t is nonzero")
        }))
    }

    /// Right-multiply by the generator `σ_i^±1` acting on columns `i−1, i`.
    fn apply_generator(&mut self, letter: i32) {
        let i = letter.unsigned_abs() as usize;
        let t = LaurentPoly1::monomial(1, 1);
        let t_inv = LaurentPoly1::monomial(1, -1);
        let one = LaurentPoly1::one();
        for r in 0..self.n {
            let x = self.get(r, i - 1).clone();
            let y = self.get(r, i).clone();
            let (nx, ny) = if letter > 0 {
                (&(&one - &t) * &x + y, &t * &x)
            } else {
                (&t_inv * &y, x + &(&one - &t_inv) * &y)
            };
            *self.get_mut(r, i - 1) = nx;
            *self.get_mut(r, i) = ny;
        }
    }
}

impl fmt::Display for PolyMatrix {
    /// One row per line, entries separated by `; ` and written in `t`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).fmt_var("t")).collect();
            writeln!(f, "[{}]", row.join("; "))?;
        }
        Ok(())
    }
}

/// `ρ(σ_i^±1)` in `B_n`.
pub fn generator(n: usize, letter: i32) -> PolyMatrix {
    let mut m = PolyMatrix::identity(n);
    m.apply_generator(letter);
    m
}

pub fn burau_symbolic(b: &BraidWord) -> PolyMatrix {
    let mut m = PolyMatrix::identity(b.strands());
    for &l in b.letters() {
        m.apply_generator(l);
    }
    m
}

/// Numeric Burau matrix, built by column operations at the given `t`.
pub fn burau_numeric(b: &BraidWord, t: Complex64) -> Result<DMatrix<Complex64>, BurauError> {
    if t == Complex64::new(0.0, 0.0) {
        return Err(BurauError::ZeroParameter);
    }
    let one = Complex64::new(1.0, 0.0);
    let ti = one / t;
    let mut m = DMatrix::<Complex64>::identity(b.strands(), b.strands());
    for &l in b.letters() {
        let i = l.unsigned_abs() as usize;
        for r in 0..m.nrows() {
            let (x, y) = (m[(r, i - 1)], m[(r, i)]);
            let (nx, ny) = if l > 0 {
                ((one - t) * x + y, t * x)
            } else {
                (ti * y, x + (one - ti) * y)
            };
            m[(r, i - 1)] = nx;
            m[(r, i)] = ny;
        }
    }
    Ok(m)
}

#[derive(Clone, Copy, Debug)]
pub enum RelationMode {
    Symbolic,
    /// Numeric check at `t` with an entrywise tolerance.
    Numeric {
        t: Complex64,
        tol: f64,
    },
}

/// Yang–Baxter and far commutativity for every admissible index pair.
pub fn check_braid_relations(n: usize, mode: RelationMode) -> bool {
    let mut pairs: Vec<(Vec<i32>, Vec<i32>)> = Vec::new();
    for i in 1..n.saturating_sub(1) as i32 {
        pairs.push((vec![i, i + 1, i], vec![i + 1, i, i + 1]));
    }
    for i in 1..n as i32 {
        for j in i + 2..n as i32 {
            pairs.push((vec![i, j], vec![j, i]));
        }
    }
    for i in 1..n as i32 {
        pairs.push((vec![i, -i], vec![]));
    }
    pairs.iter().all(|(l, r)| {
        let (l, r) = (
            BraidWord::new(n, l.clone()).expect("valid letters"),
            BraidWord::new(n, r.clone()).expect("valid letters"),
        );
        match mode {
            RelationMode::Symbolic => burau_symbolic(&l) == burau_symbolic(&r),
            RelationMode::Numeric { t, tol } => match (burau_numeric(&l, t), burau_numeric(&r, t)) {
                (Ok(a), Ok(b)) => (a - b).iter().all(|x| x.norm() <= tol),
                _ => false,
            },
        }
    })
}
