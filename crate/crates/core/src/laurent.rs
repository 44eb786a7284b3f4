//! Exact Laurent polynomials with integer coefficients.
//!
//! [`LaurentPoly1`] is a one-variable Laurent polynomial. It is used for the
//! Jones polynomial in the variable `s` (where `s^2 = t`, so half-integer
//! powers of `t` become integer powers of `s`), for Burau matrix entries in
//! `t`, and for the `a`-coefficients of a HOMFLY-PT polynomial.
//!
//! [`LaurentPoly2`] is a Laurent polynomial in `(a, z)`, the value space of
//! the HOMFLY-PT invariant.
//!
//! Both store a sparse exponent map with arbitrary-precision coefficients and
//! never keep a zero coefficient, so structural equality is polynomial
//! equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaurentError {
    #[error("cannot evaluate at zero: the polynomial has negative exponents")]
    ZeroValue,
    #[error("substitution does not yield a Laurent polynomial")]
    NotLaurent,
    #[error("malformed polynomial text: {0}")]
    Parse(String),
}

/// One-variable Laurent polynomial `sum c_e x^e`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly1 {
    terms: BTreeMap<i32, BigInt>,
}

/// Two-variable Laurent polynomial `sum c_(i,j) a^i z^j`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly2 {
    terms: BTreeMap<(i32, i32), BigInt>,
}

fn add_term<K: Ord>(map: &mut BTreeMap<K, BigInt>, key: K, coeff: BigInt) {
    if coeff.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(coeff);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += coeff;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

fn pow_complex(x: Complex64, e: i32) -> Complex64 {
    if e >= 0 {
        x.powu(e as u32)
    } else {
        x.inv().powu(e.unsigned_abs())
    }
}

fn big_to_f64(c: &BigInt) -> f64 {
    c.to_f64().unwrap_or(f64::NAN)
}

impl LaurentPoly1 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(coeff: impl Into<BigInt>, exp: i32) -> Self {
        let mut p = Self::zero();
        add_term(&mut p.terms, exp, coeff.into());
        p
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i32, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            add_term(&mut p.terms, e, c.into());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exp: i32) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluate at a complex point.
    pub fn eval(&self, x: Complex64) -> Result<Complex64, LaurentError> {
        if x == Complex64::new(0.0, 0.0) {
            return Err(LaurentError::ZeroValue);
        }
        Ok(self.terms.iter().map(|(e, c)| pow_complex(x, *e) * big_to_f64(c)).sum())
    }

    /// Exact division by `x^2 - 1`; fails if the remainder is nonzero.
    fn div_by_square_minus_one(&self) -> Result<Self, LaurentError> {
        let Some(lo) = self.min_exp() else {
            return Ok(Self::zero());
        };
        let hi = self.max_exp().unwrap_or(lo);
        let len = (hi - lo + 1) as usize;
        let mut rem: Vec<BigInt> = vec![BigInt::zero(); len];
        for (e, c) in &self.terms {
            rem[(e - lo) as usize] = c.clone();
        }
        let mut quot = Self::zero();
        for k in (2..len).rev() {
            let c = std::mem::take(&mut rem[k]);
            if c.is_zero() {
                continue;
            }
            rem[k - 2] += &c;
            add_term(&mut quot.terms, k as i32 - 2 + lo, c);
        }
        if rem.iter().take(2).any(|c| !c.is_zero()) {
            return Err(LaurentError::NotLaurent);
        }
        Ok(quot)
    }

    /// Render with the given variable name.
    pub fn fmt_var(&self, var: &str) -> String {
        render_terms(self.terms.iter().map(|(e, c)| (c, vec![(var, *e)])))
    }

    /// Parse text in the rendering grammar, e.g. `"-s^8 + s^6 + s^2"`.
    pub fn parse(text: &str, var: &str) -> Result<Self, LaurentError> {
        let mut p = Self::zero();
        for (coeff, powers) in parse_terms(text)? {
            let mut exp = 0;
            for (name, e) in powers {
                if name != var {
                    return Err(LaurentError::Parse(format!("unexpected variable `{name}`")));
                }
                exp += e;
            }
            add_term(&mut p.terms, exp, coeff);
        }
        Ok(p)
    }
}

impl LaurentPoly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, 0)
    }

    /// `coeff * a^a_exp * z^z_exp`
    pub fn monomial(coeff: impl Into<BigInt>, a_exp: i32, z_exp: i32) -> Self {
        let mut p = Self::zero();
        add_term(&mut p.terms, (a_exp, z_exp), coeff.into());
        p
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = ((i32, i32), C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (k, c) in terms {
            add_term(&mut p.terms, k, c.into());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending `(a, z)` lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = ((i32, i32), &BigInt)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, a_exp: i32, z_exp: i32) -> BigInt {
        self.terms.get(&(a_exp, z_exp)).cloned().unwrap_or_default()
    }

    /// Multiply by `a^da * z^dz`.
    pub fn shift(&self, da: i32, dz: i32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|((i, j), c)| ((i + da, j + dz), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, a: Complex64, z: Complex64) -> Result<Complex64, LaurentError> {
        let zero = Complex64::new(0.0, 0.0);
        if a == zero || z == zero {
            return Err(LaurentError::ZeroValue);
        }
        Ok(self
            .terms
            .iter()
            .map(|((i, j), c)| pow_complex(a, *i) * pow_complex(z, *j) * big_to_f64(c))
            .sum())
    }

    /// The coefficient of `z^k`, as a Laurent polynomial in `a`.
    pub fn coeff_z(&self, k: i32) -> LaurentPoly1 {
        LaurentPoly1 {
            terms: self
                .terms
                .iter()
                .filter(|((_, j), _)| *j == k)
                .map(|((i, _), c)| (*i, c.clone()))
                .collect(),
        }
    }

    /// Distinct `z` exponents carrying a nonzero coefficient, ascending.
    pub fn z_exponents(&self) -> Vec<i32> {
        let mut zs: Vec<i32> = self.terms.keys().map(|(_, j)| *j).collect();
        zs.sort_unstable();
        zs.dedup();
        zs
    }

    /// Inverse of [`coeff_z`](Self::coeff_z): `sum_k c_k(a) z^k`.
    pub fn from_z_coefficients<'a>(parts: impl IntoIterator<Item = (i32, &'a LaurentPoly1)>) -> Self {
        let mut p = Self::zero();
        for (k, c) in parts {
            for (i, coeff) in c.terms() {
                add_term(&mut p.terms, (i, k), coeff.clone());
            }
        }
        p
    }

    /// Substitute `(a, z) -> (-a^-1, z)`, the effect of mirroring a link.
    pub fn mirror(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|((i, j), c)| {
                    let c = if i.rem_euclid(2) == 1 { -c } else { c.clone() };
                    ((-i, *j), c)
                })
                .collect(),
        }
    }

    /// Jones specialisation `a -> t^-1`, `z -> t^(1/2) - t^(-1/2)`, written in
    /// `s = t^(1/2)`: `a -> s^-2`, `z -> s - s^-1`.
    ///
    /// Negative powers of `z` need exact division by `s - s^-1`; if that
    /// division leaves a remainder the result is not a Laurent polynomial and
    /// [`LaurentError::NotLaurent`] is returned.
    pub fn specialize_jones(&self) -> Result<LaurentPoly1, LaurentError> {
        let Some(min_z) = self.terms.keys().map(|(_, j)| *j).min() else {
            return Ok(LaurentPoly1::zero());
        };
        let lift = (-min_z).max(0);
        let max_z = self.terms.keys().map(|(_, j)| *j).max().unwrap_or(0);
        let d = LaurentPoly1::from_terms([(1, 1), (-1, -1)]);
        let mut d_pows = vec![LaurentPoly1::one()];
        for _ in 0..(max_z + lift) {
            let next = d_pows.last().map(|p| p * &d).unwrap_or_default();
            d_pows.push(next);
        }
        let mut q = LaurentPoly1::zero();
        for ((i, j), c) in &self.terms {
            let term = d_pows[(j + lift) as usize].shift(-2 * i);
            for (e, tc) in term.terms() {
                add_term(&mut q.terms, e, tc * c);
            }
        }
        // q / (s - s^-1)^lift, with (s - s^-1) = s^-1 (s^2 - 1)
        for _ in 0..lift {
            q = q.div_by_square_minus_one()?.shift(1);
        }
        Ok(q)
    }

    pub fn parse(text: &str) -> Result<Self, LaurentError> {
        let mut p = Self::zero();
        for (coeff, powers) in parse_terms(text)? {
            let (mut i, mut j) = (0, 0);
            for (name, e) in powers {
                match name.as_str() {
                    "a" => i += e,
                    "z" => j += e,
                    other => return Err(LaurentError::Parse(format!("unexpected variable `{other}`"))),
                }
            }
            add_term(&mut p.terms, (i, j), coeff);
        }
        Ok(p)
    }
}

/// Render `coeff * x^e * y^f ...` terms joined with ` + ` / ` - `.
fn render_terms<'a, I>(terms: I) -> String
where
    I: Iterator<Item = (&'a BigInt, Vec<(&'a str, i32)>)>,
{
    let mut out = String::new();
    for (idx, (coeff, powers)) in terms.enumerate() {
        let negative = coeff.is_negative();
        if idx == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let mag = coeff.abs();
        let factors: Vec<String> = powers
            .iter()
            .filter(|(_, e)| *e != 0)
            .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect();
        if factors.is_empty() {
            out.push_str(&mag.to_string());
        } else {
            if !mag.is_one() {
                out.push_str(&mag.to_string());
                out.push('*');
            }
            out.push_str(&factors.join("*"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

type ParsedTerm = (BigInt, Vec<(String, i32)>);

fn parse_terms(text: &str) -> Result<Vec<ParsedTerm>, LaurentError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(LaurentError::Parse("empty input".into()));
    }
    // Split at + / - that are not exponent signs.
    let mut pieces: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut negative = false;
    let mut prev: Option<char> = None;
    for ch in s.chars() {
        if (ch == '+' || ch == '-') && prev != Some('^') {
            if !cur.is_empty() {
                pieces.push((negative, std::mem::take(&mut cur)));
            } else if prev.is_some() && !matches!(prev, Some('+') | Some('-')) {
                return Err(LaurentError::Parse(format!("misplaced sign in `{text}`")));
            }
            negative = if cur.is_empty() && matches!(prev, Some('+') | Some('-')) {
                negative ^ (ch == '-')
            } else {
                ch == '-'
            };
        } else {
            cur.push(ch);
        }
        prev = Some(ch);
    }
    if cur.is_empty() {
        return Err(LaurentError::Parse(format!("dangling sign in `{text}`")));
    }
    pieces.push((negative, cur));

    let mut out = Vec::with_capacity(pieces.len());
    for (negative, body) in pieces {
        let mut coeff = BigInt::one();
        let mut powers = Vec::new();
        for factor in body.split('*') {
            if factor.is_empty() {
                return Err(LaurentError::Parse(format!("empty factor in `{body}`")));
            }
            if factor.chars().all(|c| c.is_ascii_digit()) {
                coeff *= factor
                    .parse::<BigInt>()
                    .map_err(|e| LaurentError::Parse(e.to_string()))?;
                continue;
            }
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => (
                    n,
                    e.parse::<i32>()
                        .map_err(|_| LaurentError::Parse(format!("bad exponent in `{factor}`")))?,
                ),
                None => (factor, 1),
            };
            if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphabetic()) {
                return Err(LaurentError::Parse(format!("bad factor `{factor}`")));
            }
            powers.push((name.to_string(), exp));
        }
        if negative {
            coeff = -coeff;
        }
        out.push((coeff, powers));
    }
    Ok(out)
}

impl fmt::Display for LaurentPoly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("s"))
    }
}

impl fmt::Debug for LaurentPoly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly1({self})")
    }
}

impl fmt::Display for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_terms(
            self.terms.iter().map(|((i, j), c)| (c, vec![("a", *i), ("z", *j)])),
        ))
    }
}

impl fmt::Debug for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly2({self})")
    }
}

macro_rules! impl_ring_ops {
    ($ty:ident, $key:ty, $mulkey:expr) => {
        impl AddAssign<&$ty> for $ty {
            fn add_assign(&mut self, rhs: &$ty) {
                for (k, c) in &rhs.terms {
                    add_term(&mut self.terms, *k, c.clone());
                }
            }
        }

        impl Add<&$ty> for &$ty {
            type Output = $ty;
            fn add(self, rhs: &$ty) -> $ty {
                let mut out = self.clone();
                out += rhs;
                out
            }
        }

        impl Add for $ty {
            type Output = $ty;
            fn add(mut self, rhs: $ty) -> $ty {
                self += &rhs;
                self
            }
        }

        impl Neg for &$ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                $ty {
                    terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
                }
            }
        }

        impl Neg for $ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                -&self
            }
        }

        impl Sub<&$ty> for &$ty {
            type Output = $ty;
            fn sub(self, rhs: &$ty) -> $ty {
                let mut out = self.clone();
                for (k, c) in &rhs.terms {
                    add_term(&mut out.terms, *k, -c);
                }
                out
            }
        }

        impl Sub for $ty {
            type Output = $ty;
            fn sub(self, rhs: $ty) -> $ty {
                &self - &rhs
            }
        }

        impl Mul<&$ty> for &$ty {
            type Output = $ty;
            // Exponents add when terms multiply.
            #[allow(clippy::suspicious_arithmetic_impl)]
            fn mul(self, rhs: &$ty) -> $ty {
                let combine: fn($key, $key) -> $key = $mulkey;
                let mut out = $ty::zero();
                for (k1, c1) in &self.terms {
                    for (k2, c2) in &rhs.terms {
                        add_term(&mut out.terms, combine(*k1, *k2), c1 * c2);
                    }
                }
                out
            }
        }

        impl Mul for $ty {
            type Output = $ty;
            fn mul(self, rhs: $ty) -> $ty {
                &self * &rhs
            }
        }

        impl std::iter::Sum for $ty {
            fn sum<I: Iterator<Item = $ty>>(iter: I) -> $ty {
                iter.fold($ty::zero(), |acc, p| acc + p)
            }
        }
    };
}

impl_ring_ops!(LaurentPoly1, i32, |a, b| a + b);
impl_ring_ops!(LaurentPoly2, (i32, i32), |a, b| (a.0 + b.0, a.1 + b.1));

impl std::str::FromStr for LaurentPoly2 {
    type Err = LaurentError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}
