//! Exact multivariate polynomial arithmetic over the rationals (or Gaussian
//! rationals), with Sylvester resultants computed by fraction-free
//! elimination.
//!
//! Terms are kept in graded-lexicographic order with no zero coefficients
//! stored. All operations are exact; `divide_exact` insists on a zero
//! remainder.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PolyError {
    #[error("variable lists do not match: {0:?} vs {1:?}")]
    VariableMismatch(Vec<String>, Vec<String>),
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("division is not exact")]
    InexactDivision,
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
}

/// Coefficient field interface.
pub trait Coeff: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Field division; `other` must be nonzero.
    fn div(&self, other: &Self) -> Self;
    fn from_i64(v: i64) -> Self;
    fn to_c64(&self) -> Complex64;
    fn render(&self) -> String;
}

impl Coeff for BigRational {
    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn one() -> Self {
        <BigRational as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(self.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn render(&self) -> String {
        if self.denom().is_one() {
            format!("{}", self.numer())
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

/// Gaussian rational a + bi with exact rational parts.
#[derive(Clone, PartialEq, Debug)]
pub struct GaussRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRational { re, im }
    }
    pub fn i() -> Self {
        GaussRational::new(<BigRational as Zero>::zero(), <BigRational as One>::one())
    }
}

impl Coeff for GaussRational {
    fn zero() -> Self {
        GaussRational::new(<BigRational as Zero>::zero(), <BigRational as Zero>::zero())
    }
    fn one() -> Self {
        GaussRational::new(<BigRational as One>::one(), <BigRational as Zero>::zero())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
    fn add(&self, other: &Self) -> Self {
        GaussRational::new(&self.re + &other.re, &self.im + &other.im)
    }
    fn sub(&self, other: &Self) -> Self {
        GaussRational::new(&self.re - &other.re, &self.im - &other.im)
    }
    fn mul(&self, other: &Self) -> Self {
        GaussRational::new(
            &self.re * &other.re - &self.im * &other.im,
            &self.re * &other.im + &self.im * &other.re,
        )
    }
    fn neg(&self) -> Self {
        GaussRational::new(-&self.re, -&self.im)
    }
    fn div(&self, other: &Self) -> Self {
        let denom = &other.re * &other.re + &other.im * &other.im;
        GaussRational::new(
            (&self.re * &other.re + &self.im * &other.im) / &denom,
            (&self.im * &other.re - &self.re * &other.im) / &denom,
        )
    }
    fn from_i64(v: i64) -> Self {
        GaussRational::new(
            BigRational::from_integer(BigInt::from(v)),
            <BigRational as Zero>::zero(),
        )
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
    fn render(&self) -> String {
        if Zero::is_zero(&self.im) {
            Coeff::render(&self.re)
        } else {
            format!(
                "({} + {}i)",
                Coeff::render(&self.re),
                Coeff::render(&self.im)
            )
        }
    }
}

/// Exponent vector with graded-lexicographic ordering.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    fn total(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A multivariate polynomial over a fixed, ordered variable list.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<C: Coeff> {
    pub vars: Vec<String>,
    pub terms: BTreeMap<Monomial, C>,
}

/// Rational-coefficient polynomial, the default mode.
pub type QPoly = Poly<BigRational>;
/// Gaussian-rational mode for identities that mention i explicitly.
pub type GPoly = Poly<GaussRational>;

impl<C: Coeff> Poly<C> {
    pub fn zero(vars: &[&str]) -> Self {
        Poly {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[&str], c: C) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial(vec![0; p.vars.len()]), c);
        }
        p
    }

    pub fn int(vars: &[&str], v: i64) -> Self {
        Self::constant(vars, C::from_i64(v))
    }

    pub fn var(vars: &[&str], name: &str) -> Result<Self, PolyError> {
        let mut p = Self::zero(vars);
        let idx = p
            .vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        let mut exps = vec![0; p.vars.len()];
        exps[idx] = 1;
        p.terms.insert(Monomial(exps), C::one());
        Ok(p)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_vars(&self, other: &Self) -> Result<(), PolyError> {
        if self.vars != other.vars {
            return Err(PolyError::VariableMismatch(
                self.vars.clone(),
                other.vars.clone(),
            ));
        }
        Ok(())
    }

    fn insert_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = existing.add(&c);
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = Self {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), c.neg());
        }
        out
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_vars(other)?;
        let mut out = Self::zero_like(self);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let exps: Vec<u32> = ma.0.iter().zip(mb.0.iter()).map(|(a, b)| a + b).collect();
                out.insert_term(Monomial(exps), ca.mul(cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero_like(self);
        for (m, coeff) in &self.terms {
            out.insert_term(m.clone(), coeff.mul(c));
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::constant_like(self, C::one());
        for _ in 0..n {
            out = out.try_mul(self).expect("same vars");
        }
        out
    }

    fn zero_like(p: &Self) -> Self {
        Poly {
            vars: p.vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    fn constant_like(p: &Self, c: C) -> Self {
        let mut out = Self::zero_like(p);
        if !c.is_zero() {
            out.terms.insert(Monomial(vec![0; p.vars.len()]), c);
        }
        out
    }

    pub fn var_index(&self, name: &str) -> Result<usize, PolyError> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }

    pub fn degree_in(&self, name: &str) -> Result<u32, PolyError> {
        let idx = self.var_index(name)?;
        Ok(self.terms.keys().map(|m| m.0[idx]).max().unwrap_or(0))
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total()).max().unwrap_or(0)
    }

    /// Coefficient of `name`^k, as a polynomial over the same variable list
    /// (the extracted variable appears with exponent zero).
    pub fn coeff_in(&self, name: &str, k: u32) -> Result<Self, PolyError> {
        let idx = self.var_index(name)?;
        let mut out = Self::zero_like(self);
        for (m, c) in &self.terms {
            if m.0[idx] == k {
                let mut exps = m.0.clone();
                exps[idx] = 0;
                out.insert_term(Monomial(exps), c.clone());
            }
        }
        Ok(out)
    }

    /// Substitute a polynomial (over the same variable list) for a variable.
    pub fn subst(&self, name: &str, replacement: &Self) -> Result<Self, PolyError> {
        self.check_vars(replacement)?;
        let deg = self.degree_in(name)?;
        // Horner in the substituted variable.
        let mut out = self.coeff_in(name, deg)?;
        for k in (0..deg).rev() {
            out = out
                .try_mul(replacement)?
                .try_add(&self.coeff_in(name, k)?)?;
        }
        Ok(out)
    }

    /// Exact division: returns the quotient when `self = q·divisor` exactly.
    pub fn divide_exact(&self, divisor: &Self) -> Result<Self, PolyError> {
        self.check_vars(divisor)?;
        if divisor.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let (lead_m, lead_c) = divisor.terms.iter().next_back().expect("nonzero");
        let mut rem = self.clone();
        let mut quot = Self::zero_like(self);
        while !rem.is_zero() {
            let (rm, rc) = rem.terms.iter().next_back().expect("nonzero");
            let exps: Vec<i64> =
                rm.0.iter()
                    .zip(lead_m.0.iter())
                    .map(|(a, b)| *a as i64 - *b as i64)
                    .collect();
            if exps.iter().any(|&e| e < 0) {
                return Err(PolyError::InexactDivision);
            }
            let qm = Monomial(exps.iter().map(|&e| e as u32).collect());
            let qc = rc.div(lead_c);
            let mut t = Self::zero_like(self);
            t.terms.insert(qm.clone(), qc.clone());
            rem = rem.try_sub(&t.try_mul(divisor)?)?;
            quot.insert_term(qm, qc);
        }
        Ok(quot)
    }

    pub fn eval(&self, point: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = c.to_c64();
            for (idx, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= point[idx].powu(e);
                }
            }
            acc += t;
        }
        acc
    }
}

impl<C: Coeff> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", c.render())?;
            for (idx, &e) in m.0.iter().enumerate() {
                if e == 1 {
                    write!(f, "*{}", self.vars[idx])?;
                } else if e > 1 {
                    write!(f, "*{}^{}", self.vars[idx], e)?;
                }
            }
        }
        Ok(())
    }
}

/// Resultant of p and q with respect to `name`: the determinant of the
/// Sylvester matrix with the p-rows first, evaluated by Bareiss fraction-free
/// elimination (all interior divisions exact).
pub fn resultant<C: Coeff>(p: &Poly<C>, q: &Poly<C>, name: &str) -> Result<Poly<C>, PolyError> {
    if p.is_zero() || q.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let m = p.degree_in(name)? as usize;
    let n = q.degree_in(name)? as usize;
    if m == 0 {
        return Ok(p.pow(n as u32));
    }
    if n == 0 {
        return Ok(q.pow(m as u32));
    }
    let size = m + n;
    let zero = Poly::zero_like(p);
    let mut matrix: Vec<Vec<Poly<C>>> = vec![vec![zero.clone(); size]; size];
    // p has coefficients a_m .. a_0 (descending powers of the variable).
    for row in 0..n {
        for (k, col) in (row..=row + m).enumerate() {
            matrix[row][col] = p.coeff_in(name, (m - k) as u32)?;
        }
    }
    for row in 0..m {
        for (k, col) in (row..=row + n).enumerate() {
            matrix[n + row][col] = q.coeff_in(name, (n - k) as u32)?;
        }
    }
    bareiss_determinant(matrix)
}

fn bareiss_determinant<C: Coeff>(mut m: Vec<Vec<Poly<C>>>) -> Result<Poly<C>, PolyError> {
    let size = m.len();
    let vars: Vec<String> = m[0][0].vars.clone();
    let zero_poly = Poly::<C> {
        vars: vars.clone(),
        terms: BTreeMap::new(),
    };
    let mut one_poly = zero_poly.clone();
    one_poly
        .terms
        .insert(Monomial(vec![0; vars.len()]), C::one());

    let mut sign = 1i64;
    let mut prev = one_poly;
    for k in 0..size {
        if m[k][k].is_zero() {
            let swap = (k + 1..size).find(|&i| !m[i][k].is_zero());
            match swap {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return Ok(zero_poly),
            }
        }
        if k == size - 1 {
            break;
        }
        for i in (k + 1)..size {
            for j in (k + 1)..size {
                let num = m[k][k]
                    .try_mul(&m[i][j])?
                    .try_sub(&m[i][k].try_mul(&m[k][j])?)?;
                m[i][j] = num.divide_exact(&prev)?;
            }
            m[i][k] = zero_poly.clone();
        }
        prev = m[k][k].clone();
    }
    let det = m[size - 1][size - 1].clone();
    Ok(if sign < 0 { det.neg() } else { det })
}
