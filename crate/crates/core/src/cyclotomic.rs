//! Exact arithmetic in `Z[ζ]` for a primitive `p^n`-th root of unity `ζ`, and
//! exact decomposition of class functions on a cyclic `p`-group.
//!
//! Elements are stored in the group-ring basis `1, ζ, …, ζ^(p^n - 1)`, i.e. as
//! residues in `Z[X]/(X^(p^n) - 1)`. This presentation is not unique; two
//! elements are compared after reducing modulo the cyclotomic polynomial
//! `Φ_(p^n)(X) = Σ_(t<p) X^(t·p^(n-1))`.
//!
//! A class function on `D = <u>` is the table of its values at `u^0, …, u^(p^n - 1)`.
//! The irreducible characters are `λ_κ(u^j) = ζ^(κj)`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::odd_prime_power;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CyclotomicError {
    #[error("order {0} is not a power of an odd prime")]
    NotOddPrimePower(u64),
    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("expected {expected} values, got {actual}")]
    Length { expected: usize, actual: usize },
    #[error("inner product is not a rational integer multiple of {order}: reduced sum {reduced}")]
    NonIntegral { order: usize, reduced: String },
    #[error("multiplicity of λ_{kappa} is not integral")]
    Decomposition { kappa: usize },
    #[error("multiplicity {0} does not fit in 64 bits")]
    Overflow(BigInt),
}

/// Prime-power modulus data shared by every element of a given order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Modulus {
    p: u64,
    order: usize,
}

impl Modulus {
    fn new(order: usize) -> Result<Self, CyclotomicError> {
        let (p, _) = odd_prime_power(order as u64).ok_or(CyclotomicError::NotOddPrimePower(order as u64))?;
        Ok(Modulus { p, order })
    }

    /// Exponent step `p^(n-1)` between the terms of `Φ_(p^n)`.
    fn step(&self) -> usize {
        self.order / self.p as usize
    }

    /// Degree `(p - 1)·p^(n-1)` of `Φ_(p^n)`.
    fn phi(&self) -> usize {
        self.order - self.step()
    }
}

/// An element of `Z[ζ_(p^n)]`.
#[derive(Clone, Debug)]
pub struct CyclotomicInteger {
    modulus: Modulus,
    coeffs: Vec<BigInt>,
}

impl CyclotomicInteger {
    pub fn zero(order: usize) -> Result<Self, CyclotomicError> {
        let modulus = Modulus::new(order)?;
        Ok(CyclotomicInteger { modulus, coeffs: vec![BigInt::zero(); order] })
    }

    pub fn from_coeffs(order: usize, coeffs: Vec<BigInt>) -> Result<Self, CyclotomicError> {
        let modulus = Modulus::new(order)?;
        if coeffs.len() != order {
            return Err(CyclotomicError::Length { expected: order, actual: coeffs.len() });
        }
        Ok(CyclotomicInteger { modulus, coeffs })
    }

    pub fn from_i64s(order: usize, coeffs: &[i64]) -> Result<Self, CyclotomicError> {
        Self::from_coeffs(order, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The rational integer `c`, i.e. `c·ζ^0`.
    pub fn integer(order: usize, c: impl Into<BigInt>) -> Result<Self, CyclotomicError> {
        let mut x = Self::zero(order)?;
        x.coeffs[0] = c.into();
        Ok(x)
    }

    pub fn order(&self) -> usize {
        self.modulus.order
    }

    pub fn prime(&self) -> u64 {
        self.modulus.p
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Polynomial remainder modulo `Φ_(p^n)`, re-embedded with zero high coefficients.
    pub fn reduced(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        let (phi, step, p) = (self.modulus.phi(), self.modulus.step(), self.modulus.p as usize);
        for d in (phi..self.modulus.order).rev() {
            if coeffs[d].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut coeffs[d]);
            // X^(d-φ)·Φ has leading term X^d; the t = p-1 term is the one just cleared.
            for t in 0..p - 1 {
                coeffs[d - phi + t * step] -= &c;
            }
        }
        CyclotomicInteger { modulus: self.modulus, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.reduced().coeffs.iter().all(Zero::is_zero)
    }

    /// The value as a rational integer, if it is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        let r = self.reduced();
        if r.coeffs[1..].iter().all(Zero::is_zero) {
            Some(r.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Complex conjugation `ζ ↦ ζ^(-1)`.
    pub fn conj(&self) -> Self {
        let n = self.modulus.order;
        let mut coeffs = vec![BigInt::zero(); n];
        for (j, c) in self.coeffs.iter().enumerate() {
            coeffs[(n - j) % n] = c.clone();
        }
        CyclotomicInteger { modulus: self.modulus, coeffs }
    }

    /// Multiplication by `ζ^k`, which only rotates coefficients.
    pub fn mul_zeta_power(&self, k: i64) -> Self {
        let n = self.modulus.order;
        let shift = k.rem_euclid(n as i64) as usize;
        let mut coeffs = vec![BigInt::zero(); n];
        for (j, c) in self.coeffs.iter().enumerate() {
            coeffs[(j + shift) % n] = c.clone();
        }
        CyclotomicInteger { modulus: self.modulus, coeffs }
    }

    fn check_same(&self, other: &Self) -> Result<(), CyclotomicError> {
        if self.modulus != other.modulus {
            return Err(CyclotomicError::OrderMismatch { left: self.order(), right: other.order() });
        }
        Ok(())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, CyclotomicError> {
        self.check_same(other)?;
        let n = self.modulus.order;
        let mut coeffs = vec![BigInt::zero(); n];
        for (a, x) in self.coeffs.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (b, y) in other.coeffs.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                coeffs[(a + b) % n] += x * y;
            }
        }
        Ok(CyclotomicInteger { modulus: self.modulus, coeffs })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, CyclotomicError> {
        self.check_same(other)?;
        let mut out = self.clone();
        out += other;
        Ok(out)
    }
}

impl PartialEq for CyclotomicInteger {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus && self.reduced().coeffs == other.reduced().coeffs
    }
}

impl Eq for CyclotomicInteger {}

impl AddAssign<&CyclotomicInteger> for CyclotomicInteger {
    fn add_assign(&mut self, rhs: &CyclotomicInteger) {
        assert_eq!(self.modulus, rhs.modulus, "adding cyclotomic integers of different orders");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl Add for &CyclotomicInteger {
    type Output = CyclotomicInteger;

    fn add(self, rhs: &CyclotomicInteger) -> CyclotomicInteger {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Neg for &CyclotomicInteger {
    type Output = CyclotomicInteger;

    fn neg(self) -> CyclotomicInteger {
        CyclotomicInteger { modulus: self.modulus, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Sub for &CyclotomicInteger {
    type Output = CyclotomicInteger;

    fn sub(self, rhs: &CyclotomicInteger) -> CyclotomicInteger {
        self + &(-rhs)
    }
}

impl Mul for &CyclotomicInteger {
    type Output = CyclotomicInteger;

    fn mul(self, rhs: &CyclotomicInteger) -> CyclotomicInteger {
        self.checked_mul(rhs).expect("multiplying cyclotomic integers of different orders")
    }
}

impl fmt::Display for CyclotomicInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| match j {
                0 => c.to_string(),
                1 => format!("{c}ζ"),
                _ => format!("{c}ζ^{j}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// `ζ^(exponent mod order)`.
pub fn zeta_power(order: usize, exponent: i64) -> Result<CyclotomicInteger, CyclotomicError> {
    let mut x = CyclotomicInteger::zero(order)?;
    x.coeffs[exponent.rem_euclid(order as i64) as usize] = BigInt::from(1);
    Ok(x)
}

pub fn reduce_canonical(x: &CyclotomicInteger) -> CyclotomicInteger {
    x.reduced()
}

/// An integer multiplicity vector over `Irr_K(C_(p^n)) = {λ_0, …, λ_(p^n - 1)}`.
///
/// Genuine characters have non-negative entries. Grothendieck-ring
/// intermediates may be virtual (negative entries); see [`Self::is_genuine`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CyclicCharacter {
    mults: Vec<i64>,
}

impl CyclicCharacter {
    pub fn zero(order: usize) -> Self {
        CyclicCharacter { mults: vec![0; order] }
    }

    pub fn from_mults(mults: Vec<i64>) -> Self {
        CyclicCharacter { mults }
    }

    /// The irreducible `λ_κ`.
    pub fn lambda(order: usize, kappa: usize) -> Self {
        let mut c = Self::zero(order);
        c.mults[kappa % order] = 1;
        c
    }

    /// `Σ_(κ : pred(κ)) λ_κ`.
    pub fn indicator(order: usize, pred: impl Fn(usize) -> bool) -> Self {
        CyclicCharacter { mults: (0..order).map(|k| i64::from(pred(k))).collect() }
    }

    pub fn order(&self) -> usize {
        self.mults.len()
    }

    pub fn mults(&self) -> &[i64] {
        &self.mults
    }

    pub fn into_mults(self) -> Vec<i64> {
        self.mults
    }

    pub fn get(&self, kappa: usize) -> i64 {
        self.mults[kappa]
    }

    /// Value at the identity.
    pub fn degree(&self) -> i64 {
        self.mults.iter().sum()
    }

    pub fn is_genuine(&self) -> bool {
        self.mults.iter().all(|&m| m >= 0)
    }

    pub fn is_zero_one(&self) -> bool {
        self.mults.iter().all(|&m| m == 0 || m == 1)
    }

    /// Indices with nonzero multiplicity.
    pub fn support(&self) -> Vec<usize> {
        self.mults.iter().enumerate().filter(|(_, &m)| m != 0).map(|(k, _)| k).collect()
    }

    pub fn scaled(&self, factor: i64) -> Self {
        CyclicCharacter { mults: self.mults.iter().map(|m| m * factor).collect() }
    }
}

impl Add for &CyclicCharacter {
    type Output = CyclicCharacter;

    fn add(self, rhs: &CyclicCharacter) -> CyclicCharacter {
        assert_eq!(self.order(), rhs.order(), "adding characters of different groups");
        CyclicCharacter { mults: self.mults.iter().zip(&rhs.mults).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &CyclicCharacter {
    type Output = CyclicCharacter;

    fn sub(self, rhs: &CyclicCharacter) -> CyclicCharacter {
        assert_eq!(self.order(), rhs.order(), "subtracting characters of different groups");
        CyclicCharacter { mults: self.mults.iter().zip(&rhs.mults).map(|(a, b)| a - b).collect() }
    }
}

/// A class function on `C_(p^n)`; entry `j` is the value at `u^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    values: Vec<CyclotomicInteger>,
}

impl ClassFunction {
    pub fn new(values: Vec<CyclotomicInteger>) -> Result<Self, CyclotomicError> {
        let order = values.first().map(CyclotomicInteger::order).ok_or(CyclotomicError::NotOddPrimePower(0))?;
        if values.len() != order {
            return Err(CyclotomicError::Length { expected: order, actual: values.len() });
        }
        if let Some(bad) = values.iter().find(|v| v.order() != order) {
            return Err(CyclotomicError::OrderMismatch { left: order, right: bad.order() });
        }
        Ok(ClassFunction { values })
    }

    /// A rational-integer-valued class function.
    pub fn from_integers(order: usize, values: &[i64]) -> Result<Self, CyclotomicError> {
        if values.len() != order {
            return Err(CyclotomicError::Length { expected: order, actual: values.len() });
        }
        let values = values.iter().map(|&v| CyclotomicInteger::integer(order, v)).collect::<Result<_, _>>()?;
        Ok(ClassFunction { values })
    }

    /// Value table of `λ_κ`.
    pub fn irreducible(order: usize, kappa: usize) -> Result<Self, CyclotomicError> {
        let values = (0..order).map(|j| zeta_power(order, (kappa * j % order) as i64)).collect::<Result<_, _>>()?;
        Ok(ClassFunction { values })
    }

    /// Value table of `Σ_κ mults[κ]·λ_κ`.
    pub fn from_character(chi: &CyclicCharacter) -> Result<Self, CyclotomicError> {
        let order = chi.order();
        let mut values = Vec::with_capacity(order);
        for j in 0..order {
            let mut v = CyclotomicInteger::zero(order)?;
            for (kappa, &m) in chi.mults().iter().enumerate().filter(|(_, &m)| m != 0) {
                v.coeffs[kappa * j % order] += m;
            }
            values.push(v);
        }
        Ok(ClassFunction { values })
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[CyclotomicInteger] {
        &self.values
    }

    pub fn value(&self, j: usize) -> &CyclotomicInteger {
        &self.values[j]
    }
}

fn integral_quotient(sum: CyclotomicInteger) -> Result<BigInt, CyclotomicError> {
    let order = sum.order();
    let reduced = sum.reduced();
    let constant =
        reduced.to_integer().ok_or_else(|| CyclotomicError::NonIntegral { order, reduced: reduced.to_string() })?;
    let (q, r) = constant.div_rem(&BigInt::from(order));
    if !r.is_zero() {
        return Err(CyclotomicError::NonIntegral { order, reduced: reduced.to_string() });
    }
    Ok(q)
}

/// `(1/|D|)·Σ_j f(u^j)·conj(g(u^j))`, which must be a rational integer.
pub fn inner_product(f: &ClassFunction, g: &ClassFunction) -> Result<BigInt, CyclotomicError> {
    if f.order() != g.order() {
        return Err(CyclotomicError::OrderMismatch { left: f.order(), right: g.order() });
    }
    let mut sum = CyclotomicInteger::zero(f.order())?;
    for (a, b) in f.values.iter().zip(&g.values) {
        sum += &a.checked_mul(&b.conj())?;
    }
    integral_quotient(sum)
}

/// Nonzero `(exponent, coefficient)` pairs of each value of `f`.
fn sparse_values(f: &ClassFunction) -> Vec<Vec<(usize, &BigInt)>> {
    f.values.iter().map(|v| v.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()).collect()
}

/// `⟨f, λ_κ⟩`, using that `conj(λ_κ(u^j)) = ζ^(-κj)` is a monomial.
fn pair_with_irreducible(
    order: usize,
    sparse: &[Vec<(usize, &BigInt)>],
    kappa: usize,
) -> Result<BigInt, CyclotomicError> {
    let mut sum = CyclotomicInteger::zero(order)?;
    for (j, value) in sparse.iter().enumerate() {
        let shift = order - kappa * j % order;
        for &(a, c) in value {
            sum.coeffs[(a + shift) % order] += c;
        }
    }
    integral_quotient(sum)
}

/// Multiplicities `(⟨f, λ_κ⟩)_κ`.
pub fn decompose(f: &ClassFunction) -> Result<CyclicCharacter, CyclotomicError> {
    let sparse = sparse_values(f);
    let mults = (0..f.order())
        .map(|kappa| {
            let m = pair_with_irreducible(f.order(), &sparse, kappa)
                .map_err(|_| CyclotomicError::Decomposition { kappa })?;
            m.to_i64().ok_or(CyclotomicError::Overflow(m))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CyclicCharacter::from_mults(mults))
}
