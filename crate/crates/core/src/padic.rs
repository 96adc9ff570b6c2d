//! Residue arithmetic in `Z/p^E Z` and scaled values `p^(-F) * u`.
//!
//! A [`PadicContext`] fixes the prime and the working precision and is
//! shared by every value built from it. Values are kept canonical in
//! `[0, p^E)` so that equality is plain integer equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::characters::FactorialTable;
use crate::error::{Error, Result};

/// Largest prime for which the Taylor inversion table (one entry per
/// residue class mod p) is built.
pub const TAYLOR_TABLE_MAX_PRIME: u64 = 1 << 20;

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(small) {
            return n == small;
        }
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut base: u64, mut exp: u64| {
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            exp >>= 1;
        }
        acc
    };
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// `(v, u)` with `x = p^v * u` and `u` coprime to `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuativePair {
    pub valuation: u32,
    pub unit: BigUint,
}

impl ValuativePair {
    pub fn new(valuation: u32, unit: impl Into<BigUint>) -> Self {
        Self {
            valuation,
            unit: unit.into(),
        }
    }
}

/// Splits a positive integer into its p-adic valuation and p-coprime part.
pub fn valuative_decomposition(p: u64, x: &BigUint) -> Result<ValuativePair> {
    if x.is_zero() {
        return Err(Error::InvalidInput("valuative decomposition of 0 is undefined".into()));
    }
    let p = BigUint::from(p);
    let mut x = x.clone();
    let mut v = 0;
    loop {
        let (q, r) = x.div_rem(&p);
        if !r.is_zero() {
            break;
        }
        x = q;
        v += 1;
    }
    Ok(ValuativePair::new(v, x))
}

/// Same as [`valuative_decomposition`] for machine integers.
pub fn valuative_decomposition_u64(p: u64, mut x: u64) -> Result<(u32, u64)> {
    if x == 0 {
        return Err(Error::InvalidInput("valuative decomposition of 0 is undefined".into()));
    }
    let mut v = 0;
    while x.is_multiple_of(p) {
        x /= p;
        v += 1;
    }
    Ok((v, x))
}

/// p-adic valuation of a non-negative integer, `None` for zero.
pub fn valuation_of(p: u64, x: &BigUint) -> Option<u32> {
    valuative_decomposition(p, x).ok().map(|d| d.valuation)
}

/// p-adic valuation of a signed integer, `None` for zero.
pub fn valuation_of_int(p: u64, x: &BigInt) -> Option<u32> {
    valuation_of(p, x.magnitude())
}

/// Legendre's formula: `v_p(n!) = sum_k floor(n / p^k)`.
pub fn factorial_valuation(p: u64, n: u64) -> u64 {
    let mut total = 0;
    let mut n = n;
    while n > 0 {
        n /= p;
        total += n;
    }
    total
}

/// Reduces a signed integer into `[0, modulus)`.
pub fn reduce_signed(x: &BigInt, modulus: &BigUint) -> BigUint {
    let m = BigInt::from(modulus.clone());
    let r = x.mod_floor(&m);
    r.to_biguint().expect("mod_floor is non-negative")
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InverseMethod {
    /// Extended Euclidean algorithm.
    #[default]
    Euclid,
    /// Euler's theorem: `x^(phi(p^e) - 1)`.
    Euler,
    /// Inverse mod p from a precomputed table, lifted by the geometric
    /// series of `(1 + p t)^(-1)`.
    Taylor,
}

/// Picks an inversion strategy per modulus size.
///
/// The Taylor route needs a table of `p` entries, so it is only used when
/// `p^e` is larger than `taylor_threshold` and `p` is small enough for the
/// table to be built.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InversePolicy {
    pub method: InverseMethod,
    pub taylor_threshold: Option<BigUint>,
}

impl InversePolicy {
    pub fn choose(&self, ctx: &PadicContext, e: u32) -> InverseMethod {
        match &self.taylor_threshold {
            Some(t) if ctx.p() <= TAYLOR_TABLE_MAX_PRIME && &ctx.pow(e) > t => InverseMethod::Taylor,
            _ => self.method,
        }
    }
}

struct ContextInner {
    p: u64,
    precision: u32,
    p_big: BigUint,
    powers: Vec<BigUint>,
    factorials: RwLock<Option<Arc<FactorialTable>>>,
    inverse_table: OnceLock<Vec<u64>>,
}

/// Prime and precision shared by residues. Cheap to clone.
#[derive(Clone)]
pub struct PadicContext(Arc<ContextInner>);

impl PadicContext {
    pub fn new(p: u64, precision: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if precision == 0 {
            return Err(Error::InvalidInput("precision E must be at least 1".into()));
        }
        let p_big = BigUint::from(p);
        let mut powers = Vec::with_capacity(precision as usize + 1);
        powers.push(BigUint::one());
        for v in 1..=precision as usize {
            let next = &powers[v - 1] * &p_big;
            powers.push(next);
        }
        Ok(Self(Arc::new(ContextInner {
            p,
            precision,
            p_big,
            powers,
            factorials: RwLock::new(None),
            inverse_table: OnceLock::new(),
        })))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn p_big(&self) -> &BigUint {
        &self.0.p_big
    }

    /// The precision exponent `E`.
    pub fn precision(&self) -> u32 {
        self.0.precision
    }

    /// `p^E`.
    pub fn modulus(&self) -> &BigUint {
        &self.0.powers[self.0.precision as usize]
    }

    /// The table `p^0 .. p^E`.
    pub fn powers(&self) -> &[BigUint] {
        &self.0.powers
    }

    /// `p^v`, from the table when `v <= E`.
    pub fn pow(&self, v: u32) -> BigUint {
        match self.0.powers.get(v as usize) {
            Some(x) => x.clone(),
            None => num_traits::pow(self.0.p_big.clone(), v as usize),
        }
    }

    /// The same prime at another precision.
    pub fn with_precision(&self, precision: u32) -> Result<Self> {
        if precision == self.precision() {
            return Ok(self.clone());
        }
        Self::new(self.p(), precision)
    }

    pub fn residue(&self, value: impl Into<BigUint>) -> PadicResidue {
        PadicResidue {
            value: value.into() % self.modulus(),
            ctx: self.clone(),
        }
    }

    pub fn residue_signed(&self, value: &BigInt) -> PadicResidue {
        PadicResidue {
            value: reduce_signed(value, self.modulus()),
            ctx: self.clone(),
        }
    }

    pub fn zero(&self) -> PadicResidue {
        self.residue(0u32)
    }

    pub fn one(&self) -> PadicResidue {
        self.residue(1u32)
    }

    /// Inverse of `x` modulo `p^e` with the default (Euclid) strategy.
    pub fn mod_inverse(&self, x: &BigUint, e: u32) -> Result<BigUint> {
        self.mod_inverse_with(x, e, InverseMethod::Euclid)
    }

    pub fn mod_inverse_with(&self, x: &BigUint, e: u32, method: InverseMethod) -> Result<BigUint> {
        if e == 0 || e > self.precision() {
            return Err(Error::InvalidInput(format!(
                "inverse exponent {e} outside 1..={}",
                self.precision()
            )));
        }
        self.inverse_unchecked(x, e, method)
    }

    /// Inverse modulo `p^e` for any `e`, including `e = 0` (result 0) and
    /// `e > E`. Used internally where working precisions drift.
    pub(crate) fn inverse_unchecked(&self, x: &BigUint, e: u32, method: InverseMethod) -> Result<BigUint> {
        let modulus = self.pow(e);
        if (x % self.p_big()).is_zero() {
            return Err(Error::NonUnit {
                value: x.to_string(),
                p: self.p(),
                exponent: e,
            });
        }
        if e == 0 {
            return Ok(BigUint::zero());
        }
        let x = x % &modulus;
        Ok(match method {
            InverseMethod::Euclid => euclid_inverse(&x, &modulus),
            InverseMethod::Euler => {
                // phi(p^e) - 1 = p^(e-1) (p - 1) - 1
                let exp = self.pow(e - 1) * (self.p() - 1) - 1u32;
                x.modpow(&exp, &modulus)
            }
            InverseMethod::Taylor => self.taylor_inverse(&x, e, &modulus)?,
        })
    }

    fn taylor_inverse(&self, x: &BigUint, e: u32, modulus: &BigUint) -> Result<BigUint> {
        let p = self.p();
        if p > TAYLOR_TABLE_MAX_PRIME {
            return Err(Error::InvalidInput(format!(
                "Taylor inversion table unavailable for p = {p}"
            )));
        }
        let table = self.0.inverse_table.get_or_init(|| {
            let mut table = vec![0u64; p as usize];
            for r in 1..p {
                let inv = euclid_inverse(&BigUint::from(r), &BigUint::from(p));
                table[r as usize] = inv.to_u64().expect("below p");
            }
            table
        });
        let low = (x % self.p_big()).to_u64().expect("below p");
        let low_inv = BigUint::from(table[low as usize]);
        // x * low_inv = 1 + p t, so x^-1 = low_inv * sum_k (-p t)^k
        let s = (x * &low_inv) % modulus;
        let pt = (modulus + 1u32 - &s) % modulus; // -(s - 1) = -p t
        let mut acc = BigUint::one();
        let mut term = BigUint::one();
        for _ in 1..e {
            term = (term * &pt) % modulus;
            if term.is_zero() {
                break;
            }
            acc += &term;
        }
        Ok((acc % modulus) * low_inv % modulus)
    }

    /// Factorial table up to `n`, cached per context and extended on demand.
    pub fn factorials(&self, n: usize) -> Arc<FactorialTable> {
        {
            let guard = self.0.factorials.read().expect("factorial cache poisoned");
            if let Some(t) = guard.as_ref() {
                if t.len() > n {
                    return Arc::clone(t);
                }
            }
        }
        let mut guard = self.0.factorials.write().expect("factorial cache poisoned");
        if let Some(t) = guard.as_ref() {
            if t.len() > n {
                return Arc::clone(t);
            }
        }
        let table = Arc::new(FactorialTable::build(self, n));
        *guard = Some(Arc::clone(&table));
        table
    }

    pub fn spec(&self) -> ContextSpec {
        ContextSpec {
            p: self.p(),
            precision: self.precision(),
        }
    }
}

impl PartialEq for PadicContext {
    fn eq(&self, other: &Self) -> bool {
        self.p() == other.p() && self.precision() == other.precision()
    }
}

impl Eq for PadicContext {}

impl fmt::Debug for PadicContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PadicContext(p={}, E={})", self.p(), self.precision())
    }
}

fn euclid_inverse(x: &BigUint, modulus: &BigUint) -> BigUint {
    if modulus.is_one() {
        return BigUint::zero();
    }
    let m = BigInt::from(modulus.clone());
    let ext = BigInt::from(x.clone()).extended_gcd(&m);
    debug_assert!(ext.gcd.is_one());
    ext.x.mod_floor(&m).to_biguint().expect("non-negative")
}

/// Serialized form of a context: `{"p": 3, "E": 4}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextSpec {
    pub p: u64,
    #[serde(rename = "E")]
    pub precision: u32,
}

impl ContextSpec {
    pub fn build(&self) -> Result<PadicContext> {
        PadicContext::new(self.p, self.precision)
    }
}

/// A p-adic valuation, or a lower bound when the value vanishes at the
/// known precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Valuation {
    Exact(i64),
    AtLeast(i64),
}

impl Valuation {
    /// The valuation, or its lower bound.
    pub fn value(&self) -> i64 {
        match *self {
            Valuation::Exact(v) | Valuation::AtLeast(v) => v,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Valuation::Exact(_))
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Exact(v) => write!(f, "{v}"),
            Valuation::AtLeast(v) => write!(f, ">= {v}"),
        }
    }
}

/// `|x| = p^(-v)` under the normalisation `|p| = 1/p`. For a capped
/// valuation `norm` is an upper bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicNorm {
    pub valuation: Valuation,
    pub norm: BigRational,
}

impl PadicNorm {
    fn from_valuation(p: u64, valuation: Valuation) -> Self {
        Self {
            valuation,
            norm: p_power_rational(p, -valuation.value()),
        }
    }
}

/// `p^k` as an exact rational.
pub fn p_power_rational(p: u64, k: i64) -> BigRational {
    let base = BigInt::from(p);
    let mag = num_traits::pow(base, k.unsigned_abs() as usize);
    if k >= 0 {
        BigRational::from_integer(mag)
    } else {
        BigRational::new(BigInt::one(), mag)
    }
}

/// An element of `Z/p^E Z`, stored canonically in `[0, p^E)`.
#[derive(Clone, PartialEq, Eq)]
pub struct PadicResidue {
    ctx: PadicContext,
    value: BigUint,
}

impl PadicResidue {
    pub fn context(&self) -> &PadicContext {
        &self.ctx
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn into_value(self) -> BigUint {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        !(&self.value % self.ctx.p_big()).is_zero()
    }

    /// Inverse at full precision `p^E`.
    pub fn inverse(&self) -> Result<Self> {
        let v = self.ctx.mod_inverse(&self.value, self.ctx.precision())?;
        Ok(self.ctx.residue(v))
    }

    pub fn pow(&self, exp: &BigUint) -> Self {
        self.ctx.residue(self.value.modpow(exp, self.ctx.modulus()))
    }

    /// Reduction to a lower precision.
    pub fn reduce(&self, e: u32) -> BigUint {
        &self.value % self.ctx.pow(e.min(self.ctx.precision()))
    }

    pub fn valuation(&self) -> Valuation {
        match valuation_of(self.ctx.p(), &self.value) {
            Some(v) => Valuation::Exact(v as i64),
            None => Valuation::AtLeast(self.ctx.precision() as i64),
        }
    }

    pub fn norm(&self) -> PadicNorm {
        PadicNorm::from_valuation(self.ctx.p(), self.valuation())
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.ctx, other.ctx, "residues from different contexts");
    }
}

impl fmt::Debug for PadicResidue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {}^{})", self.value, self.ctx.p(), self.ctx.precision())
    }
}

impl fmt::Display for PadicResidue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for &PadicResidue {
    type Output = PadicResidue;
    fn add(self, rhs: Self) -> PadicResidue {
        self.check(rhs);
        self.ctx.residue(&self.value + &rhs.value)
    }
}

impl Sub for &PadicResidue {
    type Output = PadicResidue;
    fn sub(self, rhs: Self) -> PadicResidue {
        self.check(rhs);
        self.ctx.residue(&self.value + self.ctx.modulus() - &rhs.value)
    }
}

impl Mul for &PadicResidue {
    type Output = PadicResidue;
    fn mul(self, rhs: Self) -> PadicResidue {
        self.check(rhs);
        self.ctx.residue(&self.value * &rhs.value)
    }
}

impl Neg for &PadicResidue {
    type Output = PadicResidue;
    fn neg(self) -> PadicResidue {
        self.ctx.residue(self.ctx.modulus() - &self.value)
    }
}

/// `p^(-F) * numerator` with the numerator canonical in `[0, p^(E+F))`.
#[derive(Clone, PartialEq, Eq)]
pub struct ScaledPadic {
    ctx: PadicContext,
    denominator_exp: u32,
    numerator: BigUint,
}

impl ScaledPadic {
    pub fn new(ctx: &PadicContext, denominator_exp: u32, numerator: impl Into<BigUint>) -> Self {
        let modulus = ctx.pow(ctx.precision() + denominator_exp);
        Self {
            ctx: ctx.clone(),
            denominator_exp,
            numerator: numerator.into() % modulus,
        }
    }

    pub fn from_signed(ctx: &PadicContext, denominator_exp: u32, numerator: &BigInt) -> Self {
        let modulus = ctx.pow(ctx.precision() + denominator_exp);
        Self {
            ctx: ctx.clone(),
            denominator_exp,
            numerator: reduce_signed(numerator, &modulus),
        }
    }

    /// An integer value `x`, written as `p^(-F) * (p^F x)`.
    pub fn from_integer(ctx: &PadicContext, denominator_exp: u32, x: &BigUint) -> Self {
        Self::new(ctx, denominator_exp, x * ctx.pow(denominator_exp))
    }

    pub fn context(&self) -> &PadicContext {
        &self.ctx
    }

    pub fn denominator_exp(&self) -> u32 {
        self.denominator_exp
    }

    pub fn numerator(&self) -> &BigUint {
        &self.numerator
    }

    /// `p^(E+F)`, the modulus of the numerator.
    pub fn numerator_modulus(&self) -> BigUint {
        self.ctx.pow(self.ctx.precision() + self.denominator_exp)
    }

    pub fn valuation(&self) -> Valuation {
        let f = self.denominator_exp as i64;
        match valuation_of(self.ctx.p(), &self.numerator) {
            Some(v) => Valuation::Exact(v as i64 - f),
            None => Valuation::AtLeast(self.ctx.precision() as i64),
        }
    }

    pub fn norm(&self) -> PadicNorm {
        PadicNorm::from_valuation(self.ctx.p(), self.valuation())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_scale(other)?;
        Ok(Self::new(
            &self.ctx,
            self.denominator_exp,
            &self.numerator + &other.numerator,
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_scale(other)?;
        let m = self.numerator_modulus();
        Ok(Self::new(
            &self.ctx,
            self.denominator_exp,
            &self.numerator + m - &other.numerator,
        ))
    }

    /// Multiplication by an integer scalar keeps the scale.
    pub fn scale(&self, k: &BigUint) -> Self {
        Self::new(&self.ctx, self.denominator_exp, &self.numerator * k)
    }

    fn same_scale(&self, other: &Self) -> Result<()> {
        if self.ctx != other.ctx || self.denominator_exp != other.denominator_exp {
            return Err(Error::ShapeMismatch(format!(
                "scaled values at ({:?}, F={}) and ({:?}, F={})",
                self.ctx, self.denominator_exp, other.ctx, other.denominator_exp
            )));
        }
        Ok(())
    }

    pub fn repr(&self) -> ScaledRepr {
        ScaledRepr {
            num: self.numerator.to_string(),
            f: self.denominator_exp,
        }
    }

    pub fn from_repr(ctx: &PadicContext, repr: &ScaledRepr) -> Result<Self> {
        Ok(Self::from_signed(ctx, repr.f, &parse_int(&repr.num)?))
    }
}

impl fmt::Debug for ScaledPadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}^-{} * {} (mod {}^{})",
            self.ctx.p(),
            self.denominator_exp,
            self.numerator,
            self.ctx.p(),
            self.ctx.precision()
        )
    }
}

/// `{"num": "<decimal>", "F": <int>}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScaledRepr {
    pub num: String,
    #[serde(rename = "F")]
    pub f: u32,
}

/// Parses a decimal integer, allowing a leading minus sign.
pub fn parse_int(s: &str) -> Result<BigInt> {
    s.trim()
        .parse::<BigInt>()
        .map_err(|_| Error::InvalidInput(format!("malformed integer {s:?}")))
}

/// Parses a non-negative decimal integer.
pub fn parse_uint(s: &str) -> Result<BigUint> {
    let x = parse_int(s)?;
    match x.sign() {
        Sign::Minus => Err(Error::InvalidInput(format!("expected a non-negative integer, got {s}"))),
        _ => Ok(x.to_biguint().expect("non-negative")),
    }
}
