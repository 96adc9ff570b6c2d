//! p-adic characters `x -> a^x` on `Zp`, evaluated modulo `p^E`.
//!
//! Three evaluation routes are provided: the Mahler (binomial) series,
//! the Taylor series of `exp_p(qx)`, and square-and-multiply on the
//! natural-number representative of `x`. They agree modulo `p^E`; the
//! binary method is the default.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::padic::{
    parse_uint, valuation_of, valuative_decomposition, valuative_decomposition_u64, ContextSpec, InverseMethod,
    PadicContext, PadicResidue, ValuativePair,
};

/// `(v_p(e!), unit part of e! mod p^E)` for `e = 0..=N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorialTable {
    entries: Vec<ValuativePair>,
}

impl FactorialTable {
    pub(crate) fn build(ctx: &PadicContext, n: usize) -> Self {
        let mut entries = Vec::with_capacity(n + 1);
        entries.push(ValuativePair::new(0, 1u32));
        for e in 0..n {
            let prev = &entries[e];
            let (v, u) = valuative_decomposition_u64(ctx.p(), e as u64 + 1).expect("e + 1 > 0");
            let next = ValuativePair::new(prev.valuation + v, (&prev.unit * u) % ctx.modulus());
            entries.push(next);
        }
        Self { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, e: usize) -> Option<&ValuativePair> {
        self.entries.get(e)
    }

    pub fn entries(&self) -> &[ValuativePair] {
        &self.entries
    }
}

/// Builds the factorial table up to `n!` (uncached).
pub fn factorial_table(ctx: &PadicContext, n: usize) -> FactorialTable {
    FactorialTable::build(ctx, n)
}

/// Constants of the exponential series: `m`, `q = p^m` and the
/// truncation degree `E' = ceil(E / (m - 1/(p-1)))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExpConstants {
    pub m: u32,
    pub q: u64,
    pub truncation: u32,
}

impl ExpConstants {
    pub fn new(p: u64, precision: u32) -> Self {
        let m = if p == 2 { 2 } else { 1 };
        // E / (m - 1/(p-1)) = E (p-1) / (m (p-1) - 1)
        let num = precision as u64 * (p - 1);
        let den = m as u64 * (p - 1) - 1;
        let truncation = num.div_ceil(den) as u32;
        Self {
            m,
            q: p.pow(m),
            truncation,
        }
    }

    /// Lower bound `ceil((m - 1/(p-1)) e)` on the valuation of `q^e / e!`.
    pub fn term_valuation_bound(p: u64, e: u64) -> u64 {
        let m = if p == 2 { 2 } else { 1 };
        (e * (m * (p - 1) - 1)).div_ceil(p - 1)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum EvalMethod {
    Mahler,
    Taylor,
    #[default]
    Binary,
}

impl fmt::Display for EvalMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EvalMethod::Mahler => "mahler",
            EvalMethod::Taylor => "taylor",
            EvalMethod::Binary => "binary",
        })
    }
}

/// `exp_p(qx) mod p^E` from the truncated Taylor series.
///
/// `x` is reduced mod `p^(E-m)` first. Each term `q^e x^e / e!` equals
/// `p^(me - v_p(e!)) * u_e^-1 * x^e`; the unit and power accumulators are
/// kept mod `p^E` so a term whose shift is below `E` is exact.
pub fn eval_taylor_exp(ctx: &PadicContext, x: &BigUint) -> PadicResidue {
    let p = ctx.p();
    let precision = ctx.precision();
    let consts = ExpConstants::new(p, precision);
    let x = x % ctx.pow(precision.saturating_sub(consts.m));
    let modulus = ctx.modulus();

    let mut y = BigUint::zero();
    let mut fact_val: u64 = 0;
    let mut unit_inv = BigUint::one();
    let mut power = BigUint::one();
    for e in 0..consts.truncation as u64 {
        if e > 0 {
            let (v, u) = valuative_decomposition_u64(p, e).expect("e > 0");
            fact_val += v as u64;
            let u_inv = ctx
                .inverse_unchecked(&BigUint::from(u), precision, InverseMethod::Euclid)
                .expect("unit part is coprime to p");
            unit_inv = unit_inv * u_inv % modulus;
            power = power * &x % modulus;
        }
        let shift = consts.m as u64 * e - fact_val;
        if shift < precision as u64 {
            let term = ctx.pow(shift as u32) * &unit_inv * &power;
            y = (y + term) % modulus;
        }
    }
    ctx.residue(y)
}

/// The Iwasawa logarithm `sum_{e>=1} -(1-y)^e / e` modulo `p^E`.
///
/// Requires `y = 1 mod p`, and `y = 1 mod 4` when `p = 2`.
pub fn iwasawa_log(ctx: &PadicContext, y: &BigUint) -> Result<PadicResidue> {
    let p = ctx.p();
    let precision = ctx.precision();
    let y = y % ctx.modulus();
    let domain = BigUint::from(if p == 2 { 4u32 } else { p as u32 }).min(ctx.modulus().clone());
    if &y % &domain != BigUint::one() % &domain {
        return Err(Error::OutOfDomain(y.to_string()));
    }
    let t = &y - 1u32;
    let Some(vt) = valuation_of(p, &t) else {
        return Ok(ctx.zero());
    };

    let modulus = ctx.modulus();
    let mut acc = BigUint::zero();
    // for e >= 2E + 4 every term has valuation >= E + 2
    for e in 1..=(2 * precision as u64 + 4) {
        let (ve, ue) = valuative_decomposition_u64(p, e).expect("e > 0");
        let term_val = e * vt as u64 - ve as u64;
        if term_val >= precision as u64 {
            continue;
        }
        let wide = ctx.pow(precision + ve);
        let te = t.modpow(&BigUint::from(e), &wide);
        let reduced = te / ctx.pow(ve);
        let inv = ctx
            .inverse_unchecked(&BigUint::from(ue), precision, InverseMethod::Euclid)
            .expect("unit part is coprime to p");
        let term = reduced * inv % modulus;
        if e % 2 == 1 {
            acc += term;
        } else {
            acc += modulus - term;
        }
        acc %= modulus;
    }
    Ok(ctx.residue(acc))
}

/// How the base of a character was given.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseKind {
    /// An explicit base `a`.
    Explicit,
    /// `a = exp_p(q)`, so that `chi(x) = exp_p(qx)`.
    Exponential,
}

/// The character `x -> a^x` with `a = 1 mod p`, known mod `p^E`.
#[derive(Clone, PartialEq, Eq)]
pub struct Character {
    ctx: PadicContext,
    base: BigUint,
    kind: BaseKind,
}

/// Result of inverting a character: `value` is certified mod
/// `p^certified_exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inversion {
    pub value: BigUint,
    pub certified_exponent: u32,
}

impl Character {
    pub fn new(ctx: &PadicContext, base: impl Into<BigUint>) -> Result<Self> {
        let base = base.into() % ctx.modulus();
        if !(&base % ctx.p_big()).is_one() {
            return Err(Error::InvalidInput(format!(
                "character base {base} is not 1 mod {}",
                ctx.p()
            )));
        }
        Ok(Self {
            ctx: ctx.clone(),
            base,
            kind: BaseKind::Explicit,
        })
    }

    /// The character `exp_p(q x)`.
    pub fn exponential(ctx: &PadicContext) -> Self {
        let base = eval_taylor_exp(ctx, &BigUint::one()).into_value();
        Self {
            ctx: ctx.clone(),
            base,
            kind: BaseKind::Exponential,
        }
    }

    pub fn context(&self) -> &PadicContext {
        &self.ctx
    }

    pub fn base(&self) -> &BigUint {
        &self.base
    }

    pub fn base_residue(&self) -> PadicResidue {
        self.ctx.residue(self.base.clone())
    }

    pub fn kind(&self) -> BaseKind {
        self.kind
    }

    /// The same character known to fewer digits.
    pub fn at_precision(&self, precision: u32) -> Result<Self> {
        if precision > self.ctx.precision() {
            return Err(Error::InvalidInput(format!(
                "character known mod {}^{} cannot be used at precision {precision}",
                self.ctx.p(),
                self.ctx.precision()
            )));
        }
        let ctx = self.ctx.with_precision(precision)?;
        Ok(Self {
            base: &self.base % ctx.modulus(),
            ctx,
            kind: self.kind,
        })
    }

    /// `a^x mod p^E` with the chosen method. `x` may be any natural number;
    /// it is reduced mod `p^(E-1)` first.
    pub fn eval(&self, x: &BigUint, method: EvalMethod) -> PadicResidue {
        match method {
            EvalMethod::Mahler => self.eval_mahler(x),
            EvalMethod::Taylor => self.eval_taylor(x),
            EvalMethod::Binary => self.eval_binary(x),
        }
    }

    fn reduce_argument(&self, x: &BigUint) -> BigUint {
        x % self.ctx.pow(self.ctx.precision() - 1)
    }

    /// Mahler series `sum_{e<E} binom(x, e) (a-1)^e`, tracking the
    /// valuation and unit part of `binom(x, e)` separately.
    pub fn eval_mahler(&self, x: &BigUint) -> PadicResidue {
        let ctx = &self.ctx;
        let p = ctx.p();
        let precision = ctx.precision();
        let modulus = ctx.modulus();
        let x = self.reduce_argument(x);
        let a_minus_one = &self.base - 1u32;

        let mut y = BigUint::zero();
        let mut v: u32 = 0;
        let mut u = BigUint::one();
        let mut b = BigUint::one();
        for e in 0..precision {
            if e > 0 {
                let e_big = BigUint::from(e);
                if e_big > x {
                    // binom(x, e) = 0 from here on
                    break;
                }
                let work = ctx.pow(precision - e);
                let num = valuative_decomposition(p, &(&x - &e_big + 1u32)).expect("x - e + 1 > 0");
                let (den_v, den_u) = valuative_decomposition_u64(p, e as u64).expect("e > 0");
                let den_inv = ctx
                    .inverse_unchecked(&BigUint::from(den_u), precision - e, InverseMethod::Euclid)
                    .expect("unit part is coprime to p");
                v = v + num.valuation - den_v;
                u = u * num.unit * den_inv % &work;
                b = b * &a_minus_one % modulus;
            }
            if v < precision {
                y = (y + ctx.pow(v) * &u * &b) % modulus;
            }
        }
        ctx.residue(y)
    }

    /// Square-and-multiply on the natural-number representative of `x`.
    pub fn eval_binary(&self, x: &BigUint) -> PadicResidue {
        let modulus = self.ctx.modulus();
        let mut x = self.reduce_argument(x);
        let mut y = BigUint::one() % modulus;
        let mut base = self.base.clone();
        let two = BigUint::from(2u32);
        while !x.is_zero() {
            if x.bit(0) {
                y = y * &base % modulus;
            }
            base = &base * &base % modulus;
            x /= &two;
        }
        self.ctx.residue(y)
    }

    /// `a^x` through `exp_p((log_p a) x)`, with the sign split
    /// `a^x = -exp_2(log_2(-a) x)` for odd `x` when `p = 2`, `a = -1 mod 4`.
    pub fn eval_taylor(&self, x: &BigUint) -> PadicResidue {
        let ctx = &self.ctx;
        let x = self.reduce_argument(x);
        if self.kind == BaseKind::Exponential {
            return eval_taylor_exp(ctx, &x);
        }
        let (log, negate) = self.signed_log();
        let consts = ExpConstants::new(ctx.p(), ctx.precision());
        let scaled = log.value() / ctx.pow(consts.m.min(ctx.precision()));
        let arg = scaled * &x;
        let y = eval_taylor_exp(ctx, &arg);
        if negate && x.bit(0) {
            -&y
        } else {
            y
        }
    }

    /// `log_p(a)`, or `log_p(-a)` with a flag when `p = 2` and `a = -1 mod 4`.
    fn signed_log(&self) -> (PadicResidue, bool) {
        let ctx = &self.ctx;
        if self.needs_sign_split() {
            let neg = ctx.modulus() - &self.base;
            (iwasawa_log(ctx, &neg).expect("-a = 1 mod 4"), true)
        } else {
            (iwasawa_log(ctx, &self.base).expect("a = 1 mod q"), false)
        }
    }

    /// True when `p = 2` and `a = 3 mod 4`.
    pub fn needs_sign_split(&self) -> bool {
        self.ctx.p() == 2 && self.ctx.precision() >= 2 && (&self.base % 4u32) == BigUint::from(3u32)
    }

    /// `log_p(a) / q`, the constant `c` with `chi(x) = exp_p(q c x)`.
    /// Known mod `p^(E-m)`; `None` for the sign-split case.
    pub fn exp_coefficient(&self) -> Option<BigUint> {
        if self.kind == BaseKind::Exponential {
            return Some(BigUint::one());
        }
        if self.needs_sign_split() {
            return None;
        }
        let (log, _) = self.signed_log();
        let m = ExpConstants::new(self.ctx.p(), self.ctx.precision()).m;
        Some(log.value() / self.ctx.pow(m.min(self.ctx.precision())))
    }

    /// Decidable surrogate of injectivity at precision `E`: the base is
    /// neither 1 nor (for p = 2) -1 modulo `p^E`. The exponential base is
    /// known exactly and always injective.
    pub fn is_injective(&self) -> bool {
        if self.kind == BaseKind::Exponential {
            return true;
        }
        let modulus = self.ctx.modulus();
        if self.base.is_one() || (modulus.is_one() && self.base.is_zero()) {
            return false;
        }
        if self.ctx.p() == 2 && self.base == modulus - 1u32 {
            return false;
        }
        true
    }

    /// Recovers `x` from `y = a^x`, as `log_p(±y) / log_p(±a)` after
    /// cancelling the valuation `c` of the denominator. The result is
    /// certified mod `p^(E-c)`.
    pub fn invert(&self, y: &BigUint) -> Result<Inversion> {
        let ctx = &self.ctx;
        let p = ctx.p();
        let precision = ctx.precision();
        if !self.is_injective() {
            return Err(Error::InvalidInput(format!(
                "character with base {} is not injective",
                self.base
            )));
        }
        let y = y % ctx.modulus();
        let (log_a, split) = self.signed_log();
        let (log_y, y_odd) = if split {
            match (&y % 4u32).to_u32() {
                Some(1) => (iwasawa_log(ctx, &y)?, false),
                Some(3) => (iwasawa_log(ctx, &(ctx.modulus() - &y))?, true),
                _ => return Err(Error::NotInImage(y.to_string())),
            }
        } else {
            let log = iwasawa_log(ctx, &y).map_err(|_| Error::NotInImage(y.to_string()))?;
            (log, false)
        };

        // log of the exponential base is exactly q, even when the base
        // itself vanishes to precision E
        let (c, denom_unit) = match self.kind {
            BaseKind::Exponential => (ExpConstants::new(p, precision).m, BigUint::one()),
            BaseKind::Explicit => {
                let c = valuation_of(p, log_a.value()).expect("injective character has nonzero log");
                (c, log_a.value() / ctx.pow(c))
            }
        };
        let certified_exponent = precision.saturating_sub(c);
        let c = c.min(precision);
        if let Some(vy) = valuation_of(p, log_y.value()) {
            if vy < c {
                return Err(Error::NotInImage(y.to_string()));
            }
        }
        let numer = log_y.value() / ctx.pow(c);
        let inv = ctx.inverse_unchecked(&denom_unit, certified_exponent, InverseMethod::Euclid)?;
        let modulus = ctx.pow(certified_exponent);
        let value = numer * inv % &modulus;
        if split && value.bit(0) != y_odd {
            return Err(Error::NotInImage(y.to_string()));
        }
        Ok(Inversion {
            value,
            certified_exponent,
        })
    }

    /// Pointwise product: the character with base `a1 a2`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.ctx != other.ctx {
            return Err(Error::CharacterMismatch);
        }
        Ok(Self {
            ctx: self.ctx.clone(),
            base: &self.base * &other.base % self.ctx.modulus(),
            kind: BaseKind::Explicit,
        })
    }

    pub fn spec(&self) -> CharacterSpec {
        let ContextSpec { p, precision } = self.ctx.spec();
        match self.kind {
            BaseKind::Exponential => CharacterSpec {
                p,
                precision,
                a: None,
                exp: Some(true),
            },
            BaseKind::Explicit => CharacterSpec {
                p,
                precision,
                a: Some(self.base.to_string()),
                exp: None,
            },
        }
    }
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            BaseKind::Exponential => write!(
                f,
                "exp_{}(q.) mod {}^{}",
                self.ctx.p(),
                self.ctx.p(),
                self.ctx.precision()
            ),
            BaseKind::Explicit => write!(f, "{}^. mod {}^{}", self.base, self.ctx.p(), self.ctx.precision()),
        }
    }
}

/// `{"p", "E", "a": "<decimal>"}` or `{"p", "E", "exp": true}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterSpec {
    pub p: u64,
    #[serde(rename = "E")]
    pub precision: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exp: Option<bool>,
}

impl CharacterSpec {
    pub fn build(&self) -> Result<Character> {
        let ctx = PadicContext::new(self.p, self.precision)?;
        match (&self.a, self.exp) {
            (None, Some(true)) => Ok(Character::exponential(&ctx)),
            (Some(a), None | Some(false)) => Character::new(&ctx, parse_uint(a)?),
            _ => Err(Error::InvalidInput(
                "character needs exactly one of \"a\" or \"exp\": true".into(),
            )),
        }
    }
}
