//! Sparse integer polynomials, evaluated modulo powers of `p`, and the
//! compilation of the network's training residual into such a system.
//!
//! The residual `p^F (y_i - C chi(A x_i + b))` is a polynomial in the
//! entries of `A`, `b` and `p^F C` once `chi(w)` is replaced by the
//! truncated series of `exp_p((log_p a) w)`. Sample inputs are folded in
//! as constants, so each sample and output row yields one polynomial.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::characters::{Character, ExpConstants};
use crate::error::{Error, Result};
use crate::network::{CharacterNetwork, Dataset};
use crate::padic::{parse_int, reduce_signed, PadicContext, PadicResidue};

/// A monomial as sorted `(variable, exponent)` pairs with positive
/// exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(usize, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn var(index: usize) -> Self {
        Self(vec![(index, 1)])
    }

    /// Builds a monomial from arbitrary pairs, merging repeats and
    /// dropping zero exponents.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, u32)>) -> Self {
        let mut map = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_insert(0) += e;
        }
        Self(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn exponents(&self) -> &[(usize, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn max_var(&self) -> Option<usize> {
        self.0.last().map(|&(v, _)| v)
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, b) = (self.0[i], other.0[j]);
            match a.0.cmp(&b.0) {
                std::cmp::Ordering::Less => {
                    out.push(a);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Self(out)
    }
}

/// A polynomial over `Z` in `num_vars` variables with no zero
/// coefficients stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPolynomial {
    num_vars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl IntPolynomial {
    pub fn zero(num_vars: usize) -> Self {
        Self {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(num_vars: usize, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(num_vars);
        p.add_term(Monomial::one(), c.into());
        p
    }

    pub fn var(num_vars: usize, index: usize) -> Self {
        assert!(index < num_vars, "variable {index} out of range for {num_vars}");
        let mut p = Self::zero(num_vars);
        p.add_term(Monomial::var(index), BigInt::one());
        p
    }

    /// Builds a polynomial from `(monomial, coefficient)` terms.
    pub fn from_terms(num_vars: usize, terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Result<Self> {
        let mut p = Self::zero(num_vars);
        for (m, c) in terms {
            if let Some(v) = m.max_var() {
                if v >= num_vars {
                    return Err(Error::InvalidInput(format!(
                        "variable {v} out of range for {num_vars} variables"
                    )));
                }
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Highest exponent of each variable.
    pub fn max_exponents(&self) -> Vec<u32> {
        let mut out = vec![0; self.num_vars];
        for m in self.terms.keys() {
            for &(v, e) in m.exponents() {
                out[v] = out[v].max(e);
            }
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = Self::zero(self.num_vars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * k);
        }
        out
    }

    /// Coefficients reduced into `[0, modulus)`; terms that vanish drop.
    pub fn reduce_coefficients(&self, modulus: &BigUint) -> Self {
        let mut out = Self::zero(self.num_vars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), BigInt::from(reduce_signed(c, modulus)));
        }
        out
    }

    /// `f(z) mod modulus`. Powers of each variable are tabulated once
    /// and every product is reduced.
    pub fn eval_mod(&self, z: &[BigUint], modulus: &BigUint) -> Result<BigUint> {
        if z.len() != self.num_vars {
            return Err(Error::ShapeMismatch(format!(
                "point has {} coordinates, polynomial has {} variables",
                z.len(),
                self.num_vars
            )));
        }
        if modulus.is_one() {
            return Ok(BigUint::zero());
        }
        let max = self.max_exponents();
        let powers: Vec<Vec<BigUint>> = z
            .iter()
            .zip(&max)
            .map(|(zi, &d)| {
                let zi = zi % modulus;
                let mut row = Vec::with_capacity(d as usize + 1);
                row.push(BigUint::one());
                for k in 1..=d as usize {
                    let next = &row[k - 1] * &zi % modulus;
                    row.push(next);
                }
                row
            })
            .collect();
        let mut acc = BigUint::zero();
        for (m, c) in &self.terms {
            let mut term = reduce_signed(c, modulus);
            for &(v, e) in m.exponents() {
                term = term * &powers[v][e as usize] % modulus;
            }
            acc += term;
        }
        Ok(acc % modulus)
    }

    pub fn to_repr(&self) -> PolyRepr {
        PolyRepr {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermRepr {
                    exps: m.exponents().iter().map(|&(v, e)| (v.to_string(), e)).collect(),
                    coef: c.to_string(),
                })
                .collect(),
        }
    }

    pub fn from_repr(num_vars: usize, repr: &PolyRepr) -> Result<Self> {
        let terms = repr
            .terms
            .iter()
            .map(|t| {
                let pairs = t
                    .exps
                    .iter()
                    .map(|(k, &e)| {
                        k.parse::<usize>()
                            .map(|v| (v, e))
                            .map_err(|_| Error::InvalidInput(format!("bad variable index {k:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok((Monomial::from_pairs(pairs), parse_int(&t.coef)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(num_vars, terms)
    }

    fn check_vars(&self, other: &Self) {
        assert_eq!(
            self.num_vars, other.num_vars,
            "polynomials over different variable sets"
        );
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: Self) -> IntPolynomial {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        self.scale(&BigInt::from(-1))
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: Self) -> IntPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: Self) -> IntPolynomial {
        self.check_vars(rhs);
        let mut out = IntPolynomial::zero(self.num_vars);
        for (m0, c0) in &self.terms {
            for (m1, c1) in &rhs.terms {
                out.add_term(m0.mul(m1), c0 * c1);
            }
        }
        out
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if i > 0 {
                write!(f, " {sign} ")?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            let mag = c.abs();
            if m.exponents().is_empty() || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            for &(v, e) in m.exponents() {
                if e == 1 {
                    write!(f, "z{v}")?;
                } else {
                    write!(f, "z{v}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// `f(z) mod p^e` as a residue.
pub fn poly_eval_mod(f: &IntPolynomial, z: &[BigUint], ctx: &PadicContext, e: u32) -> Result<PadicResidue> {
    if e == 0 {
        return Err(Error::InvalidInput("evaluation exponent must be at least 1".into()));
    }
    let ctx = ctx.with_precision(e)?;
    let v = f.eval_mod(z, ctx.modulus())?;
    Ok(ctx.residue(v))
}

/// The network parameter a polynomial variable stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Param {
    /// `A[row][col]`
    Weight(usize, usize),
    /// `b[row]`
    Bias(usize),
    /// numerator of `p^F C[row][col]`
    Coefficient(usize, usize),
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Weight(j, k) => write!(f, "A[{j}][{k}]"),
            Param::Bias(j) => write!(f, "b[{j}]"),
            Param::Coefficient(r, j) => write!(f, "C[{r}][{j}]"),
        }
    }
}

/// Variable layout: `A` row-major, then `b`, then `p^F C` row-major.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariableLayout {
    #[serde(rename = "N")]
    pub inputs: usize,
    #[serde(rename = "D")]
    pub hidden: usize,
    #[serde(rename = "M")]
    pub outputs: usize,
}

impl VariableLayout {
    pub fn new(inputs: usize, hidden: usize, outputs: usize) -> Self {
        Self {
            inputs,
            hidden,
            outputs,
        }
    }

    /// `L = DN + D + MD`.
    pub fn num_vars(&self) -> usize {
        self.hidden * self.inputs + self.hidden + self.outputs * self.hidden
    }

    pub fn weight(&self, j: usize, k: usize) -> usize {
        j * self.inputs + k
    }

    pub fn bias(&self, j: usize) -> usize {
        self.hidden * self.inputs + j
    }

    pub fn coefficient(&self, r: usize, j: usize) -> usize {
        self.hidden * self.inputs + self.hidden + r * self.hidden + j
    }

    pub fn param(&self, index: usize) -> Param {
        let a = self.hidden * self.inputs;
        if index < a {
            Param::Weight(index / self.inputs, index % self.inputs)
        } else if index < a + self.hidden {
            Param::Bias(index - a)
        } else {
            let i = index - a - self.hidden;
            Param::Coefficient(i / self.hidden, i % self.hidden)
        }
    }

    /// Splits an assignment `z` into `(A, b, p^F C)`.
    #[allow(clippy::type_complexity)]
    pub fn split(&self, z: &[BigUint]) -> (Vec<Vec<BigUint>>, Vec<BigUint>, Vec<Vec<BigUint>>) {
        let a = (0..self.hidden)
            .map(|j| (0..self.inputs).map(|k| z[self.weight(j, k)].clone()).collect())
            .collect();
        let b = (0..self.hidden).map(|j| z[self.bias(j)].clone()).collect();
        let c = (0..self.outputs)
            .map(|r| (0..self.hidden).map(|j| z[self.coefficient(r, j)].clone()).collect())
            .collect();
        (a, b, c)
    }

    /// Base-p digits of each variable at effective precision `E + F`:
    /// `E + F - 1` for `A` and `b`, `E + F` for `p^F C`.
    pub fn digit_bounds(&self, precision: u32) -> Vec<u32> {
        (0..self.num_vars())
            .map(|k| match self.param(k) {
                Param::Coefficient(..) => precision,
                _ => precision.saturating_sub(1),
            })
            .collect()
    }

    /// Builds the network that assignment `z` describes.
    pub fn decode(
        &self,
        z: &[BigUint],
        ctx: &PadicContext,
        denominator_exp: u32,
        chi: &Character,
    ) -> Result<CharacterNetwork> {
        if z.len() != self.num_vars() {
            return Err(Error::ShapeMismatch(format!(
                "assignment has {} entries, layout has {}",
                z.len(),
                self.num_vars()
            )));
        }
        let (a, b, c) = self.split(z);
        CharacterNetwork::new(ctx, denominator_exp, chi, self.inputs, a, b, c)
    }

    /// Inverse of [`decode`](Self::decode).
    pub fn encode(&self, net: &CharacterNetwork) -> Vec<BigUint> {
        let mut z = vec![BigUint::zero(); self.num_vars()];
        for (j, row) in net.weights().iter().enumerate() {
            for (k, w) in row.iter().enumerate() {
                z[self.weight(j, k)] = w.clone();
            }
        }
        for (j, b) in net.bias().iter().enumerate() {
            z[self.bias(j)] = b.clone();
        }
        for (r, row) in net.coefficients().iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                z[self.coefficient(r, j)] = c.clone();
            }
        }
        z
    }
}

/// The compiled residual system at effective precision `E + F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompiledSystem {
    pub p: u64,
    /// `E + F`
    pub precision: u32,
    pub layout: VariableLayout,
    /// One polynomial per `(sample, output row)`, sample-major.
    pub polynomials: Vec<IntPolynomial>,
    /// Truncation degree of the exponential series at `E + F`.
    pub series_degree: u32,
}

impl CompiledSystem {
    pub fn num_vars(&self) -> usize {
        self.layout.num_vars()
    }

    /// `(sample, row)` of polynomial `k`.
    pub fn index(&self, k: usize) -> (usize, usize) {
        (k / self.layout.outputs, k % self.layout.outputs)
    }

    pub fn to_file(&self) -> SystemFile {
        SystemFile {
            p: Some(self.p),
            precision: Some(self.precision),
            num_vars: Some(self.num_vars()),
            layout: Some(LayoutRepr {
                shape: self.layout,
                variables: (0..self.num_vars()).map(|i| self.layout.param(i).to_string()).collect(),
            }),
            polynomials: self.polynomials.iter().map(IntPolynomial::to_repr).collect(),
        }
    }
}

/// The coefficients `q^e / e!` of the exponential series as integers
/// mod `p^E`, for `e` below the truncation degree. Terms with valuation
/// at least `E` are zero.
pub fn exp_series_coefficients(ctx: &PadicContext) -> Vec<BigUint> {
    let p = ctx.p();
    let precision = ctx.precision();
    let consts = ExpConstants::new(p, precision);
    let table = ctx.factorials(consts.truncation as usize);
    (0..consts.truncation as usize)
        .map(|e| {
            let entry = table.get(e).expect("table covers the truncation degree");
            let shift = consts.m as u64 * e as u64 - entry.valuation as u64;
            if shift >= precision as u64 {
                return BigUint::zero();
            }
            let inv = ctx
                .mod_inverse(&entry.unit, precision)
                .expect("factorial unit part is coprime to p");
            ctx.pow(shift as u32) * inv % ctx.modulus()
        })
        .collect()
}

/// Compiles `p^F (y_i - C chi(A x_i + b))` into one polynomial per sample
/// and output row, in the variables of `layout`.
///
/// `chi` must be known to at least `E + F` digits and must be of the form
/// `exp_p(q c x)`; the sign-split case `p = 2`, `a = -1 mod 4` is rejected.
pub fn compile_residual(layout: VariableLayout, chi: &Character, data: &Dataset) -> Result<CompiledSystem> {
    if layout.inputs != data.inputs() || layout.outputs != data.outputs() {
        return Err(Error::ShapeMismatch(format!(
            "layout maps {} -> {}, dataset has {} -> {}",
            layout.inputs,
            layout.outputs,
            data.inputs(),
            data.outputs()
        )));
    }
    if layout.hidden == 0 {
        return Err(Error::ShapeMismatch("hidden dimension D must be at least 1".into()));
    }
    let base_ctx = data.context();
    if chi.context().p() != base_ctx.p() {
        return Err(Error::CharacterMismatch);
    }
    let precision = base_ctx.precision() + data.denominator_exp();
    let chi = chi.at_precision(precision)?;
    let ctx = chi.context().clone();
    let Some(c) = chi.exp_coefficient() else {
        return Err(Error::UnsupportedCompilation(format!(
            "base {} = -1 mod 4 needs a parity-dependent sign",
            chi.base()
        )));
    };
    let modulus = ctx.modulus().clone();
    let coeffs = exp_series_coefficients(&ctx);
    let c = BigInt::from(c);
    let l = layout.num_vars();

    let per_sample: Vec<Vec<IntPolynomial>> = data
        .samples()
        .par_iter()
        .map(|sample| {
            // T(c (A_j x + b_j)) for every hidden unit
            let hidden: Vec<IntPolynomial> = (0..layout.hidden)
                .map(|j| {
                    let mut lin = IntPolynomial::var(l, layout.bias(j)).scale(&c);
                    for (k, xk) in sample.x.iter().enumerate() {
                        let coef = &c * BigInt::from(xk.clone());
                        lin = &lin + &IntPolynomial::var(l, layout.weight(j, k)).scale(&coef);
                    }
                    let lin = lin.reduce_coefficients(&modulus);
                    let mut acc = IntPolynomial::zero(l);
                    for k in coeffs.iter().rev() {
                        acc = (&(&acc * &lin) + &IntPolynomial::constant(l, BigInt::from(k.clone())))
                            .reduce_coefficients(&modulus);
                    }
                    acc
                })
                .collect();
            sample
                .y
                .iter()
                .enumerate()
                .map(|(r, y)| {
                    let mut f = IntPolynomial::constant(l, BigInt::from(y.numerator().clone()));
                    for (j, t) in hidden.iter().enumerate() {
                        let cv = IntPolynomial::var(l, layout.coefficient(r, j));
                        f = &f - &(&cv * t);
                    }
                    f.reduce_coefficients(&modulus)
                })
                .collect()
        })
        .collect();

    Ok(CompiledSystem {
        p: ctx.p(),
        precision,
        layout,
        polynomials: per_sample.into_iter().flatten().collect(),
        series_degree: coeffs.len() as u32,
    })
}

/// JSON form of a term: `{"exps": {"0": 2}, "coef": "-1"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRepr {
    pub exps: BTreeMap<String, u32>,
    pub coef: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyRepr {
    pub terms: Vec<TermRepr>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayoutRepr {
    #[serde(flatten)]
    pub shape: VariableLayout,
    pub variables: Vec<String>,
}

/// A polynomial system on disk, with optional metadata.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(rename = "E", default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<u32>,
    #[serde(rename = "L", default, skip_serializing_if = "Option::is_none")]
    pub num_vars: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub layout: Option<LayoutRepr>,
    pub polynomials: Vec<PolyRepr>,
}

/// Accepts either a full [`SystemFile`] or a bare list of polynomials.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum SystemInput {
    File(SystemFile),
    Bare(Vec<PolyRepr>),
}

impl SystemInput {
    pub fn into_file(self) -> SystemFile {
        match self {
            SystemInput::File(f) => f,
            SystemInput::Bare(polynomials) => SystemFile {
                p: None,
                precision: None,
                num_vars: None,
                layout: None,
                polynomials,
            },
        }
    }
}

impl SystemFile {
    /// Number of variables: declared, from the layout, or one past the
    /// largest index used (at least 1).
    pub fn resolved_num_vars(&self) -> Result<usize> {
        if let Some(l) = self.num_vars {
            return Ok(l);
        }
        if let Some(layout) = &self.layout {
            return Ok(layout.shape.num_vars());
        }
        let mut max = 0usize;
        for poly in &self.polynomials {
            for t in &poly.terms {
                for k in t.exps.keys() {
                    let v: usize = k
                        .parse()
                        .map_err(|_| Error::InvalidInput(format!("bad variable index {k:?}")))?;
                    max = max.max(v + 1);
                }
            }
        }
        Ok(max.max(1))
    }

    pub fn polynomials(&self) -> Result<Vec<IntPolynomial>> {
        let l = self.resolved_num_vars()?;
        self.polynomials
            .iter()
            .map(|r| IntPolynomial::from_repr(l, r))
            .collect()
    }
}

/// Greatest `v <= cap` with `p^v | x`.
pub(crate) fn capped_valuation(p: u64, x: &BigUint, cap: u32) -> u32 {
    if x.is_zero() {
        return cap;
    }
    let p = BigUint::from(p);
    let mut x = x.clone();
    let mut v = 0;
    while v < cap {
        let (q, r) = x.div_rem(&p);
        if !r.is_zero() {
            break;
        }
        x = q;
        v += 1;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::Sample;
    use crate::padic::ScaledPadic;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    fn z(i: usize, l: usize) -> IntPolynomial {
        IntPolynomial::var(l, i)
    }

    #[test]
    fn eval_examples() {
        let c3 = PadicContext::new(3, 4).unwrap();
        let f = &(&z(0, 1) * &z(0, 1)) - &IntPolynomial::constant(1, 1);
        for p in [2, 3, 5] {
            let ctx = PadicContext::new(p, 3).unwrap();
            assert!(poly_eval_mod(&f, &[big(1)], &ctx, 3).unwrap().is_zero());
        }
        let g = &(&z(0, 1) * &z(0, 1)) - &IntPolynomial::constant(1, 2);
        assert_eq!(poly_eval_mod(&g, &[big(1)], &c3, 1).unwrap().value(), &big(2));
        let h = &(&z(0, 2) * &z(1, 2)) + &IntPolynomial::constant(2, 3);
        assert_eq!(poly_eval_mod(&h, &[big(4), big(5)], &c3, 2).unwrap().value(), &big(5));
        assert!(poly_eval_mod(&h, &[big(4)], &c3, 2).is_err());
    }

    #[test]
    fn canonical_terms() {
        let x = z(0, 2);
        let y = z(1, 2);
        let f = &(&x + &y) - &x;
        assert_eq!(f, y);
        assert_eq!((&x - &x).num_terms(), 0);
        let sq = &(&x + &y) * &(&x + &y);
        assert_eq!(sq.num_terms(), 3);
        assert_eq!(sq.degree(), 2);
        assert_eq!(sq.to_string(), "2z0z1 + z0^2 + z1^2");
        assert_eq!(Monomial::from_pairs([(1, 1), (0, 0), (1, 2)]).exponents(), &[(1, 3)]);
    }

    #[test]
    fn layout_count_and_decode() {
        let layout = VariableLayout::new(2, 3, 1);
        assert_eq!(layout.num_vars(), 12);
        assert_eq!(layout.param(0), Param::Weight(0, 0));
        assert_eq!(layout.param(5), Param::Weight(2, 1));
        assert_eq!(layout.param(6), Param::Bias(0));
        assert_eq!(layout.param(9), Param::Coefficient(0, 0));
        assert_eq!(layout.param(11), Param::Coefficient(0, 2));
        for i in 0..12 {
            let idx = match layout.param(i) {
                Param::Weight(j, k) => layout.weight(j, k),
                Param::Bias(j) => layout.bias(j),
                Param::Coefficient(r, j) => layout.coefficient(r, j),
            };
            assert_eq!(idx, i);
        }
    }

    #[test]
    fn exp_coefficients_match_rational_values() {
        // q^e / e! for p = 3, E = 3: 1, 3, 9/2, 9/2, 27/8, 81/40
        let ctx = PadicContext::new(3, 3).unwrap();
        let k = exp_series_coefficients(&ctx);
        assert_eq!(k.len(), 6);
        assert_eq!(k[0], big(1));
        assert_eq!(k[1], big(3));
        // 9/2 mod 27 = 9 * 14 = 126 = 18 mod 27
        assert_eq!(k[2], big(18));
        assert_eq!(k[3], big(18));
        assert!(k[4..].iter().all(|x| x.is_zero()));
    }

    #[test]
    fn trivial_fit_compiles_to_zero() {
        let ctx = PadicContext::new(3, 2).unwrap();
        let chi = Character::new(&ctx, 4u32).unwrap();
        let sample = Sample {
            x: vec![big(0)],
            y: vec![ScaledPadic::from_integer(&ctx, 0, &big(1))],
        };
        let data = Dataset::new(&ctx, 0, 1, 1, vec![sample]).unwrap();
        let layout = VariableLayout::new(1, 1, 1);
        let sys = compile_residual(layout, &chi, &data).unwrap();
        assert_eq!(sys.polynomials.len(), 1);
        let f = &sys.polynomials[0];
        // A = anything, b = 0, C = p^F = 1
        for a in 0..9 {
            let v = f.eval_mod(&[big(a), big(0), big(1)], &big(9)).unwrap();
            assert!(v.is_zero());
        }
        assert!(f.degree() <= sys.series_degree);
    }

    #[test]
    fn sign_split_character_is_rejected() {
        let ctx = PadicContext::new(2, 3).unwrap();
        let chi = Character::new(&ctx, 3u32).unwrap();
        let data = Dataset::new(&ctx, 0, 1, 1, vec![]).unwrap();
        let err = compile_residual(VariableLayout::new(1, 1, 1), &chi, &data).unwrap_err();
        assert!(matches!(err, Error::UnsupportedCompilation(_)));
    }

    #[test]
    fn system_file_forms() {
        let bare = r#"[{"terms":[{"exps":{"0":2},"coef":"1"},{"exps":{},"coef":"-2"}]}]"#;
        let file = serde_json::from_str::<SystemInput>(bare).unwrap().into_file();
        assert_eq!(file.resolved_num_vars().unwrap(), 1);
        let polys = file.polynomials().unwrap();
        assert_eq!(polys[0].to_string(), "-2 + z0^2");

        let ctx = PadicContext::new(3, 2).unwrap();
        let chi = Character::new(&ctx, 4u32).unwrap();
        let data = Dataset::new(
            &ctx,
            0,
            1,
            1,
            vec![Sample {
                x: vec![big(2)],
                y: vec![ScaledPadic::new(&ctx, 0, 5u32)],
            }],
        )
        .unwrap();
        let sys = compile_residual(VariableLayout::new(1, 2, 1), &chi, &data).unwrap();
        let json = serde_json::to_string(&sys.to_file()).unwrap();
        let back = serde_json::from_str::<SystemInput>(&json).unwrap().into_file();
        assert_eq!(back, sys.to_file());
        assert_eq!(back.polynomials().unwrap(), sys.polynomials);
    }

    #[test]
    fn capped_valuation_helper() {
        assert_eq!(capped_valuation(3, &big(0), 4), 4);
        assert_eq!(capped_valuation(3, &big(18), 4), 2);
        assert_eq!(capped_valuation(3, &big(81 * 2), 4), 4);
    }
}
