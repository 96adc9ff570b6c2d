//! Exact training by feasibility of polynomial systems over `Z/p^e Z`.
//!
//! [`ddp_max_exponent`] lifts common zeros one base-p digit at a time:
//! every zero mod `p^(e+1)` reduces to a zero mod `p^e`, so the zeros at
//! level `e+1` are found among `z + p^e d` with `z` a level-`e` zero and
//! `d` a digit vector. The largest level reached is the maximal feasible
//! exponent `e*`, and the exact l-infinity minimum is `p^(-e*)`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::characters::Character;
use crate::error::{Error, Result};
use crate::network::{CharacterNetwork, Dataset};
use crate::padic::p_power_rational;
use crate::polysys::{capped_valuation, compile_residual, CompiledSystem, IntPolynomial, VariableLayout};

pub const DEFAULT_FRONTIER_BUDGET: usize = 1_000_000;
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    /// Largest number of witnesses kept at any level.
    pub frontier_budget: usize,
    /// Largest number of points `brute_force_minimum` may visit.
    pub enumeration_budget: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            frontier_budget: DEFAULT_FRONTIER_BUDGET,
            enumeration_budget: DEFAULT_ENUMERATION_BUDGET,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum NormKind {
    #[default]
    Linf,
    L1,
}

impl fmt::Display for NormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NormKind::Linf => "linf",
            NormKind::L1 => "l1",
        })
    }
}

/// Outcome of digit dynamic programming.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DdpReport {
    /// Largest `e <= cap` with a common zero mod `p^e`.
    pub e_star: u32,
    /// The frontier was still nonempty when the cap was reached.
    pub hit_cap: bool,
    /// Number of common zeros mod `p^e` for `e = 0..=e_star`.
    pub zero_count_per_level: Vec<usize>,
    /// Lexicographically smallest common zero mod `p^e_star`.
    pub witness: Option<Vec<BigUint>>,
}

impl DdpReport {
    pub fn to_file(&self) -> DdpReportFile {
        DdpReportFile {
            e_star: self.e_star,
            hit_cap: self.hit_cap,
            zero_count_per_level: self.zero_count_per_level.clone(),
            witness: self.witness.as_ref().map(|w| w.iter().map(|x| x.to_string()).collect()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DdpReportFile {
    pub e_star: u32,
    pub hit_cap: bool,
    pub zero_count_per_level: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
}

/// An exact loss under `|p| = 1/p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LossValue {
    /// `p^(-exponent)`, or zero within precision when `exponent` is `None`.
    Linf {
        p: u64,
        precision: u32,
        exponent: Option<u32>,
    },
    /// `sum p^(-v)` over the residuals that are nonzero mod `p^precision`;
    /// `valuations` is sorted ascending.
    L1 {
        p: u64,
        precision: u32,
        valuations: Vec<u32>,
    },
}

impl LossValue {
    pub fn norm(&self) -> NormKind {
        match self {
            LossValue::Linf { .. } => NormKind::Linf,
            LossValue::L1 { .. } => NormKind::L1,
        }
    }

    pub fn is_zero_within_precision(&self) -> bool {
        match self {
            LossValue::Linf { exponent, .. } => exponent.is_none(),
            LossValue::L1 { valuations, .. } => valuations.is_empty(),
        }
    }

    pub fn value(&self) -> BigRational {
        match self {
            LossValue::Linf { p, exponent, .. } => match exponent {
                Some(e) => p_power_rational(*p, -(*e as i64)),
                None => BigRational::zero(),
            },
            LossValue::L1 { p, valuations, .. } => valuations
                .iter()
                .fold(BigRational::zero(), |acc, &v| acc + p_power_rational(*p, -(v as i64))),
        }
    }

    pub fn to_file(&self) -> LossFile {
        let (norm, zero, exponent) = match self {
            LossValue::Linf { exponent, .. } => (NormKind::Linf, exponent.is_none(), *exponent),
            LossValue::L1 { valuations, .. } => (NormKind::L1, valuations.is_empty(), None),
        };
        LossFile {
            norm,
            zero_within_precision: zero,
            exponent,
            value: self.value().to_string(),
        }
    }
}

impl fmt::Display for LossValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LossValue::Linf {
                precision,
                exponent: None,
                ..
            }
            | LossValue::L1 { precision, .. }
                if self.is_zero_within_precision() =>
            {
                write!(f, "0 (mod p^{precision})")
            }
            LossValue::Linf {
                p, exponent: Some(e), ..
            } => write!(f, "{p}^-{e}"),
            _ => write!(f, "{}", self.value()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LossFile {
    pub norm: NormKind,
    pub zero_within_precision: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponent: Option<u32>,
    /// exact rational, e.g. "1/9"
    pub value: String,
}

/// A polynomial with coefficients reduced mod a machine-sized `p^cap`.
struct SmallPoly {
    terms: Vec<(u64, Vec<(usize, u32)>)>,
}

/// Evaluation strategy: `u64` residues when `p^cap` fits comfortably,
/// big integers otherwise.
enum Evaluator {
    Small { p: u64, polys: Vec<SmallPoly> },
    Big { p: u64, polys: Vec<IntPolynomial> },
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

impl Evaluator {
    fn new(system: &[IntPolynomial], p: u64, cap: u32) -> Self {
        let top = (p as u128).checked_pow(cap.max(1));
        match top {
            Some(m) if m < (1u128 << 63) => {
                let big_m = BigUint::from(m as u64);
                let polys = system
                    .iter()
                    .map(|f| SmallPoly {
                        terms: f
                            .terms()
                            .map(|(mono, c)| {
                                let c = crate::padic::reduce_signed(c, &big_m).to_u64().expect("below modulus");
                                (c, mono.exponents().to_vec())
                            })
                            .filter(|(c, _)| *c != 0)
                            .collect(),
                    })
                    .collect();
                Evaluator::Small { p, polys }
            }
            _ => Evaluator::Big {
                p,
                polys: system.to_vec(),
            },
        }
    }

    /// Valuation of each `f_i(z)`, capped at `cap`.
    fn valuations(&self, z: &[BigUint], cap: u32) -> Vec<u32> {
        match self {
            Evaluator::Small { p, polys } => {
                let m = p.pow(cap);
                let zs: Vec<u64> = z
                    .iter()
                    .map(|x| (x % BigUint::from(m)).to_u64().expect("small"))
                    .collect();
                polys
                    .iter()
                    .map(|f| {
                        let v = eval_small(f, &zs, m);
                        small_valuation(*p, v, cap)
                    })
                    .collect()
            }
            Evaluator::Big { p, polys } => {
                let m = num_traits::pow(BigUint::from(*p), cap as usize);
                polys
                    .iter()
                    .map(|f| {
                        let v = f.eval_mod(z, &m).expect("arity checked");
                        capped_valuation(*p, &v, cap)
                    })
                    .collect()
            }
        }
    }

    fn all_vanish(&self, z: &Witness, e: u32) -> bool {
        match (self, z) {
            (Evaluator::Small { p, polys }, Witness::Small(zs)) => {
                let m = p.pow(e);
                polys.iter().all(|f| eval_small(f, zs, m) == 0)
            }
            (Evaluator::Big { p, polys }, Witness::Big(zs)) => {
                let m = num_traits::pow(BigUint::from(*p), e as usize);
                polys
                    .iter()
                    .all(|f| f.eval_mod(zs, &m).expect("arity checked").is_zero())
            }
            _ => unreachable!("witness representation matches the evaluator"),
        }
    }
}

fn eval_small(f: &SmallPoly, z: &[u64], m: u64) -> u64 {
    let mut acc: u64 = 0;
    for (c, mono) in &f.terms {
        let mut term = c % m;
        for &(v, e) in mono {
            let mut base = z[v] % m;
            let mut e = e;
            let mut pw = 1 % m;
            while e > 0 {
                if e & 1 == 1 {
                    pw = mulmod(pw, base, m);
                }
                base = mulmod(base, base, m);
                e >>= 1;
            }
            term = mulmod(term, pw, m);
            if term == 0 {
                break;
            }
        }
        acc = (acc + term) % m;
    }
    acc
}

fn small_valuation(p: u64, mut x: u64, cap: u32) -> u32 {
    if x == 0 {
        return cap;
    }
    let mut v = 0;
    while v < cap && x.is_multiple_of(p) {
        x /= p;
        v += 1;
    }
    v
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Witness {
    Small(Vec<u64>),
    Big(Vec<BigUint>),
}

impl Witness {
    fn zero(evaluator: &Evaluator, len: usize) -> Self {
        match evaluator {
            Evaluator::Small { .. } => Witness::Small(vec![0; len]),
            Evaluator::Big { .. } => Witness::Big(vec![BigUint::zero(); len]),
        }
    }

    /// `self + p^level * digits` on the coordinates in `active`, digits
    /// given by the base-p expansion of `index` (first active coordinate
    /// most significant).
    fn lift(&self, p: u64, level: u32, active: &[usize], mut index: u64) -> Self {
        match self {
            Witness::Small(z) => {
                let scale = p.pow(level);
                let mut w = z.clone();
                for &v in active.iter().rev() {
                    w[v] += scale * (index % p);
                    index /= p;
                }
                Witness::Small(w)
            }
            Witness::Big(z) => {
                let scale = num_traits::pow(BigUint::from(p), level as usize);
                let mut w = z.clone();
                for &v in active.iter().rev() {
                    w[v] += &scale * (index % p);
                    index /= p;
                }
                Witness::Big(w)
            }
        }
    }

    fn to_big(&self) -> Vec<BigUint> {
        match self {
            Witness::Small(z) => z.iter().map(|&x| BigUint::from(x)).collect(),
            Witness::Big(z) => z.clone(),
        }
    }

    /// Every coordinate reduced mod `p^level`.
    fn truncate(&self, p: u64, level: u32) -> Self {
        match self {
            Witness::Small(z) => {
                let m = p.pow(level);
                Witness::Small(z.iter().map(|x| x % m).collect())
            }
            Witness::Big(z) => {
                let m = num_traits::pow(BigUint::from(p), level as usize);
                Witness::Big(z.iter().map(|x| x % &m).collect())
            }
        }
    }
}

fn check_system(system: &[IntPolynomial], num_vars: usize) -> Result<()> {
    if system.is_empty() {
        return Err(Error::InvalidInput("the polynomial system is empty".into()));
    }
    if num_vars == 0 {
        return Err(Error::InvalidInput("at least one variable is required".into()));
    }
    if let Some(f) = system.iter().find(|f| f.num_vars() != num_vars) {
        return Err(Error::ShapeMismatch(format!(
            "polynomial over {} variables in a system over {num_vars}",
            f.num_vars()
        )));
    }
    Ok(())
}

/// Largest `e <= cap` for which `system` has a common zero mod `p^e`,
/// found by lifting zeros one digit at a time.
pub fn ddp_max_exponent(
    system: &[IntPolynomial],
    p: u64,
    num_vars: usize,
    cap: u32,
    config: &SolverConfig,
) -> Result<DdpReport> {
    ddp_max_exponent_bounded(system, p, &vec![cap; num_vars], cap, config)
}

/// Like [`ddp_max_exponent`], with variable `k` restricted to
/// `N_{<p^digits[k]}`: once the level reaches `digits[k]`, its higher
/// digits stay zero.
pub fn ddp_max_exponent_bounded(
    system: &[IntPolynomial],
    p: u64,
    digits: &[u32],
    cap: u32,
    config: &SolverConfig,
) -> Result<DdpReport> {
    let num_vars = digits.len();
    check_system(system, num_vars)?;
    if !crate::padic::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let evaluator = Evaluator::new(system, p, cap);
    let mut frontier = vec![Witness::zero(&evaluator, num_vars)];
    let mut counts = vec![1usize];
    let mut level = 0u32;
    while level < cap {
        let next_level = level + 1;
        let active: Vec<usize> = (0..num_vars).filter(|&k| digits[k] > level).collect();
        let digit_vectors = p
            .checked_pow(active.len() as u32)
            .ok_or_else(|| Error::BudgetExceeded {
                needed: format!("{p}^{}", active.len()),
                budget: u64::MAX,
            })?;
        let mut next: Vec<Witness> = frontier
            .par_iter()
            .flat_map_iter(|z| {
                let evaluator = &evaluator;
                let active = &active;
                (0..digit_vectors).filter_map(move |d| {
                    let w = z.lift(p, level, active, d);
                    evaluator.all_vanish(&w, next_level).then_some(w)
                })
            })
            .collect();
        next.par_sort_unstable();
        next.dedup();
        if next.is_empty() {
            break;
        }
        if next.len() > config.frontier_budget {
            return Err(Error::FrontierOverflow {
                level,
                size: next.len(),
                budget: config.frontier_budget,
            });
        }
        debug_assert!(next
            .iter()
            .all(|w| frontier.binary_search_by(|z| z.cmp(&w.truncate(p, level))).is_ok()));
        counts.push(next.len());
        frontier = next;
        level = next_level;
    }
    let hit_cap = level == cap;
    Ok(DdpReport {
        e_star: level,
        hit_cap,
        zero_count_per_level: counts,
        witness: frontier.first().map(Witness::to_big),
    })
}

/// Exact l-infinity minimum of `(f_i(z)) mod p^precision` over
/// `z in N_{<p^precision}^L`, with the report that certifies it.
pub fn linf_training_minimum(
    system: &[IntPolynomial],
    p: u64,
    num_vars: usize,
    precision: u32,
    config: &SolverConfig,
) -> Result<(LossValue, DdpReport)> {
    let report = ddp_max_exponent(system, p, num_vars, precision, config)?;
    let exponent = if report.hit_cap { None } else { Some(report.e_star) };
    Ok((LossValue::Linf { p, precision, exponent }, report))
}

/// Exact minimum by enumerating every `z in N_{<p^precision}^L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteForceResult {
    pub loss: LossValue,
    /// All minimizers in lexicographic order.
    pub minimizers: Vec<Vec<BigUint>>,
}

pub fn brute_force_minimum(
    system: &[IntPolynomial],
    p: u64,
    num_vars: usize,
    precision: u32,
    norm: NormKind,
    config: &SolverConfig,
) -> Result<BruteForceResult> {
    brute_force_minimum_bounded(system, p, &vec![precision; num_vars], precision, norm, config)
}

/// Like [`brute_force_minimum`], with variable `k` ranging over
/// `N_{<p^digits[k]}`.
pub fn brute_force_minimum_bounded(
    system: &[IntPolynomial],
    p: u64,
    digits: &[u32],
    precision: u32,
    norm: NormKind,
    config: &SolverConfig,
) -> Result<BruteForceResult> {
    let num_vars = digits.len();
    check_system(system, num_vars)?;
    let total_digits: u32 = digits.iter().sum();
    let sides: Option<Vec<u64>> = digits.iter().map(|&d| p.checked_pow(d)).collect();
    let total = p.checked_pow(total_digits);
    let (sides, total) = match (sides, total) {
        (Some(s), Some(t)) if t <= config.enumeration_budget => (s, t),
        _ => {
            return Err(Error::BudgetExceeded {
                needed: format!("{p}^{total_digits}"),
                budget: config.enumeration_budget,
            })
        }
    };
    let evaluator = Evaluator::new(system, p, precision);

    // score: a comparable key where smaller is better
    #[derive(Clone, PartialEq, Eq)]
    enum Score {
        Linf(std::cmp::Reverse<u32>),
        L1(BigRational, Vec<u32>),
    }
    impl PartialOrd for Score {
        fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
            Some(self.cmp(other))
        }
    }
    impl Ord for Score {
        fn cmp(&self, other: &Self) -> Ordering {
            match (self, other) {
                (Score::Linf(a), Score::Linf(b)) => a.cmp(b),
                (Score::L1(a, _), Score::L1(b, _)) => a.cmp(b),
                _ => unreachable!("one norm per search"),
            }
        }
    }

    let score_of = |vals: Vec<u32>| -> Score {
        match norm {
            NormKind::Linf => Score::Linf(std::cmp::Reverse(vals.into_iter().min().unwrap_or(precision))),
            NormKind::L1 => {
                let mut nonzero: Vec<u32> = vals.into_iter().filter(|&v| v < precision).collect();
                nonzero.sort_unstable();
                let value = nonzero
                    .iter()
                    .fold(BigRational::zero(), |acc, &v| acc + p_power_rational(p, -(v as i64)));
                Score::L1(value, nonzero)
            }
        }
    };

    let point = |mut idx: u64| -> Vec<BigUint> {
        let mut z = vec![BigUint::zero(); num_vars];
        for (slot, side) in z.iter_mut().zip(&sides).rev() {
            *slot = BigUint::from(idx % side);
            idx /= side;
        }
        z
    };

    let scored: Vec<(u64, Score)> = (0..total)
        .into_par_iter()
        .map(|idx| (idx, score_of(evaluator.valuations(&point(idx), precision))))
        .collect();
    let best = scored.iter().map(|(_, s)| s).min().expect("at least one point").clone();
    let minimizers = scored
        .iter()
        .filter(|(_, s)| *s == best)
        .map(|(idx, _)| point(*idx))
        .collect();
    let loss = match best {
        Score::Linf(std::cmp::Reverse(v)) => LossValue::Linf {
            p,
            precision,
            exponent: (v < precision).then_some(v),
        },
        Score::L1(_, valuations) => LossValue::L1 {
            p,
            precision,
            valuations,
        },
    };
    Ok(BruteForceResult { loss, minimizers })
}

/// A fitted network with its exact loss on the compiled system.
#[derive(Clone, Debug)]
pub struct TrainResult {
    pub network: CharacterNetwork,
    /// Loss of `p^F (y - forward)` at precision `E + F`.
    pub loss: LossValue,
    /// Present for l-infinity training.
    pub report: Option<DdpReport>,
    pub system: CompiledSystem,
}

/// Fits `x -> C chi(Ax + b)` with `D = layout.hidden` hidden units to
/// `data`: compiles the residual, solves it exactly, and decodes the
/// optimal assignment back into a network.
pub fn train(
    layout: VariableLayout,
    chi: &Character,
    data: &Dataset,
    norm: NormKind,
    config: &SolverConfig,
) -> Result<TrainResult> {
    let system = compile_residual(layout, chi, data)?;
    let l = system.num_vars();
    let digits = layout.digit_bounds(system.precision);
    let (loss, report, witness) = if system.polynomials.is_empty() {
        // no samples: any network fits
        let loss = match norm {
            NormKind::Linf => LossValue::Linf {
                p: system.p,
                precision: system.precision,
                exponent: None,
            },
            NormKind::L1 => LossValue::L1 {
                p: system.p,
                precision: system.precision,
                valuations: vec![],
            },
        };
        (loss, None, vec![BigUint::zero(); l])
    } else {
        match norm {
            NormKind::Linf => {
                let report =
                    ddp_max_exponent_bounded(&system.polynomials, system.p, &digits, system.precision, config)?;
                let loss = LossValue::Linf {
                    p: system.p,
                    precision: system.precision,
                    exponent: (!report.hit_cap).then_some(report.e_star),
                };
                let w = report.witness.clone().expect("level 0 always has the zero vector");
                (loss, Some(report), w)
            }
            NormKind::L1 => {
                let res = brute_force_minimum_bounded(
                    &system.polynomials,
                    system.p,
                    &digits,
                    system.precision,
                    norm,
                    config,
                )?;
                let w = res.minimizers.into_iter().next().expect("nonempty search space");
                (res.loss, None, w)
            }
        }
    };
    let network = layout.decode(&witness, data.context(), data.denominator_exp(), chi)?;
    Ok(TrainResult {
        network,
        loss,
        report,
        system,
    })
}

/// Valuation of the scaled residual `p^F (y - forward)` for every sample
/// and output, capped at `E + F`.
pub fn scaled_residual_valuations(net: &CharacterNetwork, data: &Dataset) -> Result<Vec<Vec<u32>>> {
    let cap = data.context().precision() + data.denominator_exp();
    let p = data.context().p();
    Ok(net
        .residuals(data)?
        .iter()
        .map(|row| row.iter().map(|r| capped_valuation(p, r.numerator(), cap)).collect())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(l: usize, i: usize) -> IntPolynomial {
        IntPolynomial::var(l, i)
    }

    fn k(l: usize, c: i64) -> IntPolynomial {
        IntPolynomial::constant(l, c)
    }

    fn cfg() -> SolverConfig {
        SolverConfig::default()
    }

    #[test]
    fn ddp_examples() {
        let sq = &z(1, 0) * &z(1, 0);
        let r = ddp_max_exponent(&[&sq - &k(1, 2)], 3, 1, 5, &cfg()).unwrap();
        assert_eq!((r.e_star, r.hit_cap), (0, false));
        assert_eq!(r.zero_count_per_level, vec![1]);

        let r = ddp_max_exponent(&[&sq - &k(1, 3)], 3, 1, 5, &cfg()).unwrap();
        assert_eq!((r.e_star, r.hit_cap), (1, false));
        assert_eq!(r.witness, Some(vec![BigUint::zero()]));

        let r = ddp_max_exponent(&[&z(1, 0) - &k(1, 1)], 2, 1, 4, &cfg()).unwrap();
        assert_eq!((r.e_star, r.hit_cap), (4, true));
        assert_eq!(r.zero_count_per_level, vec![1; 5]);
        assert_eq!(r.witness, Some(vec![BigUint::from(1u32)]));
    }

    #[test]
    fn ddp_big_modulus_path() {
        // p^cap beyond 2^63 uses big-integer evaluation
        let f = &z(1, 0) - &k(1, 5);
        let r = ddp_max_exponent(&[f], 2, 1, 70, &cfg()).unwrap();
        assert!(r.hit_cap);
        assert_eq!(r.witness, Some(vec![BigUint::from(5u32)]));
    }

    #[test]
    fn ddp_overflow_is_an_error() {
        let l = 3;
        let f = k(l, 0);
        let tight = SolverConfig {
            frontier_budget: 10,
            ..cfg()
        };
        let err = ddp_max_exponent(&[f], 3, l, 4, &tight).unwrap_err();
        assert_eq!(
            err,
            Error::FrontierOverflow {
                level: 0,
                size: 27,
                budget: 10
            }
        );
    }

    #[test]
    fn linf_examples() {
        let sq = &z(1, 0) * &z(1, 0);
        let (loss, report) = linf_training_minimum(&[&sq - &k(1, 3)], 3, 1, 4, &cfg()).unwrap();
        assert_eq!(loss.value(), BigRational::new(1.into(), 3.into()));
        assert_eq!(report.witness, Some(vec![BigUint::zero()]));

        let (loss, report) = linf_training_minimum(&[&z(1, 0) - &k(1, 1)], 2, 1, 3, &cfg()).unwrap();
        assert!(loss.is_zero_within_precision());
        assert_eq!(report.witness, Some(vec![BigUint::from(1u32)]));

        let (loss, _) = linf_training_minimum(&[k(1, 1)], 5, 1, 3, &cfg()).unwrap();
        assert_eq!(
            loss,
            LossValue::Linf {
                p: 5,
                precision: 3,
                exponent: Some(0)
            }
        );
        assert_eq!(loss.value(), BigRational::from_integer(1.into()));
    }

    #[test]
    fn brute_force_examples() {
        let sq = &z(1, 0) * &z(1, 0);
        let res = brute_force_minimum(&[&sq - &k(1, 3)], 3, 1, 4, NormKind::Linf, &cfg()).unwrap();
        assert_eq!(
            res.loss,
            LossValue::Linf {
                p: 3,
                precision: 4,
                exponent: Some(1)
            }
        );
        assert_eq!(res.minimizers.first(), Some(&vec![BigUint::zero()]));

        // contradictory pair z = 1, z = 0 over F2
        let sys = [&z(1, 0) - &k(1, 1), z(1, 0)];
        let res = brute_force_minimum(&sys, 2, 1, 1, NormKind::L1, &cfg()).unwrap();
        assert_eq!(
            res.loss,
            LossValue::L1 {
                p: 2,
                precision: 1,
                valuations: vec![0]
            }
        );
        assert_eq!(res.minimizers.len(), 2);

        let res = brute_force_minimum(&[k(1, 0)], 3, 1, 2, NormKind::Linf, &cfg()).unwrap();
        assert!(res.loss.is_zero_within_precision());
        assert_eq!(res.minimizers.len(), 9);

        let err = brute_force_minimum(
            &[k(3, 0)],
            3,
            3,
            6,
            NormKind::Linf,
            &SolverConfig {
                enumeration_budget: 1000,
                ..cfg()
            },
        );
        assert!(matches!(err, Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn worker_count_does_not_change_the_report() {
        let l = 2;
        let f = &(&(&z(l, 0) * &z(l, 0)) + &(&z(l, 1) * &z(l, 1))) - &k(l, 2);
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| ddp_max_exponent(std::slice::from_ref(&f), 3, l, 4, &cfg()).unwrap())
        };
        assert_eq!(run(1), run(4));
    }

    #[test]
    fn loss_display_and_file() {
        let loss = LossValue::Linf {
            p: 3,
            precision: 4,
            exponent: Some(2),
        };
        assert_eq!(loss.to_string(), "3^-2");
        assert_eq!(loss.to_file().value, "1/9");
        let zero = LossValue::Linf {
            p: 3,
            precision: 4,
            exponent: None,
        };
        assert_eq!(zero.to_string(), "0 (mod p^4)");
        let l1 = LossValue::L1 {
            p: 2,
            precision: 3,
            valuations: vec![0, 1],
        };
        assert_eq!(l1.value(), BigRational::new(3.into(), 2.into()));
    }
}
