#![allow(dead_code)]

use num_bigint::{BigInt, BigUint};
use padic_charnet::network::{Sample, SampleFile};
use padic_charnet::polysys::{IntPolynomial, Monomial};
use padic_charnet::{Character, CharacterNetwork, Dataset, PadicContext, ScaledPadic};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

pub fn pow(p: u64, e: u32) -> BigUint {
    num_traits::pow(BigUint::from(p), e as usize)
}

/// Uniform in `[0, m)` for `m` below 2^128.
pub fn below(rng: &mut ChaCha8Rng, m: &BigUint) -> BigUint {
    BigUint::from(rng.gen::<u128>()) % m
}

/// A random base `a = 1 mod p` (`1 mod 4` when `p = 2`, so compilation
/// applies), or the exponential character.
pub fn random_character(rng: &mut ChaCha8Rng, p: u64, precision: u32) -> Character {
    let ctx = PadicContext::new(p, precision).unwrap();
    if rng.gen_bool(0.25) {
        return Character::exponential(&ctx);
    }
    let step = if p == 2 { 4 } else { p };
    let a = BigUint::from(1u32) + below(rng, ctx.modulus()) * step;
    Character::new(&ctx, a % ctx.modulus()).unwrap()
}

pub fn random_network(
    rng: &mut ChaCha8Rng,
    ctx: &PadicContext,
    f: u32,
    chi: &Character,
    n: usize,
    d: usize,
    m: usize,
) -> CharacterNetwork {
    let affine = pow(ctx.p(), ctx.precision() + f - 1);
    let coef = pow(ctx.p(), ctx.precision() + f);
    let a = (0..d).map(|_| (0..n).map(|_| below(rng, &affine)).collect()).collect();
    let b = (0..d).map(|_| below(rng, &affine)).collect();
    let c = (0..m).map(|_| (0..d).map(|_| below(rng, &coef)).collect()).collect();
    CharacterNetwork::new(ctx, f, chi, n, a, b, c).unwrap()
}

pub fn random_inputs(rng: &mut ChaCha8Rng, ctx: &PadicContext, f: u32, n: usize, count: usize) -> Vec<Vec<BigUint>> {
    let m = pow(ctx.p(), ctx.precision() + f - 1);
    (0..count).map(|_| (0..n).map(|_| below(rng, &m)).collect()).collect()
}

/// Samples with arbitrary observations.
pub fn random_dataset(rng: &mut ChaCha8Rng, ctx: &PadicContext, f: u32, n: usize, m: usize, count: usize) -> Dataset {
    let ym = pow(ctx.p(), ctx.precision() + f);
    let samples = random_inputs(rng, ctx, f, n, count)
        .into_iter()
        .map(|x| Sample {
            x,
            y: (0..m).map(|_| ScaledPadic::new(ctx, f, below(rng, &ym))).collect(),
        })
        .collect();
    Dataset::new(ctx, f, n, m, samples).unwrap()
}

/// A sparse polynomial with small signed coefficients.
pub fn random_polynomial(
    rng: &mut ChaCha8Rng,
    l: usize,
    max_terms: usize,
    max_degree: u32,
    coef: i64,
) -> IntPolynomial {
    let terms = (0..rng.gen_range(1..=max_terms)).map(|_| {
        let mono = Monomial::from_pairs((0..l).map(|v| (v, rng.gen_range(0..=max_degree))));
        (mono, BigInt::from(rng.gen_range(-coef..=coef)))
    });
    IntPolynomial::from_terms(l, terms.collect::<Vec<_>>()).unwrap()
}

/// Shifts the constant term so that `f(z) = 0 mod p^k`.
pub fn plant_root(f: &IntPolynomial, z: &[BigUint], p: u64, k: u32) -> IntPolynomial {
    let m = pow(p, k);
    let v = f.eval_mod(z, &m).unwrap();
    f - &IntPolynomial::constant(f.num_vars(), BigInt::from(v))
}

pub fn sample_file(x: &[u64], y: &[u64], f: u32) -> SampleFile {
    SampleFile {
        x: x.iter().map(|v| v.to_string()).collect(),
        y: y.iter()
            .map(|v| padic_charnet::padic::ScaledRepr { num: v.to_string(), f })
            .collect(),
    }
}
