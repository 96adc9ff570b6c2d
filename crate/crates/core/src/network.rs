//! The single-hidden-layer network `x -> C chi(Ax + b)` and the
//! combinators that build sums, products and stacked outputs of networks.
//!
//! `A` and `b` live in `N_{<p^(E+F-1)}`, `C` in `p^(-F) N_{<p^(E+F)}` and
//! inputs are read mod `p^(E+F-1)`. The character is evaluated mod
//! `p^(E+F)`, which is enough to know every output mod `p^E`.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::characters::{Character, CharacterSpec, EvalMethod};
use crate::error::{Error, Result};
use crate::padic::{parse_uint, ContextSpec, PadicContext, ScaledPadic, ScaledRepr, Valuation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterNetwork {
    ctx: PadicContext,
    denominator_exp: u32,
    chi: Character,
    chi_eval: Character,
    inputs: usize,
    hidden: usize,
    outputs: usize,
    a: Vec<Vec<BigUint>>,
    b: Vec<BigUint>,
    c: Vec<Vec<BigUint>>,
}

impl CharacterNetwork {
    /// Builds a network from `A` (D x N), `b` (D) and the numerators of
    /// `p^F C` (M x D). Entries are reduced to their canonical ranges.
    pub fn new(
        ctx: &PadicContext,
        denominator_exp: u32,
        chi: &Character,
        inputs: usize,
        a: Vec<Vec<BigUint>>,
        b: Vec<BigUint>,
        c: Vec<Vec<BigUint>>,
    ) -> Result<Self> {
        let hidden = a.len();
        if hidden == 0 {
            return Err(Error::ShapeMismatch("hidden dimension D must be at least 1".into()));
        }
        if a.iter().any(|row| row.len() != inputs) {
            return Err(Error::ShapeMismatch(format!("A must be {hidden} x {inputs}")));
        }
        if b.len() != hidden {
            return Err(Error::ShapeMismatch(format!(
                "b has length {}, expected {hidden}",
                b.len()
            )));
        }
        if c.iter().any(|row| row.len() != hidden) {
            return Err(Error::ShapeMismatch(format!("C rows must have length {hidden}")));
        }
        if chi.context().p() != ctx.p() {
            return Err(Error::CharacterMismatch);
        }
        let eval_precision = ctx.precision() + denominator_exp;
        let chi_eval = chi.at_precision(eval_precision)?;
        let affine_mod = ctx.pow(eval_precision - 1);
        let coef_mod = ctx.pow(eval_precision);
        let reduce = |rows: Vec<Vec<BigUint>>, m: &BigUint| -> Vec<Vec<BigUint>> {
            rows.into_iter()
                .map(|row| row.into_iter().map(|x| x % m).collect())
                .collect()
        };
        Ok(Self {
            ctx: ctx.clone(),
            denominator_exp,
            chi: chi.clone(),
            chi_eval,
            inputs,
            hidden,
            outputs: c.len(),
            a: reduce(a, &affine_mod),
            b: b.into_iter().map(|x| x % &affine_mod).collect(),
            c: reduce(c, &coef_mod),
        })
    }

    /// `D = 1`, `A = 0`, `b = 0`, `C = 1`: the constant function 1.
    pub fn constant_one(ctx: &PadicContext, denominator_exp: u32, chi: &Character, inputs: usize) -> Result<Self> {
        Self::new(
            ctx,
            denominator_exp,
            chi,
            inputs,
            vec![vec![BigUint::zero(); inputs]],
            vec![BigUint::zero()],
            vec![vec![ctx.pow(denominator_exp)]],
        )
    }

    /// A network with `C = 0`, the additive identity.
    pub fn zero(
        ctx: &PadicContext,
        denominator_exp: u32,
        chi: &Character,
        inputs: usize,
        outputs: usize,
    ) -> Result<Self> {
        Self::new(
            ctx,
            denominator_exp,
            chi,
            inputs,
            vec![vec![BigUint::zero(); inputs]],
            vec![BigUint::zero()],
            vec![vec![BigUint::zero()]; outputs],
        )
    }

    pub fn context(&self) -> &PadicContext {
        &self.ctx
    }

    pub fn denominator_exp(&self) -> u32 {
        self.denominator_exp
    }

    pub fn character(&self) -> &Character {
        &self.chi
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn hidden(&self) -> usize {
        self.hidden
    }

    pub fn outputs(&self) -> usize {
        self.outputs
    }

    pub fn weights(&self) -> &[Vec<BigUint>] {
        &self.a
    }

    pub fn bias(&self) -> &[BigUint] {
        &self.b
    }

    /// Numerators of `p^F C`.
    pub fn coefficients(&self) -> &[Vec<BigUint>] {
        &self.c
    }

    /// `p^(E+F-1)`, the modulus of `A`, `b` and inputs.
    pub fn affine_modulus(&self) -> BigUint {
        self.ctx.pow(self.ctx.precision() + self.denominator_exp - 1)
    }

    /// `p^(E+F)`, the modulus of the numerators of `C` and of outputs.
    pub fn coefficient_modulus(&self) -> BigUint {
        self.ctx.pow(self.ctx.precision() + self.denominator_exp)
    }

    /// The hidden pre-activations `Ax + b mod p^(E+F-1)`.
    pub fn affine(&self, x: &[BigUint]) -> Result<Vec<BigUint>> {
        if x.len() != self.inputs {
            return Err(Error::ShapeMismatch(format!(
                "input has length {}, expected {}",
                x.len(),
                self.inputs
            )));
        }
        let m = self.affine_modulus();
        Ok(self
            .a
            .iter()
            .zip(&self.b)
            .map(|(row, bias)| row.iter().zip(x).fold(bias.clone(), |acc, (w, xi)| acc + w * xi) % &m)
            .collect())
    }

    pub fn forward(&self, x: &[BigUint]) -> Result<Vec<ScaledPadic>> {
        self.forward_with(x, EvalMethod::Binary)
    }

    pub fn forward_with(&self, x: &[BigUint], method: EvalMethod) -> Result<Vec<ScaledPadic>> {
        let hidden: Vec<BigUint> = self
            .affine(x)?
            .iter()
            .map(|w| self.chi_eval.eval(w, method).into_value())
            .collect();
        let m = self.coefficient_modulus();
        Ok(self
            .c
            .iter()
            .map(|row| {
                let num = row.iter().zip(&hidden).fold(BigUint::zero(), |acc, (c, h)| acc + c * h) % &m;
                ScaledPadic::new(&self.ctx, self.denominator_exp, num)
            })
            .collect())
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.chi != other.chi {
            return Err(Error::CharacterMismatch);
        }
        if self.ctx != other.ctx || self.denominator_exp != other.denominator_exp {
            return Err(Error::ShapeMismatch("networks use different (p, E, F)".into()));
        }
        if self.inputs != other.inputs {
            return Err(Error::ShapeMismatch(format!(
                "input dimensions {} and {} differ",
                self.inputs, other.inputs
            )));
        }
        Ok(())
    }

    /// Pointwise sum: stacked `A` and `b`, side-by-side `C`.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        if self.outputs != other.outputs {
            return Err(Error::ShapeMismatch(format!(
                "output dimensions {} and {} differ",
                self.outputs, other.outputs
            )));
        }
        let a = self.a.iter().chain(&other.a).cloned().collect();
        let b = self.b.iter().chain(&other.b).cloned().collect();
        let c = self
            .c
            .iter()
            .zip(&other.c)
            .map(|(r0, r1)| r0.iter().chain(r1).cloned().collect())
            .collect();
        Self::new(&self.ctx, self.denominator_exp, &self.chi, self.inputs, a, b, c)
    }

    /// Pointwise product of two scalar networks. Hidden unit `j` pairs
    /// unit `j mod D0` of `self` with unit `j / D0` of `other`; the
    /// denominator exponent doubles.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        if self.outputs != 1 || other.outputs != 1 {
            return Err(Error::ShapeMismatch("products need scalar networks (M = 1)".into()));
        }
        let (d0, d1) = (self.hidden, other.hidden);
        let mut a = Vec::with_capacity(d0 * d1);
        let mut b = Vec::with_capacity(d0 * d1);
        let mut c = Vec::with_capacity(d0 * d1);
        for j in 0..d0 * d1 {
            let (j0, j1) = (j % d0, j / d0);
            a.push(self.a[j0].iter().zip(&other.a[j1]).map(|(x, y)| x + y).collect());
            b.push(&self.b[j0] + &other.b[j1]);
            c.push(&self.c[0][j0] * &other.c[0][j1]);
        }
        Self::new(
            &self.ctx,
            2 * self.denominator_exp,
            &self.chi,
            self.inputs,
            a,
            b,
            vec![c],
        )
    }

    /// Stacks scalar networks into one with `m` outputs and a
    /// block-diagonal `C`.
    pub fn stack(nets: &[Self]) -> Result<Self> {
        let first = nets
            .first()
            .ok_or_else(|| Error::ShapeMismatch("cannot stack zero networks".into()))?;
        let total: usize = nets.iter().map(|n| n.hidden).sum();
        let mut a = Vec::with_capacity(total);
        let mut b = Vec::with_capacity(total);
        let mut c = Vec::with_capacity(nets.len());
        let mut offset = 0;
        for net in nets {
            first.check_compatible(net)?;
            if net.outputs != 1 {
                return Err(Error::ShapeMismatch("stacking needs scalar networks (M = 1)".into()));
            }
            a.extend(net.a.iter().cloned());
            b.extend(net.b.iter().cloned());
            let mut row = vec![BigUint::zero(); total];
            row[offset..offset + net.hidden].clone_from_slice(&net.c[0]);
            c.push(row);
            offset += net.hidden;
        }
        Self::new(&first.ctx, first.denominator_exp, &first.chi, first.inputs, a, b, c)
    }

    /// The scalar network `x -> chi(x_i)`.
    pub fn coordinate_probe(
        ctx: &PadicContext,
        denominator_exp: u32,
        chi: &Character,
        inputs: usize,
        index: usize,
    ) -> Result<Self> {
        if index >= inputs {
            return Err(Error::InvalidInput(format!(
                "coordinate {index} out of range for {inputs} inputs"
            )));
        }
        let mut row = vec![BigUint::zero(); inputs];
        row[index] = BigUint::one();
        Self::new(
            ctx,
            denominator_exp,
            chi,
            inputs,
            vec![row],
            vec![BigUint::zero()],
            vec![vec![ctx.pow(denominator_exp)]],
        )
    }

    /// Scales the output by an integer through `C` alone.
    pub fn scale(&self, k: &BigUint) -> Self {
        let m = self.coefficient_modulus();
        Self {
            c: self
                .c
                .iter()
                .map(|row| row.iter().map(|x| x * k % &m).collect())
                .collect(),
            ..self.clone()
        }
    }

    /// `y - forward(x)` for every sample, as scaled values.
    pub fn residuals(&self, data: &Dataset) -> Result<Vec<Vec<ScaledPadic>>> {
        data.check_network(self)?;
        data.samples
            .iter()
            .map(|s| {
                let out = self.forward(&s.x)?;
                s.y.iter().zip(&out).map(|(y, o)| y.sub(o)).collect()
            })
            .collect()
    }

    /// Valuation of each residual entry, capped at `E`.
    pub fn residual_valuations(&self, data: &Dataset) -> Result<Vec<Vec<Valuation>>> {
        Ok(self
            .residuals(data)?
            .iter()
            .map(|row| row.iter().map(|r| r.valuation()).collect())
            .collect())
    }

    pub fn to_file(&self) -> NetworkFile {
        let strings = |rows: &[Vec<BigUint>]| -> Vec<Vec<String>> {
            rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
        };
        NetworkFile {
            p: self.ctx.p(),
            precision: self.ctx.precision(),
            denominator_exp: self.denominator_exp,
            inputs: self.inputs,
            hidden: self.hidden,
            outputs: self.outputs,
            chi: self.chi.spec(),
            a: strings(&self.a),
            b: self.b.iter().map(|x| x.to_string()).collect(),
            c: self
                .c
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|x| ScaledRepr {
                            num: x.to_string(),
                            f: self.denominator_exp,
                        })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn from_file(file: &NetworkFile) -> Result<Self> {
        let ctx = ContextSpec {
            p: file.p,
            precision: file.precision,
        }
        .build()?;
        let chi = file.chi.build()?;
        let parse_rows = |rows: &[Vec<String>]| -> Result<Vec<Vec<BigUint>>> {
            rows.iter().map(|r| r.iter().map(|s| parse_uint(s)).collect()).collect()
        };
        let a = parse_rows(&file.a)?;
        let b = file.b.iter().map(|s| parse_uint(s)).collect::<Result<Vec<_>>>()?;
        let mut c = Vec::with_capacity(file.c.len());
        for row in &file.c {
            let mut parsed = Vec::with_capacity(row.len());
            for entry in row {
                if entry.f != file.denominator_exp {
                    return Err(Error::InvalidInput(format!(
                        "coefficient has F = {}, network has F = {}",
                        entry.f, file.denominator_exp
                    )));
                }
                parsed.push(ScaledPadic::from_repr(&ctx, entry)?.numerator().clone());
            }
            c.push(parsed);
        }
        let net = Self::new(&ctx, file.denominator_exp, &chi, file.inputs, a, b, c)?;
        if net.hidden != file.hidden || net.outputs != file.outputs {
            return Err(Error::ShapeMismatch(format!(
                "declared D={}, M={} but matrices give D={}, M={}",
                file.hidden, file.outputs, net.hidden, net.outputs
            )));
        }
        Ok(net)
    }
}

/// JSON form of a network.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetworkFile {
    pub p: u64,
    #[serde(rename = "E")]
    pub precision: u32,
    #[serde(rename = "F")]
    pub denominator_exp: u32,
    #[serde(rename = "N")]
    pub inputs: usize,
    #[serde(rename = "D")]
    pub hidden: usize,
    #[serde(rename = "M")]
    pub outputs: usize,
    pub chi: CharacterSpec,
    #[serde(rename = "A")]
    pub a: Vec<Vec<String>>,
    pub b: Vec<String>,
    #[serde(rename = "C")]
    pub c: Vec<Vec<ScaledRepr>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sample {
    /// Inputs mod `p^(E+F-1)`.
    pub x: Vec<BigUint>,
    /// Observations in `p^(-F) Zp`, known mod `p^E`.
    pub y: Vec<ScaledPadic>,
}

/// Samples `(x_i, y_i)` observed at precision `(E, F)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dataset {
    ctx: PadicContext,
    denominator_exp: u32,
    inputs: usize,
    outputs: usize,
    samples: Vec<Sample>,
}

impl Dataset {
    pub fn new(
        ctx: &PadicContext,
        denominator_exp: u32,
        inputs: usize,
        outputs: usize,
        samples: Vec<Sample>,
    ) -> Result<Self> {
        let x_mod = ctx.pow(ctx.precision() + denominator_exp - 1);
        let mut normalized = Vec::with_capacity(samples.len());
        for (i, s) in samples.into_iter().enumerate() {
            if s.x.len() != inputs || s.y.len() != outputs {
                return Err(Error::ShapeMismatch(format!(
                    "sample {i} has shape ({}, {}), expected ({inputs}, {outputs})",
                    s.x.len(),
                    s.y.len()
                )));
            }
            if s.y
                .iter()
                .any(|y| y.context() != ctx || y.denominator_exp() != denominator_exp)
            {
                return Err(Error::ShapeMismatch(format!(
                    "sample {i} has observations at the wrong (E, F)"
                )));
            }
            normalized.push(Sample {
                x: s.x.into_iter().map(|x| x % &x_mod).collect(),
                y: s.y,
            });
        }
        Ok(Self {
            ctx: ctx.clone(),
            denominator_exp,
            inputs,
            outputs,
            samples: normalized,
        })
    }

    /// Labels each input with the output of `net`.
    pub fn from_network(net: &CharacterNetwork, xs: Vec<Vec<BigUint>>) -> Result<Self> {
        let samples = xs
            .into_iter()
            .map(|x| {
                let y = net.forward(&x)?;
                Ok(Sample { x, y })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(
            net.context(),
            net.denominator_exp(),
            net.inputs(),
            net.outputs(),
            samples,
        )
    }

    pub fn context(&self) -> &PadicContext {
        &self.ctx
    }

    pub fn denominator_exp(&self) -> u32 {
        self.denominator_exp
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn outputs(&self) -> usize {
        self.outputs
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub(crate) fn check_network(&self, net: &CharacterNetwork) -> Result<()> {
        if net.context() != &self.ctx || net.denominator_exp() != self.denominator_exp {
            return Err(Error::ShapeMismatch(
                "network and dataset use different (p, E, F)".into(),
            ));
        }
        if net.inputs() != self.inputs || net.outputs() != self.outputs {
            return Err(Error::ShapeMismatch(format!(
                "network maps {} -> {}, dataset has {} -> {}",
                net.inputs(),
                net.outputs(),
                self.inputs,
                self.outputs
            )));
        }
        Ok(())
    }

    pub fn to_file(&self) -> DatasetFile {
        DatasetFile {
            p: self.ctx.p(),
            precision: self.ctx.precision(),
            denominator_exp: self.denominator_exp,
            inputs: self.inputs,
            outputs: self.outputs,
            samples: self
                .samples
                .iter()
                .map(|s| SampleFile {
                    x: s.x.iter().map(|x| x.to_string()).collect(),
                    y: s.y.iter().map(|y| y.repr()).collect(),
                })
                .collect(),
        }
    }

    pub fn from_file(file: &DatasetFile) -> Result<Self> {
        let ctx = PadicContext::new(file.p, file.precision)?;
        let samples = file
            .samples
            .iter()
            .map(|s| {
                let x = s.x.iter().map(|v| parse_uint(v)).collect::<Result<Vec<_>>>()?;
                let y =
                    s.y.iter()
                        .map(|r| {
                            if r.f != file.denominator_exp {
                                return Err(Error::InvalidInput(format!(
                                    "observation has F = {}, dataset has F = {}",
                                    r.f, file.denominator_exp
                                )));
                            }
                            ScaledPadic::from_repr(&ctx, r)
                        })
                        .collect::<Result<Vec<_>>>()?;
                Ok(Sample { x, y })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(&ctx, file.denominator_exp, file.inputs, file.outputs, samples)
    }
}

/// `{"p","E","F","N","M","samples":[{"x":[...],"y":[{"num","F"}...]}]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetFile {
    pub p: u64,
    #[serde(rename = "E")]
    pub precision: u32,
    #[serde(rename = "F")]
    pub denominator_exp: u32,
    #[serde(rename = "N")]
    pub inputs: usize,
    #[serde(rename = "M")]
    pub outputs: usize,
    pub samples: Vec<SampleFile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleFile {
    pub x: Vec<String>,
    pub y: Vec<ScaledRepr>,
}

/// Every vector in `N_{<modulus}^len`, in lexicographic order (last
/// coordinate fastest).
pub fn all_vectors(modulus: u64, len: usize) -> impl Iterator<Item = Vec<BigUint>> {
    let total = modulus.checked_pow(len as u32).expect("enumeration too large");
    (0..total).map(move |mut idx| {
        let mut v = vec![BigUint::zero(); len];
        for slot in v.iter_mut().rev() {
            *slot = BigUint::from(idx % modulus);
            idx /= modulus;
        }
        v
    })
}
