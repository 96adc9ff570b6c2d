//! Exact training: recover a network from its own outputs, then fit
//! data that no network of the given width explains.

use num_bigint::BigUint;
use padic_charnet::network::Sample;
use padic_charnet::polysys::VariableLayout;
use padic_charnet::solver::{scaled_residual_valuations, train, NormKind, SolverConfig};
use padic_charnet::{Character, CharacterNetwork, Dataset, PadicContext, ScaledPadic};

fn big(x: u32) -> BigUint {
    BigUint::from(x)
}

fn main() -> padic_charnet::Result<()> {
    let (e, f) = (2u32, 1u32);
    let ctx = PadicContext::new(3, e)?;
    let chi = Character::exponential(&ctx.with_precision(e + f)?);
    let config = SolverConfig::default();

    let hidden = CharacterNetwork::new(
        &ctx,
        f,
        &chi,
        1,
        vec![vec![big(2)], vec![big(7)]],
        vec![big(1), big(4)],
        vec![vec![big(5), big(13)]],
    )?;
    let xs = [0u32, 1, 2, 5].map(|x| vec![big(x)]).to_vec();
    let data = Dataset::from_network(&hidden, xs)?;

    let fit = train(VariableLayout::new(1, 2, 1), &chi, &data, NormKind::Linf, &config)?;
    println!("consistent data: loss {}", fit.loss);
    println!(
        "  A = {:?}, b = {:?}, p^F C = {:?}",
        fit.network.weights(),
        fit.network.bias(),
        fit.network.coefficients()
    );
    for s in data.samples() {
        println!(
            "  x = {}: y = {:?}, fitted {:?}",
            s.x[0],
            s.y[0],
            fit.network.forward(&s.x)?[0]
        );
    }

    // one input, two observations that differ in the second digit
    let samples = vec![
        Sample {
            x: vec![big(1)],
            y: vec![ScaledPadic::new(&ctx, f, 4u32)],
        },
        Sample {
            x: vec![big(1)],
            y: vec![ScaledPadic::new(&ctx, f, 13u32)],
        },
    ];
    let data = Dataset::new(&ctx, f, 1, 1, samples)?;
    let fit = train(VariableLayout::new(1, 1, 1), &chi, &data, NormKind::Linf, &config)?;
    let report = fit.report.expect("l-infinity training reports");
    println!("inconsistent data: loss {} (e* = {})", fit.loss, report.e_star);
    println!(
        "  residual valuations {:?}",
        scaled_residual_valuations(&fit.network, &data)?
    );
    Ok(())
}
