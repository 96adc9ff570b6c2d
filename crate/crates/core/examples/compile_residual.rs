//! Turning the training residual into polynomials in the entries of
//! A, b and p^F C.

use num_bigint::BigUint;
use padic_charnet::network::Sample;
use padic_charnet::polysys::{compile_residual, VariableLayout};
use padic_charnet::{Character, Dataset, PadicContext, ScaledPadic};

fn main() -> padic_charnet::Result<()> {
    let ctx = PadicContext::new(3, 2)?;
    let chi = Character::new(&ctx, 4u32)?;
    let samples = [(0u32, 1u32), (1, 4), (2, 7)]
        .into_iter()
        .map(|(x, y)| Sample {
            x: vec![BigUint::from(x)],
            y: vec![ScaledPadic::new(&ctx, 0, y)],
        })
        .collect();
    let data = Dataset::new(&ctx, 0, 1, 1, samples)?;

    let layout = VariableLayout::new(1, 1, 1);
    let system = compile_residual(layout, &chi, &data)?;
    println!("{} variables:", system.num_vars());
    for k in 0..system.num_vars() {
        println!("  z{k} = {}", layout.param(k));
    }
    println!("series terms: {}", system.series_degree);
    for (i, f) in system.polynomials.iter().enumerate() {
        println!("f{i} = {f}");
    }

    println!(
        "{}",
        serde_json::to_string_pretty(&system.to_file()).expect("serializable")
    );
    Ok(())
}
