//! Residues mod p^E, valuations, inverses and scaled values p^-F u.

use num_bigint::BigUint;
use padic_charnet::padic::{valuative_decomposition, InverseMethod};
use padic_charnet::{PadicContext, ScaledPadic};

fn main() -> padic_charnet::Result<()> {
    let ctx = PadicContext::new(5, 3)?;

    let x = ctx.residue(7u32);
    let y = ctx.residue(118u32);
    println!("7 + 118 = {} mod 125", &x + &y);
    println!("7 * 118 = {} mod 125", &x * &y);

    for method in [InverseMethod::Euclid, InverseMethod::Euler, InverseMethod::Taylor] {
        let inv = ctx.mod_inverse_with(&BigUint::from(7u32), 3, method)?;
        println!("7^-1 mod 125 via {method:?}: {inv}");
    }

    let d = valuative_decomposition(5, &BigUint::from(1250u32))?;
    println!("1250 = 5^{} * {}", d.valuation, d.unit);

    // 10 / 25 = 2/5, stored as p^-2 * 10
    let s = ScaledPadic::new(&ctx, 2, 10u32);
    println!("{s:?}: valuation {}, norm {}", s.valuation(), s.norm().norm);
    let z = ScaledPadic::new(&ctx, 2, 0u32);
    println!("zero to precision: valuation {}", z.valuation());
    Ok(())
}
