//! Building networks from sums, products and stacks, and checking them
//! pointwise on every input.

use num_bigint::BigUint;
use padic_charnet::network::all_vectors;
use padic_charnet::{Character, CharacterNetwork, PadicContext};

fn main() -> padic_charnet::Result<()> {
    let (p, e) = (3u64, 3u32);
    let ctx = PadicContext::new(p, e)?;
    let chi = Character::new(&ctx, 4u32)?;

    // chi(x0), chi(x1) and the constant 1
    let x0 = CharacterNetwork::coordinate_probe(&ctx, 0, &chi, 2, 0)?;
    let x1 = CharacterNetwork::coordinate_probe(&ctx, 0, &chi, 2, 1)?;
    let one = CharacterNetwork::constant_one(&ctx, 0, &chi, 2)?;

    // 2 chi(x0) chi(x1) + 5
    let f = x0
        .multiply(&x1)?
        .scale(&BigUint::from(2u32))
        .add(&one.scale(&BigUint::from(5u32)))?;
    let g = CharacterNetwork::stack(&[f.clone(), x0.clone()])?;
    println!("f has D = {}, g maps {} -> {}", f.hidden(), g.inputs(), g.outputs());

    let m = ctx.modulus();
    let mut checked = 0;
    for x in all_vectors(p.pow(e - 1), 2) {
        let (a, b) = (chi.eval_binary(&x[0]).into_value(), chi.eval_binary(&x[1]).into_value());
        let want = (BigUint::from(2u32) * &a * &b + 5u32) % m;
        let got = g.forward(&x)?;
        assert_eq!(*got[0].numerator(), want);
        assert_eq!(*got[1].numerator(), a);
        checked += 1;
    }
    println!("agrees on all {checked} inputs mod {p}^{}", e - 1);
    Ok(())
}
