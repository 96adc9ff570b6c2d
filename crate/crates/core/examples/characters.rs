//! The character x -> a^x evaluated three ways, and inverted.

use num_bigint::BigUint;
use padic_charnet::{Character, EvalMethod, PadicContext};

fn main() -> padic_charnet::Result<()> {
    let ctx = PadicContext::new(3, 6)?;
    let chi = Character::new(&ctx, 4u32)?;

    println!("x    mahler  taylor  binary");
    for x in [0u64, 1, 5, 17, 100, 242] {
        let x = BigUint::from(x);
        let v: Vec<_> = [EvalMethod::Mahler, EvalMethod::Taylor, EvalMethod::Binary]
            .into_iter()
            .map(|m| chi.eval(&x, m).into_value())
            .collect();
        println!("{x:<4} {:<7} {:<7} {}", v[0], v[1], v[2]);
    }

    // a^x is a homomorphism Zp -> 1 + pZp
    let (x, y) = (BigUint::from(40u32), BigUint::from(77u32));
    assert_eq!(chi.eval_binary(&(&x + &y)), &chi.eval_binary(&x) * &chi.eval_binary(&y));

    let y = chi.eval_binary(&BigUint::from(200u32));
    let inv = chi.invert(y.value())?;
    println!("4^x = {} gives x = {} mod 3^{}", y, inv.value, inv.certified_exponent);

    // p = 2 and a = 3 mod 4: a^x = (-1)^x (-a)^x
    let ctx2 = PadicContext::new(2, 8)?;
    let odd = Character::new(&ctx2, 7u32)?;
    let y = odd.eval_binary(&BigUint::from(13u32));
    let inv = odd.invert(y.value())?;
    println!(
        "7^13 = {} mod 256, recovered x = {} mod 2^{}",
        y, inv.value, inv.certified_exponent
    );
    Ok(())
}
