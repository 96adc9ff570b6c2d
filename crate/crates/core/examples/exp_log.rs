//! The exponential exp_p(q x), the Iwasawa logarithm, and how many
//! series terms each precision needs.

use num_bigint::BigUint;
use padic_charnet::characters::{eval_taylor_exp, iwasawa_log, ExpConstants};
use padic_charnet::PadicContext;

fn main() -> padic_charnet::Result<()> {
    println!("p    E    m  terms");
    for p in [2u64, 3, 5, 7] {
        for e in [4u32, 8, 16] {
            let c = ExpConstants::new(p, e);
            println!("{p:<4} {e:<4} {}  {}", c.m, c.truncation);
        }
    }

    let ctx = PadicContext::new(5, 10)?;
    let x = BigUint::from(12345u32);
    let y = eval_taylor_exp(&ctx, &x);
    let l = iwasawa_log(&ctx, y.value())?;
    println!("exp_5(5 * {x}) = {y} mod 5^10");
    println!(
        "log of that    = {l} = 5 * {x} mod 5^10: {}",
        *l.value() == BigUint::from(5u32) * &x % ctx.modulus()
    );
    Ok(())
}
