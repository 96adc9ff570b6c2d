//! Lifting common zeros digit by digit, checked against enumeration.

use padic_charnet::polysys::IntPolynomial;
use padic_charnet::solver::{brute_force_minimum, ddp_max_exponent, linf_training_minimum, NormKind, SolverConfig};

fn main() -> padic_charnet::Result<()> {
    let config = SolverConfig::default();
    let z = IntPolynomial::var(1, 0);
    let k = |c: i64| IntPolynomial::constant(1, c);

    for (name, f, p) in [
        ("z^2 - 2", &(&z * &z) - &k(2), 3u64),
        ("z^2 - 3", &(&z * &z) - &k(3), 3),
        ("z^2 - 7", &(&z * &z) - &k(7), 3),
        ("z - 1", &z - &k(1), 2),
    ] {
        let r = ddp_max_exponent(std::slice::from_ref(&f), p, 1, 6, &config)?;
        println!(
            "{name:<8} p={p}: e* = {}, hit cap: {}, zeros per level {:?}",
            r.e_star, r.hit_cap, r.zero_count_per_level
        );
    }

    // two variables: x^2 + y^2 = 2 over Z/3^e
    let (x, y) = (IntPolynomial::var(2, 0), IntPolynomial::var(2, 1));
    let f = &(&(&x * &x) + &(&y * &y)) - &IntPolynomial::constant(2, 2);
    let (loss, report) = linf_training_minimum(std::slice::from_ref(&f), 3, 2, 4, &config)?;
    let brute = brute_force_minimum(&[f], 3, 2, 4, NormKind::Linf, &config)?;
    println!(
        "x^2 + y^2 - 2: loss {loss}, witness {:?}, {} minimizers by enumeration",
        report.witness.unwrap_or_default(),
        brute.minimizers.len()
    );
    assert_eq!(loss, brute.loss);
    Ok(())
}
