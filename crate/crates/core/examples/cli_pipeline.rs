//! Driving the command-line front end in-process: write a dataset,
//! compile it, solve it.

use num_bigint::BigUint;
use padic_charnet::{cli, Character, CharacterNetwork, Dataset, PadicContext};

fn main() -> std::io::Result<()> {
    let dir = std::env::temp_dir().join("padic-charnet-example");
    std::fs::create_dir_all(&dir)?;

    let ctx = PadicContext::new(3, 2).expect("3 is prime");
    let chi = Character::new(&ctx, 4u32).expect("4 = 1 mod 3");
    let net = CharacterNetwork::new(
        &ctx,
        0,
        &chi,
        1,
        vec![vec![BigUint::from(2u32)]],
        vec![BigUint::from(1u32)],
        vec![vec![BigUint::from(5u32)]],
    )
    .expect("valid shapes");
    let data = Dataset::from_network(&net, vec![vec![BigUint::from(0u32)], vec![BigUint::from(2u32)]])
        .expect("matching shapes");
    let data_path = dir.join("data.json");
    std::fs::write(&data_path, serde_json::to_string_pretty(&data.to_file())?)?;
    let sys_path = dir.join("system.json");

    let data_arg = data_path.to_str().unwrap();
    let sys_arg = sys_path.to_str().unwrap();
    let code = cli::run([
        "padic-charnet",
        "compile",
        "--data",
        data_arg,
        "--shape",
        "1,1,1",
        "--a",
        "4",
        "--out",
        sys_arg,
    ]);
    println!("compile exited {code}");
    let code = cli::run(["padic-charnet", "ddp", "--system", sys_arg]);
    println!("ddp exited {code}");
    let code = cli::run([
        "padic-charnet",
        "fit",
        "--data",
        data_arg,
        "--shape",
        "1,1,1",
        "--a",
        "4",
    ]);
    println!("fit exited {code}");
    Ok(())
}
