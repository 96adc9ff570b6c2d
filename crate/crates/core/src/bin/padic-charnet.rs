fn main() {
    std::process::exit(padic_charnet::cli::run(std::env::args_os()));
}
