fn main() {
    std::process::exit(erasure_exponents::cli::run(std::env::args_os()));
}
