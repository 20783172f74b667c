fn main() {
    let code = limvar::cli::run(std::env::args_os());
    std::process::exit(code);
}
