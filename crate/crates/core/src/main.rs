fn main() {
    std::process::exit(halfhex::cli::run(std::env::args_os()));
}
