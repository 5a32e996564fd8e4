fn main() {
    std::process::exit(netocc::cli::run(std::env::args_os()));
}
