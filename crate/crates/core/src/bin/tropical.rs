fn main() {
    std::process::exit(tropical_core::cli::main_with(std::env::args()));
}
