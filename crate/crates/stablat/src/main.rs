fn main() {
    std::process::exit(stablat::cli::main());
}
