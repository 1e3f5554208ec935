fn main() {
    std::process::exit(posslog::cli::run());
}
