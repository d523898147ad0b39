fn main() {
    std::process::exit(bic_regions::cli::run());
}
