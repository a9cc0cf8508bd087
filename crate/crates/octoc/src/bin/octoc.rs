fn main() {
    std::process::exit(octoc::cli::run(std::env::args().collect()));
}
