fn main() {
    std::process::exit(pforge::cli::run());
}
