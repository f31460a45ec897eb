fn main() {
    std::process::exit(sifperm::cli::run());
}
