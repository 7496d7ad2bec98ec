fn main() {
    std::process::exit(netrel::cli::run());
}
