fn main() {
    std::process::exit(mprod_cli::run());
}
