fn main() {
    std::process::exit(qpadic_cli::run());
}
