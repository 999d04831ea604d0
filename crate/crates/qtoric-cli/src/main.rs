fn main() {
    std::process::exit(qtoric_cli::run());
}
