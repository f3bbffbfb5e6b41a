fn main() {
    std::process::exit(irs_cli::main_impl());
}
