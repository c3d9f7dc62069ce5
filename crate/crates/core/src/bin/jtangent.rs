fn main() {
    std::process::exit(jtangent::cli::main_with_std());
}
