fn main() {
    std::process::exit(radsym::cli::main());
}
