fn main() {
    std::process::exit(kantorovich::cli::main(std::env::args_os()));
}
