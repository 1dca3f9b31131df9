fn main() {
    std::process::exit(crossings::cli::main_with_args(std::env::args_os()));
}
