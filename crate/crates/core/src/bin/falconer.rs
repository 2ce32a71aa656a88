fn main() {
    std::process::exit(falconer::cli::main_with_args(std::env::args_os()));
}
