fn main() {
    std::process::exit(marriage_sim::cli::main_with_args(std::env::args_os()));
}
