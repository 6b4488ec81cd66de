fn main() {
    std::process::exit(seqmine::cli::main_with_args(std::env::args_os()));
}
