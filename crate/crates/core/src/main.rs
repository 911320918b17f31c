fn main() {
    std::process::exit(trisp_homology::cli::main_with_args(std::env::args_os()));
}
