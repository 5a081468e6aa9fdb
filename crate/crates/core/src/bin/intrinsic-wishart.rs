fn main() {
    std::process::exit(intrinsic_wishart::cli::main_with_args(std::env::args_os()));
}
