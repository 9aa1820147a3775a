fn main() {
    std::process::exit(twsec::cli::main_with_args(std::env::args_os()));
}
