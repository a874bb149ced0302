fn main() {
    std::process::exit(finmarkov_cli::main_with_args(std::env::args_os()));
}
