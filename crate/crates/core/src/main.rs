fn main() {
    std::process::exit(familydd::cli::cli_main(std::env::args_os()));
}
