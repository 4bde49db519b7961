fn main() {
    std::process::exit(groupknow::cli::cli_main(std::env::args_os()));
}
