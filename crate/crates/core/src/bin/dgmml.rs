fn main() {
    std::process::exit(dgmml_tree::cli::cli_main(std::env::args_os()));
}
