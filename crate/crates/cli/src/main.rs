fn main() {
    std::process::exit(cwsoc_cli::run(std::env::args_os()));
}
