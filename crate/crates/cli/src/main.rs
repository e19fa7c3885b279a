fn main() {
    std::process::exit(bs_cli::run(std::env::args_os()));
}
