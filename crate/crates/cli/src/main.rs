fn main() {
    std::process::exit(kr_cli::run(std::env::args_os()));
}
