fn main() {
    std::process::exit(nefpart_cli::run(std::env::args_os()));
}
