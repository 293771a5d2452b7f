fn main() {
    std::process::exit(patternspace_cli::run(std::env::args_os()));
}
