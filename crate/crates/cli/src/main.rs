fn main() {
    std::process::exit(rootcomp_cli::run(std::env::args_os()));
}
