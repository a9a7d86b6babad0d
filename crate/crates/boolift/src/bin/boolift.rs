fn main() {
    std::process::exit(boolift::cli::run(std::env::args_os()));
}
