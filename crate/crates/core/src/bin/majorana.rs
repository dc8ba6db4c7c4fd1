fn main() {
    std::process::exit(majorana::cli::run(std::env::args_os()));
}
