fn main() {
    std::process::exit(racolour::cli::run(std::env::args_os()));
}
