fn main() {
    std::process::exit(superdiscord::cli::run_from(std::env::args_os()));
}
