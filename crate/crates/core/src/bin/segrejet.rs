fn main() {
    std::process::exit(segrejet::cli::run(std::env::args_os()));
}
