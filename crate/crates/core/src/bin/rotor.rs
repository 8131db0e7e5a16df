fn main() {
    std::process::exit(rotor_core::cli::run(std::env::args_os()));
}
