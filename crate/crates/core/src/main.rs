fn main() {
    std::process::exit(thicket::cli::main_with(std::env::args_os()));
}
