fn main() {
    std::process::exit(zakinv::cli::run(std::env::args_os()));
}
