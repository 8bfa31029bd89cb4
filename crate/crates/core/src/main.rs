fn main() {
    std::process::exit(progalign::cli::run(std::env::args_os()));
}
