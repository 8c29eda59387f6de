fn main() {
    std::process::exit(box_momentum::cli::run(std::env::args_os()));
}
