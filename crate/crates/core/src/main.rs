fn main() {
    std::process::exit(forecastability::cli::run(std::env::args_os()));
}
