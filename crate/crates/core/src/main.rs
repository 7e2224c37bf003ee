fn main() {
    std::process::exit(cone_thom::cli::run(std::env::args_os()));
}
