fn main() {
    std::process::exit(pentgeom::cli::run(std::env::args_os()));
}
