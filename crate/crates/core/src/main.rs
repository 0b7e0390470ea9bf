fn main() {
    std::process::exit(twophase_walk::cli::run(std::env::args_os()));
}
