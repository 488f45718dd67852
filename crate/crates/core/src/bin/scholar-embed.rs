fn main() {
    std::process::exit(scholar_embed::cli::run(std::env::args_os()));
}
