fn main() {
    std::process::exit(bpsfp::cli::run(std::env::args_os()));
}
