fn main() {
    std::process::exit(li2poly::cli::run(std::env::args_os()));
}
