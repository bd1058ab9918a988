fn main() {
    std::process::exit(tfsharp::cli::run(std::env::args_os()));
}
