fn main() {
    let args: Vec<String> = std::env::args().collect();
    std::process::exit(admrank_cli::run(&args));
}
