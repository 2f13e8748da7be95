fn main() {
    std::process::exit(adscausal::cli::dispatch(std::env::args().skip(1)));
}
