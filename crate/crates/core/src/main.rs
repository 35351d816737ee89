fn main() {
    std::process::exit(sft_escape::cli::run());
}
