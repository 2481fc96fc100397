fn main() {
    std::process::exit(adiamaj::cli_main());
}
