fn main() {
    std::process::exit(lefschetz_char::cli::main_entry());
}
