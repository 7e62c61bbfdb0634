fn main() {
    std::process::exit(orecalc::cli::main_entry());
}
