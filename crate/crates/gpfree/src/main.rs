fn main() {
    std::process::exit(gpfree::run(std::env::args_os()));
}
