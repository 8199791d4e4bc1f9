fn main() {
    std::process::exit(neglab::run(std::env::args_os()));
}
