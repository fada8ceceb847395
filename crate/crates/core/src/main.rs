fn main() {
    let (code, out) = blocko::cli::run(std::env::args_os());
    print!("{out}");
    std::process::exit(code);
}
