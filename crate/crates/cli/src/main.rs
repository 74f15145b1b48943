fn main() {
    // assertion failures are reported as JSON by `run`
    std::panic::set_hook(Box::new(|_| {}));
    let (code, out) = wittstab_cli::run(std::env::args_os());
    println!("{out}");
    std::process::exit(code);
}
