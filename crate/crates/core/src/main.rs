fn main() {
    let code = centrum::cli_io::run_command(std::env::args_os(), &mut std::io::stdout().lock());
    std::process::exit(code);
}
