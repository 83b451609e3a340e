use std::io::Write;

fn main() {
    let (code, out, err) = spherical_core::cli::run(std::env::args_os().skip(1));
    print!("{out}");
    eprint!("{err}");
    let _ = std::io::stdout().flush();
    std::process::exit(code);
}
