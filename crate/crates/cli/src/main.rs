use std::io::Write;

fn main() {
    let out = sodhh_cli::run_command(std::env::args_os());
    print!("{}", out.stdout);
    let _ = std::io::stdout().flush();
    eprint!("{}", out.stderr);
    std::process::exit(out.code);
}
