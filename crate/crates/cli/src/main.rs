use std::io::Write;

fn main() {
    let out = knot_cli::run(std::env::args_os(), std::env::var(knot_cli::BUDGET_ENV).ok());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    std::process::exit(out.code);
}
