use std::io::{IsTerminal, Write};

fn main() {
    let color = std::env::var_os("SPINPIC_NO_COLOR").is_none() && std::io::stdout().is_terminal();
    let out = spinpic::cli::run(std::env::args_os(), color);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    std::process::exit(out.code);
}
