use clap::Parser;

use farm::cli::{run, Cli};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version itself; usage errors are
            // invalid input.
            if e.use_stderr() {
                let _ = e.print();
                std::process::exit(2);
            }
            let _ = e.print();
            std::process::exit(0);
        }
    };
    match run(&cli) {
        Ok(_) => {}
        Err(e) => {
            eprintln!("error[{}]: {e}", e.class());
            std::process::exit(e.exit_code());
        }
    }
}
