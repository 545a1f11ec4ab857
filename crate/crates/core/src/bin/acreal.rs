use clap::Parser;

use acreal::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let code = match run(cli, &mut std::io::stdout().lock()) {
        Ok(code) => code,
        Err(e) => {
            if !e.message.is_empty() {
                eprintln!("acreal: {}", e.message);
            }
            e.code
        }
    };
    std::process::exit(code);
}
