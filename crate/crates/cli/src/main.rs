use clap::Parser;

fn main() {
    let cli = cfmm_cli::Cli::parse();
    let mut out = std::io::stdout();
    if let Err(e) = cfmm_cli::run(cli, &mut out) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
