use clap::Parser;
use nmf_rigidity_cli::{configure_threads, run, Cli};

fn main() {
    let cli = Cli::parse();
    configure_threads();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = run(cli, &mut stdout.lock(), &mut stderr.lock());
    std::process::exit(code);
}
