use std::process::ExitCode;

use clap::Parser;
use synchro_cli::{configure_pool, emit, run, Cli};

fn main() -> ExitCode {
    // clap's own usage status is 2, which is reserved for findings here
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let outcome = configure_pool(&cli.common).and_then(|()| {
        let outcome = run(&cli)?;
        emit(&cli.common, &outcome.render(cli.common.json))?;
        Ok(outcome)
    });
    match outcome {
        Ok(o) if o.flagged => ExitCode::from(2),
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
