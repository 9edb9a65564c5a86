use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use stanley_lab::args::Args;
use stanley_lab::{run, CliError, Document, Format};

fn main() -> ExitCode {
    let args = Args::parse();
    let format = args.global.format;
    match args.into_job().and_then(|job| run(&job)) {
        Ok(doc) => emit(&doc, format),
        Err(e) => fail(&e, format),
    }
}

fn emit(doc: &Document, format: Format) -> ExitCode {
    let mut out = std::io::stdout().lock();
    if out.write_all(doc.render(format).as_bytes()).and_then(|_| out.flush()).is_err() {
        return ExitCode::FAILURE;
    }
    ExitCode::from(doc.exit_code() as u8)
}

fn fail(e: &CliError, format: Format) -> ExitCode {
    if format == Format::Json {
        let body = serde_json::json!({ "error": e.to_string(), "exit_code": e.exit_code() });
        println!("{}", serde_json::to_string_pretty(&body).expect("json"));
    }
    eprintln!("error: {e}");
    ExitCode::from(e.exit_code() as u8)
}
