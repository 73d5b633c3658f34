//! Library side of the `ckks` command: argument types, command dispatch and
//! the manifest runner. The binary is a thin wrapper over [`run`].

pub mod args;
pub mod commands;
pub mod error;
mod pipeline;

pub use args::Cli;
pub use commands::run;
pub use error::CliError;

/// Parses `argv` (program name first) and runs the command in-process.
/// Parse failures come back as usage errors instead of exiting.
pub fn run_args<I, T>(argv: I) -> Result<(), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    use clap::Parser;
    let cli = Cli::try_parse_from(argv).map_err(|e| {
        let msg = e.to_string();
        CliError::Usage(msg.lines().next().unwrap_or_default().to_string())
    })?;
    run(cli)
}
