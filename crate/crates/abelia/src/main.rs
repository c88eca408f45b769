use std::io::{self, BufWriter};
use std::process::ExitCode;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let code = abelia::cli::run(std::env::args_os(), &mut out);
    ExitCode::from(code.clamp(0, 255) as u8)
}
