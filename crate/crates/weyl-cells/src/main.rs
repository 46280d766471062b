use std::process::ExitCode;

fn main() -> ExitCode {
    // Die quietly when a pipe closes early, like any other filter.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    weyl_cells::cli::run(std::env::args().skip(1))
}
