use std::panic;

fn main() {
    let code = panic::catch_unwind(|| frobkit::cli::run(std::env::args_os()))
        .unwrap_or(frobkit::cli::EXIT_INTERNAL);
    std::process::exit(code);
}
