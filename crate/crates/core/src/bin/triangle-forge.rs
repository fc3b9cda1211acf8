use std::io;

fn main() {
    let code = triangle_forge::cli::run(std::env::args_os(), &mut io::stdout().lock(), &mut io::stderr());
    std::process::exit(code);
}
