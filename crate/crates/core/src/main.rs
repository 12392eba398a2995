use std::io::Write;

fn main() {
    let out = teich::cli::run(std::env::args_os());
    let stream: &mut dyn Write = if out.code == 0 { &mut std::io::stdout() } else { &mut std::io::stderr() };
    let _ = stream.write_all(out.text.as_bytes());
    std::process::exit(out.code);
}
