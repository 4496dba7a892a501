use std::process::ExitCode;

/// Deep numerals and long reduction chains recurse; give them room.
const STACK: usize = 1 << 30;

fn main() -> ExitCode {
    let worker = std::thread::Builder::new().stack_size(STACK).spawn(|| {
        let (mut out, mut err) = (std::io::stdout().lock(), std::io::stderr().lock());
        prtt_cli::run(std::env::args_os(), &mut out, &mut err)
    });
    let code = worker.expect("spawn worker thread").join().unwrap_or(101);
    ExitCode::from(code.clamp(0, 255) as u8)
}
