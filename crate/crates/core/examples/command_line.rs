//! The command-line front end driven in-process.
fn main() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let args = ["eisencusp", "--no-cache", "--format", "csv", "table", "--from", "9", "--to", "50"];
    let code = eisencusp::cli::run(args, &mut out, &mut err);
    print!("{}", String::from_utf8_lossy(&out));
    eprint!("{}", String::from_utf8_lossy(&err));
    println!("exit code {code}");
}
