use multiobj::cli;
use multiobj::driver::MetaSolver;

fn main() {
    let code = cli::run(
        std::env::args_os(),
        &MetaSolver::with_builtin(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    );
    std::process::exit(code);
}
