use std::io::Write;

fn main() {
    let env_cap = std::env::var(coset_core::cli::ENUM_CAP_VAR).ok();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = coset_core::cli::run(
        std::env::args_os(),
        env_cap.as_deref(),
        &mut stdout.lock(),
        &mut stderr.lock(),
    );
    let _ = std::io::stdout().flush();
    std::process::exit(code);
}
