fn main() -> std::process::ExitCode {
    gabidulin_hull::cli::main_with_args(std::env::args_os())
}
