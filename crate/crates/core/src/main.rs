fn main() -> std::process::ExitCode {
    efftop::cli::main()
}
