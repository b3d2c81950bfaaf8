fn main() -> std::process::ExitCode {
    motivic_dt::cli::main()
}
