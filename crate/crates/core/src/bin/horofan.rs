fn main() -> std::process::ExitCode {
    horofan::cli::main()
}
