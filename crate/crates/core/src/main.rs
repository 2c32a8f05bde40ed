fn main() {
    std::process::exit(gw_asymptotics::cli::main_with_args(std::env::args_os()));
}
