fn main() {
    std::process::exit(isac_sched::experiments::cli::run(std::env::args_os()));
}
