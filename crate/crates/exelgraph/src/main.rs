fn main() {
    std::process::exit(exelgraph::cli::run());
}
