fn main() {
    lasagna::io::cli::main()
}
