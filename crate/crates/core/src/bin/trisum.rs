fn main() {
    trisum::cli::main()
}
