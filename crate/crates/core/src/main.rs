fn main() {
    fdsec::cli::main()
}
