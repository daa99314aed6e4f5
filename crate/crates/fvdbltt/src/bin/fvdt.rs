fn main() {
    eprintln!("fvdt: not yet wired");
    std::process::exit(2);
}
