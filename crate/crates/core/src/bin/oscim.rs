fn main() {
    // CLI wired up after the harness lands.
}
