//! Reports and the command-line interface.

pub mod cli {
    pub fn main() {
        println!("not yet wired");
    }
}
