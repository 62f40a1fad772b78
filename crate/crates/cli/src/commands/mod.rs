pub mod branch;
pub mod bvp;
pub mod hermite;
pub mod solve;
pub mod verify;

use std::path::Path;

/// Reports a written file on stdout.
pub fn announce(path: &Path) {
    println!("wrote {}", path.display());
}
