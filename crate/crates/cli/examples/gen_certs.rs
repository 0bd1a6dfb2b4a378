//! Regenerates the committed certificate files in `data/` from the builders.
//! Run after touching `shipped.rs`:
//!
//! ```text
//! cargo run -p quadeuclid --example gen_certs
//! ```

use std::fs;
use std::path::PathBuf;

fn main() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data");
    fs::create_dir_all(&dir).unwrap();
    for m in [2i64, 3, 6, 7, 11, 19] {
        let cert = quadeuclid::shipped::build(m).unwrap();
        let report = quadeuclid_core::covering::verify(&cert);
        assert!(report.pass(), "m={m} certificate does not verify:\n{report}");
        let path = dir.join(format!("m{m}.cert"));
        fs::write(&path, quadeuclid::format::serialize(&cert)).unwrap();
        println!("wrote {} ({} claims)", path.display(), cert.claims.len());
    }
}
