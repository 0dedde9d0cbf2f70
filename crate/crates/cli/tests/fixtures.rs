//! The JSON files under `fixtures/` are the serialized named fixtures.
//! Run with `GGK_BLESS=1` to regenerate them.

use std::fs;
use std::path::PathBuf;

use ggk_core::doc::InputDocument;
use ggk_core::fixtures::named_gogs;

fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

#[test]
fn fixture_files_are_current() {
    let bless = std::env::var_os("GGK_BLESS").is_some();
    for (name, gog) in named_gogs() {
        let path = dir().join(format!("{name}.json"));
        let want = format!("{}\n", InputDocument::from_gog(&gog).to_json_pretty());
        if bless {
            fs::write(&path, &want).unwrap();
        }
        assert_eq!(fs::read_to_string(&path).unwrap(), want, "{}", path.display());
    }
}
