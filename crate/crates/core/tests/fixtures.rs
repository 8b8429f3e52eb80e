//! The shipped example documents match the builders byte for byte and
//! their declared expectations hold. `GRADERING_BLESS=1` rewrites them.

use std::path::PathBuf;

use gradering::corpus::examples::{fixture_stem, DEFAULT_MODULUS, DEFAULT_TRUNCATION};
use gradering::corpus::{build_paper_example, emit_spec, parse_spec, run_expectations, Fixture, EXAMPLE_IDS};
use gradering::Budget;

fn fixture_path(id: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{}.ring.json", fixture_stem(id)))
}

#[test]
fn shipped_documents_match_builders() {
    let bless = std::env::var_os("GRADERING_BLESS").is_some();
    for id in EXAMPLE_IDS {
        let ex = build_paper_example(id, DEFAULT_MODULUS, DEFAULT_TRUNCATION).unwrap();
        let text = emit_spec(&ex.to_document());
        let path = fixture_path(id);
        if bless {
            std::fs::write(&path, &text).unwrap();
        }
        let shipped = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(shipped, text, "{id} drifted from its builder");
    }
}

#[test]
fn shipped_expectations_hold() {
    for id in EXAMPLE_IDS {
        let text = std::fs::read_to_string(fixture_path(id)).unwrap();
        let doc = parse_spec(&text).unwrap();
        assert_eq!(emit_spec(&doc), text, "{id} does not round trip");
        let fx = Fixture::from_document(doc).unwrap();
        let bad: Vec<_> = run_expectations(&fx, &Budget::default())
            .unwrap()
            .into_iter()
            .filter(|c| !c.pass)
            .collect();
        assert!(bad.is_empty(), "{id}: {bad:#?}");
    }
}
