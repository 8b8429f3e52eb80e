//! Ring documents, builders for the example rings, and instance families.

pub mod builders;
pub mod document;
pub mod examples;
pub mod families;
pub mod fixture;
pub mod params;
pub mod report;

pub use document::{document_from, emit_spec, parse_spec, RingSpecDocument};
pub use families::{enumerate_instances, Family, Instance};
pub use params::{parse_params, Params};
pub use examples::{build_paper_example, PaperExample, EXAMPLE_IDS};
pub use fixture::{run_expectations, Check, Fixture};
pub use report::{emit_report, parse_report, Report};
