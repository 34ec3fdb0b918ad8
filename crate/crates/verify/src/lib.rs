//! Executable checks of claims about formal local cohomology, run over a
//! corpus of graded modules.

pub mod claims;
pub mod corpus;
pub mod printed;

pub use claims::{run_claim, verify_all, Bounds, ClaimId, ClaimReport, Reading, TableEntry, VerificationReport, Verdict, Witness};
pub use corpus::{builtin_cases, corpus_generate, default_corpus, CorpusParams, ExampleCase, Provenance};
pub use printed::{Discrepancy, GoldenCheck, Quantity};
