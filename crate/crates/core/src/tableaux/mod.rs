//! Young diagrams, tableaux and the RSK correspondence, together with the
//! insertion-free combinatorics used to check them.

mod enumerate;
mod hook;
mod overhang;
mod partition;
mod rsk;
mod ssyt;
mod subsequence;
mod syt;
mod word;

pub use enumerate::{enumerate_ssyt, enumerate_syt, Caps};
pub use hook::{hook_length, num_syt};
pub use overhang::{overhangs, Overhangs};
pub use partition::{partitions, Partition};
pub use rsk::{rsk, RskOutput};
pub use ssyt::{restrict_below, rsk_insert, SemistandardTableau};
pub use subsequence::{greene_union, lis_weak, DEFAULT_GREENE_CAP};
pub use syt::StandardTableau;
pub use word::Word;
