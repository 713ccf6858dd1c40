//! Grammar compression by induced suffix sorting.
//!
//! [`compress`] turns a byte string into a multi-level grammar whose rules are
//! the sorted LMS-substrings of each recursion level. The grammar can be
//! stored in two container profiles ([`format`]): a sequential one for plain
//! decompression and a random-access one that supports substring
//! [`extract`]ion. Decompression can also produce the suffix array and LCP
//! array of the text as a byproduct ([`salcp`]).
//!
//! ```
//! use gcis::{compress, decompress, deserialize, serialize, Profile};
//!
//! let text = b"abracadabra abracadabra";
//! let grammar = compress(text);
//! assert_eq!(decompress(&grammar)?, text);
//!
//! let ef = serialize(&grammar, Profile::Ef);
//! let ex = deserialize(&ef)?.extractor.unwrap();
//! assert_eq!(ex.extract(4..11)?, b"cadabra");
//!
//! let art = gcis::decompress_with_sa_lcp::<u32>(&grammar)?;
//! assert_eq!(art.sa.len(), text.len() + 1);
//! assert_eq!(art.sa[0] as usize, text.len());
//! # Ok::<(), gcis::Error>(())
//! ```

pub mod codecs;
pub mod corpus;
pub mod decode;
pub mod error;
pub mod extract;
pub mod format;
pub mod grammar;
pub mod index;
pub mod sais;
pub mod salcp;
pub mod textcore;

pub use decode::decompress;
pub use error::{CodecError, Error, Result};
pub use extract::{ExtractTrace, Extractor, RESET_PERIOD};
pub use format::{deserialize, inspect, serialize, Container, ContainerInfo, Profile};
pub use grammar::{compress, compress_with_stats, Grammar, GrammarLevel};
pub use index::Index;
pub use salcp::{decompress_with_sa, decompress_with_sa_lcp, SuffixArtifacts};
