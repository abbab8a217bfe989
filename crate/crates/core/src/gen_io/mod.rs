//! Triangle-free graph families and graph6 interchange.

mod generators;
mod graph6;

pub use generators::{
    generate, kneser_graph, mycielski_graph, mycielskian, petersen, random_triangle_free, GeneratorSpec,
};
pub use graph6::{decode_graph6, encode_graph6, read_corpus, CorpusEntry};
