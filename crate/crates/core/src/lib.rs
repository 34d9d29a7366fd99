//! Temporary scaffold lib; full module set restored as modules land.
pub mod cayley;
pub mod coset;
pub mod homology;
pub mod matrix;
pub mod parse;
pub mod perm;
pub mod presentation;
pub mod quotient;
pub mod schreier;
pub mod word;

mod catalog;

pub use cayley::{identify, CayleyError, CayleyTable, Fingerprint, IsoClass};
pub use coset::{todd_coxeter, CosetTable, EnumerationError, EnumerationLimits, Strategy};
pub use homology::{abelian_invariants, abelianization_map, relation_matrix, AbelianInvariants};
pub use matrix::IntMatrix;
pub use parse::{parse_presentation, parse_word_list, parse_word_table, ParseError};
pub use perm::{group_order, PermError, Permutation};
pub use presentation::{Presentation, PresentationError, WordTable, WordTableError};
pub use quotient::quotient_on_fixed;
pub use schreier::{
    rewrite_word, schreier_generators, subgroup_presentation, RewriteError, SubgroupRewriter,
};
pub use word::{Letter, Word};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Bundled data files: the lattice presentation, subgroup word lists, and
/// the default verification manifest.
pub mod bundled {
    pub const GAMMA_BAR_FP: &str = include_str!("../data/gamma_bar.fp");
    pub const PI_WORDS: &str = include_str!("../data/pi.words");
    pub const G_DEFS_WORDS: &str = include_str!("../data/g_defs.words");
    pub const SIGMA_WORDS: &str = include_str!("../data/sigma.words");
}
