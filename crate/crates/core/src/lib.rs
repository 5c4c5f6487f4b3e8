//! Square permutations and convex permutominoes through their marked-word
//! codes: encoding, decoding, exact counting and exact uniform sampling.

pub mod codec;
pub mod oracle;
pub mod perm;
pub mod permutomino;
pub mod sampler;
pub mod series;
