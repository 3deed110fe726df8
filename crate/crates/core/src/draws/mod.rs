//! Draw channels: multinomial, hypergeometric and Pólya, with their
//! single-step decompositions, multiset zipping, moments and KL scaling.

mod closed;
mod composite;
mod moments;
mod zipping;

pub use closed::{
    hypergeometric, hypergeometric_pmf, multinomial, multinomial_pmf, polya, polya_pmf, DrawDist,
    DrawKind,
};
pub use composite::{dd, hypergeometric_via_dd, pd, polya_via_seqpolya, psa, seqpolya};
pub use moments::{
    kl_divergence, kl_multinomial_check, mn_moment, mn_moment_closed, Moment,
};
pub use zipping::{mzip, mzip_naive_distance, pml, NaiveDistance};
