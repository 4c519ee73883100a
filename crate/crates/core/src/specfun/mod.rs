//! Special-function kernel: the gamma family and the Gauss hypergeometric function.

mod gamma;
mod hyp2f1;

pub use gamma::{
    digamma, gamma, is_nonpositive_integer, ln_gamma, ln_gamma_signed, pochhammer, recip_gamma, EULER_GAMMA,
};
pub use hyp2f1::{hyp2f1, hyp2f1_at_unity, hyp2f1_split, Hyp2F1Params, MAX_SERIES_TERMS};
