//! Verification and rediscovery of logarithmic closed forms for values of
//! the generalized hypergeometric function 3F2 at unit argument.

pub mod exact;
pub mod hyper;
pub mod mpnum;
