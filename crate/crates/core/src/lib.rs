//! Exact verification toolkit for a crystallographic complex reflection group
//! acting on an Abelian surface, the associated sporadic and Thompson triangle
//! groups, and the intersection-number bookkeeping on the quotient surface.

pub mod crystal;
pub mod cyclo;
pub mod hermlin;
pub mod isometry;
pub mod ledger;
pub mod report;
pub mod sporadic;
