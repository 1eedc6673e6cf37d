pub mod abelian;
pub mod functors;
pub mod homology;
pub mod milnor;
pub mod nilpotent;
pub mod selftest;
pub mod whitehead;
pub mod words;
