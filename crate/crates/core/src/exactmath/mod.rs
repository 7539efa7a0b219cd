pub mod intfactor;
pub mod matrix;
pub mod modp;
pub mod poly;
pub mod zfactor;
pub mod roots;
pub mod lattice;
