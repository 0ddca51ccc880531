pub mod abelian;
pub mod error;
pub mod nil2;
pub mod qmap;
pub mod classify;
pub mod maltsev;
