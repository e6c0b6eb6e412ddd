pub mod abelian;
pub mod bounds;
pub mod corpus;
pub mod isoclin;
pub mod prob;
pub mod rational;
pub mod ring;
