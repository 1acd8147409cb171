pub mod abelian;
pub mod algebra;
pub mod budget;
pub mod cohomology;
pub mod engine;
pub mod field;
pub mod group;
pub mod intmat;
pub mod matrix;
pub mod modular;
pub mod morphs;
pub mod rep;
pub mod series;
