pub mod cli;
pub mod coeff;
pub mod dtinv;
pub mod quiver;
pub mod repcount;
pub mod roots;
pub mod series;
