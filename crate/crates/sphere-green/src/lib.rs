pub mod error;
pub mod gegenbauer;
pub mod params;
pub mod poisson;
pub mod quad;
pub mod series;
pub mod sphere;
pub mod zonal;

pub use error::{Error, Result};
pub use sphere::SphereDim;
