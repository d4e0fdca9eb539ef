pub mod asymptotics;
pub mod brownian;
pub mod casimir;
pub mod mirror;
pub mod numkit;
pub mod specfun;
pub mod validation;
