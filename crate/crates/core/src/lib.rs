//! K-orbits on flag varieties of classical groups, their closure orders, and
//! the moment-map orbit correspondence into nilpotent K-orbits.

pub mod linalg;
pub mod partition;
pub mod weyl_char;
pub mod tableau;
pub mod springer_data;
pub mod moment_geom;
pub mod kgb_clans;
pub mod fixtures;
pub mod cli;
