//! Euclidean sequences, the A-map and its Bezout data.

mod amap;
mod euclid;

pub use amap::{
    a_map_closed, a_map_subtractive, amap_methods, AMapImage, AMapMethod, Closed, ClosedAMap,
    Subtractive, SubtractiveAMap,
};
pub use euclid::{bezout_cd, det_a_abs, euclidean_sequences, BezoutData, CoprimePair, EuclideanData, Role};
