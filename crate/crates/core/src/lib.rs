//! Morphological galaxy classification pipeline.
//!
//! The crate standardizes grayscale galaxy images (threshold, orient by the
//! mask covariance, rotate, crop background columns, resize to 128x128),
//! extracts PCA eigenfeatures and a box-counting fractal-dimension feature,
//! and evaluates four from-scratch classifiers under seeded stratified
//! cross-validation, emitting accuracy tables and confusion matrices.

pub mod class;
pub mod error;
pub mod eval;
pub mod fractal;
pub mod learn;
pub mod manifest;
pub mod pca;
pub mod pipeline;
pub mod raster;
pub mod standardize;
pub mod synth;

pub use class::GalaxyClass;
pub use error::{Error, Result};
pub use raster::GrayImage;
