//! Builder-Painter games on graphs: exact densities, tree-family solving,
//! certified Builder constructions, Painter strategies and random-process
//! simulation.

pub mod density;
pub mod embed;
pub mod error;
pub mod flow;
pub mod game;
pub mod graph;
pub mod montecarlo;
pub mod rational;
pub mod solver;
pub mod strategies;
pub mod tree;

pub use error::{Error, Result};
pub use graph::{Color, ColoredGraph, Graph, Vertex};
pub use rational::Rational;
