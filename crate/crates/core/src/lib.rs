//! Exact-arithmetic analysis of finite epistemic games.
//!
//! Games live on a finite state space. Players have information
//! partitions, strictly positive priors and finite action sets. Utilities
//! are given either per action profile or per strategy profile. On top of
//! that model the crate provides:
//!
//! * [`measure`]: finite probability spaces, partitions, posteriors;
//! * [`game`]: the game model, strategies and expected utilities;
//! * [`equilibrium`]: Bayes rationality and correlated equilibria, with an
//!   exact simplex solver in [`lp`];
//! * [`certainty`]: coherent strategy systems and their rational solutions;
//! * [`uncertainty`]: conjecture-based rationality;
//! * [`consistency`]: exhaustive scenario searches and the decomposition test;
//! * [`format`] and [`cli`]: JSON files and the command-line driver.
//!
//! All arithmetic is exact; see [`Rational`].

pub mod certainty;
pub mod cli;
pub mod consistency;
pub mod equilibrium;
pub mod error;
pub mod examples_builtin;
pub mod format;
pub mod game;
pub mod lp;
pub mod measure;
pub mod rational;
pub mod uncertainty;

pub use error::{Error, Result};
pub use game::{EpistemicGame, Player, Strategy, StrategyProfile, UtilityKind};
pub use measure::{Event, FiniteSpace, Measure, Partition};
pub use rational::Rational;
