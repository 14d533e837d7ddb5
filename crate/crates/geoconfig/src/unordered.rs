//! The unordered configuration space of two distinct points in `R^n`: the
//! min-over-pairings metric, its linear geodesics, and canonical
//! representatives.
//!
//! No clearance constraint applies here; the metric
//! `d_U({a,a′},{b,b′}) = min(d((a,a′),(b,b′)), d((a,a′),(b′,b)))` already
//! has linear geodesics between any two configurations.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

use crate::vecgeo::{config_distance, OrderedConfig, VecN};
use crate::Error;

/// Unit-free tie threshold on `(a′−a)·(b′−b)` relative to `‖a′−a‖‖b′−b‖`.
pub const TOL_TIE: f64 = 1e-12;

/// Which pairing of the two representative orders realizes the minimum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Pairing {
    /// Pair first-with-first, second-with-second (on canonical reps).
    Identity,
    /// Pair first-with-second.
    Swapped,
    /// Both pairings give the same distance (orthogonal separations).
    Tie,
}

/// An unordered pair `{a, a′}` stored through a canonical ordered
/// representative (the lexicographically smaller of the two orders).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnorderedConfig {
    rep: OrderedConfig,
}

fn lex_less(a: &VecN, b: &VecN) -> bool {
    for (x, y) in a.coords().iter().zip(b.coords()) {
        match x.partial_cmp(y).expect("finite coordinates") {
            Ordering::Less => return true,
            Ordering::Greater => return false,
            Ordering::Equal => continue,
        }
    }
    false
}

impl UnorderedConfig {
    /// Builds the configuration `{a, b}`; the two points must be distinct.
    pub fn new(a: VecN, b: VecN) -> Result<Self, Error> {
        a.ensure_same_dim(&b)?;
        if (&a - &b).norm() == 0.0 {
            return Err(Error::DegeneratePair);
        }
        let rep = if lex_less(&b, &a) {
            OrderedConfig::new(b, a)?
        } else {
            OrderedConfig::new(a, b)?
        };
        Ok(Self { rep })
    }

    pub fn from_ordered(c: &OrderedConfig) -> Result<Self, Error> {
        Self::new(c.first().clone(), c.second().clone())
    }

    /// The canonical ordered representative.
    pub fn rep(&self) -> &OrderedConfig {
        &self.rep
    }

    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    /// Separation vector of the canonical representative.
    pub fn separation(&self) -> VecN {
        self.rep.second() - self.rep.first()
    }

    fn swapped_rep(&self) -> OrderedConfig {
        OrderedConfig::new(self.rep.second().clone(), self.rep.first().clone())
            .expect("dims match")
    }
}

fn pairing_distances(up: &UnorderedConfig, uq: &UnorderedConfig) -> Result<(f64, f64), Error> {
    let id = config_distance(up.rep(), uq.rep())?;
    let sw = config_distance(up.rep(), &uq.swapped_rep())?;
    Ok((id, sw))
}

/// The min-over-pairings metric.
pub fn d_u(up: &UnorderedConfig, uq: &UnorderedConfig) -> Result<f64, Error> {
    let (id, sw) = pairing_distances(up, uq)?;
    Ok(id.min(sw))
}

/// Decides which pairing of canonical representatives is strictly shorter.
///
/// The squared-distance difference equals `2(a′−a)·(b−b′)`, so the sign of
/// `(a′−a)·(b′−b)` decides: positive means the identity pairing wins.
pub fn best_pairing(up: &UnorderedConfig, uq: &UnorderedConfig) -> Result<Pairing, Error> {
    let d0 = up.separation();
    let d1 = uq.separation();
    d0.ensure_same_dim(&d1)?;
    let s = d0.dot(&d1);
    if s.abs() <= TOL_TIE * d0.norm() * d1.norm() {
        Ok(Pairing::Tie)
    } else if s > 0.0 {
        Ok(Pairing::Identity)
    } else {
        Ok(Pairing::Swapped)
    }
}

/// A linear path of ordered representatives whose class in the quotient is
/// a geodesic when the best pairing is used.
#[derive(Clone, Debug)]
pub struct UnorderedPath {
    from: OrderedConfig,
    to: OrderedConfig,
    length: f64,
}

impl UnorderedPath {
    pub fn from_rep(&self) -> &OrderedConfig {
        &self.from
    }

    pub fn to_rep(&self) -> &OrderedConfig {
        &self.to
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    /// The representative configuration at parameter `t`.
    pub fn eval_rep(&self, t: f64) -> OrderedConfig {
        self.from.lerp(&self.to, t.clamp(0.0, 1.0))
    }

    /// Minimal separation of the two moving points over the whole path,
    /// in closed form (the separation is a linear function of `t`).
    pub fn min_separation(&self) -> f64 {
        let d0 = self.from.second() - self.from.first();
        let d1 = self.to.second() - self.to.first();
        let diff = &d1 - &d0;
        let denom = diff.norm_sq();
        let t_star = if denom > 0.0 {
            (-d0.dot(&diff) / denom).clamp(0.0, 1.0)
        } else {
            0.0
        };
        let at = |t: f64| d0.lerp(&d1, t).norm();
        at(t_star).min(at(0.0)).min(at(1.0))
    }
}

/// Builds the linear geodesic between two unordered configurations.
///
/// `pairing` defaults to [`best_pairing`] (a tie resolves to the identity
/// pairing of canonical representatives here; the planner overrides ties
/// with its orientation-transport rule). Forcing the worse pairing fails
/// when the representative path leaves the pair space (antiparallel
/// separations crossing through coincidence).
pub fn geodesic_unordered(
    up: &UnorderedConfig,
    uq: &UnorderedConfig,
    pairing: Option<Pairing>,
) -> Result<UnorderedPath, Error> {
    let pairing = match pairing {
        Some(p) => p,
        None => best_pairing(up, uq)?,
    };
    let to = match pairing {
        Pairing::Identity | Pairing::Tie => uq.rep().clone(),
        Pairing::Swapped => uq.swapped_rep(),
    };
    let from = up.rep().clone();
    let length = config_distance(&from, &to)?;
    let path = UnorderedPath { from, to, length };
    let scale = path
        .from
        .gap()
        .max(path.to.gap())
        .max(1.0);
    if path.min_separation() <= TOL_TIE * scale {
        return Err(Error::PairingCoincidence);
    }
    Ok(path)
}
