use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{LatticePoint, ORIGIN};

/// A finite word over a step set, read as a lattice path from the origin.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Walk {
    pub steps: Vec<LatticePoint>,
}

impl Walk {
    pub fn new(steps: Vec<LatticePoint>) -> Self {
        Walk { steps }
    }

    pub fn empty() -> Self {
        Walk::default()
    }

    /// Parse compass letters `N E S W U` (U is the diagonal `(1,1)`).
    pub fn from_compass(s: &str) -> Result<Self> {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                'N' => Ok(LatticePoint::new(0, 1)),
                'E' => Ok(LatticePoint::new(1, 0)),
                'S' => Ok(LatticePoint::new(0, -1)),
                'W' => Ok(LatticePoint::new(-1, 0)),
                'U' => Ok(LatticePoint::new(1, 1)),
                other => Err(Error::InvalidInput(format!("unknown compass letter `{other}`"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Walk::new)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn endpoint(&self) -> LatticePoint {
        self.steps.iter().fold(ORIGIN, |acc, &s| acc + s)
    }

    /// Endpoints of all prefixes, starting with the empty prefix at `O`.
    pub fn prefix_endpoints(&self) -> impl Iterator<Item = LatticePoint> + '_ {
        std::iter::once(ORIGIN).chain(self.steps.iter().scan(ORIGIN, |acc, &s| {
            *acc = *acc + s;
            Some(*acc)
        }))
    }

    pub fn prefix(&self, m: usize) -> Walk {
        Walk::new(self.steps[..m.min(self.len())].to_vec())
    }

    pub fn concat(&self, other: &Walk) -> Walk {
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        Walk::new(steps)
    }

    pub fn repeat(&self, n: usize) -> Walk {
        Walk::new(self.steps.repeat(n))
    }

    pub fn uses_only(&self, steps: &[LatticePoint]) -> bool {
        self.steps.iter().all(|s| steps.contains(s))
    }
}

impl fmt::Display for Walk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.steps.is_empty() {
            return write!(f, "ε");
        }
        for s in &self.steps {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl From<Vec<LatticePoint>> for Walk {
    fn from(steps: Vec<LatticePoint>) -> Self {
        Walk::new(steps)
    }
}
