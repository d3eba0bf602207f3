//! Node-count budgets for the exact searches.
//!
//! Budgets are deterministic: they count search nodes, not wall time, so a
//! run that exhausts its budget does so at the same point on every machine.

/// Search budget. `max_nodes` bounds the number of search-tree nodes a
/// single solver invocation may expand.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    pub max_nodes: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_nodes: 200_000_000,
        }
    }
}

impl Budget {
    pub fn nodes(max_nodes: u64) -> Self {
        Budget { max_nodes }
    }

    pub fn meter(&self) -> Meter {
        Meter {
            remaining: self.max_nodes,
        }
    }
}

/// Marker returned by searches that ran out of budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Exhausted;

/// A running countdown against a [`Budget`].
#[derive(Debug)]
pub struct Meter {
    remaining: u64,
}

impl Meter {
    pub fn tick(&mut self) -> Result<(), Exhausted> {
        if self.remaining == 0 {
            return Err(Exhausted);
        }
        self.remaining -= 1;
        Ok(())
    }
}
