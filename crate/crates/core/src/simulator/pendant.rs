use crate::graph::{EdgeId, ResidualView};

use super::{QueryHistory, Strategy};

/// Queries the lowest-index pendant edge whenever the residual graph has
/// one, and defers to `inner` otherwise.
#[derive(Clone)]
pub struct PendantFirst {
    inner: Box<dyn Strategy>,
}

impl PendantFirst {
    pub fn new(inner: Box<dyn Strategy>) -> Self {
        Self { inner }
    }
}

pub fn pendant_first(inner: Box<dyn Strategy>) -> Box<dyn Strategy> {
    Box::new(PendantFirst::new(inner))
}

impl Strategy for PendantFirst {
    fn name(&self) -> String {
        self.inner.name()
    }

    fn next_query(&mut self, residual: &ResidualView<'_>, history: &QueryHistory) -> Option<EdgeId> {
        residual
            .first_pendant()
            .or_else(|| self.inner.next_query(residual, history))
    }

    fn clone_box(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}
