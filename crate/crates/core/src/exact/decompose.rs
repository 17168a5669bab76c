//! Splitting a connected, pendant-free graph into its high-degree core and
//! the paths hanging between core nodes.

use crate::error::ExactError;
use crate::graph::{EdgeId, EdgeSet, NodeId, ResidualView};

/// One component of `G \ V≥3`: nodes `u_1, ..., u_{q+1}` joined by edges
/// `e_1, ..., e_q`, oriented so that `u_1` has the smaller node id.
#[derive(Clone, Debug, PartialEq)]
pub struct PathComponent {
    pub nodes: Vec<NodeId>,
    pub edges: Vec<EdgeId>,
    /// Edges from `u_1` into `V≥3`.
    pub head_boundary: Vec<EdgeId>,
    /// Edges from `u_{q+1}` into `V≥3`.
    pub tail_boundary: Vec<EdgeId>,
}

impl PathComponent {
    /// Number of path edges `q`.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn head(&self) -> NodeId {
        self.nodes[0]
    }

    pub fn tail(&self) -> NodeId {
        *self.nodes.last().expect("path has a node")
    }

    /// 1-based position of `e` on the path.
    pub fn position(&self, e: EdgeId) -> Option<usize> {
        self.edges.iter().position(|&f| f == e).map(|i| i + 1)
    }
}

#[derive(Clone, Debug)]
pub struct SparseDecomposition {
    pub v_ge3: Vec<NodeId>,
    pub paths: Vec<PathComponent>,
    /// Edges with an endpoint in `V≥3`, ascending.
    pub incident_edges: Vec<EdgeId>,
    pub d: i64,
    /// Set when the graph is a single cycle; all other fields are then empty.
    pub is_cycle: bool,
    /// Edge set of the decomposed graph.
    pub edges: EdgeSet,
    /// For each edge id: `(path index, 1-based position)` if it lies on a path.
    path_of: Vec<Option<(usize, usize)>>,
}

impl SparseDecomposition {
    pub fn path_of(&self, e: EdgeId) -> Option<(usize, usize)> {
        self.path_of.get(e.0).copied().flatten()
    }

    pub fn is_incident(&self, e: EdgeId) -> bool {
        self.edges.contains(e.0) && self.path_of(e).is_none()
    }
}

/// Decomposes `r`, which must be connected, pendant-free and have
/// sparsity excess at most `d`.
pub fn decompose(r: &ResidualView<'_>, d: i64) -> Result<SparseDecomposition, ExactError> {
    let g = r.graph();
    if !r.is_connected() {
        return Err(ExactError::NotConnected);
    }
    if let Some(e) = r.first_pendant() {
        return Err(ExactError::HasPendant(e));
    }
    let excess = r.sparsity_excess();
    if excess > d {
        return Err(ExactError::TooDense { excess, d });
    }
    let mut path_of = vec![None; g.edge_count()];
    let v_ge3: Vec<NodeId> = r.nodes().filter(|&n| r.degree(n) >= 3).collect();
    if v_ge3.is_empty() {
        return Ok(SparseDecomposition {
            v_ge3,
            paths: Vec::new(),
            incident_edges: Vec::new(),
            d,
            is_cycle: !r.is_empty(),
            edges: r.alive_set().clone(),
            path_of,
        });
    }
    let mut core = vec![false; g.node_count()];
    for &n in &v_ge3 {
        core[n.0] = true;
    }
    let incident_edges: Vec<EdgeId> = r
        .edges()
        .filter(|&e| {
            let edge = g.edge(e);
            core[edge.u.0] || core[edge.v.0]
        })
        .collect();

    // Every non-core node has degree exactly 2, so each component of the
    // non-core part is a path whose ends touch the core.
    let mut visited = vec![false; g.node_count()];
    let mut paths = Vec::new();
    for start in r.nodes() {
        if core[start.0] || visited[start.0] {
            continue;
        }
        // Walk to one end of the component.
        let mut end = start;
        let mut prev = None;
        loop {
            let next = r
                .incident(end)
                .map(|(n, _)| n)
                .find(|&n| !core[n.0] && Some(n) != prev);
            match next {
                Some(n) if n != start => {
                    prev = Some(end);
                    end = n;
                }
                _ => break,
            }
        }
        let mut nodes = vec![end];
        let mut edges = Vec::new();
        visited[end.0] = true;
        let mut cur = end;
        loop {
            let next = r
                .incident(cur)
                .find(|&(n, _)| !core[n.0] && !visited[n.0]);
            let Some((n, e)) = next else { break };
            visited[n.0] = true;
            nodes.push(n);
            edges.push(e);
            cur = n;
        }
        if nodes.len() > 1 && nodes[0] > *nodes.last().unwrap() {
            nodes.reverse();
            edges.reverse();
        }
        let boundary = |n: NodeId| -> Vec<EdgeId> {
            let mut b: Vec<EdgeId> = r
                .incident(n)
                .filter(|(m, _)| core[m.0])
                .map(|(_, e)| e)
                .collect();
            b.sort_unstable();
            b
        };
        let head_boundary = boundary(nodes[0]);
        let tail_boundary = boundary(*nodes.last().unwrap());
        if nodes.len() > 1 && (head_boundary.is_empty() || tail_boundary.is_empty()) {
            return Err(ExactError::Decomposition(format!(
                "path through {} does not end in V>=3",
                nodes[0]
            )));
        }
        paths.push(PathComponent {
            nodes,
            edges,
            head_boundary,
            tail_boundary,
        });
    }
    for (i, path) in paths.iter().enumerate() {
        for (j, e) in path.edges.iter().enumerate() {
            path_of[e.0] = Some((i, j + 1));
        }
    }

    let dd = d.max(0) as usize;
    if v_ge3.len() > 2 * dd {
        return Err(ExactError::Decomposition(format!(
            "|V>=3| = {} exceeds 2d = {}",
            v_ge3.len(),
            2 * dd
        )));
    }
    if incident_edges.len() > 6 * dd {
        return Err(ExactError::Decomposition(format!(
            "{} edges touch V>=3, more than 6d = {}",
            incident_edges.len(),
            6 * dd
        )));
    }
    if paths.len() > 3 * dd {
        return Err(ExactError::Decomposition(format!(
            "{} paths, more than 3d = {}",
            paths.len(),
            3 * dd
        )));
    }
    let path_edges: usize = paths.iter().map(PathComponent::len).sum();
    if path_edges + incident_edges.len() != r.edge_count() {
        return Err(ExactError::Decomposition("edges not covered exactly once".into()));
    }
    Ok(SparseDecomposition {
        v_ge3,
        paths,
        incident_edges,
        d,
        is_cycle: false,
        edges: r.alive_set().clone(),
        path_of,
    })
}
