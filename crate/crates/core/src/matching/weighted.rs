//! Maximum-weight matching on general graphs.
//!
//! Primal-dual blossom algorithm (Edmonds, Galil) in the formulation of
//! J. van Rantwijk's `mwmatching`, on integer weights so every dual update is
//! exact. Real weights are quantized to 28 bits relative to the largest
//! entry of the weight vector, then shifted left and given a bonus of
//! `m - id` that favours low edge indices. The bonus budget is smaller than
//! one quantization step, so it only separates matchings of equal quantized
//! weight.
//!
//! [`WeightedMatcher`] keeps the primal and dual solution between calls.
//! Deleting an edge dissolves the blossoms whose cycle uses it (their duals
//! are folded into the member vertices) and unmatches it; matched edges
//! that lost tightness are unmatched too. Re-optimizing then only grows
//! alternating trees from free vertices whose dual is still positive, which
//! usually takes one or two stages instead of a full solve.

use crate::error::MatchingError;
use crate::graph::{EdgeId, Matching, NodeId, ResidualView};

const NONE: usize = usize::MAX;
const QUANT_BITS: u32 = 28;

/// Maximum-weight matching of the alive subgraph. `weights` is indexed by
/// edge id over the whole base graph.
pub fn max_weight_matching(
    r: &ResidualView<'_>,
    weights: &[f64],
) -> Result<Matching, MatchingError> {
    Ok(WeightedMatcher::new(r, weights)?.matching())
}

/// A maximum-weight matching that follows edge deletions.
#[derive(Clone, Debug)]
pub struct WeightedMatcher {
    state: Blossom,
    alive_edges: usize,
    dirty: bool,
}

impl WeightedMatcher {
    /// Solves the alive subgraph of `r`.
    pub fn new(r: &ResidualView<'_>, weights: &[f64]) -> Result<Self, MatchingError> {
        let g = r.graph();
        let m = g.edge_count();
        if weights.len() != m {
            return Err(MatchingError::WeightCount {
                got: weights.len(),
                expected: m,
            });
        }
        let mut wmax = 0.0f64;
        for (k, &w) in weights.iter().enumerate() {
            if !w.is_finite() || w < 0.0 {
                return Err(MatchingError::InvalidWeight {
                    edge: EdgeId(k),
                    weight: w,
                });
            }
            wmax = wmax.max(w);
        }
        let n = g.node_count();
        // any matching has at most n/2 edges, each with bonus at most m
        let budget = ((n / 2 + 1) * (m + 1)) as u64;
        let shift = 64 - budget.leading_zeros();
        let edges = g
            .edges()
            .map(|(id, e)| {
                let q = if wmax > 0.0 {
                    (weights[id.0] / wmax * f64::from(1u32 << QUANT_BITS)).round() as i64
                } else {
                    0
                };
                (e.u.0, e.v.0, (q << shift) + (m - id.0) as i64)
            })
            .collect();
        let alive = (0..m).map(|k| r.is_alive(EdgeId(k))).collect();
        let mut state = Blossom::new(n, edges, alive);
        state.solve();
        Ok(Self {
            state,
            alive_edges: r.edge_count(),
            dirty: false,
        })
    }

    pub fn is_alive(&self, e: EdgeId) -> bool {
        self.state.alive[e.0]
    }

    /// Number of edges not removed so far.
    pub fn edge_count(&self) -> usize {
        self.alive_edges
    }

    /// Removes `e` (no-op if already removed).
    pub fn remove_edge(&mut self, e: EdgeId) {
        if self.state.alive[e.0] {
            self.state.delete_edge(e.0);
            self.alive_edges -= 1;
            self.dirty = true;
        }
    }

    /// Removes every edge at `node`.
    pub fn remove_node(&mut self, node: NodeId) {
        let ks: Vec<usize> = self.state.neighbend[node.0].iter().map(|p| p / 2).collect();
        for k in ks {
            self.remove_edge(EdgeId(k));
        }
    }

    /// Removes every edge that is dead in `r`.
    pub fn sync(&mut self, r: &ResidualView<'_>) {
        for k in 0..self.state.alive.len() {
            if self.state.alive[k] && !r.is_alive(EdgeId(k)) {
                self.remove_edge(EdgeId(k));
            }
        }
    }

    /// Current maximum-weight matching, edges ascending.
    pub fn matching(&mut self) -> Matching {
        if self.dirty {
            self.state.solve();
            self.dirty = false;
        }
        Matching::from_sorted_unchecked(self.state.matched_edges())
    }

    /// Integer objective value of the current solution, for cross-checks.
    #[cfg(test)]
    fn objective(&mut self) -> i64 {
        self.matching();
        self.state.matched_edges().iter().map(|&e| self.state.edges[e.0].2).sum()
    }
}

/// State of the primal-dual algorithm. Vertices are `0..n`, non-trivial
/// blossoms `n..2n`. Edge endpoints are numbered `2k` and `2k + 1` for edge
/// `k`. Dual feasibility reads `y_i + y_j + 2 Σ z_B >= 2 w_ij` over the
/// blossoms containing both ends.
#[derive(Clone, Debug)]
struct Blossom {
    n: usize,
    edges: Vec<(usize, usize, i64)>,
    alive: Vec<bool>,
    endpoint: Vec<usize>,
    neighbend: Vec<Vec<usize>>,
    mate: Vec<usize>,
    label: Vec<u8>,
    labelend: Vec<usize>,
    inblossom: Vec<usize>,
    blossomparent: Vec<usize>,
    blossomchilds: Vec<Vec<usize>>,
    blossombase: Vec<usize>,
    blossomendps: Vec<Vec<usize>>,
    bestedge: Vec<usize>,
    blossombestedges: Vec<Option<Vec<usize>>>,
    unusedblossoms: Vec<usize>,
    dualvar: Vec<i64>,
    allowedge: Vec<bool>,
    /// Edges with `allowedge` set, for a cheap reset.
    allowed: Vec<usize>,
    /// Vertices and blossoms labelled or given a best edge in this stage,
    /// including every vertex of a labelled blossom. Dual updates only
    /// visit these.
    touched: Vec<usize>,
    in_touched: Vec<bool>,
    queue: Vec<usize>,
}

impl Blossom {
    fn new(n: usize, edges: Vec<(usize, usize, i64)>, alive: Vec<bool>) -> Self {
        let maxweight = edges
            .iter()
            .zip(&alive)
            .filter(|(_, &a)| a)
            .map(|(e, _)| e.2)
            .max()
            .unwrap_or(0)
            .max(0);
        let mut endpoint = Vec::with_capacity(2 * edges.len());
        let mut neighbend = vec![Vec::new(); n];
        for (k, &(i, j, _)) in edges.iter().enumerate() {
            endpoint.push(i);
            endpoint.push(j);
            if alive[k] {
                neighbend[i].push(2 * k + 1);
                neighbend[j].push(2 * k);
            }
        }
        let mut blossombase: Vec<usize> = (0..n).collect();
        blossombase.extend(std::iter::repeat_n(NONE, n));
        let mut dualvar = vec![maxweight; n];
        dualvar.extend(std::iter::repeat_n(0, n));
        let m = edges.len();
        Self {
            n,
            edges,
            alive,
            endpoint,
            neighbend,
            mate: vec![NONE; n],
            label: vec![0; 2 * n],
            labelend: vec![NONE; 2 * n],
            inblossom: (0..n).collect(),
            blossomparent: vec![NONE; 2 * n],
            blossomchilds: vec![Vec::new(); 2 * n],
            blossombase,
            blossomendps: vec![Vec::new(); 2 * n],
            bestedge: vec![NONE; 2 * n],
            blossombestedges: vec![None; 2 * n],
            unusedblossoms: (n..2 * n).collect(),
            dualvar,
            allowedge: vec![false; m],
            allowed: Vec::new(),
            touched: Vec::new(),
            in_touched: vec![false; 2 * n],
            queue: Vec::new(),
        }
    }

    fn matched_edges(&self) -> Vec<EdgeId> {
        let mut out: Vec<EdgeId> = (0..self.n)
            .filter(|&v| self.mate[v] != NONE && v < self.endpoint[self.mate[v]])
            .map(|v| EdgeId(self.mate[v] / 2))
            .collect();
        out.sort_unstable();
        out
    }

    /// Smallest blossom whose cycle uses edge `k`, if any.
    fn structural_blossom(&self, k: usize) -> Option<usize> {
        let (i, j, _) = self.edges[k];
        if self.blossomparent[i] == NONE || self.blossomparent[j] == NONE {
            return None;
        }
        let is_ancestor_of_i = |b: usize| {
            let mut a = self.blossomparent[i];
            while a != NONE && a != b {
                a = self.blossomparent[a];
            }
            a == b
        };
        let mut b = self.blossomparent[j];
        while b != NONE && !is_ancestor_of_i(b) {
            b = self.blossomparent[b];
        }
        if b != NONE && self.blossomendps[b].iter().any(|p| p / 2 == k) {
            Some(b)
        } else {
            None
        }
    }

    fn unmatch(&mut self, v: usize) {
        let p = self.mate[v];
        if p != NONE {
            self.mate[self.endpoint[p]] = NONE;
            self.mate[v] = NONE;
        }
    }

    /// Expands the top-level blossom `b`, folding its dual into its vertices.
    fn unfold(&mut self, b: usize) {
        debug_assert_eq!(self.blossomparent[b], NONE);
        let z = self.dualvar[b];
        if z != 0 {
            for v in self.leaves(b) {
                self.dualvar[v] += z;
            }
            self.dualvar[b] = 0;
            // only the base can be matched outside b, and that edge is no
            // longer tight
            self.unmatch(self.blossombase[b]);
        }
        let childs = std::mem::take(&mut self.blossomchilds[b]);
        for &s in &childs {
            self.blossomparent[s] = NONE;
            if s < self.n {
                self.inblossom[s] = s;
            } else {
                for v in self.leaves(s) {
                    self.inblossom[v] = s;
                }
            }
        }
        self.blossomendps[b].clear();
        self.blossombase[b] = NONE;
        self.blossombestedges[b] = None;
        self.bestedge[b] = NONE;
        self.label[b] = 0;
        self.labelend[b] = NONE;
        self.unusedblossoms.push(b);
    }

    fn delete_edge(&mut self, k: usize) {
        if let Some(b) = self.structural_blossom(k) {
            let mut chain = vec![b];
            while let Some(&top) = chain.last() {
                match self.blossomparent[top] {
                    NONE => break,
                    p => chain.push(p),
                }
            }
            for &c in chain.iter().rev() {
                self.unfold(c);
            }
        }
        let (i, j, _) = self.edges[k];
        if self.mate[i] != NONE && self.mate[i] / 2 == k {
            self.unmatch(i);
        }
        self.alive[k] = false;
        self.neighbend[i].retain(|p| p / 2 != k);
        self.neighbend[j].retain(|p| p / 2 != k);
    }

    /// Makes `x` free by shifting the matching along its tree path; the
    /// root of the tree becomes matched.
    fn flip_to(&mut self, x: usize) {
        let (mut s, mut p) = (x, NONE);
        loop {
            let bs = self.inblossom[s];
            if bs >= self.n {
                self.augment_blossom(bs, s);
            }
            self.mate[s] = p;
            if self.labelend[bs] == NONE {
                break;
            }
            let t = self.endpoint[self.labelend[bs]];
            let bt = self.inblossom[t];
            s = self.endpoint[self.labelend[bt]];
            let j = self.endpoint[self.labelend[bt] ^ 1];
            if bt >= self.n {
                self.augment_blossom(bt, j);
            }
            self.mate[j] = self.labelend[bt];
            p = self.labelend[bt] ^ 1;
        }
    }

    #[inline]
    fn touch(&mut self, x: usize) {
        if !self.in_touched[x] {
            self.in_touched[x] = true;
            self.touched.push(x);
        }
    }

    #[inline]
    fn allow(&mut self, k: usize) {
        if !self.allowedge[k] {
            self.allowedge[k] = true;
            self.allowed.push(k);
        }
    }

    #[inline]
    fn slack(&self, k: usize) -> i64 {
        let (i, j, w) = self.edges[k];
        self.dualvar[i] + self.dualvar[j] - 2 * w
    }

    fn leaves(&self, b: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![b];
        while let Some(t) = stack.pop() {
            if t < self.n {
                out.push(t);
            } else {
                stack.extend(self.blossomchilds[t].iter().rev());
            }
        }
        out
    }

    fn assign_label(&mut self, w: usize, t: u8, p: usize) {
        let b = self.inblossom[w];
        debug_assert!(self.label[w] == 0 && self.label[b] == 0);
        self.label[w] = t;
        self.label[b] = t;
        self.labelend[w] = p;
        self.labelend[b] = p;
        self.bestedge[w] = NONE;
        self.bestedge[b] = NONE;
        self.touch(w);
        self.touch(b);
        if b >= self.n {
            for v in self.leaves(b) {
                self.touch(v);
            }
        }
        if t == 1 && b < self.n {
            self.queue.push(b);
        } else if t == 1 {
            let leaves = self.leaves(b);
            self.queue.extend(leaves);
        } else if t == 2 {
            let base = self.blossombase[b];
            let mb = self.mate[base];
            debug_assert!(mb != NONE);
            self.assign_label(self.endpoint[mb], 1, mb ^ 1);
        }
    }

    fn scan_blossom(&mut self, mut v: usize, mut w: usize) -> usize {
        let mut path = Vec::new();
        let mut base = NONE;
        while v != NONE || w != NONE {
            let mut b = self.inblossom[v];
            if self.label[b] & 4 != 0 {
                base = self.blossombase[b];
                break;
            }
            debug_assert_eq!(self.label[b], 1);
            path.push(b);
            self.label[b] = 5;
            if self.labelend[b] == NONE {
                v = NONE;
            } else {
                v = self.endpoint[self.labelend[b]];
                b = self.inblossom[v];
                debug_assert_eq!(self.label[b], 2);
                v = self.endpoint[self.labelend[b]];
            }
            if w != NONE {
                std::mem::swap(&mut v, &mut w);
            }
        }
        for b in path {
            self.label[b] = 1;
        }
        base
    }

    fn add_blossom(&mut self, base: usize, k: usize) {
        let (mut v, mut w, _) = self.edges[k];
        let bb = self.inblossom[base];
        let mut bv = self.inblossom[v];
        let mut bw = self.inblossom[w];
        let b = self.unusedblossoms.pop().expect("free blossom slot");
        self.blossombase[b] = base;
        self.blossomparent[b] = NONE;
        self.blossomparent[bb] = b;
        let mut path = Vec::new();
        let mut endps = Vec::new();
        while bv != bb {
            self.blossomparent[bv] = b;
            path.push(bv);
            endps.push(self.labelend[bv]);
            v = self.endpoint[self.labelend[bv]];
            bv = self.inblossom[v];
        }
        path.push(bb);
        path.reverse();
        endps.reverse();
        endps.push(2 * k);
        while bw != bb {
            self.blossomparent[bw] = b;
            path.push(bw);
            endps.push(self.labelend[bw] ^ 1);
            w = self.endpoint[self.labelend[bw]];
            bw = self.inblossom[w];
        }
        debug_assert_eq!(self.label[bb], 1);
        self.touch(b);
        self.label[b] = 1;
        self.labelend[b] = self.labelend[bb];
        self.dualvar[b] = 0;
        self.blossomchilds[b] = path.clone();
        self.blossomendps[b] = endps;
        for v in self.leaves(b) {
            if self.label[self.inblossom[v]] == 2 {
                self.queue.push(v);
            }
            self.inblossom[v] = b;
        }
        let mut bestedgeto = vec![NONE; 2 * self.n];
        for &bv in &path {
            let lists: Vec<Vec<usize>> = match self.blossombestedges[bv].take() {
                Some(list) => vec![list],
                None => self
                    .leaves(bv)
                    .into_iter()
                    .map(|v| self.neighbend[v].iter().map(|p| p / 2).collect())
                    .collect(),
            };
            for list in lists {
                for k in list {
                    let (mut i, mut j, _) = self.edges[k];
                    if self.inblossom[j] == b {
                        std::mem::swap(&mut i, &mut j);
                    }
                    let _ = i;
                    let bj = self.inblossom[j];
                    if bj != b
                        && self.label[bj] == 1
                        && (bestedgeto[bj] == NONE || self.slack(k) < self.slack(bestedgeto[bj]))
                    {
                        bestedgeto[bj] = k;
                    }
                }
            }
            self.bestedge[bv] = NONE;
        }
        let list: Vec<usize> = bestedgeto.into_iter().filter(|&k| k != NONE).collect();
        let mut best = NONE;
        for &k in &list {
            if best == NONE || self.slack(k) < self.slack(best) {
                best = k;
            }
        }
        self.blossombestedges[b] = Some(list);
        self.bestedge[b] = best;
    }

    fn expand_blossom(&mut self, b: usize, endstage: bool) {
        let childs = self.blossomchilds[b].clone();
        for &s in &childs {
            self.blossomparent[s] = NONE;
            if s < self.n {
                self.inblossom[s] = s;
            } else if endstage && self.dualvar[s] == 0 {
                self.expand_blossom(s, endstage);
            } else {
                for v in self.leaves(s) {
                    self.inblossom[v] = s;
                }
            }
        }
        if !endstage && self.label[b] == 2 {
            let len = childs.len() as isize;
            let entrychild = self.inblossom[self.endpoint[self.labelend[b] ^ 1]];
            let mut j = childs.iter().position(|&c| c == entrychild).unwrap() as isize;
            let (jstep, endptrick): (isize, usize) = if j & 1 != 0 {
                j -= len;
                (1, 0)
            } else {
                (-1, 1)
            };
            let at = |j: isize| -> usize { (j.rem_euclid(len)) as usize };
            let mut p = self.labelend[b];
            while j != 0 {
                self.label[self.endpoint[p ^ 1]] = 0;
                let ep = self.blossomendps[b][at(j - endptrick as isize)];
                self.label[self.endpoint[ep ^ endptrick ^ 1]] = 0;
                self.assign_label(self.endpoint[p ^ 1], 2, p);
                self.allow(ep / 2);
                j += jstep;
                p = self.blossomendps[b][at(j - endptrick as isize)] ^ endptrick;
                self.allow(p / 2);
                j += jstep;
            }
            let bv = childs[at(j)];
            let ep1 = self.endpoint[p ^ 1];
            self.touch(bv);
            self.label[ep1] = 2;
            self.label[bv] = 2;
            self.labelend[ep1] = p;
            self.labelend[bv] = p;
            self.bestedge[bv] = NONE;
            j += jstep;
            while childs[at(j)] != entrychild {
                let bv = childs[at(j)];
                if self.label[bv] == 1 {
                    j += jstep;
                    continue;
                }
                let reached = self.leaves(bv).into_iter().find(|&v| self.label[v] != 0);
                if let Some(v) = reached {
                    debug_assert_eq!(self.label[v], 2);
                    debug_assert_eq!(self.inblossom[v], bv);
                    self.label[v] = 0;
                    let mb = self.mate[self.blossombase[bv]];
                    self.label[self.endpoint[mb]] = 0;
                    self.assign_label(v, 2, self.labelend[v]);
                }
                j += jstep;
            }
        }
        self.touch(b);
        self.label[b] = u8::MAX;
        self.labelend[b] = NONE;
        self.blossomchilds[b].clear();
        self.blossomendps[b].clear();
        self.blossombase[b] = NONE;
        self.blossombestedges[b] = None;
        self.bestedge[b] = NONE;
        self.unusedblossoms.push(b);
    }

    fn augment_blossom(&mut self, b: usize, v: usize) {
        let mut t = v;
        while self.blossomparent[t] != b {
            t = self.blossomparent[t];
        }
        if t >= self.n {
            self.augment_blossom(t, v);
        }
        let len = self.blossomchilds[b].len() as isize;
        let i = self.blossomchilds[b].iter().position(|&c| c == t).unwrap();
        let mut j = i as isize;
        let (jstep, endptrick): (isize, usize) = if j & 1 != 0 {
            j -= len;
            (1, 0)
        } else {
            (-1, 1)
        };
        let at = |j: isize| -> usize { (j.rem_euclid(len)) as usize };
        while j != 0 {
            j += jstep;
            let t = self.blossomchilds[b][at(j)];
            let p = self.blossomendps[b][at(j - endptrick as isize)] ^ endptrick;
            if t >= self.n {
                self.augment_blossom(t, self.endpoint[p]);
            }
            j += jstep;
            let t = self.blossomchilds[b][at(j)];
            if t >= self.n {
                self.augment_blossom(t, self.endpoint[p ^ 1]);
            }
            self.mate[self.endpoint[p]] = p ^ 1;
            self.mate[self.endpoint[p ^ 1]] = p;
        }
        self.blossomchilds[b].rotate_left(i);
        self.blossomendps[b].rotate_left(i);
        self.blossombase[b] = self.blossombase[self.blossomchilds[b][0]];
        debug_assert_eq!(self.blossombase[b], v);
    }

    fn augment_matching(&mut self, k: usize) {
        let (v, w, _) = self.edges[k];
        for (mut s, mut p) in [(v, 2 * k + 1), (w, 2 * k)] {
            loop {
                let bs = self.inblossom[s];
                debug_assert_eq!(self.label[bs], 1);
                if bs >= self.n {
                    self.augment_blossom(bs, s);
                }
                self.mate[s] = p;
                if self.labelend[bs] == NONE {
                    break;
                }
                let t = self.endpoint[self.labelend[bs]];
                let bt = self.inblossom[t];
                debug_assert_eq!(self.label[bt], 2);
                s = self.endpoint[self.labelend[bt]];
                let j = self.endpoint[self.labelend[bt] ^ 1];
                debug_assert_eq!(self.blossombase[bt], t);
                if bt >= self.n {
                    self.augment_blossom(bt, j);
                }
                self.mate[j] = self.labelend[bt];
                p = self.labelend[bt] ^ 1;
            }
        }
    }

    /// Runs stages until no free vertex has a positive dual. Every stage
    /// roots its trees at such vertices only and ends with an augmentation
    /// or with a vertex of some tree reaching dual zero, after which that
    /// vertex becomes free instead of the root.
    fn solve(&mut self) {
        let n = self.n;
        loop {
            for v in 0..n {
                if self.mate[v] == NONE && self.inblossom[v] == v && self.neighbend[v].is_empty() {
                    self.dualvar[v] = 0;
                }
            }
            // S-S slacks stay even only if all roots share the dual's parity;
            // free vertices of the other parity wait, but can still end an
            // augmenting path
            let Some(first) = (0..n).find(|&v| self.mate[v] == NONE && self.dualvar[v] > 0) else {
                break;
            };
            let parity = self.dualvar[first] & 1;
            for x in std::mem::take(&mut self.touched) {
                self.label[x] = 0;
                self.bestedge[x] = NONE;
                if x >= n {
                    self.blossombestedges[x] = None;
                }
                self.in_touched[x] = false;
            }
            for k in self.allowed.drain(..) {
                self.allowedge[k] = false;
            }
            self.queue.clear();
            for v in 0..n {
                if self.mate[v] == NONE
                    && self.dualvar[v] > 0
                    && self.dualvar[v] & 1 == parity
                    && self.label[self.inblossom[v]] == 0
                {
                    self.assign_label(v, 1, NONE);
                }
            }
            let mut augmented = false;
            loop {
                while let Some(v) = self.queue.pop() {
                    if augmented {
                        break;
                    }
                    debug_assert_eq!(self.label[self.inblossom[v]], 1);
                    for idx in 0..self.neighbend[v].len() {
                        let p = self.neighbend[v][idx];
                        let k = p / 2;
                        let w = self.endpoint[p];
                        if self.inblossom[v] == self.inblossom[w] {
                            continue;
                        }
                        let mut kslack = 0;
                        if !self.allowedge[k] {
                            kslack = self.slack(k);
                            if kslack <= 0 {
                                self.allow(k);
                            }
                        }
                        if self.allowedge[k] {
                            let bw = self.inblossom[w];
                            if self.label[bw] == 0 && self.mate[self.blossombase[bw]] == NONE {
                                // free vertex that is not a root
                                self.assign_label(w, 1, NONE);
                                self.augment_matching(k);
                                augmented = true;
                                break;
                            } else if self.label[bw] == 0 {
                                self.assign_label(w, 2, p ^ 1);
                            } else if self.label[self.inblossom[w]] == 1 {
                                let base = self.scan_blossom(v, w);
                                if base != NONE {
                                    self.add_blossom(base, k);
                                } else {
                                    self.augment_matching(k);
                                    augmented = true;
                                    break;
                                }
                            } else if self.label[w] == 0 {
                                debug_assert_eq!(self.label[self.inblossom[w]], 2);
                                self.label[w] = 2;
                                self.labelend[w] = p ^ 1;
                            }
                        } else if self.label[self.inblossom[w]] == 1 {
                            let b = self.inblossom[v];
                            if self.bestedge[b] == NONE || kslack < self.slack(self.bestedge[b]) {
                                self.bestedge[b] = k;
                            }
                        } else if self.label[w] == 0
                            && (self.bestedge[w] == NONE || kslack < self.slack(self.bestedge[w]))
                        {
                            self.bestedge[w] = k;
                            self.touch(w);
                        }
                    }
                }
                if augmented {
                    break;
                }

                // dual adjustment
                let mut deltatype = 1;
                let mut zero = NONE;
                let mut delta = i64::MAX;
                let mut deltaedge = NONE;
                let mut deltablossom = NONE;
                for &x in &self.touched {
                    if x < n {
                        let top = self.label[self.inblossom[x]];
                        if top == 1 && self.dualvar[x] < delta {
                            delta = self.dualvar[x];
                            zero = x;
                        }
                    }
                }
                for &x in &self.touched {
                    if x < n && self.label[self.inblossom[x]] == 0 && self.bestedge[x] != NONE {
                        let d = self.slack(self.bestedge[x]);
                        if d < delta {
                            delta = d;
                            deltatype = 2;
                            deltaedge = self.bestedge[x];
                        }
                    }
                }
                for &x in &self.touched {
                    if self.blossomparent[x] == NONE
                        && self.label[x] == 1
                        && self.bestedge[x] != NONE
                        && (x < n || self.blossombase[x] != NONE)
                    {
                        let kslack = self.slack(self.bestedge[x]);
                        debug_assert_eq!(kslack % 2, 0);
                        let d = kslack / 2;
                        if d < delta {
                            delta = d;
                            deltatype = 3;
                            deltaedge = self.bestedge[x];
                        }
                    }
                }
                for &x in &self.touched {
                    if x >= n
                        && self.blossombase[x] != NONE
                        && self.blossomparent[x] == NONE
                        && self.label[x] == 2
                        && self.dualvar[x] < delta
                    {
                        delta = self.dualvar[x];
                        deltatype = 4;
                        deltablossom = x;
                    }
                }
                for i in 0..self.touched.len() {
                    let x = self.touched[i];
                    if x < n {
                        match self.label[self.inblossom[x]] {
                            1 => self.dualvar[x] -= delta,
                            2 => self.dualvar[x] += delta,
                            _ => {}
                        }
                    } else if self.blossombase[x] != NONE && self.blossomparent[x] == NONE {
                        match self.label[x] {
                            1 => self.dualvar[x] += delta,
                            2 => self.dualvar[x] -= delta,
                            _ => {}
                        }
                    }
                }
                match deltatype {
                    1 => {
                        self.flip_to(zero);
                        augmented = true;
                        break;
                    }
                    2 => {
                        self.allow(deltaedge);
                        let (mut i, j, _) = self.edges[deltaedge];
                        if self.label[self.inblossom[i]] == 0 {
                            i = j;
                        }
                        debug_assert_eq!(self.label[self.inblossom[i]], 1);
                        self.queue.push(i);
                    }
                    3 => {
                        self.allow(deltaedge);
                        let (i, _, _) = self.edges[deltaedge];
                        debug_assert_eq!(self.label[self.inblossom[i]], 1);
                        self.queue.push(i);
                    }
                    _ => self.expand_blossom(deltablossom, false),
                }
            }
            debug_assert!(augmented);
            for b in self.touched.clone() {
                if b >= n
                    && self.blossomparent[b] == NONE
                    && self.blossombase[b] != NONE
                    && self.label[b] == 1
                    && self.dualvar[b] == 0
                {
                    self.expand_blossom(b, true);
                }
            }
        }
    }
}
