//! Left-right planarity criterion (de Fraysseix-Rosenstiehl, in the
//! formulation of Brandes): orient the graph by DFS, order outgoing
//! edges by nesting depth, then maintain a stack of conflict pairs of
//! back-edge intervals; the graph is planar exactly when no merge step
//! finds both sides of a pair conflicting.

use alloc::vec;
use alloc::vec::Vec;

use super::Graph;

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Interval {
    low: usize,
    high: usize,
}

impl Interval {
    const EMPTY: Interval = Interval {
        low: NONE,
        high: NONE,
    };

    fn is_empty(&self) -> bool {
        self.low == NONE && self.high == NONE
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct ConflictPair {
    l: Interval,
    r: Interval,
}

struct Lr {
    /// adjacency as (neighbor, undirected edge id)
    adj: Vec<Vec<(usize, usize)>>,
    /// oriented edge endpoints, tail -> head; set when first traversed
    tail: Vec<usize>,
    head: Vec<usize>,
    oriented: Vec<bool>,
    height: Vec<usize>,
    parent_edge: Vec<usize>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting: Vec<usize>,
    // testing phase
    ordered_adj: Vec<Vec<usize>>,
    stack: Vec<ConflictPair>,
    stack_bottom: Vec<usize>,
    lowpt_edge: Vec<usize>,
    reference: Vec<usize>,
}

impl Lr {
    fn new(g: &Graph) -> Lr {
        let v = g.order();
        let mut adj = vec![Vec::new(); v];
        let mut edge_count = 0;
        for a in 0..v {
            for b in a + 1..v {
                if g.has_edge(a, b) {
                    adj[a].push((b, edge_count));
                    adj[b].push((a, edge_count));
                    edge_count += 1;
                }
            }
        }
        Lr {
            adj,
            tail: vec![NONE; edge_count],
            head: vec![NONE; edge_count],
            oriented: vec![false; edge_count],
            height: vec![NONE; v],
            parent_edge: vec![NONE; v],
            lowpt: vec![0; edge_count],
            lowpt2: vec![0; edge_count],
            nesting: vec![0; edge_count],
            ordered_adj: vec![Vec::new(); v],
            stack: Vec::new(),
            stack_bottom: vec![0; edge_count],
            lowpt_edge: vec![NONE; edge_count],
            reference: vec![NONE; edge_count],
        }
    }

    /// DFS orientation: heights, lowpoints and nesting depths.
    fn dfs1(&mut self, root: usize) {
        let mut stack = vec![(root, 0usize)];
        while let Some(&(vtx, idx)) = stack.last() {
            if idx >= self.adj[vtx].len() {
                stack.pop();
                continue;
            }
            stack.last_mut().expect("non-empty").1 += 1;
            let (w, eid) = self.adj[vtx][idx];
            if self.oriented[eid] {
                continue;
            }
            self.oriented[eid] = true;
            self.tail[eid] = vtx;
            self.head[eid] = w;
            self.lowpt[eid] = self.height[vtx];
            self.lowpt2[eid] = self.height[vtx];
            if self.height[w] == NONE {
                // tree edge
                self.parent_edge[w] = eid;
                self.height[w] = self.height[vtx] + 1;
                stack.push((w, 0));
            } else {
                // back edge
                self.lowpt[eid] = self.height[w];
                self.finish_edge(vtx, eid);
            }
        }
    }

    /// Nesting depth of `eid` and lowpoint propagation to the parent
    /// edge of `vtx`; called when the edge's exploration is complete.
    fn finish_edge(&mut self, vtx: usize, eid: usize) {
        self.nesting[eid] = 2 * self.lowpt[eid];
        if self.lowpt2[eid] < self.height[vtx] {
            self.nesting[eid] += 1; // chordal
        }
        let pe = self.parent_edge[vtx];
        if pe != NONE {
            if self.lowpt[eid] < self.lowpt[pe] {
                self.lowpt2[pe] = self.lowpt[pe].min(self.lowpt2[eid]);
                self.lowpt[pe] = self.lowpt[eid];
            } else if self.lowpt[eid] > self.lowpt[pe] {
                self.lowpt2[pe] = self.lowpt2[pe].min(self.lowpt[eid]);
            } else {
                self.lowpt2[pe] = self.lowpt2[pe].min(self.lowpt2[eid]);
            }
        }
    }

    fn lowest(&self, p: &ConflictPair) -> usize {
        if p.l.is_empty() {
            return self.lowpt[p.r.low];
        }
        if p.r.is_empty() {
            return self.lowpt[p.l.low];
        }
        self.lowpt[p.l.low].min(self.lowpt[p.r.low])
    }

    fn conflicting(&self, i: Interval, eid: usize) -> bool {
        !i.is_empty() && self.lowpt[i.high] > self.lowpt[eid]
    }

    /// Integrates the return edges of `ei` into the conflict-pair
    /// stack; false means a crossing is unavoidable.
    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = ConflictPair {
            l: Interval::EMPTY,
            r: Interval::EMPTY,
        };
        // merge return edges of ei into p.r
        loop {
            let mut q = self.stack.pop().expect("stack bottom reached unexpectedly");
            if !q.l.is_empty() {
                core::mem::swap(&mut q.l, &mut q.r);
            }
            if !q.l.is_empty() {
                return false;
            }
            if self.lowpt[q.r.low] > self.lowpt[e] {
                // merge intervals
                if p.r.is_empty() {
                    p.r.high = q.r.high;
                } else {
                    self.reference[p.r.low] = q.r.high;
                }
                p.r.low = q.r.low;
            } else {
                // align
                self.reference[q.r.low] = self.lowpt_edge[e];
            }
            if self.stack.len() == self.stack_bottom[ei] {
                break;
            }
        }
        // merge the conflicting return edges of earlier siblings into p.l
        while {
            let top = self.stack.last().expect("non-empty stack");
            self.conflicting(top.l, ei) || self.conflicting(top.r, ei)
        } {
            let mut q = self.stack.pop().expect("non-empty stack");
            if self.conflicting(q.r, ei) {
                core::mem::swap(&mut q.l, &mut q.r);
            }
            if self.conflicting(q.r, ei) {
                return false;
            }
            // merge interval below lowpt(ei) into p.r
            self.reference[p.r.low] = q.r.high;
            if q.r.low != NONE {
                p.r.low = q.r.low;
            }
            if p.l.is_empty() {
                p.l.high = q.l.high;
            } else {
                self.reference[p.l.low] = q.l.high;
            }
            p.l.low = q.l.low;
        }
        if !(p.l.is_empty() && p.r.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    /// Removes back edges ending at the parent `u` of the finished
    /// subtree.
    fn trim_back_edges(&mut self, u: usize) {
        // drop entire conflict pairs
        while let Some(top) = self.stack.last() {
            if self.lowest(top) == self.height[u] {
                self.stack.pop();
            } else {
                break;
            }
        }
        if let Some(mut p) = self.stack.pop() {
            // trim left interval
            while p.l.high != NONE && self.head[p.l.high] == u {
                p.l.high = self.reference[p.l.high];
            }
            if p.l.high == NONE && p.l.low != NONE {
                self.reference[p.l.low] = p.r.low;
                p.l.low = NONE;
            }
            // trim right interval
            while p.r.high != NONE && self.head[p.r.high] == u {
                p.r.high = self.reference[p.r.high];
            }
            if p.r.high == NONE && p.r.low != NONE {
                self.reference[p.r.low] = p.l.low;
                p.r.low = NONE;
            }
            self.stack.push(p);
        }
    }

    /// Testing phase over the nesting-ordered DFS tree.
    fn dfs2(&mut self, root: usize) -> bool {
        // iterative DFS with an explicit child cursor
        let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
        while let Some(&(vtx, idx)) = stack.last() {
            let e = self.parent_edge[vtx];
            if idx < self.ordered_adj[vtx].len() {
                stack.last_mut().expect("non-empty").1 += 1;
                let ei = self.ordered_adj[vtx][idx];
                // conflict-pair stack height at entry
                self.stack_bottom[ei] = self.stack.len();
                let w = self.head[ei];
                if ei == self.parent_edge[w] {
                    // tree edge: descend, postprocessing happens on exit
                    stack.push((w, 0));
                } else {
                    // back edge
                    self.lowpt_edge[ei] = ei;
                    self.stack.push(ConflictPair {
                        l: Interval::EMPTY,
                        r: Interval { low: ei, high: ei },
                    });
                    if !self.integrate(vtx, ei, e) {
                        return false;
                    }
                }
            } else {
                stack.pop();
                if e != NONE {
                    let u = self.tail[e];
                    self.trim_back_edges(u);
                    if self.lowpt[e] < self.height[u] {
                        // e has a return edge: remember the reference
                        let top = self.stack.last().expect("non-empty");
                        let hl = top.l.high;
                        let hr = top.r.high;
                        self.reference[e] = if hl != NONE && (hr == NONE || self.lowpt[hl] > self.lowpt[hr])
                        {
                            hl
                        } else {
                            hr
                        };
                    }
                    // integrate this finished tree edge into its parent
                    let parent = self.tail[e];
                    if !self.integrate(parent, e, self.parent_edge[parent]) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Shared tail of the dfs2 loop body: fold the completed edge `ei`
    /// out of vertex `vtx` (with parent edge `e`) into the constraints.
    fn integrate(&mut self, vtx: usize, ei: usize, e: usize) -> bool {
        if self.lowpt[ei] < self.height[vtx] {
            // ei has a return edge
            if Some(&ei) == self.ordered_adj[vtx].first() {
                if e != NONE {
                    self.lowpt_edge[e] = self.lowpt_edge[ei];
                }
            } else if !self.add_constraints(ei, e) {
                return false;
            }
        }
        true
    }
}

/// Exact planarity via the left-right criterion, with the edge-count
/// prefilter `e <= 3v - 6`.
pub fn is_planar(g: &Graph) -> bool {
    let v = g.order();
    if v <= 4 {
        return true;
    }
    if g.edge_count() > 3 * v - 6 {
        return false;
    }
    let mut lr = Lr::new(g);
    for root in 0..v {
        if lr.height[root] == NONE {
            lr.height[root] = 0;
            lr.dfs1(root);
        }
    }
    // tree edges fold their lowpoints into the parent when the child
    // subtree finishes; dfs1 above is iterative, so do that fold now in
    // reverse height order
    // (back edges were folded inline)
    let mut edges_by_child_height: Vec<usize> = (0..lr.tail.len())
        .filter(|&e| lr.parent_edge[lr.head[e]] == e)
        .collect();
    edges_by_child_height.sort_unstable_by_key(|&e| core::cmp::Reverse(lr.height[lr.head[e]]));
    for e in edges_by_child_height {
        let vtx = lr.tail[e];
        lr.finish_edge(vtx, e);
    }

    // order adjacency by nesting depth (stable: ties keep edge order)
    for vtx in 0..v {
        let mut out: Vec<usize> = (0..lr.tail.len()).filter(|&e| lr.tail[e] == vtx).collect();
        out.sort_by_key(|&e| (lr.nesting[e], e));
        lr.ordered_adj[vtx] = out;
    }

    for root in 0..v {
        if lr.parent_edge[root] == NONE && !lr.dfs2(root) {
            return false;
        }
    }
    true
}
