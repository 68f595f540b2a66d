//! Simple undirected graphs on labeled vertices, stored as packed adjacency
//! rows: bit j of `row(i)` is set iff the edge {i,j} is present. The diagonal
//! is always zero and rows stay symmetric under every mutation.

use std::fmt;

/// Hard cap on vertex count so one adjacency row always fits in a `u64`.
pub const MAX_VERTICES: usize = 64;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Graph {
    n: usize,
    rows: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        assert!(n >= 1 && n <= MAX_VERTICES, "vertex count {n} out of range");
        Graph {
            n,
            rows: vec![0; n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::empty(n);
        for &(i, j) in edges {
            g.set_edge(i, j, true);
        }
        g
    }

    /// Path 0-1-...-(n-1).
    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for i in 0..n.saturating_sub(1) {
            g.set_edge(i, i + 1, true);
        }
        g
    }

    /// Complete graph K_n.
    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for i in 0..n {
            for j in i + 1..n {
                g.set_edge(i, j, true);
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Adjacency row of vertex `i` as a bitmask (bit j = edge {i,j}).
    pub fn row(&self, i: usize) -> u64 {
        self.rows[i]
    }

    /// Open neighborhood of `v` as a bitmask; `v` itself is never included.
    pub fn neighbors(&self, v: usize) -> u64 {
        self.rows[v]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    pub fn set_edge(&mut self, i: usize, j: usize, present: bool) {
        assert!(i < self.n && j < self.n && i != j, "bad edge ({i},{j})");
        if present {
            self.rows[i] |= 1 << j;
            self.rows[j] |= 1 << i;
        } else {
            self.rows[i] &= !(1 << j);
            self.rows[j] &= !(1 << i);
        }
    }

    pub fn toggle_edge(&mut self, i: usize, j: usize) {
        assert!(i < self.n && j < self.n && i != j, "bad edge ({i},{j})");
        self.rows[i] ^= 1 << j;
        self.rows[j] ^= 1 << i;
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges as (i, j) pairs with i < j, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for i in 0..self.n {
            let mut high = self.rows[i] >> (i + 1) << (i + 1);
            while high != 0 {
                let j = high.trailing_zeros() as usize;
                out.push((i, j));
                high &= high - 1;
            }
        }
        out
    }

    /// Relabels vertices: vertex `i` of `self` becomes `perm[i]` in the result.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::empty(self.n);
        for (i, j) in self.edges() {
            g.set_edge(perm[i], perm[j], true);
        }
        g
    }
}

impl fmt::Display for Graph {
    /// Comma-separated edge list; digit pairs ("02,13,23") while vertex labels
    /// are single digits, "i-j" pairs beyond that.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, j) in self.edges() {
            if !first {
                write!(f, ",")?;
            }
            first = false;
            if self.n <= 10 {
                write!(f, "{i}{j}")?;
            } else {
                write!(f, "{i}-{j}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, [{}])", self.n, self)
    }
}
