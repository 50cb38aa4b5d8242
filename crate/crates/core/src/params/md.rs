use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Vertex, WeightedGraph};

/// Node of a modular decomposition tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MdNode {
    Leaf(Vertex),
    /// Substitution `quotient(children...)`: quotient vertex `i` is replaced
    /// by the graph of `children[i]`.
    Inner {
        quotient: WeightedGraph,
        children: Vec<usize>,
    },
}

/// Rooted ordered tree of substitutions. Leaves carry the vertex of the
/// represented graph they stand for, so evaluation reproduces the graph
/// itself and not just an isomorphic copy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularDecomposition {
    nodes: Vec<MdNode>,
    root: usize,
}

impl ModularDecomposition {
    /// Builds a tree from an arena. Checks arity and quotient sizes only;
    /// use [`ModularDecomposition::represents`] to check it against a graph.
    pub fn from_nodes(nodes: Vec<MdNode>, root: usize) -> Result<Self> {
        if root >= nodes.len() {
            return Err(Error::precondition("root index out of range"));
        }
        for (i, node) in nodes.iter().enumerate() {
            if let MdNode::Inner { quotient, children } = node {
                if children.len() < 2 {
                    return Err(Error::precondition(format!(
                        "inner node {i} has fewer than 2 children"
                    )));
                }
                if quotient.vertex_count() != children.len() {
                    return Err(Error::precondition(format!(
                        "inner node {i}: quotient has {} vertices for {} children",
                        quotient.vertex_count(),
                        children.len()
                    )));
                }
                if children.iter().any(|&c| c >= nodes.len()) {
                    return Err(Error::precondition(format!(
                        "inner node {i} has a dangling child"
                    )));
                }
            }
        }
        let md = ModularDecomposition { nodes, root };
        // every node reachable exactly once
        let mut seen = vec![false; md.nodes.len()];
        let mut stack = vec![root];
        while let Some(t) = stack.pop() {
            if std::mem::replace(&mut seen[t], true) {
                return Err(Error::precondition("decomposition is not a tree"));
            }
            if let MdNode::Inner { children, .. } = &md.nodes[t] {
                stack.extend(children.iter().copied());
            }
        }
        Ok(md)
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn node(&self, t: usize) -> &MdNode {
        &self.nodes[t]
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Maximum number of children of an inner node (0 for a single leaf).
    pub fn width(&self) -> usize {
        self.nodes
            .iter()
            .map(|n| match n {
                MdNode::Leaf(_) => 0,
                MdNode::Inner { children, .. } => children.len(),
            })
            .max()
            .unwrap_or(0)
    }

    /// Nodes in an order where every child precedes its parent.
    pub fn post_order(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![(self.root, false)];
        while let Some((t, expanded)) = stack.pop() {
            if expanded {
                order.push(t);
                continue;
            }
            stack.push((t, true));
            if let MdNode::Inner { children, .. } = &self.nodes[t] {
                for &c in children.iter().rev() {
                    stack.push((c, false));
                }
            }
        }
        order
    }

    /// Sorted vertices represented by the subtree at `t`.
    pub fn vertices_under(&self, t: usize) -> Vec<Vertex> {
        let mut out = Vec::new();
        let mut stack = vec![t];
        while let Some(x) = stack.pop() {
            match &self.nodes[x] {
                MdNode::Leaf(v) => out.push(*v),
                MdNode::Inner { children, .. } => stack.extend(children.iter().copied()),
            }
        }
        out.sort_unstable();
        out
    }

    /// Sorted edge list of the represented graph.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut edges = Vec::new();
        for t in 0..self.nodes.len() {
            if let MdNode::Inner { quotient, children } = &self.nodes[t] {
                let parts: Vec<Vec<Vertex>> =
                    children.iter().map(|&c| self.vertices_under(c)).collect();
                for (i, j) in quotient.edges() {
                    for &a in &parts[i] {
                        for &b in &parts[j] {
                            edges.push((a.min(b), a.max(b)));
                        }
                    }
                }
            }
        }
        edges.sort_unstable();
        edges
    }

    /// True if the tree evaluates to exactly `g` (same vertex ids, same edges).
    pub fn represents(&self, g: &WeightedGraph) -> bool {
        let root_vertices = self.vertices_under(self.root);
        let expected: Vec<Vertex> = g.vertices().collect();
        if root_vertices != expected {
            return false;
        }
        let ours = self.edges();
        ours.windows(2).all(|w| w[0] != w[1]) && ours.iter().copied().eq(g.edges())
    }

    /// Text form: leaves `v<id>`, inner nodes `q<c>[i-j,...](child,...)` with
    /// quotient edges over 0-based child positions.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.write_node(self.root, &mut out);
        out
    }

    fn write_node(&self, t: usize, out: &mut String) {
        match &self.nodes[t] {
            MdNode::Leaf(v) => {
                let _ = write!(out, "v{v}");
            }
            MdNode::Inner { quotient, children } => {
                let edges: Vec<String> =
                    quotient.edges().map(|(i, j)| format!("{i}-{j}")).collect();
                let _ = write!(out, "q{}[{}](", children.len(), edges.join(","));
                for (i, &c) in children.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    self.write_node(c, out);
                }
                out.push(')');
            }
        }
    }

    /// Parses [`ModularDecomposition::to_text`] output. Whitespace is ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut p = Parser {
            bytes: text.as_bytes(),
            pos: 0,
            nodes: Vec::new(),
        };
        let root = p.node()?;
        p.skip_ws();
        if p.pos != p.bytes.len() {
            return Err(Error::parse_offset(
                p.pos,
                "trailing input after decomposition",
            ));
        }
        ModularDecomposition::from_nodes(p.nodes, root)
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    nodes: Vec<MdNode>,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::parse_offset(
                self.pos,
                format!("expected {:?}", c as char),
            ))
        }
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::parse_offset(start, "expected a number"))
    }

    fn node(&mut self) -> Result<usize> {
        let at = self.pos;
        match self.peek() {
            Some(b'v') => {
                self.pos += 1;
                let v = self.number()?;
                self.nodes.push(MdNode::Leaf(v));
                Ok(self.nodes.len() - 1)
            }
            Some(b'q') => {
                self.pos += 1;
                let c = self.number()?;
                self.expect(b'[')?;
                let mut edges = Vec::new();
                if self.peek() != Some(b']') {
                    loop {
                        let edge_at = self.pos;
                        let i = self.number()?;
                        self.expect(b'-')?;
                        let j = self.number()?;
                        if i >= c || j >= c || i == j {
                            return Err(Error::parse_offset(
                                edge_at,
                                format!("bad quotient edge {i}-{j}"),
                            ));
                        }
                        edges.push((i.min(j), i.max(j)));
                        if self.peek() == Some(b',') {
                            self.pos += 1;
                        } else {
                            break;
                        }
                    }
                }
                self.expect(b']')?;
                self.expect(b'(')?;
                let mut children = Vec::new();
                loop {
                    children.push(self.node()?);
                    if self.peek() == Some(b',') {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                self.expect(b')')?;
                if children.len() != c {
                    return Err(Error::parse_offset(
                        at,
                        format!("q{c} has {} children", children.len()),
                    ));
                }
                let quotient = WeightedGraph::unit(c, &edges)
                    .map_err(|e| Error::parse_offset(at, e.to_string()))?;
                self.nodes.push(MdNode::Inner { quotient, children });
                Ok(self.nodes.len() - 1)
            }
            _ => Err(Error::parse_offset(
                self.pos,
                "expected `v<id>` or `q<c>[...](...)`",
            )),
        }
    }
}

/// Canonical modular decomposition, whose width is the modular-width.
///
/// Parallel and series nodes split along components of the graph or of its
/// complement; otherwise the maximal proper modules (found by closing every
/// pair `{v, u}` under splitters) partition the vertex set.
pub fn modular_decomposition(g: &WeightedGraph) -> Result<ModularDecomposition> {
    if g.vertex_count() == 0 {
        return Err(Error::precondition(
            "modular decomposition needs at least one vertex",
        ));
    }
    let mut nodes = Vec::new();
    let all: Vec<Vertex> = g.vertices().collect();
    let root = decompose(g, &all, &mut nodes);
    ModularDecomposition::from_nodes(nodes, root)
}

fn decompose(g: &WeightedGraph, set: &[Vertex], nodes: &mut Vec<MdNode>) -> usize {
    if set.len() == 1 {
        nodes.push(MdNode::Leaf(set[0]));
        return nodes.len() - 1;
    }
    let k = set.len();
    let adj: Vec<Vec<bool>> = set
        .iter()
        .map(|&a| set.iter().map(|&b| g.has_edge(a, b)).collect())
        .collect();

    let (parts, quotient_edges) = if let Some(parts) = split_components(&adj, false) {
        (parts, Vec::new())
    } else if let Some(parts) = split_components(&adj, true) {
        let c = parts.len();
        let edges = (0..c)
            .flat_map(|i| (i + 1..c).map(move |j| (i, j)))
            .collect();
        (parts, edges)
    } else {
        let parts = maximal_modules(&adj);
        let c = parts.len();
        let mut edges = Vec::new();
        for i in 0..c {
            for j in i + 1..c {
                if adj[parts[i][0]][parts[j][0]] {
                    edges.push((i, j));
                }
            }
        }
        (parts, edges)
    };
    debug_assert!(parts.len() >= 2 && parts.iter().map(Vec::len).sum::<usize>() == k);
    let quotient = WeightedGraph::unit(parts.len(), &quotient_edges).expect("quotient is simple");
    let children = parts
        .iter()
        .map(|p| {
            let sub: Vec<Vertex> = p.iter().map(|&i| set[i]).collect();
            decompose(g, &sub, nodes)
        })
        .collect();
    nodes.push(MdNode::Inner { quotient, children });
    nodes.len() - 1
}

/// Components of the local graph (or its complement), if there are several.
fn split_components(adj: &[Vec<bool>], complement: bool) -> Option<Vec<Vec<usize>>> {
    let k = adj.len();
    let mut comp = vec![usize::MAX; k];
    let mut parts = Vec::new();
    for s in 0..k {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = parts.len();
        comp[s] = id;
        let mut stack = vec![s];
        let mut members = Vec::new();
        while let Some(x) = stack.pop() {
            members.push(x);
            for y in 0..k {
                if y != x && comp[y] == usize::MAX && adj[x][y] != complement {
                    comp[y] = id;
                    stack.push(y);
                }
            }
        }
        members.sort_unstable();
        parts.push(members);
    }
    (parts.len() > 1).then_some(parts)
}

/// Smallest module containing `{a, b}`, or `None` if it is everything.
fn pair_closure(adj: &[Vec<bool>], a: usize, b: usize) -> Option<Vec<usize>> {
    let k = adj.len();
    let mut inside = vec![false; k];
    let mut hits = vec![0usize; k];
    let mut size = 0;
    let mut pending = vec![a, b];
    inside[a] = true;
    inside[b] = true;
    while let Some(m) = pending.pop() {
        size += 1;
        for z in 0..k {
            if !inside[z] && adj[z][m] {
                hits[z] += 1;
            }
        }
        if pending.is_empty() {
            // only scan for splitters once the current members are all counted
            for z in 0..k {
                if !inside[z] && hits[z] > 0 && hits[z] < size {
                    inside[z] = true;
                    pending.push(z);
                }
            }
        }
    }
    (size < k).then(|| (0..k).filter(|&z| inside[z]).collect())
}

/// Maximal proper modules of a graph that is connected and co-connected.
fn maximal_modules(adj: &[Vec<bool>]) -> Vec<Vec<usize>> {
    let k = adj.len();
    let mut assigned = vec![false; k];
    let mut parts = Vec::new();
    for v in 0..k {
        if assigned[v] {
            continue;
        }
        let mut part = vec![v];
        for u in 0..k {
            if u != v && !assigned[u] && pair_closure(adj, v, u).is_some() {
                part.push(u);
            }
        }
        part.sort_unstable();
        for &u in &part {
            assigned[u] = true;
        }
        parts.push(part);
    }
    parts
}
