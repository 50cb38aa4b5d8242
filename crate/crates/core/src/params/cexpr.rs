use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Vertex, WeightedGraph};

use super::md::{MdNode, ModularDecomposition};

/// One node of a clique-width expression. Labels are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CNode {
    /// A single vertex with the given label.
    Leaf(usize),
    /// Disjoint union of two subexpressions.
    Union(usize, usize),
    /// Every `from`-vertex becomes a `to`-vertex.
    Relabel {
        from: usize,
        to: usize,
        child: usize,
    },
    /// All edges between `a`-vertices and `b`-vertices.
    Join { a: usize, b: usize, child: usize },
}

/// A `c`-expression: a rooted binary tree of create / union / relabel / join
/// operations. Leaves are numbered left to right; leaf `i` becomes vertex `i`
/// of the evaluated graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CExpression {
    nodes: Vec<CNode>,
    root: usize,
    labels: usize,
    leaf_order: Vec<usize>,
}

/// A graph together with the label of every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    pub graph: WeightedGraph,
    pub labels: Vec<usize>,
    /// Global leaf id of each local vertex.
    pub vertices: Vec<Vertex>,
}

impl CExpression {
    /// Validates an arena: labels at least 1, `from != to`, `a != b`, and a
    /// proper binary tree rooted at `root`.
    pub fn new(nodes: Vec<CNode>, root: usize) -> Result<Self> {
        let bad = |msg: String| Err(Error::precondition(msg));
        if root >= nodes.len() {
            return bad("root out of range".into());
        }
        let mut labels = 0;
        for (t, node) in nodes.iter().enumerate() {
            let (used, kids): (Vec<usize>, Vec<usize>) = match *node {
                CNode::Leaf(i) => (vec![i], vec![]),
                CNode::Union(x, y) => (vec![], vec![x, y]),
                CNode::Relabel { from, to, child } => {
                    if from == to {
                        return bad(format!("node {t}: relabel needs distinct labels"));
                    }
                    (vec![from, to], vec![child])
                }
                CNode::Join { a, b, child } => {
                    if a == b {
                        return bad(format!("node {t}: join needs distinct labels"));
                    }
                    (vec![a, b], vec![child])
                }
            };
            if used.contains(&0) {
                return bad(format!("node {t}: labels start at 1"));
            }
            if kids.iter().any(|&k| k >= nodes.len()) {
                return bad(format!("node {t}: dangling child"));
            }
            labels = labels.max(used.into_iter().max().unwrap_or(0));
        }
        let mut expr = CExpression {
            nodes,
            root,
            labels,
            leaf_order: Vec::new(),
        };
        let mut seen = vec![false; expr.nodes.len()];
        let mut leaf_order = vec![usize::MAX; expr.nodes.len()];
        let mut next = 0;
        for t in expr.pre_order() {
            if std::mem::replace(&mut seen[t], true) {
                return bad("expression is not a tree".into());
            }
            if let CNode::Leaf(_) = expr.nodes[t] {
                leaf_order[t] = next;
                next += 1;
            }
        }
        expr.leaf_order = leaf_order;
        Ok(expr)
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn node(&self, t: usize) -> CNode {
        self.nodes[t]
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Size of the label universe: the largest label used.
    pub fn label_count(&self) -> usize {
        self.labels
    }

    pub fn leaf_count(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| matches!(n, CNode::Leaf(_)))
            .count()
    }

    /// Vertex id of a leaf node.
    pub fn leaf_vertex(&self, t: usize) -> Option<Vertex> {
        matches!(self.nodes[t], CNode::Leaf(_)).then(|| self.leaf_order[t])
    }

    pub fn children(&self, t: usize) -> Vec<usize> {
        match self.nodes[t] {
            CNode::Leaf(_) => vec![],
            CNode::Union(x, y) => vec![x, y],
            CNode::Relabel { child, .. } | CNode::Join { child, .. } => vec![child],
        }
    }

    fn pre_order(&self) -> Vec<usize> {
        let mut order = Vec::new();
        let mut stack = vec![self.root];
        while let Some(t) = stack.pop() {
            order.push(t);
            if order.len() > self.nodes.len() {
                break;
            }
            for c in self.children(t).into_iter().rev() {
                stack.push(c);
            }
        }
        order
    }

    /// Nodes with children before parents.
    pub fn post_order(&self) -> Vec<usize> {
        let mut order = self.pre_order();
        order.reverse();
        order
    }

    /// Vertex ids of the leaves under `t`, left to right.
    pub fn vertices_under(&self, t: usize) -> Vec<Vertex> {
        let mut out = Vec::new();
        let mut stack = vec![t];
        while let Some(x) = stack.pop() {
            if let CNode::Leaf(_) = self.nodes[x] {
                out.push(self.leaf_order[x]);
            }
            for c in self.children(x).into_iter().rev() {
                stack.push(c);
            }
        }
        out
    }

    /// The labeled graph of the subexpression rooted at `t`, on its leaves in
    /// left-to-right order.
    pub fn eval_node(&self, t: usize) -> LabeledGraph {
        let vertices = self.vertices_under(t);
        let mut local = std::collections::HashMap::new();
        for (i, &v) in vertices.iter().enumerate() {
            local.insert(v, i);
        }
        let mut labels = vec![0usize; vertices.len()];
        let mut edges = BTreeSet::new();
        // members[x]: local vertices below x, computed bottom-up
        let order: Vec<usize> = {
            let mut o = Vec::new();
            let mut stack = vec![t];
            while let Some(x) = stack.pop() {
                o.push(x);
                stack.extend(self.children(x));
            }
            o.reverse();
            o
        };
        let mut members: std::collections::HashMap<usize, Vec<usize>> =
            std::collections::HashMap::new();
        for x in order {
            let here = match self.nodes[x] {
                CNode::Leaf(i) => {
                    let v = local[&self.leaf_order[x]];
                    labels[v] = i;
                    vec![v]
                }
                CNode::Union(a, b) => {
                    let mut m = members.remove(&a).unwrap();
                    m.extend(members.remove(&b).unwrap());
                    m
                }
                CNode::Relabel { from, to, child } => {
                    let m = members.remove(&child).unwrap();
                    for &v in &m {
                        if labels[v] == from {
                            labels[v] = to;
                        }
                    }
                    m
                }
                CNode::Join { a, b, child } => {
                    let m = members.remove(&child).unwrap();
                    for &u in &m {
                        for &v in &m {
                            if labels[u] == a && labels[v] == b {
                                edges.insert((u.min(v), u.max(v)));
                            }
                        }
                    }
                    m
                }
            };
            members.insert(x, here);
        }
        let edges: Vec<_> = edges.into_iter().collect();
        LabeledGraph {
            graph: WeightedGraph::unit(vertices.len(), &edges).expect("joins never create loops"),
            labels,
            vertices,
        }
    }

    /// The labeled graph of the whole expression.
    pub fn eval(&self) -> LabeledGraph {
        self.eval_node(self.root)
    }

    /// Parses `o<i>`, `r<i>,<j>(x)`, `e<i>,<j>(x)` and `u(x,y)`.
    /// Whitespace is ignored; errors carry byte offsets.
    pub fn parse(text: &str) -> Result<Self> {
        let mut p = Parser {
            bytes: text.as_bytes(),
            pos: 0,
            nodes: Vec::new(),
        };
        let root = p.expr()?;
        p.skip_ws();
        if p.pos != p.bytes.len() {
            return Err(Error::parse_offset(
                p.pos,
                "trailing input after expression",
            ));
        }
        CExpression::new(p.nodes, root).map_err(|e| Error::parse_offset(0, e.to_string()))
    }

    fn write(&self, t: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.nodes[t] {
            CNode::Leaf(i) => write!(f, "o{i}"),
            CNode::Union(a, b) => {
                write!(f, "u(")?;
                self.write(a, f)?;
                write!(f, ",")?;
                self.write(b, f)?;
                write!(f, ")")
            }
            CNode::Relabel { from, to, child } => {
                write!(f, "r{from},{to}(")?;
                self.write(child, f)?;
                write!(f, ")")
            }
            CNode::Join { a, b, child } => {
                write!(f, "e{a},{b}(")?;
                self.write(child, f)?;
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for CExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(self.root, f)
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    nodes: Vec<CNode>,
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

    fn label(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let value: usize = std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::parse_offset(start, "expected a label"))?;
        if value == 0 {
            return Err(Error::parse_offset(start, "labels start at 1"));
        }
        Ok(value)
    }

    fn label_pair(&mut self) -> Result<(usize, usize)> {
        let at = self.pos;
        let i = self.label()?;
        self.expect(b',')?;
        let j = self.label()?;
        if i == j {
            return Err(Error::parse_offset(at, "the two labels must differ"));
        }
        Ok((i, j))
    }

    fn push(&mut self, node: CNode) -> usize {
        self.nodes.push(node);
        self.nodes.len() - 1
    }

    fn expr(&mut self) -> Result<usize> {
        match self.peek() {
            Some(b'o') => {
                self.pos += 1;
                let i = self.label()?;
                Ok(self.push(CNode::Leaf(i)))
            }
            Some(b'u') => {
                self.pos += 1;
                self.expect(b'(')?;
                let a = self.expr()?;
                self.expect(b',')?;
                let b = self.expr()?;
                self.expect(b')')?;
                Ok(self.push(CNode::Union(a, b)))
            }
            Some(op @ (b'r' | b'e')) => {
                self.pos += 1;
                let (i, j) = self.label_pair()?;
                self.expect(b'(')?;
                let child = self.expr()?;
                self.expect(b')')?;
                Ok(self.push(if op == b'r' {
                    CNode::Relabel {
                        from: i,
                        to: j,
                        child,
                    }
                } else {
                    CNode::Join { a: i, b: j, child }
                }))
            }
            _ => Err(Error::parse_offset(
                self.pos,
                "expected `o`, `u`, `r` or `e`",
            )),
        }
    }
}

/// Hand-written expressions for common families.
impl CExpression {
    /// `P_n` with three labels: the path's end carries label 2.
    pub fn path(n: usize) -> CExpression {
        assert!(n >= 1);
        if n == 1 {
            return CExpression::parse("o1").unwrap();
        }
        // invariant: the last vertex has label 2, all earlier ones label 3
        let mut text = "e1,2(u(o1,o2))".to_string();
        text = format!("r1,3({text})");
        for _ in 2..n {
            // new vertex labelled 1, joined to the current end (2); then the
            // old end retires to 3 and the new one becomes the end
            text = format!("r1,2(r2,3(e1,2(u({text},o1))))");
        }
        CExpression::parse(&text).unwrap()
    }

    /// `K_n` with two labels.
    pub fn clique(n: usize) -> CExpression {
        assert!(n >= 1);
        let mut text = "o1".to_string();
        for _ in 1..n {
            text = format!("r2,1(e1,2(u({text},o2)))");
        }
        CExpression::parse(&text).unwrap()
    }

    /// `K_{1,leaves}` with two labels; the center is vertex 0.
    pub fn star(leaves: usize) -> CExpression {
        let mut text = "o1".to_string();
        for _ in 0..leaves {
            text = format!("u({text},o2)");
        }
        if leaves > 0 {
            text = format!("e1,2({text})");
        }
        CExpression::parse(&text).unwrap()
    }
}

impl CExpression {
    /// Two-label expression for a cograph, read off a decomposition whose
    /// quotients are all complete or edgeless. Also returns the graph vertex
    /// of every leaf position, since leaves are numbered left to right.
    pub fn cograph(md: &ModularDecomposition) -> Option<(CExpression, Vec<Vertex>)> {
        fn build(md: &ModularDecomposition, t: usize, order: &mut Vec<Vertex>) -> Option<String> {
            match md.node(t) {
                MdNode::Leaf(v) => {
                    order.push(*v);
                    Some("o1".to_string())
                }
                MdNode::Inner { quotient, children } => {
                    let c = children.len();
                    let series = quotient.edge_count() == c * (c - 1) / 2;
                    if !series && quotient.edge_count() != 0 {
                        return None;
                    }
                    let mut text = build(md, children[0], order)?;
                    for &child in &children[1..] {
                        let next = build(md, child, order)?;
                        text = if series {
                            format!("r2,1(e1,2(u({text},r1,2({next}))))")
                        } else {
                            format!("u({text},{next})")
                        };
                    }
                    Some(text)
                }
            }
        }
        let mut order = Vec::new();
        let text = build(md, md.root(), &mut order)?;
        Some((
            CExpression::parse(&text).expect("cograph expression is well formed"),
            order,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::{complete, path, star};

    #[test]
    fn evaluates_small_expressions() {
        let k2 = CExpression::parse("e1,2(u(o1,o2))").unwrap().eval();
        assert_eq!(k2.graph, complete(2));
        assert_eq!(k2.labels, vec![1, 2]);
        let r = CExpression::parse("r1,2(o1)").unwrap().eval();
        assert_eq!((r.graph.vertex_count(), r.labels.clone()), (1, vec![2]));
        let e = CExpression::parse("e1,2(u(o1,r1,2(o1)))").unwrap().eval();
        assert_eq!(e.graph, complete(2));
    }

    #[test]
    fn parse_errors_carry_offsets() {
        for (text, offset) in [
            ("e1,1(o1)", "byte 1"),
            ("u(o1 o2)", "byte 5"),
            ("o0", "byte 1"),
            ("x", "byte 0"),
            ("o1 o2", "byte 3"),
        ] {
            match CExpression::parse(text) {
                Err(Error::Parse { location, .. }) => assert_eq!(location, offset, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn display_round_trip() {
        let text = " e1, 2 ( u ( o1 , r1,2(o1) ) ) ";
        let expr = CExpression::parse(text).unwrap();
        let printed = expr.to_string();
        assert_eq!(printed, "e1,2(u(o1,r1,2(o1)))");
        assert_eq!(CExpression::parse(&printed).unwrap().eval(), expr.eval());
    }

    #[test]
    fn family_expressions() {
        for n in 1..7 {
            assert_eq!(CExpression::path(n).eval().graph, path(n), "P{n}");
            assert_eq!(CExpression::clique(n).eval().graph, complete(n), "K{n}");
            assert_eq!(CExpression::star(n).eval().graph, star(n), "S{n}");
        }
        assert_eq!(CExpression::path(5).label_count(), 3);
        assert_eq!(CExpression::clique(5).label_count(), 2);
    }

    #[test]
    fn subexpression_vertices() {
        let expr = CExpression::parse("u(e1,2(u(o1,o2)),o1)").unwrap();
        let root = expr.root();
        assert_eq!(expr.vertices_under(root), vec![0, 1, 2]);
        let CNode::Union(left, right) = expr.node(root) else {
            panic!()
        };
        assert_eq!(expr.vertices_under(left), vec![0, 1]);
        assert_eq!(expr.eval_node(right).vertices, vec![2]);
        assert_eq!(expr.eval().graph.edge_count(), 1);
    }
}
